"""Reading and writing the Burmeister CXT cross-table format.

The format, fixed for compatibility with existing tools:

    line 1: the single character B
    line 2: empty (reserved for a context name)
    line 3: number of objects
    line 4: number of attributes
    line 5: empty
    then one line per object name, one per attribute name,
    then one row of X/. characters per object.

Files are emitted with LF endings and a trailing newline.  Readers are
forgiving about CRLF and lowercase x; writers are not.
"""

from __future__ import annotations

import re

from .context import FormalContext
from .errors import BadCell, DimensionMismatch, MalformedHeader

_COUNT = re.compile(r"^(0|[1-9][0-9]*)$")


def parse_cxt(text: str) -> FormalContext:
    """Parse CXT file content into a context.

    Leading blank lines are skipped; after the final data row only blank
    lines may follow.  Errors carry the 1-based line number of the
    offending line.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    pos = 0
    while pos < len(lines) and lines[pos].strip("\r ") == "":
        pos += 1

    def take(what: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(lines):
            raise MalformedHeader(f"file ends before {what}", line=len(lines) + 1)
        lineno = pos + 1
        value = lines[pos]
        if value.endswith("\r"):
            value = value[:-1]
        pos += 1
        return lineno, value

    lineno, marker = take("the format marker")
    if marker != "B":
        raise MalformedHeader(f"expected 'B', found {marker!r}", line=lineno)
    lineno, blank = take("the name line")
    if blank != "":
        raise MalformedHeader("the line after 'B' must be empty", line=lineno)

    counts = []
    for what in ("the object count", "the attribute count"):
        lineno, value = take(what)
        if not _COUNT.match(value):
            raise MalformedHeader(f"{what} must be a decimal integer, found {value!r}",
                                  line=lineno)
        counts.append(int(value))
    n_objects, n_attributes = counts

    lineno, blank = take("the separator line")
    if blank != "":
        raise MalformedHeader("the line after the counts must be empty", line=lineno)

    objects = [take("an object name")[1] for _ in range(n_objects)]
    attributes = [take("an attribute name")[1] for _ in range(n_attributes)]

    rows = []
    for _ in range(n_objects):
        lineno, cells = take("an incidence row")
        if len(cells) != n_attributes:
            raise DimensionMismatch(
                f"row has {len(cells)} cells, expected {n_attributes}", line=lineno)
        mask = 0
        for j, ch in enumerate(cells):
            if ch in "Xx":
                mask |= 1 << j
            elif ch != ".":
                raise BadCell(f"cell character {ch!r} is not 'X' or '.'", line=lineno)
        rows.append(mask)

    while pos < len(lines):
        lineno, extra = take("the end of the file")
        if extra.strip() != "":
            raise DimensionMismatch(f"unexpected trailing content {extra!r}",
                                    line=lineno)

    return FormalContext.from_rows(objects, attributes, rows)


def write_cxt(ctx: FormalContext) -> str:
    """Serialize a context to CXT file content, trailing newline included."""
    out = ["B", "", str(ctx.n_objects), str(ctx.n_attributes), ""]
    out.extend(ctx.objects)
    out.extend(ctx.attributes)
    for row in ctx.rows:
        out.append("".join("X" if row >> j & 1 else "."
                           for j in range(ctx.n_attributes)))
    return "\n".join(out) + "\n"


def to_json_table(ctx: FormalContext) -> dict:
    """Context as a plain dict: name lists plus a boolean matrix."""
    return {
        "objects": list(ctx.objects),
        "attributes": list(ctx.attributes),
        "incidence": ctx.table(),
    }


def from_json_table(data: dict) -> FormalContext:
    """Inverse of to_json_table; validates shape via the context constructor."""
    try:
        objects = data["objects"]
        attributes = data["attributes"]
        incidence = data["incidence"]
    except (KeyError, TypeError):
        raise ValueError("expected keys objects, attributes, incidence") from None
    if len(incidence) != len(objects):
        raise DimensionMismatch(
            f"incidence has {len(incidence)} rows, expected {len(objects)}")
    return FormalContext.from_table(objects, attributes, incidence)
