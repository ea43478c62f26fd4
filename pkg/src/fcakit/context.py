"""Formal contexts, derivation operators and concept enumeration.

A formal context is a set of objects, a set of attributes, and an
incidence relation saying which object has which attribute.  The two
derivation operators map a set of objects to the attributes they share
and a set of attributes to the objects carrying all of them; composing
them gives a closure operator whose fixpoints are the concept intents.

Contexts are immutable values: every editing operation returns a new
context and never touches the original, so contexts can be shared freely
between threads and cached by identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .bitsets import bits, full_mask, is_subset, mask_of
from .errors import DuplicateName, IndexOutOfRange, InvalidName


def _check_name(name: str) -> None:
    if not isinstance(name, str) or name == "":
        raise InvalidName("names must be nonempty strings")
    if "\n" in name or "\r" in name:
        raise InvalidName(f"name {name!r} contains a line break")


def _check_names(names: Sequence[str], kind: str) -> None:
    seen = set()
    for name in names:
        _check_name(name)
        if name in seen:
            raise DuplicateName(f"duplicate {kind} name {name!r}")
        seen.add(name)


@dataclass(frozen=True)
class FormalContext:
    """Objects, attributes and a dense boolean incidence relation.

    ``rows[g]`` is the attribute mask of object ``g`` and ``cols[m]`` the
    object mask of attribute ``m``; both orientations are kept so that
    either derivation is a run of word-wide intersections.
    """

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        _check_names(self.objects, "object")
        _check_names(self.attributes, "attribute")
        g, m = len(self.objects), len(self.attributes)
        if len(self.rows) != g or len(self.cols) != m:
            raise ValueError("incidence dimensions disagree with the name lists")
        for row in self.rows:
            if row < 0 or row >> m:
                raise ValueError("incidence row exceeds the attribute count")
        for j, col in enumerate(self.cols):
            if col != mask_of(i for i in range(g) if self.rows[i] >> j & 1):
                raise ValueError("row and column incidence caches disagree")

    @classmethod
    def from_rows(cls, objects: Iterable[str], attributes: Iterable[str],
                  rows: Iterable[int]) -> "FormalContext":
        """Build a context from per-object attribute masks."""
        objects = tuple(objects)
        attributes = tuple(attributes)
        rows = tuple(rows)
        cols = tuple(
            mask_of(i for i, row in enumerate(rows) if row >> j & 1)
            for j in range(len(attributes))
        )
        return cls(objects, attributes, rows, cols)

    @classmethod
    def from_table(cls, objects: Iterable[str], attributes: Iterable[str],
                   table: Iterable[Iterable[bool]]) -> "FormalContext":
        """Build a context from a row-major boolean matrix."""
        attributes = tuple(attributes)
        rows = []
        for row in table:
            row = tuple(row)
            if len(row) != len(attributes):
                raise ValueError("table row length disagrees with the attribute count")
            rows.append(mask_of(j for j, v in enumerate(row) if v))
        return cls.from_rows(objects, attributes, rows)

    @classmethod
    def blank(cls, n_objects: int = 15, n_attributes: int = 15) -> "FormalContext":
        """Fresh all-empty context, sized like a newly opened editor tab."""
        return cls.from_rows(
            (f"Object {i + 1}" for i in range(n_objects)),
            (f"Attribute {j + 1}" for j in range(n_attributes)),
            (0 for _ in range(n_objects)),
        )

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @property
    def all_objects(self) -> int:
        return full_mask(len(self.objects))

    @property
    def all_attributes(self) -> int:
        return full_mask(len(self.attributes))

    @property
    def cross_count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def incidence(self, g: int, m: int) -> bool:
        """True iff object ``g`` has attribute ``m``."""
        _check_object_index(self, g)
        _check_attribute_index(self, m)
        return bool(self.rows[g] >> m & 1)

    def table(self) -> list[list[bool]]:
        """The incidence relation as a row-major list of booleans."""
        return [[bool(row >> j & 1) for j in range(len(self.attributes))]
                for row in self.rows]

    def object_index(self, name: str) -> int:
        try:
            return self.objects.index(name)
        except ValueError:
            raise KeyError(f"no object named {name!r}") from None

    def attribute_index(self, name: str) -> int:
        try:
            return self.attributes.index(name)
        except ValueError:
            raise KeyError(f"no attribute named {name!r}") from None

    def object_names(self, object_set: int) -> tuple[str, ...]:
        _check_object_set(self, object_set)
        return tuple(self.objects[g] for g in bits(object_set))

    def attribute_names(self, attribute_set: int) -> tuple[str, ...]:
        _check_attribute_set(self, attribute_set)
        return tuple(self.attributes[m] for m in bits(attribute_set))


def _check_object_set(ctx: FormalContext, object_set: int) -> None:
    if object_set < 0 or object_set >> len(ctx.objects):
        raise IndexOutOfRange(
            f"object set {object_set:#x} exceeds the {len(ctx.objects)} objects")


def _check_attribute_set(ctx: FormalContext, attribute_set: int) -> None:
    if attribute_set < 0 or attribute_set >> len(ctx.attributes):
        raise IndexOutOfRange(
            f"attribute set {attribute_set:#x} exceeds the {len(ctx.attributes)} attributes")


def _check_object_index(ctx: FormalContext, g: int) -> None:
    if not 0 <= g < len(ctx.objects):
        raise IndexOutOfRange(f"object index {g} out of range")


def _check_attribute_index(ctx: FormalContext, m: int) -> None:
    if not 0 <= m < len(ctx.attributes):
        raise IndexOutOfRange(f"attribute index {m} out of range")


def derive_extent(ctx: FormalContext, object_set: int) -> int:
    """Attributes common to every object in the set.

    The empty object set derives to the full attribute set (a vacuous
    universal quantifier).
    """
    _check_object_set(ctx, object_set)
    common = ctx.all_attributes
    for g in bits(object_set):
        common &= ctx.rows[g]
        if not common:
            break
    return common


def derive_intent(ctx: FormalContext, attribute_set: int) -> int:
    """Objects carrying every attribute in the set."""
    _check_attribute_set(ctx, attribute_set)
    common = ctx.all_objects
    for m in bits(attribute_set):
        common &= ctx.cols[m]
        if not common:
            break
    return common


def close_attributes(ctx: FormalContext, attribute_set: int) -> int:
    """Double derivation: the smallest concept intent containing the set."""
    return derive_extent(ctx, derive_intent(ctx, attribute_set))


@dataclass(frozen=True)
class Concept:
    """An extent/attribute-intent pair, each the derivation of the other."""

    extent: int
    intent: int


def next_closed_set(close: Callable[[int], int], n: int, current: int) -> Optional[int]:
    """Smallest closed set after ``current`` in lectic order, or None.

    Lectic order here is ascending bitmask order: sets are compared at the
    highest index where they differ, so index 0 is the least significant
    position.  ``close`` may be any closure operator on masks over ``n``
    elements; ``current`` itself need not be closed.
    """
    for j in range(n):
        bit = 1 << j
        if current & bit:
            continue
        candidate = close((current & ~((bit << 1) - 1)) | bit)
        if candidate >> (j + 1) == current >> (j + 1):
            return candidate
    return None


def lectic_closures(close: Callable[[int], int], n: int):
    """Yield every closed set of ``close`` in lectic order."""
    current = close(0)
    while current is not None:
        yield current
        current = next_closed_set(close, n, current)


def enumerate_concepts(ctx: FormalContext, limit: Optional[int] = None) -> list[Concept]:
    """All formal concepts, ordered by lectic order of their intents.

    With ``limit`` given, enumeration stops after that many concepts and
    raises IndexOutOfRange; the service uses this to refuse pathological
    contexts instead of stalling.
    """
    out = []
    for intent in lectic_closures(lambda b: close_attributes(ctx, b), ctx.n_attributes):
        if limit is not None and len(out) >= limit:
            raise IndexOutOfRange(f"more than {limit} concepts")
        out.append(Concept(extent=derive_intent(ctx, intent), intent=intent))
    return out


def count_concepts(ctx: FormalContext, limit: Optional[int] = None) -> Optional[int]:
    """Number of formal concepts, or None when ``limit`` is exceeded."""
    count = 0
    for _ in lectic_closures(lambda b: close_attributes(ctx, b), ctx.n_attributes):
        count += 1
        if limit is not None and count > limit:
            return None
    return count


def set_incidence(ctx: FormalContext, g: int, m: int, value: bool) -> FormalContext:
    """Return a context differing from ``ctx`` in exactly cell (g, m)."""
    _check_object_index(ctx, g)
    _check_attribute_index(ctx, m)
    bit = 1 << m
    row = ctx.rows[g] | bit if value else ctx.rows[g] & ~bit
    rows = ctx.rows[:g] + (row,) + ctx.rows[g + 1:]
    return FormalContext.from_rows(ctx.objects, ctx.attributes, rows)


def add_object(ctx: FormalContext, name: str, attribute_set: int = 0) -> FormalContext:
    """Append an object; its row defaults to all-empty."""
    _check_attribute_set(ctx, attribute_set)
    return FormalContext.from_rows(
        ctx.objects + (name,), ctx.attributes, ctx.rows + (attribute_set,))


def remove_object(ctx: FormalContext, g: int) -> FormalContext:
    _check_object_index(ctx, g)
    return FormalContext.from_rows(
        ctx.objects[:g] + ctx.objects[g + 1:], ctx.attributes,
        ctx.rows[:g] + ctx.rows[g + 1:])


def add_attribute(ctx: FormalContext, name: str, object_set: int = 0) -> FormalContext:
    """Append an attribute; its column defaults to all-empty."""
    _check_object_set(ctx, object_set)
    bit = 1 << ctx.n_attributes
    rows = tuple(row | bit if object_set >> g & 1 else row
                 for g, row in enumerate(ctx.rows))
    return FormalContext.from_rows(ctx.objects, ctx.attributes + (name,), rows)


def remove_attribute(ctx: FormalContext, m: int) -> FormalContext:
    _check_attribute_index(ctx, m)
    low = full_mask(m)
    rows = tuple((row & low) | (row >> (m + 1) << m) for row in ctx.rows)
    return FormalContext.from_rows(
        ctx.objects, ctx.attributes[:m] + ctx.attributes[m + 1:], rows)


def rename_object(ctx: FormalContext, g: int, name: str) -> FormalContext:
    _check_object_index(ctx, g)
    return FormalContext.from_rows(
        ctx.objects[:g] + (name,) + ctx.objects[g + 1:], ctx.attributes, ctx.rows)


def rename_attribute(ctx: FormalContext, m: int, name: str) -> FormalContext:
    _check_attribute_index(ctx, m)
    return FormalContext.from_rows(
        ctx.objects, ctx.attributes[:m] + (name,) + ctx.attributes[m + 1:], ctx.rows)
