"""Command-line frontend.

Exit codes: 0 success, 2 unreadable or unparsable input, 3 output
write failure, 4 bind failure, 64 usage error, 130 exploration
aborted at end of input.
"""

from __future__ import annotations

import argparse
import json
import os
import socket
import sys
from pathlib import Path

from . import __version__
from .bitsets import mask_of
from .context import FormalContext, count_concepts
from .cxt import from_json_table, parse_cxt, to_json_table, write_cxt
from .errors import (
    DuplicateName,
    FcaError,
    InvalidName,
    NotACounterexample,
    ViolatesAcceptedImplication,
)
from .exploration import (
    accept,
    accept_event,
    counterexample_event,
    reject_with_counterexample,
    start,
    start_event,
)
from .implications import (
    format_attribute_set,
    format_implication,
    report_for,
    stem_base,
    supported_rows,
)
from .lattice import build_lattice
from .layout import build_scene, render_dot, render_json, render_svg
from .workspace import append_line

EX_OK = 0
EX_PARSE = 2
EX_WRITE = 3
EX_BIND = 4
EX_USAGE = 64
EX_ABORT = 130

DEFAULT_PORT = 8147


class CliFailure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


class _Parser(argparse.ArgumentParser):
    """argparse, but usage errors exit with the documented code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _load(path: str) -> FormalContext:
    """Read a context from a CXT file, or a JSON table if named *.json."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliFailure(EX_PARSE, f"cannot read '{path}': {exc.strerror or exc}")
    try:
        if path.endswith(".json"):
            return from_json_table(json.loads(text))
        return parse_cxt(text)
    except (FcaError, ValueError) as exc:
        raise CliFailure(EX_PARSE, f"cannot parse '{path}': {exc}")


def _emit(text: str, out: str | None) -> None:
    """Write to the output path, or stdout when none is given."""
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliFailure(EX_WRITE, f"cannot write '{out}': {exc.strerror or exc}")


def _supported_listing(ctx: FormalContext) -> str:
    rows = supported_rows(stem_base(ctx))
    return "".join(format_implication(ctx, r) + "\n" for r in rows)


def cmd_info(args) -> int:
    ctx = _load(args.path)
    print(f"objects: {ctx.n_objects}, attributes: {ctx.n_attributes}, "
          f"concepts: {count_concepts(ctx)}")
    print(f"crosses: {ctx.cross_count}")
    return EX_OK


def cmd_concepts(args) -> int:
    print(count_concepts(_load(args.path)))
    return EX_OK


def cmd_lattice(args) -> int:
    ctx = _load(args.path)
    scene = build_scene(build_lattice(ctx))
    render = {"dot": render_dot, "svg": render_svg, "json": render_json}
    _emit(render[args.format](scene), args.out)
    return EX_OK


def cmd_implications(args) -> int:
    ctx = _load(args.path)
    base = stem_base(ctx)
    rows = base if args.all else supported_rows(base)
    for row in rows:
        print(format_implication(ctx, row))
    return EX_OK


def cmd_convert(args) -> int:
    ctx = _load(args.src)
    target = args.to
    if target is None:
        suffix = Path(args.dst).suffix.lower() if args.dst else None
        if suffix == ".json":
            target = "json"
        elif suffix == ".cxt":
            target = "cxt"
        else:
            raise CliFailure(
                EX_USAGE,
                "cannot tell the target format from the file name; pass --to")
    if target == "json":
        text = json.dumps(to_json_table(ctx), indent=2, sort_keys=True) + "\n"
    else:
        text = write_cxt(ctx)
    _emit(text, args.dst)
    return EX_OK


def _parse_answer(ctx: FormalContext, line: str):
    """Decode one exploration answer.

    Returns ("accept",), ("reject", name, intent) or ("bad", message).
    """
    line = line.strip()
    if line == "y":
        return ("accept",)
    if line == "n" or line.startswith("n "):
        rest = line[1:].strip()
        name, sep, attrs = rest.partition(";")
        name = name.strip()
        if not sep or not name:
            return ("bad", "a counterexample needs a name: "
                           "n <name>; <attr>, <attr>, ...")
        indices = []
        for part in attrs.split(","):
            part = part.strip()
            if not part:
                continue
            try:
                indices.append(ctx.attribute_index(part))
            except KeyError:
                return ("bad", f"no attribute is named {part!r}")
        return ("reject", name, mask_of(indices))
    return ("bad", "answer y, or: n <name>; <attr>, <attr>, ...")


def cmd_explore(args) -> int:
    ctx = _load(args.path)
    log_path = Path(args.log) if args.log else Path(args.path + ".session.jsonl")
    if args.answers is not None:
        try:
            answers = iter(Path(args.answers).read_text(encoding="utf-8")
                           .splitlines())
        except OSError as exc:
            raise CliFailure(EX_PARSE,
                             f"cannot read '{args.answers}': {exc.strerror or exc}")
    else:
        answers = iter(sys.stdin)

    def log(event: dict) -> None:
        try:
            append_line(log_path, json.dumps(event) + "\n")
        except OSError as exc:
            raise CliFailure(EX_WRITE,
                             f"cannot write '{log_path}': {exc.strerror or exc}")

    log(start_event(ctx))
    session = start(ctx)
    while not session.finished:
        ctx = session.working_context
        question = session.current_question
        print(f"{format_attribute_set(ctx, question.premise)} ==> "
              f"{format_attribute_set(ctx, question.conclusion)} ?")
        line = next(answers, None)
        if line is None:
            print("aborted; the session log was kept", file=sys.stderr)
            return EX_ABORT
        if line.strip() == "" or line.lstrip().startswith("#"):
            continue
        answer = _parse_answer(ctx, line)
        if answer[0] == "bad":
            print(answer[1])
            continue
        if answer[0] == "accept":
            session = accept(session)
            log(accept_event())
            continue
        _, name, intent = answer
        try:
            session = reject_with_counterexample(session, name, intent)
        except ViolatesAcceptedImplication as exc:
            imp = exc.implication
            print(f"rejected: that object would violate "
                  f"{format_attribute_set(ctx, imp.premise)} ==> "
                  f"{format_attribute_set(ctx, imp.conclusion & ~imp.premise)}")
            continue
        except (NotACounterexample, DuplicateName, InvalidName) as exc:
            print(f"rejected: {exc}")
            continue
        log(counterexample_event(name, intent))

    final = session.working_context
    print()
    sys.stdout.write(_supported_listing(final))
    if args.save is not None:
        _emit(write_cxt(final), args.save)
    return EX_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    root = (args.workspace or os.environ.get("FCAKIT_WORKSPACE")
            or "./fcakit-workspace")
    try:
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.bind((args.host, args.port))
        probe.close()
    except OSError as exc:
        raise CliFailure(
            EX_BIND, f"cannot bind {args.host}:{args.port}: {exc.strerror or exc}")
    ui = args.ui
    if ui is None and Path("frontend/dist").is_dir():
        ui = "frontend/dist"
    app = create_app(root, concept_cap=args.concept_cap, static_dir=ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EX_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fcakit",
                     description="formal concept analysis toolkit")
    parser.add_argument("--version", action="version",
                        version=f"fcakit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("info", help="context and concept counts")
    p.add_argument("path")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("concepts", help="print the number of concepts")
    p.add_argument("path")
    p.set_defaults(func=cmd_concepts)

    p = sub.add_parser("lattice", help="render the concept lattice")
    p.add_argument("path")
    p.add_argument("--format", choices=("dot", "svg", "json"), default="svg")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("implications", help="print the implication base")
    p.add_argument("path")
    p.add_argument("--all", action="store_true",
                   help="include rows no object witnesses")
    p.set_defaults(func=cmd_implications)

    p = sub.add_parser("explore", help="attribute exploration dialogue")
    p.add_argument("path")
    p.add_argument("--answers", default=None,
                   help="read answers from a file instead of stdin")
    p.add_argument("--log", default=None,
                   help="session log path (default: <path>.session.jsonl)")
    p.add_argument("--save", default=None,
                   help="write the final context to this file")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("convert", help="convert between CXT and JSON tables")
    p.add_argument("src")
    p.add_argument("dst", nargs="?", default=None)
    p.add_argument("--to", choices=("cxt", "json"), default=None)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("serve", help="run the local HTTP service")
    p.add_argument("--workspace", default=None,
                   help="workspace directory (or env FCAKIT_WORKSPACE; "
                        "default ./fcakit-workspace)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=DEFAULT_PORT)
    p.add_argument("--ui", default=None,
                   help="directory of web UI assets to serve at /")
    p.add_argument("--concept-cap", type=int, default=50_000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EX_USAGE
    try:
        return args.func(args)
    except CliFailure as failure:
        print(f"fcakit: {failure.message}", file=sys.stderr)
        return failure.code
    except BrokenPipeError:
        return EX_OK


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
