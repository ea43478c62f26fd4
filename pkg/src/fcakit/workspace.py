"""On-disk workspace: named contexts, layout sidecars, session logs.

Layout on disk:

    <root>/<name>.cxt            the context
    <root>/<name>.layout.json    manual positions, optional
    <root>/sessions/<sid>.jsonl  exploration event log, one JSON per line

Every write lands via write-to-temp, fsync, rename (or fsynced append
for logs), so a crash between requests never leaves a torn file and
state replays from disk alone.
"""

from __future__ import annotations

import json
import os
import re
import uuid
from pathlib import Path

from .context import FormalContext
from .cxt import parse_cxt, write_cxt
from .errors import UnknownContext, UnknownSession
from .layout import dump_pins, load_pins

SLUG = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]{0,63}$")


def valid_slug(name: str) -> bool:
    return bool(SLUG.match(name)) and ".." not in name


def atomic_write(path: Path, text: str) -> None:
    """Write the whole file so a crash leaves either old or new content."""
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8") as handle:
        handle.write(text)
        handle.flush()
        os.fsync(handle.fileno())
    os.replace(tmp, path)


def append_line(path: Path, line: str) -> None:
    """Durably append one line to a log file."""
    with open(path, "a", encoding="utf-8") as handle:
        handle.write(line)
        handle.flush()
        os.fsync(handle.fileno())


class Workspace:
    """Paths and persistence for one workspace directory."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.sessions_dir = self.root / "sessions"
        self.sessions_dir.mkdir(exist_ok=True)

    # -- contexts ---------------------------------------------------------

    def context_path(self, name: str) -> Path:
        return self.root / f"{name}.cxt"

    def layout_path(self, name: str) -> Path:
        return self.root / f"{name}.layout.json"

    def list_contexts(self) -> list[str]:
        return sorted(p.name[:-4] for p in self.root.glob("*.cxt"))

    def has_context(self, name: str) -> bool:
        return self.context_path(name).is_file()

    def load_context(self, name: str) -> FormalContext:
        path = self.context_path(name)
        if not path.is_file():
            raise UnknownContext(name)
        return parse_cxt(path.read_text(encoding="utf-8"))

    def save_context(self, name: str, ctx: FormalContext) -> None:
        atomic_write(self.context_path(name), write_cxt(ctx))

    # -- layout pins ------------------------------------------------------

    def load_layout(self, name: str) -> dict[str, dict[str, float]]:
        path = self.layout_path(name)
        if not path.is_file():
            return {}
        return load_pins(path.read_text(encoding="utf-8"))

    def save_layout(self, name: str, pins: dict) -> None:
        atomic_write(self.layout_path(name), dump_pins(pins))

    # -- exploration sessions ---------------------------------------------

    def session_path(self, sid: str) -> Path:
        return self.sessions_dir / f"{sid}.jsonl"

    def new_session_id(self) -> str:
        return uuid.uuid4().hex

    def has_session(self, sid: str) -> bool:
        return valid_slug(sid) and self.session_path(sid).is_file()

    def list_sessions(self) -> list[str]:
        return sorted(p.name[:-6] for p in self.sessions_dir.glob("*.jsonl"))

    def append_event(self, sid: str, event: dict) -> None:
        append_line(self.session_path(sid), json.dumps(event) + "\n")

    def read_events(self, sid: str) -> list[dict]:
        path = self.session_path(sid)
        if not path.is_file():
            raise UnknownSession(sid)
        return [json.loads(line)
                for line in path.read_text(encoding="utf-8").splitlines()
                if line.strip()]
