"""Interactive attribute exploration.

The loop poses candidate implications in lectic premise order.  The
answerer either confirms one as universally valid or refutes it with a
counterexample object, which joins the working context.  When no
candidate remains, the accepted list is the canonical base of the final
context.

Sessions are immutable: accept and reject return new sessions, so a
service can keep every intermediate state or replay a log of answers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .bitsets import bits, is_subset, mask_of
from .context import FormalContext, add_object, close_attributes, next_closed_set
from .cxt import parse_cxt, write_cxt
from .errors import (
    NoPendingQuestion,
    NotACounterexample,
    NotFinished,
    ViolatesAcceptedImplication,
)
from .implications import Implication, close_under, respects


@dataclass(frozen=True)
class ExplorationSession:
    """Exploration state between two answers.

    ``cursor`` is the premise currently under question, a set closed
    under every accepted implication.  ``current_question`` shows the
    conclusion premise-stripped, the way the question is asked; the
    accepted list stores full closures.
    """

    working_context: FormalContext
    accepted: tuple[Implication, ...]
    cursor: Optional[int]
    current_question: Optional[Implication]
    finished: bool


def _pose(ctx: FormalContext, accepted: tuple[Implication, ...],
          position: Optional[int]) -> ExplorationSession:
    """Scan lectically from ``position`` for the next open question."""
    current = position
    while current is not None:
        closed = close_attributes(ctx, current)
        if closed != current:
            question = Implication(premise=current, conclusion=closed & ~current)
            return ExplorationSession(
                working_context=ctx, accepted=accepted, cursor=current,
                current_question=question, finished=False)
        current = next_closed_set(
            lambda s: close_under(accepted, s), ctx.n_attributes, current)
    return ExplorationSession(
        working_context=ctx, accepted=accepted, cursor=None,
        current_question=None, finished=True)


def start(ctx: FormalContext) -> ExplorationSession:
    """Open a session; the first question is posed immediately if any."""
    return _pose(ctx, (), 0)


def accept(session: ExplorationSession) -> ExplorationSession:
    """Confirm the current question as universally valid."""
    if session.finished or session.current_question is None:
        raise NoPendingQuestion("no question is pending")
    ctx = session.working_context
    premise = session.cursor
    confirmed = Implication(premise=premise,
                            conclusion=close_attributes(ctx, premise))
    accepted = session.accepted + (confirmed,)
    next_position = next_closed_set(
        lambda s: close_under(accepted, s), ctx.n_attributes, premise)
    return _pose(ctx, accepted, next_position)


def reject_with_counterexample(session: ExplorationSession, name: str,
                               intent: int) -> ExplorationSession:
    """Refute the current question with a new object.

    The object must carry the whole premise, miss part of the conclusion,
    and respect everything already accepted; otherwise it is no
    counterexample and the state does not change.
    """
    if session.finished or session.current_question is None:
        raise NoPendingQuestion("no question is pending")
    ctx = session.working_context
    premise = session.cursor
    full_conclusion = close_attributes(ctx, premise)
    if not is_subset(premise, intent):
        raise NotACounterexample(
            "the object does not have every premise attribute")
    if is_subset(full_conclusion, intent):
        raise NotACounterexample(
            "the object satisfies the implication it should refute")
    for imp in session.accepted:
        if not respects(intent, imp):
            raise ViolatesAcceptedImplication(
                "the object violates an already accepted implication", imp)
    grown = add_object(ctx, name, intent)
    # the premise may or may not still be open in the grown context;
    # _pose re-asks at the same cursor and advances only if it closed
    return _pose(grown, session.accepted, premise)


def result(session: ExplorationSession) -> tuple[FormalContext, list[Implication]]:
    """Final context and confirmed base; only meaningful once finished."""
    if not session.finished:
        raise NotFinished("exploration still has open questions")
    return session.working_context, list(session.accepted)


# --- event-log form ------------------------------------------------------
# One JSON object per line; kind "start" embeds the CXT text, "accept" is
# bare, "counterexample" carries the object name and attribute indices.

def start_event(ctx: FormalContext) -> dict:
    return {"kind": "start", "cxt": write_cxt(ctx)}


def accept_event() -> dict:
    return {"kind": "accept"}


def counterexample_event(name: str, intent: int) -> dict:
    return {"kind": "counterexample", "name": name,
            "attributes": list(bits(intent))}


def replay_events(events: Iterable[dict]) -> ExplorationSession:
    """Rebuild a session from its event log."""
    session = None
    for event in events:
        kind = event.get("kind")
        if kind == "start":
            if session is not None:
                raise ValueError("start event after the first line")
            session = start(parse_cxt(event["cxt"]))
        elif session is None:
            raise ValueError("event log does not begin with start")
        elif kind == "accept":
            session = accept(session)
        elif kind == "counterexample":
            session = reject_with_counterexample(
                session, event["name"], mask_of(event["attributes"]))
        else:
            raise ValueError(f"unknown event kind {kind!r}")
    if session is None:
        raise ValueError("empty event log")
    return session


def encode_events(events: Iterable[dict]) -> str:
    return "".join(json.dumps(e) + "\n" for e in events)


def decode_events(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]
