"""Attribute implications and the canonical implication base.

An implication "A implies B" holds when every object carrying all of A
also carries all of B.  The canonical base (premises are exactly the
pseudo-intents) is the smallest complete set of implications; its order,
IDs and supports match what the original desktop tool prints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .bitsets import bits, is_subset
from .context import FormalContext, close_attributes, derive_intent, next_closed_set
from .errors import IndexOutOfRange


@dataclass(frozen=True)
class Implication:
    """Premise and conclusion, both attribute masks.

    The conclusion is stored in full (premise included); rendering strips
    the premise so listings never repeat attributes across the arrow.
    """

    premise: int
    conclusion: int


@dataclass(frozen=True)
class ImplicationReport:
    """One row of an implication listing.

    ``id`` is the 1-based rank, ``support`` the number of objects whose
    intent contains the premise, ``valid`` whether the implication holds
    in the owning context.  Display color is not stored: rows render
    blue when support > 0 and red when no object witnesses the premise.
    """

    id: int
    support: int
    implication: Implication
    valid: bool


def holds(ctx: FormalContext, imp: Implication) -> bool:
    """True when every object with the premise also has the conclusion."""
    return is_subset(derive_intent(ctx, imp.premise),
                     derive_intent(ctx, imp.conclusion))


def support(ctx: FormalContext, imp: Implication) -> int:
    """Number of objects possessing all premise attributes."""
    return derive_intent(ctx, imp.premise).bit_count()


def close_under(implications: Iterable[Implication], attribute_set: int) -> int:
    """Smallest superset closed under every implication (forward chaining)."""
    implications = list(implications)
    result = attribute_set
    changed = True
    while changed:
        changed = False
        for imp in implications:
            if is_subset(imp.premise, result) and not is_subset(imp.conclusion, result):
                result |= imp.conclusion
                changed = True
    return result


def respects(intent: int, imp: Implication) -> bool:
    """True when the intent is a model of the implication."""
    return not is_subset(imp.premise, intent) or is_subset(imp.conclusion, intent)


def stem_base(ctx: FormalContext) -> list[ImplicationReport]:
    """The canonical base, premises in lectic order, 1-based IDs.

    Enumerates the sets closed under the implications found so far; each
    one that the context closure still enlarges is a pseudo-intent and
    contributes an implication.
    """
    base: list[Implication] = []
    current = 0
    while current is not None:
        closed = close_attributes(ctx, current)
        if closed != current:
            base.append(Implication(premise=current, conclusion=closed))
        current = next_closed_set(
            lambda s: close_under(base, s), ctx.n_attributes, current)
    return [
        ImplicationReport(id=i + 1, support=support(ctx, imp), implication=imp,
                          valid=True)
        for i, imp in enumerate(base)
    ]


def supported_rows(reports: Sequence[ImplicationReport]) -> list[ImplicationReport]:
    """The rows at least one object witnesses, renumbered from 1.

    The canonical base also contains implications whose premise no object
    realizes (their conclusion is the full attribute set); the reference
    tool's listing shows only the witnessed rows, so this filtered and
    renumbered view is what listings print by default.
    """
    kept = [r for r in reports if r.support > 0]
    return [ImplicationReport(id=i + 1, support=r.support,
                              implication=r.implication, valid=r.valid)
            for i, r in enumerate(kept)]


def report_for(ctx: FormalContext, imp: Implication, id: int = 1) -> ImplicationReport:
    """Wrap an arbitrary implication the way base rows are wrapped."""
    if imp.premise < 0 or imp.premise >> ctx.n_attributes:
        raise IndexOutOfRange("premise exceeds the attribute count")
    if imp.conclusion < 0 or imp.conclusion >> ctx.n_attributes:
        raise IndexOutOfRange("conclusion exceeds the attribute count")
    return ImplicationReport(id=id, support=support(ctx, imp),
                             implication=imp, valid=holds(ctx, imp))


def display_attribute_order(ctx: FormalContext, attribute_set: int) -> list[int]:
    """Attribute indices sorted for display: rarest first, then by column.

    Listings print the attributes of a set in ascending order of how many
    objects carry them, matching the original tool's output on its demo
    context; ties fall back to column order.
    """
    return sorted(bits(attribute_set),
                  key=lambda m: (ctx.cols[m].bit_count(), m))


def displayed_conclusion(imp: Implication) -> int:
    """The conclusion as shown: premise attributes stripped."""
    return imp.conclusion & ~imp.premise


def format_attribute_set(ctx: FormalContext, attribute_set: int) -> str:
    return ", ".join(ctx.attributes[m]
                     for m in display_attribute_order(ctx, attribute_set))


def format_implication(ctx: FormalContext, report: ImplicationReport) -> str:
    """One listing line: ``<id> < <support> > <premise> ==> <conclusion>;``"""
    imp = report.implication
    premise = format_attribute_set(ctx, imp.premise)
    conclusion = format_attribute_set(ctx, displayed_conclusion(imp))
    return f"{report.id} < {report.support} > {premise} ==> {conclusion};"


def format_report(ctx: FormalContext, reports: Sequence[ImplicationReport]) -> str:
    """Full listing, one line per implication, trailing newline."""
    return "".join(format_implication(ctx, r) + "\n" for r in reports)
