"""Attribute exploration: rebuilding knowledge from two planets.

A pretend expert who knows the full planets table answers questions
about a context that starts with Mercury and Jupiter only.  The loop
ends with the complete implication base, having asked for the missing
kinds of planet along the way.
"""

from pathlib import Path

from fcakit import close_attributes, parse_cxt, remove_object, stem_base
from fcakit.bitsets import is_subset
from fcakit.exploration import accept, reject_with_counterexample, start
from fcakit.implications import Implication, format_attribute_set, holds

universe = parse_cxt(Path(__file__).parent.parent
                     .joinpath("fixtures/planets.cxt").read_text())

working = universe
for g in range(8, 0, -1):
    if universe.objects[g] not in ("Mercury (Me)", "Jupiter (J)"):
        working = remove_object(working, g)
print("starting objects:", ", ".join(working.objects))

session = start(working)
while not session.finished:
    ctx = session.working_context
    q = session.current_question
    asked = (f"{format_attribute_set(ctx, q.premise)} ==> "
             f"{format_attribute_set(ctx, q.conclusion)}")
    full = close_attributes(ctx, session.cursor)
    if holds(universe, Implication(session.cursor, full)):
        print(f"  {asked}?  yes")
        session = accept(session)
        continue
    for g, row in enumerate(universe.rows):
        if is_subset(session.cursor, row) and not is_subset(full, row):
            print(f"  {asked}?  no: {universe.objects[g]}")
            session = reject_with_counterexample(
                session, universe.objects[g], row)
            break

final = session.working_context
print("\nfinal objects:", ", ".join(final.objects))

mine = [(r.implication.premise, r.implication.conclusion)
        for r in stem_base(final)]
full_base = [(r.implication.premise, r.implication.conclusion)
             for r in stem_base(universe)]
print("final context's base equals the full table's base:",
      mine == full_base)
