"""The canonical implication base and how listings are colored."""

from pathlib import Path

from fcakit import close_attributes, close_under, parse_cxt, stem_base, supported_rows
from fcakit.implications import format_implication

ctx = parse_cxt(Path(__file__).parent.parent
                .joinpath("fixtures/planets.cxt").read_text())

base = stem_base(ctx)
print(f"canonical base: {len(base)} implications")

# the listing a user sees keeps only rows some object witnesses (blue);
# the remaining rows have support 0 (red) and hold vacuously
for row in supported_rows(base):
    print(" ", format_implication(ctx, row))

print("\nred rows, premises no object realizes:")
for row in base:
    if row.support == 0:
        print(" ", format_implication(ctx, row))

# completeness: the base recovers the context closure of any set
implications = [r.implication for r in base]
for s in range(1 << ctx.n_attributes):
    assert close_under(implications, s) == close_attributes(ctx, s)
print("\nforward chaining over the base equals context closure "
      f"on all {1 << ctx.n_attributes} attribute sets")
