"""A first walk through the planets context."""

from pathlib import Path

from fcakit import derive_extent, derive_intent, enumerate_concepts, parse_cxt
from fcakit.bitsets import bits, mask_of

ctx = parse_cxt(Path(__file__).parent.parent
                .joinpath("fixtures/planets.cxt").read_text())

print(f"{ctx.n_objects} objects, {ctx.n_attributes} attributes, "
      f"{ctx.cross_count} crosses")

# derivation in both directions: start from Earth and Mars
earth_mars = mask_of([ctx.object_index("Earth (E)"),
                      ctx.object_index("Mars (Ma)")])
common = derive_extent(ctx, earth_mars)
print("Earth and Mars share:",
      ", ".join(ctx.attributes[m] for m in bits(common)))

# and back: which objects have everything Earth and Mars share?
witnesses = derive_intent(ctx, common)
print("...and so do:", ", ".join(ctx.objects[g] for g in bits(witnesses)))

# the pair (witnesses, common) is a formal concept; there are 12 in all
concepts = enumerate_concepts(ctx)
print(f"\nall {len(concepts)} concepts, largest extent first:")
for c in sorted(concepts, key=lambda c: -c.extent.bit_count()):
    extent = ", ".join(ctx.objects[g] for g in bits(c.extent)) or "(none)"
    intent = ", ".join(ctx.attributes[m] for m in bits(c.intent)) or "(none)"
    print(f"  {{{extent}}}  /  {{{intent}}}")
