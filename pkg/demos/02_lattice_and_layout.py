"""Build the concept lattice, read it like the diagram, render it."""

from pathlib import Path

from fcakit import build_lattice, build_scene, parse_cxt, render_svg
from fcakit.bitsets import bits
from fcakit.lattice import read_extent_from_diagram, read_intent_from_diagram

here = Path(__file__).parent
ctx = parse_cxt(here.parent.joinpath("fixtures/planets.cxt").read_text())
lat = build_lattice(ctx)

print(f"{len(lat.concepts)} concepts, {len(lat.covers)} cover edges")

# each object and attribute labels exactly one node
for g, node in enumerate(lat.object_labels):
    print(f"  object {ctx.objects[g]:14s} labels node {node}")

# the diagram reading rule: an extent is every object label reachable
# downward, an intent every attribute label reachable upward
for i in range(len(lat.concepts)):
    extent = read_extent_from_diagram(lat, i)
    intent = read_intent_from_diagram(lat, i)
    assert extent == lat.concepts[i].extent
    assert intent == lat.concepts[i].intent
print("diagram reading reproduces every concept")

# layered drawing with labels, written next to this script
scene = build_scene(lat)
out = here / "planets.svg"
out.write_text(render_svg(scene))
print(f"wrote {out}")

top = scene.nodes[0]
print(f"top node sits at ({top.x}, {top.y}); "
      f"{sum(1 for n in scene.nodes if n.has_attribute_label)} nodes "
      f"carry attribute labels")
for node in scene.nodes:
    if node.object_label_text:
        print(f"  y={node.y}: {node.object_label_text}")
