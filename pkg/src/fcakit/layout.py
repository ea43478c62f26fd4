"""Layered diagrams for concept lattices and their DOT/SVG/JSON exports.

Nodes sit on integer layers, top layer 0, growing downward; the layer of
a concept is the longest cover-chain from the top, which keeps every
edge pointing strictly down.  Horizontal positions come from a bounded
barycenter relaxation.  Manual positions ("pins") override computed
ones and are keyed by the concept's intent, not its index, so they
survive edits that leave the concept in place.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Optional

from .bitsets import bits
from .context import FormalContext
from .lattice import ConceptLattice

BARYCENTER_SWEEPS = 50


def assign_layers(lat: ConceptLattice) -> list[int]:
    """Layer per concept: length of the longest cover-chain from top."""
    n = len(lat.concepts)
    children = [[] for _ in range(n)]
    indegree = [0] * n
    for child, parent in lat.covers:
        children[parent].append(child)
        indegree[child] += 1
    layers = [0] * n
    ready = [i for i in range(n) if indegree[i] == 0]
    remaining = list(indegree)
    while ready:
        node = ready.pop()
        for child in children[node]:
            layers[child] = max(layers[child], layers[node] + 1)
            remaining[child] -= 1
            if remaining[child] == 0:
                ready.append(child)
    return layers


def assign_x(lat: ConceptLattice, layers: list[int]) -> list[float]:
    """Deterministic x per concept; distinct within each layer.

    Starts from lectic order inside each layer, then runs capped
    barycenter sweeps (downward then upward) over cover neighbors.
    Positions are ordinals centered around zero, so a layer of three
    nodes occupies -1, 0, 1.
    """
    n = len(lat.concepts)
    if n == 0:
        return []
    depth = max(layers) + 1
    rows: list[list[int]] = [[] for _ in range(depth)]
    for i in range(n):
        rows[layers[i]].append(i)
    for row in rows:
        row.sort()

    up = [[] for _ in range(n)]
    down = [[] for _ in range(n)]
    for child, parent in lat.covers:
        up[child].append(parent)
        down[parent].append(child)

    xs = [0.0] * n

    def settle(row):
        for ordinal, node in enumerate(row):
            xs[node] = ordinal - (len(row) - 1) / 2

    for row in rows:
        settle(row)

    for sweep in range(BARYCENTER_SWEEPS):
        moved = False
        order = range(1, depth) if sweep % 2 == 0 else range(depth - 2, -1, -1)
        neighbor = up if sweep % 2 == 0 else down
        for level in order:
            row = rows[level]
            keyed = sorted(
                row,
                key=lambda i: (
                    sum(xs[j] for j in neighbor[i]) / len(neighbor[i])
                    if neighbor[i] else xs[i],
                    i))
            if keyed != row:
                rows[level] = keyed
                moved = True
            settle(rows[level])
        if not moved:
            break
    return xs


def intent_key(ctx: FormalContext, intent: int) -> str:
    """Canonical pin key: the intent's attribute names, sorted, one per line.

    Names cannot contain line breaks, so the join is unambiguous.
    """
    return "\n".join(sorted(ctx.attributes[m] for m in bits(intent)))


@dataclass(frozen=True)
class SceneNode:
    """One diagram node: position, label flags and label texts."""

    index: int
    x: float
    y: float
    intent_key: str
    extent_names: tuple[str, ...]
    intent_names: tuple[str, ...]
    has_attribute_label: bool
    has_object_label: bool
    attribute_label_names: tuple[str, ...]
    object_label_names: tuple[str, ...]
    attribute_label_text: str
    object_label_text: str
    pinned: bool


@dataclass(frozen=True)
class DiagramScene:
    """Nodes plus straight-line cover edges, ready to draw."""

    nodes: tuple[SceneNode, ...]
    edges: tuple[tuple[int, int], ...]


def build_scene(lat: ConceptLattice,
                pins: Optional[Mapping[str, Mapping[str, float]]] = None) -> DiagramScene:
    """Assemble the drawable scene, applying any pinned positions."""
    ctx = lat.context
    layers = assign_layers(lat)
    xs = assign_x(lat, layers)
    pins = pins or {}

    attribute_texts = [[] for _ in lat.concepts]
    for m, node in enumerate(lat.attribute_labels):
        attribute_texts[node].append(ctx.attributes[m])
    object_texts = [[] for _ in lat.concepts]
    for g, node in enumerate(lat.object_labels):
        object_texts[node].append(ctx.objects[g])

    nodes = []
    for i, concept in enumerate(lat.concepts):
        key = intent_key(ctx, concept.intent)
        pin = pins.get(key)
        x, y = (float(pin["x"]), float(pin["y"])) if pin else (xs[i], float(layers[i]))
        nodes.append(SceneNode(
            index=i, x=x, y=y, intent_key=key,
            extent_names=ctx.object_names(concept.extent),
            intent_names=ctx.attribute_names(concept.intent),
            has_attribute_label=bool(attribute_texts[i]),
            has_object_label=bool(object_texts[i]),
            attribute_label_names=tuple(attribute_texts[i]),
            object_label_names=tuple(object_texts[i]),
            attribute_label_text=", ".join(attribute_texts[i]),
            object_label_text=", ".join(object_texts[i]),
            pinned=pin is not None))
    edges = tuple(sorted(lat.covers))
    return DiagramScene(nodes=tuple(nodes), edges=edges)


def scene_to_dict(scene: DiagramScene) -> dict:
    return {
        "nodes": [
            {
                "index": n.index,
                "x": n.x,
                "y": n.y,
                "intent_key": n.intent_key,
                "extent": list(n.extent_names),
                "intent": list(n.intent_names),
                "has_attribute_label": n.has_attribute_label,
                "has_object_label": n.has_object_label,
                "attribute_label_names": list(n.attribute_label_names),
                "object_label_names": list(n.object_label_names),
                "attribute_label": n.attribute_label_text,
                "object_label": n.object_label_text,
                "pinned": n.pinned,
            }
            for n in scene.nodes
        ],
        "edges": [[child, parent] for child, parent in scene.edges],
    }


def scene_from_dict(data: dict) -> DiagramScene:
    nodes = tuple(
        SceneNode(
            index=entry["index"], x=float(entry["x"]), y=float(entry["y"]),
            intent_key=entry["intent_key"],
            extent_names=tuple(entry["extent"]),
            intent_names=tuple(entry["intent"]),
            has_attribute_label=entry["has_attribute_label"],
            has_object_label=entry["has_object_label"],
            attribute_label_names=tuple(entry["attribute_label_names"]),
            object_label_names=tuple(entry["object_label_names"]),
            attribute_label_text=entry["attribute_label"],
            object_label_text=entry["object_label"],
            pinned=entry["pinned"])
        for entry in data["nodes"])
    edges = tuple((int(a), int(b)) for a, b in data["edges"])
    return DiagramScene(nodes=nodes, edges=edges)


def render_json(scene: DiagramScene) -> str:
    return json.dumps(scene_to_dict(scene), indent=2, sort_keys=True) + "\n"


def render_dot(scene: DiagramScene) -> str:
    """Graphviz text: one rank per layer, edges drawn parent to child."""
    out = ["graph lattice {", "  node [shape=circle, width=0.25, fixedsize=true];"]
    by_layer: dict[float, list[SceneNode]] = {}
    for node in scene.nodes:
        by_layer.setdefault(node.y, []).append(node)
    for y in sorted(by_layer):
        row = sorted(by_layer[y], key=lambda n: (n.x, n.index))
        names = "; ".join(f"n{n.index}" for n in row)
        out.append(f"  {{ rank=same; {names}; }}")
    for node in scene.nodes:
        caption_parts = []
        if node.has_attribute_label:
            caption_parts.append(node.attribute_label_text)
        if node.has_object_label:
            caption_parts.append(node.object_label_text)
        caption = "\\n".join(_dot_escape(part) for part in caption_parts)
        out.append(f'  n{node.index} [label="{caption}"];')
    for child, parent in scene.edges:
        out.append(f"  n{parent} -- n{child};")
    out.append("}")
    return "\n".join(out) + "\n"


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


X_STEP = 90.0
Y_STEP = 90.0
MARGIN = 70.0
RADIUS = 8.0


def _fmt(value: float) -> str:
    rounded = round(value, 2)
    if rounded == int(rounded):
        return str(int(rounded))
    return f"{rounded:g}"


def render_svg(scene: DiagramScene) -> str:
    """Self-contained SVG in the style of a classic line diagram.

    Nodes are circles; a filled upper half marks an attached attribute
    label (text above), a filled lower half an attached object label
    (text slightly below).
    """
    if scene.nodes:
        min_x = min(n.x for n in scene.nodes)
        max_x = max(n.x for n in scene.nodes)
        max_y = max(n.y for n in scene.nodes)
        min_y = min(n.y for n in scene.nodes)
    else:
        min_x = max_x = min_y = max_y = 0.0

    def px(node_x: float) -> float:
        return MARGIN + (node_x - min_x) * X_STEP

    def py(node_y: float) -> float:
        return MARGIN + (node_y - min_y) * Y_STEP

    width = px(max_x) + MARGIN
    height = py(max_y) + MARGIN
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_fmt(width)} {_fmt(height)}" '
        f'width="{_fmt(width)}" height="{_fmt(height)}">',
        '  <style>text { font: 11px sans-serif; } .attr { fill: #1c4fa0; } '
        '.obj { fill: #222222; }</style>',
    ]
    for child, parent in scene.edges:
        c, p = scene.nodes[child], scene.nodes[parent]
        out.append(
            f'  <line x1="{_fmt(px(p.x))}" y1="{_fmt(py(p.y))}" '
            f'x2="{_fmt(px(c.x))}" y2="{_fmt(py(c.y))}" '
            'stroke="#555555" stroke-width="1"/>')
    for node in scene.nodes:
        cx, cy = px(node.x), py(node.y)
        out.append(
            f'  <circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(RADIUS)}" '
            'fill="#ffffff" stroke="#333333" stroke-width="1"/>')
        if node.has_attribute_label:
            out.append(
                f'  <path d="M {_fmt(cx - RADIUS)} {_fmt(cy)} '
                f'A {_fmt(RADIUS)} {_fmt(RADIUS)} 0 0 1 {_fmt(cx + RADIUS)} {_fmt(cy)} Z" '
                'fill="#4a7bc8" stroke="#333333" stroke-width="1"/>')
        if node.has_object_label:
            out.append(
                f'  <path d="M {_fmt(cx + RADIUS)} {_fmt(cy)} '
                f'A {_fmt(RADIUS)} {_fmt(RADIUS)} 0 0 1 {_fmt(cx - RADIUS)} {_fmt(cy)} Z" '
                'fill="#333333" stroke="#333333" stroke-width="1"/>')
        for k, name in enumerate(node.attribute_label_names):
            ty = cy - RADIUS - 6 - 13.0 * (len(node.attribute_label_names) - 1 - k)
            out.append(
                f'  <text class="attr" x="{_fmt(cx)}" y="{_fmt(ty)}" '
                f'text-anchor="middle">{_svg_escape(name)}</text>')
        for k, name in enumerate(node.object_label_names):
            ty = cy + RADIUS + 14 + 13.0 * k
            out.append(
                f'  <text class="obj" x="{_fmt(cx)}" y="{_fmt(ty)}" '
                f'text-anchor="middle">{_svg_escape(name)}</text>')
    out.append('</svg>')
    return "\n".join(out) + "\n"


def _svg_escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;"))


def load_pins(text: str) -> dict[str, dict[str, float]]:
    """Parse a sidecar layout file: {"pins": {intent-key: {x, y}}}."""
    data = json.loads(text)
    pins = data.get("pins", {})
    out = {}
    for key, pos in pins.items():
        out[str(key)] = {"x": float(pos["x"]), "y": float(pos["y"])}
    return out


def dump_pins(pins: Mapping[str, Mapping[str, float]]) -> str:
    ordered = {key: {"x": float(pos["x"]), "y": float(pos["y"])}
               for key, pos in sorted(pins.items())}
    return json.dumps({"pins": ordered}, indent=2, sort_keys=True) + "\n"
