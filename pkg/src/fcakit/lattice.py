"""Concept lattices: order, covering relation, labels, law checks.

The lattice is a thin indexed structure over the concept list: concepts
are referred to by their position in lectic order, so downstream layers
(layout, service, UI) can hold stable integer handles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from .bitsets import bits, is_subset, mask_of
from .context import (
    Concept,
    FormalContext,
    close_attributes,
    derive_extent,
    derive_intent,
    enumerate_concepts,
)
from .errors import NotALattice


def leq(c1: Concept, c2: Concept) -> bool:
    """Subconcept order: extent containment (equivalently reversed intents)."""
    return is_subset(c1.extent, c2.extent)


@dataclass(frozen=True)
class ConceptLattice:
    """All concepts of a context with order, covers and label attachments.

    ``covers`` holds (child, parent) index pairs of the transitive
    reduction.  ``object_labels[g]`` is the index of the object concept
    of g, ``attribute_labels[m]`` the attribute concept of m; top and
    bottom are always index 0 and the last index because lectic order
    sorts intents by containment-compatible rank.
    """

    context: FormalContext
    concepts: tuple[Concept, ...]
    covers: frozenset[tuple[int, int]]
    object_labels: tuple[int, ...]
    attribute_labels: tuple[int, ...]
    top: int
    bottom: int

    def index_of_intent(self, intent: int) -> int:
        """Index of the concept with this exact intent (KeyError if none)."""
        try:
            return self._intent_index[intent]
        except AttributeError:
            lookup = {c.intent: i for i, c in enumerate(self.concepts)}
            object.__setattr__(self, "_intent_index", lookup)
            return self._intent_index[intent]

    def upper_covers(self, i: int) -> list[int]:
        return sorted(p for c, p in self.covers if c == i)

    def lower_covers(self, i: int) -> list[int]:
        return sorted(c for c, p in self.covers if p == i)


def build_lattice(ctx: FormalContext) -> ConceptLattice:
    """Enumerate concepts and assemble order, covers and labels."""
    concepts = tuple(enumerate_concepts(ctx))
    by_intent = {c.intent: i for i, c in enumerate(concepts)}
    n = len(concepts)

    covers = set()
    for i, child in enumerate(concepts):
        uppers = [j for j, parent in enumerate(concepts)
                  if i != j and is_subset(child.extent, parent.extent)]
        uppers.sort(key=lambda j: concepts[j].extent.bit_count())
        for j in uppers:
            if not any(is_subset(concepts[k].extent, concepts[j].extent) and k != j
                       for k in uppers
                       if concepts[k].extent.bit_count() < concepts[j].extent.bit_count()):
                covers.add((i, j))

    # {g}' is already closed, so it is the object concept's intent
    object_labels = tuple(
        by_intent[derive_extent(ctx, 1 << g)] for g in range(ctx.n_objects))
    attribute_labels = tuple(
        by_intent[close_attributes(ctx, 1 << m)] for m in range(ctx.n_attributes))

    top = by_intent[concepts[0].intent]
    assert concepts[top].extent == ctx.all_objects
    bottom = n - 1
    assert derive_extent(ctx, concepts[bottom].extent) == concepts[bottom].intent
    assert concepts[bottom].intent == close_attributes(ctx, ctx.all_attributes)

    return ConceptLattice(
        context=ctx, concepts=concepts, covers=frozenset(covers),
        object_labels=object_labels, attribute_labels=attribute_labels,
        top=top, bottom=bottom)


def meet(lat: ConceptLattice, c1: Concept, c2: Concept) -> Concept:
    """Greatest lower bound: intersect extents, close to a concept."""
    extent = c1.extent & c2.extent
    intent = derive_extent(lat.context, extent)
    return Concept(extent=derive_intent(lat.context, intent), intent=intent)


def join(lat: ConceptLattice, c1: Concept, c2: Concept) -> Concept:
    """Least upper bound: intersect intents, close to a concept."""
    intent = c1.intent & c2.intent
    extent = derive_intent(lat.context, intent)
    return Concept(extent=extent, intent=derive_extent(lat.context, extent))


def read_extent_from_diagram(lat: ConceptLattice, c: int) -> int:
    """Objects whose label sits at or below node ``c`` (walking down)."""
    node = lat.concepts[c]
    return mask_of(g for g in range(lat.context.n_objects)
                   if leq(lat.concepts[lat.object_labels[g]], node))


def read_intent_from_diagram(lat: ConceptLattice, c: int) -> int:
    """Attributes whose label sits at or above node ``c``."""
    node = lat.concepts[c]
    return mask_of(m for m in range(lat.context.n_attributes)
                   if leq(node, lat.concepts[lat.attribute_labels[m]]))


def fundamental_theorem_check(elements: Sequence[Hashable],
                              order: Callable[[Hashable, Hashable], bool]) -> bool:
    """Check that a finite lattice is isomorphic to its own concept lattice.

    The input is an abstract order (L, ≤).  After validating that it is
    a partial order with all pairwise meets and joins, the concept
    lattice of the context (L, L, ≤) is built and the canonical map
    x ↦ (down-set of x, up-set of x) is verified to be an order
    isomorphism.  Exponential-free: the map is explicit, not searched.
    """
    elems = list(elements)
    n = len(elems)
    if n == 0:
        raise NotALattice("a complete lattice has at least one element")

    below = [[bool(order(elems[i], elems[j])) for j in range(n)] for i in range(n)]
    for i in range(n):
        if not below[i][i]:
            raise NotALattice("order is not reflexive")
        for j in range(n):
            if i != j and below[i][j] and below[j][i]:
                raise NotALattice("order is not antisymmetric")
            for k in range(n):
                if below[i][j] and below[j][k] and not below[i][k]:
                    raise NotALattice("order is not transitive")

    def greatest(candidates):
        for x in candidates:
            if all(below[y][x] for y in candidates):
                return x
        return None

    def least(candidates):
        for x in candidates:
            if all(below[x][y] for y in candidates):
                return x
        return None

    for i in range(n):
        for j in range(i + 1, n):
            lower = [k for k in range(n) if below[k][i] and below[k][j]]
            upper = [k for k in range(n) if below[i][k] and below[j][k]]
            if greatest(lower) is None or least(upper) is None:
                raise NotALattice(
                    f"elements {elems[i]!r} and {elems[j]!r} lack a meet or join")

    ctx = FormalContext.from_table(
        [f"g{i}" for i in range(n)], [f"m{j}" for j in range(n)], below)
    concepts = enumerate_concepts(ctx)
    if len(concepts) != n:
        return False

    by_pair = {(c.extent, c.intent) for c in concepts}
    images = []
    for i in range(n):
        down = mask_of(k for k in range(n) if below[k][i])
        up = mask_of(k for k in range(n) if below[i][k])
        if (down, up) not in by_pair:
            return False
        images.append(down)
    if len(set(images)) != n:
        return False
    for i in range(n):
        for j in range(n):
            if below[i][j] != is_subset(images[i], images[j]):
                return False
    return True
