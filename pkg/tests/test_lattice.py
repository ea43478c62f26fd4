"""Lattice construction: order, covers, labels, and the theorem check."""

import random

import pytest

from fcakit import FormalContext, enumerate_concepts, mask_of
from fcakit.errors import NotALattice
from fcakit.lattice import (
    ConceptLattice,
    build_lattice,
    fundamental_theorem_check,
    join,
    leq,
    meet,
    read_extent_from_diagram,
    read_intent_from_diagram,
)

from conftest import random_context

SMALL, MEDIUM, LARGE, NEAR, FAR, MOON, NOMOON = range(7)


@pytest.fixture
def planet_lattice(planets) -> ConceptLattice:
    return build_lattice(planets)


def concept_with_intent(lat, attrs):
    return lat.concepts[lat.index_of_intent(mask_of(attrs))]


def test_leq_examples(planet_lattice):
    lat = planet_lattice
    earth_mars = concept_with_intent(lat, [SMALL, NEAR, MOON])
    earth_mars_pluto = concept_with_intent(lat, [SMALL, MOON])
    assert leq(earth_mars, earth_mars_pluto)
    assert not leq(earth_mars_pluto, earth_mars)
    assert leq(earth_mars, earth_mars)
    mercury_venus = concept_with_intent(lat, [SMALL, NEAR, NOMOON])
    jupiter_saturn = concept_with_intent(lat, [LARGE, FAR, MOON])
    assert not leq(mercury_venus, jupiter_saturn)
    assert not leq(jupiter_saturn, mercury_venus)


def test_planets_lattice_shape(planet_lattice):
    lat = planet_lattice
    assert len(lat.concepts) == 12
    assert len(lat.covers) == 18
    assert lat.top == 0
    assert lat.bottom == 11
    assert lat.concepts[lat.top].extent == lat.context.all_objects
    assert lat.concepts[lat.top].intent == 0
    assert lat.concepts[lat.bottom].extent == 0
    assert lat.concepts[lat.bottom].intent == lat.context.all_attributes


def test_planets_labels(planets, planet_lattice):
    lat = planet_lattice
    # every object and attribute attaches to exactly one node
    assert len(lat.object_labels) == 9
    assert len(lat.attribute_labels) == 7
    # Uranus and Neptune share the node labeled "medium"
    u = planets.object_index("Uranus (U)")
    n = planets.object_index("Neptune (N)")
    assert lat.object_labels[u] == lat.object_labels[n] == lat.attribute_labels[MEDIUM]
    # small and moon label distinct upper nodes
    assert lat.attribute_labels[SMALL] != lat.attribute_labels[MOON]
    small_node = lat.concepts[lat.attribute_labels[SMALL]]
    assert small_node.intent == 1 << SMALL


def test_covers_are_transitive_reduction(planet_lattice):
    lat = planet_lattice
    n = len(lat.concepts)
    # reachability through covers must equal the full order
    reach = [set([i]) for i in range(n)]
    changed = True
    while changed:
        changed = False
        for child, parent in lat.covers:
            extended = reach[child] | reach[parent]
            if extended != reach[child]:
                reach[child] = extended
                changed = True
    for i in range(n):
        for j in range(n):
            assert (j in reach[i]) == leq(lat.concepts[i], lat.concepts[j])
    # and no cover may be implied by a two-step path
    for child, parent in lat.covers:
        for mid in range(n):
            if mid in (child, parent):
                continue
            assert not (leq(lat.concepts[child], lat.concepts[mid])
                        and leq(lat.concepts[mid], lat.concepts[parent]))


def test_covers_random_contexts():
    rng = random.Random(4242)
    for _ in range(25):
        ctx = random_context(rng, max_objects=6, max_attributes=6)
        lat = build_lattice(ctx)
        n = len(lat.concepts)
        order = {(i, j) for i in range(n) for j in range(n)
                 if leq(lat.concepts[i], lat.concepts[j])}
        closure = set(lat.covers) | {(i, i) for i in range(n)}
        changed = True
        while changed:
            changed = False
            for (a, b) in list(closure):
                for (c, d) in list(closure):
                    if b == c and (a, d) not in closure:
                        closure.add((a, d))
                        changed = True
        assert closure == order


def test_meet_and_join_examples(planets, planet_lattice):
    lat = planet_lattice
    small_c = lat.concepts[lat.attribute_labels[SMALL]]
    moon_c = lat.concepts[lat.attribute_labels[MOON]]
    met = meet(lat, small_c, moon_c)
    assert met.intent == mask_of([SMALL, MOON])
    assert planets.object_names(met.extent) == ("Earth (E)", "Mars (Ma)", "Pluto (P)")

    top = lat.concepts[lat.top]
    for c in lat.concepts:
        assert meet(lat, c, top) == c
        assert join(lat, c, lat.concepts[lat.bottom]) == c

    mercury = lat.concepts[lat.object_labels[planets.object_index("Mercury (Me)")]]
    pluto = lat.concepts[lat.object_labels[planets.object_index("Pluto (P)")]]
    assert join(lat, mercury, pluto) == small_c


def test_meet_join_laws(planet_lattice):
    lat = planet_lattice
    for c1 in lat.concepts:
        for c2 in lat.concepts:
            m = meet(lat, c1, c2)
            j = join(lat, c1, c2)
            assert m == meet(lat, c2, c1)
            assert j == join(lat, c2, c1)
            assert leq(m, c1) and leq(m, c2)
            assert leq(c1, j) and leq(c2, j)
            # greatest lower / least upper among all concepts
            for other in lat.concepts:
                if leq(other, c1) and leq(other, c2):
                    assert leq(other, m)
                if leq(c1, other) and leq(c2, other):
                    assert leq(j, other)
            # absorption
            assert meet(lat, c1, join(lat, c1, c2)) == c1
            assert join(lat, c1, meet(lat, c1, c2)) == c1


def test_read_from_diagram_matches_stored(planets, planet_lattice):
    lat = planet_lattice
    for i, c in enumerate(lat.concepts):
        assert read_extent_from_diagram(lat, i) == c.extent
        assert read_intent_from_diagram(lat, i) == c.intent
    central = lat.index_of_intent(mask_of([SMALL, MOON]))
    assert planets.object_names(read_extent_from_diagram(lat, central)) == (
        "Earth (E)", "Mars (Ma)", "Pluto (P)")
    assert read_intent_from_diagram(lat, lat.top) == 0
    assert read_extent_from_diagram(lat, lat.top) == planets.all_objects


def test_single_node_lattice():
    ctx = FormalContext.from_table(["g"], ["m"], [[True]])
    lat = build_lattice(ctx)
    assert len(lat.concepts) == 1
    assert lat.top == lat.bottom == 0
    assert lat.covers == frozenset()


def test_contranominal_3x3_is_boolean():
    ctx = FormalContext.from_table(
        "abc", "pqr", [[g != m for m in range(3)] for g in range(3)])
    lat = build_lattice(ctx)
    assert len(lat.concepts) == 8
    assert len(lat.covers) == 12


def test_order_agreement_random():
    rng = random.Random(11)
    for _ in range(20):
        ctx = random_context(rng, max_objects=5, max_attributes=5)
        lat = build_lattice(ctx)
        for c1 in lat.concepts:
            for c2 in lat.concepts:
                extent_leq = (c1.extent & ~c2.extent) == 0
                intent_geq = (c2.intent & ~c1.intent) == 0
                assert extent_leq == intent_geq


def chain_order(n):
    return list(range(n)), lambda x, y: x <= y


def boolean_order(k):
    return list(range(1 << k)), lambda x, y: x & ~y == 0


def test_theorem_chains():
    for n in range(1, 7):
        elements, order = chain_order(n)
        assert fundamental_theorem_check(elements, order)


def test_theorem_boolean():
    for k in range(5):
        elements, order = boolean_order(k)
        assert fundamental_theorem_check(elements, order)


def test_theorem_planets_self_application(planet_lattice):
    lat = planet_lattice
    assert fundamental_theorem_check(
        list(range(len(lat.concepts))),
        lambda i, j: leq(lat.concepts[i], lat.concepts[j]))


def test_theorem_rejects_non_lattices():
    with pytest.raises(NotALattice):
        fundamental_theorem_check([], lambda x, y: True)
    with pytest.raises(NotALattice):
        # two incomparable elements, no bounds at all
        fundamental_theorem_check([0, 1], lambda x, y: x == y)
    with pytest.raises(NotALattice):
        # not antisymmetric
        fundamental_theorem_check([0, 1], lambda x, y: True)
    with pytest.raises(NotALattice):
        # crown poset: two minimal below two maximal, no meets or joins
        elements = ["a", "b", "x", "y"]
        pairs = {("a", "x"), ("a", "y"), ("b", "x"), ("b", "y")}
        fundamental_theorem_check(
            elements, lambda p, q: p == q or (p, q) in pairs)
