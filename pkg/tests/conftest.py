"""Shared fixtures and slow-but-obvious oracle implementations.

The oracles deliberately avoid the library's bitmask machinery: they work
on frozensets over a row-major boolean table, so a bug in the fast path
cannot hide in the reference path too.
"""

import pathlib
import random

import pytest

from fcakit import FormalContext, parse_cxt

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

# the reference tool's implication listing for the planets context,
# byte for byte
PLANETS_LISTING = (
    "1 < 2 > medium ==> far from sun, moon;\n"
    "2 < 2 > large ==> far from sun, moon;\n"
    "3 < 4 > near sun ==> small;\n"
    "4 < 5 > far from sun ==> moon;\n"
    "5 < 2 > no moon ==> near sun, small;\n"
)


@pytest.fixture
def planets() -> FormalContext:
    return parse_cxt(FIXTURES.joinpath("planets.cxt").read_text())


@pytest.fixture
def planets_listing() -> str:
    return PLANETS_LISTING


def oracle_prime_objects(table, n_attributes, object_set):
    """Attributes shared by all objects in the set (frozenset oracle).

    The attribute count is a separate argument because an empty table
    has no row to measure.
    """
    out = set(range(n_attributes))
    for g in object_set:
        out &= {m for m in range(n_attributes) if table[g][m]}
    return frozenset(out)


def oracle_prime_attributes(table, attribute_set):
    """Objects having all attributes in the set (frozenset oracle)."""
    out = set(range(len(table)))
    for m in attribute_set:
        out &= {g for g in range(len(table)) if table[g][m]}
    return frozenset(out)


def oracle_concepts(table, n_attributes):
    """All concepts by brute force over every attribute subset.

    Returns a set of (extent, intent) frozenset pairs.  Exponential in
    the attribute count, fine for |M| <= 12.
    """
    out = set()
    for code in range(1 << n_attributes):
        intent = frozenset(m for m in range(n_attributes) if code >> m & 1)
        extent = oracle_prime_attributes(table, intent)
        if oracle_prime_objects(table, n_attributes, extent) == intent:
            out.add((extent, intent))
    return out


def oracle_pseudo_intents(table, n_attributes):
    """Pseudo-intents by definition, scanning subsets smallest-first.

    A set P is a pseudo-intent when it is not closed but contains the
    closure of every pseudo-intent strictly below it.  The definition
    recurses on proper subsets only, so one pass in cardinality order
    settles every set.  Exponential; fine for |M| <= 12.
    """
    def closure(s):
        return oracle_prime_objects(table, n_attributes, oracle_prime_attributes(table, s))

    subsets = sorted(
        (frozenset(m for m in range(n_attributes) if code >> m & 1)
         for code in range(1 << n_attributes)),
        key=len)
    pseudo = []
    for p in subsets:
        if closure(p) == p:
            continue
        if all(closure(q) <= p for q in pseudo if q < p):
            pseudo.append(p)
    return set(pseudo)


def oracle_stem_base(table, n_attributes):
    """Canonical base as a set of (premise, closure) frozenset pairs."""
    def closure(s):
        return oracle_prime_objects(table, n_attributes, oracle_prime_attributes(table, s))

    return {(p, closure(p)) for p in oracle_pseudo_intents(table, n_attributes)}


def random_context(rng: random.Random, max_objects=6, max_attributes=6,
                   density=0.5) -> FormalContext:
    g = rng.randint(0, max_objects)
    m = rng.randint(0, max_attributes)
    table = [[rng.random() < density for _ in range(m)] for _ in range(g)]
    return FormalContext.from_table(
        [f"g{i}" for i in range(g)], [f"m{j}" for j in range(m)], table)


def explore_truthfully(universe, session, max_steps=100000):
    """Drive a session answering every question against a hidden context.

    The universe must share the session's attribute list.  A question is
    accepted when it holds in the universe; otherwise the first universe
    object refuting it is supplied as the counterexample.
    """
    from fcakit import close_attributes, is_subset
    from fcakit.exploration import accept, reject_with_counterexample

    steps = 0
    while not session.finished:
        assert steps < max_steps, "exploration failed to terminate"
        steps += 1
        premise = session.cursor
        conclusion = premise | session.current_question.conclusion
        if is_subset(conclusion, close_attributes(universe, premise)):
            session = accept(session)
        else:
            g = next(i for i, row in enumerate(universe.rows)
                     if is_subset(premise, row) and not is_subset(conclusion, row))
            session = reject_with_counterexample(
                session, universe.objects[g], universe.rows[g])
    return session


def contexts_of_shape(g, m):
    """Every context with g objects and m attributes, one per incidence."""
    for code in range(1 << (g * m)):
        rows = [sum(((code >> (i * m + j)) & 1) << j for j in range(m))
                for i in range(g)]
        yield FormalContext.from_rows(
            [f"g{i}" for i in range(g)], [f"m{j}" for j in range(m)], rows)
