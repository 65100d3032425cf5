"""Shared fixtures: reference graphs and frozen expected values."""

import random
from fractions import Fraction

import pytest

from splicemult import ResolutionGraph

# Two-node tree with |H| = 12: ten vertices, all weights -2 except
# vertex 6 = -4; ends 1..4, nodes 5 and 8.
H12_WEIGHTS = {i: (-4 if i == 6 else -2) for i in range(1, 11)}
# Same tree shape with |H| = 60: weights -3 at vertices 1 and 5.
H60_WEIGHTS = {i: (-3 if i in (1, 5) else (-4 if i == 6 else -2))
               for i in range(1, 11)}
TWO_NODE_EDGES = [(1, 5), (2, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 3),
                  (8, 10), (10, 4)]


def _frac_row(values):
    return tuple(Fraction(v) for v in values)


# Dual cycles E_1* .. E_5* of the |H|=12 graph, frozen reference values.
H12_DUAL_ROWS = {
    1: _frac_row(["1", "1/2", "1/2", "1/2", "1", "1/2", "1", "3/2", "1", "1"]),
    2: _frac_row(["1/2", "1", "1/2", "1/2", "1", "1/2", "1", "3/2", "1", "1"]),
    3: _frac_row(["1/2", "1/2", "7/3", "5/3", "1", "1", "3", "5", "11/3", "10/3"]),
    4: _frac_row(["1/2", "1/2", "5/3", "7/3", "1", "1", "3", "5", "10/3", "11/3"]),
    5: _frac_row(["1", "1", "1", "1", "2", "1", "2", "3", "2", "2"]),
}

# All ten subgroups of H = Z/2 x Z/6 for the |H|=12 graph: generators (as
# sparse dual-coordinate maps), flat-subgroup generators, |H1|, the gcd
# cycle Z in dual coordinates, and the multiplicity.
H12_TABLE = [
    {"gens": [], "flat": [{1: 1}, {3: 1}], "order": 1,
     "z_dual": {5: Fraction(1, 2)}, "mult": 6},
    {"gens": [{1: 1}], "flat": [{1: 1}, {3: 2}], "order": 2,
     "z_dual": {1: 1}, "mult": 6},
    {"gens": [{3: 3}], "flat": [{3: 1}], "order": 2,
     "z_dual": {6: 1}, "mult": 6},
    {"gens": [{1: 1, 3: 3}], "flat": [{1: 1, 3: 1}], "order": 2,
     "z_dual": {2: 1}, "mult": 6},
    {"gens": [{3: 2}], "flat": [{1: 1}, {3: 3}], "order": 3,
     "z_dual": {5: Fraction(1, 2)}, "mult": 2},
    {"gens": [{1: 1}, {3: 3}], "flat": [{3: 2}], "order": 4,
     "z_dual": {5: 1}, "mult": 6},
    {"gens": [{3: 1}], "flat": [{3: 3}], "order": 6,
     "z_dual": {5: 1}, "mult": 4},
    {"gens": [{1: 1}, {3: 2}], "flat": [{1: 1}], "order": 6,
     "z_dual": {1: 1}, "mult": 2},
    {"gens": [{1: 1, 3: 1}], "flat": [{1: 1, 3: 3}], "order": 6,
     "z_dual": {2: 1}, "mult": 2},
    {"gens": [{1: 1}, {3: 1}], "flat": [], "order": 12,
     "z_dual": {5: 1}, "mult": 2},
]


@pytest.fixture(scope="session")
def tree_h12():
    return ResolutionGraph(H12_WEIGHTS, TWO_NODE_EDGES)


@pytest.fixture(scope="session")
def tree_h60():
    return ResolutionGraph(H60_WEIGHTS, TWO_NODE_EDGES)


@pytest.fixture(scope="session")
def a2_chain():
    return ResolutionGraph({1: -2, 2: -2}, [(1, 2)])


@pytest.fixture(scope="session")
def d4_star():
    return ResolutionGraph({1: -2, 2: -2, 3: -2, 4: -2},
                           [(4, 1), (4, 2), (4, 3)])


@pytest.fixture(scope="session")
def monomial_fail_graph():
    # two adjacent nodes; no admissible monomial exists at node 5 for the
    # branch through vertex 6
    return ResolutionGraph({1: -4, 2: -4, 3: -4, 4: -4, 5: -4, 6: -1},
                           [(1, 5), (2, 5), (5, 6), (3, 6), (4, 6)])


@pytest.fixture(scope="session")
def all_test_graphs(tree_h12, tree_h60, a2_chain, d4_star):
    return [tree_h12, tree_h60, a2_chain, d4_star]


def random_trees(seed, count, max_vertices=8, max_ends=6, max_order=20):
    """Deterministic stream of small valid graphs for property tests."""
    from splicemult import SpliceMultError, discriminant_group

    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < 20000:
        attempts += 1
        n = rng.randint(2, max_vertices)
        weights = {}
        edges = []
        for i in range(1, n + 1):
            weights[i] = rng.choice([-2, -2, -2, -3, -4])
            if i > 1:
                edges.append((rng.randint(1, i - 1), i))
        try:
            g = ResolutionGraph(weights, edges)
        except SpliceMultError:
            continue
        if len(g.ends) > max_ends:
            continue
        if discriminant_group(g).order > max_order:
            continue
        out.append(g)
    assert len(out) == count, "random graph generation starved"
    return out


def graph_json(g):
    import json

    return json.dumps(g.to_dict())


def hilbert_oracle(g, basis, h1, volume_cap=100_000):
    """Brute-force minimal-element computation over the full ord-bounded box.

    Independent route: membership through exact vertex-basis intersection
    numbers (never through residue arithmetic), end orders found by search,
    and minimality decided by explicit two-part decompositions.  Returns the
    set of generator exponent vectors, or None when the box would exceed
    volume_cap.
    """
    import itertools

    from splicemult import intersect

    ends = g.ends
    source = h1.group.graph
    gen_expansions = [
        basis.expand({v: c for v, c in zip(source.vertex_ids, gen)})
        for gen in h1.generators]
    # pairing of E_i* against each generator, via the intersection form
    pair = {e: [intersect(basis.dual_cycle(e), ge) for ge in gen_expansions]
            for e in ends}

    def member(vec):
        for k in range(len(gen_expansions)):
            total = sum(a * pair[e][k] for a, e in zip(vec, ends))
            if total.denominator != 1:
                return False
        return True

    orders = []
    for e in ends:
        o = 1
        while not member(tuple(o if x == e else 0 for x in ends)):
            o += 1
            assert o <= h1.group.order + 1
        orders.append(o)

    volume = 1
    for o in orders:
        volume *= o + 1
    if volume > volume_cap:
        return None

    members = [vec for vec in
               itertools.product(*(range(o + 1) for o in orders))
               if any(vec) and member(vec)]
    member_set = set(members)

    def decomposable(vec):
        for u in members:
            if u != vec and all(a <= b for a, b in zip(u, vec)):
                rest = tuple(b - a for a, b in zip(u, vec))
                if rest in member_set:
                    return True
        return False

    return {vec for vec in members if not decomposable(vec)}
