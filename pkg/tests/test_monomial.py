"""Monomial condition, base points, Hilbert bases, gcd cycles, skeletons."""

from fractions import Fraction

import pytest

from splicemult import (
    QCycle,
    base_point_set,
    branch_cycle,
    branches,
    coefficient,
    discriminant_group,
    dual_cycles,
    gcd_cycle,
    hilbert_basis,
    monomial_condition,
    neumann_wahl_system,
    subgroup,
    trivial_subgroup,
)
from splicemult.errors import (
    CapExceededError,
    EmptySetError,
    MonomialConditionError,
    UnknownVertexError,
)


def _exponent_sets(entry):
    return {m.monomial_string() for m in entry.witnesses}


# --- coefficient extraction ---------------------------------------------------


def test_coefficient_h12(tree_h12):
    basis = dual_cycles(tree_h12)
    assert coefficient(basis.dual_cycle(1), 5) == 1
    assert coefficient(basis.dual_cycle(3), 8) == 5
    assert coefficient(QCycle.zero(tree_h12), 7) == 0
    with pytest.raises(UnknownVertexError):
        coefficient(QCycle.zero(tree_h12), 99)


# --- monomial condition ----------------------------------------------------------


def test_monomial_condition_h12(tree_h12):
    report = monomial_condition(tree_h12, dual_cycles(tree_h12))
    assert report.satisfied
    by_key = {(e.node, e.branch): e for e in report.entries}
    assert _exponent_sets(by_key[(5, (1,))]) == {"z1^2"}
    assert _exponent_sets(by_key[(5, (2,))]) == {"z2^2"}
    assert _exponent_sets(by_key[(5, (3, 4, 6, 7, 8, 9, 10))]) == {"z3*z4"}
    assert _exponent_sets(by_key[(8, (3, 9))]) == {"z3^3"}
    assert _exponent_sets(by_key[(8, (4, 10))]) == {"z4^3"}
    # five incomparable minimal witnesses on the branch through both ends
    assert _exponent_sets(by_key[(8, (1, 2, 5, 6, 7))]) == {
        "z1*z2^9", "z1^3*z2^7", "z1^5*z2^5", "z1^7*z2^3", "z1^9*z2"}


def test_monomial_condition_witnesses_satisfy_definition(tree_h12, tree_h60):
    for g in (tree_h12, tree_h60):
        basis = dual_cycles(g)
        report = monomial_condition(g, basis)
        for entry in report.entries:
            node_dual = basis.dual_cycle(entry.node)
            branch = set(entry.branch)
            for witness in entry.witnesses:
                diff = witness.expansion - node_dual
                assert diff.is_integral() and diff.is_effective()
                assert all(diff.coefficient(v) == 0
                           for v in g.vertex_ids if v not in branch)
                # exponents vanish away from the branch
                assert all(a == 0 for e, a in witness.exponents.items()
                           if e not in branch)


def test_monomial_condition_vacuous_for_chain(a2_chain):
    report = monomial_condition(a2_chain, dual_cycles(a2_chain))
    assert report.satisfied and report.entries == ()


def test_monomial_condition_failure(monomial_fail_graph):
    report = monomial_condition(monomial_fail_graph,
                                dual_cycles(monomial_fail_graph))
    assert not report.satisfied
    assert report.failures()


# --- branch cycles -----------------------------------------------------------------


def test_branch_cycle_h12(tree_h12):
    basis = dual_cycles(tree_h12)
    n, d = branch_cycle(tree_h12, basis, 5, frozenset({1}))
    assert n == 1
    e1 = QCycle.from_coefficients(tree_h12, {1: 1})
    assert d == e1 + basis.dual_cycle(5)


def test_branch_cycle_chain(a2_chain):
    basis = dual_cycles(a2_chain)
    n, d = branch_cycle(a2_chain, basis, 1, frozenset({2}))
    assert n == 1
    assert d == QCycle.from_coefficients(a2_chain, {2: 1}) + basis.dual_cycle(1)


def test_branch_cycle_postcondition(all_test_graphs):
    for g in all_test_graphs:
        basis = dual_cycles(g)
        for w in g.vertex_ids:
            for br in branches(g, w):
                n, d = branch_cycle(g, basis, w, br)
                assert n >= 1
                diff = d - n * basis.dual_cycle(w)
                assert diff.is_integral() and diff.is_effective()
                assert all(diff.coefficient(v) == 0
                           for v in g.vertex_ids if v not in br)


def test_branch_cycle_rejects_non_branch(tree_h12):
    basis = dual_cycles(tree_h12)
    with pytest.raises(ValueError):
        branch_cycle(tree_h12, basis, 5, frozenset({1, 2}))


# --- base points ------------------------------------------------------------------


def _representable_oracle(target, weights):
    """Plain recursive search, independent of the bitset DP."""
    if target == 0:
        return True
    if not weights or target < 0:
        return False
    w, rest = weights[0], weights[1:]
    k = 0
    while k * w <= target:
        if _representable_oracle(target - k * w, rest):
            return True
        k += 1
    return False


def test_base_points_h12(tree_h12):
    assert base_point_set(tree_h12, dual_cycles(tree_h12)) == {3, 4}


def test_base_points_h60(tree_h60):
    base = base_point_set(tree_h60, dual_cycles(tree_h60))
    assert 1 not in base
    assert base == {3, 4}


def test_base_points_chain(a2_chain):
    assert base_point_set(a2_chain, dual_cycles(a2_chain)) == frozenset()


def test_base_points_match_oracle(all_test_graphs):
    for g in all_test_graphs:
        basis = dual_cycles(g)
        computed = base_point_set(g, basis)
        for i in g.ends:
            target = basis.entry(i, i)
            weights = [basis.entry(i, j) for j in g.ends if j != i]
            assert (i in computed) == (not _representable_oracle(target, weights))


def test_base_points_invariant_under_relabeling(tree_h12):
    relabel = {1: 40, 2: 17, 3: 25, 4: 33, 5: 50, 6: 60, 7: 7, 8: 80,
               9: 9, 10: 100}
    g = tree_h12
    g2 = type(g)({relabel[v]: g.weight(v) for v in g.vertex_ids},
                 [(relabel[a], relabel[b]) for a, b in g.edges])
    base = base_point_set(g2, dual_cycles(g2))
    assert base == {relabel[3], relabel[4]}


# --- Hilbert bases -----------------------------------------------------------------


def test_hilbert_basis_trivial_subgroup(tree_h12):
    basis = dual_cycles(tree_h12)
    group = discriminant_group(tree_h12, basis)
    hb = hilbert_basis(tree_h12, basis, trivial_subgroup(group))
    vectors = {m.exponent_vector((1, 2, 3, 4)) for m in hb}
    assert vectors == {(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)}


def test_hilbert_basis_chain_full_group(a2_chain):
    basis = dual_cycles(a2_chain)
    group = discriminant_group(a2_chain, basis)
    full = subgroup([{1: 1}, {2: 1}], group)
    hb = hilbert_basis(a2_chain, basis, full)
    vectors = {m.exponent_vector((1, 2)) for m in hb}
    assert vectors == {(1, 1), (3, 0), (0, 3)}


def test_hilbert_basis_h12_e1(tree_h12):
    basis = dual_cycles(tree_h12)
    group = discriminant_group(tree_h12, basis)
    hb = hilbert_basis(tree_h12, basis, subgroup([{1: 1}], group))
    vectors = {m.exponent_vector((1, 2, 3, 4)) for m in hb}
    assert vectors == {(1, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2),
                       (0, 1, 1, 0), (0, 1, 0, 1), (0, 0, 1, 1)}
    # graded-lexicographic output order
    keys = [(m.degree, m.exponent_vector((1, 2, 3, 4))) for m in hb]
    assert keys == sorted(keys)


def test_hilbert_basis_members_pass_perp(tree_h12):
    from splicemult import perp_member

    basis = dual_cycles(tree_h12)
    group = discriminant_group(tree_h12, basis)
    for gens in ([{1: 1}], [{3: 1}], [{3: 2}], [{1: 1, 3: 3}]):
        h1 = subgroup(gens, group)
        hb = hilbert_basis(tree_h12, basis, h1)
        for m in hb:
            coords = {v: m.exponents.get(v, 0) for v in tree_h12.ends}
            assert perp_member(coords, h1)
        # ord_i * e_i is always a member
        for label, order in zip(hb.labels, hb.orders):
            assert perp_member({label: order}, h1)


def test_hilbert_basis_generates_monoid(tree_h12):
    """Every member of the ord-bounded box decomposes as a nonnegative
    integer combination of the returned generators."""
    import itertools

    from splicemult import perp_member

    basis = dual_cycles(tree_h12)
    group = discriminant_group(tree_h12, basis)
    h1 = subgroup([{1: 1}], group)
    hb = hilbert_basis(tree_h12, basis, h1)
    gens = [m.exponent_vector(hb.labels) for m in hb]

    def decomposes(vec):
        if not any(vec):
            return True
        for gvec in gens:
            if all(a <= b for a, b in zip(gvec, vec)):
                if decomposes(tuple(b - a for a, b in zip(gvec, vec))):
                    return True
        return False

    for vec in itertools.product(*(range(o + 1) for o in hb.orders)):
        coords = {l: a for l, a in zip(hb.labels, vec)}
        if perp_member(coords, h1):
            assert decomposes(vec)


def test_hilbert_basis_box_cap(tree_h12):
    basis = dual_cycles(tree_h12)
    group = discriminant_group(tree_h12, basis)
    with pytest.raises(CapExceededError):
        hilbert_basis(tree_h12, basis, subgroup([{3: 1}], group), cap=10)


def test_hilbert_basis_oracle_small(tree_h12, a2_chain):
    from conftest import hilbert_oracle

    for g, gens in ((a2_chain, [{1: 1}, {2: 1}]), (tree_h12, [{1: 1}]),
                    (tree_h12, [{3: 2}])):
        basis = dual_cycles(g)
        group = discriminant_group(g, basis)
        h1 = subgroup(gens, group)
        hb = hilbert_basis(g, basis, h1)
        assert {m.exponent_vector(g.ends) for m in hb} == \
            hilbert_oracle(g, basis, h1)


# --- gcd cycle ---------------------------------------------------------------------


def test_gcd_cycle_h12_rows(tree_h12):
    basis = dual_cycles(tree_h12)
    group = discriminant_group(tree_h12, basis)
    z0 = gcd_cycle(hilbert_basis(tree_h12, basis, trivial_subgroup(group)))
    assert z0 == Fraction(1, 2) * basis.dual_cycle(5)
    z1 = gcd_cycle(hilbert_basis(tree_h12, basis, subgroup([{1: 1}], group)))
    assert z1 == basis.dual_cycle(1)


def test_gcd_cycle_single_generator(tree_h12):
    basis = dual_cycles(tree_h12)
    group = discriminant_group(tree_h12, basis)
    hb = hilbert_basis(tree_h12, basis, trivial_subgroup(group))
    assert gcd_cycle([hb[0]]) == hb[0].expansion


def test_gcd_cycle_bounds(all_test_graphs):
    for g in all_test_graphs:
        basis = dual_cycles(g)
        group = discriminant_group(g, basis)
        hb = hilbert_basis(g, basis, trivial_subgroup(group))
        z = gcd_cycle(hb)
        for i, v in enumerate(g.vertex_ids):
            values = [m.expansion.coeffs[i] for m in hb]
            assert all(z.coeffs[i] <= val for val in values)
            assert z.coeffs[i] in values


def test_gcd_cycle_empty():
    with pytest.raises(EmptySetError):
        gcd_cycle([])


# --- Neumann-Wahl skeletons ------------------------------------------------------


def test_nw_system_h12(tree_h12):
    systems = neumann_wahl_system(tree_h12, dual_cycles(tree_h12))
    by_node = {s.node: s for s in systems}
    assert {m.monomial_string() for m in by_node[5].monomials} == \
        {"z1^2", "z2^2", "z3*z4"}
    assert {m.monomial_string() for m in by_node[8].monomials} == \
        {"z3^3", "z4^3", "z1^5*z2^5"}
    for s in systems:
        assert s.coefficients == ((1, 1, 1),)


def test_nw_system_h60(tree_h60):
    systems = neumann_wahl_system(tree_h60, dual_cycles(tree_h60))
    by_node = {s.node: s for s in systems}
    assert {m.monomial_string() for m in by_node[5].monomials} == \
        {"z1^3", "z2^2", "z3*z4"}


def test_nw_system_chain_empty(a2_chain):
    assert neumann_wahl_system(a2_chain, dual_cycles(a2_chain)) == []


def test_nw_system_rejects_failing_graph(monomial_fail_graph):
    with pytest.raises(MonomialConditionError):
        neumann_wahl_system(monomial_fail_graph,
                            dual_cycles(monomial_fail_graph))


def test_nw_vandermonde_rows():
    """A node of valence 4 gets two equations with Vandermonde coefficients."""
    from splicemult import ResolutionGraph

    g = ResolutionGraph({1: -2, 2: -2, 3: -2, 4: -2, 5: -3},
                        [(5, 1), (5, 2), (5, 3), (5, 4)])
    systems = neumann_wahl_system(g, dual_cycles(g))
    quad = next(s for s in systems if len(s.branches) == 4)
    assert quad.coefficients == ((1, 1, 1, 1), (1, 2, 3, 4))
    assert [m.monomial_string() for m in quad.monomials] == \
        ["z1^2", "z2^2", "z3^2", "z4^2"]
    assert quad.equations() == [
        "z1^2 + z2^2 + z3^2 + z4^2",
        "z1^2 + 2*z2^2 + 3*z3^2 + 4*z4^2"]
