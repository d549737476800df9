from __future__ import annotations

import pytest

from conftest import labeled
from oracles import naive_valid
from finite_groupoids.constructions import (cyclic_groupoid, disjoint_union, empty_groupoid,
                                            klein_table, group_groupoid, pair_groupoid,
                                            partial_bijection_groupoid, trivial_group)
from finite_groupoids.core import (UNDEFINED, ClassicalPresentation, FiniteGroupoid,
                                   GroupoidHom, base, check_hom, classical_violations,
                                   from_classical, is_group_object, to_classical,
                                   validate_category, validate_groupoid)
from finite_groupoids.reports import InvalidStructure, MalformedInput


def with_mu(g: FiniteGroupoid, x: int, y: int, v: int) -> FiniteGroupoid:
    mu = [list(r) for r in g.mu]
    mu[x][y] = v
    return FiniteGroupoid.build(g.sigma, g.tau, g.upsilon, mu)


# -- validation -----------------------------------------------------------------

def test_pair2_is_a_valid_category_and_groupoid():
    g = pair_groupoid(2)
    assert validate_category(g).ok
    rep = validate_groupoid(g)
    assert rep.ok and rep.info["base"] == [0, 3]


def test_group_table_with_constant_structure_maps_is_valid():
    g = cyclic_groupoid(2)
    assert g.sigma == g.tau == (0, 0)
    assert validate_category(g).ok


def test_mutated_z2_square_is_flagged_by_the_groupoid_checks():
    g = with_mu(cyclic_groupoid(2), 1, 1, 1)
    rep = validate_groupoid(g)
    assert not rep.ok
    assert {"G2", "G3"} <= set(rep.axioms)
    # the mutated table is the idempotent monoid {0, 1}: still a category
    assert validate_category(g).ok


def test_mutated_pair_table_names_category_axioms():
    g = with_mu(pair_groupoid(2), 0, 0, 1)
    axioms = set(validate_category(g).axioms)
    assert {"A4", "A8"} <= axioms


def test_partial_bijections_on_two_points():
    g = partial_bijection_groupoid(2)
    assert g.n == 7
    assert validate_groupoid(g).ok


def test_empty_structure_is_vacuously_valid():
    assert validate_groupoid(empty_groupoid()).ok
    assert base(empty_groupoid()) == []


def test_pair_groupoid_with_identity_inverse_fails_first_inverse_law():
    g = pair_groupoid(2)
    bad = FiniteGroupoid.build(g.sigma, g.tau, list(range(4)), g.mu)
    rep = validate_groupoid(bad)
    laws = {(v.axiom, v.law): v for v in rep.violations}
    v = laws[("G1", "TΥ=Σ")]
    non_identities = [x for x in range(4) if g.sigma[x] != x]
    assert sorted(v.witnesses) == non_identities


def test_out_of_range_entries_are_malformed_not_violations():
    with pytest.raises(MalformedInput) as exc:
        FiniteGroupoid.build([0, 5], [0, 0], [0, 1], [[0, 1], [1, 0]])
    assert exc.value.field == "sigma"
    with pytest.raises(MalformedInput):
        FiniteGroupoid.build([0, 0], [0, 0], [0, 1], [[0, 1], [1, -2]])
    with pytest.raises(MalformedInput):
        FiniteGroupoid.build([0, 0], [0, 0], [0, 1], [[0, 1]])


def test_groupoid_check_requires_inverse_data():
    g = pair_groupoid(2).without_inverse()
    assert validate_category(g).ok
    with pytest.raises(MalformedInput):
        validate_groupoid(g)


def test_report_lists_every_violation_not_just_the_first():
    g = pair_groupoid(2)
    mu = [[UNDEFINED] * 4 for _ in range(4)]
    rep = validate_groupoid(FiniteGroupoid.build(g.sigma, g.tau, g.upsilon, mu))
    assert len(set(rep.axioms)) >= 3


def test_validator_agrees_with_naive_oracle_on_all_mutations_of_small_fixtures():
    for g in (pair_groupoid(2), cyclic_groupoid(3), partial_bijection_groupoid(1)):
        for x in range(g.n):
            for y in range(g.n):
                for v in range(-1, g.n):
                    m = with_mu(g, x, y, v)
                    assert validate_groupoid(m).ok == naive_valid(m)


# -- derived identities and derived-violation flags ---------------------------------

def test_derived_identities_hold_on_all_small_labeled_groupoids():
    for g in labeled(4):
        s, t, u = g.sigma, g.tau, g.upsilon
        assert all(s[s[x]] == s[x] and t[t[x]] == t[x] and s[u[x]] == t[x] for x in range(g.n))


def test_left_translation_is_a_bijection_between_fibers():
    for g in labeled(4):
        for h in range(g.n):
            dom = [f for f in range(g.n) if g.tau[f] == g.sigma[h]]
            cod = sorted(x for x in range(g.n) if g.tau[x] == g.tau[h])
            assert sorted(g.mu[h][f] for f in dom) == cod


# -- base -----------------------------------------------------------------------------

@pytest.mark.parametrize("g,size", [(pair_groupoid(3), 3), (cyclic_groupoid(4), 1),
                                    (disjoint_union(cyclic_groupoid(2), pair_groupoid(2)), 3),
                                    (partial_bijection_groupoid(3), 8)])
def test_base_sizes(g, size):
    b = base(g)
    assert len(b) == size
    assert b == sorted(set(g.sigma)) == sorted(set(g.tau))


def test_base_of_z4_is_the_unit():
    assert base(cyclic_groupoid(4)) == [0]


# -- classical form --------------------------------------------------------------

def test_classical_z3():
    c = to_classical(cyclic_groupoid(3))
    assert len(c.base) == 1 and set(c.source) == set(c.target) == {0}


def test_classical_pair2_projections():
    c = to_classical(pair_groupoid(2))
    # index a*2+b is the arrow b -> a
    assert c.source == (0, 1, 0, 1)
    assert c.target == (0, 0, 1, 1)


def test_classical_empty():
    c = to_classical(empty_groupoid())
    assert c.base == () and c.n == 0
    assert from_classical(c) == empty_groupoid()


def test_classical_round_trip_is_identity():
    for g in (pair_groupoid(2), cyclic_groupoid(2), partial_bijection_groupoid(2)):
        c = to_classical(g)
        assert classical_violations(c) == []
        assert from_classical(c) == g
        assert to_classical(from_classical(c)) == c


def test_classical_item_iv_alone():
    # Z/2 with unit 0 but μ(1, 0) redirected: item iv fails (and i/ii stay silent)
    c = to_classical(cyclic_groupoid(2))
    mu = ((0, 1), (0, 0))
    bad = ClassicalPresentation(c.base, c.source, c.target, c.identity_section, c.inverse, mu)
    items = classical_violations(bad)
    assert "iv" in items
    with pytest.raises(InvalidStructure) as exc:
        from_classical(bad)
    assert "iv" in str(exc.value)


# -- group objects ---------------------------------------------------------------

def test_group_object_detection():
    assert is_group_object(cyclic_groupoid(5))
    assert not is_group_object(pair_groupoid(2))
    assert not is_group_object(disjoint_union(cyclic_groupoid(2), cyclic_groupoid(2)))
    with pytest.raises(InvalidStructure):
        is_group_object(empty_groupoid())


# -- homomorphisms -------------------------------------------------------------------

def test_identity_is_a_homomorphism():
    for g in (pair_groupoid(2), partial_bijection_groupoid(2), group_groupoid(klein_table())):
        assert check_hom(GroupoidHom(g, g, range(g.n))).ok


def test_map_to_terminal_groupoid():
    assert check_hom(GroupoidHom(pair_groupoid(2), trivial_group(), [0] * 4)).ok


def test_swap_on_z2_fails_sigma_square():
    rep = check_hom(GroupoidHom(cyclic_groupoid(2), cyclic_groupoid(2), [1, 0]))
    assert "H1" in rep.axioms


def test_map_length_mismatch_is_malformed():
    with pytest.raises(MalformedInput):
        check_hom(GroupoidHom(cyclic_groupoid(2), cyclic_groupoid(2), [0]))
