"""Randomized invariants: relabeling invariance and validator/oracle agreement."""

from __future__ import annotations

from hypothesis import HealthCheck, given, settings, strategies as st

from conftest import constructor_fixtures, labeled
from oracles import naive_valid
from finite_groupoids.core import (FiniteGroupoid, base, check_hom, GroupoidHom,
                                   is_group_object, validate_category, validate_groupoid)
from finite_groupoids.enumeration import are_isomorphic, canonical_form, invariants

SMALL = [g for _, g in constructor_fixtures() if 0 < g.n <= 12]
LABELED = labeled(4, 1)

profile = settings(max_examples=120, deadline=None,
                   suppress_health_check=[HealthCheck.too_slow])


@st.composite
def relabeled(draw, pool):
    g = draw(st.sampled_from(pool))
    perm = draw(st.permutations(range(g.n)))
    return g, tuple(perm)


@st.composite
def mutated(draw):
    g = draw(st.sampled_from(SMALL))
    field = draw(st.sampled_from(["sigma", "tau", "upsilon", "mu"]))
    i = draw(st.integers(0, g.n - 1))
    sigma, tau, ups = list(g.sigma), list(g.tau), list(g.upsilon)
    mu = [list(r) for r in g.mu]
    if field == "mu":
        j = draw(st.integers(0, g.n - 1))
        mu[i][j] = draw(st.integers(-1, g.n - 1))
    else:
        {"sigma": sigma, "tau": tau, "upsilon": ups}[field][i] = draw(st.integers(0, g.n - 1))
    return FiniteGroupoid.build(sigma, tau, ups, mu)


@profile
@given(relabeled(SMALL))
def test_validation_is_invariant_under_relabeling(case):
    g, perm = case
    h = g.relabel(perm)
    assert validate_groupoid(h).ok
    assert len(base(h)) == len(base(g))
    assert is_group_object(h) == is_group_object(g)


@profile
@given(relabeled(LABELED))
def test_isomorphism_and_canonical_form_are_relabeling_invariant(case):
    g, perm = case
    h = g.relabel(perm)
    p = are_isomorphic(g, h)
    assert p is not None and g.relabel(p) == h
    assert canonical_form(g) == canonical_form(h)
    assert invariants(g) == invariants(h)


@profile
@given(relabeled(SMALL))
def test_relabeling_map_is_a_homomorphism(case):
    g, perm = case
    h = g.relabel(perm)
    assert check_hom(GroupoidHom(g, h, perm)).ok


@profile
@given(mutated())
def test_validator_agrees_with_naive_oracle_on_mutations(g):
    rep = validate_groupoid(g)
    assert rep.ok == naive_valid(g)
    if not rep.ok:
        assert rep.violations and all(v.axiom for v in rep.violations)


@profile
@given(mutated())
def test_groupoid_validity_implies_category_validity(g):
    if validate_groupoid(g).ok:
        assert validate_category(g).ok


@profile
@given(relabeled(LABELED), relabeled(LABELED))
def test_isomorphism_verdict_matches_canonical_form(a, b):
    g, h = a[0].relabel(a[1]), b[0].relabel(b[1])
    same = g.n == h.n and canonical_form(g) == canonical_form(h)
    assert (are_isomorphic(g, h) is not None) == same
