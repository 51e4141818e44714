import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from crossfam.config import Guards
from crossfam.errors import EmptyFamilyError, GuardExceededError, NotASubfamilyError
from crossfam.extremal import (
    beta,
    beta_of,
    beta_reference,
    ell,
    kappa,
    pointwise_slack,
    verify_beta_bounds,
    verify_beta_value,
    verify_ell_value,
    verify_pointwise_inequality,
    verify_upper_beta_dichotomy,
)
from crossfam.family_core import SetFamily, conflict_graph, decompose, is_t_intersecting
from crossfam.generators import gen_example1, gen_example2, gen_katona, gen_lines, gen_powerset, gen_uniform, random_family


def test_ell_known_values():
    assert ell(gen_powerset(3), 1).value == 4
    assert ell(gen_powerset(4), 2).value == len(gen_katona(4, 2)) == 5
    assert ell(gen_lines(3, 1), 1).value == 3


def test_ell_witness_is_lex_least_largest():
    res = ell(gen_powerset(2), 1)
    # {0}, {0,1} trước {1}, {0,1}
    assert res.value == 2
    assert res.witness.as_lists() == [[0], [0, 1]]
    assert is_t_intersecting(res.witness, 1)


def test_ell_empty_family():
    with pytest.raises(EmptyFamilyError):
        ell(SetFamily(3), 1)


def test_beta_of_examples(example33):
    assert beta_of(example33, 1, example33) == Fraction(1, 2)
    assert beta_of(example33, 1, SetFamily(2)) == Fraction(2, 3)
    p2 = gen_powerset(2)
    assert beta_of(p2, 1, SetFamily.from_sets(2, [[0], [1]])) == 1
    with pytest.raises(NotASubfamilyError):
        beta_of(example33, 1, SetFamily.from_sets(2, [[]]))


@pytest.mark.parametrize("n", [2, 3])
def test_beta_powerset_is_half(n):
    assert beta(gen_powerset(n), 1).beta == Fraction(1, 2)


@pytest.mark.slow
def test_beta_powerset_four_is_half():
    br = beta(gen_powerset(4), 1)
    assert br.beta == Fraction(1, 2)
    assert br.kappa == 2


def test_beta_examples():
    assert beta(gen_example1(3, 1), 1).beta == Fraction(1, 3)
    assert beta(gen_uniform(4, 2), 1).beta == Fraction(1, 2)
    br = beta(gen_example2(3, 2, 1), 1)
    assert br.beta == Fraction(1, 3)
    assert not br.attains_upper


def test_kappa_values():
    assert kappa(gen_lines(3, 1), 1) == 3
    assert kappa(gen_powerset(3), 1) == 2
    assert kappa(gen_example1(4, 1), 1) == 4


def test_beta_guard():
    with pytest.raises(GuardExceededError) as exc:
        beta(gen_powerset(2), 1, Guards(beta=3))
    assert exc.value.guard == "beta"
    with pytest.raises(GuardExceededError):
        beta_reference(gen_powerset(2), 1, Guards(reference=3))


def test_beta_of_t_intersecting_family_is_one():
    f = SetFamily.from_sets(4, [[0, 1], [0, 2], [0, 3]])
    br = beta(f, 1)
    assert br.beta == 1 and br.ell == len(f)


def test_pointwise_inequality():
    assert verify_pointwise_inequality(gen_powerset(3), 1, Fraction(1, 2)).passed
    f = gen_example1(3, 1)
    assert verify_pointwise_inequality(f, 1, Fraction(1, 3)).passed
    failed = verify_pointwise_inequality(f, 1, Fraction(2, 5))
    assert not failed.passed
    assert failed.witnesses["violating_subfamily"] == f
    assert failed.computed["slack"] == Fraction(-1, 5)
    assert verify_pointwise_inequality(gen_uniform(4, 2), 1, 0).passed
    assert pointwise_slack(f, 1, Fraction(2, 5), f) == Fraction(-1, 5)


def test_beta_bounds_reports():
    disjoint = SetFamily.from_sets(3, [[0], [1], [2]])
    r = verify_beta_bounds(disjoint, 1)
    assert r.passed
    assert r.computed["beta"] == Fraction(1, 3) and r.computed["attains_lower"]

    r = verify_beta_bounds(gen_example1(3, 1), 1)
    assert r.passed
    assert Fraction(1, 4) < r.computed["beta"] < Fraction(2, 4)

    r = verify_beta_bounds(SetFamily.from_sets(2, [[0, 1]]), 1)
    assert r.passed and r.computed["beta"] == 1


def test_upper_beta_dichotomy():
    r = verify_upper_beta_dichotomy(gen_powerset(3), 1)
    assert r.passed and r.computed["attains_upper"] and r.computed["family_is_minus"]

    r = verify_upper_beta_dichotomy(gen_example1(3, 1), 1)
    assert r.passed and not r.computed["attains_upper"]

    r = verify_upper_beta_dichotomy(gen_example2(3, 2, 1), 1)
    assert r.passed
    assert r.computed["converse_counterexample"]
    assert r.computed["beta"] == Fraction(1, 3)
    assert r.computed["upper"] == Fraction(2, 5)
    assert "converse_fails" not in r.checks


def test_upper_beta_dichotomy_expected_converse_failure():
    r = verify_upper_beta_dichotomy(gen_example2(3, 2, 1), 1, expect_converse_failure=True)
    assert r.passed and r.checks["converse_fails"]
    # 2^[3] đạt cận trên nên không phải phản ví dụ
    r = verify_upper_beta_dichotomy(gen_powerset(3), 1, expect_converse_failure=True)
    assert not r.passed
    assert r.checks == {"implication": True, "converse_fails": False}


def test_value_verifiers_record_claim():
    r = verify_beta_value(gen_example1(2, 2), 2, Fraction(1, 2), "example-families")
    assert r.passed and r.claim_id == "example-families"
    assert r.checks["matches_reference"]
    r = verify_ell_value(gen_powerset(3), 2, len(gen_katona(3, 2)), "powerset-katona")
    assert r.passed


def _networkx_clique_number(f, t):
    relation = nx.complement(conflict_graph(f, t).to_networkx())
    _, weight = nx.max_weight_clique(relation, weight=None)
    return weight


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=100_000), st.integers(min_value=1, max_value=2))
def test_ell_matches_networkx(seed, t):
    f = random_family(random.Random(seed), 5, 14)
    res = ell(f, t)
    assert res.value == _networkx_clique_number(f, t)
    assert len(res.witness) == res.value
    assert is_t_intersecting(res.witness, t)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=100_000), st.integers(min_value=1, max_value=2))
def test_beta_matches_reference_and_witness(seed, t):
    f = random_family(random.Random(seed), 5, 10)
    br = beta(f, t)
    ref = beta_reference(f, t)
    assert br.beta == ref.beta
    assert br.witness_mask == ref.witness_mask
    assert Fraction(1, len(f)) <= br.beta <= Fraction(br.ell, len(f))
    assert br.kappa <= len(f)
    assert beta_of(f, t, br.witness) == br.beta
    assert verify_pointwise_inequality(f, t, br.beta).passed
    dec = decompose(br.witness, t)
    if dec.minus:
        assert len(dec.plus) + br.beta * len(dec.minus) == br.ell
    if is_t_intersecting(f, t):
        assert br.beta == 1 and br.ell == len(f)
