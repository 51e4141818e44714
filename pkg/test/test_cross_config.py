import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import brute_force_optimum
from crossfam.cross_config import (
    PRODUCT,
    SUM,
    CrossConfigResult,
    Labeling,
    all_optimal_labelings,
    amgm_holds,
    cyclic_cover,
    cyclic_cover_holds,
    max_product_exact,
    max_sum_by_labeling,
    max_sum_exact,
    modstar,
    product_extension_check,
    verify_line_construction,
    verify_main_theorem,
    verify_powerset_cross,
    verify_product_extension,
    verify_product_small_cases,
    verify_sum_nontrivial,
    verify_sum_threshold,
    verify_sum_upper_beta,
    verify_union_lemma,
)
from crossfam.config import Guards
from crossfam.errors import EmptyFamilyError, GuardExceededError, HypothesisError, ParameterError, PreconditionError
from crossfam.family_core import SetFamily, alpha, conflict_graph, is_cross_t_intersecting
from crossfam.generators import (
    gen_example1,
    gen_example2,
    gen_lines,
    gen_powerset,
    gen_uniform,
    random_cross_tuple,
    random_family,
)


# --- labeling ---

def test_labeling_validity(example33):
    graph = conflict_graph(example33, 1)
    # {0} và {1} xung đột: cùng một chỉ số thì hợp lệ, khác chỉ số thì không
    assert Labeling(2, (0b01, 0b01, 0b11)).is_valid(graph)
    assert not Labeling(2, (0b01, 0b10, 0b00)).is_valid(graph)
    assert not Labeling(2, (0b11, 0b01, 0b00)).is_valid(graph)
    assert Labeling(2, (0b11, 0b00, 0b11)).is_valid(graph)


def test_labeling_self_conflict():
    f = SetFamily.from_sets(2, [[0], [0, 1]])
    graph = conflict_graph(f, 2)
    assert not Labeling(2, (0b11, 0)).is_valid(graph)
    assert Labeling(2, (0b10, 0)).is_valid(graph)


def test_labeling_shapes(example33):
    constant = Labeling(2, (0b11, 0, 0b11))
    assert constant.is_constant(2) and not constant.is_trivial()
    trivial = Labeling(2, (0b01, 0b01, 0b01))
    assert trivial.is_trivial() and trivial.is_partition()
    assert Labeling(2, (0b10, 0b01, 0b10)).canonical().labels == (0b01, 0b10, 0b01)
    assert Labeling(2, (0b11, 0b10, 0)).canonical().labels == (0b11, 0b01, 0)
    fams = constant.families(example33)
    assert [fam.as_lists() for fam in fams] == [[[0], [0, 1]], [[0], [0, 1]]]
    assert constant.to_dict() == {"k": 2, "labels": [[1, 2], [], [1, 2]]}


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=100_000), st.integers(min_value=1, max_value=2), st.integers(min_value=2, max_value=3))
def test_cross_tuples_encode_to_valid_labelings(seed, t, k):
    rng = random.Random(seed)
    f = random_family(rng, 5, 10)
    families = random_cross_tuple(rng, f, t, k)
    labeling = Labeling.from_families(f, families)
    assert labeling.is_valid(conflict_graph(f, t))
    assert labeling.families(f) == families
    assert labeling.sizes() == [len(fam) for fam in families]


# --- sum ---

def test_max_sum_powerset():
    assert max_sum_exact(gen_powerset(3), 1, 2).value == 8
    res = max_sum_exact(gen_powerset(3), 1, 3)
    assert res.value == 12
    assert res.optimal and res.objective == SUM
    assert is_cross_t_intersecting(res.families, 1)


def test_max_sum_example2_beats_both_simple_configurations():
    f = gen_example2(4, 2, 1)
    res = max_sum_exact(f, 1, 3)
    assert res.value == 7
    assert res.value > max(len(f), 2 * 3)
    assert res.sizes == [5, 1, 1]


def test_max_sum_k_one_and_empty():
    assert max_sum_exact(gen_uniform(4, 2), 1, 1).value == 6
    with pytest.raises(EmptyFamilyError):
        max_sum_exact(SetFamily(2), 1, 2)
    with pytest.raises(ParameterError):
        max_sum_exact(gen_uniform(4, 2), 1, 0)


def test_single_small_member():
    f = SetFamily.from_sets(2, [[0]])
    assert max_sum_exact(f, 2, 3).value == 1
    assert max_product_exact(f, 2, 3).value == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=100_000), st.integers(min_value=1, max_value=2), st.integers(min_value=2, max_value=3))
def test_max_sum_matches_brute_force(seed, t, k):
    f = random_family(random.Random(seed), 4, 5 if k == 2 else 4)
    expected = brute_force_optimum(f, t, k, SUM)
    res = max_sum_exact(f, t, k)
    assert res.value == expected
    assert max_sum_by_labeling(f, t, k).value == expected
    assert is_cross_t_intersecting(res.families, t)
    assert amgm_holds(res)


# --- product ---

def test_max_product_examples():
    assert max_product_exact(gen_uniform(4, 2), 1, 2).value == 9
    assert max_product_exact(gen_powerset(3), 1, 2).value == 16
    res = max_product_exact(gen_lines(3, 1), 1, 2)
    assert res.value == 18
    assert sorted(res.sizes) == [3, 6]
    assert is_cross_t_intersecting(res.families, 1)
    assert res.to_dict()["value"] == "18"


def test_max_product_guard():
    with pytest.raises(GuardExceededError) as exc:
        max_product_exact(gen_powerset(3), 1, 3, Guards(labeling_bits=4))
    assert exc.value.guard == "labeling"


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=100_000), st.integers(min_value=1, max_value=2), st.integers(min_value=2, max_value=3))
def test_max_product_matches_brute_force(seed, t, k):
    f = random_family(random.Random(seed), 4, 5 if k == 2 else 4)
    res = max_product_exact(f, t, k)
    assert res.value == brute_force_optimum(f, t, k, PRODUCT)
    assert is_cross_t_intersecting(res.families, t)
    assert amgm_holds(res)


def test_amgm_on_hand_built_result():
    f = gen_uniform(4, 2)
    star = f.subfamily_of([0, 1, 2])
    res = CrossConfigResult(2, PRODUCT, 9, (star, star), True)
    assert amgm_holds(res)


# --- optima enumeration ---

def test_boundary_has_trivial_and_constant_optima():
    optima = all_optimal_labelings(gen_powerset(3), 1, 2, SUM)
    assert any(lab.is_trivial() for lab in optima)
    assert any(lab.is_constant(4) for lab in optima)
    assert all(lab.canonical() == lab for lab in optima)
    assert len(set(optima)) == len(optima)


def test_above_threshold_only_constant_optima():
    for k in (3, 4):
        optima = all_optimal_labelings(gen_powerset(3), 1, k, SUM)
        assert optima
        assert all(lab.is_constant(4) for lab in optima)


def test_all_optima_zero_target():
    f = SetFamily.from_sets(2, [[0]])
    with pytest.raises(PreconditionError):
        all_optimal_labelings(f, 2, 2, PRODUCT)


# --- verifiers ---

def test_main_theorem_powerset():
    r = verify_main_theorem(gen_powerset(3), 1, 3)
    assert r.passed, r.checks
    assert r.computed["max_sum"] == 12 and r.computed["max_product"] == 64
    assert r.computed["all_optima_checked"]
    assert r.checks["sum_optima_constant"] and r.checks["product_optima_constant"]


def test_main_theorem_at_threshold():
    r = verify_main_theorem(gen_lines(3, 1), 1, 3)
    assert r.passed, r.checks
    assert r.computed["max_sum"] == 9 and r.computed["max_product"] == 27
    assert not r.computed["strict"]

    r = verify_main_theorem(gen_example1(3, 1), 1, 3)
    assert r.passed
    assert r.computed["max_sum"] == 6


def test_main_theorem_below_threshold_is_inapplicable():
    with pytest.raises(PreconditionError):
        verify_main_theorem(gen_powerset(3), 1, 1)


def test_sum_threshold():
    r = verify_sum_threshold(gen_powerset(3), 1, 2)
    assert r.passed and r.computed["max_sum"] == 8
    r = verify_sum_threshold(gen_example2(4, 2, 1), 1, 3)
    assert r.passed and r.computed["below_threshold"]
    assert r.computed["max_sum"] == 7 and r.computed["k_l"] == 6


def test_sum_threshold_uniform():
    r = verify_sum_threshold(gen_uniform(6, 2), 1, 2)
    assert r.passed
    assert r.computed["kappa"] == 3
    assert r.computed["max_sum"] == 15 and r.computed["k_l"] == 10


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=100_000), st.integers(min_value=1, max_value=2), st.integers(min_value=2, max_value=4))
def test_sum_threshold_random(seed, t, k):
    f = random_family(random.Random(seed), 5, 8)
    assume(alpha(f) >= t)
    assert verify_sum_threshold(f, t, k).passed


def test_sum_upper_beta_above_threshold():
    r = verify_sum_upper_beta(gen_powerset(3), 1, 4)
    assert r.passed, r.checks
    assert r.computed["expected"] == 16
    assert r.checks["optima_constant"]


def test_sum_upper_beta_boundary():
    r = verify_sum_upper_beta(gen_powerset(3), 1, 2)
    assert r.passed
    assert r.computed["trivial_optimal"] and r.computed["constant_optimal"]


def test_sum_upper_beta_below_threshold():
    r = verify_sum_upper_beta(gen_uniform(4, 2), 1, 1)
    assert r.passed and r.computed["max_sum"] == 6
    with pytest.raises(PreconditionError):
        verify_sum_upper_beta(gen_example1(3, 1), 1, 2)


@pytest.mark.slow
def test_sum_upper_beta_partitions():
    r = verify_sum_upper_beta(gen_uniform(6, 2), 1, 2)
    assert r.passed, r.checks
    assert r.computed["max_sum"] == 15
    assert r.checks["optima_partition_F"]


@pytest.mark.slow
def test_sum_upper_beta_powerset_four():
    r = verify_sum_upper_beta(gen_powerset(4), 1, 2)
    assert r.passed, r.checks
    assert r.computed["max_sum"] == 16


def test_sum_nontrivial():
    r = verify_sum_nontrivial(gen_example1(4, 1), 1, 2)
    assert r.passed
    assert r.computed["witness_value"] == 6 and r.computed["max_sum"] >= 6
    r = verify_sum_nontrivial(gen_example1(4, 1), 1, 3)
    assert r.passed and r.computed["max_sum"] >= 7
    with pytest.raises(PreconditionError, match="empty"):
        verify_sum_nontrivial(gen_example2(4, 2, 1), 1, 2)


def test_powerset_cross():
    r = verify_powerset_cross(3, 3)
    assert r.passed, r.checks
    assert r.computed["max_product"] == 64


def test_product_small_cases():
    reports = verify_product_small_cases()
    assert len(reports) == 5
    assert all(r.passed for r in reports)
    permutations = reports[-1]
    assert not permutations.computed["asserted"]
    assert permutations.notes


# --- product extension ---

def test_modstar():
    assert modstar(6, 3) == 3
    assert modstar(5, 3) == 2
    assert modstar(3, 3) == 3
    with pytest.raises(ParameterError):
        modstar(0, 3)


def test_cyclic_cover():
    assert cyclic_cover(4, 2) == {1: 2, 2: 2, 3: 2, 4: 2}
    assert all(cyclic_cover_holds(k, p) for k in range(1, 9) for p in range(1, k + 1))


def test_product_extension_check():
    assert product_extension_check([1, 1, 1], [2, 2, 2], 2).passed
    r = product_extension_check([3, 1, 1], [2, 2, 2], 2)
    assert r.passed
    assert r.computed["prod_x"] == 3 and r.computed["prod_y"] == 8
    assert product_extension_check([Fraction(1, 2), 2], [1, 2], 1).passed
    with pytest.raises(HypothesisError):
        product_extension_check([3, 3, 1], [2, 2, 2], 2)


def test_product_extension():
    r = verify_product_extension(gen_uniform(4, 2), 1, 2, 3)
    assert r.passed and r.computed["max_product"] == 27
    r = verify_product_extension(gen_powerset(3), 1, 2, 4)
    assert r.passed and r.computed["max_product"] == 2**8
    with pytest.raises(PreconditionError, match="inapplicable"):
        verify_product_extension(gen_lines(3, 1), 1, 2, 3)


# --- line construction ---

def test_line_construction_small_k():
    r = verify_line_construction(3, 1, 2)
    assert r.passed, r.checks
    assert r.computed["kappa"] == 3
    assert r.computed["max_product"] >= r.computed["witness_value"] == 18 > 9


def test_line_construction_constant_optimal():
    r = verify_line_construction(3, 2, 3)
    assert r.passed, r.checks
    assert r.computed["max_product"] == 27


@pytest.mark.slow
def test_line_construction_p4():
    r = verify_line_construction(4, 1, 3)
    assert r.passed, r.checks
    assert r.computed["witness_value"] == 128


def test_line_construction_parameters():
    with pytest.raises(ParameterError):
        verify_line_construction(2, 1, 2)
    with pytest.raises(GuardExceededError):
        verify_line_construction(5, 1, 2)


# --- union of a cross tuple ---

def test_union_lemma_report():
    a = SetFamily.from_sets(3, [[0, 1], [0, 2]])
    b = SetFamily.from_sets(3, [[0, 1, 2]])
    r = verify_union_lemma([a, b], 1, "hand")
    assert r.passed
    assert r.instance == "hand;t=1"
