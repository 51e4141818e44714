import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from crossfam.config import Guards
from crossfam.errors import EmptyFamilyError, GuardExceededError, NotClosedError, ParameterError, PreconditionError
from crossfam.family_core import SetFamily
from crossfam.generators import gen_example1, gen_lines, gen_powerset, gen_uniform, line_groups, random_family
from crossfam.suite import symmetric_instances
from crossfam.symmetry import (
    GroundPermutation,
    brute_force_t_symmetric,
    induced_action,
    is_t_symmetric_via_generators,
    relation_graph,
    verify_asymmetric_contrast,
    verify_symmetric_bound,
    verify_symmetry_methods,
)


def test_ground_permutation_basics():
    g = GroundPermutation.from_cycles(4, [[0, 1, 2]])
    assert g.image == (1, 2, 0, 3)
    assert GroundPermutation.from_cycles(4, []).image == (0, 1, 2, 3)
    assert g.apply(0b0011) == 0b0110
    with pytest.raises(ParameterError):
        GroundPermutation((0, 0, 1))
    with pytest.raises(ParameterError):
        GroundPermutation.from_cycles(3, [[0, 1], [1, 2]])


def test_induced_action():
    f = gen_uniform(3, 2)
    perm = induced_action(f, GroundPermutation.from_cycles(3, [[0, 1, 2]]))
    assert perm == (2, 0, 1)
    with pytest.raises(NotClosedError):
        induced_action(SetFamily.from_sets(2, [[0]]), GroundPermutation.from_cycles(2, [[0, 1]]))
    p2 = gen_powerset(2)
    assert sorted(induced_action(p2, GroundPermutation((1, 0)))) == [0, 1, 2, 3]
    with pytest.raises(ParameterError):
        induced_action(p2, GroundPermutation((0, 1, 2)))


def test_generators_method_on_symmetric_instances(guards):
    for f, t, gens in symmetric_instances(guards):
        report = is_t_symmetric_via_generators(f, t, gens)
        assert report.is_t_symmetric
        assert report.orbit_count == 1
        assert report.method == "generators"
        assert len(report.certificate) == len(gens)


def test_generators_method_rejects_example1():
    f = gen_example1(3, 1)
    report = is_t_symmetric_via_generators(f, 1, [GroundPermutation.from_cycles(3, [[0, 1, 2]])])
    assert not report.is_t_symmetric
    assert report.orbits == ((0, 1, 2), (3,))
    with pytest.raises(EmptyFamilyError):
        is_t_symmetric_via_generators(SetFamily(2), 1, [])


def test_brute_force():
    lines = gen_lines(3, 1)
    parallel = lines.subfamily_of(line_groups(lines)[0])
    report = brute_force_t_symmetric(parallel, 1)
    assert report.is_t_symmetric
    assert report.certificate[0] == (0, 1, 2)
    assert len(report.certificate) == 3

    assert brute_force_t_symmetric(SetFamily.from_sets(3, [[1, 2], [1, 0]]), 1).is_t_symmetric

    report = brute_force_t_symmetric(gen_example1(3, 1), 1)
    assert not report.is_t_symmetric
    assert report.orbit_count == 2
    assert report.certificate == ()
    assert report.to_dict()["orbits"] == [[0, 1, 2], [3]]


def test_brute_force_guard():
    with pytest.raises(GuardExceededError):
        brute_force_t_symmetric(gen_powerset(3), 1, Guards(symmetry=4))


def test_relation_graph():
    g = relation_graph(gen_example1(3, 1), 1)
    assert sorted(d for _, d in g.degree()) == [1, 1, 1, 3]


def test_symmetric_bound_on_uniform():
    r = verify_symmetric_bound(gen_uniform(4, 2), 1)
    assert r.passed, r.checks
    assert r.computed["beta"] == Fraction(1, 2) == r.computed["c"]


def test_symmetric_bound_override_on_powerset():
    f = gen_powerset(3)
    with pytest.raises(PreconditionError):
        verify_symmetric_bound(f, 2)
    r = verify_symmetric_bound(f, 2, override=True)
    assert r.passed
    assert r.computed["method"] == "override"
    assert r.notes


def test_asymmetric_contrast():
    r = verify_asymmetric_contrast(gen_example1(3, 1), 1)
    assert r.passed, r.checks
    assert r.computed["c"] == Fraction(2, 4)


def test_symmetry_methods_agree(guards):
    for f, t, gens in symmetric_instances(guards):
        r = verify_symmetry_methods(f, t, gens, guards)
        assert r.passed, r.checks
        assert "brute_force_agrees" in r.checks


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=100_000))
def test_orbits_partition_members(seed):
    f = random_family(random.Random(seed), 4, 8)
    report = brute_force_t_symmetric(f, 1)
    members = sorted(i for orbit in report.orbits for i in orbit)
    assert members == list(range(len(f)))
    assert report.is_t_symmetric == (report.orbit_count == 1)
