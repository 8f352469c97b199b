import math

import numpy as np
import pytest

from negtype import errors, gap, simplex, space


def test_gap_known_values():
    assert gap.negative_type_gap(space.gen_path(3, 1.0), 1.0).gamma == pytest.approx(0.5, abs=1e-9)
    assert gap.negative_type_gap(space.gen_star(3, 1.0), 1.0).gamma == pytest.approx(
        1.0 / 3.0, abs=1e-9
    )
    assert gap.negative_type_gap(space.gen_discrete(3), 1.0).gamma == pytest.approx(
        0.75, abs=1e-9
    )


def test_gap_result_report_fields():
    r = gap.negative_type_gap(space.gen_path(3, 1.0), 1.0)
    assert r.converged
    assert r.bipartitions_searched == 3
    assert r.qp_iterations_total > 0
    assert simplex.simplex_gap(space.gen_path(3, 1.0), r.arg_simplex, 1.0) == pytest.approx(
        r.gamma, abs=1e-9
    )


def test_gap_minimizer_for_path3_splits_middle():
    r = gap.negative_type_gap(space.gen_path(3, 1.0), 1.0)
    sides = {frozenset(r.arg_simplex.side_a), frozenset(r.arg_simplex.side_b)}
    assert sides == {frozenset({1}), frozenset({0, 2})}


def test_gap_fail_returns_negative_infinity_and_witness_simplex():
    X = space.gen_path(3, 1.0)
    r = gap.negative_type_gap(X, 3.0)
    assert r.gamma == -math.inf
    assert simplex.simplex_gap(X, r.arg_simplex, 3.0) < 0
    assert r.bipartitions_searched == 0


def test_gap_point_budget():
    n = 23
    X = space.from_matrix(np.ones((n, n)) - np.eye(n))
    with pytest.raises(errors.TooManyPoints):
        gap.negative_type_gap(X, 1.0)


def test_brute_force_gap():
    X = space.gen_path(3, 1.0)
    a = gap.brute_force_gap(X, 1.0, samples=5000, seed=3)
    b = gap.brute_force_gap(X, 1.0, samples=5000, seed=3)
    assert a == b  # deterministic per seed
    r = gap.negative_type_gap(X, 1.0)
    assert a >= r.gamma - 1e-9
    assert a - r.gamma <= 5e-3 * 2.0
    with pytest.raises(errors.TooSmall):
        gap.brute_force_gap(X, 1.0, samples=0)


def test_brute_force_finds_failures():
    X = space.gen_circle([0, math.pi / 2, math.pi, 3 * math.pi / 2])
    assert gap.brute_force_gap(X, 1.5, samples=2000, seed=0) < 0


def test_tree_gap_formula():
    assert gap.tree_gap([(0, 1, 1.0), (1, 2, 1.0)]) == pytest.approx(0.5)
    assert gap.tree_gap([(0, 1, 2.0), (1, 2, 2.0)]) == pytest.approx(1.0)
    # generators are consumed once and still validated as trees
    assert gap.tree_gap((e for e in [(0, 1, 1.0), (1, 2, 4.0)])) == pytest.approx(0.8)
    with pytest.raises(errors.NotATree):
        gap.tree_gap([(0, 1, 1.0), (2, 3, 1.0)])


def test_minimize_bipartition():
    X = space.gen_discrete(5)
    val, eta, iters, conv = gap.minimize_bipartition(X, 1.0, [0, 1])
    assert conv
    assert val == pytest.approx(1.0 / 4.0 + 1.0 / 6.0, abs=1e-9)
    assert np.abs(eta[:2] - 0.5).max() <= 1e-8
    with pytest.raises(errors.TooSmall):
        gap.minimize_bipartition(X, 1.0, [])
    with pytest.raises(errors.TooSmall):
        gap.minimize_bipartition(X, 1.0, list(range(5)))


def test_gap_scaling_law():
    X = space.gen_random_semimetric(5, 21, 1.0, 2.0)
    base = gap.negative_type_gap(X, 1.3).gamma
    scaled = gap.negative_type_gap(space.rescale(X, 2.0), 1.3).gamma
    assert scaled == pytest.approx(2.0**1.3 * base, rel=1e-9)
