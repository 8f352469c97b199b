"""Acceptance criteria: quantitative reproduction of the closed-form results.

Each criterion is one test with its stated tolerance; a passing test prints a
one-line summary (visible with ``pytest -s`` or in the captured output).
"""

import math

import numpy as np

from negtype import (
    bounds,
    checker,
    gap,
    simplex,
    space,
)
from negtype.checker import Status
from negtype.verify import default_corpus

CORPUS = default_corpus(0)
_SUP_CACHE = {}


def _sup(entry):
    if entry.name not in _SUP_CACHE:
        _SUP_CACHE[entry.name] = checker.supremal_negative_type(entry.space)
    return _SUP_CACHE[entry.name]


def _scale(X, q):
    return float(space.power_matrix(X, q).max())


def test_criterion_01_tree_gap_harmonic_formula():
    rng = np.random.default_rng(20)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(3, 10))
        edges = [(int(rng.integers(0, i)), i, float(rng.uniform(0.5, 3.0))) for i in range(1, n)]
        r = gap.negative_type_gap(space.gen_tree(edges), 1.0)
        assert r.converged
        worst = max(worst, abs(r.gamma - gap.tree_gap(edges)))
    assert worst <= 1e-5
    print(f"[PASS] criterion 1: tree gap formula, 20 trees, worst deviation {worst:.3e}")


def test_criterion_02_star_supremal_exponent():
    worst = 0.0
    for k in range(2, 7):
        r = checker.supremal_negative_type(space.gen_star(k, 1.0))
        expect = 1.0 + math.log1p(1.0 / (k - 1)) / math.log(2.0)
        worst = max(worst, abs(r.p_sup - expect))
    assert worst <= 1e-4
    print(f"[PASS] criterion 2: star exponents k=2..6, worst deviation {worst:.3e}")


def test_criterion_03_zeta_sound_and_sharp_on_trees():
    for e in (e for e in CORPUS if e.is_unit_tree):
        gamma = gap.negative_type_gap(e.space, 1.0).gamma
        zeta = bounds.zeta_bound(e.space, 1.0, gamma).zeta
        p_sup = _sup(e).p_sup
        assert 1.0 + zeta <= p_sup + 1e-4, e.name
        if e.name == "path3":
            assert abs(1.0 + zeta - 2.0) <= 1e-6
            assert abs(p_sup - 2.0) <= 1e-6
    print("[PASS] criterion 3: 1 + zeta below the supremal exponent on 6 unit trees, tight for the 3-path")


def test_criterion_04_supremal_type_is_boundary_with_null_simplex():
    hit = 0
    for e in CORPUS:
        sup = _sup(e)
        if not math.isfinite(sup.p_sup):
            continue
        assert sup.verdict_at_sup.status is Status.BOUNDARY, e.name
        assert checker.check(e.space, sup.p_sup).status is Status.BOUNDARY, e.name
        sx = checker.witness_null_simplex(e.space, sup=sup)
        g = simplex.simplex_gap(e.space, sx, sup.p_sup)
        assert abs(g) <= 1e-6 * _scale(e.space, sup.p_sup), e.name
        hit += 1
    assert hit >= 10
    print(f"[PASS] criterion 4: BOUNDARY plus a null witness simplex at p_sup on {hit} spaces")


def test_criterion_05_strict_iff_positive_gap():
    statuses = {"STRICT": 0, "BOUNDARY": 0, "FAIL": 0}
    for i in range(30):
        n = 4 + i % 3
        lo, hi = (1.0, 2.0) if i % 2 == 0 else (0.5, 4.0)
        X = space.gen_random_semimetric(n, i, lo, hi)
        for q in (0.5, 1.0, 1.5):
            v = checker.check(X, q)
            r = gap.negative_type_gap(X, q)
            sc = _scale(X, q)
            statuses[v.status.value] += 1
            if v.status is Status.STRICT:
                assert r.gamma > 1e-8 * sc, (i, q)
            elif v.status is Status.BOUNDARY:
                assert r.gamma <= 1e-6 * sc, (i, q)
            else:
                assert simplex.simplex_gap(X, r.arg_simplex, q) < 0, (i, q)
    assert statuses["STRICT"] > 0 and statuses["FAIL"] > 0
    print(f"[PASS] criterion 5: gap sign matches verdict on 90 cases {statuses}")


def test_criterion_06_interval_structure():
    points_below = 0
    for e in CORPUS:
        p_sup = _sup(e).p_sup
        top = p_sup + 1.0 if math.isfinite(p_sup) else 10.0
        grid = np.linspace(0.0, top, 40)
        rows = checker.interval_scan(e.space, grid)  # must not raise
        for q, status in rows:
            if q < p_sup:
                assert status is Status.STRICT, (e.name, q)
                points_below += 1
    print(f"[PASS] criterion 6: one-way interval pattern on {len(CORPUS)} spaces, {points_below} sub-supremal points STRICT")


def test_criterion_07_enflo_truncations():
    x1 = space.gen_enflo_truncation(1.5, [2.0], 4)
    r1 = checker.supremal_negative_type(x1)
    assert abs(r1.p_sup - 2.0) <= 1e-3
    x2 = space.gen_enflo_truncation(1.5, [1.7, 1.6], 4)
    r2 = checker.supremal_negative_type(x2)
    assert abs(r2.p_sup - 1.6) <= 1e-3
    print(f"[PASS] criterion 7: block truncations reach p_sup {r1.p_sup:.6f} (8 pts) and {r2.p_sup:.6f} (16 pts)")


def test_criterion_08_antipodal_circle():
    four = space.gen_circle([0.0, math.pi / 2, math.pi, 3 * math.pi / 2])
    r = checker.supremal_negative_type(four)
    assert abs(r.p_sup - 1.0) <= 1e-4
    assert checker.check(four, 1.0).status is Status.BOUNDARY
    three = space.gen_circle([0.0, 2 * math.pi / 3, 4 * math.pi / 3])
    assert checker.check(three, 1.0).status is Status.STRICT
    print(f"[PASS] criterion 8: antipodal quadrilateral p_sup {r.p_sup:.6f}, antipode-free triangle STRICT at 1")


def test_criterion_09_oracle_equivalence():
    worst = 0.0
    cases = 0
    for e in (e for e in CORPUS if e.space.n <= 5):
        for q in (0.5, 1.0, 1.5):
            v = checker.check(e.space, q)
            oracle = gap.brute_force_gap(e.space, q, samples=100_000, seed=7)
            sc = _scale(e.space, q)
            if v.status is Status.STRICT:
                assert oracle > 0, (e.name, q)
            elif v.status is Status.BOUNDARY:
                assert abs(oracle) <= 1e-6 * sc, (e.name, q)
            else:
                assert oracle < 0, (e.name, q)
            r = gap.negative_type_gap(e.space, q)
            if math.isfinite(r.gamma):
                worst = max(worst, abs(r.gamma - oracle) / sc)
            cases += 1
    assert worst <= 5e-3
    print(f"[PASS] criterion 9: oracle agrees on {cases} cases, worst gap mismatch {worst:.3e} of scale")


def test_criterion_10_formula_unit_checks():
    for m, want in ((2, 0.0), (3, 0.25), (4, 0.5), (5, 7.0 / 12.0)):
        assert abs(bounds.gamma_fn(m) - want) <= 1e-15
    worst = 0.0
    for s in range(2, 7):
        X = space.gen_discrete(s + 1)
        eta0 = np.zeros(s + 1)
        raw = 1.0 + 0.5 * np.arange(s) / s
        eta0[:s] = raw / raw.sum()
        eta0[s] = -1.0
        _, eta, _, conv = gap.minimize_bipartition(X, 1.0, list(range(s)), eta0=eta0)
        assert conv
        worst = max(worst, float(np.abs(eta[:s] - 1.0 / s).max()))
    assert worst <= 1e-8
    for m in range(2, 41):
        g = bounds.gamma_fn(m)
        for s in range(1, m):
            t = m - s
            assert 0.5 * (1.0 - 1.0 / s) + 0.5 * (1.0 - 1.0 / t) <= g + 1e-12
    print(f"[PASS] criterion 10: pair-mass values exact, maximizer uniform to {worst:.3e}, split inequality through m=40")
