"""Self-verification suite: every documented invariant run against a corpus.

``run_verify`` executes each property at desk scale and reports pass/fail
with a one-line detail. Failures never abort the suite; an exception inside
a property is itself a failure. All randomness is derived from the single
seed argument, so reports are byte-identical across runs.
"""

from __future__ import annotations

import io
import json
import math
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import dataclass

import numpy as np

from . import bounds, gap, space
from .checker import Status, check, interval_scan, supremal_negative_type, witness_null_simplex
from .errors import AsymmetricMatrix
from .simplex import gap_from_eta, sign_split, simplex_gap
from .space import FiniteSemiMetricSpace, power_matrix
from .tolerances import DEFAULT_TOL

__all__ = ["CorpusEntry", "PropertyResult", "VerifyReport", "default_corpus", "run_verify"]


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    space: FiniteSemiMetricSpace
    tree_edges: tuple | None = None  # set when the space is a tree metric

    @property
    def is_unit_tree(self) -> bool:
        return self.tree_edges is not None and all(w == 1.0 for _, _, w in self.tree_edges)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerifyReport:
    seed: int
    samples: int
    results: tuple[PropertyResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "all_passed": self.all_passed,
            "properties": [
                {"name": r.name, "passed": r.passed, "detail": r.detail} for r in self.results
            ],
        }


def default_corpus(seed: int = 0) -> list[CorpusEntry]:
    """Fixed example families plus seed-derived random semi-metric spaces."""
    pi = math.pi

    def tree(name, edges):
        return CorpusEntry(name, space.gen_tree(edges), tree_edges=tuple(edges))

    return [
        tree("path3", [(0, 1, 1.0), (1, 2, 1.0)]),
        tree("path4", [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]),
        tree("path5", [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0)]),
        tree("star3", [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]),
        tree("star4", [(0, i, 1.0) for i in range(1, 5)]),
        tree("star5", [(0, i, 1.0) for i in range(1, 6)]),
        tree("wtree3", [(0, 1, 1.0), (0, 2, 2.0)]),
        tree("wtree4", [(0, 1, 0.5), (1, 2, 1.5), (1, 3, 2.5)]),
        CorpusEntry("disc3", space.gen_discrete(3)),
        CorpusEntry("disc4", space.gen_discrete(4)),
        CorpusEntry("disc5", space.gen_discrete(5)),
        CorpusEntry("disc6", space.gen_discrete(6)),
        CorpusEntry("circle4", space.gen_circle([0, pi / 2, pi, 3 * pi / 2])),
        CorpusEntry("circle3", space.gen_circle([0, 2 * pi / 3, 4 * pi / 3])),
        CorpusEntry("halfcircle3", space.gen_circle([0, pi / 2, pi])),
        CorpusEntry("circle5", space.gen_circle([2 * pi * k / 5 for k in range(5)])),
        CorpusEntry("rand4", space.gen_random_semimetric(4, seed, 1.0, 2.0)),
        CorpusEntry("rand5", space.gen_random_semimetric(5, seed, 1.0, 2.0)),
        CorpusEntry("rand6", space.gen_random_semimetric(6, seed, 0.5, 4.0)),
        CorpusEntry("enflo1", space.gen_enflo_truncation(1.5, [2.0], 4)),
        CorpusEntry("enflo2", space.gen_enflo_truncation(1.5, [1.7, 1.6], 4)),
    ]


class _Ctx:
    """Shared per-run state: corpus, seed, and memoized supremal searches."""

    def __init__(self, seed: int, samples: int):
        self.seed = seed
        self.samples = samples
        self.corpus = default_corpus(seed)
        self._sup = {}

    def sup(self, entry: CorpusEntry):
        if entry.name not in self._sup:
            self._sup[entry.name] = supremal_negative_type(entry.space)
        return self._sup[entry.name]

    def finite_sup_entries(self):
        return [(e, self.sup(e)) for e in self.corpus if math.isfinite(self.sup(e).p_sup)]


def _scale(X: FiniteSemiMetricSpace, q: float) -> float:
    return float(power_matrix(X, q).max())


# ---------------------------------------------------------------- core space


def _prop_space_roundtrip(ctx: _Ctx):
    for e in ctx.corpus:
        again = space.from_matrix(e.space.dist, labels=e.space.labels)
        if not np.array_equal(again.dist, e.space.dist):
            return False, f"{e.name}: round-trip changed entries"
    return True, f"{len(ctx.corpus)} spaces round-trip entry-identical"


def _prop_unit_path_diameter(ctx: _Ctx):
    for n in range(2, 9):
        X = space.gen_path(n, 1.0)
        if space.diameter(X) != float(n - 1) or space.scaled_diameter(X) != float(n - 1):
            return False, f"unit path on {n} vertices: diameter/ratio mismatch"
    return True, "unit paths n=2..8 have diameter and ratio n-1 exactly"


def _prop_scaled_diameter_invariance(ctx: _Ctx):
    worst = 0.0
    for e in ctx.corpus:
        base = space.scaled_diameter(e.space)
        for c in (0.5, 0.7, 1.9, 2.0, 3.0):
            other = space.scaled_diameter(space.rescale(e.space, c))
            worst = max(worst, abs(other - base) / base)
    ok = worst <= 1e-15
    return ok, f"worst relative drift {worst:.2e} over 5 scalings of each space"


def _prop_power_additivity(ctx: _Ctx):
    worst = 0.0
    for e in ctx.corpus:
        off = ~np.eye(e.space.n, dtype=bool)
        for p, q in ((0.5, 1.0), (1.0, 1.0), (0.3, 2.2)):
            lhs = power_matrix(e.space, p) * power_matrix(e.space, q)
            rhs = power_matrix(e.space, p + q)
            worst = max(worst, float(np.abs(lhs[off] / rhs[off] - 1.0).max()))
    ok = worst <= 1e-12
    return ok, f"worst off-diagonal relative deviation {worst:.2e}"


def _prop_block_space_distances(ctx: _Ctx):
    for name in ("enflo1", "enflo2"):
        X = next(e for e in ctx.corpus if e.name == name).space
        n_side = 4
        blocks = X.n // (2 * n_side)
        d = X.dist
        for k in range(blocks):
            y0, z0 = 2 * k * n_side, (2 * k + 1) * n_side
            cross = d[y0 : y0 + n_side, z0 : z0 + n_side]
            if not ((cross > 0.5) & (cross < 1.0)).all():
                return False, f"{name}: block {k} cross distances outside (1/2, 1)"
        off = ~np.eye(X.n, dtype=bool)
        rest = d[off]
        rest = rest[(rest <= 0.5) | (rest >= 1.0)]
        if not (rest == 1.0).all():
            return False, f"{name}: a non-cross distance differs from 1"
    return True, "both block spaces: cross in (1/2,1), all other distances exactly 1"


# ------------------------------------------------------------------- checker


def _prop_status_scale_invariance(ctx: _Ctx):
    rng = np.random.default_rng(ctx.seed + 1)
    checked = 0
    for _ in range(6):
        n = int(rng.integers(3, 7))
        X = space.gen_random_semimetric(n, int(rng.integers(0, 2**31)), 0.5, 4.0)
        for q in (0.5, 1.0, 2.0):
            v = check(X, q)
            for c in (0.25, 2.0, 7.5):
                vc = check(space.rescale(X, c), q)
                if vc.status is not v.status:
                    return False, f"status changed under rescale c={c} at q={q}"
                rel = abs(vc.critical_value - c**q * v.critical_value) / max(
                    abs(v.critical_value) * c**q, 1e-300
                )
                if rel > 1e-9:
                    return False, f"critical value not scaling by c^q (rel {rel:.2e})"
                checked += 1
    return True, f"{checked} (space, q, c) combinations"


def _prop_verdict_oracle_agreement(ctx: _Ctx):
    entries = [e for e in ctx.corpus if e.name.startswith("rand")]
    rng = np.random.default_rng(ctx.seed + 2)
    for k in range(3):
        n = int(rng.integers(4, 7))
        entries.append(
            CorpusEntry(
                f"extra{k}",
                space.gen_random_semimetric(n, int(rng.integers(0, 2**31)), 1.0, 3.0),
            )
        )
    cases = 0
    for e in entries:
        X = e.space
        for q in (0.5, 1.0, 2.0):
            v = check(X, q)
            sc = _scale(X, q)
            oracle = gap.brute_force_gap(X, q, samples=ctx.samples, seed=ctx.seed + 3)
            if v.status is Status.STRICT:
                floor = -v.critical_value * (1.0 - bounds.gamma_fn(X.n))
                if not (oracle > 0.25 * floor > 0):
                    return False, f"{e.name} q={q}: STRICT but oracle {oracle:.2e}"
            elif v.status is Status.FAIL:
                clear = v.critical_value > 1e-4 * sc
                if clear and not oracle < 0:
                    return False, f"{e.name} q={q}: FAIL but oracle {oracle:.2e}"
                if not clear and not oracle < 1e-6 * sc:
                    return False, f"{e.name} q={q}: near-zero FAIL, oracle {oracle:.2e}"
            else:
                if abs(oracle) > 1e-6 * sc:
                    return False, f"{e.name} q={q}: BOUNDARY but |oracle| {abs(oracle):.2e}"
            cases += 1
    return True, f"{cases} verdict/oracle comparisons at {ctx.samples} samples"


def _prop_strict_below_nonfail(ctx: _Ctx):
    count = 0
    for e, sup in ctx.finite_sup_entries():
        p = sup.p_sup
        for q in np.linspace(p / 10.0, 0.999 * p, 10):
            v = check(e.space, float(q))
            if v.status is not Status.STRICT:
                return False, f"{e.name}: {v.status.value} at q={q:.6f} below p={p:.6f}"
            count += 1
    return True, f"{count} sub-supremal grid points all STRICT"


def _prop_boundary_at_supremal(ctx: _Ctx):
    names = []
    for e, sup in ctx.finite_sup_entries():
        v = sup.verdict_at_sup
        if v is None or v.status is not Status.BOUNDARY:
            got = "missing" if v is None else v.status.value
            return False, f"{e.name}: verdict at supremal exponent is {got}"
        names.append(e.name)
    return True, f"{len(names)} finite-supremal spaces all BOUNDARY at the top"


def _prop_fail_witness_positive_form(ctx: _Ctx):
    hits = 0
    for e in ctx.corpus:
        sup = ctx.sup(e)
        if not math.isfinite(sup.p_sup):
            continue
        q = sup.p_sup + 0.5
        v = check(e.space, q)
        if v.status is not Status.FAIL:
            continue
        M = power_matrix(e.space, q)
        form = float(v.witness @ M @ v.witness)
        if not form > 0:
            return False, f"{e.name}: FAIL witness has form value {form:.2e}"
        hits += 1
    return True, f"{hits} failing verdicts re-evaluated directly from the matrix"


# --------------------------------------------------------------- simplex gap


def _prop_eta_simplex_identity(ctx: _Ctx):
    rng = np.random.default_rng(ctx.seed + 4)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(3, 8))
        X = space.gen_random_semimetric(n, int(rng.integers(0, 2**31)), 0.5, 3.0)
        p = float(rng.uniform(0.3, 2.5))
        side = rng.permutation(n)
        cut = int(rng.integers(1, n))
        eta = np.zeros(n)
        wa = rng.standard_exponential(cut)
        wb = rng.standard_exponential(n - cut)
        eta[side[:cut]] = wa / wa.sum()
        eta[side[cut:]] = -wb / wb.sum()
        lhs = gap_from_eta(X, eta, p)
        rhs = simplex_gap(X, sign_split(eta), p)
        worst = max(worst, abs(lhs - rhs) / _scale(X, p))
    ok = worst <= 1e-12
    return ok, f"200 random triples, worst relative mismatch {worst:.2e}"


def _prop_tree_gap_formula(ctx: _Ctx):
    rng = np.random.default_rng(ctx.seed + 5)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(3, 10))
        edges = [(int(rng.integers(0, i)), i, float(rng.uniform(0.5, 3.0))) for i in range(1, n)]
        r = gap.negative_type_gap(space.gen_tree(edges), 1.0)
        if not r.converged:
            return False, f"optimizer did not converge on a {n}-vertex tree"
        worst = max(worst, abs(r.gamma - gap.tree_gap(edges)))
    ok = worst <= 1e-5
    return ok, f"20 random trees, worst |optimizer - formula| = {worst:.2e}"


def _prop_gap_positivity_criterion(ctx: _Ctx):
    strict_checked = boundary_checked = 0
    for e in ctx.corpus:
        if e.space.n > 8:
            continue
        sup = ctx.sup(e)
        probes = [1.0]
        if math.isfinite(sup.p_sup):
            probes.append(sup.p_sup)
        for q in probes:
            v = check(e.space, q)
            r = gap.negative_type_gap(e.space, q)
            sc = _scale(e.space, q)
            if v.status is Status.STRICT:
                floor = -v.critical_value * (1.0 - bounds.gamma_fn(e.space.n))
                if not r.gamma >= floor - 1e-12 * sc or not r.gamma > 0:
                    return False, f"{e.name} q={q:.4f}: gap {r.gamma:.3e} under floor {floor:.3e}"
                strict_checked += 1
            elif v.status is Status.BOUNDARY:
                if not r.gamma <= 1e-6 * sc:
                    return False, f"{e.name} q={q:.4f}: BOUNDARY but gap {r.gamma:.3e}"
                boundary_checked += 1
    return True, f"{strict_checked} strict floors and {boundary_checked} boundary ceilings hold"


def _prop_oracle_sandwich(ctx: _Ctx):
    worst = 0.0
    cases = 0
    for e in ctx.corpus:
        if e.space.n > 6:
            continue
        if check(e.space, 1.0).status is Status.FAIL:
            continue
        r = gap.negative_type_gap(e.space, 1.0)
        oracle = gap.brute_force_gap(e.space, 1.0, samples=ctx.samples, seed=ctx.seed + 6)
        sc = _scale(e.space, 1.0)
        if oracle < r.gamma - DEFAULT_TOL.qp_tol * max(1.0, sc):
            return False, f"{e.name}: oracle {oracle:.6e} below optimizer {r.gamma:.6e}"
        worst = max(worst, (oracle - r.gamma) / sc)
        cases += 1
    ok = worst <= 5e-3
    return ok, f"{cases} spaces, worst oracle excess {worst:.2e} of scale"


def _prop_gap_scaling_law(ctx: _Ctx):
    rng = np.random.default_rng(ctx.seed + 7)
    worst = 0.0
    for _ in range(4):
        n = int(rng.integers(3, 7))
        X = space.gen_random_semimetric(n, int(rng.integers(0, 2**31)), 1.0, 2.0)
        p = float(rng.uniform(0.5, 1.5))
        base = gap.negative_type_gap(X, p).gamma
        for c in (0.5, 3.0):
            scaled = gap.negative_type_gap(space.rescale(X, c), p).gamma
            worst = max(worst, abs(scaled - c**p * base) / abs(c**p * base))
    ok = worst <= 1e-9
    return ok, f"worst relative deviation from c^p scaling: {worst:.2e}"


def _prop_uniform_maximizer(ctx: _Ctx):
    worst_w = worst_v = 0.0
    for s in range(2, 7):
        X = space.gen_discrete(s + 1)
        eta0 = np.zeros(s + 1)
        raw = 1.0 + 0.5 * np.arange(s) / s
        eta0[:s] = raw / raw.sum()
        eta0[s] = -1.0
        val, eta, _, conv = gap.minimize_bipartition(X, 1.0, list(range(s)), eta0=eta0)
        if not conv:
            return False, f"s={s}: cell solve did not converge"
        # min of (1 - same-side pair mass) over the cell = 1 - (1/2)(1 - 1/s)
        worst_v = max(worst_v, abs(val - (1.0 - 0.5 * (1.0 - 1.0 / s))))
        worst_w = max(worst_w, float(np.abs(eta[:s] - 1.0 / s).max()))
    ok = worst_w <= 1e-8 and worst_v <= 1e-8
    return ok, f"s=2..6: maximizer off uniform by {worst_w:.2e}, value off by {worst_v:.2e}"


# -------------------------------------------------------------------- bounds


def _prop_pair_mass_monotone(ctx: _Ctx):
    vals = [bounds.gamma_fn(m) for m in range(2, 1001)]
    for a, b in zip(vals, vals[1:]):
        if not b > a:
            return False, "monotonicity broken"
    return True, "gamma_fn strictly increasing on 2..1000"


def _prop_pair_mass_split_inequality(ctx: _Ctx):
    for m in range(2, 41):
        g = bounds.gamma_fn(m)
        for s in range(1, m):
            t = m - s
            lhs = 0.5 * (1.0 - 1.0 / s) + 0.5 * (1.0 - 1.0 / t)
            if lhs > g + 1e-12:
                return False, f"split {s}+{t}: {lhs} exceeds gamma_fn({m})={g}"
    return True, "all splits s+t=m for m<=40 bounded by gamma_fn(m)"


def _prop_zeta_sound(ctx: _Ctx):
    scanned = 0
    for e in ctx.corpus:
        if e.space.n > 8:
            continue
        if check(e.space, 1.0).status is not Status.STRICT:
            continue
        gamma = gap.tree_gap(e.tree_edges) if e.tree_edges else gap.negative_type_gap(e.space, 1.0).gamma
        rep = bounds.zeta_bound(e.space, 1.0, gamma)
        if math.isinf(rep.zeta):
            for q in (1.5, 3.0, 6.0):
                if check(e.space, q).status is not Status.STRICT:
                    return False, f"{e.name}: infinite zeta but not strict at q={q}"
        else:
            grid = np.linspace(1.0, 1.0 + rep.zeta - 1e-6, 20)
            statuses = interval_scan(e.space, grid)
            if any(s is not Status.STRICT for _, s in statuses):
                return False, f"{e.name}: non-strict inside the guaranteed interval"
            if check(e.space, 1.0 + rep.zeta).status is Status.FAIL:
                return False, f"{e.name}: FAIL at the interval endpoint"
        scanned += 1
    return True, f"{scanned} spaces scanned across their guaranteed intervals"


def _prop_zeta_scale_invariance(ctx: _Ctx):
    worst = 0.0
    for e in ctx.corpus:
        if e.space.n < 3 or e.space.n > 6:
            continue
        if check(e.space, 1.0).status is not Status.STRICT:
            continue
        gamma = gap.negative_type_gap(e.space, 1.0).gamma
        base = bounds.zeta_bound(e.space, 1.0, gamma).zeta
        for c in (0.5, 4.0):
            z = bounds.zeta_bound(space.rescale(e.space, c), 1.0, c * gamma).zeta
            if math.isinf(base) or math.isinf(z):
                if z != base:
                    return False, f"{e.name}: infinite zeta not preserved under rescale"
            else:
                worst = max(worst, abs(z - base) / base)
    ok = worst <= 1e-9
    return ok, f"worst relative drift {worst:.2e} under rescaling"


def _prop_tree_bound_consistency(ctx: _Ctx):
    checked = 0
    for e in ctx.corpus:
        if not e.is_unit_tree:
            continue
        bound = bounds.tree_type_lower_bound(e.tree_edges)
        sup = ctx.sup(e)
        if bound > sup.p_sup + DEFAULT_TOL.bisect_tol:
            return False, f"{e.name}: bound {bound:.6f} exceeds supremal {sup.p_sup:.6f}"
        checked += 1
    worst = 0.0
    for k in range(2, 7):
        sup = supremal_negative_type(space.gen_star(k, 1.0))
        worst = max(worst, abs(sup.p_sup - bounds.star_exact_type(k + 1)))
    ok = worst <= 1e-4
    return ok, f"{checked} unit trees bounded; star formula off by {worst:.2e} at worst"


# ----------------------------------------------------------------------- cli


def _run_cli(argv):
    from . import cli

    buf = io.StringIO()
    with redirect_stdout(buf), redirect_stderr(io.StringIO()):
        code = cli.main(argv)
    return code, buf.getvalue()


def _prop_cli_json_roundtrip(ctx: _Ctx):
    commands = [
        ["check", "--gen", "discrete:4", "--q", "3", "--json"],
        ["gap", "--gen", "star:3", "--p", "1", "--json"],
        ["sup", "--gen", "path:3", "--json"],
        ["zeta", "--gen", "star:3", "--p", "1", "--json"],
        ["gen", "--gen", "random:4,7", "--json"],
    ]
    for argv in commands:
        code, out = _run_cli(argv)
        if code != 0:
            return False, f"{' '.join(argv)} exited {code}"
        redone = json.dumps(json.loads(out), indent=2, sort_keys=True) + "\n"
        if redone != out:
            return False, f"{' '.join(argv)}: JSON not canonical"
    return True, f"{len(commands)} commands emit canonical JSON"


def _prop_cli_table_json_match(ctx: _Ctx):
    code_t, table = _run_cli(["gap", "--gen", "star:3", "--p", "1"])
    code_j, out = _run_cli(["gap", "--gen", "star:3", "--p", "1", "--json"])
    if code_t != 0 or code_j != 0:
        return False, "command failed"
    gamma_json = json.loads(out)["gamma"]
    want = format(gamma_json, ".9g")
    line = next(ln for ln in table.splitlines() if ln.startswith("gamma"))
    if want not in line:
        return False, f"table line {line!r} does not carry {want}"
    return True, "gap value printed identically to 9 significant digits"


def _prop_invalid_input_rejected(ctx: _Ctx):
    try:
        space.from_matrix([[0.0, 1.0], [2.0, 0.0]])
    except AsymmetricMatrix:
        pass
    else:
        return False, "asymmetric matrix accepted"
    code, _ = _run_cli(["check", "--gen", "discrete:1", "--q", "1"])
    if code != 2:
        return False, f"bad generator exited {code}, expected 2"
    return True, "asymmetric matrix and undersized generator both rejected"


_PROPERTIES = [
    ("space round-trip", _prop_space_roundtrip),
    ("unit path diameter", _prop_unit_path_diameter),
    ("scaled diameter invariance", _prop_scaled_diameter_invariance),
    ("power matrix additivity", _prop_power_additivity),
    ("block space distances", _prop_block_space_distances),
    ("status scale invariance", _prop_status_scale_invariance),
    ("verdict/oracle agreement", _prop_verdict_oracle_agreement),
    ("strict below non-fail exponents", _prop_strict_below_nonfail),
    ("boundary at supremal exponent", _prop_boundary_at_supremal),
    ("fail witness has positive form", _prop_fail_witness_positive_form),
    ("eta/simplex gap identity", _prop_eta_simplex_identity),
    ("tree gap formula vs optimizer", _prop_tree_gap_formula),
    ("gap positivity criterion", _prop_gap_positivity_criterion),
    ("oracle sandwich", _prop_oracle_sandwich),
    ("gap scaling law", _prop_gap_scaling_law),
    ("uniform maximizer", _prop_uniform_maximizer),
    ("pair mass monotone", _prop_pair_mass_monotone),
    ("pair mass split inequality", _prop_pair_mass_split_inequality),
    ("zeta interval soundness", _prop_zeta_sound),
    ("zeta scale invariance", _prop_zeta_scale_invariance),
    ("tree bound consistency", _prop_tree_bound_consistency),
    ("cli json round-trip", _prop_cli_json_roundtrip),
    ("cli table/json value match", _prop_cli_table_json_match),
    ("invalid input rejected", _prop_invalid_input_rejected),
]


def run_verify(seed: int = 0, samples: int = 100_000) -> VerifyReport:
    """Run every property; failures are collected, never raised."""
    ctx = _Ctx(seed, samples)
    results = []
    for name, fn in _PROPERTIES:
        try:
            passed, detail = fn(ctx)
        except Exception as exc:  # a crashing property is a failing property
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(PropertyResult(name=name, passed=passed, detail=detail))
    return VerifyReport(seed=seed, samples=samples, results=tuple(results))
