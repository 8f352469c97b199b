"""Command-line front end.

Verbs: ``check``, ``sup``, ``gap``, ``zeta``, ``tree-bound``, ``scan``,
``gen``, ``verify``. Spaces come from exactly one of ``--matrix FILE``
(CSV distance matrix), ``--tree FILE|SPEC`` (edge-list file, or a
``star:``/``path:`` generator), or ``--gen SPEC``.

Exit codes: 0 success, 1 verification failure, 2 input/usage error,
3 numeric anomaly (interval-scan inconsistency, eigensolver failure, or
an optimizer that hit its iteration cap).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import re
import sys

from . import bounds, gap
from . import io as nio
from . import space, verify
from .checker import check, interval_scan, supremal_negative_type
from .errors import (
    BadRange,
    EigensolverFailure,
    IntervalAnomaly,
    NegTypeError,
    NotConverged,
)
from .tolerances import DEFAULT_TOL

__all__ = ["build_parser", "main", "parse_generator"]

_W = 26  # key column width in table output


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if math.isinf(v):
            return "infinity" if v > 0 else "-infinity"
        return format(v, ".9g")
    return str(v)


def _kv(key, value):
    print(f"{key:<{_W}} {value}")


def _emit_json(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def _fmt_side(pairs) -> str:
    return " ".join(f"{i}:{_fmt(float(w))}" for i, w in pairs)


# ------------------------------------------------------------ input loading


def _parse_float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(";") if tok.strip()]


def parse_generator(spec: str):
    """Build a space from a generator spec.

    Returns ``(space, edges)`` where ``edges`` is the tree edge list for the
    ``star`` and ``path`` kinds and None otherwise. Supported kinds:
    ``discrete:N``, ``star:K[,W]``, ``path:N[,W]``, ``circle:a1;a2;...``,
    ``enflo:P,n,[p1;p2;...]``, ``random:N,SEED``.
    """
    kind, _, payload = spec.partition(":")
    try:
        if kind == "discrete":
            return space.gen_discrete(int(payload)), None
        if kind == "star":
            parts = payload.split(",")
            k = int(parts[0])
            w = float(parts[1]) if len(parts) > 1 else 1.0
            edges = [(0, i, w) for i in range(1, k + 1)]
            return space.gen_tree(edges), edges
        if kind == "path":
            parts = payload.split(",")
            n = int(parts[0])
            w = float(parts[1]) if len(parts) > 1 else 1.0
            edges = [(i, i + 1, w) for i in range(n - 1)]
            return space.gen_tree(edges), edges
        if kind == "circle":
            return space.gen_circle(_parse_float_list(payload)), None
        if kind == "enflo":
            m = re.fullmatch(r"([^,]+),([^,]+),\[(.*)\]", payload)
            target, n = float(m.group(1)), int(m.group(2))
            return space.gen_enflo_truncation(target, _parse_float_list(m.group(3)), n), None
        if kind == "random":
            parts = payload.split(",")
            if len(parts) not in (2, 4):
                raise ValueError("expected random:N,SEED or random:N,SEED,LO,HI")
            n, seed = int(parts[0]), int(parts[1])
            if len(parts) == 4:
                return space.gen_random_semimetric(n, seed, float(parts[2]), float(parts[3])), None
            return space.gen_random_semimetric(n, seed), None
    except NegTypeError:
        raise
    except (ValueError, AttributeError, IndexError) as exc:
        raise NegTypeError(f"bad generator spec {spec!r}: {exc}") from exc
    raise NegTypeError(f"unknown generator kind {kind!r}")


def load_space(args):
    """Resolve the one input source of a command into ``(space, edges)``."""
    given = [s for s in (args.matrix, args.tree, args.gen) if s is not None]
    if len(given) != 1:
        raise NegTypeError("exactly one of --matrix, --tree, --gen is required")
    if args.matrix is not None:
        return nio.read_matrix_csv(args.matrix), None
    if args.gen is not None:
        return parse_generator(args.gen)
    if os.path.exists(args.tree):
        edges = nio.read_tree_edge_list(args.tree)
        return space.gen_tree(edges), edges
    if args.tree.partition(":")[0] in ("star", "path"):
        return parse_generator(args.tree)
    raise NegTypeError(f"--tree: no such file and not a star:/path: spec: {args.tree!r}")


def _require_exponent(args) -> float:
    if args.p is None:
        raise NegTypeError(f"{args.verb} requires an exponent (--p/--q)")
    return args.p


def _parse_grid(text: str) -> list[float]:
    try:
        a, b, step = (float(tok) for tok in text.split(":"))
    except ValueError as exc:
        raise NegTypeError(f"bad grid {text!r}; expected a:b:step") from exc
    if step <= 0 or b < a:
        raise BadRange(f"grid {text!r} needs b >= a and step > 0")
    count = int(math.floor((b - a) / step + 1e-9)) + 1
    return [a + k * step for k in range(count)]


def _tolerances(args):
    kw = {}
    for attr, field in (
        ("tol_eig", "eig_tol"),
        ("tol_bisect", "bisect_tol"),
        ("tol_qp", "qp_tol"),
        ("p_max", "p_max"),
    ):
        val = getattr(args, attr, None)
        if val is not None:
            kw[field] = val
    return dataclasses.replace(DEFAULT_TOL, **kw) if kw else DEFAULT_TOL


# ----------------------------------------------------------------- handlers


def _cmd_check(args, tol):
    X, _ = load_space(args)
    v = check(X, _require_exponent(args), tol)
    if args.json:
        _emit_json(v.to_dict())
    else:
        _kv("q", _fmt(v.q))
        _kv("status", v.status.value)
        _kv("critical_value", _fmt(v.critical_value))
        if v.witness is not None:
            _kv("witness", "[" + ", ".join(_fmt(float(x)) for x in v.witness) + "]")
    return 0


def _cmd_sup(args, tol):
    X, _ = load_space(args)
    r = supremal_negative_type(X, tol)
    if args.json:
        _emit_json(r.to_dict())
        return 0
    if math.isinf(r.p_sup):
        _kv("p_sup", "infinity (search capped at p_max)")
        _kv("bracket", f"[{_fmt(r.bracket[0])}, infinity]")
    else:
        _kv("p_sup", _fmt(r.p_sup))
        _kv("bracket", f"[{_fmt(r.bracket[0])}, {_fmt(r.bracket[1])}]")
        _kv("verdict_at_sup", r.verdict_at_sup.status.value)
    return 0


def _emit_gap(args, r):
    if args.json:
        _emit_json(r.to_dict())
    else:
        _kv("gamma", _fmt(r.gamma))
        _kv("side_a", _fmt_side(r.arg_simplex.to_dict()["side_a"]))
        _kv("side_b", _fmt_side(r.arg_simplex.to_dict()["side_b"]))
        _kv("bipartitions_searched", r.bipartitions_searched)
        _kv("qp_iterations_total", r.qp_iterations_total)
        _kv("converged", _fmt(r.converged))


def _cmd_gap(args, tol):
    X, _ = load_space(args)
    r = gap.negative_type_gap(X, _require_exponent(args), tol)
    _emit_gap(args, r)
    if not r.converged:
        print("warning: optimizer hit its iteration cap", file=sys.stderr)
        return 3
    return 0


def _cmd_zeta(args, tol):
    X, _ = load_space(args)
    p = _require_exponent(args)
    r = gap.negative_type_gap(X, p, tol)
    rep = bounds.zeta_bound(X, p, r.gamma, tol)
    if args.json:
        _emit_json(rep.to_dict())
    else:
        for key in ("p", "gamma_gap", "diam_p", "gamma_n", "scaled_diam", "zeta"):
            _kv(key, _fmt(getattr(rep, key)))
        lo, hi = rep.guaranteed_strict_interval
        _kv("guaranteed_strict_interval", f"[{_fmt(lo)}, {_fmt(hi)})")
    if not r.converged:
        print("warning: optimizer hit its iteration cap", file=sys.stderr)
        return 3
    return 0


def _cmd_tree_bound(args, tol):
    _, edges = load_space(args)
    if edges is None:
        raise NegTypeError("tree-bound requires --tree (a tree file or star:/path: spec)")
    bound = bounds.tree_type_lower_bound(edges)
    if args.json:
        _emit_json({"bound": bound})
    else:
        _kv("bound", _fmt(bound))
    return 0


def _cmd_scan(args, tol):
    X, _ = load_space(args)
    if args.grid is None:
        raise NegTypeError("scan requires --grid a:b:step")
    rows = interval_scan(X, _parse_grid(args.grid), tol)
    if args.json:
        _emit_json({"grid": [{"q": q, "status": s.value} for q, s in rows]})
    else:
        for q, s in rows:
            print(f"{_fmt(q):<26} {s.value}")
    return 0


def _cmd_gen(args, tol):
    X, _ = load_space(args)
    if args.json:
        print(nio.space_to_json(X))
    else:
        sys.stdout.write(nio.write_matrix_csv(X))
    return 0


def _cmd_verify(args, tol):
    report = verify.run_verify(seed=args.seed, samples=args.samples)
    if args.json:
        _emit_json(report.to_dict())
    else:
        for r in report.results:
            print(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}")
        npass = sum(r.passed for r in report.results)
        print(f"{len(report.results)} properties, {npass} passed, {len(report.results) - npass} failed")
    return 0 if report.all_passed else 1


_DISPATCH = {
    "check": _cmd_check,
    "sup": _cmd_sup,
    "gap": _cmd_gap,
    "zeta": _cmd_zeta,
    "tree-bound": _cmd_tree_bound,
    "scan": _cmd_scan,
    "gen": _cmd_gen,
    "verify": _cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="negtype",
        description="Negative-type checks, gaps, and bounds for finite semi-metric spaces.",
    )
    sub = ap.add_subparsers(dest="verb", required=True)

    def add_source(p):
        p.add_argument("--matrix", metavar="FILE", help="CSV distance matrix")
        p.add_argument("--tree", metavar="FILE|SPEC", help="edge-list file or star:/path: spec")
        p.add_argument("--gen", metavar="SPEC", help="generator spec, e.g. discrete:4")

    def add_common(p):
        p.add_argument("--json", action="store_true", help="emit JSON instead of a table")
        p.add_argument("--tol-eig", type=float, dest="tol_eig", metavar="X")
        p.add_argument("--tol-bisect", type=float, dest="tol_bisect", metavar="X")
        p.add_argument("--tol-qp", type=float, dest="tol_qp", metavar="X")
        p.add_argument("--p-max", type=float, dest="p_max", metavar="X")

    def add_exponent(p):
        p.add_argument("--p", "--q", dest="p", type=float, metavar="P", help="exponent")

    for verb, blurb in (
        ("check", "classify q-negative type (STRICT/BOUNDARY/FAIL)"),
        ("sup", "supremal negative-type exponent by bisection"),
        ("gap", "negative-type gap and minimizing simplex"),
        ("zeta", "guaranteed strictness interval from the gap"),
        ("tree-bound", "closed-form lower bound for unit-weight trees"),
        ("scan", "verdicts over an exponent grid"),
        ("gen", "print a generated space"),
    ):
        p = sub.add_parser(verb, help=blurb)
        add_source(p)
        add_common(p)
        if verb in ("check", "gap", "zeta"):
            add_exponent(p)
        if verb == "scan":
            p.add_argument("--grid", metavar="A:B:STEP", help="inclusive exponent grid")

    pv = sub.add_parser("verify", help="run the full self-verification suite")
    pv.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    pv.add_argument("--seed", type=int, default=0, help="seed for all suite randomness")
    pv.add_argument("--samples", type=int, default=100_000, help="oracle sample count")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.verb](args, _tolerances(args))
    except (IntervalAnomaly, EigensolverFailure, NotConverged) as exc:
        print(f"numeric anomaly: {exc}", file=sys.stderr)
        return 3
    except NegTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
