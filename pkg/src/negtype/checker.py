"""Negative-type classification at a fixed exponent and supremal-exponent search.

The q-negative-type inequality asks that the power-distance quadratic form be
nonpositive on the zero-sum hyperplane. ``check`` settles that spectrally:
restrict the form to the hyperplane with an orthonormal basis and classify
its largest value. ``supremal_negative_type`` bisects the exponent axis for
the edge where strictness is lost; ``interval_scan`` validates the one-way
structure of verdicts along a grid; ``witness_null_simplex`` converts the
critical direction at the supremal exponent into an explicit null simplex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .errors import (
    BadRange,
    EigensolverFailure,
    IntervalAnomaly,
    InvalidSimplex,
    NoBoundaryWitness,
)
from .simplex import LoadedSimplex, sign_split
from .space import FiniteSemiMetricSpace, power_matrix
from .tolerances import DEFAULT_TOL, ToleranceConfig

__all__ = [
    "Status",
    "NegTypeVerdict",
    "SupremalResult",
    "check",
    "supremal_negative_type",
    "interval_scan",
    "witness_null_simplex",
]


class Status(str, Enum):
    STRICT = "STRICT"
    BOUNDARY = "BOUNDARY"
    FAIL = "FAIL"


@dataclass(frozen=True)
class NegTypeVerdict:
    """Outcome of one exponent test.

    ``critical_value`` is the maximum of the power-form over unit vectors
    orthogonal to all-ones: negative for STRICT, near zero for BOUNDARY,
    positive for FAIL, with the band set by ``eig_tol`` times the largest
    power-matrix entry. ``witness`` attains that maximum (present for
    BOUNDARY and FAIL).
    """

    q: float
    status: Status
    critical_value: float
    witness: np.ndarray | None = None

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "status": self.status.value,
            "critical_value": self.critical_value,
            "witness": None if self.witness is None else self.witness.tolist(),
        }


@dataclass(frozen=True)
class SupremalResult:
    """Supremal exponent with its final bisection bracket.

    ``p_sup`` is ``inf`` when no failure occurs up to the search cap; then
    ``verdict_at_sup`` is None and the bracket lower end is the cap.
    """

    p_sup: float
    bracket: tuple[float, float]
    verdict_at_sup: NegTypeVerdict | None

    def to_dict(self) -> dict:
        return {
            "p_sup": self.p_sup,
            "bracket": list(self.bracket),
            "verdict_at_sup": None
            if self.verdict_at_sup is None
            else self.verdict_at_sup.to_dict(),
        }


def _complement_basis(n: int) -> np.ndarray:
    """Orthonormal basis (columns) of the hyperplane orthogonal to all-ones.

    Trailing columns of the Householder reflector that maps the first
    coordinate vector to the normalized all-ones vector.
    """
    u = np.full(n, 1.0 / math.sqrt(n))
    v = u.copy()
    v[0] -= 1.0
    H = np.eye(n) - (2.0 / (v @ v)) * np.outer(v, v)
    return H[:, 1:]


def check(
    space: FiniteSemiMetricSpace, q: float, tol: ToleranceConfig = DEFAULT_TOL
) -> NegTypeVerdict:
    """Classify q-negative type of the space as STRICT, BOUNDARY, or FAIL.

    Builds the power matrix M, restricts the form to the zero-sum hyperplane
    via an orthonormal basis Q, and eigendecomposes -Q'MQ. The smallest
    eigenvalue there is minus the maximal form value; the verdict compares it
    against the relative band eig_tol * max(M).
    """
    M = power_matrix(space, q)
    if not np.isfinite(M).all():
        raise EigensolverFailure(f"power matrix overflowed at exponent {q}")
    scale = float(M.max())
    Q = _complement_basis(space.n)
    T = -(Q.T @ M @ Q)
    T = 0.5 * (T + T.T)
    try:
        w, V = kernels.jacobi_eigh(T)
    except ArithmeticError as exc:
        raise EigensolverFailure(str(exc)) from exc
    lam_min = float(w[0])
    band = tol.eig_tol * scale
    if lam_min > band:
        return NegTypeVerdict(q=q, status=Status.STRICT, critical_value=-lam_min)
    status = Status.FAIL if lam_min < -band else Status.BOUNDARY
    eta = Q @ V[:, 0]
    eta /= np.linalg.norm(eta)
    k = int(np.argmax(np.abs(eta)))
    if eta[k] < 0:
        eta = -eta
    eta.setflags(write=False)
    return NegTypeVerdict(q=q, status=status, critical_value=-lam_min, witness=eta)


def supremal_negative_type(
    space: FiniteSemiMetricSpace, tol: ToleranceConfig = DEFAULT_TOL
) -> SupremalResult:
    """Locate the supremal exponent with negative type by bracketed bisection.

    Probes the cap first: if the space does not fail at ``tol.p_max`` the
    search reports infinity. Otherwise exponential probing from 1 brackets
    the edge where strictness is lost, and bisection on the STRICT predicate
    narrows the bracket far below ``bisect_tol`` so the returned exponent
    lands inside the boundary band: the verdict there is BOUNDARY, every
    exponent meaningfully below is STRICT, and every exponent more than
    ``bisect_tol`` above fails.
    """
    top = check(space, tol.p_max, tol)
    if top.status is not Status.FAIL:
        return SupremalResult(p_sup=math.inf, bracket=(tol.p_max, math.inf), verdict_at_sup=None)
    lo = 0.0
    q = 1.0
    while True:
        v = top if q >= tol.p_max else check(space, q, tol)
        if v.status is not Status.STRICT:
            hi, hi_verdict = q, v
            break
        lo = q
        q = min(2.0 * q, tol.p_max)
    width_floor = 1e-13 * max(1.0, hi)
    while hi - lo > width_floor:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        v = check(space, mid, tol)
        if v.status is Status.STRICT:
            lo = mid
        else:
            hi, hi_verdict = mid, v
    return SupremalResult(p_sup=hi, bracket=(lo, hi), verdict_at_sup=hi_verdict)


_RANK = {Status.STRICT: 0, Status.BOUNDARY: 1, Status.FAIL: 2}


def interval_scan(
    space: FiniteSemiMetricSpace, q_grid, tol: ToleranceConfig = DEFAULT_TOL
) -> list[tuple[float, Status]]:
    """Check every grid exponent and enforce the one-way verdict pattern.

    Along an increasing grid the statuses must read as a block of STRICT,
    at most one BOUNDARY, then a block of FAIL. Any other arrangement is a
    numerical-tolerance problem and raises IntervalAnomaly carrying the
    offending pair of grid entries.
    """
    grid = [float(q) for q in q_grid]
    if not grid:
        raise BadRange("empty exponent grid")
    if any(q < 0 for q in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
        raise BadRange("grid must be strictly increasing and nonnegative")
    out: list[tuple[float, Status]] = []
    phase = 0
    phase_setter: tuple[float, Status] | None = None
    for q in grid:
        status = check(space, q, tol).status
        rank = _RANK[status]
        entry = (q, status)
        bad = rank < phase or (rank == 1 and phase == 1)
        if bad:
            err = IntervalAnomaly(
                f"status {status.value} at q={q} cannot follow "
                f"{phase_setter[1].value} at q={phase_setter[0]}"
            )
            err.offending_pair = (phase_setter, entry)
            raise err
        if rank > phase:
            phase = rank
            phase_setter = entry
        out.append(entry)
    return out


def witness_null_simplex(
    space: FiniteSemiMetricSpace,
    tol: ToleranceConfig = DEFAULT_TOL,
    sup: SupremalResult | None = None,
) -> LoadedSimplex:
    """Null simplex at the supremal exponent, from the boundary witness.

    Splits the witness by sign (negligible entries dropped) and normalizes
    each side; the resulting simplex has gap approximately zero at the
    supremal exponent. Pass a precomputed ``sup`` to skip the search.
    """
    if sup is None:
        sup = supremal_negative_type(space, tol)
    if not math.isfinite(sup.p_sup) or sup.verdict_at_sup is None:
        raise NoBoundaryWitness("supremal exponent is not finite")
    eta = sup.verdict_at_sup.witness
    if eta is None:
        raise NoBoundaryWitness(f"no witness at exponent {sup.p_sup}")
    try:
        return sign_split(eta)
    except InvalidSimplex as exc:
        raise NoBoundaryWitness(f"degenerate witness: {exc}") from exc
