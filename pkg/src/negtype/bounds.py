"""Closed-form bounds relating the gap, the diameter, and the supremal exponent."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NegativeGap, NegativeExponent, NotUnitWeights, TooFewPoints, TooSmall
from .space import FiniteSemiMetricSpace, diameter, gen_tree, scaled_diameter
from .tolerances import DEFAULT_TOL, ToleranceConfig

__all__ = ["ZetaReport", "gamma_fn", "zeta_bound", "tree_type_lower_bound", "star_exact_type"]


def gamma_fn(m: int) -> float:
    """Largest total same-side pair mass over weight splits of m points.

    Equals 1 - (1/floor(m/2) + 1/ceil(m/2))/2; zero at m = 2 and strictly
    increasing toward 1.
    """
    if m < 2:
        raise TooSmall(f"need at least 2 points, got {m}")
    return 1.0 - 0.5 * (1.0 / (m // 2) + 1.0 / ((m + 1) // 2))


@dataclass(frozen=True)
class ZetaReport:
    """Audit record for the strictness-extension bound.

    A positive gap at exponent p guarantees strict negative type on the
    half-open interval [p, p + zeta); zeta is infinite when all distances
    are equal (scaled diameter 1), where strictness holds at every exponent.
    """

    p: float
    gamma_gap: float
    diam_p: float
    gamma_n: float
    scaled_diam: float
    zeta: float
    guaranteed_strict_interval: tuple[float, float]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "gamma_gap": self.gamma_gap,
            "diam_p": self.diam_p,
            "gamma_n": self.gamma_n,
            "scaled_diam": self.scaled_diam,
            "zeta": self.zeta,
            "guaranteed_strict_interval": list(self.guaranteed_strict_interval),
        }


def zeta_bound(
    space: FiniteSemiMetricSpace,
    p: float,
    gamma_gap: float,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> ZetaReport:
    """How far strictness extends past p, given the gap value there.

    zeta = ln(1 + gap / (diam^p * gamma_fn(n))) / ln(scaled diameter). The
    gap may come from the optimizer or from the tree formula; it is taken
    as an input rather than recomputed.
    """
    if space.n < 3:
        raise TooFewPoints(f"the bound needs n >= 3, got {space.n}")
    if p < 0:
        raise NegativeExponent(f"exponent must be >= 0, got {p}")
    if gamma_gap < 0:
        raise NegativeGap(f"gap must be >= 0, got {gamma_gap}")
    diam_p = diameter(space) ** p
    gn = gamma_fn(space.n)
    sd = scaled_diameter(space)
    if sd <= 1.0 + 1e-12:
        zeta = math.inf
    else:
        zeta = math.log1p(gamma_gap / (diam_p * gn)) / math.log(sd)
    return ZetaReport(
        p=p,
        gamma_gap=gamma_gap,
        diam_p=diam_p,
        gamma_n=gn,
        scaled_diam=sd,
        zeta=zeta,
        guaranteed_strict_interval=(p, p + zeta),
    )


def tree_type_lower_bound(edges) -> float:
    """Supremal-exponent lower bound for a tree with all edge weights 1.

    Evaluates 1 + ln(1 + 1/(D*(n-1)*gamma_fn(n))) / ln(D) with D the metric
    diameter of the tree.
    """
    edges = [(u, v, float(w)) for u, v, w in edges]
    if any(w != 1.0 for _, _, w in edges):
        raise NotUnitWeights("all edge weights must equal 1 for this bound")
    space = gen_tree(edges)
    if space.n < 3:
        raise TooFewPoints(f"the bound needs n >= 3 vertices, got {space.n}")
    D = diameter(space)
    n = space.n
    return 1.0 + math.log1p(1.0 / (D * (n - 1) * gamma_fn(n))) / math.log(D)


def star_exact_type(n: int) -> float:
    """Exact supremal exponent of the star with n - 1 unit-weight leaves."""
    if n < 3:
        raise TooFewPoints(f"a star needs n >= 3 total vertices, got {n}")
    return 1.0 + math.log1p(1.0 / (n - 2)) / math.log(2.0)
