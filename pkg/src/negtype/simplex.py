"""Weighted bipartite simplices and their gap values.

A loaded simplex splits a set of point indices into two disjoint sides and
puts a probability weight vector on each side. Its gap at exponent p is the
cross-side weighted power-distance mass minus both same-side masses; the
space-wide infimum of this quantity is computed in :mod:`negtype.gap`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadNormalization, InvalidSimplex
from .space import FiniteSemiMetricSpace, power_matrix

__all__ = ["LoadedSimplex", "simplex_gap", "gap_from_eta", "sign_split"]

_SUM_ATOL = 1e-12


@dataclass(frozen=True)
class LoadedSimplex:
    """Two disjoint index sides with weights summing to 1 on each side.

    Weights must be strictly positive unless ``closure=True``, which admits
    zeros (the closed polytope the gap optimizer ranges over).
    """

    side_a: tuple[int, ...]
    side_b: tuple[int, ...]
    weights_a: tuple[float, ...]
    weights_b: tuple[float, ...]
    closure: bool = False

    def __post_init__(self):
        if not self.side_a or not self.side_b:
            raise InvalidSimplex("both sides must be nonempty")
        if len(self.side_a) != len(self.weights_a) or len(self.side_b) != len(self.weights_b):
            raise InvalidSimplex("index/weight length mismatch")
        seen = set(self.side_a) | set(self.side_b)
        if len(seen) != len(self.side_a) + len(self.side_b):
            raise InvalidSimplex("sides must be disjoint lists of distinct indices")
        if any(i < 0 for i in seen):
            raise InvalidSimplex("negative point index")
        low = 0.0 if self.closure else None
        for w in self.weights_a + self.weights_b:
            if (low is None and w <= 0.0) or (low is not None and w < low):
                raise InvalidSimplex(f"weight {w} out of range (closure={self.closure})")
        for name, ws in (("a", self.weights_a), ("b", self.weights_b)):
            if abs(sum(ws) - 1.0) > _SUM_ATOL:
                raise InvalidSimplex(f"side {name} weights sum to {sum(ws)}, expected 1")

    @property
    def s(self) -> int:
        return len(self.side_a)

    @property
    def t(self) -> int:
        return len(self.side_b)

    def to_eta(self, n: int) -> np.ndarray:
        """Signed weight vector on n points: +weights on side a, -weights on side b."""
        if max(max(self.side_a), max(self.side_b)) >= n:
            raise InvalidSimplex(f"index out of range for an {n}-point space")
        eta = np.zeros(n)
        eta[list(self.side_a)] = self.weights_a
        eta[list(self.side_b)] = np.negative(self.weights_b)
        return eta

    def to_dict(self) -> dict:
        return {
            "side_a": [[i, w] for i, w in zip(self.side_a, self.weights_a)],
            "side_b": [[i, w] for i, w in zip(self.side_b, self.weights_b)],
        }


def sign_split(eta, drop_rel: float = 1e-12) -> LoadedSimplex:
    """Build the simplex whose sides are the positive and negative parts of eta.

    Entries with magnitude at most ``drop_rel`` times the largest magnitude
    are dropped; each side is renormalized to sum exactly 1.
    """
    eta = np.asarray(eta, dtype=float)
    cut = drop_rel * np.abs(eta).max()
    pos = np.nonzero(eta > cut)[0]
    neg = np.nonzero(eta < -cut)[0]
    if pos.size == 0 or neg.size == 0:
        raise InvalidSimplex("vector has no sign change after dropping negligible entries")
    wa = eta[pos] / eta[pos].sum()
    wb = -eta[neg] / (-eta[neg]).sum()
    return LoadedSimplex(
        side_a=tuple(int(i) for i in pos),
        side_b=tuple(int(i) for i in neg),
        weights_a=tuple(float(w) for w in wa),
        weights_b=tuple(float(w) for w in wb),
    )


def simplex_gap(space: FiniteSemiMetricSpace, simplex: LoadedSimplex, p: float) -> float:
    """Gap of one loaded simplex: cross-side mass minus both same-side masses.

    Evaluates sum_{j,i} m_j n_i d(a_j,b_i)^p - sum_{j1<j2} m m d^p
    - sum_{i1<i2} n n d^p directly from the definition.
    """
    if max(max(simplex.side_a), max(simplex.side_b)) >= space.n:
        raise InvalidSimplex(f"index out of range for an {space.n}-point space")
    M = power_matrix(space, p)
    ia = list(simplex.side_a)
    ib = list(simplex.side_b)
    wa = np.asarray(simplex.weights_a)
    wb = np.asarray(simplex.weights_b)
    cross = wa @ M[np.ix_(ia, ib)] @ wb
    same_a = 0.5 * (wa @ M[np.ix_(ia, ia)] @ wa)
    same_b = 0.5 * (wb @ M[np.ix_(ib, ib)] @ wb)
    return float(cross - same_a - same_b)


def gap_from_eta(space: FiniteSemiMetricSpace, eta, p: float, atol: float = 1e-9) -> float:
    """Gap evaluated on a signed weight vector with each sign mass equal to 1.

    Identical to ``simplex_gap`` of the sign-split simplex; computed here as
    -(1/2) * eta' (power matrix) eta, which is the same bilinear identity.
    """
    eta = np.asarray(eta, dtype=float)
    if eta.shape != (space.n,):
        raise BadNormalization(f"expected a vector of length {space.n}")
    pos = eta[eta > 0].sum()
    neg = -eta[eta < 0].sum()
    if abs(pos - 1.0) > atol or abs(neg - 1.0) > atol:
        raise BadNormalization(
            f"positive mass {pos} and negative mass {neg} must both equal 1"
        )
    M = power_matrix(space, p)
    return float(-0.5 * (eta @ M @ eta))
