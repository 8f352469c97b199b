"""Numeric thresholds used across the package, collected in one place."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NegTypeError


@dataclass(frozen=True)
class ToleranceConfig:
    """All tunable numeric thresholds.

    eig_tol is relative to the largest power-matrix entry; the classification
    band around zero eigenvalues is ``eig_tol * scale``. bisect_tol bounds the
    width of the exponent bracket returned by the supremal search. qp_tol is
    the projected-gradient stationarity target (applied relative to the
    power-matrix scale so convergence behaves identically under rescaling).
    """

    eig_tol: float = 1e-9
    bisect_tol: float = 1e-6
    qp_tol: float = 1e-10
    p_max: float = 64.0
    qp_max_iter: int = 100_000

    def __post_init__(self) -> None:
        for name in ("eig_tol", "bisect_tol", "qp_tol", "p_max"):
            if not getattr(self, name) > 0:
                raise NegTypeError(f"{name} must be strictly positive")
        if self.qp_max_iter <= 0:
            raise NegTypeError("qp_max_iter must be strictly positive")
        if not self.p_max > 1:
            raise NegTypeError("p_max must exceed 1")


DEFAULT_TOL = ToleranceConfig()
