"""Finite semi-metric spaces: validation, scalar invariants, and generators.

A space is a symmetric nonnegative distance matrix with zero diagonal and
strictly positive off-diagonal entries. The triangle inequality is never
required; ``is_metric`` reports it as a diagnostic only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AsymmetricMatrix,
    BadRange,
    BlockSizeTooSmall,
    DuplicateAngle,
    ExponentsNotDecreasing,
    NegativeExponent,
    NonpositiveOffDiagonal,
    NonpositiveScale,
    NonpositiveWeight,
    NonzeroDiagonal,
    NotATree,
    TooSmall,
)

__all__ = [
    "FiniteSemiMetricSpace",
    "from_matrix",
    "diameter",
    "min_positive_distance",
    "scaled_diameter",
    "power_matrix",
    "rescale",
    "is_metric",
    "gen_tree",
    "gen_discrete",
    "gen_star",
    "gen_path",
    "gen_enflo_truncation",
    "gen_circle",
    "gen_random_semimetric",
]


@dataclass(frozen=True)
class FiniteSemiMetricSpace:
    """Immutable n-point space with pairwise distinct points.

    ``dist`` is exposed read-only; all operations are pure functions, so
    instances are safe to share across threads.
    """

    n: int
    dist: np.ndarray
    labels: tuple[str, ...] | None = field(default=None)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "dist": self.dist.tolist(),
            "labels": list(self.labels) if self.labels is not None else None,
        }


def from_matrix(rows, labels=None) -> FiniteSemiMetricSpace:
    """Validate a square matrix and wrap it as a space.

    Raises AsymmetricMatrix, NonzeroDiagonal, NonpositiveOffDiagonal, or
    TooSmall when the matrix is not a semi-metric on >= 2 distinct points.
    """
    d = np.array(rows, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise AsymmetricMatrix(f"matrix must be square, got shape {d.shape}")
    n = d.shape[0]
    if n < 2:
        raise TooSmall("a space needs at least 2 points")
    if not np.all(np.diagonal(d) == 0.0):
        bad = int(np.nonzero(np.diagonal(d))[0][0])
        raise NonzeroDiagonal(f"diagonal entry ({bad},{bad}) = {d[bad, bad]} is not zero")
    if not np.array_equal(d, d.T):
        i, j = np.argwhere(d != d.T)[0]
        raise AsymmetricMatrix(f"entries ({i},{j}) and ({j},{i}) differ: {d[i, j]} vs {d[j, i]}")
    off = ~np.eye(n, dtype=bool)
    if not np.all(d[off] > 0.0):
        i, j = np.argwhere(off & ~(d > 0.0))[0]
        raise NonpositiveOffDiagonal(f"distance ({i},{j}) = {d[i, j]} must be > 0")
    d.setflags(write=False)
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise AsymmetricMatrix(f"got {len(labels)} labels for {n} points")
    return FiniteSemiMetricSpace(n=n, dist=d, labels=labels)


def diameter(space: FiniteSemiMetricSpace) -> float:
    return float(space.dist.max())


def min_positive_distance(space: FiniteSemiMetricSpace) -> float:
    off = ~np.eye(space.n, dtype=bool)
    return float(space.dist[off].min())


def scaled_diameter(space: FiniteSemiMetricSpace) -> float:
    """Diameter over the smallest distance; 1 exactly when all distances agree."""
    return diameter(space) / min_positive_distance(space)


def power_matrix(space: FiniteSemiMetricSpace, p: float) -> np.ndarray:
    """Entrywise p-th power of the distance matrix, diagonal pinned to 0.

    At p = 0 the off-diagonal is all ones; every space trivially satisfies
    the strict inequalities there, and this convention keeps the limit
    continuous for the checker.
    """
    if p < 0:
        raise NegativeExponent(f"exponent must be >= 0, got {p}")
    out = np.zeros_like(space.dist)
    off = ~np.eye(space.n, dtype=bool)
    with np.errstate(over="ignore"):  # callers test finiteness, not a warning
        out[off] = space.dist[off] ** p
    return out


def rescale(space: FiniteSemiMetricSpace, c: float) -> FiniteSemiMetricSpace:
    if not c > 0:
        raise NonpositiveScale(f"scale factor must be > 0, got {c}")
    return FiniteSemiMetricSpace(n=space.n, dist=_frozen(space.dist * c), labels=space.labels)


def is_metric(space: FiniteSemiMetricSpace) -> tuple[bool, list[tuple[int, int, int]]]:
    """Check the triangle inequality over all triples.

    Returns ``(ok, violations)`` where each violation ``(i, j, k)`` means
    d(i,k) > d(i,j) + d(j,k) beyond a tiny relative slack. Diagnostic only:
    no other operation depends on the result.
    """
    d = space.dist
    slack = 1e-12 * diameter(space)
    violations = []
    for j in range(space.n):
        # broadcast: excess[i,k] = d(i,k) - d(i,j) - d(j,k)
        excess = d - d[:, j][:, None] - d[j, :][None, :]
        for i, k in np.argwhere(excess > slack):
            if i != j and k != j and i != k:
                violations.append((int(i), int(j), int(k)))
    return (len(violations) == 0, violations)


def gen_tree(edges) -> FiniteSemiMetricSpace:
    """Path-sum metric of a weighted tree given as (u, v, weight) triples.

    Vertex ids may be any integers; they are relabeled 0..n-1 in sorted order
    and kept as labels.
    """
    edges = [(int(u), int(v), float(w)) for u, v, w in edges]
    if not edges:
        raise NotATree("empty edge list")
    for u, v, w in edges:
        if w <= 0:
            raise NonpositiveWeight(f"edge ({u},{v}) has weight {w}")
        if u == v:
            raise NotATree(f"self-loop at vertex {u}")
    vertices = sorted({u for u, _, _ in edges} | {v for _, v, _ in edges})
    index = {u: i for i, u in enumerate(vertices)}
    n = len(vertices)
    if len(edges) != n - 1:
        raise NotATree(f"{len(edges)} edges on {n} vertices cannot form a tree")
    adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for u, v, w in edges:
        adj[index[u]].append((index[v], w))
        adj[index[v]].append((index[u], w))
    d = np.zeros((n, n))
    for root in range(n):
        seen = np.zeros(n, dtype=bool)
        seen[root] = True
        stack = [root]
        while stack:
            x = stack.pop()
            for y, w in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    d[root, y] = d[root, x] + w
                    stack.append(y)
        if not seen.all():
            raise NotATree("edge list is disconnected")
    # per-root summation order can differ in the last ulp; mirror one triangle
    iu = np.triu_indices(n, k=1)
    d[(iu[1], iu[0])] = d[iu]
    return from_matrix(d, labels=[str(u) for u in vertices])


def gen_discrete(n: int) -> FiniteSemiMetricSpace:
    """All distances 1: the discrete metric on n points."""
    if n < 2:
        raise TooSmall(f"discrete metric needs n >= 2, got {n}")
    d = np.ones((n, n)) - np.eye(n)
    return from_matrix(d)


def gen_star(k: int, w: float = 1.0) -> FiniteSemiMetricSpace:
    """Star with k leaves and edge weight w; point 0 is the center (k+1 points)."""
    if k < 2:
        raise TooSmall(f"star needs k >= 2 leaves, got {k}")
    if w <= 0:
        raise NonpositiveWeight(f"edge weight must be > 0, got {w}")
    return gen_tree([(0, i, w) for i in range(1, k + 1)])


def gen_path(n: int, w: float = 1.0) -> FiniteSemiMetricSpace:
    """Path on n vertices with equal edge weight w."""
    if n < 2:
        raise TooSmall(f"path needs n >= 2 vertices, got {n}")
    if w <= 0:
        raise NonpositiveWeight(f"edge weight must be > 0, got {w}")
    return gen_tree([(i, i + 1, w) for i in range(n - 1)])


def gen_enflo_truncation(target: float, exps, n: int) -> FiniteSemiMetricSpace:
    """Two-family block space whose m-block truncation has maximal type exps[-1].

    Builds blocks (Y_k, Z_k), k = 1..m, with |Y_k| = |Z_k| = n. Distances:
    (1 - 1/n)^(1/exps[k]) between Y_k and Z_k of the same block, 1 for every
    other distinct pair. The admissibility gate (1 - 1/n)^(1/target) >= 1/2
    is checked against the target exponent only; it then holds for each
    block exponent automatically since those exceed the target.
    """
    if target <= 0:
        raise NegativeExponent(f"target exponent must be > 0, got {target}")
    exps = [float(e) for e in exps]
    if not exps:
        raise ExponentsNotDecreasing("need at least one block exponent")
    for a, b in zip(exps, exps[1:]):
        if not a > b:
            raise ExponentsNotDecreasing(f"exponents must strictly decrease, got {a} then {b}")
    if not exps[-1] > target:
        raise ExponentsNotDecreasing(
            f"block exponents must stay above the target {target}, got {exps[-1]}"
        )
    if n < 2 or (1.0 - 1.0 / n) ** (1.0 / target) < 0.5:
        raise BlockSizeTooSmall(
            f"block size n={n} fails (1 - 1/n)^(1/{target}) >= 1/2"
        )
    m = len(exps)
    total = 2 * m * n
    d = np.ones((total, total)) - np.eye(total)
    labels = []
    for k in range(m):
        cross = (1.0 - 1.0 / n) ** (1.0 / exps[k])
        y0, z0 = 2 * k * n, (2 * k + 1) * n
        d[y0 : y0 + n, z0 : z0 + n] = cross
        d[z0 : z0 + n, y0 : y0 + n] = cross
        labels += [f"Y{k + 1}.{j}" for j in range(n)]
        labels += [f"Z{k + 1}.{j}" for j in range(n)]
    return from_matrix(d, labels=labels)


def gen_circle(angles) -> FiniteSemiMetricSpace:
    """Points on the unit circle with the geodesic (arc-length) metric."""
    theta = np.mod(np.asarray(list(angles), dtype=float), 2 * math.pi)
    if theta.size < 2:
        raise TooSmall("circle needs at least 2 points")
    if np.unique(theta).size != theta.size:
        raise DuplicateAngle("angles must be pairwise distinct modulo 2*pi")
    gap = np.abs(theta[:, None] - theta[None, :])
    d = np.minimum(gap, 2 * math.pi - gap)
    np.fill_diagonal(d, 0.0)
    return from_matrix(d)


def gen_random_semimetric(
    n: int, seed: int, min_d: float = 1.0, max_d: float = 2.0
) -> FiniteSemiMetricSpace:
    """Off-diagonal distances i.i.d. uniform in [min_d, max_d]; deterministic per seed."""
    if not (0 < min_d <= max_d):
        raise BadRange(f"need 0 < min_d <= max_d, got [{min_d}, {max_d}]")
    if n < 2:
        raise TooSmall(f"need n >= 2 points, got {n}")
    rng = np.random.default_rng(seed)
    d = np.zeros((n, n))
    iu = np.triu_indices(n, k=1)
    d[iu] = rng.uniform(min_d, max_d, size=len(iu[0]))
    d = d + d.T
    return from_matrix(d)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr
