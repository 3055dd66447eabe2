"""Convex geometry for finite point clouds in the probability simplex.

Small, dense, low-dimensional problems only. Vertices are found by an
incremental hull (Qhull) after projecting onto the cloud's own affine span,
with a per-point LP redundancy fallback for geometry Qhull refuses;
membership and interior/boundary classification are linear programs.

Classification is relative to the affine span of the cloud: a segment in a
2-simplex has two boundary points and an open-interval interior, matching
the relative-interior notion the thermal pipeline needs.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, QhullError

__all__ = [
    "affine_rank",
    "hull_vertex_indices",
    "min_slack_combination",
    "classify_membership",
]

#: Positivity margin below which an inside point counts as boundary.
INTERIOR_MARGIN = 1e-9


def affine_rank(points: np.ndarray, tol: float = 1e-10) -> int:
    """Dimension of the affine span of a point cloud (rows are points)."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.shape[0] <= 1:
        return 0
    centered = pts[1:] - pts[0]
    svals = np.linalg.svd(centered, compute_uv=False)
    scale = max(1.0, float(svals[0]) if svals.size else 0.0)
    return int(np.sum(svals > tol * scale))


def _lp_is_redundant(index: int, pts: np.ndarray, tol: float) -> bool:
    others = np.delete(pts, index, axis=0)
    slack, _ = min_slack_combination(pts[index], others)
    return slack <= tol


def hull_vertex_indices(points: np.ndarray, tol: float = 1e-10) -> tuple[int, ...]:
    """Indices of the extreme points of a (deduplicated) point cloud.

    Degenerate clouds (rank 0 or 1, or Qhull rejections) are handled by
    direct extremes / LP redundancy removal. Indices are returned ascending.
    """
    pts = np.asarray(points, dtype=np.float64)
    k = pts.shape[0]
    if k == 1:
        return (0,)
    centered = pts - pts[0]
    u_mat, svals, vt = np.linalg.svd(centered, full_matrices=False)
    scale = max(1.0, float(svals[0]) if svals.size else 0.0)
    rank = int(np.sum(svals > tol * scale))
    if rank == 0:
        return (0,)
    if rank == 1:
        coord = centered @ vt[0]
        return tuple(sorted({int(np.argmin(coord)), int(np.argmax(coord))}))
    projected = centered @ vt[:rank].T
    try:
        hull = ConvexHull(projected)
        return tuple(sorted(int(v) for v in hull.vertices))
    except QhullError:
        verts = [i for i in range(k) if not _lp_is_redundant(i, pts, tol)]
        return tuple(verts)


def min_slack_combination(
    target: np.ndarray, generators: np.ndarray
) -> tuple[float, np.ndarray]:
    """Best convex combination of ``generators`` approximating ``target``.

    Minimizes the max-norm residual ``s`` over weights ``lam >= 0`` with
    ``sum(lam) = 1``; returns ``(s*, lam*)``.
    """
    gens = np.asarray(generators, dtype=np.float64)
    tgt = np.asarray(target, dtype=np.float64)
    k, d = gens.shape
    nvar = k + 1
    a_ub = np.zeros((2 * d, nvar))
    b_ub = np.zeros(2 * d)
    a_ub[:d, :k] = gens.T
    a_ub[:d, -1] = -1.0
    b_ub[:d] = tgt
    a_ub[d:, :k] = -gens.T
    a_ub[d:, -1] = -1.0
    b_ub[d:] = -tgt
    a_eq = np.zeros((1, nvar))
    a_eq[0, :k] = 1.0
    cost = np.zeros(nvar)
    cost[-1] = 1.0
    res = linprog(cost, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=[1.0], bounds=(0, None), method="highs")
    if not res.success:
        raise RuntimeError(f"membership LP did not solve cleanly: {res.message}")
    return float(res.fun), res.x[:k]


def _positivity_margin(
    target: np.ndarray, generators: np.ndarray, feas_tol: float
) -> tuple[float, np.ndarray] | None:
    """Maximize ``t`` with ``lam_i >= t`` over representations of ``target``.

    A polytope point lies in the relative interior iff it is a strictly
    positive convex combination of all the extreme points, so ``t* > 0``
    separates interior from boundary. Feasibility of the representation is
    relaxed to ``feas_tol`` per coordinate to absorb floating-point error.
    """
    gens = np.asarray(generators, dtype=np.float64)
    tgt = np.asarray(target, dtype=np.float64)
    k, d = gens.shape
    nvar = k + 1  # weights, then t
    rows = []
    rhs = []
    for c in range(d):
        row = np.zeros(nvar)
        row[:k] = gens[:, c]
        rows.append(row)
        rhs.append(tgt[c] + feas_tol)
        rows.append(-row)
        rhs.append(-(tgt[c] - feas_tol))
    for i in range(k):  # t - lam_i <= 0
        row = np.zeros(nvar)
        row[i] = -1.0
        row[-1] = 1.0
        rows.append(row)
        rhs.append(0.0)
    a_eq = np.zeros((1, nvar))
    a_eq[0, :k] = 1.0
    cost = np.zeros(nvar)
    cost[-1] = -1.0  # maximize t
    res = linprog(
        cost, A_ub=np.array(rows), b_ub=np.array(rhs), A_eq=a_eq, b_eq=[1.0],
        bounds=(0, None), method="highs",
    )
    if not res.success:
        return None
    return float(res.x[-1]), res.x[:k]


def classify_membership(
    target: np.ndarray, generators: np.ndarray, tol: float = 1e-8
) -> tuple[str, float, np.ndarray | None]:
    """Classify ``target`` against ``conv(generators)``.

    Returns ``(status, distance, weights)`` with status one of
    ``"interior"``, ``"boundary"``, ``"exterior"``. ``generators`` should be
    the extreme points; interiority means relative interior of their hull.
    ``distance`` is the max-norm membership residual for exterior points and
    the positivity margin for inside points (diagnostic only).
    """
    gens = np.asarray(generators, dtype=np.float64)
    tgt = np.asarray(target, dtype=np.float64)
    if gens.shape[0] == 1:
        gap = float(np.max(np.abs(gens[0] - tgt)))
        if gap <= tol:
            return "interior", gap, np.array([1.0])
        return "exterior", gap, None
    slack, weights = min_slack_combination(tgt, gens)
    if slack > tol:
        return "exterior", slack, None
    # Tighten the representation tolerance to just above the achieved slack,
    # so near-vertex targets cannot buy a fake positive margin out of it.
    feas = max(1.01 * slack, 1e-12)
    margin = _positivity_margin(tgt, gens, feas)
    if margin is None:
        return "boundary", 0.0, weights
    t_star, pos_weights = margin
    if t_star > INTERIOR_MARGIN:
        return "interior", t_star, pos_weights
    return "boundary", t_star, pos_weights
