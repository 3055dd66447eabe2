"""Majorization and thermomajorization: tests, witnesses, constructions.

``p`` majorizes ``q`` when every prefix sum of the non-increasingly sorted
``p`` dominates the corresponding prefix sum of sorted ``q``. The
Hardy-Littlewood-Polya theorem makes this equivalent to ``q = D p`` for some
bistochastic ``D``; thermomajorization replaces "bistochastic" by "stochastic
and fixing a given Gibbs vector", which this module decides by a small LP.

The constructive side: :func:`schur_horn_unitary` builds a unitary whose
conjugation carries one diagonal to another prescribed majorized diagonal
(a chain of at most ``n - 1`` planar rotations), and
:func:`birkhoff_decompose` peels a bistochastic matrix into a convex
combination of permutations by repeated perfect matchings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import PreconditionError
from .linalg import (
    ComplexMatrix,
    ProbabilityVector,
    RealMatrix,
    hadamard_square,
    permutation_matrix,
    probability_vector,
)

__all__ = [
    "StochasticMatrix",
    "ConvexPermutationDecomposition",
    "stochastic_matrix",
    "majorizes",
    "thermomajorizes",
    "birkhoff_decompose",
    "schur_horn_unitary",
]

StochasticMatrix = RealMatrix


def stochastic_matrix(entries, *, col_tol: float = 1e-9, entry_tol: float = 1e-12) -> StochasticMatrix:
    """Validate a column-stochastic matrix.

    Columns must sum to 1 within ``col_tol``; entries in ``[-entry_tol, 0)``
    are clamped to zero, anything more negative is rejected.
    """
    mat = np.asarray(entries, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise PreconditionError("not-square", f"expected square matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise PreconditionError("non-finite", "matrix contains NaN or Inf entries")
    if float(mat.min()) < -entry_tol:
        raise PreconditionError("negative-entry", f"entry {mat.min()} below -{entry_tol}")
    sums = mat.sum(axis=0)
    worst = float(np.max(np.abs(sums - 1.0)))
    if worst > col_tol:
        raise PreconditionError("not-stochastic", f"column sums off by {worst}, tolerance {col_tol}")
    return np.clip(mat, 0.0, None)


@dataclass(frozen=True)
class ConvexPermutationDecomposition:
    """Convex combination of permutations, ``sum_k w_k P_{sigma_k}``.

    Each term is ``(weight, images)`` where ``images[j]`` is the image of
    basis index ``j`` (see :func:`thermohorn.linalg.permutation_matrix`).
    """

    terms: tuple[tuple[float, tuple[int, ...]], ...]

    def __post_init__(self):
        if not self.terms:
            raise PreconditionError("empty-decomposition", "need at least one term")
        total = 0.0
        dim = len(self.terms[0][1])
        for weight, perm in self.terms:
            if weight < -1e-12:
                raise PreconditionError("negative-weight", f"weight {weight} below 0")
            if sorted(perm) != list(range(dim)):
                raise PreconditionError(
                    "not-a-permutation", f"{perm} is not a bijection on 0..{dim - 1}"
                )
            total += weight
        if abs(total - 1.0) > 1e-9:
            raise PreconditionError("weights-not-normalized", f"weights sum to {total}")

    @property
    def dim(self) -> int:
        return len(self.terms[0][1])

    def to_matrix(self) -> RealMatrix:
        """Reassemble the bistochastic matrix ``sum_k w_k P_k``."""
        out = np.zeros((self.dim, self.dim))
        cols = np.arange(self.dim)
        for weight, perm in self.terms:
            out[np.asarray(perm), cols] += weight
        return out


def _sorted_prefix_sums(vec: ProbabilityVector) -> np.ndarray:
    return np.cumsum(np.sort(np.asarray(vec, dtype=np.float64))[::-1])


def majorizes(p, q, *, slack: float = 1e-10) -> bool:
    """Whether every sorted prefix sum of ``p`` dominates that of ``q``.

    Comparison allows a numerical slack of ``-slack`` per prefix.
    """
    p = probability_vector(p)
    q = probability_vector(q)
    if p.size != q.size:
        raise PreconditionError("dimension-mismatch", f"dims {p.size} and {q.size} differ")
    return bool(np.all(_sorted_prefix_sums(p) >= _sorted_prefix_sums(q) - slack))


def first_failing_prefix(p, q, *, slack: float = 1e-10) -> int | None:
    """1-based index of the first violated prefix-sum inequality, or None."""
    gaps = _sorted_prefix_sums(probability_vector(p)) - _sorted_prefix_sums(probability_vector(q))
    bad = np.nonzero(gaps < -slack)[0]
    return int(bad[0]) + 1 if bad.size else None


def thermomajorizes(p, q, gamma, *, tol: float = 1e-8) -> StochasticMatrix | None:
    """Witness search: a stochastic ``D`` with ``D p = q`` and ``D gamma = gamma``.

    Solves ``min ||D p - q||_inf`` over column-stochastic matrices fixing
    ``gamma`` (that feasible region is never empty: the rank-one matrix with
    all columns ``gamma`` is in it), and accepts when the optimum is at most
    ``tol``. Returns the witness matrix, or None when no Gibbs-preserving
    stochastic map carries ``p`` to ``q``.
    """
    p = probability_vector(p)
    q = probability_vector(q)
    gamma = probability_vector(gamma)
    n = p.size
    if q.size != n or gamma.size != n:
        raise PreconditionError(
            "dimension-mismatch", f"dims {p.size}, {q.size}, {gamma.size} must agree"
        )
    if float(gamma.min()) <= 0.0:
        raise PreconditionError("gamma-zero-entry", "Gibbs vector must be strictly positive")

    # Variables: D row-major (n*n), then the slack s.
    nvar = n * n + 1
    a_eq = np.zeros((2 * n, nvar))
    b_eq = np.zeros(2 * n)
    for j in range(n):  # column sums
        a_eq[j, j : n * n : n] = 1.0
        b_eq[j] = 1.0
    for i in range(n):  # D gamma = gamma
        a_eq[n + i, i * n : (i + 1) * n] = gamma
        b_eq[n + i] = gamma[i]
    a_ub = np.zeros((2 * n, nvar))
    b_ub = np.zeros(2 * n)
    for i in range(n):  # |D p - q|_i <= s
        a_ub[i, i * n : (i + 1) * n] = p
        a_ub[i, -1] = -1.0
        b_ub[i] = q[i]
        a_ub[n + i, i * n : (i + 1) * n] = -p
        a_ub[n + i, -1] = -1.0
        b_ub[n + i] = -q[i]
    cost = np.zeros(nvar)
    cost[-1] = 1.0
    res = linprog(cost, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if not res.success:
        raise RuntimeError(f"thermomajorization LP did not solve cleanly: {res.message}")
    if float(res.fun) > tol:
        return None
    witness = stochastic_matrix(res.x[:-1].reshape(n, n), col_tol=1e-7, entry_tol=1e-9)
    for name, lhs, rhs in (("Dp=q", witness @ p, q), ("Dgamma=gamma", witness @ gamma, gamma)):
        err = float(np.max(np.abs(lhs - rhs)))
        if err > 10 * tol:
            raise RuntimeError(f"LP witness violates {name} by {err}")
    return witness


def _perfect_matching(support: np.ndarray) -> list[int] | None:
    """Column -> row perfect matching in a boolean support grid, or None."""
    n = support.shape[0]
    row_match = [-1] * n  # row -> column currently assigned

    def try_column(j: int, seen: list[bool]) -> bool:
        for i in range(n):
            if support[i, j] and not seen[i]:
                seen[i] = True
                if row_match[i] == -1 or try_column(row_match[i], seen):
                    row_match[i] = j
                    return True
        return False

    for j in range(n):
        if not try_column(j, [False] * n):
            return None
    col_to_row = [-1] * n
    for i, j in enumerate(row_match):
        col_to_row[j] = i
    return col_to_row


def birkhoff_decompose(
    d, require_bistochastic: bool = True, *, zero_tol: float = 1e-10
) -> ConvexPermutationDecomposition:
    """Peel a bistochastic matrix into a convex combination of permutations.

    Greedy: find a permutation inside the support (perfect matching via
    augmenting paths), subtract its minimum entry, repeat; entries below
    ``zero_tol`` count as zero. Weights are normalized at the end. If the
    greedy chain ever exceeds the Birkhoff-Caratheodory bound
    ``(n-1)^2 + 1``, the weights are re-solved by LP over the permutations
    found, whose basic solution respects the bound.
    """
    mat = np.asarray(d, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise PreconditionError("not-square", f"expected square matrix, got shape {mat.shape}")
    n = mat.shape[0]
    if float(mat.min()) < -1e-9:
        raise PreconditionError("negative-entry", f"entry {mat.min()} is negative")
    if require_bistochastic:
        row_err = float(np.max(np.abs(mat.sum(axis=1) - 1.0)))
        col_err = float(np.max(np.abs(mat.sum(axis=0) - 1.0)))
        if max(row_err, col_err) > 1e-8:
            raise PreconditionError(
                "not-bistochastic",
                f"row sums off by {row_err}, column sums off by {col_err} (tolerance 1e-8)",
            )
    residual = np.clip(mat, 0.0, None)
    raw_terms: list[tuple[float, tuple[int, ...]]] = []
    for _ in range(n * n):
        if float(residual.max()) <= zero_tol:
            break
        perm = _perfect_matching(residual > zero_tol)
        if perm is None:
            raise PreconditionError(
                "matching-failure",
                f"support of residual mass {float(residual.sum())} admits no perfect matching",
            )
        weight = float(min(residual[perm[j], j] for j in range(n)))
        raw_terms.append((weight, tuple(perm)))
        for j in range(n):
            residual[perm[j], j] -= weight
        residual[residual < zero_tol] = 0.0
    if not raw_terms:
        raise PreconditionError("empty-matrix", "input has no mass to decompose")

    bound = (n - 1) ** 2 + 1
    if len(raw_terms) > bound:
        raw_terms = _reweight_terms(mat, raw_terms)

    total = sum(w for w, _ in raw_terms)
    terms = tuple((w / total, perm) for w, perm in raw_terms if w / total > 0.0)
    deco = ConvexPermutationDecomposition(terms)
    err = float(np.max(np.abs(deco.to_matrix() - mat)))
    if err > 1e-7:
        raise PreconditionError(
            "reconstruction-failure", f"residual mass left behind: reconstruction error {err}"
        )
    return deco


def _reweight_terms(
    mat: np.ndarray, raw_terms: list[tuple[float, tuple[int, ...]]]
) -> list[tuple[float, tuple[int, ...]]]:
    """LP re-weighting over found permutations; basic solutions are sparse."""
    n = mat.shape[0]
    k = len(raw_terms)
    a_eq = np.zeros((n * n + 1, k))
    for t, (_, perm) in enumerate(raw_terms):
        for j in range(n):
            a_eq[perm[j] * n + j, t] = 1.0
    a_eq[-1, :] = 1.0
    b_eq = np.concatenate([mat.reshape(-1), [1.0]])
    res = linprog(np.zeros(k), A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if not res.success:
        return raw_terms
    return [(float(w), perm) for w, (_, perm) in zip(res.x, raw_terms) if w > 1e-12]


def schur_horn_unitary(lam, mu) -> ComplexMatrix:
    """A unitary ``V`` with ``diag(V diag(lam) V†) = mu``.

    Requires ``lam`` to majorize ``mu``. The construction works on the
    descending-sorted copies: repeatedly pick the first index ``i`` still
    above its target and the first later index ``j`` below its target, and
    rotate in the ``(i, j)`` plane so one of them lands exactly on target.
    Indices already on target are never revisited, so off-diagonal elements
    generated along the way never re-enter the diagonal bookkeeping and at
    most ``n - 1`` rotations are needed. Sorting permutations on both sides
    then restore the original orderings, so for equal multisets the result
    degenerates to the permutation aligning ``lam`` with ``mu``.
    """
    lam = probability_vector(lam)
    mu = probability_vector(mu)
    n = lam.size
    if mu.size != n:
        raise PreconditionError("dimension-mismatch", f"dims {lam.size} and {mu.size} differ")
    bad = first_failing_prefix(lam, mu)
    if bad is not None:
        plex = _sorted_prefix_sums(lam)[bad - 1]
        qlex = _sorted_prefix_sums(mu)[bad - 1]
        raise PreconditionError(
            "majorization-failure",
            f"prefix {bad}: sum {plex} of sorted lam is below {qlex} of sorted mu",
        )

    idx_l = np.argsort(-lam, kind="stable")
    idx_m = np.argsort(-mu, kind="stable")
    x = lam[idx_l].astype(np.float64).copy()
    target = mu[idx_m]
    core = np.eye(n, dtype=np.complex128)
    settle = 1e-13
    for _ in range(n):
        diff = x - target
        over = np.nonzero(diff > settle)[0]
        if over.size == 0:
            break
        i = int(over[0])
        under = np.nonzero(diff < -settle)[0]
        under = under[under > i]
        if under.size == 0:
            if float(np.max(np.abs(diff))) < 1e-9:
                break
            raise RuntimeError(
                "rotation chain lost its pairing invariant; inputs may be inconsistent"
            )
        j = int(under[0])
        delta = min(x[i] - target[i], target[j] - x[j])
        c2 = (x[i] - delta - x[j]) / (x[i] - x[j])
        c = math.sqrt(c2)
        s = math.sqrt(max(0.0, 1.0 - c2))
        rows = core[[i, j], :].copy()
        core[i, :] = c * rows[0] - s * rows[1]
        core[j, :] = s * rows[0] + c * rows[1]
        x[i] -= delta
        x[j] += delta

    sort_l = np.zeros((n, n), dtype=np.complex128)
    sort_l[np.arange(n), idx_l] = 1.0
    sort_m = np.zeros((n, n), dtype=np.complex128)
    sort_m[np.arange(n), idx_m] = 1.0
    v = sort_m.conj().T @ core @ sort_l
    achieved = hadamard_square(v) @ lam
    err = float(np.max(np.abs(achieved - mu)))
    if err > 1e-9:
        raise RuntimeError(f"rotation chain missed its target by {err}")
    return v


def random_bistochastic(n: int, rng: np.random.Generator, terms: int | None = None) -> RealMatrix:
    """Seeded random bistochastic matrix as a convex mix of random permutations."""
    k = terms if terms is not None else max(2, n)
    weights = rng.dirichlet(np.ones(k))
    out = np.zeros((n, n))
    for w in weights:
        out += w * permutation_matrix(rng.permutation(n)).real
    return out
