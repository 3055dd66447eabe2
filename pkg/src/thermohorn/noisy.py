"""Noisy operations: channels ``rho -> Tr_B[U (rho ⊗ I/m) U†]``.

The maximally mixed bath is the zero-Hamiltonian limit of a thermal bath,
and with it two exact constructions become available:

* a *decoherence gadget*: conditioning distinct powers of the cyclic shift
  on the system basis kills all off-diagonals of the system state exactly,
  because ``tr(pi^s) = 0`` for every power that is not a multiple of the
  bath dimension;
* a *transition unitary*: any majorized target diagonal is reached by first
  rotating the diagonal where it belongs (Schur-Horn) and then decohering.

Also here: the same-trick construction solving the one-sided quantum
marginal problem (system no larger than bath), an explicit bistochastic
matrix realizable by a noisy operation but by no single unitary's
entrywise square, and a randomized check of the output-rank ceiling ``m²``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import unitary_group

from .errors import PreconditionError
from .linalg import (
    ComplexMatrix,
    DensityMatrix,
    ProbabilityVector,
    apply_channel,
    cyclic_shift,
    density_matrix,
    diag_embedding,
    partial_trace_b,
    probability_vector,
    spectrum_sorted,
    tensor,
    unitarity_defect,
)
from .majorization import StochasticMatrix, majorizes, schur_horn_unitary, stochastic_matrix

__all__ = [
    "NoisyRealization",
    "decoherence_gadget",
    "horn_transition_unitary",
    "marginal_transition_unitary",
    "noisy_not_unistochastic_witness",
    "support_pattern_obstructs_unistochasticity",
    "max_output_rank_bound",
    "haar_unitary",
]


def haar_unitary(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    """Haar-distributed random unitary (dim 1 is a random phase)."""
    if dim == 1:
        return np.array([[np.exp(2j * np.pi * rng.random())]])
    return np.asarray(unitary_group.rvs(dim, random_state=rng), dtype=np.complex128)


@dataclass(frozen=True)
class NoisyRealization:
    """A unitary on system ⊗ bath together with the maximally mixed bath.

    When ``input_state``/``output_state`` are declared, construction verifies
    that the channel actually carries the one to the other (diagonal states,
    compared entrywise to 1e-9).
    """

    system_dim: int
    bath_dim: int
    unitary: ComplexMatrix
    input_state: ProbabilityVector | None = None
    output_state: ProbabilityVector | None = None

    def __post_init__(self):
        n, m = self.system_dim, self.bath_dim
        u = np.asarray(self.unitary, dtype=np.complex128)
        if u.shape != (n * m, n * m):
            raise PreconditionError(
                "dimension-mismatch", f"unitary shape {u.shape}, expected {(n * m, n * m)}"
            )
        defect = unitarity_defect(u)
        if defect > 1e-10:
            raise PreconditionError("not-unitary", f"max-norm of U†U − I is {defect}")
        object.__setattr__(self, "unitary", u)
        if self.input_state is not None and self.output_state is not None:
            achieved = self.apply(diag_embedding(probability_vector(self.input_state)))
            err = float(np.max(np.abs(np.real(np.diag(achieved)) - self.output_state)))
            if err > 1e-9:
                raise PreconditionError(
                    "realization-mismatch",
                    f"declared output missed by {err} (tolerance 1e-9)",
                )

    def bath_state(self) -> DensityMatrix:
        return np.eye(self.bath_dim, dtype=np.complex128) / self.bath_dim

    def apply(self, rho: DensityMatrix) -> DensityMatrix:
        """Channel action ``Tr_B[U (rho ⊗ I/m) U†]``."""
        return apply_channel(self.unitary, rho, self.bath_state())

    def apply_classical(self, p) -> ProbabilityVector:
        """Diagonal-to-diagonal action on a classical state."""
        out = self.apply(diag_embedding(probability_vector(p)))
        return probability_vector(np.real(np.diag(out)), tol=1e-9)


def decoherence_gadget(n: int) -> NoisyRealization:
    """Conditional-shift unitary whose channel zeroes all off-diagonals.

    ``W = sum_k |k><k| ⊗ pi^k`` on an ``n``-dimensional bath. Off-diagonal
    ``(i, j)`` of the system picks up a factor ``tr(pi^(i-j))/n``, which
    vanishes exactly for ``i != j``; diagonals are untouched. ``n = 1`` is
    the trivial identity channel.
    """
    if n < 1:
        raise PreconditionError("bad-dimension", f"need n >= 1, got {n}")
    w = np.zeros((n * n, n * n), dtype=np.complex128)
    for k in range(n):
        proj = np.zeros((n, n), dtype=np.complex128)
        proj[k, k] = 1.0
        w += tensor(proj, cyclic_shift(n, k))
    return NoisyRealization(n, n, w)


def horn_transition_unitary(p, p_prime) -> NoisyRealization:
    """Noisy realization of any majorized diagonal transition, bath size n.

    ``U = W (V ⊗ 1)`` where ``V`` rotates ``diag(p)`` so its diagonal reads
    ``p'`` and ``W`` is the decoherence gadget; the channel then maps the
    diagonal state ``p`` exactly to the diagonal state ``p'``. Irrational
    targets are reached to floating-point accuracy — something no finite
    uniform-bath permutation family can do, since those only produce
    rational outputs from rational inputs.
    """
    p = probability_vector(p)
    p_prime = probability_vector(p_prime)
    if p.size != p_prime.size:
        raise PreconditionError("dimension-mismatch", f"dims {p.size} and {p_prime.size} differ")
    if not majorizes(p, p_prime):
        raise PreconditionError(
            "majorization-failure", "initial state must majorize the target"
        )
    n = p.size
    v = schur_horn_unitary(p, p_prime)
    u = decoherence_gadget(n).unitary @ tensor(v, np.eye(n, dtype=np.complex128))
    return NoisyRealization(n, n, u, input_state=p, output_state=p_prime)


def marginal_transition_unitary(
    rho_ab: DensityMatrix, sigma_a: DensityMatrix, dim_a: int, dim_b: int
) -> ComplexMatrix:
    """Joint unitary whose B-marginal trace carries ``rho_ab`` onto ``sigma_a``.

    Feasible (for ``dim_a <= dim_b``) exactly when the block-summed sorted
    spectrum of ``rho_ab`` majorizes the spectrum of ``sigma_a``. The core
    construction on diagonal representatives is

        ``U_0 = sum_ij u_ij |i><j| ⊗ pi^(j-i)``,

    with ``u`` a Schur-Horn unitary for the majorization above: the shift
    powers make every cross term traceless (this is where ``dim_a <= dim_b``
    is needed), so the B-trace of ``U_0 λ̂ U_0†`` is ``diag(|u|² t)``.
    Diagonalizing unitaries of ``rho_ab`` and ``sigma_a`` are composed in to
    handle general inputs.
    """
    if dim_a > dim_b:
        raise PreconditionError(
            "dimension-order",
            f"construction requires system dim <= bath dim, got {dim_a} > {dim_b}",
        )
    rho_ab = density_matrix(rho_ab)
    sigma_a = density_matrix(sigma_a)
    if rho_ab.shape[0] != dim_a * dim_b or sigma_a.shape[0] != dim_a:
        raise PreconditionError(
            "dimension-mismatch",
            f"shapes {rho_ab.shape}, {sigma_a.shape} do not match dims ({dim_a}, {dim_b})",
        )
    lam, v_rho = spectrum_sorted(rho_ab)
    blocked = lam.reshape(dim_a, dim_b).sum(axis=1)
    spec_sigma, v_sigma = spectrum_sorted(sigma_a)
    if not majorizes(blocked, spec_sigma):
        raise PreconditionError(
            "majorization-failure",
            "block-summed sorted spectrum of the joint state must majorize the target spectrum",
        )
    u_small = schur_horn_unitary(blocked, spec_sigma)
    core = np.zeros((dim_a * dim_b, dim_a * dim_b), dtype=np.complex128)
    for i in range(dim_a):
        for j in range(dim_a):
            proj = np.zeros((dim_a, dim_a), dtype=np.complex128)
            proj[i, j] = u_small[i, j]
            core += tensor(proj, cyclic_shift(dim_b, j - i))
    full = tensor(v_sigma, np.eye(dim_b, dtype=np.complex128)) @ core @ v_rho.conj().T
    return full


def support_pattern_obstructs_unistochasticity(d, *, zero_tol: float = 1e-12) -> bool:
    """Certificate: some row pair shares exactly one support column.

    If rows ``i`` and ``k`` of a bistochastic ``D`` overlap in exactly one
    column ``j`` (both entries nonzero), any unitary with ``|U|² = D`` would
    need rows ``i`` and ``k`` orthogonal while their inner product has
    modulus ``sqrt(D_ij D_kj) > 0`` — impossible. True means certified
    non-unistochastic; False is inconclusive.
    """
    mat = np.asarray(d, dtype=np.float64)
    support = mat > zero_tol
    n = mat.shape[0]
    for i in range(n):
        for k in range(i + 1, n):
            if int(np.sum(support[i] & support[k])) == 1:
                return True
    return False


def noisy_not_unistochastic_witness(n: int) -> tuple[StochasticMatrix, NoisyRealization]:
    """A bistochastic matrix realizable noisily but not unistochastically.

    ``D = (1 - 1/n) I + (1/n) pi`` for ``n >= 3``: the unitary that applies
    the shift exactly when the bath sits in its first basis state realizes
    ``p -> D p`` with bath size ``n``, while consecutive rows of ``D`` share
    exactly one support column, triggering the orthogonality obstruction.
    For ``n = 2`` every bistochastic matrix is an entrywise unitary square,
    so no witness exists.
    """
    if n < 3:
        raise PreconditionError(
            "bad-dimension",
            f"witness needs n >= 3 (at n = 2 the bistochastic and unistochastic sets coincide), got {n}",
        )
    shift = cyclic_shift(n).real
    d = stochastic_matrix((1.0 - 1.0 / n) * np.eye(n) + (1.0 / n) * shift)
    pick_first = np.zeros((n, n), dtype=np.complex128)
    pick_first[0, 0] = 1.0
    rest = np.eye(n, dtype=np.complex128) - pick_first
    u = tensor(np.eye(n, dtype=np.complex128), rest) + tensor(cyclic_shift(n), pick_first)
    realization = NoisyRealization(n, n, u)
    if not support_pattern_obstructs_unistochasticity(d):
        raise RuntimeError("witness construction lost its support certificate")
    return d, realization


def max_output_rank_bound(n: int, m: int, trials: int, *, seed: int = 0) -> int:
    """Empirical max output rank over random pure inputs; asserts rank <= m².

    Samples Haar unitaries on system ⊗ bath and Haar pure system states,
    computes ``Tr_B[U(|psi><psi| ⊗ I/m)U†]`` and counts eigenvalues above
    1e-9. Each joint basis image has Schmidt rank at most ``m``, and the
    mixture runs over ``m`` bath states, so ``m²`` bounds the rank; any
    sample violating the bound raises.
    """
    if trials < 1:
        raise PreconditionError("bad-trials", f"need trials >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    bath = np.eye(m, dtype=np.complex128) / m
    best = 0
    for _ in range(trials):
        u = haar_unitary(n * m, rng)
        amps = rng.normal(size=n) + 1j * rng.normal(size=n)
        amps /= np.linalg.norm(amps)
        psi = np.outer(amps, amps.conj())
        out = apply_channel(u, psi, bath)
        rank = int(np.sum(np.linalg.eigvalsh(out) > 1e-9))
        if rank > m * m:
            raise RuntimeError(
                f"sampled output rank {rank} exceeds the proven ceiling {m * m}"
            )
        best = max(best, rank)
    return best


def search_noisy_realization(
    d, m: int, *, seed: int = 0, starts: int = 8, iterations: int = 400
) -> NoisyRealization | None:
    """Randomized, non-certifying search for a noisy realization of ``D``.

    Parameterizes ``U = expm(iH)`` over Hermitian ``H`` on the joint space
    and polishes random starts with Nelder-Mead on the channel error
    ``max_j ||diag(C(|j><j|)) - D e_j||_inf``. Success below 1e-6 returns
    the realization; exhausting the budget returns None, which proves
    nothing.
    """
    from scipy.linalg import expm
    from scipy.optimize import minimize

    target = stochastic_matrix(d)
    n = target.shape[0]
    dim = n * m
    rng = np.random.default_rng(seed)
    bath = np.eye(m, dtype=np.complex128) / m
    tri = np.triu_indices(dim, k=1)

    def unpack(params: np.ndarray) -> ComplexMatrix:
        herm = np.zeros((dim, dim), dtype=np.complex128)
        k = len(tri[0])
        herm[tri] = params[:k] + 1j * params[k : 2 * k]
        herm += herm.conj().T
        herm[np.diag_indices(dim)] = params[2 * k :]
        return expm(1j * herm)

    def channel_error(params: np.ndarray) -> float:
        u = unpack(params)
        worst = 0.0
        for j in range(n):
            basis = np.zeros((n, n), dtype=np.complex128)
            basis[j, j] = 1.0
            out = partial_trace_b(u @ tensor(basis, bath) @ u.conj().T, n, m)
            worst = max(worst, float(np.max(np.abs(np.real(np.diag(out)) - target[:, j]))))
        return worst

    nparams = dim * dim
    for _ in range(starts):
        x0 = rng.normal(scale=0.8, size=nparams)
        res = minimize(
            channel_error, x0, method="Nelder-Mead",
            options={"maxiter": iterations, "fatol": 1e-9, "xatol": 1e-9},
        )
        if res.fun < 1e-6:
            return NoisyRealization(n, m, unpack(res.x))
    return None
