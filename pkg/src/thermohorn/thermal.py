"""Finite-bath thermal operations for general (diagonal) systems.

Energy preservation forces every allowed unitary to be block-diagonal over
the exact total-energy blocks of system ⊗ bath. Within the classical
(permutation) subset this makes the reachable set finite; allowing arbitrary
block unitaries fills in exactly the convex hull:

* *enumerate / reach*: walk the per-block permutations (exhaustively, one
  representative per distinct-output class, or by seeded sampling), apply
  them to the joint input ``p ⊗ gamma_B``, and take the hull of the
  marginals;
* *synthesize*: for a convex mixture of classical outcomes, build per-block
  Schur-Horn rotations carrying the joint diagonal to the mixed one — a
  single exactly energy-preserving unitary, plus (for degenerate system
  Hamiltonians) a small decoherence bath that removes the leftover
  coherences inside degenerate eigenspaces;
* *decompose*: conversely, read any energy-preserving unitary as per-block
  bistochastic matrices, Birkhoff-decompose each block, and keep the product
  form (expanding the product is exponential and almost never needed);
* *membership / realize*: LP classification against the hull, and a search
  over growing bath families that turns a thermomajorization witness into an
  explicit finite-bath realization.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np
from sympy.utilities.iterables import multiset_permutations

from .config import DEDUP_TOL, ENUMERATION_CAP, SAMPLE_COUNT
from .energy import (
    EnergyLabel,
    Hamiltonian,
    ThermalSetup,
    build_setup,
    gibbs_vector,
    trivial_hamiltonian,
)
from .errors import PreconditionError
from .geometry import classify_membership, hull_vertex_indices
from .linalg import ComplexMatrix, ProbabilityVector, probability_vector, unitarity_defect
from .majorization import birkhoff_decompose, schur_horn_unitary, thermomajorizes
from .noisy import NoisyRealization, haar_unitary

__all__ = [
    "ConvexCombination",
    "ProductConvexCombination",
    "ClassicalEnumeration",
    "ReachableSet",
    "MembershipResult",
    "enumerate_classical",
    "classical_reachable_set",
    "synthesize_unitary",
    "decompose_channel_to_classical",
    "thermal_decoherence_gadget",
    "hull_membership",
    "realize_interior",
    "random_block_unitary",
    "energy_preservation_defect",
]


@dataclass(frozen=True)
class ConvexCombination:
    """Weights summing to one over arbitrary items (permutations or points)."""

    weights: tuple[float, ...]
    items: tuple

    def __post_init__(self):
        if len(self.weights) != len(self.items) or not self.items:
            raise PreconditionError(
                "bad-combination", f"{len(self.weights)} weights for {len(self.items)} items"
            )
        if min(self.weights) < -1e-12:
            raise PreconditionError("negative-weight", f"weight {min(self.weights)} below 0")
        total = float(sum(self.weights))
        if abs(total - 1.0) > 1e-9:
            raise PreconditionError("weights-not-normalized", f"weights sum to {total}")
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "items", tuple(self.items))


@dataclass(frozen=True)
class ProductConvexCombination:
    """Blockwise-factored convex combination of energy-preserving permutations.

    ``block_terms[i]`` lists ``(weight, local_images)`` for block ``i``, with
    local images indexing positions inside ``blocks[i]``. The represented
    mixture is the product over blocks — term counts multiply, so keep the
    factored form unless the expansion is genuinely small.
    """

    blocks: tuple[tuple[int, ...], ...]
    block_terms: tuple[tuple[tuple[float, tuple[int, ...]], ...], ...]

    def __post_init__(self):
        if len(self.blocks) != len(self.block_terms):
            raise PreconditionError(
                "bad-combination",
                f"{len(self.block_terms)} term groups for {len(self.blocks)} blocks",
            )
        for block, terms in zip(self.blocks, self.block_terms):
            if not terms:
                raise PreconditionError("bad-combination", f"block {block} has no terms")
            total = sum(w for w, _ in terms)
            if abs(total - 1.0) > 1e-9:
                raise PreconditionError(
                    "weights-not-normalized", f"block {block} weights sum to {total}"
                )
            for w, perm in terms:
                if w < -1e-12 or sorted(perm) != list(range(len(block))):
                    raise PreconditionError(
                        "bad-combination", f"invalid term ({w}, {perm}) on block of size {len(block)}"
                    )

    @property
    def dim_joint(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def term_count(self) -> int:
        return math.prod(len(t) for t in self.block_terms)

    def mixed_joint_output(self, v: np.ndarray) -> np.ndarray:
        """Apply the mixture to a joint diagonal; linear, so blockwise."""
        out = np.zeros_like(np.asarray(v, dtype=np.float64))
        for block, terms in zip(self.blocks, self.block_terms):
            idx = np.asarray(block)
            local = np.asarray(v, dtype=np.float64)[idx]
            acc = np.zeros(len(block))
            for w, perm in terms:
                shuffled = np.zeros(len(block))
                shuffled[np.asarray(perm)] = local
                acc += w * shuffled
            out[idx] = acc
        return out

    def expand(self, cap: int = 10**5) -> ConvexCombination:
        """Materialize the product mixture as joint permutations."""
        count = self.term_count
        if count > cap:
            raise PreconditionError(
                "expansion-cap", f"product has {count} terms, above the cap {cap}"
            )
        n = self.dim_joint
        weights = []
        perms = []
        for combo in itertools.product(*self.block_terms):
            w = math.prod(t[0] for t in combo)
            joint = np.arange(n)
            for block, (_, local) in zip(self.blocks, combo):
                idx = np.asarray(block)
                joint[idx] = idx[np.asarray(local)]
            weights.append(w)
            perms.append(tuple(int(j) for j in joint))
        return ConvexCombination(tuple(weights), tuple(perms))


@dataclass(frozen=True)
class ClassicalEnumeration:
    """Energy-preserving permutations, one per row, plus how they were produced."""

    permutations: np.ndarray  # (count, dim_joint) images
    mode: str  # "exhaustive" | "reduced" | "sampled"
    total_count: int  # exact number of energy-preserving permutations

    @property
    def sampled(self) -> bool:
        return self.mode == "sampled"


def _block_system_labels(block: tuple[int, ...], dim_b: int) -> list[int]:
    return [idx // dim_b for idx in block]


def _block_permutation_targets(block: tuple[int, ...]) -> np.ndarray:
    """All |block|! permutations as rows of joint-index images."""
    return np.array(list(itertools.permutations(block)), dtype=np.int64)


def _block_class_targets(block: tuple[int, ...], dim_b: int) -> np.ndarray:
    """One representative permutation per distinct position -> system-label map.

    Two in-block permutations move the same input weight to the same system
    level for *every* input exactly when they agree on which system label
    each position is sent to; enumerating label arrangements (multiset
    permutations) therefore covers every distinct output with no sampling
    loss. Representative: positions claiming label ``l`` are matched, in
    ascending order, to the block's label-``l`` slots in ascending order.
    """
    labels = _block_system_labels(block, dim_b)
    slots: dict[int, list[int]] = {}
    for idx in block:
        slots.setdefault(idx // dim_b, []).append(idx)
    rows = []
    for arrangement in multiset_permutations(sorted(labels)):
        cursor = dict.fromkeys(slots, 0)
        images = []
        for lab in arrangement:
            images.append(slots[lab][cursor[lab]])
            cursor[lab] += 1
        rows.append(images)
    return np.array(rows, dtype=np.int64)


def _multinomial(counts: list[int]) -> int:
    total = math.factorial(sum(counts))
    for c in counts:
        total //= math.factorial(c)
    return total


def _assemble_joint(setup: ThermalSetup, per_block: list[np.ndarray]) -> np.ndarray:
    sizes = [t.shape[0] for t in per_block]
    count = math.prod(sizes)
    digits = np.empty((count, len(sizes)), dtype=np.int64)
    rem = np.arange(count, dtype=np.int64)
    for pos in range(len(sizes) - 1, -1, -1):
        digits[:, pos] = rem % sizes[pos]
        rem //= sizes[pos]
    perms = np.empty((count, setup.dim_joint), dtype=np.int64)
    for bi, (block, targets) in enumerate(zip(setup.blocks, per_block)):
        perms[:, list(block)] = targets[digits[:, bi]]
    return perms


def enumerate_classical(
    setup: ThermalSetup,
    cap: int = ENUMERATION_CAP,
    *,
    mode: str = "auto",
    seed: int = 0,
    sample_count: int = SAMPLE_COUNT,
) -> ClassicalEnumeration:
    """Enumerate energy-preserving permutations of the joint basis.

    Modes: ``exhaustive`` walks all ``prod |block|!`` permutations (refused
    above ``cap``); ``reduced`` walks one representative per distinct-output
    class (exact for reachable-set purposes, much smaller, refused above
    ``cap``); ``sampled`` draws ``sample_count`` seeded uniform block
    permutations (identity always included) and flags itself; ``auto`` picks
    exhaustive when it fits, else reduced when it fits, else raises — it
    never silently samples.
    """
    total = math.prod(math.factorial(len(b)) for b in setup.blocks)
    if mode not in ("auto", "exhaustive", "reduced", "sampled"):
        raise PreconditionError("bad-mode", f"unknown enumeration mode {mode!r}")
    if mode == "auto":
        if total <= cap:
            mode = "exhaustive"
        else:
            reduced_total = math.prod(
                _multinomial(
                    [
                        _block_system_labels(b, setup.dim_b).count(lab)
                        for lab in sorted(set(_block_system_labels(b, setup.dim_b)))
                    ]
                )
                for b in setup.blocks
            )
            if reduced_total <= cap:
                mode = "reduced"
            else:
                raise PreconditionError(
                    "enumeration-cap",
                    f"{total} permutations ({reduced_total} output classes) exceed the cap "
                    f"{cap}; pass mode='sampled' to sample instead",
                )
    if mode == "exhaustive":
        if total > cap:
            raise PreconditionError(
                "enumeration-cap",
                f"{total} permutations exceed the cap {cap}; "
                "use mode='reduced' or mode='sampled'",
            )
        per_block = [_block_permutation_targets(b) for b in setup.blocks]
        return ClassicalEnumeration(_assemble_joint(setup, per_block), "exhaustive", total)
    if mode == "reduced":
        per_block = [_block_class_targets(b, setup.dim_b) for b in setup.blocks]
        count = math.prod(t.shape[0] for t in per_block)
        if count > cap:
            raise PreconditionError(
                "enumeration-cap",
                f"{count} output classes exceed the cap {cap}; use mode='sampled'",
            )
        return ClassicalEnumeration(_assemble_joint(setup, per_block), "reduced", total)
    # sampled
    rng = np.random.default_rng(seed)
    picks = np.empty((sample_count + 1, setup.dim_joint), dtype=np.int64)
    picks[0] = np.arange(setup.dim_joint)
    for row in range(1, sample_count + 1):
        for block in setup.blocks:
            idx = np.asarray(block)
            picks[row, idx] = idx[rng.permutation(len(block))]
    return ClassicalEnumeration(picks, "sampled", total)


@dataclass(frozen=True)
class ReachableSet:
    """Deduplicated classical outputs, their hull vertices, and provenance.

    ``representatives[k]`` is one energy-preserving permutation producing
    ``points[k]`` exactly. Points are sorted lexicographically (on the
    1e-10 dedup grid), so equal inputs give byte-equal outputs.
    """

    points: np.ndarray  # (count, dim_a)
    hull_vertex_indices: tuple[int, ...]
    setup: ThermalSetup
    initial: ProbabilityVector
    representatives: np.ndarray  # (count, dim_joint)
    mode: str

    @property
    def origin(self) -> tuple[ThermalSetup, ProbabilityVector]:
        return self.setup, self.initial

    @property
    def sampled(self) -> bool:
        return self.mode == "sampled"

    def hull_vertices(self) -> np.ndarray:
        return self.points[list(self.hull_vertex_indices)]


def _marginal_outputs(
    perms: np.ndarray, v: np.ndarray, dim_a: int, dim_b: int, chunk: int = 1 << 15
) -> np.ndarray:
    count = perms.shape[0]
    out = np.empty((count, dim_a))
    for start in range(0, count, chunk):
        part = perms[start : start + chunk]
        shuffled = np.zeros((part.shape[0], dim_a * dim_b))
        shuffled[np.arange(part.shape[0])[:, None], part] = v[None, :]
        out[start : start + chunk] = shuffled.reshape(-1, dim_a, dim_b).sum(axis=2)
    return out


def classical_reachable_set(
    p,
    setup: ThermalSetup,
    *,
    cap: int = ENUMERATION_CAP,
    mode: str = "auto",
    seed: int = 0,
    sample_count: int = SAMPLE_COUNT,
) -> ReachableSet:
    """All classical outputs from ``p`` with this setup, plus their hull."""
    p = probability_vector(p)
    enum = enumerate_classical(setup, cap, mode=mode, seed=seed, sample_count=sample_count)
    v = setup.joint_input(p)
    raw = _marginal_outputs(enum.permutations, v, setup.dim_a, setup.dim_b)
    rounded = np.round(raw, 10)
    _, keep = np.unique(rounded, axis=0, return_index=True)
    order = keep[np.lexsort(np.round(raw[keep], 10).T[::-1])]
    points = raw[order]
    representatives = enum.permutations[order]
    verts = hull_vertex_indices(points, tol=DEDUP_TOL)
    return ReachableSet(
        points=points,
        hull_vertex_indices=verts,
        setup=setup,
        initial=p,
        representatives=representatives,
        mode=enum.mode,
    )


def energy_preservation_defect(u: ComplexMatrix, setup: ThermalSetup) -> float:
    """Largest unitary entry connecting two different energy blocks."""
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (setup.dim_joint, setup.dim_joint):
        raise PreconditionError(
            "dimension-mismatch", f"unitary shape {u.shape}, joint dim {setup.dim_joint}"
        )
    block_of = setup.block_of()
    same = block_of[:, None] == block_of[None, :]
    off = np.abs(u)[~same]
    return float(off.max()) if off.size else 0.0


def _is_block_respecting(perm: np.ndarray, block_of: np.ndarray) -> bool:
    return bool(np.all(block_of[np.asarray(perm)] == block_of))


def synthesize_unitary(
    p,
    target: ConvexCombination | ProductConvexCombination,
    setup: ThermalSetup,
) -> tuple[ComplexMatrix, NoisyRealization | None]:
    """One energy-preserving unitary realizing a classical mixture exactly.

    The mixed joint diagonal is, per block, a convex mixture of permutations
    of the input diagonal — majorized by it — so a per-block Schur-Horn
    rotation reaches it exactly, and the direct sum commutes with the total
    Hamiltonian by construction. For degenerate system Hamiltonians the
    returned gadget (an extra bath of dimension 1 + sum(d_i - 1)) removes
    the coherences that survive inside degenerate eigenspaces; otherwise the
    gadget slot is None and the channel output is already diagonal.
    """
    p = probability_vector(p)
    v = setup.joint_input(p)
    block_of = setup.block_of()
    if isinstance(target, ProductConvexCombination):
        if target.blocks != setup.blocks:
            raise PreconditionError(
                "block-mismatch", "product combination was built for different blocks"
            )
        mixed = target.mixed_joint_output(v)
    else:
        mixed = np.zeros_like(v)
        for w, perm in zip(target.weights, target.items):
            arr = np.asarray(perm)
            if not _is_block_respecting(arr, block_of):
                raise PreconditionError(
                    "not-block-respecting",
                    f"permutation {tuple(int(x) for x in arr)} moves weight across energy blocks",
                )
            shuffled = np.zeros_like(v)
            shuffled[arr] = v
            mixed += w * shuffled

    u = np.zeros((setup.dim_joint, setup.dim_joint), dtype=np.complex128)
    for block in setup.blocks:
        idx = np.asarray(block)
        lam = v[idx]
        mu = mixed[idx]
        mass = float(lam.sum())
        if mass <= 1e-300 or len(block) == 1:
            u[np.ix_(idx, idx)] = np.eye(len(block))
            continue
        try:
            u[np.ix_(idx, idx)] = schur_horn_unitary(lam / mass, mu / mass)
        except PreconditionError as exc:
            raise RuntimeError(
                f"mixture is not majorized inside block {block}, which a convex "
                f"combination of in-block permutations cannot produce: {exc}"
            ) from exc

    gadget = None
    degenerate = _degenerate_index_set(setup.ham_a)
    if degenerate:
        gadget = thermal_decoherence_gadget(setup.ham_a, degenerate)
    return u, gadget


def _degenerate_index_set(ham_a: Hamiltonian) -> tuple[int, ...]:
    """All-but-first index of every degenerate eigenspace of the system."""
    seen: dict[EnergyLabel, int] = {}
    extra = []
    for i, label in enumerate(ham_a.levels):
        if label in seen:
            extra.append(i)
        else:
            seen[label] = i
    return tuple(extra)


def decompose_channel_to_classical(
    u: ComplexMatrix, setup: ThermalSetup, *, block_tol: float = 1e-9
) -> ProductConvexCombination:
    """Read an energy-preserving unitary as a mixture of classical permutations.

    Per block, the unitary acts by the bistochastic matrix of its squared
    moduli on the joint diagonal; Birkhoff decomposition of each block and
    product weights across blocks reproduce the channel's classical output
    exactly (to float). Off-block leakage above ``block_tol`` is rejected.
    """
    u = np.asarray(u, dtype=np.complex128)
    defect = unitarity_defect(u)
    if defect > 1e-10:
        raise PreconditionError("not-unitary", f"max-norm of U†U − I is {defect}")
    leak = energy_preservation_defect(u, setup)
    if leak > block_tol:
        raise PreconditionError(
            "not-energy-preserving", f"off-block mass {leak} exceeds {block_tol}"
        )
    groups = []
    for block in setup.blocks:
        idx = np.asarray(block)
        sub = u[np.ix_(idx, idx)]
        d = (sub.real**2 + sub.imag**2).astype(np.float64)
        deco = birkhoff_decompose(d)
        groups.append(tuple((w, perm) for w, perm in deco.terms))
    return ProductConvexCombination(setup.blocks, tuple(groups))


def thermal_decoherence_gadget(ham_a: Hamiltonian, indices=None) -> NoisyRealization:
    """Small-bath channel that decoheres chosen system levels exactly.

    ``U = sum_{i not in S} |i><i| ⊗ 1 + sum_j |s_j><s_j| ⊗ pi^j`` on a bath
    of dimension ``|S| + 1`` with a fully degenerate bath Hamiltonian (its
    Gibbs state is maximally mixed). Off-diagonals in rows/columns of ``S``
    pick up a factor ``tr(pi^(j-k))/(|S|+1) = 0``; every diagonal and every
    off-diagonal among the untouched levels survives unchanged; the unitary
    commutes with the system Hamiltonian by construction. With ``indices``
    omitted, all-but-one index of each degenerate eigenspace is decohered
    (a non-degenerate system yields the trivial one-dimensional bath).
    """
    n = ham_a.dim
    if indices is None:
        chosen = _degenerate_index_set(ham_a)
    else:
        chosen = tuple(sorted(set(int(i) for i in indices)))
    if chosen and (chosen[0] < 0 or chosen[-1] >= n):
        raise PreconditionError(
            "index-out-of-range", f"indices {chosen} not within 0..{n - 1}"
        )
    dim_c = len(chosen) + 1
    u = np.zeros((n * dim_c, n * dim_c), dtype=np.complex128)
    for i in range(n):
        proj = np.zeros((n, n), dtype=np.complex128)
        proj[i, i] = 1.0
        power = chosen.index(i) + 1 if i in chosen else 0
        cyc = np.zeros((dim_c, dim_c), dtype=np.complex128)
        for col in range(dim_c):
            cyc[(col + power) % dim_c, col] = 1.0
        u += np.kron(proj, cyc)
    return NoisyRealization(n, dim_c, u)


@dataclass(frozen=True)
class MembershipResult:
    """Classification of a target against conv(T_C), with a witness mixture."""

    classification: str  # "interior" | "boundary" | "exterior"
    distance: float
    combination: ConvexCombination | None  # over hull-vertex points
    vertex_indices: tuple[int, ...]  # indices into the reachable set's points


def hull_membership(p_prime, rset: ReachableSet, tol: float = 1e-8) -> MembershipResult:
    """LP membership of a state in the hull of the classical reachable set.

    Interior/boundary is relative to the hull's own affine span (a segment
    has an open interior). For a sampled reachable set the hull is an inner
    approximation: "interior"/"boundary" remain trustworthy, "exterior" does
    not — callers treating sampled exteriors as proofs are on their own.
    """
    p_prime = probability_vector(p_prime)
    if p_prime.size != rset.setup.dim_a:
        raise PreconditionError(
            "dimension-mismatch",
            f"target dim {p_prime.size} does not match system dim {rset.setup.dim_a}",
        )
    verts = list(rset.hull_vertex_indices)
    status, dist, weights = classify_membership(p_prime, rset.points[verts], tol)
    if weights is None:
        return MembershipResult(status, dist, None, ())
    keep = [k for k, w in enumerate(weights) if w > 1e-12]
    kept_weights = np.array([weights[k] for k in keep])
    kept_weights /= kept_weights.sum()
    comb = ConvexCombination(
        tuple(float(w) for w in kept_weights),
        tuple(rset.points[verts[k]] for k in keep),
    )
    return MembershipResult(status, dist, comb, tuple(verts[k] for k in keep))


def _tensor_power_levels(levels: tuple[EnergyLabel, ...], k: int) -> tuple[EnergyLabel, ...]:
    out = (EnergyLabel(),)
    for _ in range(k):
        out = tuple(a + b for a in out for b in levels)
    return out


def _fraction_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(math.gcd(a.numerator * b.denominator, b.numerator * a.denominator),
                    a.denominator * b.denominator)


def _bath_family(ham_a: Hamiltonian, family: str, budget: int):
    """Yield bath Hamiltonians of increasing dimension, starting trivial."""
    if family == "copies":
        k = 0
        while ham_a.dim**k <= budget:
            if k == 0:
                yield trivial_hamiltonian(ham_a.beta, ham_a.base_quantum)
            else:
                yield Hamiltonian(_tensor_power_levels(ham_a.levels, k), ham_a.beta, ham_a.base_quantum)
            k += 1
        return
    if family == "oscillator":
        if any(lv.weight_factor != 1 for lv in ham_a.levels):
            raise PreconditionError(
                "bad-bath-family",
                "oscillator family needs pure quantum-multiple system levels",
            )
        gaps = sorted(
            {
                abs(l2.quantum_mult - l1.quantum_mult)
                for l1 in ham_a.levels
                for l2 in ham_a.levels
                if l2.quantum_mult != l1.quantum_mult
            }
        )
        if not gaps:
            raise PreconditionError(
                "bad-bath-family", "oscillator family needs a non-degenerate system spectrum"
            )
        spacing = reduce(_fraction_gcd, gaps)
        for m in range(1, budget + 1):
            yield Hamiltonian(
                tuple(EnergyLabel(spacing * j) for j in range(m)), ham_a.beta, ham_a.base_quantum
            )
        return
    raise PreconditionError("bad-bath-family", f"unknown bath family {family!r}")


def realize_interior(
    p,
    ham_a: Hamiltonian,
    p_prime,
    bath_family: str = "copies",
    budget: int = 256,
    *,
    cap: int = ENUMERATION_CAP,
    tol: float = 1e-8,
    seed: int = 0,
) -> tuple[ThermalSetup, ComplexMatrix, NoisyRealization | None] | None:
    """Search growing baths for an exact realization of a feasible target.

    The target must be thermomajorized by ``p`` (checked upfront; that is
    the necessary condition). Bath families: ``copies`` walks k-fold tensor
    powers of the system Hamiltonian, ``oscillator`` walks equally spaced
    truncations with the gcd of the system gaps as spacing; both start at
    the trivial one-dimensional bath and stop at dimension ``budget``.
    Returns ``(setup, unitary, gadget)`` on success and None when the budget
    runs out — which proves nothing about larger baths.
    """
    p = probability_vector(p)
    p_prime = probability_vector(p_prime)
    gamma = gibbs_vector(ham_a)
    if thermomajorizes(p, p_prime, gamma) is None:
        raise PreconditionError(
            "not-thermomajorized",
            "target is not reachable by any Gibbs-preserving stochastic map",
        )
    for ham_b in _bath_family(ham_a, bath_family, budget):
        setup = build_setup(ham_a, ham_b)
        try:
            rset = classical_reachable_set(p, setup, cap=cap, seed=seed)
        except PreconditionError as exc:
            if exc.code != "enumeration-cap":
                raise
            rset = classical_reachable_set(p, setup, cap=cap, mode="sampled", seed=seed)
        found = hull_membership(p_prime, rset, tol)
        if found.classification == "exterior":
            continue
        perms = tuple(
            tuple(int(x) for x in rset.representatives[k]) for k in found.vertex_indices
        )
        comb = ConvexCombination(found.combination.weights, perms)
        unitary, gadget = synthesize_unitary(p, comb, setup)
        return setup, unitary, gadget
    return None


def random_block_unitary(setup: ThermalSetup, rng: np.random.Generator) -> ComplexMatrix:
    """Haar-random unitary on each energy block (energy-preserving by construction)."""
    u = np.zeros((setup.dim_joint, setup.dim_joint), dtype=np.complex128)
    for block in setup.blocks:
        idx = np.asarray(block)
        u[np.ix_(idx, idx)] = haar_unitary(len(block), rng)
    return u
