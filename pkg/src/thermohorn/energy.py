"""Exact energy bookkeeping and thermal setups.

Energy-preserving dynamics hinge on knowing *exactly* which joint basis
states share a total energy: a single misgrouped level silently changes the
reachable set. Levels therefore carry an exact label instead of a float,

    energy = quantum_mult * base_quantum  -  ln(weight_factor) / beta,

with ``quantum_mult`` and ``weight_factor`` rational. Addition of labels is
componentwise ``(a1 + a2, w1 * w2)``, and two labels are equal-energy only
when both components match exactly. The weight component exists so Gibbs
vectors with rational entries (e.g. (5, 7, 8)/20) can be declared exactly
even though the corresponding energies are irrational.

Floats enter only when evaluating Gibbs weights or reporting energies.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import PreconditionError
from .linalg import ProbabilityVector, probability_vector

__all__ = [
    "EnergyLabel",
    "Hamiltonian",
    "ThermalSetup",
    "build_setup",
    "gibbs_vector",
    "oscillator_hamiltonian",
    "weight_hamiltonian",
    "zero_hamiltonian",
    "qubit_hamiltonian",
    "trivial_hamiltonian",
]

RationalLike = Fraction | int | str


def _fraction(value: RationalLike, what: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise PreconditionError("bad-rational", f"{what} {value!r} is not a rational") from exc


@dataclass(frozen=True, order=True)
class EnergyLabel:
    """Exact energy label: rational quantum multiple plus rational weight factor."""

    quantum_mult: Fraction = Fraction(0)
    weight_factor: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "quantum_mult", _fraction(self.quantum_mult, "quantum_mult"))
        object.__setattr__(self, "weight_factor", _fraction(self.weight_factor, "weight_factor"))
        if self.weight_factor <= 0:
            raise PreconditionError(
                "bad-weight-factor", f"weight factor must be positive, got {self.weight_factor}"
            )

    def __add__(self, other: "EnergyLabel") -> "EnergyLabel":
        return EnergyLabel(
            self.quantum_mult + other.quantum_mult,
            self.weight_factor * other.weight_factor,
        )

    def energy(self, beta: float, base_quantum: float) -> float:
        """Real energy value; the weight factor contributes ``-ln(w)/beta``."""
        return float(self.quantum_mult) * base_quantum - math.log(self.weight_factor) / beta

    def log_gibbs_weight(self, beta: float, base_quantum: float) -> float:
        """ln of the unnormalized Gibbs weight ``exp(-beta * energy)``."""
        return -beta * float(self.quantum_mult) * base_quantum + math.log(self.weight_factor)


@dataclass(frozen=True)
class Hamiltonian:
    """Diagonal Hamiltonian: one exact label per basis state, plus beta and the quantum."""

    levels: tuple[EnergyLabel, ...]
    beta: float
    base_quantum: float = 1.0

    def __post_init__(self):
        if not self.levels:
            raise PreconditionError("empty-hamiltonian", "need at least one level")
        object.__setattr__(self, "levels", tuple(self.levels))
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise PreconditionError("bad-beta", f"beta must be positive and finite, got {self.beta}")
        if not (math.isfinite(self.base_quantum) and self.base_quantum > 0):
            raise PreconditionError(
                "bad-quantum", f"base quantum must be positive and finite, got {self.base_quantum}"
            )

    @property
    def dim(self) -> int:
        return len(self.levels)

    def energies(self) -> np.ndarray:
        return np.array([lv.energy(self.beta, self.base_quantum) for lv in self.levels])

    def degeneracies(self) -> dict[EnergyLabel, int]:
        """Exact level -> multiplicity map."""
        out: dict[EnergyLabel, int] = {}
        for lv in self.levels:
            out[lv] = out.get(lv, 0) + 1
        return out

    def log_partition(self) -> float:
        logs = [lv.log_gibbs_weight(self.beta, self.base_quantum) for lv in self.levels]
        peak = max(logs)
        return peak + math.log(sum(math.exp(val - peak) for val in logs))

    def free_energy(self) -> float:
        """Helmholtz free energy ``-ln(Z) / beta`` (k_B = 1)."""
        return -self.log_partition() / self.beta


def gibbs_vector(ham: Hamiltonian) -> ProbabilityVector:
    """Thermal state ``exp(-beta E_i) / Z`` of a Hamiltonian.

    Rejects spectra whose Gibbs weights span more than ~e^700 — the smaller
    weights would underflow to exact zero and strict positivity (which the
    thermomajorization machinery relies on) would be lost.
    """
    logs = np.array([lv.log_gibbs_weight(ham.beta, ham.base_quantum) for lv in ham.levels])
    spread = float(logs.max() - logs.min())
    if spread > 700.0:
        raise PreconditionError(
            "gibbs-overflow",
            f"beta*energy range {spread} spans more than 700 in log-weight; "
            "the smallest occupation would underflow to zero",
        )
    weights = np.exp(logs - logs.max())
    return probability_vector(weights / weights.sum())


def oscillator_hamiltonian(m: int, beta: float, base_quantum: float = 1.0) -> Hamiltonian:
    """Truncated equally spaced ladder: levels ``0, 1, ..., m-1`` quanta."""
    if m < 1:
        raise PreconditionError("bad-dimension", f"need at least one level, got {m}")
    return Hamiltonian(tuple(EnergyLabel(Fraction(k)) for k in range(m)), beta, base_quantum)


def qubit_hamiltonian(beta: float, delta_quanta: RationalLike = 1, base_quantum: float = 1.0) -> Hamiltonian:
    """Two levels split by ``delta_quanta`` quanta (``ΔE = delta_quanta * base_quantum``)."""
    gap = _fraction(delta_quanta, "delta_quanta")
    if gap <= 0:
        raise PreconditionError("bad-gap", f"level splitting must be positive, got {gap}")
    return Hamiltonian((EnergyLabel(Fraction(0)), EnergyLabel(gap)), beta, base_quantum)


def weight_hamiltonian(weights: Iterable[RationalLike], beta: float, base_quantum: float = 1.0) -> Hamiltonian:
    """Levels declared by exact unnormalized Gibbs weights.

    ``weight_hamiltonian((5, 7, 8), beta)`` has Gibbs vector (5, 7, 8)/20 at
    every temperature; the energies shift with beta but the block structure
    (products of weights) does not.
    """
    levels = tuple(EnergyLabel(Fraction(0), _fraction(w, "weight")) for w in weights)
    return Hamiltonian(levels, beta, base_quantum)


def zero_hamiltonian(dim: int, beta: float = 1.0, base_quantum: float = 1.0) -> Hamiltonian:
    """Fully degenerate Hamiltonian (all levels at zero); Gibbs state is uniform."""
    if dim < 1:
        raise PreconditionError("bad-dimension", f"need dim >= 1, got {dim}")
    return Hamiltonian(tuple(EnergyLabel() for _ in range(dim)), beta, base_quantum)


def trivial_hamiltonian(beta: float, base_quantum: float = 1.0) -> Hamiltonian:
    """One-dimensional bath: no levels to exchange energy with."""
    return zero_hamiltonian(1, beta, base_quantum)


@dataclass(frozen=True)
class ThermalSetup:
    """System + bath Hamiltonians with the exact total-energy block partition.

    ``blocks`` partitions the joint basis ``{0 .. dim_a*dim_b - 1}``; two
    joint states share a block iff their label sums are exactly equal.
    Blocks are ordered by their smallest joint index, indices ascending
    within each block.
    """

    ham_a: Hamiltonian
    ham_b: Hamiltonian
    blocks: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def dim_a(self) -> int:
        return self.ham_a.dim

    @property
    def dim_b(self) -> int:
        return self.ham_b.dim

    @property
    def dim_joint(self) -> int:
        return self.dim_a * self.dim_b

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def block_of(self) -> np.ndarray:
        """Joint index -> block index lookup."""
        out = np.empty(self.dim_joint, dtype=np.intp)
        for k, block in enumerate(self.blocks):
            out[list(block)] = k
        return out

    def system_label_of_joint(self, joint_index: int) -> int:
        return joint_index // self.dim_b

    def gibbs_b(self) -> ProbabilityVector:
        return gibbs_vector(self.ham_b)

    def joint_input(self, p) -> np.ndarray:
        """Diagonal of the joint input ``p ⊗ gamma_B`` (unnormalized per block)."""
        p = probability_vector(p)
        if p.size != self.dim_a:
            raise PreconditionError(
                "dimension-mismatch", f"state dim {p.size} does not match system dim {self.dim_a}"
            )
        return np.kron(p, self.gibbs_b())


def build_setup(ham_a: Hamiltonian, ham_b: Hamiltonian) -> ThermalSetup:
    """Group the joint basis into exact equal-total-energy blocks.

    Emits a warning when two *distinct* labels evaluate to energies closer
    than 1e-12 — they stay in separate blocks (labels are authoritative);
    such a coincidence usually means the declared Hamiltonians encode one
    physical level two different ways.
    """
    if abs(ham_a.beta - ham_b.beta) > 1e-12 or abs(ham_a.base_quantum - ham_b.base_quantum) > 1e-12:
        raise PreconditionError(
            "mismatched-ensembles",
            "system and bath must share beta and the base quantum "
            f"(got beta {ham_a.beta}/{ham_b.beta}, quantum {ham_a.base_quantum}/{ham_b.base_quantum})",
        )
    groups: dict[EnergyLabel, list[int]] = {}
    dim_b = ham_b.dim
    for a, la in enumerate(ham_a.levels):
        for b, lb in enumerate(ham_b.levels):
            groups.setdefault(la + lb, []).append(a * dim_b + b)
    distinct = list(groups.keys())
    values = sorted(
        (lv.energy(ham_a.beta, ham_a.base_quantum), lv) for lv in distinct
    )
    for (e1, l1), (e2, l2) in zip(values, values[1:]):
        if abs(e2 - e1) < 1e-12 and l1 != l2:
            warnings.warn(
                f"distinct energy labels {l1} and {l2} evaluate within 1e-12 of each other; "
                "keeping them in separate blocks",
                stacklevel=2,
            )
    blocks = tuple(sorted((tuple(sorted(idx)) for idx in groups.values()), key=lambda b: b[0]))
    return ThermalSetup(ham_a, ham_b, blocks)
