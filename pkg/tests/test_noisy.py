import numpy as np
import pytest

from thermohorn import (
    NoisyRealization,
    PreconditionError,
    decoherence_gadget,
    haar_unitary,
    horn_transition_unitary,
    marginal_transition_unitary,
    max_output_rank_bound,
    noisy_not_unistochastic_witness,
    spectrum_sorted,
    support_pattern_obstructs_unistochasticity,
)
from thermohorn.linalg import partial_trace_b, tensor


def _random_density(dim, rng):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def test_realization_validates_unitary():
    with pytest.raises(PreconditionError):
        NoisyRealization(2, 2, np.ones((4, 4), dtype=complex))


def test_decoherence_gadget_kills_all_coherences_exactly():
    rng = np.random.default_rng(2)
    for n in (2, 3, 5):
        gadget = decoherence_gadget(n)
        assert gadget.bath_dim == n
        rho = _random_density(n, rng)
        out = gadget.apply(rho)
        assert np.abs(out - np.diag(np.diag(out))).max() == 0.0
        assert np.abs(np.diag(out) - np.diag(rho)).max() < 1e-12


def test_horn_transition_hits_irrational_target_exactly():
    target = np.array([2**-0.5, 1 - 2**-0.5])
    realization = horn_transition_unitary([1.0, 0.0], target)
    assert realization.bath_dim == 2
    out = realization.apply_classical(np.array([1.0, 0.0]))
    assert np.abs(out - target).max() < 1e-12


def test_horn_transition_random_pairs():
    rng = np.random.default_rng(4)
    for _ in range(25):
        n = int(rng.integers(2, 6))
        p = rng.dirichlet(np.ones(n))
        weights = rng.dirichlet(np.ones(3))
        perms = [rng.permutation(n) for _ in range(3)]
        q = sum(w * p[np.argsort(perm)] for w, perm in zip(weights, perms))
        realization = horn_transition_unitary(p, q)
        assert realization.bath_dim == n
        assert np.abs(realization.apply_classical(p) - q).max() < 1e-9


def test_horn_transition_rejects_non_majorized():
    with pytest.raises(PreconditionError):
        horn_transition_unitary([0.5, 0.5], [0.8, 0.2])


def _feasible_marginal_instance(dim_a, dim_b, rng):
    rho = _random_density(dim_a * dim_b, rng)
    lam, _ = spectrum_sorted(rho)
    blocked = lam.reshape(dim_a, dim_b).sum(axis=1)
    mix = np.zeros(dim_a)
    weights = rng.dirichlet(np.ones(4))
    for w in weights:
        perm = rng.permutation(dim_a)
        shuffled = np.zeros(dim_a)
        shuffled[perm] = blocked
        mix += w * shuffled
    basis = haar_unitary(dim_a, rng)
    sigma = basis @ np.diag(mix).astype(complex) @ basis.conj().T
    return rho, sigma


def test_marginal_transition_achieves_target():
    rng = np.random.default_rng(8)
    for dim_a, dim_b in ((2, 2), (2, 4), (3, 3), (3, 5)):
        rho, sigma = _feasible_marginal_instance(dim_a, dim_b, rng)
        u = marginal_transition_unitary(rho, sigma, dim_a, dim_b)
        out = partial_trace_b(u @ rho @ u.conj().T, dim_a, dim_b)
        assert np.abs(out - sigma).max() < 1e-8


def test_marginal_transition_rejects_dim_order():
    rng = np.random.default_rng(9)
    rho = _random_density(6, rng)
    sigma = _random_density(3, rng)
    with pytest.raises(PreconditionError):
        marginal_transition_unitary(rho, sigma, 3, 2)


def test_marginal_transition_rejects_infeasible_spectrum():
    rho = np.eye(4, dtype=complex) / 4
    sigma = np.diag([1.0, 0.0]).astype(complex)
    with pytest.raises(PreconditionError):
        marginal_transition_unitary(rho, sigma, 2, 2)


def test_marginal_feasibility_is_necessary_on_random_channels():
    from thermohorn.majorization import majorizes

    rng = np.random.default_rng(10)
    for _ in range(200):
        dim_a, dim_b = 2, int(rng.integers(2, 5))
        rho = _random_density(dim_a * dim_b, rng)
        u = haar_unitary(dim_a * dim_b, rng)
        sigma = partial_trace_b(u @ rho @ u.conj().T, dim_a, dim_b)
        lam, _ = spectrum_sorted(rho)
        blocked = lam.reshape(dim_a, dim_b).sum(axis=1)
        spec_sigma, _ = spectrum_sorted(sigma / np.trace(sigma).real)
        assert majorizes(blocked, spec_sigma, slack=1e-8)


def test_support_pattern_certificate():
    d3, _ = noisy_not_unistochastic_witness(3)
    assert support_pattern_obstructs_unistochasticity(d3)
    assert not support_pattern_obstructs_unistochasticity(np.full((3, 3), 1 / 3))
    rotation = np.array([[0.75, 0.25], [0.25, 0.75]])
    assert not support_pattern_obstructs_unistochasticity(rotation)


def test_noisy_witness_realizes_its_matrix():
    for n in (3, 4, 5):
        d, realization = noisy_not_unistochastic_witness(n)
        assert realization.system_dim == n and realization.bath_dim == n
        for j in range(n):
            basis = np.zeros(n)
            basis[j] = 1.0
            out = realization.apply_classical(basis)
            assert np.abs(out - d[:, j]).max() < 1e-12


def test_noisy_witness_channel_formula():
    n = 4
    _, realization = noisy_not_unistochastic_witness(n)
    rng = np.random.default_rng(12)
    rho = _random_density(n, rng)
    shift = np.roll(np.eye(n), 1, axis=0).astype(complex)
    expected = ((n - 1) * rho + shift @ rho @ shift.conj().T) / n
    assert np.abs(realization.apply(rho) - expected).max() < 1e-12


def test_noisy_witness_rejects_small_dims():
    with pytest.raises(PreconditionError):
        noisy_not_unistochastic_witness(2)


def test_output_rank_never_exceeds_bath_squared():
    assert max_output_rank_bound(4, 2, trials=50, seed=1) <= 4
    assert max_output_rank_bound(5, 2, trials=50, seed=2) <= 4
