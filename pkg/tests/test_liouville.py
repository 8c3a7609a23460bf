import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from decayop.liouville import (
    JumpChannel,
    OpenSystem,
    build_liouvillian,
    check_density_matrix,
    heisenberg_evolve,
    propagate,
)

from conftest import random_complex, random_density


def random_system(rng, n=3, channels=2):
    g = random_complex(rng, n)
    h = 0.5 * (g + g.conj().T)
    chans = tuple(
        JumpChannel(random_complex(rng, n) / 2, float(rng.uniform(0, 2)))
        for _ in range(channels)
    )
    return OpenSystem(h, chans)


def amplitude_damping(gamma):
    lower = np.array([[0, 1], [0, 0]], dtype=complex)
    return OpenSystem(np.zeros((2, 2)), (JumpChannel(lower, gamma),))


def test_amplitude_damping_closed_form():
    gamma, t = 0.7, 1.3
    rho0 = np.array([[0.25, 0.3], [0.3, 0.75]], dtype=complex)
    rho = propagate(build_liouvillian(amplitude_damping(gamma)), rho0, t)
    decay = np.exp(-gamma * t)
    expected = np.array(
        [
            [1 - 0.75 * decay, 0.3 * np.exp(-gamma * t / 2)],
            [0.3 * np.exp(-gamma * t / 2), 0.75 * decay],
        ]
    )
    assert np.allclose(rho, expected, atol=1e-13)


def test_unitary_evolution_matches_schroedinger(rng):
    g = random_complex(rng, 3)
    h = 0.5 * (g + g.conj().T)
    w, v = np.linalg.eigh(h)
    u = v @ np.diag(np.exp(-1j * w * 0.8)) @ v.conj().T
    rho0 = random_density(rng, 3)
    rho = propagate(build_liouvillian(OpenSystem(h)), rho0, 0.8)
    assert np.allclose(rho, u @ rho0 @ u.conj().T, atol=1e-12)


def test_dephasing_kills_coherence():
    z = np.diag([1.0, 0.0]).astype(complex)
    lv = build_liouvillian(OpenSystem(np.zeros((2, 2)), (JumpChannel(z, 2.0),)))
    rho = propagate(lv, np.full((2, 2), 0.5, dtype=complex), 1.0)
    assert rho[0, 1] == pytest.approx(0.5 * np.exp(-1.0), abs=1e-14)
    assert rho[0, 0] == pytest.approx(0.5, abs=1e-14)


def test_zero_rate_channel_is_skipped():
    a = build_liouvillian(amplitude_damping(0.0)).matrix
    assert np.array_equal(a, np.zeros((4, 4)))


def test_liouvillians_add():
    a = build_liouvillian(amplitude_damping(1.0))
    b = build_liouvillian(amplitude_damping(0.5))
    assert np.allclose((a + b).matrix, build_liouvillian(amplitude_damping(1.5)).matrix)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        JumpChannel(np.eye(2), -1.0)
    with pytest.raises(ValueError):
        OpenSystem(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        OpenSystem(np.eye(2), (JumpChannel(np.eye(3), 1.0),))
    with pytest.raises(ValueError):
        check_density_matrix(np.diag([1.2, -0.2]))
    with pytest.raises(ValueError):
        propagate(build_liouvillian(amplitude_damping(1)), np.eye(2) / 2, -1)


def test_propagate_at_zero_is_copy():
    lv = build_liouvillian(amplitude_damping(1.0))
    rho0 = np.eye(2) / 2
    out = propagate(lv, rho0, 0.0)
    assert np.array_equal(out, rho0) and out is not rho0


@given(st.integers(0, 2**32 - 1), st.floats(0.0, 5.0))
def test_cptp_and_duality(seed, t):
    rng = np.random.default_rng(seed)
    sysm = random_system(rng)
    lv = build_liouvillian(sysm)
    rho0 = random_density(rng, 3)
    rho = propagate(lv, rho0, t)
    assert abs(np.trace(rho) - 1) < 1e-9
    assert np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0] > -1e-9
    g = random_complex(rng, 3)
    k = g + g.conj().T
    k_t = heisenberg_evolve(lv, k, t)
    assert abs(np.trace(k_t @ rho0) - np.trace(k @ rho)) < 1e-10 * max(1, np.abs(k).max())
    assert np.allclose(heisenberg_evolve(lv, np.eye(3), t), np.eye(3), atol=1e-10)
