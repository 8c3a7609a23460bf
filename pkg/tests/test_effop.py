import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from decayop import kaon
from decayop.effop import (
    MeasurementSetting,
    effective_operator,
    expectation,
    projector,
    tensor_witness,
)
from decayop.liouville import JumpChannel, OpenSystem, build_liouvillian, propagate

DEFAULT = kaon.KaonParams()


def in_eigenbasis(params, o):
    ks, kl = kaon.eigenstates(params)
    b = np.column_stack([ks, kl])
    return b.conj().T @ o @ b


def test_effop_at_zero_is_reflection():
    s = MeasurementSetting(kaon.KAON, 0.0)
    o = effective_operator(DEFAULT, s).matrix
    assert np.allclose(o, 2 * np.outer(kaon.K0, kaon.K0) - np.eye(2))


def test_effop_matches_closed_form():
    for a in np.linspace(0, np.pi, 4):
        for t in (0.0, 0.1, 2.0):
            d = kaon.QuasiSpin(a, 1.0)
            o = effective_operator(DEFAULT, MeasurementSetting(d, t)).matrix
            assert np.allclose(in_eigenbasis(DEFAULT, o), kaon.closed_form_effop(DEFAULT, d, t))


def test_closed_form_values_at_short_time():
    # (K_S, K_S) entry decays with Gamma_S alone, off-diagonal with the mean rate
    d = kaon.QuasiSpin(np.pi / 3, 0.5)
    t = 0.2
    o = kaon.closed_form_effop(DEFAULT, d, t)
    assert o[0, 0] == pytest.approx(2 * 0.75 * np.exp(-t / 0.0895) - 1)
    mean = 0.5 * (1 / 0.0895 + 1 / 51.1)
    assert abs(o[0, 1]) == pytest.approx(np.sin(np.pi / 3) * np.exp(-mean * t))


@pytest.mark.parametrize("eps", [0.0, 0.001])
def test_modes_agree_on_surviving_block(eps):
    p = kaon.KaonParams(epsilon=eps)
    for t in (0.0, 0.05, 0.3, 5.0):
        a = effective_operator(p, MeasurementSetting(kaon.ANTIKAON, t, "analytic")).matrix
        lind = effective_operator(p, MeasurementSetting(kaon.ANTIKAON, t, "lindblad")).matrix
        block = kaon.surviving_block(lind + np.eye(3)) - np.eye(2)
        # the tilted drive departs from the two-state model at O(sqrt(eps))
        tol = 1e-10 if eps == 0 else np.sqrt(eps)
        assert np.max(np.abs(block - a)) < tol


def test_lindblad_effop_on_decayed_level_is_minus_one():
    o = effective_operator(DEFAULT, MeasurementSetting(kaon.KAON, 1.0, "lindblad")).matrix
    assert o[kaon.LEVEL_DECAYED, kaon.LEVEL_DECAYED] == pytest.approx(-1)


def test_expectation_equals_probability_form():
    # Tr[O rho0] = 2 P(yes) - 1 with P from Schroedinger-picture propagation
    psi = kaon.embed_state(kaon.K0)
    rho0 = np.outer(psi, psi.conj())
    lv = build_liouvillian(kaon.kaon_open_system(DEFAULT))
    t = 0.3
    proj = projector(kaon.embed_state(kaon.K0BAR))
    prob = np.trace(proj @ propagate(lv, rho0, t)).real
    s = MeasurementSetting(kaon.ANTIKAON, t, "lindblad")
    assert expectation(effective_operator(DEFAULT, s), rho0) == pytest.approx(2 * prob - 1)


def test_open_system_requires_projector():
    sysm = OpenSystem(np.zeros((2, 2)), (JumpChannel(np.array([[0, 1], [0, 0]]), 1.0),))
    with pytest.raises(ValueError):
        effective_operator(sysm, MeasurementSetting(kaon.KAON, 1.0, "lindblad"))
    with pytest.raises(ValueError):
        effective_operator(sysm, MeasurementSetting(projector=np.diag([0, 1.0]), t=1.0))
    o = effective_operator(
        sysm, MeasurementSetting(projector=np.diag([0, 1.0]), t=1.0, mode="lindblad")
    ).matrix
    assert np.allclose(o, np.diag([-1, 2 * np.exp(-1) - 1]))


def test_unsupported_system():
    with pytest.raises(TypeError):
        effective_operator(object(), MeasurementSetting(kaon.KAON))


def test_setting_validation_and_hashing():
    with pytest.raises(ValueError):
        MeasurementSetting(kaon.KAON, -1.0)
    with pytest.raises(ValueError):
        MeasurementSetting(kaon.KAON, mode="exact")
    with pytest.raises(ValueError):
        MeasurementSetting()
    with pytest.raises(ValueError):
        MeasurementSetting(projector=np.array([[1, 1], [0, 0]]))
    a = MeasurementSetting(projector=np.diag([1.0, 0]))
    assert a == MeasurementSetting(projector=np.diag([1.0, 0]))
    assert hash(a) == hash(MeasurementSetting(projector=np.diag([1.0, 0])))
    assert a.at(2.0).t == 2.0


def test_tensor_witness_and_expectation_errors():
    o = np.diag([1.0, -1.0])
    assert np.allclose(tensor_witness([o, o]), np.diag([1, -1, -1, 1]))
    with pytest.raises(ValueError):
        tensor_witness([])
    with pytest.raises(ValueError):
        expectation(np.eye(2), np.eye(3) / 3)
    with pytest.raises(ValueError):
        expectation(np.array([[0, 1], [0, 0]]), np.array([[0, 0], [1j, 0]]))


@given(
    st.floats(0, np.pi),
    st.floats(0, 2 * np.pi, exclude_max=True),
    st.floats(0, 20.0),
    st.floats(0, 0.3),
    st.sampled_from(["analytic", "lindblad"]),
)
def test_effop_spectrum_in_unit_interval(alpha, phi, t, eps, mode):
    if mode == "analytic":
        eps = min(eps, 0.03)
    s = MeasurementSetting(kaon.QuasiSpin(alpha, phi), t, mode)
    o = effective_operator(kaon.KaonParams(epsilon=eps), s).matrix
    assert np.allclose(o, o.conj().T, atol=1e-12)
    w = np.linalg.eigvalsh(o)
    assert w[0] >= -1 - 1e-9 and w[-1] <= 1 + 1e-9
