import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from decayop import bell, kaon
from decayop.effop import MeasurementSetting

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)
SY = np.array([[0, -1j], [1j, 0]])
SINGLET = kaon.singlet_state()


def one(x):
    return np.array([[x]], dtype=complex)


def test_chsh_classical_bound_by_enumeration():
    values = [
        bell.chsh_operator(*(one(v) for v in vs))[0, 0].real
        for vs in itertools.product((-1, 1), repeat=4)
    ]
    assert max(values) == 2 and min(values) == -2


def test_scg_classical_bound_by_enumeration():
    values = []
    for vs in itertools.product((-1, 1), repeat=6):
        a = [one(v) for v in vs[:3]]
        b = [one(v) for v in vs[3:]]
        values.append(bell.scg_operator(a, b)[0, 0].real)
    assert min(values) == -4


def test_chsh_reaches_tsirelson_with_ideal_observables():
    a1, a2 = SZ, SX
    b1 = (SZ - SX) / np.sqrt(2)
    b2 = -(SZ + SX) / np.sqrt(2)
    w = bell.chsh_operator(a1, a2, b1, b2)
    lmin, lmax = bell.witness_extremes(w)
    assert lmax == pytest.approx(bell.TSIRELSON)
    assert bell.witness_trace(w, np.eye(4) / 4) == pytest.approx(0)


def qubit_observable(theta, phi):
    return np.cos(theta) * SZ + np.sin(theta) * (np.cos(phi) * SX + np.sin(phi) * SY)


def test_scg_qubit_optimum():
    from scipy.optimize import minimize

    def f(x):
        ops = [qubit_observable(*x[2 * k : 2 * k + 2]) for k in range(6)]
        return bell.witness_extremes(bell.scg_operator(ops[:3], ops[3:]))[0]

    rng = np.random.default_rng(3)
    best = min(
        minimize(f, rng.uniform(0, np.pi, 12), method="Nelder-Mead",
                 options={"maxiter": 8000, "xatol": 1e-10, "fatol": 1e-12}).fun
        for _ in range(6)
    )
    assert best == pytest.approx(-5.0, abs=1e-4)


def test_schedules():
    assert set(bell.SCHEDULES) >= {"paper-chsh", "paper-scg"}
    s = bell.get_schedule("paper-scg")
    alice, bob = s.settings(2.0)
    assert [x.t for x in alice] == [0, 2, 4] and [x.t for x in bob] == [0, 4, 2]
    assert all(x.direction == kaon.ANTIKAON for x in alice + bob)
    with pytest.raises(ValueError):
        bell.get_schedule("nope")
    with pytest.raises(ValueError):
        bell.Schedule.from_scales("bad", "CHSH", (0, 1, 2), (0, 1))


def test_spec_validation():
    s = MeasurementSetting(kaon.ANTIKAON)
    with pytest.raises(ValueError):
        bell.WitnessSpec("CHSH", (s,), (s, s), kaon.KaonParams())
    with pytest.raises(ValueError):
        bell.WitnessSpec("GHZ", (s,), (s,), kaon.KaonParams())
    spec = bell.WitnessSpec.from_schedule("paper-chsh", kaon.KaonParams(), 0.1)
    with pytest.raises(ValueError):
        bell.scg_witness(spec)


def test_witness_at_tau_zero_equals_direct_construction():
    p = kaon.KaonParams()
    r = bell.evaluate("paper-chsh", p, 0.0, rho0=SINGLET)
    o = 2 * np.outer(kaon.K0BAR, kaon.K0BAR) - np.eye(2)
    w = bell.chsh_operator(o, o, o, o)
    assert (r.lambda_min, r.lambda_max) == pytest.approx(bell.witness_extremes(w))
    # identical settings on both sides of the singlet are anticorrelated
    assert r.trace_value == pytest.approx(-2)
    assert not r.violated


def test_violation_flag_follows_bound():
    assert bell.is_violated("CHSH", -3, 2.01)
    assert not bell.is_violated("CHSH", -3, 2.0)
    assert bell.is_violated("SCG", -4.01, 0)
    assert not bell.is_violated("SCG", -4.01, 0, margin=0.1)


def test_scan_order_and_epsilon():
    rows = bell.scan("paper-chsh", [0.0, 0.001], [0.0, 0.05, 0.1])
    assert [(r.epsilon, r.tau) for r in rows] == [
        (e, t) for e in (0.0, 0.001) for t in (0.0, 0.05, 0.1)
    ]
    with pytest.raises(ValueError):
        bell.scan("paper-chsh", [], [0.0])


def test_chsh_violated_at_default_parameters():
    best = bell.extremal_violation("paper-chsh", kaon.KaonParams(), np.linspace(0, 0.3, 31))
    assert best.violated and best.lambda_max > 2.03
    assert best.lambda_max <= bell.TSIRELSON


def test_modes_give_same_spectrum_at_zero_epsilon():
    p = kaon.KaonParams()
    for name in ("paper-chsh", "paper-scg"):
        a = bell.evaluate(name, p, 0.1, "analytic")
        b = bell.evaluate(name, p, 0.1, "lindblad")
        # the lindblad witness adds the decayed sector, which cannot beat the bounds
        if name == "paper-chsh":
            assert b.lambda_max == pytest.approx(a.lambda_max, abs=1e-9)
        else:
            assert b.lambda_min == pytest.approx(a.lambda_min, abs=1e-9)


def test_lifetime_edges():
    p = kaon.KaonParams()
    assert bell.violation_lifetime("paper-chsh", p, grid=[1.0, 2.0]) == 0.0
    life = bell.violation_lifetime("paper-chsh", p, grid=np.linspace(0, 0.5, 51))
    assert 0.1 < life < 0.2
    assert bell.evaluate("paper-chsh", p, life - 1e-3).lambda_max > 2 + bell.LIFETIME_MARGIN
    with pytest.raises(ValueError):
        bell.violation_lifetime("paper-chsh", p, grid=[0.2, 0.1])


def test_scg_violated_at_epsilon_point_two():
    best = bell.extremal_violation(
        "paper-scg", kaon.KaonParams(epsilon=0.2), np.linspace(0, 2, 41)
    )
    assert best.lambda_min < -4


@given(
    st.lists(st.floats(0, np.pi), min_size=4, max_size=4),
    st.lists(st.floats(0, 2 * np.pi, exclude_max=True), min_size=4, max_size=4),
    st.lists(st.floats(0, 1.0), min_size=4, max_size=4),
)
def test_tsirelson_random_settings(alphas, phis, times):
    p = kaon.KaonParams()
    s = [MeasurementSetting(kaon.QuasiSpin(a, f), t) for a, f, t in zip(alphas, phis, times)]
    w = bell.chsh_witness(bell.WitnessSpec("CHSH", s[:2], s[2:], p))
    lmin, lmax = bell.witness_extremes(w)
    assert lmax <= bell.TSIRELSON + 1e-8 and lmin >= -bell.TSIRELSON - 1e-8
