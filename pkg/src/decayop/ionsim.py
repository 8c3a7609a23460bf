"""Trapped-ion analogues of the kaon system.

Level order for ion models is ``|0>, |1>, |decayed>``.  The qubit is
identified with the CP basis as ``|1> = K1`` (decaying) and ``|0> = K2``, so
that ``K0 = |+>`` and ``K0bar = |->``.  CP violation is emulated by tilting the
rotation axis of the qubit drive.
"""
import warnings
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Optional

import numpy as np

from . import kaon
from .effop import EffectiveOperator, MeasurementSetting, projector
from .liouville import (
    JumpChannel,
    OpenSystem,
    build_liouvillian,
    heisenberg_evolve,
)
from .numkernel import expm, unvec, vec

KINDS = ("Yb171", "Yb172")
LEVEL_0, LEVEL_1, LEVEL_DECAYED = 0, 1, 2

SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)

# strangeness basis -> ion levels
EMBEDDING = np.array([kaon.K2.conj(), kaon.K1.conj(), [0, 0]], dtype=complex)


class ValidityWarning(UserWarning):
    """The ion model is outside the regime where it mimics kaons."""


def tilt_from_epsilon(epsilon, omega):
    """Detuning and Rabi frequency emulating CP violation ``epsilon``.

    Returns ``(delta, rabi)`` with ``sqrt(delta**2 + rabi**2) == omega`` and
    ``delta / omega == (1 - epsilon) / (1 + epsilon)``.
    """
    if not 0 <= epsilon < 1:
        raise ValueError(f"epsilon must lie in [0, 1), got {epsilon}")
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega}")
    cos_tilt = (1 - epsilon) / (1 + epsilon)
    return omega * cos_tilt, omega * np.sqrt(1 - cos_tilt**2)


def epsilon_from_tilt(delta, rabi):
    norm = np.hypot(delta, rabi)
    return (norm - delta) / (norm + delta)


@dataclass(frozen=True)
class TrotterConfig:
    dt: float
    order: int = 2

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"Trotter step must be positive, got {self.dt}")
        if self.order not in (1, 2):
            raise ValueError(f"Trotter order must be 1 or 2, got {self.order}")

    @classmethod
    def default_for(cls, omega, gamma_s):
        return cls(dt=1.0 / (50 * max(omega, gamma_s)), order=2)


def trotter_propagator(osc, dec, t, cfg):
    """Split-operator approximation of ``expm((A_osc + A_dec) t)``.

    Order 1 applies oscillation then decay in each step; order 2 is the
    symmetric (Strang) splitting.  A final shorter step covers any remainder
    of ``t / dt``.
    """
    if osc.dim != dec.dim:
        raise ValueError("oscillation and decay generators differ in dimension")
    if t < 0:
        raise ValueError(f"evolution time must be non-negative, got {t}")

    def step(h):
        if cfg.order == 1:
            return expm(dec.matrix * h) @ expm(osc.matrix * h)
        half = expm(osc.matrix * (h / 2))
        return half @ expm(dec.matrix * h) @ half

    n = int(np.floor(t / cfg.dt + 1e-9))
    rem = t - n * cfg.dt
    out = np.linalg.matrix_power(step(cfg.dt), n) if n else np.eye(osc.dim**2, dtype=complex)
    if rem > 1e-12 * max(1.0, t):
        out = step(rem) @ out
    return out


def trotter_propagate(osc, dec, rho0, t, cfg):
    rho0 = np.asarray(rho0, dtype=complex)
    return unvec(trotter_propagator(osc, dec, t, cfg) @ vec(rho0), osc.dim)


@dataclass(frozen=True, eq=False)
class IonModel:
    kind: str
    system: OpenSystem
    oscillation: OpenSystem
    decay: OpenSystem
    delta: float
    rabi: float
    gamma_s: float
    omega: float
    epsilon: float
    trotter: Optional[TrotterConfig] = field(default=None)

    @property
    def kaon_params(self):
        """Kaon parameters used to build quasi-spin states."""
        return kaon.KaonParams(self.gamma_s, 0.0, self.omega, self.epsilon)

    @cached_property
    def liouvillian(self):
        return build_liouvillian(self.system)

    @cached_property
    def oscillation_liouvillian(self):
        return build_liouvillian(self.oscillation)

    @cached_property
    def decay_liouvillian(self):
        return build_liouvillian(self.decay)

    def with_trotter(self, cfg):
        return replace(self, trotter=cfg)

    def state(self, direction):
        """Quasi-spin state mapped onto the ion levels."""
        return EMBEDDING @ kaon.quasi_spin_state(self.kaon_params, direction)

    def singlet_state(self):
        iso = np.kron(EMBEDDING, EMBEDDING)
        return iso @ kaon.singlet_state() @ iso.conj().T

    def effective_operator(self, setting):
        if setting.mode != "lindblad":
            raise ValueError("ion models only support lindblad mode")
        if setting.direction is not None:
            proj = projector(self.state(setting.direction))
        else:
            proj = setting.projector
            if proj.shape != (3, 3):
                raise ValueError("ion projectors must be 3x3")
        prop = None
        if self.trotter is not None and setting.t > 0:
            prop = trotter_propagator(
                self.oscillation_liouvillian, self.decay_liouvillian, setting.t, self.trotter
            )
        k_t = heisenberg_evolve(self.liouvillian, proj, setting.t, propagator=prop)
        return EffectiveOperator(2 * k_t - np.eye(3), setting)


def yb_model(kind, gamma_s, epsilon=0.0, omega=kaon.OMEGA, trotter=None):
    """Three-level model of a 171Yb+ or 172Yb+ kaon simulator.

    ``Yb172`` decays ``|1> -> |decayed>`` at ``gamma_s``.  ``Yb171`` decays at
    ``2/3 gamma_s`` and dephases ``|1>`` at ``1/3 gamma_s`` because the
    driven level can fall back into ``|1>``.
    """
    if kind not in KINDS:
        raise ValueError(f"ion kind must be one of {KINDS}, got {kind!r}")
    if not gamma_s > 0:
        raise ValueError(f"gamma_s must be positive, got {gamma_s}")
    delta, rabi = tilt_from_epsilon(epsilon, omega)
    if epsilon > 0 and epsilon >= omega / gamma_s:
        warnings.warn(
            f"epsilon={epsilon} is not small compared with omega/gamma_s="
            f"{omega / gamma_s:.3g}; the ion model no longer mimics kaons",
            ValidityWarning,
            stacklevel=2,
        )
    h = np.zeros((3, 3), dtype=complex)
    # axis tilted towards -x: K0 = |+> decays faster than K0bar = |->
    h[:2, :2] = 0.5 * (delta * SIGMA_Z - rabi * SIGMA_X)

    decay_1 = np.zeros((3, 3), dtype=complex)
    decay_1[LEVEL_DECAYED, LEVEL_1] = 1
    if kind == "Yb172":
        channels = (JumpChannel(decay_1, gamma_s),)
    else:
        dephase_1 = np.zeros((3, 3), dtype=complex)
        dephase_1[LEVEL_1, LEVEL_1] = 1
        channels = (
            JumpChannel(decay_1, 2 * gamma_s / 3),
            JumpChannel(dephase_1, gamma_s / 3),
        )
    return IonModel(
        kind=kind,
        system=OpenSystem(h, channels),
        oscillation=OpenSystem(h),
        decay=OpenSystem(np.zeros((3, 3)), channels),
        delta=delta,
        rabi=rabi,
        gamma_s=gamma_s,
        omega=omega,
        epsilon=epsilon,
        trotter=trotter,
    )


@dataclass(frozen=True)
class LifetimeComparison:
    epsilon: float
    lifetime_pure_decay: float
    lifetime_with_dephasing: float


def compare_lifetimes(
    epsilons,
    gamma_s=kaon.GAMMA_S,
    omega=kaon.OMEGA,
    schedule="paper-scg",
    grid=None,
    margin=None,
    trotter=None,
):
    """SCG violation lifetimes with pure decay vs. decay plus dephasing."""
    from . import bell

    epsilons = list(epsilons)
    if not epsilons:
        raise ValueError("need at least one epsilon")
    kwargs = {"mode": "lindblad", "grid": grid}
    if margin is not None:
        kwargs["margin"] = margin
    rows = []
    for eps in epsilons:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ValidityWarning)
            pure = yb_model("Yb172", gamma_s, eps, omega, trotter)
            deph = yb_model("Yb171", gamma_s, eps, omega, trotter)
        rows.append(
            LifetimeComparison(
                eps,
                bell.violation_lifetime(schedule, pure, **kwargs),
                bell.violation_lifetime(schedule, deph, **kwargs),
            )
        )
    return rows
