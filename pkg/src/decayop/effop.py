"""Effective measurement operators for decaying systems.

An effective operator folds the (non-unitary) evolution up to the measurement
time into the observable, so that for an initial state ``rho0``::

    E = Tr[O_eff rho0] = 2 P(yes) - 1,    O_eff = 2 K(t) - 1,

where ``K(t)`` is the Heisenberg-evolved projector onto the measured
direction.  Decay and non-detection both count as "no".
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from . import kaon
from .kaon import KaonParams, QuasiSpin
from .liouville import OpenSystem, build_liouvillian, heisenberg_evolve
from .numkernel import is_hermitian, kron

MODES = ("analytic", "lindblad")


@dataclass(frozen=True)
class MeasurementSetting:
    """Measurement direction and time.

    Either ``direction`` (a kaon quasi-spin) or ``projector`` (a rank-one
    projector in the full system dimension) must be given.
    """

    direction: Optional[QuasiSpin] = None
    t: float = 0.0
    mode: str = "analytic"
    projector: Optional[np.ndarray] = None

    def __post_init__(self):
        if not self.t >= 0:
            raise ValueError(f"measurement time must be non-negative, got {self.t}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if (self.direction is None) == (self.projector is None):
            raise ValueError("give exactly one of direction or projector")
        if self.projector is not None:
            k = np.asarray(self.projector, dtype=complex)
            if not is_hermitian(k) or np.max(np.abs(k @ k - k)) > 1e-10:
                raise ValueError("projector must satisfy K = K^dagger = K^2")
            object.__setattr__(self, "projector", k)

    def at(self, t):
        """Same direction, different time."""
        return MeasurementSetting(self.direction, t, self.mode, self.projector)

    # ndarray fields break the generated __eq__/__hash__
    def __hash__(self):
        proj = None if self.projector is None else self.projector.tobytes()
        return hash((self.direction, self.t, self.mode, proj))

    def __eq__(self, other):
        if not isinstance(other, MeasurementSetting):
            return NotImplemented
        same_proj = (self.projector is None and other.projector is None) or (
            self.projector is not None
            and other.projector is not None
            and np.array_equal(self.projector, other.projector)
        )
        return (
            self.direction == other.direction
            and self.t == other.t
            and self.mode == other.mode
            and same_proj
        )


@dataclass(frozen=True, eq=False)
class EffectiveOperator:
    matrix: np.ndarray
    setting: Optional[MeasurementSetting] = None

    @property
    def dim(self):
        return self.matrix.shape[0]


def projector(psi):
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


@lru_cache(maxsize=64)
def _kaon_liouvillian(params):
    return build_liouvillian(kaon.kaon_open_system(params))


def _from_projector(liouvillian, proj, t):
    k_t = heisenberg_evolve(liouvillian, proj, t)
    return 2 * k_t - np.eye(liouvillian.dim)


def effective_operator(system, setting):
    """Effective operator ``2 K(t) - 1`` for one measurement setting.

    ``system`` may be

    * :class:`~decayop.kaon.KaonParams` -- ``analytic`` mode gives a 2x2
      operator in the strangeness basis built from the Wigner-Weisskopf
      propagator, ``lindblad`` mode a 3x3 operator on the three-level model;
    * an :class:`~decayop.liouville.OpenSystem` -- Lindblad mode only, the
      setting must carry a full-dimension ``projector``;
    * any object with an ``effective_operator(setting)`` method (e.g. an
      ion model).
    """
    if isinstance(system, KaonParams):
        return EffectiveOperator(_kaon_matrix(system, setting), setting)
    if isinstance(system, OpenSystem):
        if setting.mode != "lindblad":
            raise ValueError("an OpenSystem only supports lindblad mode")
        if setting.projector is None:
            raise ValueError("an OpenSystem needs a full-dimension projector")
        if setting.projector.shape != (system.dim, system.dim):
            raise ValueError(
                f"projector shape {setting.projector.shape} does not match "
                f"system dimension {system.dim}"
            )
        lv = build_liouvillian(system)
        return EffectiveOperator(_from_projector(lv, setting.projector, setting.t), setting)
    if hasattr(system, "effective_operator"):
        return system.effective_operator(setting)
    raise TypeError(f"unsupported system type {type(system).__name__}")


def _kaon_matrix(params, setting):
    if setting.direction is not None:
        psi = kaon.quasi_spin_state(params, setting.direction)
        proj = projector(psi)
    else:
        proj = setting.projector
        if proj.shape != (2, 2):
            raise ValueError("kaon projectors must be given in the 2x2 strangeness basis")
    if setting.mode == "analytic":
        g = kaon.ww_propagator(params, setting.t)
        return 2 * (g.conj().T @ proj @ g) - np.eye(2)
    emb = kaon.EMBEDDING
    return _from_projector(_kaon_liouvillian(params), emb @ proj @ emb.conj().T, setting.t)


def _matrix(op):
    return op.matrix if isinstance(op, EffectiveOperator) else np.asarray(op, dtype=complex)


def tensor_witness(ops):
    """Kronecker product of effective operators, in list order."""
    ops = list(ops)
    if not ops:
        raise ValueError("need at least one operator")
    out = _matrix(ops[0])
    for op in ops[1:]:
        out = kron(out, _matrix(op))
    return out


def expectation(witness, rho0, tol=1e-10):
    """``Re Tr[W rho0]``; a non-negligible imaginary part is an error."""
    w = _matrix(witness)
    rho0 = np.asarray(rho0, dtype=complex)
    if w.shape != rho0.shape:
        raise ValueError(f"shape mismatch: operator {w.shape}, state {rho0.shape}")
    val = np.trace(w @ rho0)
    if abs(val.imag) > tol * max(1.0, abs(val.real)):
        raise ValueError(f"expectation value has imaginary part {val.imag:g}")
    return float(val.real)
