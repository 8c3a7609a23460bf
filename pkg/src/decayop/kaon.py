"""Neutral-kaon two-state model.

State vectors live in the strangeness basis ``(K0, K0bar)`` unless stated
otherwise.  Units: time in ns, rates and frequencies in 1/ns, ħ = 1.  The mass
origin is fixed by ``m_S = 0`` so that ``m_L = omega``.

For the three-level Lindblad picture the basis is ``|0> = decayed``,
``|1> = K2`` (long-lived, ``K_L`` at zero CP violation) and ``|2> = K1``
(short-lived, ``K_S`` at zero CP violation).
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .liouville import JumpChannel, OpenSystem

TAU_S_NS = 8.95e-11 * 1e9
TAU_L_NS = 5.11e-8 * 1e9
GAMMA_S = 1.0 / TAU_S_NS
GAMMA_L = 1.0 / TAU_L_NS
# Standard kaon mass splitting in units of the short-lived width.  Not part of
# the effective-operator model itself; override via KaonParams.omega.
DELTA_M_OVER_GAMMA_S = 0.474
OMEGA = DELTA_M_OVER_GAMMA_S * GAMMA_S

K0 = np.array([1, 0], dtype=complex)
K0BAR = np.array([0, 1], dtype=complex)
K1 = (K0 - K0BAR) / np.sqrt(2)
K2 = (K0 + K0BAR) / np.sqrt(2)

LEVEL_DECAYED = 0
LEVEL_K2 = 1
LEVEL_K1 = 2

# Isometry from the strangeness basis into the three-level space.
EMBEDDING = np.array(
    [
        [0, 0],
        K2.conj(),
        K1.conj(),
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class KaonParams:
    gamma_s: float = GAMMA_S
    gamma_l: float = GAMMA_L
    omega: float = OMEGA
    epsilon: float = 0.0

    def __post_init__(self):
        if not 0 <= self.gamma_l < self.gamma_s:
            raise ValueError(
                f"need 0 <= gamma_l < gamma_s, got gamma_l={self.gamma_l}, "
                f"gamma_s={self.gamma_s}"
            )
        if not 0 <= self.epsilon < 1:
            raise ValueError(f"epsilon must lie in [0, 1), got {self.epsilon}")
        if not np.isfinite(self.omega):
            raise ValueError("omega must be finite")

    @property
    def gamma(self):
        """Mean width ``(gamma_s + gamma_l) / 2``."""
        return 0.5 * (self.gamma_s + self.gamma_l)

    @property
    def p(self):
        return 1.0 + self.epsilon

    @property
    def q(self):
        return 1.0 - self.epsilon


@dataclass(frozen=True)
class QuasiSpin:
    """Measurement direction ``cos(alpha/2)|K_S> + sin(alpha/2) e^{i phi} |K_L>``."""

    alpha: float
    phi: float = 0.0

    def __post_init__(self):
        if not 0 <= self.alpha <= np.pi:
            raise ValueError(f"alpha must lie in [0, pi], got {self.alpha}")
        if not 0 <= self.phi < 2 * np.pi:
            raise ValueError(f"phi must lie in [0, 2pi), got {self.phi}")


# Under the conventions above (alpha, phi) = (pi/2, pi) gives -|K0bar>.
ANTIKAON = QuasiSpin(np.pi / 2, np.pi)
KAON = QuasiSpin(np.pi / 2, 0.0)
SHORT = QuasiSpin(0.0, 0.0)
LONG = QuasiSpin(np.pi, 0.0)


def eigenstates(params):
    """Normalized ``(K_S, K_L)`` in the strangeness basis.

    ``K_S ∝ K1 + eps K2`` and ``K_L ∝ K2 + eps K1``; the overlap
    ``<K_S|K_L> = 2 eps / (1 + eps^2)`` is real and non-negative.
    """
    eps = params.epsilon
    norm = np.sqrt(1 + eps**2)
    return (K1 + eps * K2) / norm, (K2 + eps * K1) / norm


def ww_propagator(params, t):
    """Non-unitary Wigner-Weisskopf evolution matrix in the strangeness basis.

    Column ``j`` is the evolved basis state ``j``.
    """
    if t < 0:
        raise ValueError(f"evolution time must be non-negative, got {t}")
    lam_s = -0.5j * params.gamma_s
    lam_l = params.omega - 0.5j * params.gamma_l
    es = np.exp(-1j * lam_s * t)
    el = np.exp(-1j * lam_l * t)
    g_plus = 0.5 * (es + el)
    g_minus = 0.5 * (-es + el)
    ratio = params.p / params.q
    return np.array(
        [[g_plus, ratio * g_minus], [g_minus / ratio, g_plus]], dtype=complex
    )


def effective_hamiltonian(params):
    """``H = sum_k lambda_k |k><k~|`` in the strangeness basis."""
    v = np.column_stack(eigenstates(params))
    lam = np.diag([-0.5j * params.gamma_s, params.omega - 0.5j * params.gamma_l])
    return v @ lam @ np.linalg.inv(v)


def dissipation_margin(params):
    """Smallest eigenvalue of the decay matrix ``i (H - H^dagger)``.

    A negative value means the two-state evolution can increase the norm
    for some state, i.e. ``epsilon`` exceeds the unitarity bound and effective
    operators may have eigenvalues above 1.  For the default rates this
    happens beyond ``epsilon ~ 0.03``; the Lindblad model has no such limit.
    """
    h = effective_hamiltonian(params)
    return float(np.linalg.eigvalsh(1j * (h - h.conj().T))[0])


def is_dissipative(params):
    return dissipation_margin(params) >= 0


def singlet_vector():
    return (np.kron(K0, K0BAR) - np.kron(K0BAR, K0)) / np.sqrt(2)


def singlet_state(embedded=False):
    """Two-kaon singlet density matrix.

    With ``embedded=True`` the state is mapped into the 3 ⊗ 3 Lindblad space.
    """
    psi = singlet_vector()
    rho = np.outer(psi, psi.conj())
    if embedded:
        iso = np.kron(EMBEDDING, EMBEDDING)
        rho = iso @ rho @ iso.conj().T
    return rho


def quasi_spin_state(params, direction):
    ks, kl = eigenstates(params)
    k = np.cos(direction.alpha / 2) * ks + np.sin(direction.alpha / 2) * np.exp(
        1j * direction.phi
    ) * kl
    # K_S and K_L overlap for eps > 0
    return k / np.linalg.norm(k)


def closed_form_effop(params, direction, t):
    """Effective operator ``2 K(t) - 1`` in the ``(K_S, K_L)`` basis.

    Only valid without CP violation.  Matrix entries are ``<i|O|j>`` with
    ``i, j`` in ``(K_S, K_L)``.
    """
    if params.epsilon != 0:
        raise ValueError("closed form requires epsilon == 0")
    if t < 0:
        raise ValueError(f"evolution time must be non-negative, got {t}")
    a, phi = direction.alpha, direction.phi
    off = np.sin(a) * np.exp(-1j * (phi + params.omega * t)) * np.exp(-params.gamma * t)
    return np.array(
        [
            [2 * np.cos(a / 2) ** 2 * np.exp(-params.gamma_s * t) - 1, off],
            [np.conj(off), 2 * np.sin(a / 2) ** 2 * np.exp(-params.gamma_l * t) - 1],
        ],
        dtype=complex,
    )


def embed_state(psi):
    return EMBEDDING @ np.asarray(psi, dtype=complex)


def surviving_block(op):
    """Project a three-level operator back onto the strangeness basis."""
    return EMBEDDING.conj().T @ op @ EMBEDDING


@lru_cache(maxsize=64)
def kaon_open_system(params):
    """Three-level Lindblad model of a single kaon.

    At ``epsilon = 0`` the Hamiltonian is ``diag(0, omega, 0)``.  For
    ``epsilon > 0`` the qubit block carries a tilted rotation
    ``(delta sz - Omega sx) / 2 + omega / 2`` (``sz = |1><1| - |2><2|``) with
    ``delta / omega = (1 - eps) / (1 + eps)``, which only emulates CP
    violation for small ``eps``.  The axis tilts towards ``-x`` so that, as in
    the Wigner-Weisskopf model, ``K0`` decays faster than ``K0bar``.
    """
    from .ionsim import tilt_from_epsilon

    if params.epsilon == 0:
        delta, rabi = params.omega, 0.0
    else:
        delta, rabi = tilt_from_epsilon(params.epsilon, params.omega)
    h = np.zeros((3, 3), dtype=complex)
    h[LEVEL_K2, LEVEL_K2] = 0.5 * (params.omega + delta)
    h[LEVEL_K1, LEVEL_K1] = 0.5 * (params.omega - delta)
    h[LEVEL_K2, LEVEL_K1] = h[LEVEL_K1, LEVEL_K2] = -0.5 * rabi

    def jump(src, dst):
        m = np.zeros((3, 3), dtype=complex)
        m[dst, src] = 1
        return m

    channels = (
        JumpChannel(jump(LEVEL_K1, LEVEL_DECAYED), params.gamma_s),
        JumpChannel(jump(LEVEL_K2, LEVEL_DECAYED), params.gamma_l),
        JumpChannel(jump(LEVEL_K1, LEVEL_K2), 0.0),
    )
    return OpenSystem(h, channels)
