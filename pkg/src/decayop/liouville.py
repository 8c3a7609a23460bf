"""Vectorized Lindblad generators and their propagators.

The generator acts on row-major vectorized density matrices::

    A = -i (H ⊗ 1 - 1 ⊗ Hᵀ)
        - Σ γ/2 [ (L†L) ⊗ 1 + 1 ⊗ (L†L)ᵀ - 2 L ⊗ (L†)ᵀ ]

so that ``vec(ρ(t)) = expm(A t) vec(ρ(0))``.  Times are in ns and rates in
1/ns throughout (ħ = 1).
"""
from dataclasses import dataclass, field

import numpy as np

from .numkernel import expm, is_hermitian, kron, unvec, vec

STATE_TOL = 1e-10


@dataclass(frozen=True)
class JumpChannel:
    """A single Lindblad jump operator with its rate (1/ns)."""

    operator: np.ndarray
    rate: float

    def __post_init__(self):
        op = np.asarray(self.operator, dtype=complex)
        if op.ndim != 2 or op.shape[0] != op.shape[1]:
            raise ValueError(f"jump operator must be square, got shape {op.shape}")
        if not self.rate >= 0:
            raise ValueError(f"jump rate must be non-negative, got {self.rate}")
        object.__setattr__(self, "operator", op)
        object.__setattr__(self, "rate", float(self.rate))


@dataclass(frozen=True)
class OpenSystem:
    """Hermitian Hamiltonian plus a list of decay/dephasing channels."""

    hamiltonian: np.ndarray
    channels: tuple = field(default_factory=tuple)

    def __post_init__(self):
        h = np.asarray(self.hamiltonian, dtype=complex)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise ValueError(f"Hamiltonian must be square, got shape {h.shape}")
        if not is_hermitian(h, 1e-12):
            raise ValueError("Hamiltonian must be Hermitian")
        channels = tuple(self.channels)
        for ch in channels:
            if ch.operator.shape != h.shape:
                raise ValueError(
                    f"jump operator shape {ch.operator.shape} does not match "
                    f"Hamiltonian shape {h.shape}"
                )
        object.__setattr__(self, "hamiltonian", h)
        object.__setattr__(self, "channels", channels)

    @property
    def dim(self):
        return self.hamiltonian.shape[0]


@dataclass(frozen=True)
class Liouvillian:
    matrix: np.ndarray
    dim: int

    def propagator(self, t):
        """Superoperator ``expm(A t)`` acting on row-major vectorized states."""
        if t < 0:
            raise ValueError(f"evolution time must be non-negative, got {t}")
        return expm(self.matrix * t)

    def __add__(self, other):
        if self.dim != other.dim:
            raise ValueError("cannot add Liouvillians of different dimension")
        return Liouvillian(self.matrix + other.matrix, self.dim)


def build_liouvillian(system):
    """Assemble the vectorized generator of ``system``.

    Uses the general transposed form, which reduces to the textbook expression
    only when ``Lᵀ == L†``.
    """
    h = system.hamiltonian
    n = system.dim
    eye = np.eye(n)
    a = -1j * (kron(h, eye) - kron(eye, h.T))
    for ch in system.channels:
        if ch.rate == 0:
            continue
        op = ch.operator
        ldl = op.conj().T @ op
        a = a - 0.5 * ch.rate * (
            kron(ldl, eye) + kron(eye, ldl.T) - 2 * kron(op, op.conj())
        )
    return Liouvillian(a, n)


def check_density_matrix(rho, dim=None, tol=STATE_TOL):
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if dim is not None and rho.shape[0] != dim:
        raise ValueError(f"density matrix has dimension {rho.shape[0]}, expected {dim}")
    if not is_hermitian(rho, tol):
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise ValueError(f"density matrix trace is {np.trace(rho).real}, expected 1")
    if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0] < -tol:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def propagate(liouvillian, rho0, t):
    """Schrödinger-picture evolution ``ρ(t) = unvec(expm(A t) vec ρ0)``."""
    rho0 = check_density_matrix(rho0, liouvillian.dim)
    if t < 0:
        raise ValueError(f"evolution time must be non-negative, got {t}")
    if t == 0:
        return rho0.copy()
    return unvec(liouvillian.propagator(t) @ vec(rho0), liouvillian.dim)


def heisenberg_evolve(liouvillian, observable, t, propagator=None):
    """Heisenberg-picture evolution of an observable under the dual map.

    Returns ``K(t)`` with ``Tr[K(t) ρ0] == Tr[K ρ(t)]`` for every ``ρ0``.
    Because ``Tr[K ρ] = vec(Kᵀ) · vec(ρ)``, the dual acts on ``vec(Kᵀ)`` via
    the transposed propagator.  A precomputed ``propagator`` (e.g. a Trotter
    product) may be supplied in place of ``expm(A t)``.
    """
    k = np.asarray(observable, dtype=complex)
    n = liouvillian.dim
    if k.shape != (n, n):
        raise ValueError(f"observable has shape {k.shape}, expected {(n, n)}")
    if t < 0:
        raise ValueError(f"evolution time must be non-negative, got {t}")
    if propagator is None:
        if t == 0:
            return k.copy()
        propagator = liouvillian.propagator(t)
    return unvec(propagator.T @ vec(k.T), n).T
