"""CHSH and SCG witnesses built from effective operators.

Classical bounds: CHSH ``|Tr(S rho)| <= 2`` (violation flagged when the
largest eigenvalue exceeds 2), SCG ``Tr(SCG rho) >= -4`` (violation flagged
when the smallest eigenvalue drops below -4).

Measurement schedules fix one quasi-spin direction (``K0bar`` by default) and
vary the measurement times with a single plot parameter ``tau``.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from . import kaon
from .effop import MeasurementSetting, effective_operator, expectation
from .numkernel import eig_hermitian, hermitian_part, kron

KINDS = ("CHSH", "SCG")
ARITY = {"CHSH": 2, "SCG": 3}
CLASSICAL_BOUND = {"CHSH": 2.0, "SCG": -4.0}
TSIRELSON = 2 * np.sqrt(2)
# Minimum distance beyond the classical bound for a point to count towards a
# violation lifetime.  The SCG minimum approaches -4 only asymptotically while
# the long-lived component survives, so a zero margin has no finite lifetime.
LIFETIME_MARGIN = 1e-3


def _kind(kind):
    k = str(kind).upper()
    if k not in KINDS:
        raise ValueError(f"witness kind must be one of {KINDS}, got {kind!r}")
    return k


@dataclass(frozen=True)
class SettingTemplate:
    """One party's setting as a function of ``tau``: ``t = offset + scale * tau``."""

    direction: kaon.QuasiSpin = kaon.ANTIKAON
    scale: float = 0.0
    offset: float = 0.0

    def time(self, tau):
        return self.offset + self.scale * tau


@dataclass(frozen=True)
class Schedule:
    name: str
    kind: str
    alice: tuple
    bob: tuple

    def __post_init__(self):
        kind = _kind(self.kind)
        object.__setattr__(self, "kind", kind)
        if len(self.alice) != ARITY[kind] or len(self.bob) != ARITY[kind]:
            raise ValueError(f"{kind} needs {ARITY[kind]} settings per party")

    def settings(self, tau, mode="analytic"):
        alice = tuple(MeasurementSetting(s.direction, s.time(tau), mode) for s in self.alice)
        bob = tuple(MeasurementSetting(s.direction, s.time(tau), mode) for s in self.bob)
        return alice, bob

    @classmethod
    def from_scales(cls, name, kind, alice, bob, direction=kaon.ANTIKAON):
        return cls(
            name,
            kind,
            tuple(SettingTemplate(direction, a) for a in alice),
            tuple(SettingTemplate(direction, b) for b in bob),
        )


SCHEDULES = {
    s.name: s
    for s in (
        Schedule.from_scales("paper-chsh", "CHSH", (1, 0), (0, 1)),
        Schedule.from_scales("paper-scg", "SCG", (0, 1, 2), (0, 2, 1)),
        Schedule.from_scales("chsh-swapped", "CHSH", (0, 1), (1, 0)),
        Schedule.from_scales("scg-alt", "SCG", (0, 1, 1), (1, 1, 0)),
    )
}


def get_schedule(schedule):
    if isinstance(schedule, Schedule):
        return schedule
    try:
        return SCHEDULES[schedule]
    except KeyError:
        raise ValueError(
            f"unknown schedule {schedule!r}; known: {', '.join(SCHEDULES)}"
        ) from None


@dataclass(frozen=True)
class WitnessSpec:
    kind: str
    alice: tuple
    bob: tuple
    system: object
    mode: str = "analytic"

    def __post_init__(self):
        kind = _kind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "alice", tuple(self.alice))
        object.__setattr__(self, "bob", tuple(self.bob))
        if len(self.alice) != ARITY[kind] or len(self.bob) != ARITY[kind]:
            raise ValueError(
                f"{kind} needs {ARITY[kind]} settings per party, got "
                f"{len(self.alice)} and {len(self.bob)}"
            )

    @classmethod
    def from_schedule(cls, schedule, system, tau, mode="analytic"):
        schedule = get_schedule(schedule)
        alice, bob = schedule.settings(tau, mode)
        return cls(schedule.kind, alice, bob, system, mode)


@dataclass(frozen=True)
class ViolationResult:
    kind: str
    lambda_min: float
    lambda_max: float
    classical_bound: float
    violated: bool
    tau: float = 0.0
    epsilon: float = 0.0
    trace_value: Optional[float] = None


def chsh_operator(a1, a2, b1, b2):
    return kron(a1, b1 - b2) + kron(a2, b1 + b2)


def scg_operator(a, b):
    eye = np.eye(np.asarray(b[0]).shape[0])
    return (
        kron(a[0], eye + b[0] + b[1] + b[2])
        + kron(a[1], eye + b[0] + b[1] - b[2])
        + kron(a[2], b[0] - b[1])
        + kron(np.eye(np.asarray(a[0]).shape[0]), b[0] + b[1])
    )


def _operators(spec):
    memo = {}

    def op(setting):
        if setting not in memo:
            memo[setting] = effective_operator(spec.system, setting).matrix
        return memo[setting]

    return [op(s) for s in spec.alice], [op(s) for s in spec.bob]


def chsh_witness(spec):
    if spec.kind != "CHSH":
        raise ValueError(f"expected a CHSH spec, got {spec.kind}")
    (a1, a2), (b1, b2) = _operators(spec)
    return hermitian_part(chsh_operator(a1, a2, b1, b2))


def scg_witness(spec):
    if spec.kind != "SCG":
        raise ValueError(f"expected an SCG spec, got {spec.kind}")
    a, b = _operators(spec)
    return hermitian_part(scg_operator(a, b))


def witness(spec):
    return chsh_witness(spec) if spec.kind == "CHSH" else scg_witness(spec)


def witness_extremes(w):
    """Smallest and largest eigenvalue of a Hermitian witness."""
    vals = eig_hermitian(w, tol=1e-9).eigenvalues
    return float(vals[0]), float(vals[-1])


def witness_trace(w, rho0):
    return expectation(w, rho0, tol=1e-9)


def is_violated(kind, lambda_min, lambda_max, margin=0.0):
    kind = _kind(kind)
    if kind == "CHSH":
        return lambda_max > CLASSICAL_BOUND["CHSH"] + margin
    return lambda_min < CLASSICAL_BOUND["SCG"] - margin


def _epsilon_of(system):
    eps = getattr(system, "epsilon", 0.0)
    return float(eps) if eps is not None else 0.0


def evaluate(schedule, system, tau, mode="analytic", rho0=None):
    """Witness extremes (and optionally ``Tr(W rho0)``) at one ``tau``."""
    spec = WitnessSpec.from_schedule(schedule, system, tau, mode)
    w = witness(spec)
    lmin, lmax = witness_extremes(w)
    trace = witness_trace(w, rho0) if rho0 is not None else None
    return ViolationResult(
        kind=spec.kind,
        lambda_min=lmin,
        lambda_max=lmax,
        classical_bound=CLASSICAL_BOUND[spec.kind],
        violated=is_violated(spec.kind, lmin, lmax),
        tau=float(tau),
        epsilon=_epsilon_of(system),
        trace_value=trace,
    )


def default_lifetime_grid(tau_short=kaon.TAU_S_NS, tau_long=kaon.TAU_L_NS):
    """Two-scale grid: ``[0, 10 tau_L]`` in steps of ``tau_L / 200`` merged with
    ``[0, 10 tau_S]`` in steps of ``tau_S / 200`` so that violations living
    only on the short-lived scale are not stepped over."""
    fine = np.linspace(0.0, 10 * tau_short, 2001)
    coarse = np.linspace(0.0, 10 * tau_long, 2001)
    return np.unique(np.concatenate([fine, coarse]))


def violation_lifetime(
    schedule,
    system,
    grid=None,
    mode="analytic",
    margin=LIFETIME_MARGIN,
    resolution=1e-4,
):
    """Largest ``tau`` at which the schedule still violates its classical bound.

    The last violating grid point is refined by bisection against the next
    (non-violating) grid point down to ``resolution`` ns.  Returns 0 if no grid
    point violates, and the last grid point if the violation extends to the end
    of the window.
    """
    schedule = get_schedule(schedule)
    grid = default_lifetime_grid() if grid is None else np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("empty time grid")
    if np.any(grid < 0) or np.any(np.diff(grid) <= 0):
        raise ValueError("time grid must be non-negative and strictly ascending")

    def violates(tau):
        r = evaluate(schedule, system, tau, mode)
        return is_violated(schedule.kind, r.lambda_min, r.lambda_max, margin)

    flags = np.array([violates(t) for t in grid])
    if not flags.any():
        return 0.0
    last = int(np.nonzero(flags)[0][-1])
    if last == grid.size - 1:
        return float(grid[-1])
    lo, hi = float(grid[last]), float(grid[last + 1])
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if violates(mid):
            lo = mid
        else:
            hi = mid
    return lo


def scan(schedule, epsilons, taus, mode="analytic", base=None, rho0=None):
    """Evaluate a kaon schedule over the cartesian product ``epsilons x taus``.

    Rows are ordered epsilon-major, tau-minor.  ``base`` supplies the
    remaining kaon parameters; ``rho0`` may be a density matrix or a callable
    ``params -> rho0``.
    """
    epsilons, taus = list(epsilons), list(taus)
    if not epsilons or not taus:
        raise ValueError("need non-empty epsilon and tau lists")
    base = kaon.KaonParams() if base is None else base
    rows = []
    for eps in epsilons:
        params = kaon.KaonParams(base.gamma_s, base.gamma_l, base.omega, float(eps))
        state = rho0(params) if callable(rho0) else rho0
        rows.extend(evaluate(schedule, params, tau, mode, state) for tau in taus)
    return rows


def _strength(kind, row):
    return row.lambda_max if kind == "CHSH" else -row.lambda_min


def extremal_violation(schedule, system, taus, mode="analytic", refine=True):
    """Row with the strongest violation over ``taus`` (max lambda_max for
    CHSH, min lambda_min for SCG).

    With ``refine`` the best grid point is polished by a bounded scalar
    search between its neighbours.
    """
    schedule = get_schedule(schedule)
    taus = np.asarray(list(taus), dtype=float)
    rows = [evaluate(schedule, system, t, mode) for t in taus]
    i = max(range(len(rows)), key=lambda j: _strength(schedule.kind, rows[j]))
    best = rows[i]
    if not refine or len(taus) < 3:
        return best
    lo, hi = taus[max(i - 1, 0)], taus[min(i + 1, len(taus) - 1)]
    res = minimize_scalar(
        lambda t: -_strength(schedule.kind, evaluate(schedule, system, t, mode)),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-7},
    )
    polished = evaluate(schedule, system, float(res.x), mode)
    if _strength(schedule.kind, polished) > _strength(schedule.kind, best):
        return polished
    return best
