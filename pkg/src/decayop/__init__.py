"""Effective-operator formalism for decaying quantum systems."""
from .numkernel import Spectrum, eig_hermitian, expm, kron, unvec, vec
from .liouville import (
    JumpChannel,
    Liouvillian,
    OpenSystem,
    build_liouvillian,
    heisenberg_evolve,
    propagate,
)
from .kaon import KaonParams, QuasiSpin
from .effop import (
    EffectiveOperator,
    MeasurementSetting,
    effective_operator,
    expectation,
    tensor_witness,
)
from .bell import (
    SCHEDULES,
    Schedule,
    ViolationResult,
    WitnessSpec,
    chsh_witness,
    scg_witness,
    scan,
    violation_lifetime,
    witness_extremes,
    witness_trace,
)
from .ionsim import (
    IonModel,
    TrotterConfig,
    compare_lifetimes,
    tilt_from_epsilon,
    trotter_propagate,
    yb_model,
)

__version__ = "0.1.0"
