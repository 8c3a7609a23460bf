"""Effective operators for a decaying kaon.

A measurement of "is the kaon a K0bar at time t?" on a particle that may
already have decayed is a two-outcome measurement: yes, or no/decayed.
Folding the evolution into the observable gives O_eff = 2 K(t) - 1, whose
expectation in the *initial* state is the measured correlation.
"""
import numpy as np

from decayop import kaon
from decayop.effop import MeasurementSetting, effective_operator

np.set_printoptions(precision=4, suppress=True)
params = kaon.KaonParams()
print(f"Gamma_S = {params.gamma_s:.3f}/ns, Gamma_L = {params.gamma_l:.5f}/ns, "
      f"omega = {params.omega:.3f}/ns")

# At t = 0 nothing has happened yet: O_eff is the plain reflection 2|K0bar><K0bar| - 1.
o0 = effective_operator(params, MeasurementSetting(kaon.ANTIKAON, 0.0)).matrix
print("\nO_eff(t=0) in the (K0, K0bar) basis:\n", o0.real)

# A few short-lived lifetimes later the K_S component is gone.
for t in (0.05, 0.2, 1.0):
    o = effective_operator(params, MeasurementSetting(kaon.ANTIKAON, t)).matrix
    print(f"\nO_eff(t={t} ns), eigenvalues {np.linalg.eigvalsh(o)}")

# The analytic two-state construction and the three-level Lindblad model agree.
t = 0.3
two = effective_operator(params, MeasurementSetting(kaon.ANTIKAON, t, "analytic")).matrix
three = effective_operator(params, MeasurementSetting(kaon.ANTIKAON, t, "lindblad")).matrix
block = kaon.surviving_block(three + np.eye(3)) - np.eye(2)
print(f"\nanalytic vs Lindblad at t={t} ns: max diff {np.abs(two - block).max():.1e}")
print("Lindblad operator, decayed level first:\n", three.real)

# In the (K_S, K_L) basis there is a closed form.
ks, kl = kaon.eigenstates(params)
b = np.column_stack([ks, kl])
closed = kaon.closed_form_effop(params, kaon.ANTIKAON, t)
print(f"closed form residual: {np.abs(b.conj().T @ two @ b - closed).max():.1e}")

# Long after both components have decayed every answer is "no".
late = effective_operator(params, MeasurementSetting(kaon.KAON, 50 / params.gamma_l)).matrix
print(f"\nt = 50/Gamma_L: |O_eff + 1| = {np.abs(late + np.eye(2)).max():.1e}")
