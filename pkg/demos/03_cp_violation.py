"""How CP violation erodes the witnesses.

epsilon tilts K_S and K_L away from the CP eigenstates.  The two-state model
stays physical (norm non-increasing) only below a unitarity bound, about
epsilon = 0.03 for kaon rates; beyond it the analytic numbers are a formal
continuation.  The three-level Lindblad model emulates epsilon by tilting
the oscillation axis and is completely positive for every epsilon.
"""
import numpy as np

from decayop import bell, kaon

print("epsilon  margin   CHSH max  CHSH life[ns]  SCG min(analytic)  SCG min(Lindblad)  SCG life[10 ns]")
chsh_taus = np.linspace(0, 1, 201)
scg_taus = np.linspace(0, 5, 101)
for eps in np.arange(0, 0.201, 0.04):
    p = kaon.KaonParams(epsilon=float(eps))
    chsh = bell.extremal_violation("paper-chsh", p, chsh_taus).lambda_max
    life = bell.violation_lifetime("paper-chsh", p, grid=chsh_taus)
    scg = bell.extremal_violation("paper-scg", p, scg_taus).lambda_min
    scg_l = bell.extremal_violation("paper-scg", p, scg_taus, mode="lindblad").lambda_min
    scg_life = bell.violation_lifetime("paper-scg", p)
    print(f"{eps:7.2f} {kaon.dissipation_margin(p):+7.3f} {chsh:10.4f} {life:12.4f}"
          f" {scg:18.4f} {scg_l:18.4f} {scg_life / 10:14.2f}")
print("\nmargin < 0: beyond the unitarity bound of the two-state model")
