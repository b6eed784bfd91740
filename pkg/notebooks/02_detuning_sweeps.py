
# coding: utf-8

# # Where to put the cavity relative to the plasmon
#
# Bigger spheres give larger coupling but also lose more. Moving the cavity
# off the plasmon line trades one against the other.

# In[1]:

import numpy as np

from hybridqed import default_config
from hybridqed.sweeps import SweepSpec, optimize_detuning, regime_curves, sweep_detuning, sweep_rm_d

cfg = default_config()
gamma_m = cfg.metal.gamma_m


# Enhancement map over radius and gap, cavity on resonance.

# In[2]:

res = sweep_rm_d(SweepSpec(r_m_range=(2e-9, 40e-9, 20), d_range=(1e-9, 20e-9, 20)), workers=4)
print("best:", {k: round(v * 1e9, 2) if k != "value" else round(v, 1)
                for k, v in res.argmax.items()})
print("r_m = 12 nm, d = 1..4 nm:", res.values[5, :4].round(1))


# Detuning curves for a few radii.

# In[3]:

radii = [5e-9, 12e-9, 20e-9, 30e-9]
curves = sweep_detuning(SweepSpec(delta_sp_range=(-6, 4, 201)), radii)
x = curves[0].axes["delta_sp_over_gamma_m"]
for rm, c in zip(radii, curves):
    i0 = int(np.argmin(np.abs(x)))
    print(f"r_m = {rm * 1e9:4.0f} nm  at 0: {c.values[i0]:7.2f}  "
          f"max {c.argmax['value']:7.2f} at {c.argmax['delta_sp_over_gamma_m']:+.2f} gamma_m")


# For 20 nm the resonant point sits in a dip. A 1-D search finds the best detuning.

# In[4]:

for rm in radii:
    dsp, best = optimize_detuning(cfg, rm)
    print(f"r_m = {rm * 1e9:4.0f} nm  optimum {dsp / gamma_m:+.3f} gamma_m  enhancement {best:.2f}")


# Which loss dominates? C_cm follows C_I near resonance and C_II far from it.

# In[5]:

cur = regime_curves(cfg, 20e-9, grid=[-6, -3, -1, 0, 1, 3])
for row in zip(cur["delta_sp_over_gamma_m"], cur["C_cm"], cur["C_I"], cur["C_II"]):
    print("  ".join(f"{v:9.2f}" for v in row))
