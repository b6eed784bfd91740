
# coding: utf-8

# # Dispersive spins: NOON states and squeezing
#
# Detune the emitters far from the cavity and the cavity drops out, leaving
# one-axis twisting chi (J_z - J_z^2) on the collective spin.

# In[1]:

import numpy as np

from hybridqed import default_config, derive_all
from hybridqed.dynamics import TwistingModel, coherent_x, evolve_twisting, run_noon, \
    optimal_squeezing, squeezing_parameter

p = derive_all(default_config())
model = TwistingModel.from_params(p, 2, delta_ec=10 * p.G_cm)
print("chi / 2pi =", model.chi / 2 / np.pi / 1e9, "GHz   dispersive:", model.dispersive)


# Pulse, twist for chi t = pi/2, pulse again. The second pulse's azimuth is
# scanned. Even N end up using an x pulse and odd N a y pulse.

# In[2]:

for n in range(2, 9):
    res = run_noon(n)
    print(f"N={n}  fidelity {res.fidelity:.6f}  phase {res.phase:.4f} rad")


# Without twisting the same pulses only reach 1/2.

# In[3]:

print(run_noon(4, chi=0.0).fidelity)


# Squeezing of the x coherent state as it twists.

# In[4]:

css = coherent_x(10)
for ct in (0.05, 0.1, 0.2, 0.4):
    print(ct, round(squeezing_parameter(evolve_twisting(css, 1.0, ct)), 4))
xi2, t = optimal_squeezing(10, chi=model.chi)
print("best xi^2", xi2, "after", t * 1e12, "ps")
