
# coding: utf-8

# # Rate budget of the loaded microcavity
#
# A silica toroid near 546 nm with a 12 nm metal sphere parked 3 nm from a
# quantum emitter. Everything below is derived from the default scenario.

# In[1]:

import numpy as np

from hybridqed import default_config, derive_all
from hybridqed.config_io import params_summary

cfg = default_config()
p = derive_all(cfg)


# Rates are angular internally. Divide by 2 pi for the numbers one quotes in MHz.

# In[2]:

for name, value in params_summary(p)["rates_over_2pi_MHz"].items():
    print(f"{name:>8s} {value:10.1f} MHz")


# The sphere response at the cavity frequency. Near the plasmon resonance
# |beta| is large, which is what shrinks the mode volume.

# In[3]:

print("beta     =", np.round(p.beta, 3), " |beta| =", round(abs(p.beta), 2))
print("V_c      =", cfg.cavity.V_c, "m^3")
print("V_cm     =", p.V_cm, "m^3")


# Cooperativity with and without the sphere. The enhancement is the headline number.

# In[4]:

print(f"C_c = {p.C_c:.2f}   C_cm = {p.C_cm:.1f}   ratio = {p.enhancement:.1f}")
print(f"C_I = {p.C_I:.1f} (sphere losses only)   C_II = {p.C_II:.1f} (cavity losses only)")


# Near field of the sphere. On axis the factor is large, at the equator it is suppressed.

# In[5]:

from hybridqed.hybrid import field_profile

r = np.array([12.5, 15, 20, 30, 60]) * 1e-9
print(np.abs(field_profile(p.beta, 12e-9, r, 0.0)).round(2))
print(np.abs(field_profile(p.beta, 12e-9, r, np.pi / 2)).round(2))
