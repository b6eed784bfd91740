
# coding: utf-8

# # Taper transmission
#
# Probe the cavity through the taper and look at what the emitter and the
# sphere do to the dip.

# In[1]:

import numpy as np

from hybridqed import default_config, derive_all
from hybridqed.spectra import LinearSystemModel, dynamical_matrix_eigenvalues, sweep_spectrum

p = derive_all(default_config())
mhz = lambda w: np.asarray(w) / 2 / np.pi / 1e6  # noqa: E731


# Four cases: bare cavity, sphere only, emitter only, both.

# In[2]:

for mnp in (False, True):
    for dipole in (False, True):
        model = LinearSystemModel.auto(p, include_mnp=mnp, include_dipole=dipole)
        tr = sweep_spectrum(model)
        print(f"mnp={mnp!s:5} dipole={dipole!s:5}  dips at",
              np.round(mhz(tr.dip_positions), 1), "MHz  T at dips", np.round(tr.dip_depths, 3))


# The bare cavity is over-coupled (kappa_1 = 5 kappa_0), so the dip bottoms out at (4/6)^2.

# In[3]:

bare = sweep_spectrum(LinearSystemModel.auto(p, include_mnp=False, include_dipole=False))
print(bare.transmission.min(), (4 / 6) ** 2)


# With both present the outer dips are split by about 2 sqrt(2) G_cm. The
# eigenvalues of the coupled-mode matrix give the same line positions.

# In[4]:

model = LinearSystemModel.auto(p)
tr = sweep_spectrum(model)
print("splitting      ", mhz(tr.dip_positions[-1] - tr.dip_positions[0]))
print("2 sqrt(2) G_cm ", mhz(2 * np.sqrt(2) * p.G_cm))
print("eigenvalues    ", np.round(mhz(dynamical_matrix_eigenvalues(model).real), 1))
