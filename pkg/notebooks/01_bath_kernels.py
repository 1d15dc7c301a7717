"""
Ohmic bath kernels and thermal weights
======================================

The bath enters every decoherence exponent through integrals of the
spectral density against two time kernels. This script evaluates them and
checks the zero-temperature phase and damping integrals against their
closed forms.
"""

import numpy as np

from qndent import (BathParams, integrate_bath, kernel_C, kernel_S, ohmic_spectral_density,
                    thermal_factor, thermal_weight)

bath = BathParams(T=5.0, alpha=0.5, gamma0=0.1, omega_c=100.0)
omega = np.array([1e-6, 0.1, 1.0, 10.0, 100.0])

# spectral density (gamma0/pi) w exp(-w/wc)
print("I(w)        ", ohmic_spectral_density(omega, bath))

# S(w, t) = w t - sin(w t), C(w, t) = 1 - cos(w t); small w uses series
t = 2.0
print("S(w, 2)     ", kernel_S(omega, t))
print("C(w, 2)     ", kernel_C(omega, t))

# coth(beta w / 2), and the regularized product I(w) coth(beta w / 2) / w^2
print("coth        ", thermal_factor(omega, bath))
print("weight      ", thermal_weight(omega, bath))

# vacuum damping integral has a closed form
vac = BathParams(T=0.0, gamma0=0.1, omega_c=100.0)
for t in (0.1, 1.0, 10.0):
    num = integrate_bath(lambda w: thermal_weight(w, vac) * kernel_C(w, t), vac, time_scale=t)
    exact = 0.1 / (2 * np.pi) * np.log1p((100.0 * t) ** 2)
    print(f"t={t:5.1f}  damping {num:.12f}  closed form {exact:.12f}")

# so does the phase integral: (gamma0/pi)(wc t - arctan(wc t))
t = 3.0
num = integrate_bath(lambda w: ohmic_spectral_density(w, vac) * kernel_S(w, t), vac, time_scale=t)
print("phase", num, 0.1 / np.pi * (100.0 * t - np.arctan(100.0 * t)))
