"""
Fractional derivatives two ways
===============================

The nu-derivative acts on Taylor coefficients through a ratio of gamma
functions.  It also has an integral representation against the kernel
(1 - conj(w) z)^-(b+nu).  Integer orders reduce to ordinary derivatives, and
the two routes agree to quadrature accuracy at fractional orders.
"""

import numpy as np

from qdisc.calculus import frac_derivative, frac_derivative_integral
from qdisc.families import random_polynomial

f = random_polynomial(10, seed=7)

# Integer order: the ordinary derivative, whatever b is.
for b in (1.5, 2.0, 3.0):
    err = np.max(np.abs(frac_derivative(f, 2, b).coeffs - f.derivative().derivative().coeffs))
    print(f"nu=2, b={b:g}: max |f^(2) - f''| = {err:.2e}")

# Ladder: differentiating the nu-derivative gives the (nu+1)-derivative.
for nu in (0.3, 0.9, 1.5):
    gap = frac_derivative(f, nu).derivative() - frac_derivative(f, nu + 1)
    print(f"nu={nu:g}: ladder gap {np.max(np.abs(gap.coeffs)):.2e}")

# Coefficient route against the disc integral.
for nu in (0.5, 1.5):
    for z in (0.0, 0.5j, 0.7 * np.exp(2.0j)):
        exact = complex(frac_derivative(f, nu)(z))
        approx = frac_derivative_integral(f, nu, z, refine=True)
        rel = abs(approx.value - exact) / abs(exact)
        print(f"nu={nu:g} z={complex(z):.3f}: rel err {rel:.1e}, refinement delta {approx.refinement_delta:.1e}")
