"""
Integration and multiplication operators
========================================

T_g f = int f g', I_g f = int f' g and M_g f = f g satisfy
M_g f = f(0) g(0) + I_g f + T_g f exactly on coefficients.  The seminorm of
I_g f is controlled by sup |g| times the seminorm of f.
"""

import numpy as np

from qdisc.calculus import mg_decomposition, op_Ig, op_Mg, volterra_Tg
from qdisc.families import lacunary, random_polynomial
from qdisc.params import SpaceParams
from qdisc.series import TaylorSeries
from qdisc.spaces import q_disc_box_seminorm, sup_modulus

f, g = random_polynomial(16, seed=0), random_polynomial(16, seed=1)
gap = op_Mg(f, g) - mg_decomposition(f, g)
print("max |M_g f - (f(0)g(0) + I_g f + T_g f)| =", np.max(np.abs(gap.coeffs)))
print("T_g 1 = g - g(0):", volterra_Tg(TaylorSeries([1.0]), g).allclose(g - TaylorSeries([g.coeffs[0]])))

params = SpaceParams(0.6, 0.8)
half = TaylorSeries([0.5, 0.5])
for K in (3, 4, 5):
    h = lacunary(2.0, K)
    lhs = q_disc_box_seminorm(op_Ig(h, half), params, refine=False).value
    rhs = sup_modulus(half) * q_disc_box_seminorm(h, params, refine=False).value
    print(f"K={K}: seminorm(I_g f) / (sup|g| seminorm(f)) = {lhs / rhs:.4f}")
