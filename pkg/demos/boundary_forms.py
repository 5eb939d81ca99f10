"""
Three boundary descriptions of one space
========================================

For boundary data F on the circle the space can be described by a double
integral over arcs, by translation differences, or by a Carleson condition
on the gradient of the Poisson extension.  On lacunary test functions the
three quantities stay within a bounded factor of each other.
"""

from qdisc.families import boundary_lacunary
from qdisc.geometry import ArcGrid
from qdisc.params import SpaceParams
from qdisc.spaces import poisson_carleson_constant, q_circle_difference_form, q_circle_seminorm

params = SpaceParams(0.6, 0.8)
grid = ArcGrid(centers=32, k_max=8)

print("K   double^2   difference   Poisson   (1)/(2)  (1)/(3)")
for K in (3, 4, 5, 6):
    F = boundary_lacunary(2.0, K)
    q1 = q_circle_seminorm(F, params, grid=grid, refine=False).extras["squared"]
    q2 = q_circle_difference_form(F, params, grid=grid, refine=False).value
    q3 = poisson_carleson_constant(F, params, grid=grid, refine=False).value
    print(f"{K}   {q1:8.4f}   {q2:9.4f}   {q3:7.4f}   {q1 / q2:6.3f}   {q1 / q3:6.3f}")
