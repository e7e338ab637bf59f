"""The distance-cost tradeoff over all pmfs, not just dyadic ones.

D(E) is the smallest KL distance to the target among pmfs with average
cost at most E. It is strictly convex and decreasing on the feasible
band, its slope is -lambda, and every operating point, dyadic or not,
lies on or above its tangent.
"""
import numpy as np

from dymatch import ccghc, distance_cost_curve, solve_simplex
from dymatch.facade import SLAT_COSTS, TARGET

lo = float(min(SLAT_COSTS.costs))
hi = sum(t * c for t, c in zip(TARGET.probs, SLAT_COSTS.costs))
print(f"feasible band ({lo}, {hi:.6f})\n")

grid = np.linspace(0.185, 0.222, 9)
points = distance_cost_curve(TARGET, SLAT_COSTS, grid)
print(f"{'E':>10s} {'D(E)':>10s} {'lambda':>10s}")
for pt in points:
    print(f"{pt.E:10.4f} {pt.D:10.6f} {pt.lam:10.4f}")

sol = solve_simplex(TARGET, SLAT_COSTS, 0.2063)
print(f"\nat the facade budget 0.2063:")
print(f"  p* = {np.round(sol.p_star.probs, 6)}")
print(f"  D  = {sol.D:.6f} bits, slope -{sol.lam:.6f}")

# The dyadic operating point at the same budget sits above the curve;
# the vertical gap is the price of dyadic probabilities at k=1.
res = ccghc(TARGET, SLAT_COSTS, "0.2063")
print(f"\nk=1 dyadic point: cost {res.cost:.6f}, kl {res.kl:.6f} bits")
print(f"gap above D(0.2063): {res.kl - sol.D:.6f} bits")
