"""The relaxed problem on the probability simplex.

Dropping the dyadic restriction, minimizing kl(p||t) subject to
w^T p <= E over the simplex has the exponential family solution
p*_i proportional to t_i * 2^(-lam * w_i), with the multiplier lam picked
so the constraint is active. Everything here works in base 2: distances
are bits and lam is the magnitude of dD/dE in bits per cost unit, which
lines up with the 2^(-lam w) tilt used on the dyadic side. (The same
family is often written with e^(-lam w); that multiplier is this one
times ln 2.)

The cost function f(lam) = w^T p*(lam) is strictly decreasing whenever
the costs are not all equal, so a bisection inverts it.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ConvergenceError, InfeasibleConstraintError
from .pmf import CostVector, Pmf, average_cost, kl_divergence

COST_TOL = 1e-12
_MAX_BISECT = 300


@dataclass(frozen=True)
class TiltedSolution:
    """Optimal point of the relaxed problem at one budget.

    lam is the active multiplier (0 when the constraint is slack), E the
    achieved cost w^T p_star, D the achieved distance kl(p_star||t).
    """

    p_star: Pmf
    lam: float
    E: float
    D: float


@dataclass(frozen=True)
class OperatingPoint:
    """A pmf's location on the distance-cost plane, optionally with the
    tangent slope magnitude at that point."""

    E: float
    D: float
    lam: Optional[float] = None


def tilted_pmf(t: Pmf, w: CostVector, lam: float) -> Pmf:
    """Normalized tilted pmf proportional to t_i * 2^(-lam * w_i).

    Zero-probability target symbols are stripped before normalizing and
    reinserted as zeros, so they never soak up mass.
    """
    if len(t) != len(w):
        raise ValueError(f"length mismatch: {len(t)} vs {len(w)}")
    tp = t.probs
    mask = tp > 0
    expo = -lam * w.costs[mask]
    expo -= expo.max()  # overflow guard for large multipliers
    x = tp[mask] * np.exp2(expo)
    out = np.zeros(len(tp))
    out[mask] = x / x.sum()
    return Pmf(out)


def cost_of_lambda(t: Pmf, w: CostVector, lam: float) -> float:
    """f(lam) = w^T p*(lam), strictly decreasing in lam for non-equal costs."""
    return average_cost(tilted_pmf(t, w, lam), w)


def solve_simplex(t: Pmf, w: CostVector, E: float,
                  tol: float = COST_TOL) -> TiltedSolution:
    """Minimize kl(p||t) over the simplex subject to w^T p <= E.

    Arguments:
        t: target pmf.
        w: costs; must not be all equal (the constraint cannot bind a
            direction then and the tilt family degenerates).
        E: cost budget, strictly above the cheapest supported symbol.

    Returns:
        TiltedSolution. For E >= w^T t the constraint is slack and the
        target itself is returned with lam = 0; otherwise lam solves
        f(lam) = E to within tol.
    """
    if len(t) != len(w):
        raise ValueError(f"length mismatch: {len(t)} vs {len(w)}")
    if w.is_uniform:
        raise ValueError("degenerate cost vector: all entries equal")
    supported = w.costs[t.probs > 0]
    w_min = float(supported.min())
    if E <= w_min:
        raise InfeasibleConstraintError(
            f"budget {E} does not exceed the cheapest supported cost {w_min}")
    wt = average_cost(t, w)
    if E >= wt:
        return TiltedSolution(t, 0.0, wt, 0.0)

    lo, u = 0.0, 1.0
    while cost_of_lambda(t, w, u) > E:
        lo, u = u, 2.0 * u
        if u > 2.0 ** 128:
            raise ConvergenceError("failed to bracket the multiplier")
    lam = u
    for _ in range(_MAX_BISECT):
        lam = 0.5 * (lo + u)
        fe = cost_of_lambda(t, w, lam)
        if abs(fe - E) <= tol:
            break
        if fe > E:
            lo = lam
        else:
            u = lam
    else:
        raise ConvergenceError(
            f"cost bisection did not reach tolerance {tol} at E={E}")
    p_star = tilted_pmf(t, w, lam)
    return TiltedSolution(p_star, lam, average_cost(p_star, w),
                          kl_divergence(p_star, t))


def distance_cost_curve(t: Pmf, w: CostVector,
                        grid: Sequence[float]) -> tuple:
    """Pointwise distance-cost tradeoff D(E) over a grid of budgets.

    The grid must lie strictly between the cheapest supported cost and
    w^T t; D is strictly convex and decreasing there, and the reported
    lam at each point is the magnitude of the tangent slope.
    """
    wt = average_cost(t, w)
    points = []
    for E in grid:
        if E >= wt:
            raise ValueError(
                f"grid point {E} is not below w^T t = {wt}; D is flat there")
        sol = solve_simplex(t, w, float(E))
        points.append(OperatingPoint(E=sol.E, D=sol.D, lam=sol.lam))
    return tuple(points)


def geometry_identity_residual(p: Pmf, t: Pmf, w: CostVector,
                               E_star: float) -> float:
    """Residual of the operating-point decomposition at budget E_star.

    With (p*, lam, E*, D*) the relaxed solution, every pmf p supported
    inside p* satisfies

        kl(p||t) = D* - lam (w^T p - E*) + kl(p||p*)

    exactly; the return value is |lhs - rhs|. Since kl(p||p*) >= 0, the
    identity puts every operating point on or above the tangent of D at
    (E*, D*).
    """
    sol = solve_simplex(t, w, E_star)
    if np.any((p.probs > 0) & (sol.p_star.probs == 0)):
        raise ValueError("p puts mass outside the support of p*")
    lhs = kl_divergence(p, t)
    rhs = (sol.D - sol.lam * (average_cost(p, w) - sol.E)
           + kl_divergence(p, sol.p_star))
    return abs(lhs - rhs)


def curve_csv(points: Sequence[OperatingPoint]) -> str:
    """CSV text (E, D, lambda) for plotting."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["E", "D", "lambda"])
    for pt in points:
        writer.writerow([repr(pt.E), repr(pt.D),
                         "" if pt.lam is None else repr(pt.lam)])
    return buf.getvalue()
