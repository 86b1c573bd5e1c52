"""Strong-Wolfe line search along a descent direction.

Two-phase scheme: a bracketing loop that expands the trial step by
factors of two until it either satisfies both Wolfe conditions or
brackets a suitable interval, followed by a zoom loop that shrinks the
bracket with safeguarded cubic interpolation until a point satisfying
the strong Wolfe conditions is found.

Every trial evaluates the objective value and gradient together, so the
per-search evaluation count equals the number of trial steps.
"""

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .core import EvaluationError


@dataclass
class LineSearchParams:
    """Tunables for the search.

    c1 and c2 are the sufficient-decrease and curvature constants with
    0 < c1 < c2 < 1.  alpha_init is the first trial step (1 for
    quasi-Newton directions, so the unit step is tried first).
    """

    c1: float = 1e-4
    c2: float = 0.9
    alpha_init: float = 1.0
    alpha_max: float = 1e10
    max_bracket_iters: int = 20
    max_zoom_iters: int = 30

    def __post_init__(self):
        if not (0.0 < self.c1 < self.c2 < 1.0):
            raise ValueError(
                f"need 0 < c1 < c2 < 1, got c1={self.c1:g}, c2={self.c2:g}")
        if not (0.0 < self.alpha_init <= self.alpha_max):
            raise ValueError(
                f"need 0 < alpha_init <= alpha_max, "
                f"got {self.alpha_init:g}, {self.alpha_max:g}")
        if self.max_bracket_iters < 1 or self.max_zoom_iters < 1:
            raise ValueError("iteration limits must be at least 1")


class LineSearchStatus(enum.Enum):
    WOLFE_SATISFIED = "wolfe_satisfied"
    MAX_ITERS_REACHED = "max_iters_reached"
    DEGENERATE_INTERVAL = "degenerate_interval"


@dataclass
class LineSearchOutcome:
    """Result of one search: the chosen step and its evaluation data."""

    alpha: float
    f_new: float
    g_new: np.ndarray
    n_evals: int
    status: LineSearchStatus


class ScalarRestriction:
    """The objective restricted to a ray: phi(alpha) = f(x + alpha*d).

    Caches the origin data (phi(0), phi'(0)) from an evaluation the
    caller already paid for.  Rejects non-descent directions up front
    since the search invariants assume phi'(0) < 0.
    """

    def __init__(self, problem, x, d, f0, g0):
        self.problem = problem
        self.x = np.asarray(x, dtype=float)
        self.d = np.asarray(d, dtype=float)
        self.phi0 = float(f0)
        self.dphi0 = float(np.dot(g0, self.d))
        if self.dphi0 >= 0.0:
            raise ValueError(f"not a descent direction: phi'(0) = {self.dphi0:g} >= 0")

    def evaluate(self, alpha):
        """Return (phi(alpha), phi'(alpha), gradient at the trial point)."""
        f, g = self.problem.value_and_gradient(self.x + alpha * self.d)
        f = float(f)
        # a silent NaN/Inf here would corrupt the bracketing invariants,
        # so broken evaluations are surfaced instead of treated as steps
        if not math.isfinite(f) or not np.all(np.isfinite(g)):
            raise EvaluationError(
                f"non-finite evaluation at step length {alpha:g}")
        return f, float(np.dot(g, self.d)), g


class _Trial(NamedTuple):
    alpha: float
    phi: float
    dphi: float
    g: Optional[np.ndarray]


def wolfe_check(phi0, dphi0, alpha, phi_a, dphi_a, c1, c2):
    """Evaluate both strong Wolfe conditions at a trial step.

    Returns ``(armijo, curvature)`` where armijo is the sufficient
    decrease test phi(a) <= phi(0) + c1*a*phi'(0) and curvature is
    |phi'(a)| <= c2*|phi'(0)|.
    """
    armijo = phi_a <= phi0 + c1 * alpha * dphi0
    curvature = abs(dphi_a) <= c2 * abs(dphi0)
    return armijo, curvature


def interpolate_trial(lo, hi):
    """Next trial inside the bracket, by cubic Hermite interpolation.

    Fits the cubic matching value and slope at both endpoints and takes
    its interior minimiser, clamped into the central 80% of the interval
    so the bracket width shrinks geometrically.  Degenerate fits (no
    interior minimiser, zero denominator, non-finite result) fall back
    to the midpoint.
    """
    a_lo, a_hi = lo.alpha, hi.alpha
    midpoint = 0.5 * (a_lo + a_hi)
    width = abs(a_hi - a_lo)
    if width <= 0.0:
        return midpoint
    lower = min(a_lo, a_hi) + 0.1 * width
    upper = max(a_lo, a_hi) - 0.1 * width
    d1 = lo.dphi + hi.dphi - 3.0 * (lo.phi - hi.phi) / (a_lo - a_hi)
    radicand = d1 * d1 - lo.dphi * hi.dphi
    if radicand < 0.0:
        return midpoint
    d2 = math.copysign(math.sqrt(radicand), a_hi - a_lo)
    denom = hi.dphi - lo.dphi + 2.0 * d2
    if denom == 0.0:
        return midpoint
    alpha = a_hi - (a_hi - a_lo) * (hi.dphi + d2 - d1) / denom
    if not math.isfinite(alpha):
        return midpoint
    return min(max(alpha, lower), upper)


def search(restriction, params=None):
    """Find a step satisfying the strong Wolfe conditions along the ray.

    On success the outcome status is WOLFE_SATISFIED.  If the iteration
    budget runs out or the zoom bracket collapses, the best trial seen
    so far is returned (preferring trials that satisfy sufficient
    decrease) with a status describing why the search stopped; the
    caller decides whether such a step is usable.
    """
    if params is None:
        params = LineSearchParams()
    phi0 = restriction.phi0
    dphi0 = restriction.dphi0

    n_evals = 0
    best_armijo = None
    smallest = None

    def evaluate(alpha):
        nonlocal n_evals, best_armijo, smallest
        phi, dphi, g = restriction.evaluate(alpha)
        n_evals += 1
        trial = _Trial(alpha, phi, dphi, g)
        if smallest is None or trial.alpha < smallest.alpha:
            smallest = trial
        armijo, curvature = wolfe_check(phi0, dphi0, alpha, phi, dphi,
                                        params.c1, params.c2)
        if armijo and (best_armijo is None or trial.phi < best_armijo.phi):
            best_armijo = trial
        return trial, armijo, curvature

    def outcome(trial, status):
        return LineSearchOutcome(alpha=trial.alpha, f_new=trial.phi,
                                 g_new=trial.g, n_evals=n_evals, status=status)

    def fallback(status):
        # Best effort: the lowest Armijo-satisfying trial, else the
        # smallest step tried (least damage when nothing qualified).
        trial = best_armijo if best_armijo is not None else smallest
        return outcome(trial, status)

    def zoom(lo, hi):
        # Invariants: lo satisfies sufficient decrease with the lowest
        # phi so far, and lo.dphi * (hi.alpha - lo.alpha) < 0.
        for _ in range(params.max_zoom_iters):
            width = abs(hi.alpha - lo.alpha)
            if width <= 1e-14 * max(1.0, abs(lo.alpha), abs(hi.alpha)):
                return fallback(LineSearchStatus.DEGENERATE_INTERVAL)
            trial, armijo, curvature = evaluate(interpolate_trial(lo, hi))
            if (not armijo) or trial.phi >= lo.phi:
                hi = trial
            else:
                if curvature:
                    return outcome(trial, LineSearchStatus.WOLFE_SATISFIED)
                if trial.dphi * (hi.alpha - lo.alpha) >= 0.0:
                    hi = lo
                lo = trial
        return fallback(LineSearchStatus.MAX_ITERS_REACHED)

    prev = _Trial(0.0, phi0, dphi0, None)
    alpha = params.alpha_init
    for i in range(params.max_bracket_iters):
        trial, armijo, curvature = evaluate(alpha)
        if (not armijo) or (i > 0 and trial.phi >= prev.phi):
            return zoom(prev, trial)
        if curvature:
            return outcome(trial, LineSearchStatus.WOLFE_SATISFIED)
        if trial.dphi >= 0.0:
            return zoom(trial, prev)
        prev = trial
        next_alpha = min(2.0 * alpha, params.alpha_max)
        if next_alpha <= alpha:
            break  # pinned at alpha_max, cannot expand further
        alpha = next_alpha
    return fallback(LineSearchStatus.MAX_ITERS_REACHED)
