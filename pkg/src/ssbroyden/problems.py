"""Benchmark objectives with analytic gradients plus a difference oracle.

Three problems at desk scale: a separable convex quadratic, the
pairwise extended Rosenbrock function, and a collocation least-squares
training problem for a tiny one-hidden-layer tanh network fitted to a
1D Poisson equation (u'' = -f on (0,1) with zero boundary values,
manufactured solution sin(pi*x)).

The network problem is deliberately stiff and nonconvex; its loss is

    L = 1/(2*N_int) * sum_i (u''(x_i) + f(x_i))^2
      + 1/(2*N_bnd) * sum_j (u(x_j) - u*(x_j))^2

over a fixed uniform interior grid and the two endpoints.  All tanh
derivatives are formed from t = tanh(z) alone: tanh' = 1 - t^2,
tanh'' = -2 t (1 - t^2), tanh''' = -2 (1 - t^2)(1 - 3 t^2).
"""

import numpy as np

from .core import ObjectiveFunction, as_vector

# 64-bit linear congruential generator constants for the deterministic
# network initializer (reproducible without a platform RNG).
LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
LCG_SEED = 42
_LCG_MOD = 1 << 64


class QuadraticProblem(ObjectiveFunction):
    """f(x) = 1/2 * sum_i diag_i * x_i^2 with positive diagonal curvatures."""

    def __init__(self, diag):
        diag = as_vector(diag)
        if not np.all(diag > 0.0):
            raise ValueError("all diagonal curvatures must be positive")
        self.diag = diag
        self.dimension = diag.size

    def value_and_gradient(self, x):
        x = self._validated(x)
        f = 0.5 * float(np.dot(self.diag * x, x))
        g = self.diag * x
        return self._checked(f, g)

    def default_start(self):
        return np.ones(self.dimension)


class RosenbrockProblem(ObjectiveFunction):
    """Pairwise extended Rosenbrock function of even dimension.

    f(x) = sum over pairs (a, b) of 100*(b - a^2)^2 + (1 - a)^2, with
    the unique global minimum f = 0 at the all-ones point.
    """

    def __init__(self, n=2):
        if n < 2 or n % 2 != 0:
            raise ValueError(f"dimension must be even and >= 2, got {n}")
        self.dimension = int(n)

    def value_and_gradient(self, x):
        x = self._validated(x)
        a = x[0::2]
        b = x[1::2]
        gap = b - a * a
        f = float(np.sum(100.0 * gap * gap + (1.0 - a) ** 2))
        g = np.empty_like(x)
        g[0::2] = -400.0 * a * gap - 2.0 * (1.0 - a)
        g[1::2] = 200.0 * gap
        return self._checked(f, g)

    def default_start(self):
        return np.tile([-1.2, 1.0], self.dimension // 2)


class PinnPoisson1D(ObjectiveFunction):
    """Collocation least-squares loss for u'' + f = 0, u(0) = u(1) = 0.

    The trial function is a width-m tanh network
    u(x) = sum_j w2_j * tanh(w1_j * x + b1_j) + b2, so the parameter
    vector is [w1, b1, w2, b2] of length 3m + 1.  The forcing
    f(x) = pi^2 sin(pi*x) makes u*(x) = sin(pi*x) the exact solution.
    Interior residuals are enforced on the uniform grid
    x_i = i / (n_interior + 1).
    """

    def __init__(self, m=8, n_interior=32):
        if m < 1 or n_interior < 1:
            raise ValueError("need m >= 1 hidden units and n_interior >= 1 points")
        self.m = int(m)
        self.n_interior = int(n_interior)
        self.dimension = 3 * self.m + 1
        self.xs = np.arange(1, self.n_interior + 1) / (self.n_interior + 1)
        self.forcing = np.pi ** 2 * np.sin(np.pi * self.xs)
        self.x_boundary = np.array([0.0, 1.0])
        # sin(pi*0) and sin(pi*1) are exactly zero; using the analytic
        # values keeps the boundary term exactly zero for the zero network.
        self.u_boundary = np.array([0.0, 0.0])

    def split(self, x):
        """Parameter vector -> (w1, b1, w2, b2) views."""
        m = self.m
        return x[0:m], x[m:2 * m], x[2 * m:3 * m], x[3 * m]

    def value_and_gradient(self, x):
        x = self._validated(x)
        w1, b1, w2, b2 = self.split(x)
        n_int = self.n_interior

        # Interior: second-derivative residuals on the grid.
        z = np.outer(self.xs, w1) + b1          # (n_int, m)
        t = np.tanh(z)
        t1 = 1.0 - t * t
        t2 = -2.0 * t * t1
        t3 = -2.0 * t1 * (1.0 - 3.0 * t * t)
        w1sq = w1 * w1
        upp = t2 @ (w2 * w1sq)                  # u''(x_i)
        r = upp + self.forcing
        loss = 0.5 * float(np.dot(r, r)) / n_int

        rT2 = t2.T @ r                          # (m,)
        rT3 = t3.T @ r
        rxT3 = t3.T @ (r * self.xs)
        g_w1 = (2.0 * w1 * w2 * rT2 + w2 * w1sq * rxT3) / n_int
        g_b1 = (w2 * w1sq * rT3) / n_int
        g_w2 = (w1sq * rT2) / n_int
        g_b2 = 0.0

        # Boundary: value mismatch at the two endpoints.
        zb = np.outer(self.x_boundary, w1) + b1  # (2, m)
        tb = np.tanh(zb)
        ub = tb @ w2 + b2
        e = ub - self.u_boundary
        n_bnd = e.size
        loss += 0.5 * float(np.dot(e, e)) / n_bnd

        tb1 = 1.0 - tb * tb
        g_w1 = g_w1 + (w2 * ((e * self.x_boundary) @ tb1)) / n_bnd
        g_b1 = g_b1 + (w2 * (e @ tb1)) / n_bnd
        g_w2 = g_w2 + (e @ tb) / n_bnd
        g_b2 = g_b2 + float(np.sum(e)) / n_bnd

        g = np.concatenate([g_w1, g_b1, g_w2, [g_b2]])
        return self._checked(loss, g)

    def network_values(self, x, points):
        """Evaluate the trial function at the given points."""
        x = self._validated(x)
        w1, b1, w2, b2 = self.split(x)
        return np.tanh(np.outer(points, w1) + b1) @ w2 + b2

    def l2_error(self, x):
        """Root-mean-square error of the trial function against
        sin(pi*x) over the interior grid."""
        diff = self.network_values(x, self.xs) - np.sin(np.pi * self.xs)
        return float(np.sqrt(np.mean(diff * diff)))

    def default_start(self):
        return self.initial_parameters()

    def initial_parameters(self):
        """Deterministic uniform(-0.5, 0.5) init from a 64-bit LCG.

        The state advances before each draw and each draw maps to
        state / 2^64 - 0.5, filling the [w1, b1, w2, b2] layout in order.
        """
        state = LCG_SEED
        values = np.empty(self.dimension)
        for i in range(self.dimension):
            state = (LCG_MULTIPLIER * state + LCG_INCREMENT) % _LCG_MOD
            values[i] = state / _LCG_MOD - 0.5
        return values


def finite_difference_gradient(problem, x, h=1e-6):
    """Central-difference gradient oracle: (f(x+h*e_i) - f(x-h*e_i)) / (2h)."""
    if not h > 0.0:
        raise ValueError(f"step must be positive, got {h:g}")
    x = as_vector(x, problem.dimension)
    g = np.empty_like(x)
    for i in range(x.size):
        xp = x.copy()
        xm = x.copy()
        xp[i] += h
        xm[i] -= h
        g[i] = (problem.value(xp) - problem.value(xm)) / (2.0 * h)
    return g


def default_start(problem):
    """Canonical start point for a benchmark problem."""
    return problem.default_start()


def make_quadratic(n=10):
    """Quadratic with curvatures 1..n (condition number n)."""
    return QuadraticProblem(np.arange(1, n + 1, dtype=float))


def make_rosenbrock(n=2):
    return RosenbrockProblem(n)


def make_pinn1d(m=8, n_interior=32):
    return PinnPoisson1D(m=m, n_interior=n_interior)
