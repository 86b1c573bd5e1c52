import numpy as np
import pytest

from ssbroyden import (
    LineSearchParams,
    LineSearchStatus,
    RosenbrockProblem,
    make_quadratic,
)
from ssbroyden.linesearch import (
    ScalarRestriction,
    _Trial,
    interpolate_trial,
    search,
    wolfe_check,
)

from conftest import CountingObjective


def restriction_for(problem, x, d):
    f0, g0 = problem.value_and_gradient(np.asarray(x, dtype=float))
    return ScalarRestriction(problem, np.asarray(x, dtype=float),
                             np.asarray(d, dtype=float), f0, g0)


# ---------------------------------------------------------------- params

def test_params_defaults():
    p = LineSearchParams()
    assert (p.c1, p.c2) == (1e-4, 0.9)
    assert p.alpha_init == 1.0
    assert p.alpha_max == 1e10
    assert (p.max_bracket_iters, p.max_zoom_iters) == (20, 30)


@pytest.mark.parametrize("kwargs", [
    {"c1": 0.5, "c2": 0.3},          # ordering violated
    {"c1": 0.0},
    {"c2": 1.0},
    {"alpha_init": 0.0},
    {"alpha_init": 2.0, "alpha_max": 1.0},
    {"max_bracket_iters": 0},
    {"max_zoom_iters": 0},
])
def test_params_validation(kwargs):
    with pytest.raises(ValueError):
        LineSearchParams(**kwargs)


# ----------------------------------------------------------- restriction

def test_restriction_rejects_ascent():
    quad = make_quadratic(2)
    x = np.array([1.0, 1.0])
    _, g0 = quad.value_and_gradient(x)
    with pytest.raises(ValueError):
        ScalarRestriction(quad, x, g0, *quad.value_and_gradient(x))
    # orthogonal direction has zero slope, also rejected
    with pytest.raises(ValueError):
        restriction_for(quad, [1.0, 0.0], [0.0, 1.0])


def test_restriction_evaluates_along_ray():
    quad = make_quadratic(2)  # f = (x1^2 + 2 x2^2)/2
    r = restriction_for(quad, [1.0, 1.0], [-1.0, -2.0])
    assert r.phi0 == 1.5
    assert r.dphi0 == -5.0
    phi, dphi, g = r.evaluate(0.5)
    assert phi == pytest.approx(0.125, abs=1e-15)
    assert dphi == pytest.approx(-0.5, abs=1e-15)
    assert np.allclose(g, [0.5, 0.0])


# ----------------------------------------------------------- wolfe check

def test_wolfe_check_at_parabola_minimum():
    # phi(a) = (a-1)^2: at a=1 both conditions hold
    assert wolfe_check(1.0, -2.0, 1.0, 0.0, 0.0, 1e-4, 0.9) == (True, True)


def test_wolfe_check_small_step_fails_curvature():
    # near a=0 the slope is still steep
    a = 1e-8
    phi = (a - 1.0) ** 2
    dphi = 2.0 * (a - 1.0)
    armijo, curvature = wolfe_check(1.0, -2.0, a, phi, dphi, 1e-4, 0.9)
    assert armijo and not curvature


def test_wolfe_check_linear_never_satisfies_curvature():
    # phi(a) = -a keeps full slope forever
    armijo, curvature = wolfe_check(0.0, -1.0, 5.0, -5.0, -1.0, 1e-4, 0.9)
    assert armijo and not curvature


def test_wolfe_check_armijo_violation():
    armijo, _ = wolfe_check(1.0, -2.0, 2.0, 1.0001, 2.0, 1e-4, 0.9)
    assert not armijo


# --------------------------------------------------------- interpolation

def test_interpolate_symmetric_parabola_vertex():
    lo = _Trial(0.0, 1.0, -2.0, None)
    hi = _Trial(2.0, 1.0, 2.0, None)
    assert interpolate_trial(lo, hi) == 1.0


def test_interpolate_degenerate_fit_bisects():
    # data with a negative cubic discriminant falls back to the midpoint
    lo = _Trial(0.0, 1.0, -1.0, None)
    hi = _Trial(1.0, 1.0 - 2.0 / 3.0, -1.0, None)
    assert interpolate_trial(lo, hi) == 0.5


def test_interpolate_clamps_vertex_into_band():
    # parabola phi(a) = (a - 0.01)^2 has its vertex outside the 10% band
    lo = _Trial(0.0, 1e-4, -0.02, None)
    hi = _Trial(1.0, 0.9801, 1.98, None)
    assert interpolate_trial(lo, hi) == 0.1


def test_interpolate_respects_interval_orientation():
    # same parabola handed in with the endpoints swapped
    lo = _Trial(1.0, 0.9801, 1.98, None)
    hi = _Trial(0.0, 1e-4, -0.02, None)
    out = interpolate_trial(lo, hi)
    assert out == 0.1


# ---------------------------------------------------------------- search

def test_search_quadratic_accepts_unit_step():
    quad = make_quadratic(2)
    x = np.array([3.0, 4.0])
    _, g0 = quad.value_and_gradient(x)
    d = -np.linalg.solve(np.diag(quad.diag), g0)  # Newton step
    r = restriction_for(quad, x, d)
    out = search(r)
    assert out.status is LineSearchStatus.WOLFE_SATISFIED
    assert out.alpha == 1.0
    assert out.n_evals == 1
    assert out.f_new == 0.0


def test_search_rosenbrock_steepest_descent_pin():
    rosen = RosenbrockProblem(2)
    x = rosen.default_start()
    f0, g0 = rosen.value_and_gradient(x)
    r = ScalarRestriction(rosen, x, -g0, f0, g0)
    out = search(r)
    assert out.status is LineSearchStatus.WOLFE_SATISFIED
    assert abs(out.alpha - 0.0007892073839786151) <= 1e-12
    assert out.f_new == pytest.approx(4.128138340789158, rel=1e-12)
    assert out.n_evals == 8
    # re-verify both inequalities from scratch
    phi_a, g_a = rosen.value_and_gradient(x - out.alpha * g0)
    dphi_a = float(g_a @ -g0)
    dphi0 = float(g0 @ -g0)
    assert phi_a <= f0 + 1e-4 * out.alpha * dphi0
    assert abs(dphi_a) <= 0.9 * abs(dphi0)
    assert np.array_equal(g_a, out.g_new)


def test_search_eval_accounting_and_determinism():
    counted = CountingObjective(RosenbrockProblem(2))
    x = counted.inner.default_start()
    f0, g0 = counted.value_and_gradient(x)
    counted.calls = 0
    out1 = search(ScalarRestriction(counted, x, -g0, f0, g0))
    assert counted.calls == out1.n_evals
    out2 = search(ScalarRestriction(counted, x, -g0, f0, g0))
    assert out1.alpha == out2.alpha
    assert out1.f_new == out2.f_new
    assert out1.n_evals == out2.n_evals
    assert out1.status is out2.status


def test_search_budget_exhaustion_falls_back():
    rosen = RosenbrockProblem(2)
    x = rosen.default_start()
    f0, g0 = rosen.value_and_gradient(x)
    r = ScalarRestriction(rosen, x, -g0, f0, g0)
    out = search(r, LineSearchParams(max_bracket_iters=1, max_zoom_iters=1))
    assert out.status is LineSearchStatus.MAX_ITERS_REACHED
    assert out.n_evals == 2
    assert 0.0 < out.alpha <= 1.0
    phi, _ = rosen.value_and_gradient(x - out.alpha * g0)
    assert out.f_new == phi


class _LinearDrop:
    """f(x) = -sum(x): descends forever along d = ones."""

    dimension = 4

    def value_and_gradient(self, x):
        return float(-np.sum(x)), -np.ones_like(x)


def test_search_expansion_pins_at_alpha_max():
    prob = _LinearDrop()
    x = np.zeros(4)
    f0, g0 = prob.value_and_gradient(x)
    r = ScalarRestriction(prob, x, -g0, f0, g0)
    out = search(r, LineSearchParams(alpha_max=2.0 ** 19))
    assert out.status is LineSearchStatus.MAX_ITERS_REACHED
    assert out.alpha == 2.0 ** 19
    assert out.n_evals == 20  # doubling path 1, 2, ..., 2^19
    assert out.f_new == -4.0 * 2.0 ** 19
