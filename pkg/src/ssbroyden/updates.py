"""Rank-two inverse-Hessian updates for the self-scaled Broyden family.

The family is parameterised by two per-iteration scalars: the mixing
parameter ``theta`` interpolating between BFGS (``theta = 0``) and DFP
(``theta = 1``), and the scale factor ``tau`` applied to the inherited
curvature term (``tau = 1`` means no scaling).  The general update is

    H' = (1/tau) * (H - (H y)(H y)^T / y^T H y + phi * (y^T H y) * v v^T)
         + s s^T / (y^T s)

with ``v = s / (y^T s) - H y / (y^T H y)`` and
``phi = (1 - theta) / (1 + (h b - 1) theta)``.  Since ``v^T y = 0``, the
secant equation ``H' y = s`` holds for every member and every ``tau``.

Six concrete variants are exposed: BFGS, DFP, and the dynamically mixed
Broyden update, each with and without self-scaling.  BFGS- and DFP-like
variants use specialised fast paths in which the ``v`` term simplifies
away; only the dynamic-``theta`` variants go through the general form.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .core import matvec

# Below this, a = b*h - 1 is treated as zero (s is H-parallel to y) and the
# dynamic-theta bounds switch to their limit values.
A_DEGENERATE = 1e-12
# Guard on the phi denominator 1 + (h*b - 1)*theta.
PHI_DENOM_EPS = 1e-12
# Smallest usable scale factor; anything at or below it triggers a fallback.
TAU_MIN = 1e-8
# Default relative threshold for the curvature guard.
CURVATURE_EPS = 1e-10


class CurvatureError(RuntimeError):
    """y^T s <= 0: the pair cannot produce a positive-definite update."""


class LostPositiveDefinitenessError(RuntimeError):
    """y^T H y <= 0: the inverse-Hessian approximation is no longer SPD."""


class SingularUpdateError(RuntimeError):
    """The phi denominator vanished; the update would be singular."""


class ScalingDegeneracyError(RuntimeError):
    """The computed tau is non-positive, tiny, or non-finite."""


class UpdateVariant(enum.Enum):
    """The six members of the update family, keyed by their CLI names."""

    BFGS = "bfgs"
    SSBFGS = "ssbfgs"
    DFP = "dfp"
    SSDFP = "ssdfp"
    BROYDEN = "broyden"
    SSBROYDEN = "ssbroyden"

    @property
    def fixed_theta(self):
        """0.0 / 1.0 for the fixed-mixing variants, None for dynamic ones."""
        if self in (UpdateVariant.BFGS, UpdateVariant.SSBFGS):
            return 0.0
        if self in (UpdateVariant.DFP, UpdateVariant.SSDFP):
            return 1.0
        return None

    @property
    def self_scaled(self):
        return self in (UpdateVariant.SSBFGS, UpdateVariant.SSDFP, UpdateVariant.SSBROYDEN)


#: Canonical ordering used by the CLI and the benchmark summaries.
VARIANT_ORDER = (
    UpdateVariant.BFGS,
    UpdateVariant.SSBFGS,
    UpdateVariant.DFP,
    UpdateVariant.SSDFP,
    UpdateVariant.BROYDEN,
    UpdateVariant.SSBROYDEN,
)


@dataclass
class UpdateCoefficients:
    """Per-iteration scalars and vectors feeding the update formulas.

    Populated in stages: :func:`compute_base_coefficients` fills the
    curvature ratios, :func:`compute_theta` and :func:`compute_tau`
    results are stored by the caller, and ``phi`` is fixed by the chosen
    update path (1 for BFGS-like, 0 for DFP-like, computed otherwise).
    """

    rho: float          # 1 / (y^T s)
    h: float            # (y^T H y) / (y^T s)
    b: float            # (s^T B s) / (y^T s), via the direction identity
    a: float            # b*h - 1, clamped to >= 0
    c: float            # sqrt(a / (1 + a)), 0 in the degenerate case
    Hy: np.ndarray      # H y
    yHy: float          # y^T H y
    v: np.ndarray       # s/(y^T s) - Hy/yHy
    theta: float = 0.0
    theta_minus: float = 0.0
    theta_plus: float = 0.0
    rho_minus: float = 1.0
    tau: float = 1.0
    sigma: float = 1.0
    sigma_pow: float = 1.0
    rho_plus: float = 1.0
    phi: float = 1.0


def compute_base_coefficients(H, s, y, g_prev, alpha):
    """Curvature ratios for an accepted step.

    ``b`` is computed without forming the direct Hessian approximation:
    because ``s = alpha * d`` with ``d = -H g_prev``, the identity
    ``B s = -alpha * g_prev`` gives ``s^T B s = -alpha * s^T g_prev``.

    Requires ``y^T s > 0`` (enforced upstream by the curvature guard)
    and positive-definite ``H``.
    """
    ys = float(np.dot(y, s))
    if ys <= 0.0:
        raise CurvatureError(f"y^T s = {ys:g} <= 0")
    Hy = matvec(H, y)
    yHy = float(np.dot(y, Hy))
    if yHy <= 0.0:
        raise LostPositiveDefinitenessError(f"y^T H y = {yHy:g} <= 0")
    rho = 1.0 / ys
    h = yHy / ys
    b = -alpha * float(np.dot(s, g_prev)) / ys
    # Cauchy-Schwarz in the H inner product gives b*h >= 1 up to rounding.
    a = max(b * h - 1.0, 0.0)
    c = 0.0 if a < A_DEGENERATE else math.sqrt(a / (1.0 + a))
    v = s / ys - Hy / yHy
    return UpdateCoefficients(rho=rho, h=h, b=b, a=a, c=c, Hy=Hy, yHy=yHy, v=v)


def compute_theta(variant, coeffs):
    """Mixing parameter and its clamp interval.

    Returns ``(theta, theta_minus, theta_plus, rho_minus)``.  Fixed-theta
    variants report placeholder bounds (0, 0) and ``rho_minus = 1``.  The
    dynamic variants clamp ``(1 - b)/b`` into ``[theta_minus, theta_plus]``;
    when ``a`` is degenerate the lower bound collapses to 0 and the clamp
    keeps the update inside the convex class.
    """
    fixed = variant.fixed_theta
    if fixed is not None:
        return fixed, 0.0, 0.0, 1.0
    rho_minus = min(1.0, coeffs.h * (1.0 - coeffs.c))
    theta_minus = 0.0 if coeffs.a < A_DEGENERATE else (rho_minus - 1.0) / coeffs.a
    theta_plus = 1.0 / rho_minus
    theta = max(theta_minus, min(theta_plus, (1.0 - coeffs.b) / coeffs.b))
    return theta, theta_minus, theta_plus, rho_minus


def compute_tau(variant, theta, coeffs, n):
    """Scale factor for the inherited curvature term.

    Returns ``(tau, sigma, sigma_pow, rho_plus)``; ``tau = 1`` for the
    unscaled variants.  ``sigma_pow = |sigma|^(1/(1-n))`` attenuates with
    dimension; for ``n = 1`` the exponent is undefined and ``sigma_pow``
    is taken as 1, and ``sigma = 0`` gives ``sigma_pow = 0`` so the
    min() selects a finite alternative.

    Raises :class:`ScalingDegeneracyError` when the computed ``tau`` is
    non-finite or not safely positive; the caller is expected to fall
    back to ``tau = 1`` for the iteration.
    """
    rho_plus = min(1.0, 1.0 / coeffs.b)
    sigma = 1.0 + theta * coeffs.a
    if n == 1:
        sigma_pow = 1.0
    elif sigma == 0.0:
        sigma_pow = 0.0
    else:
        sigma_pow = abs(sigma) ** (1.0 / (1.0 - n))
    if not variant.self_scaled:
        return 1.0, sigma, sigma_pow, rho_plus
    if theta <= 0.0:
        tau = min(rho_plus * sigma_pow, sigma)
    else:
        tau = rho_plus * min(sigma_pow, 1.0 / theta)
    if not math.isfinite(tau) or tau <= TAU_MIN:
        raise ScalingDegeneracyError(f"tau = {tau:g} is unusable")
    return tau, sigma, sigma_pow, rho_plus


def compute_phi(theta, h, b):
    """Weight of the v v^T term; guards against a vanishing denominator."""
    denom = 1.0 + (h * b - 1.0) * theta
    if abs(denom) <= PHI_DENOM_EPS:
        raise SingularUpdateError(f"phi denominator {denom:g} is within tolerance of zero")
    return (1.0 - theta) / denom


def apply_general_update(H, s, y, coeffs):
    """Full family update; every term is exactly symmetric by construction."""
    phi = compute_phi(coeffs.theta, coeffs.h, coeffs.b)
    core = (
        H
        - np.outer(coeffs.Hy, coeffs.Hy) / coeffs.yHy
        + (phi * coeffs.yHy) * np.outer(coeffs.v, coeffs.v)
    )
    return core / coeffs.tau + coeffs.rho * np.outer(s, s)


def apply_bfgs_update(H, s, y, rho, tau):
    """BFGS fast path, algebraically ``(I - rho s y^T) H (I - rho y s^T)``.

    Expanded into symmetric terms so the result is exactly symmetric:
    ``H - rho (s (Hy)^T + (Hy) s^T) + rho^2 (y^T H y) s s^T``.
    """
    Hy = matvec(H, y)
    yHy = float(np.dot(y, Hy))
    cross = np.outer(s, Hy)
    cross = cross + cross.T
    core = H - rho * cross + (rho * rho * yHy) * np.outer(s, s)
    return core / tau + rho * np.outer(s, s)


def apply_dfp_update(H, s, y, coeffs):
    """DFP fast path: the v-term drops out entirely."""
    core = H - np.outer(coeffs.Hy, coeffs.Hy) / coeffs.yHy
    return core / coeffs.tau + coeffs.rho * np.outer(s, s)


def apply_update(variant, H, s, y, coeffs):
    """Dispatch to the specialised form for the variant."""
    if variant in (UpdateVariant.BFGS, UpdateVariant.SSBFGS):
        return apply_bfgs_update(H, s, y, coeffs.rho, coeffs.tau)
    if variant in (UpdateVariant.DFP, UpdateVariant.SSDFP):
        return apply_dfp_update(H, s, y, coeffs)
    return apply_general_update(H, s, y, coeffs)


def curvature_guard(s, y, epsilon=CURVATURE_EPS):
    """Accept the pair iff y^T s > epsilon * ||s|| * ||y||.

    The strong Wolfe conditions guarantee y^T s > 0 in exact arithmetic;
    this guards against floating-point failure of that guarantee.  A
    rejected pair means the update is skipped and H carried over.
    """
    ys = float(np.dot(y, s))
    return ys > epsilon * float(np.linalg.norm(s)) * float(np.linalg.norm(y))
