"""Entropy, Fisher information, and L^p norms.

Conventions: S_mu(f) = int f log f dmu (the negative of the differential
entropy when mu is Lebesgue and f a probability density), and
I_mu(f) = int |grad f|^2 / f dmu.  Both are computed by composite Simpson
quadrature on grid densities and by closed forms on GaussianDensity.

The integrand x log x is evaluated with a hard floor at 1e-300 so that
0 log 0 = 0; the Fisher integrand |grad f|^2/f is likewise zeroed where
f is below the floor.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .density import (GaussianDensity, GridDensity1D, GridDensity2D,
                      GridFunction1D, Reference, reference_weight_1d,
                      reference_weight_2d)
from .errors import InvalidExponents, NonSmoothWarning, ReferenceMismatch
from .quadrature import simpson_weights

VALUE_FLOOR = 1e-300

# Relative disagreement between the h and 2h Fisher estimates above which
# the input is flagged as insufficiently resolved.
ROUGHNESS_TOL = 0.05

LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class EntropyValue:
    """S_mu(f) together with how it was obtained."""

    value: float
    method: str  # "closed-form" or "quadrature"

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class FisherValue:
    """I_mu(f) together with how it was obtained."""

    value: float
    method: str

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))

    def __float__(self):
        return self.value


# === integrands ===========================================================

def xlogx(values):
    v = np.asarray(values, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(v > VALUE_FLOOR, v * np.log(np.maximum(v, VALUE_FLOOR)), 0.0)


def _grad_sq_over_f(values, grads):
    v = np.asarray(values, dtype=float)
    sq = np.zeros_like(v)
    for g in grads:
        sq += g * g
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(v > VALUE_FLOOR, sq / np.maximum(v, VALUE_FLOOR), 0.0)


# === entropy ==============================================================

def _entropy_grid_1d(x, values, reference):
    h = (x[-1] - x[0]) / (x.size - 1)
    return float(simpson_weights(x.size, h)
                 @ (xlogx(values) * reference_weight_1d(reference, x)))


def _entropy_grid_2d(f):
    w = xlogx(f.values) * reference_weight_2d(f.reference, f.x, f.y)
    return float(simpson_weights(f.x.size, f.hx) @ w @ simpson_weights(f.y.size, f.hy))


def _entropy_gaussian(f):
    sign, logdet = np.linalg.slogdet(f.covariance)
    n = f.dim
    if f.reference is Reference.GAUSSIAN:
        m2 = float(f.mean @ f.mean)
        return 0.5 * (float(np.trace(f.covariance)) + m2 - n - logdet)
    return -0.5 * n * (LOG_2PI + 1.0) - 0.5 * logdet


def entropy(f):
    """S_mu(f) for a grid or Gaussian density."""
    if isinstance(f, GaussianDensity):
        return EntropyValue(_entropy_gaussian(f), "closed-form")
    if isinstance(f, GridDensity1D):
        return EntropyValue(_entropy_grid_1d(f.x, f.values, f.reference), "quadrature")
    if isinstance(f, GridDensity2D):
        return EntropyValue(_entropy_grid_2d(f), "quadrature")
    raise ReferenceMismatch(f"entropy is not defined for {type(f).__name__}")


# === Fisher information ===================================================

def _fisher_estimate_1d(x, values, reference):
    h = (x[-1] - x[0]) / (x.size - 1)
    g = np.gradient(values, h, edge_order=2)
    integrand = _grad_sq_over_f(values, (g,)) * reference_weight_1d(reference, x)
    return float(simpson_weights(x.size, h) @ integrand)


def _fisher_estimate_2d(x, y, values, reference):
    hx = (x[-1] - x[0]) / (x.size - 1)
    hy = (y[-1] - y[0]) / (y.size - 1)
    gx = np.gradient(values, hx, axis=0, edge_order=2)
    gy = np.gradient(values, hy, axis=1, edge_order=2)
    integrand = _grad_sq_over_f(values, (gx, gy)) * reference_weight_2d(reference, x, y)
    return float(simpson_weights(x.size, hx) @ integrand @ simpson_weights(y.size, hy))


def _coarse_slice(n):
    # Subsample by 2 keeping an odd count for Simpson: start at 0 when
    # (n+1)/2 is odd, else at 1 (dropping one ~zero tail point per side).
    return slice(0, None, 2) if ((n + 1) // 2) % 2 == 1 else slice(1, None, 2)


def _richardson(fine, coarse, what):
    # Central differences are O(h^2); one Richardson step removes the
    # leading term.  Large disagreement flags an under-resolved density.
    if abs(fine - coarse) > ROUGHNESS_TOL * max(abs(fine), 1e-12):
        warnings.warn(
            f"{what}: Fisher estimates at h and 2h differ by "
            f"{abs(fine - coarse):.3e} (> {ROUGHNESS_TOL:.0%} of {abs(fine):.3e})",
            NonSmoothWarning, stacklevel=3)
    return fine + (fine - coarse) / 3.0


def _fisher_gaussian(f):
    n = f.dim
    inv = np.linalg.inv(f.covariance)
    if f.reference is Reference.GAUSSIAN:
        b = np.eye(n) - inv
        return float(f.mean @ f.mean) + float(np.trace(b @ f.covariance @ b.T))
    return float(np.trace(inv))


def fisher(f):
    """I_mu(f) for a grid or Gaussian density.

    Grid path: second-order central differences at steps h and 2h with one
    Richardson extrapolation; NonSmoothWarning when the two estimates
    disagree by more than 5%.
    """
    if isinstance(f, GaussianDensity):
        return FisherValue(_fisher_gaussian(f), "closed-form")
    if isinstance(f, GridDensity1D):
        sx = _coarse_slice(f.x.size)
        fine = _fisher_estimate_1d(f.x, f.values, f.reference)
        coarse = _fisher_estimate_1d(f.x[sx], f.values[sx], f.reference)
        return FisherValue(_richardson(fine, coarse, "fisher"), "quadrature")
    if isinstance(f, GridDensity2D):
        sx = _coarse_slice(f.x.size)
        sy = _coarse_slice(f.y.size)
        fine = _fisher_estimate_2d(f.x, f.y, f.values, f.reference)
        coarse = _fisher_estimate_2d(f.x[sx], f.y[sy], f.values[sx, sy], f.reference)
        return FisherValue(_richardson(fine, coarse, "fisher"), "quadrature")
    raise ReferenceMismatch(f"fisher information is not defined for {type(f).__name__}")


# === L^p norms ============================================================

def lp_norm_values(x, values, p, reference):
    """||f||_{L^p(mu)} from samples on a uniform axis."""
    p = float(p)
    if not p >= 1.0 or not math.isfinite(p):
        raise InvalidExponents(f"norm exponent must be finite and >= 1, got {p!r}")
    x = np.asarray(x, dtype=float)
    h = (x[-1] - x[0]) / (x.size - 1)
    integrand = np.abs(np.asarray(values, dtype=float)) ** p \
        * reference_weight_1d(reference, x)
    total = float(simpson_weights(x.size, h) @ integrand)
    return total ** (1.0 / p)


def lp_norm(f, p, reference=None):
    """||f||_{L^p(mu)} for a 1d grid function or density.

    GridFunction1D needs the reference spelled out; densities carry theirs.
    """
    if isinstance(f, GridDensity1D):
        ref = f.reference if reference is None else reference
        return lp_norm_values(f.x, f.values, p, ref)
    if isinstance(f, GridFunction1D):
        if reference is None:
            raise ReferenceMismatch("lp_norm of a grid function needs an explicit reference")
        return lp_norm_values(f.x, f.values, p, reference)
    raise ReferenceMismatch(f"lp_norm is not defined for {type(f).__name__}")
