"""Quadrature rules and spline sampling shared by the density modules.

Everything here operates on uniform, ascending, odd-length grids so that
composite Simpson weights are exact and subsampling by 2 keeps the
endpoints.
"""

import numpy as np
from scipy import ndimage


# === grids ================================================================

def validate_axis(x, name="axis"):
    """Check that x is a uniform ascending grid of odd length >= 65.

    Returns the grid step.  Raises ValueError on malformed axes; callers
    wrap this in the package error types.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 65 or x.size % 2 == 0:
        raise ValueError(f"{name} must be 1d with odd length >= 65, got shape {x.shape}")
    steps = np.diff(x)
    h = (x[-1] - x[0]) / (x.size - 1)
    if h <= 0 or not np.all(np.abs(steps - h) <= 1e-12 * max(abs(x[0]), abs(x[-1]), 1.0)):
        raise ValueError(f"{name} must be uniform and ascending")
    return h


# === Simpson ==============================================================

def simpson_weights(n, h):
    """Composite Simpson weights for n (odd) uniformly spaced points."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"Simpson rule needs odd n >= 3, got {n}")
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (h / 3.0)


def simpson_1d(values, h):
    return float(simpson_weights(values.shape[-1], h) @ np.asarray(values, dtype=float))


def simpson_2d(values, hx, hy):
    """Tensor-product Simpson over a (nx, ny) table."""
    values = np.asarray(values, dtype=float)
    wx = simpson_weights(values.shape[0], hx)
    wy = simpson_weights(values.shape[1], hy)
    return float(wx @ values @ wy)


# === Gauss-Hermite ========================================================

def gauss_hermite(n=64):
    """Nodes and weights integrating f against the standard gaussian.

    Probabilists' normalization: sum w_k f(z_k) ~ int f d(gamma_1).
    """
    z, w = np.polynomial.hermite.hermgauss(n)
    return z * np.sqrt(2.0), w / np.sqrt(np.pi)


# === spline sampling ======================================================

# Cubic B-spline coefficients are prefiltered once per array so repeated
# sampling (marginal lines, Hermite nodes) pays the filter cost once.

SPLINE_ORDER = 3


def spline_coefficients(values, order=SPLINE_ORDER):
    if order <= 1:
        return np.asarray(values, dtype=float)
    return ndimage.spline_filter(np.asarray(values, dtype=float), order=order,
                                 mode="constant")


def sample_coefficients(coeffs, indices, order=SPLINE_ORDER):
    """Evaluate prefiltered spline coefficients at fractional indices.

    indices: sequence of index arrays, one per array axis; points outside
    the grid evaluate to 0.
    """
    return ndimage.map_coordinates(coeffs, indices, order=order,
                                   mode="constant", cval=0.0, prefilter=False)


def sample_grid_1d(x0, h, coeffs, points, order=SPLINE_ORDER):
    idx = (np.asarray(points, dtype=float) - x0) / h
    return sample_coefficients(coeffs, [idx.ravel()], order=order).reshape(np.shape(points))


def sample_grid_2d(x0, hx, y0, hy, coeffs, px, py, order=SPLINE_ORDER):
    px = np.asarray(px, dtype=float)
    ix = (px - x0) / hx
    iy = (np.asarray(py, dtype=float) - y0) / hy
    return sample_coefficients(coeffs, [ix.ravel(), iy.ravel()], order=order).reshape(px.shape)
