"""CSV and JSON interchange for grid densities.

CSV 1d: header "x,f", one row per grid point.
CSV 2d: header "x,y,f", row-major in x (the x loop is the outer one).
JSON: parametric specs with a "family" of gaussian | gaussian_mixture |
uniform plus a "reference" of lebesgue | gaussian.
"""

from __future__ import annotations

import csv
import json

import numpy as np

from .density import (GaussianDensity, GridDensity1D, GridDensity2D,
                      Reference, gaussian_mixture, uniform_density)
from .errors import GridError, NormalizationError


def _parse_reference(raw):
    try:
        return Reference(str(raw).lower())
    except ValueError:
        raise GridError(f"unknown reference {raw!r}; use lebesgue or gaussian") from None


# === CSV ==================================================================

def save_csv_1d(f, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "f"])
        for xv, fv in zip(f.x, f.values):
            writer.writerow([repr(float(xv)), repr(float(fv))])


def load_csv_1d(path, reference):
    reference = _parse_reference(reference) if not isinstance(reference, Reference) else reference
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [c.strip() for c in header] != ["x", "f"]:
            raise GridError(f"{path}: expected header 'x,f', got {header!r}")
        rows = [(float(r[0]), float(r[1])) for r in reader if r]
    if not rows:
        raise GridError(f"{path}: no data rows")
    x = np.array([r[0] for r in rows])
    vals = np.array([r[1] for r in rows])
    return GridDensity1D.from_values(reference, x, vals, what=str(path))


def save_csv_2d(f, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y", "f"])
        for i, xv in enumerate(f.x):
            for j, yv in enumerate(f.y):
                writer.writerow([repr(float(xv)), repr(float(yv)),
                                 repr(float(f.values[i, j]))])


def load_csv_2d(path, reference):
    reference = _parse_reference(reference) if not isinstance(reference, Reference) else reference
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [c.strip() for c in header] != ["x", "y", "f"]:
            raise GridError(f"{path}: expected header 'x,y,f', got {header!r}")
        rows = [(float(r[0]), float(r[1]), float(r[2])) for r in reader if r]
    if not rows:
        raise GridError(f"{path}: no data rows")
    x = np.unique([r[0] for r in rows])
    y = np.unique([r[1] for r in rows])
    if x.size * y.size != len(rows):
        raise GridError(f"{path}: rows do not tile a {x.size} x {y.size} grid")
    vals = np.array([r[2] for r in rows]).reshape(x.size, y.size)
    # verify row-major ordering: the y coordinate must cycle fastest
    ys = np.array([r[1] for r in rows[: y.size]])
    if not np.array_equal(ys, y):
        raise GridError(f"{path}: rows must be row-major in x (y cycles fastest)")
    return GridDensity2D.from_values(reference, x, y, vals, what=str(path))


# === JSON =================================================================

def density_from_spec(spec, length=None, points=None):
    """Build a density from a parsed JSON spec (a dict)."""
    if not isinstance(spec, dict) or "family" not in spec:
        raise NormalizationError(f"density spec must be a dict with a 'family', got {spec!r}")
    family = spec["family"]
    reference = _parse_reference(spec.get("reference", "lebesgue"))
    if family == "gaussian":
        mean = spec.get("mean", 0.0)
        cov = spec.get("covariance", spec.get("variance", 1.0))
        return GaussianDensity(reference, mean, cov)
    if family == "gaussian_mixture":
        comps = spec.get("components")
        if not comps:
            raise NormalizationError("gaussian_mixture needs a 'components' list")
        return gaussian_mixture(
            reference,
            [c["weight"] for c in comps],
            [c["mean"] for c in comps],
            [c["variance"] for c in comps],
            length=length, points=points)
    if family == "uniform":
        if reference is not Reference.LEBESGUE:
            raise NormalizationError("uniform is a Lebesgue-reference family")
        return uniform_density(spec["a"], spec["b"],
                               smoothing=spec.get("smoothing", 0.05),
                               length=length, points=points)
    raise NormalizationError(f"unknown density family {family!r}")


def load_json(path, length=None, points=None):
    with open(path) as fh:
        spec = json.load(fh)
    return density_from_spec(spec, length=length, points=points)


def save_json(spec, path):
    with open(path, "w") as fh:
        json.dump(spec, fh, indent=2, sort_keys=True)
        fh.write("\n")
