"""Input validation helpers shared across the package."""

import numpy as np


def as_complex_vector(x, name="x"):
    """Coerce to a finite 1-D complex128 array."""
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def as_complex_array(x, name="x"):
    """Coerce to a finite complex128 array of any shape."""
    arr = np.asarray(x, dtype=np.complex128)
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_positive(value, name):
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be positive, got {value!r}")
    return float(value)


def check_nonnegative(value, name):
    if not np.isfinite(value) or value < 0:
        raise ValueError(f"{name} must be nonnegative, got {value!r}")
    return float(value)


def check_distinct(points, name="points"):
    """Reject duplicate entries (required for strictly PD Gram matrices)."""
    pts = as_complex_vector(points, name)
    n = pts.size
    for i in range(n):
        if np.any(pts[i + 1:] == pts[i]):
            raise ValueError(f"{name} must be pairwise distinct; duplicate value {pts[i]}")
    return pts
