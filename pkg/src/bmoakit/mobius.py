"""Disc automorphisms and the small amount of hyperbolic geometry built on them."""

from __future__ import annotations


import numpy as np

from .disc_functions import BOUNDARY_SLACK, as_point, next_power_of_two

MAX_BASE_RADIUS = 0.995
MIN_GRID = 1024
GRID_CAP = 2**18
Q_SAMPLES = 64


class GridTooCoarseError(ValueError):
    """The quadrature grid cannot resolve the kernel at the requested base point."""


def sigma(a, z):
    """The involution ``(a - z) / (1 - conj(a) z)`` swapping 0 and ``a``."""
    a = as_point(a)
    z_arr = np.asarray(z, dtype=complex)
    if np.any(np.abs(z_arr) > 1.0 + BOUNDARY_SLACK):
        raise ValueError("sigma is only evaluated on the closed disc")
    out = (a - z_arr) / (1.0 - np.conj(a) * z_arr)
    if np.ndim(z) == 0:
        return complex(out)
    return out


def sigma_unchecked(a, z):
    """``sigma`` for array ``a`` and ``z`` with broadcasting and no validation."""
    return (a - z) / (1.0 - np.conj(a) * z)


def log_weight(a):
    """``L(a) = log(2 / (1 - |a|^2))``; vectorised over arrays of points."""
    r2 = np.abs(np.asarray(a, dtype=complex)) ** 2
    if np.any(r2 >= 1.0):
        raise ValueError("log weight is only defined inside the disc")
    out = np.log(2.0 / (1.0 - r2))
    return float(out) if np.ndim(a) == 0 else out


def poisson_kernel(a, theta):
    """``(1 - |a|^2) / |e^{i theta} - a|^2``."""
    a = as_point(a)
    xi = np.exp(1j * np.asarray(theta, dtype=float))
    out = (1.0 - abs(a) ** 2) / np.abs(xi - a) ** 2
    return float(out) if np.ndim(theta) == 0 else out


def poisson_weights(points, m: int) -> np.ndarray:
    """Kernel values for each point (rows) on the ``m`` uniform angles (columns)."""
    pts = np.asarray(points, dtype=complex).reshape(-1, 1)
    xi = np.exp(2j * np.pi * np.arange(m) / m)[None, :]
    return (1.0 - np.abs(pts) ** 2) / np.abs(xi - pts) ** 2


def s_factor(r: float) -> float:
    """``2 (1 + r) / (1 - r)``, the distortion constant of ``sigma_b`` for ``|b| <= r``."""
    if not 0.0 < r < 1.0:
        raise ValueError(f"r = {r!r} outside (0, 1)")
    return 2.0 * (1.0 + r) / (1.0 - r)


def q_radius(r: float, t: float) -> float:
    return (r + t) / (1.0 + r * t)


def in_Q(z, r: float, t: float) -> bool:
    """Membership in ``r D u {sigma_b(w): |b| <= r, |w| <= t}``.

    The union is the closed disc of radius ``(r + t) / (1 + r t)``; points
    outside it are re-tested against sampled ``b`` on ``|b| = r``.
    """
    if not (0.0 < r < 1.0 and 0.0 < t < 1.0):
        raise ValueError("need 0 < r < 1 and 0 < t < 1")
    z = complex(z)
    if abs(z) > 1.0 + BOUNDARY_SLACK:
        raise ValueError("z outside the closed disc")
    if abs(z) <= r or abs(z) <= q_radius(r, t) + 1e-12:
        return True
    if abs(z) >= 1.0:
        return False
    bs = r * np.exp(2j * np.pi * np.arange(Q_SAMPLES) / Q_SAMPLES)
    bs = np.append(bs, r * z / abs(z))
    return bool(np.any(np.abs(sigma_unchecked(bs, z)) <= t))


def grid_size_for(radius: float, bandwidth: int = 0, minimum: int = MIN_GRID) -> int:
    """Power-of-two grid resolving a Poisson kernel peaked at ``radius``.

    ``bandwidth`` is the trigonometric degree of whatever multiplies the kernel.
    """
    radius = min(float(radius), 1.0 - 1e-15)
    need = max(minimum, 64.0 / (1.0 - radius) + bandwidth)
    return next_power_of_two(need)


def check_grid(radius: float, m: int, bandwidth: int = 0):
    if radius > MAX_BASE_RADIUS + 1e-12:
        raise GridTooCoarseError(f"|a| = {radius:.6g} exceeds the cap {MAX_BASE_RADIUS}")
    need = grid_size_for(radius, bandwidth, minimum=1)
    if m < need:
        raise GridTooCoarseError(f"grid {m} too coarse for |a| = {radius:.6g}; need {need}")

