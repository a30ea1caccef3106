"""Analytic functions on the unit disc as truncated Taylor series.

Everything downstream works with two representations of a function:

* ``AnalyticFunction``: coefficients ``c_0..c_N`` of a polynomial.
* ``BoundaryGrid``: values on the ``M``-th roots of unity.

The two are related by the discrete Fourier transform, so a polynomial of
degree ``N`` is recovered exactly from any grid with ``M >= N + 1`` samples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

BOUNDARY_SLACK = 1e-12
DISC_MARGIN = 1e-12
DEFAULT_TRUNCATION = 128
DEFAULT_GRID = 1024


class AliasingError(ValueError):
    """Raised when a grid is too small to represent a function faithfully."""


def is_power_of_two(m: int) -> bool:
    return m > 0 and (m & (m - 1)) == 0


def next_power_of_two(x: float) -> int:
    m = 1
    while m < x:
        m *= 2
    return m


@dataclass(frozen=True)
class DiscPoint:
    """A point strictly inside the unit disc."""

    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if not abs(v) < 1.0 - DISC_MARGIN:
            raise ValueError(f"|a| = {abs(v)!r} is not strictly inside the disc")
        object.__setattr__(self, "value", v)

    def __complex__(self):
        return self.value

    def __abs__(self):
        return abs(self.value)


def as_point(a: Union[DiscPoint, complex, float]) -> complex:
    """Validate ``a`` as a disc point and return it as a plain complex."""
    if isinstance(a, DiscPoint):
        return a.value
    return DiscPoint(complex(a)).value


@dataclass(frozen=True, eq=False)
class AnalyticFunction:
    """Polynomial ``sum c_k z^k`` with complex coefficients.

    The truncation degree is ``len(coefficients) - 1``; trailing zeros are
    kept so that a function can carry the degree it was truncated to.
    """

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def truncation_degree(self) -> int:
        return self.coefficients.size - 1

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient (0 for the zero function)."""
        nz = np.flatnonzero(self.coefficients)
        return int(nz[-1]) if nz.size else 0

    @classmethod
    def constant(cls, c: complex) -> "AnalyticFunction":
        return cls([c])

    @classmethod
    def identity(cls) -> "AnalyticFunction":
        return cls([0, 1])

    @classmethod
    def monomial(cls, n: int, scale: complex = 1.0) -> "AnalyticFunction":
        c = np.zeros(n + 1, dtype=complex)
        c[n] = scale
        return cls(c)

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other):
        if not isinstance(other, AnalyticFunction):
            other = AnalyticFunction.constant(other)
        n = max(self.coefficients.size, other.coefficients.size)
        c = np.zeros(n, dtype=complex)
        c[: self.coefficients.size] += self.coefficients
        c[: other.coefficients.size] += other.coefficients
        return AnalyticFunction(c)

    __radd__ = __add__

    def __neg__(self):
        return AnalyticFunction(-self.coefficients)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AnalyticFunction):
            return AnalyticFunction(np.convolve(self.coefficients, other.coefficients))
        return AnalyticFunction(self.coefficients * complex(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not analytic in general")
        out = AnalyticFunction.constant(1.0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def compose(self, inner: "AnalyticFunction") -> "AnalyticFunction":
        """Coefficients of ``self o inner`` (Horner in the polynomial ring)."""
        out = AnalyticFunction.constant(self.coefficients[-1])
        for c in self.coefficients[-2::-1]:
            out = out * inner + c
        return out

    def to_json(self) -> str:
        return json.dumps([[float(c.real), float(c.imag)] for c in self.coefficients])

    @classmethod
    def from_json(cls, text: str) -> "AnalyticFunction":
        pairs = json.loads(text)
        return cls([complex(re, im) for re, im in pairs])

    def __repr__(self):
        return f"AnalyticFunction(degree={self.degree}, coefficients={self.coefficients.tolist()!r})"


def evaluate(f: AnalyticFunction, z):
    """Horner evaluation of ``f`` at ``z`` (scalar or array) with ``|z| <= 1``."""
    z_arr = np.asarray(z, dtype=complex)
    if np.any(np.abs(z_arr) > 1.0 + BOUNDARY_SLACK):
        raise ValueError("evaluation point outside the closed unit disc")
    acc = horner(f.coefficients, z_arr)
    if np.ndim(z) == 0:
        return complex(acc)
    return acc


def horner(c: np.ndarray, z) -> np.ndarray:
    """Unchecked vectorised Horner scheme for ``sum c_k z^k``."""
    z = np.asarray(z, dtype=complex)
    acc = np.full(z.shape, c[-1], dtype=complex)
    for ck in c[-2::-1]:
        acc = acc * z + ck
    return acc


def roots_of_unity(m: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(m) / m)


@dataclass(frozen=True, eq=False)
class BoundaryGrid:
    """Samples ``g(exp(2 pi i j / M))`` for ``j = 0..M-1``."""

    samples: np.ndarray
    label: str = field(default="", compare=False)

    def __post_init__(self):
        s = np.array(self.samples, dtype=complex).ravel()
        if s.size == 0:
            raise ValueError("empty boundary grid")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def grid_size(self) -> int:
        return self.samples.size

    def coefficients(self, degree: int | None = None) -> np.ndarray:
        """Discrete Fourier inversion; nonnegative frequencies only.

        Without ``degree`` the first ``M // 2`` frequencies are returned,
        which is the analytic part for any function the grid resolves.
        """
        m = self.grid_size
        c = np.fft.fft(self.samples) / m
        keep = m // 2 if degree is None else degree + 1
        if keep > m:
            raise AliasingError(f"degree {degree} not recoverable from {m} samples")
        return c[:keep]

    def to_function(self, degree: int | None = None) -> AnalyticFunction:
        return AnalyticFunction(self.coefficients(degree))

    def __mul__(self, other):
        if isinstance(other, BoundaryGrid):
            return grid_product(self, other)
        return BoundaryGrid(self.samples * complex(other))

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, BoundaryGrid):
            _check_same_size(self, other)
            return BoundaryGrid(self.samples + other.samples)
        return BoundaryGrid(self.samples + complex(other))

    def __sub__(self, other):
        if isinstance(other, BoundaryGrid):
            _check_same_size(self, other)
            return BoundaryGrid(self.samples - other.samples)
        return BoundaryGrid(self.samples - complex(other))


def _check_same_size(g1: BoundaryGrid, g2: BoundaryGrid):
    if g1.grid_size != g2.grid_size:
        raise ValueError(f"grid size mismatch: {g1.grid_size} vs {g2.grid_size}")


def boundary_grid(f: AnalyticFunction, m: int = DEFAULT_GRID) -> BoundaryGrid:
    """Sample ``f`` on the ``m``-th roots of unity.

    ``m`` must be a power of two with ``m >= 2 (N + 1)``; the factor two
    leaves room for one pointwise product before coefficients alias.
    """
    if not is_power_of_two(m):
        raise ValueError(f"grid size {m} is not a power of two")
    n = f.truncation_degree
    if m < 2 * (n + 1):
        raise AliasingError(f"grid size {m} < 2 (N + 1) = {2 * (n + 1)}")
    # sum_k c_k w^(jk) is m * ifft of the zero-padded coefficients
    return BoundaryGrid(np.fft.ifft(f.coefficients, m) * m)


def grid_product(g1: BoundaryGrid, g2: BoundaryGrid) -> BoundaryGrid:
    _check_same_size(g1, g2)
    return BoundaryGrid(g1.samples * g2.samples)


def dilate(f: AnalyticFunction, r: float) -> AnalyticFunction:
    """``z -> f(r z)``: coefficients scaled by ``r^k``."""
    if not 0.0 <= r < 1.0:
        raise ValueError(f"dilation radius {r!r} outside [0, 1)")
    k = np.arange(f.coefficients.size)
    return AnalyticFunction(f.coefficients * r**k)


def dilation_remainder(f: AnalyticFunction, r: float) -> AnalyticFunction:
    """``f - f(r .)``, the part of ``f`` a dilation leaves behind."""
    return f - dilate(f, r)


def dilation_radius(n: int) -> float:
    return n / (1.0 + n)


def sample_on(func, m: int, label: str = "") -> BoundaryGrid:
    """Grid of an arbitrary callable analytic on a neighbourhood of the closed disc."""
    return BoundaryGrid(np.asarray(func(roots_of_unity(m)), dtype=complex), label=label)


def coefficients_from_pairs(pairs: Iterable) -> AnalyticFunction:
    return AnalyticFunction([complex(re, im) for re, im in pairs])
