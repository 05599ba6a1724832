"""Complex polynomials with coefficient-level canonicalization.

This is the scalar layer everything else sits on: entries of cycle-algebra
elements are polynomials in the base variable, and evaluation of an element at
a representation point boils down to evaluating these.  Coefficients live in
ascending order, index k holding the coefficient of the k-th power.  Trailing
coefficients of modulus <= EPS_COEFF are trimmed on construction, so the zero
polynomial is the empty coefficient vector and ``degree`` of zero is -1.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import config
from .errors import RootMismatch

__all__ = [
    "Poly",
    "monomial",
    "eval_at_unit_roots",
    "interpolate_roots_of_unity",
]


def _canonical(coeffs) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex).ravel()
    keep = np.nonzero(np.abs(c) > config.EPS_COEFF)[0]
    c = c[: keep[-1] + 1] if keep.size else c[:0]
    c = c.copy()
    c.flags.writeable = False
    return c


class Poly:
    """Immutable complex polynomial in one variable.

    >>> p = Poly([1, 2, 1])
    >>> p.eval(2)
    (9+0j)
    >>> (p * Poly([1, -1])).coeffs.tolist()
    [(1+0j), (1+0j), (-1+0j), (-1+0j)]
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[complex] = ()):
        object.__setattr__(self, "coeffs", _canonical(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def zero(cls) -> Poly:
        return cls()

    @classmethod
    def one(cls) -> Poly:
        return cls([1.0])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    @property
    def norm_l1(self) -> float:
        """Sum of coefficient moduli; the working norm on this layer."""
        return float(np.sum(np.abs(self.coeffs)))

    def __add__(self, other) -> Poly:
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = a.copy()
        out[: len(b)] += b
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-self.coeffs)

    def __sub__(self, other) -> Poly:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> Poly:
        return _coerce(other) + (-self)

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, float, complex)):
            return Poly(self.coeffs * other)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly()
        return Poly(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        diff = a.copy()
        diff[: len(b)] -= b
        return bool(np.all(np.abs(diff) <= config.EPS_COEFF))

    __hash__ = None

    def __repr__(self) -> str:
        return f"Poly({self.coeffs.tolist()!r})"

    def eval(self, x):
        """Evaluate at a scalar or ndarray of points (Horner)."""
        scalar = np.ndim(x) == 0
        if self.is_zero:
            return 0j if scalar else np.zeros(np.shape(x), dtype=complex)
        value = np.polynomial.polynomial.polyval(x, self.coeffs)
        return complex(value) if scalar else value

    def derivative(self) -> Poly:
        if len(self.coeffs) <= 1:
            return Poly()
        return Poly(self.coeffs[1:] * np.arange(1, len(self.coeffs)))

    def shift(self, k: int) -> Poly:
        """Multiply by the k-th power of the variable."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        if self.is_zero or k == 0:
            return self
        out = np.zeros(len(self.coeffs) + k, dtype=complex)
        out[k:] = self.coeffs
        return Poly(out)

    def divide_root(self, c: complex) -> Poly:
        """Exact quotient by (w - c) when c is a root.

        Raises RootMismatch when |p(c)| > EPS_COEFF * (1 + l1 norm).
        """
        threshold = config.EPS_COEFF * (1.0 + self.norm_l1)
        value = abs(complex(self.eval(c)))
        if value > threshold:
            raise RootMismatch(c, value, threshold)
        if self.is_zero:
            return Poly()
        # synthetic division, highest coefficient first
        q = np.zeros(max(len(self.coeffs) - 1, 0), dtype=complex)
        acc = 0j
        for k in range(len(self.coeffs) - 1, 0, -1):
            acc = self.coeffs[k] + c * acc
            q[k - 1] = acc
        return Poly(q)

    def to_json(self) -> list[list[float]]:
        return [[float(z.real), float(z.imag)] for z in self.coeffs]


def _coerce(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, float, complex)):
        return Poly([x])
    raise TypeError(f"cannot interpret {type(x).__name__} as Poly")


def monomial(k: int, coeff: complex = 1.0) -> Poly:
    """coeff times the k-th power of the variable."""
    if k < 0:
        raise ValueError("power must be nonnegative")
    c = np.zeros(k + 1, dtype=complex)
    c[k] = coeff
    return Poly(c)


def poly_from_json(data: Sequence[Sequence[float]]) -> Poly:
    return Poly([complex(re, im) for re, im in data])


def eval_at_unit_roots(coeffs, m: int) -> np.ndarray:
    """Values of the polynomial at exp(2*pi*i*t/m) for t = 0..m-1.

    Exact for any degree: exponents are folded modulo m before the transform,
    which matches evaluation because the grid points are m-th roots of unity.
    """
    if m < 1:
        raise ValueError("grid size must be >= 1")
    c = np.asarray(coeffs, dtype=complex).ravel()
    folded = np.zeros(m, dtype=complex)
    if c.size:
        np.add.at(folded, np.arange(c.size) % m, c)
    return np.fft.ifft(folded) * m


def interpolate_roots_of_unity(samples) -> Poly:
    """Unique polynomial of degree < m through samples at exp(2*pi*i*t/m).

    Inverse of eval_at_unit_roots on degrees below the grid size.
    """
    s = np.asarray(samples, dtype=complex).ravel()
    if s.size == 0:
        raise ValueError("need at least one sample")
    return Poly(np.fft.fft(s) / s.size)
