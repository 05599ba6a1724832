"""Finite-dimensional representations and kernel machinery.

Two families of evaluation points:

* ``Lambda(lam)`` with |lam| <= 1: the n-dimensional representation sending an
  element to its realized matrix evaluated at z = lam.  At lam = 0 only the
  constant diagonal part survives.
* ``DiagZero(i)``: the one-dimensional representation reading off the constant
  term of the i-th diagonal entry (1-based i).  These are exactly the extra
  characters that appear at the center of the disk.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .algebra import CycleElement, monomial_elem, mul_elem, random_element
from .errors import DimensionMismatch
from .poly import Poly

__all__ = [
    "Lambda",
    "DiagZero",
    "RepPoint",
    "eval_rep",
    "eval_rep_at_unit_roots",
    "phi_generator_values",
    "kernel_sample",
    "semisimplicity_certificate",
    "SemisimplicityVerdict",
    "kernel_square_witness",
    "KernelSquareResult",
    "point_to_json",
    "point_from_json",
    "matc_to_json",
    "matc_from_json",
]

_DISK_SLACK = 1e-12


@dataclass(frozen=True)
class Lambda:
    """Evaluation point in the closed unit disk."""

    value: complex

    def __post_init__(self):
        v = complex(self.value)
        object.__setattr__(self, "value", v)
        if abs(v) > 1.0 + _DISK_SLACK:
            raise ValueError(f"point {v} lies outside the closed unit disk")


@dataclass(frozen=True)
class DiagZero:
    """Character reading the constant term of the i-th diagonal entry."""

    i: int

    def __post_init__(self):
        if self.i < 1:
            raise ValueError("vertex index is 1-based and must be >= 1")


RepPoint = Lambda | DiagZero


def eval_rep(point: RepPoint, a: CycleElement) -> np.ndarray:
    """Value of the representation at the given point.

    Lambda points give an n x n complex matrix, DiagZero points a 1 x 1.
    """
    n = a.n
    if isinstance(point, Lambda):
        lam = point.value
        w0 = lam**n
        out = np.empty((n, n), dtype=complex)
        for i in range(n):
            for j in range(n):
                f = a.entries[i][j]
                s = (j - i) % n
                # lam**0 == 1 also at lam == 0, matching the convention
                out[i, j] = (lam**s) * f.eval(w0) if not f.is_zero else 0.0
        return out
    if isinstance(point, DiagZero):
        if point.i > n:
            raise DimensionMismatch(
                f"vertex {point.i} out of range for n = {n}"
            )
        f = a.entries[point.i - 1][point.i - 1]
        c = f.coeffs[0] if len(f.coeffs) else 0j
        return np.array([[c]], dtype=complex)
    raise TypeError(f"not a representation point: {point!r}")


def eval_rep_at_unit_roots(a: CycleElement, m: int) -> np.ndarray:
    """Values at Lambda(exp(2*pi*i*t/m)) for t = 0..m-1, shape (m, n, n).

    Exact for any entry degree; exponents fold modulo m on the root grid.
    """
    if m < 1:
        raise ValueError("grid size must be >= 1")
    tensor = a.realized_coeffs()
    n, L = a.n, tensor.shape[2]
    folded = np.zeros((n, n, m), dtype=complex)
    idx = np.arange(L) % m
    np.add.at(folded, (slice(None), slice(None), idx), tensor)
    values = np.fft.ifft(folded, axis=2) * m
    return np.ascontiguousarray(np.moveaxis(values, 2, 0))


def phi_generator_values(
    n: int, lam: complex
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Images of the vertex and arrow generators at a Lambda point."""
    phi_e = []
    phi_Z = []
    for i in range(n):
        E = np.zeros((n, n), dtype=complex)
        E[i, i] = 1.0
        phi_e.append(E)
        A = np.zeros((n, n), dtype=complex)
        A[i, (i + 1) % n] += lam
        phi_Z.append(A)
    return phi_e, phi_Z


def kernel_sample(
    point: RepPoint,
    n: int,
    seed: int = 0,
    count: int = 10,
    deg: int = 6,
    scale: float = 1.0,
) -> list[CycleElement]:
    """Random elements of the kernel of the representation at the point.

    Lambda points away from the center: random elements multiplied entrywise
    by (w - lam**n).  At the center the kernel is larger than that principal
    ideal, so there the constant terms of all diagonal entries are removed
    instead.  DiagZero points: random elements with the constant term of the
    pinned diagonal entry removed.  Membership is checked internally.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        g = random_element(n, rng, deg=deg, scale=scale)
        if isinstance(point, Lambda) and abs(point.value) <= 1e-12:
            rows = [list(row) for row in g.entries]
            for i in range(n):
                c = rows[i][i].coeffs.copy()
                if len(c):
                    c[0] = 0.0
                rows[i][i] = Poly(c)
            k = CycleElement(n, tuple(tuple(r) for r in rows))
        elif isinstance(point, Lambda):
            factor = Poly([-(point.value**n), 1.0])
            rows = tuple(
                tuple(factor * p for p in row) for row in g.entries
            )
            k = CycleElement(n, rows)
        elif isinstance(point, DiagZero):
            if point.i > n:
                raise DimensionMismatch(
                    f"vertex {point.i} out of range for n = {n}"
                )
            i0 = point.i - 1
            rows = [list(row) for row in g.entries]
            c = rows[i0][i0].coeffs.copy()
            if len(c):
                c[0] = 0.0
            rows[i0][i0] = Poly(c)
            k = CycleElement(n, tuple(tuple(r) for r in rows))
        else:
            raise TypeError(f"not a representation point: {point!r}")
        assert np.max(np.abs(eval_rep(point, k))) <= 1e-12 * (1.0 + scale)
        out.append(k)
    return out


@dataclass(frozen=True)
class SemisimplicityVerdict:
    is_zero: bool
    max_abs: float
    witness: complex | None
    points: int


def semisimplicity_certificate(
    a: CycleElement, deg_max: int | None = None
) -> SemisimplicityVerdict:
    """Decide whether an element vanishes in all interior representations.

    Evaluates on n*(cap+2) points of the circle of radius 1/2, where cap is
    at least the element's own top entry degree, so a nonzero element of
    admissible degree cannot vanish on the whole grid.  Verdict threshold is
    max |entry| <= 1e-10.  Zero here is equivalent to being the zero element;
    separating points force triviality of this kind of radical.
    """
    n = a.n
    cap = max(a.max_degree, 0)
    if deg_max is not None:
        cap = max(cap, deg_max)
    m = n * (cap + 2)
    tensor = a.realized_coeffs()
    L = tensor.shape[2]
    assert L <= m, "grid smaller than realized degree"
    radius = 0.5
    scaled = tensor * (radius ** np.arange(L))
    padded = np.zeros((n, n, m), dtype=complex)
    padded[:, :, :L] = scaled
    values = np.fft.ifft(padded, axis=2) * m
    flat = np.max(np.abs(values), axis=(0, 1))
    worst = int(np.argmax(flat))
    max_abs = float(flat[worst])
    if max_abs <= 1e-10:
        return SemisimplicityVerdict(True, max_abs, None, m)
    witness = radius * np.exp(2j * np.pi * worst / m)
    return SemisimplicityVerdict(False, max_abs, complex(witness), m)


@dataclass(frozen=True)
class KernelSquareResult:
    success: bool
    budget: int
    residual: float
    pairs: tuple[tuple[CycleElement, CycleElement], ...]


def kernel_square_witness(
    point: DiagZero, k: CycleElement, budget: int = 2
) -> KernelSquareResult:
    """Try to write a kernel element as a sum of products of kernel elements.

    Spans the square of the kernel of the one-dimensional representation by
    products of kernel monomials with w-degree up to the budget and solves
    for coefficients by least squares.  Success means the reconstruction
    matches k coefficientwise within 1e-8.  For these characters the kernel
    equals its own square, so genuine kernel elements decompose.
    """
    if not isinstance(point, DiagZero):
        raise TypeError("kernel_square_witness needs a DiagZero point")
    n = k.n
    if point.i > n:
        raise DimensionMismatch(f"vertex {point.i} out of range for n = {n}")
    if float(np.max(np.abs(eval_rep(point, k)))) > 1e-12:
        raise ValueError("element is not in the kernel at this point")
    i0 = point.i - 1
    span = [
        monomial_elem(n, a + 1, b + 1, d)
        for a in range(n)
        for b in range(n)
        for d in range(budget + 1)
        if not (a == b == i0 and d == 0)
    ]
    prod_cap = 2 * budget + 1
    L = max(prod_cap + 1, k.max_degree + 1, 1)

    def vec(elem: CycleElement) -> np.ndarray:
        buf = np.zeros((n, n, L), dtype=complex)
        for i in range(n):
            for j in range(n):
                c = elem.entries[i][j].coeffs
                buf[i, j, : len(c)] = c
        return buf.ravel()

    cols = []
    pairs_idx = []
    for s, left in enumerate(span):
        for t, right in enumerate(span):
            prod = mul_elem(left, right, deg_max=prod_cap)
            if prod.is_zero:
                continue
            cols.append(vec(prod))
            pairs_idx.append((s, t))
    target = vec(k)
    if not cols:
        residual = float(np.max(np.abs(target)))
        return KernelSquareResult(residual <= 1e-8, budget, residual, ())
    A = np.stack(cols, axis=1)
    x, *_ = np.linalg.lstsq(A, target, rcond=None)
    residual = float(np.max(np.abs(A @ x - target)))
    if residual > 1e-8:
        return KernelSquareResult(False, budget, residual, ())
    pairs = tuple(
        (span[s] * complex(weight), span[t])
        for (s, t), weight in zip(pairs_idx, x)
        if abs(weight) > 1e-12
    )
    return KernelSquareResult(True, budget, residual, pairs)


def point_to_json(point: RepPoint) -> dict:
    if isinstance(point, Lambda):
        return {
            "kind": "lambda",
            "re": float(point.value.real),
            "im": float(point.value.imag),
        }
    if isinstance(point, DiagZero):
        return {"kind": "diag0", "i": int(point.i)}
    raise TypeError(f"not a representation point: {point!r}")


def point_from_json(data: dict) -> RepPoint:
    kind = data.get("kind")
    if kind == "lambda":
        return Lambda(complex(float(data["re"]), float(data.get("im", 0.0))))
    if kind == "diag0":
        return DiagZero(int(data["i"]))
    raise ValueError(f"unknown representation point kind: {kind!r}")


def matc_to_json(m: np.ndarray) -> list[list[float]]:
    flat = np.asarray(m, dtype=complex).ravel()
    return [[float(z.real), float(z.imag)] for z in flat]


def matc_from_json(data) -> np.ndarray:
    flat = np.array([complex(re, im) for re, im in data], dtype=complex)
    n = int(round(len(flat) ** 0.5))
    if n * n != len(flat):
        raise ValueError("matrix payload length is not a perfect square")
    return flat.reshape(n, n)
