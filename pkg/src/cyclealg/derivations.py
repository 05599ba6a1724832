"""Point derivations at representation points and their classification.

A point derivation at a representation point phi is a linear map D from the
algebra into matrices satisfying D(ab) = D(a) phi(b) + phi(a) D(b).  Such a
map is determined by its values on the 2n generators; ``GenDerivation``
stores those values and extends them to arbitrary elements along canonical
monomials, which walk the cycle with arrow steps.

The solvers below decide whether given derivation data is inner, i.e. of the
form a -> phi(a) X - X phi(a), produce the witness X when it is, certify
non-inner data through kernel samples, and build the explicit approximate
identity used at boundary points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import config
from .algebra import CycleElement, diagonal, mul_elem, random_element
from .errors import DimensionMismatch
from .poly import Poly
from .representations import (
    DiagZero,
    Lambda,
    RepPoint,
    eval_rep,
    phi_generator_values,
)

__all__ = [
    "GenDerivation",
    "delta_X",
    "F_point_derivation",
    "check_leibniz",
    "inner_solve",
    "InnerSolveResult",
    "kernel_vanishing_test",
    "KernelVanishing",
    "decompose_at_zero",
    "ZeroSplit",
    "decompose_experiment",
    "boundary_approx_identity",
    "canonical_kernel_elements",
]


def _as_locked(m, dim: int) -> np.ndarray:
    arr = np.array(m, dtype=complex)
    if arr.shape != (dim, dim):
        raise DimensionMismatch(
            f"derivation value has shape {arr.shape}, expected {(dim, dim)}"
        )
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class GenDerivation:
    """Derivation data at one representation point: values on generators.

    values_e[i] and values_Z[i] are the images of the i-th vertex idempotent
    and arrow element (0-based storage of the 1-based generator lists).
    Values are n x n at Lambda points, 1 x 1 at DiagZero points.
    """

    point: RepPoint
    values_e: tuple[np.ndarray, ...]
    values_Z: tuple[np.ndarray, ...]

    def __post_init__(self):
        n = len(self.values_e)
        if len(self.values_Z) != n or n < 1:
            raise DimensionMismatch("need one value per generator")
        if isinstance(self.point, DiagZero) and self.point.i > n:
            raise DimensionMismatch(
                f"vertex {self.point.i} out of range for n = {n}"
            )
        dim = n if isinstance(self.point, Lambda) else 1
        object.__setattr__(
            self, "values_e", tuple(_as_locked(v, dim) for v in self.values_e)
        )
        object.__setattr__(
            self, "values_Z", tuple(_as_locked(v, dim) for v in self.values_Z)
        )

    @property
    def n(self) -> int:
        return len(self.values_e)

    @classmethod
    def from_commutator(
        cls, point: RepPoint, X: np.ndarray, n: int
    ) -> GenDerivation:
        """The inner derivation a -> phi(a) X - X phi(a) on generators."""
        if isinstance(point, Lambda):
            phi_e, phi_Z = phi_generator_values(n, point.value)
        elif isinstance(point, DiagZero):
            # scalar representation: every commutator collapses to zero
            phi_e = [np.zeros((1, 1), complex) for _ in range(n)]
            phi_Z = [np.zeros((1, 1), complex) for _ in range(n)]
            X = np.zeros((1, 1), complex)
        else:
            raise TypeError(f"not a representation point: {point!r}")
        X = np.asarray(X, dtype=complex)
        return cls(
            point,
            tuple(p @ X - X @ p for p in phi_e),
            tuple(p @ X - X @ p for p in phi_Z),
        )

    def apply(self, a: CycleElement) -> np.ndarray:
        """Extend the generator values to an arbitrary element.

        Every admissible monomial is a path of arrow steps scaled by a
        coefficient; the Leibniz rule along the path collapses, at a Lambda
        point, to a closed form involving one column of D(Z_first), one row
        of D(Z_last) and the diagonal arrow readings in between.  At a
        DiagZero point every path of length >= 2 dies.
        """
        if a.n != self.n:
            raise DimensionMismatch("element and derivation sizes differ")
        if isinstance(self.point, Lambda):
            return self._apply_lambda(a)
        return self._apply_diag0(a)

    def _apply_lambda(self, a: CycleElement) -> np.ndarray:
        lam = self.point.value
        n = self.n
        out = np.zeros((n, n), dtype=complex)
        # arrow readings s_j = D(Z_j)[j, j+1] and cyclic prefix sums
        sZ = np.array(
            [self.values_Z[j][j, (j + 1) % n] for j in range(n)],
            dtype=complex,
        )
        csum = np.zeros(2 * n + 1, dtype=complex)
        csum[1:] = np.cumsum(np.concatenate([sZ, sZ]))
        total = sZ.sum()
        for i in range(n):
            for j in range(n):
                f = a.entries[i][j]
                if f.is_zero:
                    continue
                s = (j - i) % n
                for d in range(len(f.coeffs)):
                    c = f.coeffs[d]
                    if c == 0:
                        continue
                    m = s + d * n
                    if m == 0:
                        out += c * self.values_e[i]
                    elif m == 1:
                        out += c * self.values_Z[i]
                    else:
                        lp = lam ** (m - 1)
                        if lp == 0:
                            continue
                        w = c * lp
                        first = self.values_Z[i]
                        last_idx = (i + m - 1) % n
                        last = self.values_Z[last_idx]
                        out[:, j] += w * first[:, (i + 1) % n]
                        out[i, :] += w * last[last_idx, :]
                        interior = m - 2
                        if interior:
                            full, rem = divmod(interior, n)
                            start = (i + 1) % n
                            mid = full * total + (
                                csum[start + rem] - csum[start]
                            )
                            out[i, j] += w * mid
        return out

    def _apply_diag0(self, a: CycleElement) -> np.ndarray:
        n = self.n
        out = np.zeros((1, 1), dtype=complex)
        for i in range(n):
            for j in range(n):
                f = a.entries[i][j]
                if f.is_zero:
                    continue
                s = (j - i) % n
                if s == 0 and len(f.coeffs):
                    out += f.coeffs[0] * self.values_e[i]
                # the unique length-1 monomial at (i, j): s=1, or w itself
                # when n = 1
                d1 = (1 - s) // n if (1 - s) % n == 0 else -1
                if d1 >= 0 and d1 < len(f.coeffs):
                    out += f.coeffs[d1] * self.values_Z[i]
        return out

    def to_json(self) -> dict:
        from .representations import matc_to_json, point_to_json

        return {
            "point": point_to_json(self.point),
            "values_e": [matc_to_json(v) for v in self.values_e],
            "values_Z": [matc_to_json(v) for v in self.values_Z],
        }


def gen_derivation_from_json(data: dict) -> GenDerivation:
    from .representations import matc_from_json, point_from_json

    point = point_from_json(data["point"])
    values_e = tuple(matc_from_json(v) for v in data["values_e"])
    values_Z = tuple(matc_from_json(v) for v in data["values_Z"])
    return GenDerivation(point, values_e, values_Z)


def delta_X(point: RepPoint, X: np.ndarray, a: CycleElement) -> np.ndarray:
    """The inner derivation phi(a) X - X phi(a), evaluated directly."""
    p = eval_rep(point, a)
    X = np.asarray(X, dtype=complex)
    return p @ X - X @ p


def F_point_derivation(lam: complex, a: CycleElement) -> np.ndarray:
    """Entrywise z-derivative of the realized matrix at z = lam.

    A point derivation at Lambda(lam) whose value on arrow elements is the
    unit matrix pattern; for |lam| < 1 it is the canonical non-inner
    example, and at lam = 0 it sees exactly the arrow coefficients.
    """
    tensor = a.realized_coeffs()
    L = tensor.shape[2]
    if L <= 1:
        return np.zeros((a.n, a.n), dtype=complex)
    der = tensor[:, :, 1:] * np.arange(1, L)
    return np.polynomial.polynomial.polyval(lam, np.moveaxis(der, 2, 0))


def _spectral(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, 2))


def check_leibniz(
    D: Callable[[CycleElement], np.ndarray],
    point: RepPoint,
    n: int,
    trials: int = 200,
    seed: int = 0,
    deg: int = 6,
    stop_above: float | None = None,
) -> float:
    """Max Leibniz residual of D over random normalized element pairs.

    Residual of a pair (a, b) is the spectral norm of
    D(ab) - D(a) phi(b) - phi(a) D(b).  Pairs are normalized so entry
    coefficient mass is at most 1, keeping the float noise floor well under
    1e-12.  ``stop_above`` allows early exit once the bound is witnessed.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        a = random_element(n, rng, deg=deg, normalize=True)
        b = random_element(n, rng, deg=deg, normalize=True)
        ab = mul_elem(a, b, deg_max=2 * deg + 2)
        resid = D(ab) - D(a) @ eval_rep(point, b) - eval_rep(point, a) @ D(b)
        worst = max(worst, _spectral(resid))
        if stop_above is not None and worst >= stop_above:
            break
    return worst


@dataclass(frozen=True)
class InnerSolveResult:
    point: RepPoint
    X: np.ndarray
    residual: float
    consistent: bool
    tol: float
    normalization: str = "X[1,1] = 0"

    def to_json(self) -> dict:
        from .representations import matc_to_json, point_to_json

        return {
            "point": point_to_json(self.point),
            "X": matc_to_json(self.X),
            "residual": self.residual,
            "consistent": self.consistent,
            "tol": self.tol,
            "normalization": self.normalization,
        }


def _inner_solve_core(
    phi_list: Sequence[np.ndarray],
    value_list: Sequence[np.ndarray],
    n: int,
) -> tuple[np.ndarray, float]:
    """Least squares for phi(g) X - X phi(g) = D(g) over all generators g.

    Returns the minimum-norm solution shifted so X[0, 0] = 0 exactly (the
    identity is central, so the shift never changes any commutator) and the
    worst spectral residual over the generator equations.
    """
    eye = np.eye(n, dtype=complex)
    blocks = [
        np.kron(p, eye) - np.kron(eye, p.T) for p in phi_list
    ]
    A = np.concatenate(blocks, axis=0)
    b = np.concatenate([v.ravel() for v in value_list])
    x, *_ = np.linalg.lstsq(A, b, rcond=None)
    X = x.reshape(n, n)
    X = X - X[0, 0] * eye
    residual = max(
        _spectral(p @ X - X @ p - v) for p, v in zip(phi_list, value_list)
    )
    return X, residual


def inner_solve(D: GenDerivation, tol: float | None = None) -> InnerSolveResult:
    """Decide whether derivation data at a Lambda point is inner.

    Solves the commutator equations on all 2n generators by least squares
    and reports the post-hoc worst-case residual; data counts as inner when
    the residual is at most the tolerance (default config.TOL_INNER).
    """
    if not isinstance(D.point, Lambda):
        raise ValueError("inner_solve needs derivation data at a Lambda point")
    tol = config.TOL_INNER if tol is None else tol
    n = D.n
    phi_e, phi_Z = phi_generator_values(n, D.point.value)
    X, residual = _inner_solve_core(
        phi_e + phi_Z, list(D.values_e) + list(D.values_Z), n
    )
    return InnerSolveResult(D.point, X, residual, residual <= tol, tol)


@dataclass(frozen=True)
class KernelVanishing:
    max_norm: float
    witness_index: int
    witness: CycleElement | None
    values: tuple[float, ...]


def kernel_vanishing_test(
    D: Callable[[CycleElement], np.ndarray],
    samples: Sequence[CycleElement],
) -> KernelVanishing:
    """Max of the spectral norm of D over the given kernel samples.

    Inner derivations vanish on the kernel of their point, so a sample with
    a large value certifies that no inner witness exists.
    """
    values = tuple(_spectral(D(k)) for k in samples)
    if not values:
        return KernelVanishing(0.0, -1, None, ())
    worst = int(np.argmax(values))
    return KernelVanishing(values[worst], worst, samples[worst], values)


@dataclass(frozen=True)
class ZeroSplit:
    """Splitting of derivation data at Lambda(0) into inner + arrow parts."""

    d0: GenDerivation
    d1: GenDerivation
    d0_solve: InnerSolveResult


def decompose_at_zero(D: GenDerivation) -> ZeroSplit:
    """Split data at the center into an inner part and an arrow part.

    d0 keeps the vertex values and extends with zero on arrows; d1 keeps the
    arrow values and kills everything else.  At Lambda(0) every monomial of
    length >= 2 is annihilated by the extension, so D = d0 + d1 exactly on
    all elements and d1 is already determined by the n arrow values alone.
    The inner part is solved for a witness.
    """
    if not isinstance(D.point, Lambda) or abs(D.point.value) > 1e-15:
        raise ValueError("decomposition is specific to the point lambda = 0")
    n = D.n
    zero_vals = tuple(np.zeros((n, n), dtype=complex) for _ in range(n))
    d0 = GenDerivation(D.point, D.values_e, zero_vals)
    d1 = GenDerivation(D.point, zero_vals, D.values_Z)
    return ZeroSplit(d0, d1, inner_solve(d0))


def decompose_experiment(D: GenDerivation, seed: int = 0) -> dict:
    """Try the center splitting at an interior point and report what breaks.

    At lambda != 0 the arrow part of the data, extended on its own, need not
    satisfy the Leibniz rule, and the vertex part need not be inner.  This
    runs both checks and returns the measurements without interpreting them.
    """
    if not isinstance(D.point, Lambda):
        raise ValueError("experiment needs data at a Lambda point")
    n = D.n
    zero_vals = tuple(np.zeros((n, n), dtype=complex) for _ in range(n))
    d0 = GenDerivation(D.point, D.values_e, zero_vals)
    d1 = GenDerivation(D.point, zero_vals, D.values_Z)
    d0_solve = inner_solve(d0)
    d1_solve = inner_solve(d1)
    return {
        "lambda": [D.point.value.real, D.point.value.imag],
        "d0_leibniz": check_leibniz(d0.apply, D.point, n, trials=40, seed=seed),
        "d1_leibniz": check_leibniz(
            d1.apply, D.point, n, trials=40, seed=seed + 1
        ),
        "d0_inner_residual": d0_solve.residual,
        "d0_consistent": d0_solve.consistent,
        "d1_inner_residual": d1_solve.residual,
        "d1_consistent": d1_solve.consistent,
    }


def canonical_kernel_elements(n: int, lam: complex) -> list[CycleElement]:
    """Three unit-scale elements of the kernel at Lambda(lam).

    The vanishing factor (w - lam**n) placed on the full diagonal, on the
    first vertex alone, and on the first arrow position.
    """
    w0 = lam**n
    factor = Poly([-w0, 1.0])
    full_diag = diagonal(n, factor)
    at_vertex = CycleElement(
        n,
        tuple(
            tuple(
                factor if i == j == 0 else Poly() for j in range(n)
            )
            for i in range(n)
        ),
    )
    if n == 1:
        arrow_entry = factor.shift(1)
        arrow_pos = (0, 0)
    else:
        arrow_entry = factor
        arrow_pos = (0, 1)
    at_arrow = CycleElement(
        n,
        tuple(
            tuple(
                arrow_entry if (i, j) == arrow_pos else Poly()
                for j in range(n)
            )
            for i in range(n)
        ),
    )
    return [full_diag, at_vertex, at_arrow]


def boundary_approx_identity(
    lam: complex,
    k: int,
    n: int,
    kernel_elems: Sequence[CycleElement] = (),
    norm_grid: int = 4099,
) -> tuple[CycleElement, dict]:
    """Approximate identity for the kernel ideal at a boundary point.

    For |lam| = 1 the diagonal element F_k with entry
    1 - ((1 + conj(lam**n) w) / 2)**k lies in the kernel at Lambda(lam),
    stays uniformly bounded by 2 on the circle, and F_k a -> a for kernel
    elements a as k grows.  Returns F_k and a report with its grid norm and
    the residuals ||F_k a - a|| for each supplied kernel element.  The
    default grid size is prime so it cannot phase-lock with the k-th power
    pattern and under-read the norm.
    """
    if abs(abs(complex(lam)) - 1.0) > 1e-12:
        raise ValueError("approximate identity lives over boundary points")
    if k < 1:
        raise ValueError("index k must be >= 1")
    w0 = complex(lam) ** n
    bump = Poly([0.5, 0.5 * np.conj(w0)]) ** k
    h = Poly.one() - bump
    # h(w0) is 0 exactly; the stored tail is trimmed and rounded, so shift
    # the constant coefficient below the canonicalization threshold to keep
    # the kernel membership at float precision
    defect = complex(h.eval(w0))
    coeffs = h.coeffs.copy() if len(h.coeffs) else np.zeros(1, dtype=complex)
    coeffs[0] -= defect
    h = Poly(coeffs)
    F = diagonal(n, h)
    point = Lambda(lam)
    report = {
        "k": k,
        "lambda": [complex(lam).real, complex(lam).imag],
        "norm_F": F.norm(norm_grid),
        "kernel_value_F": float(np.max(np.abs(eval_rep(point, F)))),
        "residuals": [],
        "sample_kernel_values": [],
    }
    for a in kernel_elems:
        cap = h.degree + a.max_degree + 2
        diff = mul_elem(F, a, deg_max=cap) - a
        report["residuals"].append(diff.norm(norm_grid))
        report["sample_kernel_values"].append(
            float(np.max(np.abs(eval_rep(point, a))))
        )
    return F, report
