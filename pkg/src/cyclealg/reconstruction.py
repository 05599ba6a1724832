"""Reconstruction of global inner witnesses from boundary data.

A global derivation D on the algebra, given by its values on the 2n
generators, localizes at every boundary point lambda to point-derivation
data.  When each localization is inner, the pointwise witnesses X(lambda)
assemble along a root-of-unity grid into matrix functions; trigonometric
interpolation then recovers a single element X with D(a) = a X - X a,
provided the data really came from a derivation of the algebra.  The n = 1
algebra has no off-diagonal room and witnesses collapse to scalars, so the
pipeline certifies an inner witness only for D = 0 there.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import config
from .algebra import (
    CycleElement,
    element_from_json,
    gen_e,
    gen_Z,
    identity,
    monomial_elem,
    mul_elem,
    norm,
    parse_realized,
    zero,
)
from .derivations import GenDerivation, _spectral as _spec_norm
from .errors import DegreeOverflow, DimensionMismatch, NotLocallyInner
from .poly import Poly, interpolate_roots_of_unity
from .representations import (
    Lambda,
    eval_rep,
    eval_rep_at_unit_roots,
    matc_from_json,
    matc_to_json,
    phi_generator_values,
)

__all__ = [
    "GlobalDerivation",
    "localize",
    "solve_boundary_field",
    "BoundaryField",
    "reconstruct_witness",
    "verify_global_inner",
    "VerifyReport",
]

Letter = tuple[str, int]


@dataclass(frozen=True, eq=False)
class GlobalDerivation:
    """Algebra-valued derivation data on the 2n generators.

    values_e[i] and values_Z[i] are elements of the algebra, the images of
    the 1-based generators gen_e(n, i+1) and gen_Z(n, i+1).
    """

    n: int
    values_e: tuple[CycleElement, ...]
    values_Z: tuple[CycleElement, ...]
    _monomial_cache: dict = field(
        default_factory=dict, repr=False, compare=False
    )

    def __post_init__(self):
        if self.n < 1:
            raise DimensionMismatch("cycle size must be >= 1")
        if len(self.values_e) != self.n or len(self.values_Z) != self.n:
            raise DimensionMismatch("need one value per generator")
        for v in (*self.values_e, *self.values_Z):
            if v.n != self.n:
                raise DimensionMismatch("value lives over the wrong cycle")
        object.__setattr__(
            self, "values_e", tuple(self.values_e)
        )
        object.__setattr__(
            self, "values_Z", tuple(self.values_Z)
        )

    @classmethod
    def from_commutator(cls, X0: CycleElement) -> GlobalDerivation:
        """The inner derivation a -> a X0 - X0 a on generators."""
        n = X0.n
        cap = max(config.DEG_MAX, X0.max_degree + 2)

        def bracket(g: CycleElement) -> CycleElement:
            return mul_elem(g, X0, deg_max=cap) - mul_elem(X0, g, deg_max=cap)

        return cls(
            n,
            tuple(bracket(gen_e(n, i + 1)) for i in range(n)),
            tuple(bracket(gen_Z(n, i + 1)) for i in range(n)),
        )

    @property
    def value_degree(self) -> int:
        """Top entry degree over all generator values (-1 when all zero)."""
        return max(
            v.max_degree for v in (*self.values_e, *self.values_Z)
        )

    def _monomial_value(self, i: int, m: int) -> CycleElement:
        """D on the canonical path monomial starting at vertex i (0-based)
        with m arrow steps, built by the Leibniz rule along the path."""
        key = (i, m)
        hit = self._monomial_cache.get(key)
        if hit is not None:
            return hit
        n = self.n
        if m == 0:
            value = self.values_e[i]
        else:
            prev = self._monomial_value(i, m - 1)
            arrow_idx = (i + m - 1) % n
            arrow = gen_Z(n, arrow_idx + 1)
            prefix = _path_monomial(n, i, m - 1)
            cap = max(config.DEG_MAX, self.value_degree + m // n + 2)
            value = mul_elem(prev, arrow, deg_max=cap) + mul_elem(
                prefix, self.values_Z[arrow_idx], deg_max=cap
            )
        self._monomial_cache[key] = value
        return value

    def apply(self, a: CycleElement) -> CycleElement:
        """Extend the generator values to an arbitrary element."""
        if a.n != self.n:
            raise DimensionMismatch("element and derivation sizes differ")
        n = self.n
        out = zero(n)
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
                    out = out + self._monomial_value(i, s + d * n) * c
        return out

    def apply_word(self, word: list[Letter]) -> CycleElement:
        """D on a product of generators; letters are ("e"|"Z", 1-based i)."""
        elem = _word_element(self.n, word)
        return self.apply(elem)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "values_e": [v.to_json() for v in self.values_e],
            "values_Z": [v.to_json() for v in self.values_Z],
        }


def global_derivation_from_json(data: dict) -> GlobalDerivation:
    n = int(data["n"])
    return GlobalDerivation(
        n,
        tuple(element_from_json(v) for v in data["values_e"]),
        tuple(element_from_json(v) for v in data["values_Z"]),
    )


def _path_monomial(n: int, i: int, m: int) -> CycleElement:
    """The product of m consecutive arrows starting at vertex i (0-based)."""
    j = (i + m) % n
    power = (m - ((j - i) % n)) // n
    return monomial_elem(n, i + 1, j + 1, power)


def _word_element(n: int, word: list[Letter]) -> CycleElement:
    elem = identity(n)
    for kind, idx in word:
        g = gen_e(n, idx) if kind == "e" else gen_Z(n, idx)
        elem = mul_elem(elem, g, deg_max=max(config.DEG_MAX, len(word) + 2))
    return elem


def localize(D: GlobalDerivation, lam: complex) -> GenDerivation:
    """Point-derivation data at Lambda(lam) induced by a global derivation."""
    point = Lambda(lam)
    return GenDerivation(
        point,
        tuple(eval_rep(point, v) for v in D.values_e),
        tuple(eval_rep(point, v) for v in D.values_Z),
    )


@dataclass(frozen=True)
class BoundaryField:
    """Pointwise inner witnesses on a root-of-unity grid.

    X_at[t] solves the localized commutator equations at exp(2*pi*i*t/m),
    normalized so the (1, 1) entry vanishes.
    """

    n: int
    m: int
    X_at: np.ndarray
    max_residual: float

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "max_residual": self.max_residual,
            "X_at": [matc_to_json(self.X_at[t]) for t in range(self.m)],
        }


def boundary_field_from_json(data: dict) -> BoundaryField:
    n = int(data["n"])
    m = int(data["m"])
    X_at = np.stack([matc_from_json(x) for x in data["X_at"]])
    if X_at.shape != (m, n, n):
        raise ValueError("boundary field payload has wrong shape")
    return BoundaryField(n, m, X_at, float(data.get("max_residual", 0.0)))


def solve_boundary_field(
    D: GlobalDerivation,
    m: int | None = None,
    deg_max: int | None = None,
    tol: float | None = None,
) -> BoundaryField:
    """Solve for an inner witness at every point of a boundary grid.

    The grid has m points, default 4 * n * (cap + 2) where cap is the
    configured degree limit; that oversamples every entry degree the
    reconstruction can produce.  Fails fast with NotLocallyInner at the
    first grid point whose localized data admits no witness within
    tolerance.
    """
    tol = config.TOL_INNER if tol is None else tol
    n = D.n
    cap = config.DEG_MAX if deg_max is None else deg_max
    if m is None:
        m = 4 * n * (cap + 2)
    if m < 1:
        raise ValueError("grid size must be >= 1")
    # phi of the generator values at all grid points at once
    loc_e = [eval_rep_at_unit_roots(v, m) for v in D.values_e]
    loc_Z = [eval_rep_at_unit_roots(v, m) for v in D.values_Z]
    roots = np.exp(2j * np.pi * np.arange(m) / m)
    phi_e, _ = phi_generator_values(n, 0.0)
    arrow_pattern = []
    for i in range(n):
        P = np.zeros((n, n), dtype=complex)
        P[i, (i + 1) % n] = 1.0
        arrow_pattern.append(P)
    # the system is affine in lambda: vertex rows are constant, arrow rows
    # scale linearly, so the kron blocks are assembled once
    eye = np.eye(n, dtype=complex)
    e_rows = np.concatenate(
        [np.kron(p, eye) - np.kron(eye, p.T) for p in phi_e]
    )
    z_rows = np.concatenate(
        [np.kron(p, eye) - np.kron(eye, p.T) for p in arrow_pattern]
    )
    X_at = np.empty((m, n, n), dtype=complex)
    worst = 0.0
    for t in range(m):
        lam = roots[t]
        A = np.concatenate([e_rows, lam * z_rows])
        b = np.concatenate(
            [loc[t].ravel() for loc in loc_e]
            + [loc[t].ravel() for loc in loc_Z]
        )
        x, *_ = np.linalg.lstsq(A, b, rcond=None)
        X = x.reshape(n, n)
        X = X - X[0, 0] * eye
        residual = 0.0
        for i in range(n):
            residual = max(
                residual,
                _spec_norm(phi_e[i] @ X - X @ phi_e[i] - loc_e[i][t]),
                _spec_norm(
                    lam * (arrow_pattern[i] @ X - X @ arrow_pattern[i])
                    - loc_Z[i][t]
                ),
            )
        if residual > tol:
            raise NotLocallyInner(complex(lam), residual, tol)
        worst = max(worst, residual)
        X_at[t] = X
    return BoundaryField(n, m, X_at, worst)


def reconstruct_witness(
    field: BoundaryField, deg_max: int | None = None
) -> CycleElement:
    """Interpolate a boundary field into a single algebra element.

    Off-diagonal entries come from trigonometric interpolation of the
    corresponding witness entries.  Diagonal entries are rebuilt from the
    arrow commutator readings, telescoped from the normalized (1, 1) entry,
    which keeps the per-point centering of the witnesses out of the result.
    The interpolant must land back in the algebra (NotInAlgebra otherwise)
    with entry degrees within the cap (DegreeOverflow otherwise).
    """
    n, m = field.n, field.m
    cap = config.DEG_MAX if deg_max is None else deg_max
    realized: list[list[Poly]] = [
        [Poly() for _ in range(n)] for _ in range(n)
    ]
    for i in range(n):
        for j in range(n):
            if i != j:
                realized[i][j] = interpolate_roots_of_unity(field.X_at[:, i, j])
    # diagonal from arrow readings: the (i, i+1) commutator entry divided by
    # lambda equals X[i+1, i+1] - X[i, i] at each grid point
    diffs = [
        field.X_at[:, (i + 1) % n, (i + 1) % n] - field.X_at[:, i, i]
        for i in range(n - 1)
    ]
    running = np.zeros(m, dtype=complex)
    for i in range(n - 1):
        running = running + diffs[i]
        realized[i + 1][i + 1] = interpolate_roots_of_unity(running)
    element = parse_realized(realized, n)
    if element.max_degree > cap:
        raise DegreeOverflow(element.max_degree, cap)
    return element


@dataclass(frozen=True)
class VerifyReport:
    max_residual: float
    trials: int
    norm_grid: int

    @property
    def ok(self) -> bool:
        return self.max_residual <= 1e-8


def verify_global_inner(
    D: GlobalDerivation,
    X: CycleElement,
    trials: int = 50,
    seed: int = 0,
    max_len: int = 10,
    norm_grid: int = config.NORM_GRID,
) -> VerifyReport:
    """Check D(a) = a X - X a on random generator words.

    Words draw letters uniformly from the 2n generators with length up to
    max_len and a random unit-box scalar coefficient; the residual is the
    grid norm of D(word) - (word X - X word).
    """
    if X.n != D.n:
        raise DimensionMismatch("witness lives over the wrong cycle")
    rng = np.random.default_rng(seed)
    n = D.n
    cap = max(
        config.DEG_MAX, D.value_degree + X.max_degree + max_len + 4
    )
    worst = 0.0
    for _ in range(trials):
        length = int(rng.integers(1, max_len + 1))
        word: list[Letter] = []
        for _ in range(length):
            idx = int(rng.integers(1, n + 1))
            kind = "e" if rng.uniform() < 0.5 else "Z"
            word.append((kind, idx))
        coeff = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        elem = _word_element(n, word) * coeff
        direct = mul_elem(elem, X, deg_max=cap) - mul_elem(
            X, elem, deg_max=cap
        )
        resid = D.apply(elem) - direct
        worst = max(worst, norm(resid, norm_grid))
    return VerifyReport(worst, trials, norm_grid)
