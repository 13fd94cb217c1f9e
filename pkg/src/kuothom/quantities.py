"""Kuo and Thom quantities of a polynomial map germ.

For a germ f = (f_1, ..., f_p): (R^n, 0) -> (R^p, 0) with p <= n, the two
quantities compared throughout this package are

    kuo(f, m, x)  = |x|^m  * sum over p-subsets I of |det J_I(x)|^m + |f(x)|^m
    thom(f, m, x) = sum over (p+1)-subsets I of |det JT_I(x)|^m    + |f(x)|^m

where J_I is the p x p submatrix of the Jacobian of f using the columns in
I, and JT_I is the (p+1) x (p+1) submatrix of the Jacobian of (f, rho)
with rho(x) = |x|^2.  Norms are Euclidean.  When n == p there are no
(p+1)-subsets and the Thom quantity reduces to |f(x)|^m.

The proof-oriented split at a point is also exposed:

    u = |f(x)|        v = |x| * sum |det J_I(x)|     w = sum |det JT_I(x)|
    h = v + u         g = w + u

Minors are exact symbolic polynomials obtained by cofactor expansion; the
float path evaluates those exact minors and only then takes absolute
values.  For even m the quantities are themselves polynomials, which gives
an exact rational evaluation route that is kept deliberately independent
of the float route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Sequence

import numpy as np

from .poly import Polynomial

IndexTuple = tuple[int, ...]


def rho_polynomial(nvars: int) -> Polynomial:
    """The squared Euclidean norm as a polynomial."""
    acc = Polynomial.zero(nvars)
    for i in range(nvars):
        acc = acc + Polynomial.variable(nvars, i) ** 2
    return acc


def determinant(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact determinant of a square matrix of polynomials.

    Cofactor expansion along the first row; fine for the small sizes
    (p + 1 <= n, with n small) that occur here.
    """
    size = len(rows)
    if size == 0:
        raise ValueError("empty matrix")
    for row in rows:
        if len(row) != size:
            raise ValueError("matrix must be square")
    nvars = rows[0][0].nvars
    if size == 1:
        return rows[0][0]
    acc = Polynomial.zero(nvars)
    for j, entry in enumerate(rows[0]):
        if entry.is_zero:
            continue
        minor = [
            [row[k] for k in range(size) if k != j]
            for row in rows[1:]
        ]
        cofactor = entry * determinant(minor)
        acc = acc + cofactor if j % 2 == 0 else acc - cofactor
    return acc


@dataclass(frozen=True)
class MapGerm:
    """A polynomial map germ (R^n, 0) -> (R^p, 0), p <= n.

    Every component must vanish at the origin.  `jet_degree` is an
    optional bookkeeping field for the jet a germ is meant to represent;
    no operation here truncates implicitly.
    """

    components: tuple[Polynomial, ...]
    jet_degree: int | None = None

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("a map germ needs at least one component")
        nvars = comps[0].nvars
        for c in comps:
            if c.nvars != nvars:
                raise ValueError("all components must share the same variable count")
            if not c.vanishes_at_origin:
                raise ValueError("every component must vanish at the origin")
        if len(comps) > nvars:
            raise ValueError(
                f"target dimension {len(comps)} exceeds source dimension {nvars}"
            )
        if self.jet_degree is not None and self.jet_degree < 1:
            raise ValueError("jet degree must be positive")

    @property
    def n(self) -> int:
        return self.components[0].nvars

    @property
    def p(self) -> int:
        return len(self.components)


def map_germ(components: Iterable[Polynomial], jet_degree: int | None = None) -> MapGerm:
    return MapGerm(tuple(components), jet_degree)


@dataclass(frozen=True)
class MinorCache:
    """Exact Jacobian minors of a germ.

    p_minors has one entry per p-subset of columns (C(n, p) entries) and
    thom_minors one entry per (p+1)-subset of columns of the Jacobian of
    (f, rho) (C(n, p+1) entries, none when n == p).  Index tuples are
    0-based and strictly increasing.
    """

    n: int
    p: int
    p_minors: tuple[tuple[IndexTuple, Polynomial], ...]
    thom_minors: tuple[tuple[IndexTuple, Polynomial], ...]
    rho: Polynomial


@lru_cache(maxsize=None)
def build_minors(germ: MapGerm) -> MinorCache:
    """Compute and cache all Jacobian minors of a germ."""
    n, p = germ.n, germ.p
    jac = [[comp.partial(i) for i in range(n)] for comp in germ.components]
    rho = rho_polynomial(n)
    rho_row = [rho.partial(i) for i in range(n)]

    p_minors = tuple(
        (cols, determinant([[jac[r][c] for c in cols] for r in range(p)]))
        for cols in combinations(range(n), p)
    )
    thom_minors = tuple(
        (cols, determinant([[row[c] for c in cols] for row in jac] + [[rho_row[c] for c in cols]]))
        for cols in combinations(range(n), p + 1)
    )
    return MinorCache(n=n, p=p, p_minors=p_minors, thom_minors=thom_minors, rho=rho)


# ---------------------------------------------------------------------------
# Pointwise evaluation, float route


def _check_point(germ: MapGerm, x: Sequence[float]) -> None:
    if len(x) != germ.n:
        raise ValueError(f"point has {len(x)} coordinates, germ expects {germ.n}")


def _component_norm(germ: MapGerm, x: Sequence[float]) -> float:
    return math.hypot(*(c.eval_float(x) for c in germ.components))


def kuo_value(germ: MapGerm, m: int, x: Sequence[float]) -> float:
    """The Kuo quantity at a point, float route."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    _check_point(germ, x)
    cache = build_minors(germ)
    norm_x = math.hypot(*x)
    minor_sum = sum(abs(poly.eval_float(x)) ** m for _, poly in cache.p_minors)
    return norm_x**m * minor_sum + _component_norm(germ, x) ** m


def thom_value(germ: MapGerm, m: int, x: Sequence[float]) -> float:
    """The Thom quantity at a point, float route."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    _check_point(germ, x)
    cache = build_minors(germ)
    minor_sum = sum(abs(poly.eval_float(x)) ** m for _, poly in cache.thom_minors)
    return minor_sum + _component_norm(germ, x) ** m


@dataclass(frozen=True)
class KTEvaluation:
    """Pointwise values of the proof split and of both quantities.

    u = |f(x)|, v = |x| * sum of absolute p-minors, w = sum of absolute
    Thom minors, h = v + u, g = w + u.  K and T are the Kuo and Thom
    quantities for the recorded power m.
    """

    point: tuple[float, ...]
    m: int
    u: float
    v: float
    w: float
    h: float
    g: float
    K: float
    T: float


def eval_uvwhg(germ: MapGerm, x: Sequence[float], m: int = 1) -> KTEvaluation:
    """Evaluate the proof split u, v, w, h, g (and K, T for `m`) at x."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    _check_point(germ, x)
    cache = build_minors(germ)
    u = _component_norm(germ, x)
    norm_x = math.hypot(*x)
    v = norm_x * sum(abs(poly.eval_float(x)) for _, poly in cache.p_minors)
    w = sum(abs(poly.eval_float(x)) for _, poly in cache.thom_minors)
    return KTEvaluation(
        point=tuple(float(c) for c in x),
        m=m,
        u=u,
        v=v,
        w=w,
        h=v + u,
        g=w + u,
        K=kuo_value(germ, m, x),
        T=thom_value(germ, m, x),
    )


# ---------------------------------------------------------------------------
# Exact route (even m), used as an independent oracle for the float route


def _require_even(m: int) -> None:
    if m < 2 or m % 2:
        raise ValueError("the exact route needs a positive even m")


def kuo_polynomial(germ: MapGerm, m: int) -> Polynomial:
    """For even m the Kuo quantity is the polynomial rho^(m/2) * sum of
    m-th powers of the p-minors plus (sum of squared components)^(m/2)."""
    _require_even(m)
    cache = build_minors(germ)
    half = m // 2
    minors = Polynomial.zero(germ.n)
    for _, poly in cache.p_minors:
        minors = minors + poly**m
    comp_sq = Polynomial.zero(germ.n)
    for c in germ.components:
        comp_sq = comp_sq + c**2
    return cache.rho**half * minors + comp_sq**half


def thom_polynomial(germ: MapGerm, m: int) -> Polynomial:
    """Even-m Thom quantity as an exact polynomial."""
    _require_even(m)
    cache = build_minors(germ)
    half = m // 2
    minors = Polynomial.zero(germ.n)
    for _, poly in cache.thom_minors:
        minors = minors + poly**m
    comp_sq = Polynomial.zero(germ.n)
    for c in germ.components:
        comp_sq = comp_sq + c**2
    return minors + comp_sq**half


def kuo_value_exact(germ: MapGerm, m: int, x: Sequence[object]) -> Fraction:
    """Exact Kuo quantity at a rational point (even m only)."""
    _require_even(m)
    _check_point(germ, x)
    cache = build_minors(germ)
    half = m // 2
    norm_sq = sum((Fraction(c) ** 2 for c in x), Fraction(0))
    minor_sum = sum((poly.eval_exact(x) ** m for _, poly in cache.p_minors), Fraction(0))
    comp_sq = sum((c.eval_exact(x) ** 2 for c in germ.components), Fraction(0))
    return norm_sq**half * minor_sum + comp_sq**half


def thom_value_exact(germ: MapGerm, m: int, x: Sequence[object]) -> Fraction:
    """Exact Thom quantity at a rational point (even m only)."""
    _require_even(m)
    _check_point(germ, x)
    cache = build_minors(germ)
    half = m // 2
    minor_sum = sum((poly.eval_exact(x) ** m for _, poly in cache.thom_minors), Fraction(0))
    comp_sq = sum((c.eval_exact(x) ** 2 for c in germ.components), Fraction(0))
    return minor_sum + comp_sq**half


def kuo_m1_at_least(germ: MapGerm, x: Sequence[object], bound: object) -> bool:
    """Exact decision of kuo(f, 1, x) >= bound at a rational point.

    kuo(f, 1, x) = sqrt(X)*s + sqrt(U) with X = |x|^2, s the (rational)
    sum of absolute p-minors and U = |f(x)|^2, so the comparison against a
    rational bound reduces to rational arithmetic: writing t1 = X*s^2 and
    t2 = U, the inequality sqrt(t1) + sqrt(t2) >= b holds iff b <= 0, or
    b^2 - t1 - t2 <= 0, or 4*t1*t2 >= (b^2 - t1 - t2)^2.
    """
    _check_point(germ, x)
    b = bound if isinstance(bound, Fraction) else Fraction(bound)
    if b <= 0:
        return True
    cache = build_minors(germ)
    xs = [v if isinstance(v, Fraction) else Fraction(v) for v in x]
    norm_sq = sum((v**2 for v in xs), Fraction(0))
    s = sum((abs(poly.eval_exact(xs)) for _, poly in cache.p_minors), Fraction(0))
    t1 = norm_sq * s * s
    t2 = sum((c.eval_exact(xs) ** 2 for c in germ.components), Fraction(0))
    rhs = b * b - t1 - t2
    if rhs <= 0:
        return True
    return 4 * t1 * t2 >= rhs * rhs


# ---------------------------------------------------------------------------
# Ideal generators


def ideal_generators_kuo(germ: MapGerm) -> tuple[Polynomial, ...]:
    """Components of f together with all p-minors of its Jacobian."""
    cache = build_minors(germ)
    return tuple(germ.components) + tuple(poly for _, poly in cache.p_minors)


def ideal_generators_thom(germ: MapGerm) -> tuple[Polynomial, ...]:
    """Components of f together with all (p+1)-minors of the Jacobian of (f, rho)."""
    cache = build_minors(germ)
    return tuple(germ.components) + tuple(poly for _, poly in cache.thom_minors)


# ---------------------------------------------------------------------------
# Vectorized float evaluation over arrays of points


def eval_many(p: Polynomial, pts: np.ndarray) -> np.ndarray:
    """Evaluate a polynomial at the rows of pts (shape (N, nvars)).

    Terms are accumulated in descending graded lexicographic order, the
    same order as scalar float evaluation.
    """
    pts = np.asarray(pts, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != p.nvars:
        raise ValueError(f"expected an (N, {p.nvars}) array, got {pts.shape}")
    out = np.zeros(pts.shape[0])
    for mono, coeff in p.sorted_terms():
        term = np.full(pts.shape[0], float(coeff))
        for i, e in enumerate(mono):
            if e == 1:
                term *= pts[:, i]
            elif e > 1:
                term *= pts[:, i] ** e
        out += term
    return out


def component_norm_values(germ: MapGerm, pts: np.ndarray) -> np.ndarray:
    """|f| at the rows of pts."""
    acc = np.zeros(len(pts))
    for c in germ.components:
        acc += eval_many(c, pts) ** 2
    return np.sqrt(acc)


def minor_abs_sum_values(germ: MapGerm, pts: np.ndarray) -> np.ndarray:
    """Sum of absolute p-minors at the rows of pts."""
    cache = build_minors(germ)
    acc = np.zeros(len(pts))
    for _, poly in cache.p_minors:
        acc += np.abs(eval_many(poly, pts))
    return acc


def thom_abs_sum_values(germ: MapGerm, pts: np.ndarray) -> np.ndarray:
    """Sum of absolute Thom minors at the rows of pts."""
    cache = build_minors(germ)
    acc = np.zeros(len(pts))
    for _, poly in cache.thom_minors:
        acc += np.abs(eval_many(poly, pts))
    return acc


def gradient_norm_values(germ: MapGerm, pts: np.ndarray) -> np.ndarray:
    """Euclidean gradient norm for a single-component germ."""
    if germ.p != 1:
        raise ValueError("gradient norm is defined here only for p == 1")
    acc = np.zeros(len(pts))
    for _, poly in build_minors(germ).p_minors:
        acc += eval_many(poly, pts) ** 2
    return np.sqrt(acc)


def kuo_values(germ: MapGerm, m: int, pts: np.ndarray) -> np.ndarray:
    """Kuo quantity at the rows of pts."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    pts = np.asarray(pts, dtype=float)
    cache = build_minors(germ)
    norms = np.sqrt(np.sum(pts * pts, axis=1))
    acc = np.zeros(len(pts))
    for _, poly in cache.p_minors:
        acc += np.abs(eval_many(poly, pts)) ** m
    return norms**m * acc + component_norm_values(germ, pts) ** m


def thom_values(germ: MapGerm, m: int, pts: np.ndarray) -> np.ndarray:
    """Thom quantity at the rows of pts."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    pts = np.asarray(pts, dtype=float)
    cache = build_minors(germ)
    acc = np.zeros(len(pts))
    for _, poly in cache.thom_minors:
        acc += np.abs(eval_many(poly, pts)) ** m
    return acc + component_norm_values(germ, pts) ** m


QUANTITIES: dict[str, Callable[[MapGerm, int, np.ndarray], np.ndarray]] = {
    "kuo": kuo_values,
    "thom": thom_values,
}
