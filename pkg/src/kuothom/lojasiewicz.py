"""Lojasiewicz-type exponent estimation and sufficiency condition verdicts.

Every check in this module decides an inequality of the shape

    F(x) >= C * |x|^target    for some C > 0 near the origin

by scanning minima of F on a decreasing ladder of spheres and fitting the
slope of log(min) against log(radius).  The verdict holds when the fitted
slope is at most target + tolerance.  A verdict is numerical evidence,
never a proof, and every verdict carries that caveat verbatim.

Scan strategy: a dense deterministic angular grid (at least 720 points per
angle dimension for n <= 3), refined by multistart Nelder-Mead descent
from the best grid directions; for n >= 4 the grid is replaced by seeded
scrambled Sobol directions.  Everything is deterministic given the
configuration and seed.

Zero minima mean no positive constant can exist at that scale, so spheres
with a vanishing minimum contribute no log point; when more than half of
the spheres vanish the verdict fails with a diagnostic.  A constrained
scan whose admissible region is empty on every sphere holds vacuously and
says so.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy import optimize
from scipy.stats import norm, qmc

from . import quantities as qt
from .quantities import MapGerm
from .seeds import subsystem_seed

CAVEAT_NUMERICAL = "numerical evidence, not proof"

DEFAULT_RADII: tuple[float, ...] = tuple(0.1 * 2.0**-k for k in range(8))

_NM_OPTIONS = {"xatol": 1e-12, "fatol": 1e-300, "maxiter": 300, "maxfev": 600}


@dataclass(frozen=True)
class ScanConfig:
    """Sphere scan parameters.

    radii must be strictly decreasing with at least four entries so that a
    slope can be fitted meaningfully.
    """

    radii: tuple[float, ...] = DEFAULT_RADII
    grid_per_angle: int = 720
    hi_dim_directions: int = 4096
    multistarts: int = 16
    seed: int = 0
    tolerance: float = 0.1
    zero_floor: float = 1e-100

    def __post_init__(self) -> None:
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        if len(self.radii) < 4:
            raise ValueError("at least four radii are needed to fit an exponent")
        if any(r <= 0 for r in self.radii):
            raise ValueError("radii must be positive")
        if any(a <= b for a, b in zip(self.radii, self.radii[1:])):
            raise ValueError("radii must be strictly decreasing")
        if self.grid_per_angle < 8 or self.hi_dim_directions < 8:
            raise ValueError("direction grids are too small to be useful")
        if self.multistarts < 0:
            raise ValueError("multistarts must be nonnegative")
        if self.tolerance < 0 or self.zero_floor <= 0:
            raise ValueError("tolerance must be >= 0 and zero_floor > 0")


@dataclass(frozen=True)
class ScanStrategy:
    kind: str
    grid_points: int
    multistarts: int
    seed: int


@dataclass(frozen=True)
class SphereMinimum:
    """Result of minimizing F over one sphere (or a constrained patch of it)."""

    radius: float
    value: float | None
    point: tuple[float, ...] | None
    feasible: int
    total: int


@dataclass(frozen=True)
class RadialScan:
    """Minima of one function over the configured ladder of spheres."""

    radii: tuple[float, ...]
    min_values: tuple[float | None, ...]
    feasible: tuple[int, ...]
    total: tuple[int, ...]
    strategy: ScanStrategy

    def __post_init__(self) -> None:
        if not (len(self.radii) == len(self.min_values) == len(self.feasible) == len(self.total)):
            raise ValueError("scan columns must have equal length")
        for v in self.min_values:
            if v is not None and v < 0:
                raise ValueError("sphere minima of a nonnegative function cannot be negative")


@dataclass(frozen=True)
class ExponentEstimate:
    """Least squares fit of log(min) against log(radius)."""

    slope: float
    log_constant: float
    r_squared: float
    n_points: int


@dataclass(frozen=True)
class ConditionVerdict:
    condition: str
    holds: bool
    estimate: ExponentEstimate | None
    target_exponent: float
    tolerance: float
    caveat: str
    diagnostics: tuple[str, ...]
    scan: RadialScan


# ---------------------------------------------------------------------------
# Direction grids


@lru_cache(maxsize=32)
def _directions(n: int, grid_per_angle: int, hi_dim: int, seed: int) -> np.ndarray:
    if n == 1:
        dirs = np.array([[1.0], [-1.0]])
    elif n == 2:
        theta = 2.0 * np.pi * np.arange(grid_per_angle) / grid_per_angle
        dirs = np.column_stack([np.cos(theta), np.sin(theta)])
    elif n == 3:
        k = grid_per_angle
        theta = np.pi * np.arange(k) / (k - 1)
        phi = 2.0 * np.pi * np.arange(k) / k
        tt, pp = np.meshgrid(theta, phi, indexing="ij")
        st = np.sin(tt).ravel()
        dirs = np.column_stack([st * np.cos(pp).ravel(), st * np.sin(pp).ravel(), np.cos(tt).ravel()])
    else:
        sampler = qmc.Sobol(d=n, scramble=True, seed=seed)
        raw = sampler.random(hi_dim)
        dirs = norm.ppf(np.clip(raw, 1e-12, 1.0 - 1e-12))
        lengths = np.sqrt(np.sum(dirs * dirs, axis=1))
        keep = lengths > 1e-9
        dirs = dirs[keep] / lengths[keep, None]
    dirs.flags.writeable = False
    return dirs


def _strategy_for(n: int, cfg: ScanConfig) -> ScanStrategy:
    if n <= 3:
        count = 2 if n == 1 else (cfg.grid_per_angle if n == 2 else cfg.grid_per_angle**2)
        return ScanStrategy("dense-grid+descent", count, cfg.multistarts, cfg.seed)
    return ScanStrategy("sobol+descent", cfg.hi_dim_directions, cfg.multistarts, cfg.seed)


# ---------------------------------------------------------------------------
# Constraints (used by the horn-restricted scan)


class HornConstraint:
    """Restriction to the horn { |f(x)| <= wbar * |x|^r }."""

    def __init__(self, germ: MapGerm, r: int, wbar: float):
        if wbar <= 0:
            raise ValueError("the horn width wbar must be positive")
        if r < 1:
            raise ValueError("r must be a positive integer")
        self.germ = germ
        self.r = r
        self.wbar = wbar

    def mask(self, pts: np.ndarray, radius: float) -> np.ndarray:
        return qt.component_norm_values(self.germ, pts) <= self.wbar * radius**self.r

    def violation(self, x: Sequence[float], radius: float) -> float:
        bound = self.wbar * radius**self.r
        value = math.hypot(*(c.eval_float(x) for c in self.germ.components))
        return max(0.0, (value - bound) / bound)


def horn_membership(germ: MapGerm, r: int, wbar: float, x: Sequence[float]) -> bool:
    """Whether x lies in the horn { |f(x)| <= wbar * |x|^r }."""
    if wbar <= 0:
        raise ValueError("the horn width wbar must be positive")
    value = math.hypot(*(c.eval_float(x) for c in germ.components))
    return value <= wbar * math.hypot(*x) ** r


# ---------------------------------------------------------------------------
# Sphere minimization


def _refine(
    scalar: Callable[[Sequence[float]], float],
    n: int,
    radius: float,
    start: np.ndarray,
    penalty: Callable[[Sequence[float], float], float] | None,
) -> tuple[float, tuple[float, ...]]:
    def wrapped(x: Sequence[float]) -> float:
        if penalty is not None:
            bad = penalty(x, radius)
            if bad > 0.0:
                return 1e100 * (1.0 + bad)
        return scalar(x)

    if n == 2:
        def objective(params: np.ndarray) -> float:
            th = params[0]
            return wrapped((radius * math.cos(th), radius * math.sin(th)))

        x0 = np.array([math.atan2(start[1], start[0])])
    elif n == 3:
        def objective(params: np.ndarray) -> float:
            th, ph = params
            st = math.sin(th)
            return wrapped((radius * st * math.cos(ph), radius * st * math.sin(ph), radius * math.cos(th)))

        x0 = np.array([math.acos(max(-1.0, min(1.0, start[2]))), math.atan2(start[1], start[0])])
    else:
        def objective(params: np.ndarray) -> float:
            length = math.sqrt(float(np.dot(params, params)))
            if length < 1e-9:
                return 1e100
            return wrapped(tuple(radius * v / length for v in params))

        x0 = np.asarray(start, dtype=float)

    res = optimize.minimize(objective, x0, method="Nelder-Mead", options=_NM_OPTIONS)
    params = res.x
    if n == 2:
        pt = (radius * math.cos(params[0]), radius * math.sin(params[0]))
    elif n == 3:
        st = math.sin(params[0])
        pt = (
            radius * st * math.cos(params[1]),
            radius * st * math.sin(params[1]),
            radius * math.cos(params[0]),
        )
    else:
        length = math.sqrt(float(np.dot(params, params)))
        pt = tuple(radius * v / length for v in params) if length > 1e-9 else tuple(start * radius)
    value = wrapped(pt)
    return value, pt


def min_on_sphere(
    F: Callable[[np.ndarray], np.ndarray],
    n: int,
    radius: float,
    cfg: ScanConfig,
    constraint: HornConstraint | None = None,
    scalar: Callable[[Sequence[float]], float] | None = None,
) -> SphereMinimum:
    """Minimize F over the sphere of the given radius.

    F is vectorized over rows; `scalar` is an optional cheap single-point
    version used by the descent stage (defaults to wrapping F).
    """
    if radius <= 0:
        raise ValueError("the sphere radius must be positive")
    if scalar is None:
        scalar = lambda x: float(F(np.asarray([x], dtype=float))[0])  # noqa: E731
    dirs = _directions(n, cfg.grid_per_angle, cfg.hi_dim_directions, cfg.seed)
    pts = radius * dirs
    total = len(pts)
    if constraint is not None:
        feasible_mask = constraint.mask(pts, radius)
        pts = pts[feasible_mask]
    feasible = len(pts)
    if feasible == 0:
        return SphereMinimum(radius=radius, value=None, point=None, feasible=0, total=total)
    values = F(pts)
    order = np.argsort(values, kind="stable")
    best_value = float(values[order[0]])
    best_point = tuple(float(c) for c in pts[order[0]])
    if n > 1:
        penalty = constraint.violation if constraint is not None else None
        for idx in order[: cfg.multistarts]:
            value, pt = _refine(scalar, n, radius, pts[idx] / radius, penalty)
            if value < best_value:
                best_value, best_point = value, tuple(pt)
    return SphereMinimum(
        radius=radius,
        value=max(best_value, 0.0),
        point=best_point,
        feasible=feasible,
        total=total,
    )


def scan_spheres(
    F: Callable[[np.ndarray], np.ndarray],
    n: int,
    cfg: ScanConfig,
    constraint: HornConstraint | None = None,
    scalar: Callable[[Sequence[float]], float] | None = None,
) -> RadialScan:
    """Minimize F over every sphere in the configured ladder."""
    rows = [min_on_sphere(F, n, r, cfg, constraint, scalar) for r in cfg.radii]
    return RadialScan(
        radii=cfg.radii,
        min_values=tuple(row.value for row in rows),
        feasible=tuple(row.feasible for row in rows),
        total=tuple(row.total for row in rows),
        strategy=_strategy_for(n, cfg),
    )


# ---------------------------------------------------------------------------
# Exponent fitting and verdicts


def fit_loglog(xs: Sequence[float], ys: Sequence[float]) -> ExponentEstimate:
    """Least squares slope of log(y) against log(x); needs >= 2 pairs."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise ValueError("need at least two (x, y) pairs with matching length")
    lx = np.log(np.asarray(xs, dtype=float))
    ly = np.log(np.asarray(ys, dtype=float))
    slope, intercept = np.polyfit(lx, ly, 1)
    fitted = slope * lx + intercept
    ss_res = float(np.sum((ly - fitted) ** 2))
    ss_tot = float(np.sum((ly - np.mean(ly)) ** 2))
    r2 = 1.0 if ss_tot < 1e-30 else 1.0 - ss_res / ss_tot
    return ExponentEstimate(
        slope=float(slope), log_constant=float(intercept), r_squared=r2, n_points=len(xs)
    )


def estimate_exponent(scan: RadialScan, zero_floor: float = 1e-100) -> ExponentEstimate | None:
    """Fit the decay exponent of a scan, ignoring vanished spheres.

    Returns None when fewer than two spheres give a positive minimum.
    """
    pairs = [
        (r, v)
        for r, v in zip(scan.radii, scan.min_values)
        if v is not None and v > zero_floor
    ]
    if len(pairs) < 2:
        return None
    return fit_loglog([p[0] for p in pairs], [p[1] for p in pairs])


def verdict_from_scan(
    condition: str,
    scan: RadialScan,
    target: float,
    cfg: ScanConfig,
    constrained: bool = False,
) -> ConditionVerdict:
    """Turn a radial scan into a holds / fails verdict against a target exponent."""
    diagnostics: list[str] = []
    present = [(r, v) for r, v in zip(scan.radii, scan.min_values) if v is not None]
    if constrained and not present:
        diagnostics.append(
            "the admissible region is empty on every scanned sphere; the inequality holds vacuously there"
        )
        return ConditionVerdict(
            condition=condition,
            holds=True,
            estimate=None,
            target_exponent=target,
            tolerance=cfg.tolerance,
            caveat=CAVEAT_NUMERICAL,
            diagnostics=tuple(diagnostics),
            scan=scan,
        )
    zeros = sum(1 for _, v in present if v <= cfg.zero_floor)
    if constrained and len(present) < len(scan.radii):
        diagnostics.append(
            f"admissible region empty on {len(scan.radii) - len(present)} of {len(scan.radii)} spheres"
        )
    if zeros and 2 * zeros > len(present):
        diagnostics.append(
            f"minimum vanishes on {zeros} of {len(present)} scanned spheres; "
            "no positive constant exists at those scales"
        )
        return ConditionVerdict(
            condition=condition,
            holds=False,
            estimate=None,
            target_exponent=target,
            tolerance=cfg.tolerance,
            caveat=CAVEAT_NUMERICAL,
            diagnostics=tuple(diagnostics),
            scan=scan,
        )
    if zeros:
        diagnostics.append(f"minimum vanished on {zeros} of {len(present)} spheres; those spheres were skipped")
    estimate = estimate_exponent(scan, cfg.zero_floor)
    if estimate is None:
        diagnostics.append("fewer than two spheres produced a positive minimum; cannot certify a rate")
        holds = False
    else:
        holds = estimate.slope <= target + cfg.tolerance
    return ConditionVerdict(
        condition=condition,
        holds=holds,
        estimate=estimate,
        target_exponent=target,
        tolerance=cfg.tolerance,
        caveat=CAVEAT_NUMERICAL,
        diagnostics=tuple(diagnostics),
        scan=scan,
    )


# ---------------------------------------------------------------------------
# Quantity scans and the named condition checks


def scan_gradient_norm(germ: MapGerm, cfg: ScanConfig) -> RadialScan:
    if germ.p != 1:
        raise ValueError("gradient scans require a single-component germ")
    return scan_spheres(
        lambda pts: qt.gradient_norm_values(germ, pts),
        germ.n,
        cfg,
        scalar=lambda x: math.hypot(*(m.eval_float(x) for _, m in qt.build_minors(germ).p_minors)),
    )


def scan_minor_sum(germ: MapGerm, cfg: ScanConfig, constraint: HornConstraint | None = None) -> RadialScan:
    cache = qt.build_minors(germ)
    return scan_spheres(
        lambda pts: qt.minor_abs_sum_values(germ, pts),
        germ.n,
        cfg,
        constraint=constraint,
        scalar=lambda x: sum(abs(m.eval_float(x)) for _, m in cache.p_minors),
    )


def scan_quantity(germ: MapGerm, which: str, m: int, cfg: ScanConfig) -> RadialScan:
    """Radial scan of the Kuo or Thom quantity."""
    if which not in qt.QUANTITIES:
        raise ValueError(f"unknown quantity {which!r}; expected 'kuo' or 'thom'")
    vector = qt.QUANTITIES[which]
    point = qt.kuo_value if which == "kuo" else qt.thom_value
    return scan_spheres(
        lambda pts: vector(germ, m, pts),
        germ.n,
        cfg,
        scalar=lambda x: point(germ, m, x),
    )


def _check_r(r: int) -> None:
    if not isinstance(r, int) or r < 1:
        raise ValueError("r must be a positive integer")


def check_kuiper_kuo(germ: MapGerm, r: int, cfg: ScanConfig) -> ConditionVerdict:
    """Gradient growth |grad f| >= C |x|^(r-1) near 0 (single equation)."""
    _check_r(r)
    scan = scan_gradient_norm(germ, cfg)
    return verdict_from_scan(f"kuiper-kuo r={r}", scan, r - 1, cfg)


def check_kuo(germ: MapGerm, r: int, wbar: float, cfg: ScanConfig) -> ConditionVerdict:
    """Minor growth >= C |x|^(r-1), required only inside the horn of width wbar.

    For p == 1 the sum of absolute 1-minors is the l1 gradient norm, which
    bounds the Euclidean norm both ways, so verdicts at exponent level are
    unaffected by the choice.
    """
    _check_r(r)
    constraint = HornConstraint(germ, r, wbar)
    scan = scan_minor_sum(germ, cfg, constraint=constraint)
    return verdict_from_scan(f"kuo r={r} wbar={wbar:g}", scan, r - 1, cfg, constrained=True)


def check_condition_ktilde(germ: MapGerm, r: int, cfg: ScanConfig) -> ConditionVerdict:
    """|x| * (minor sum) + |f(x)| >= C |x|^r, scanned through the Kuo quantity at m = 1."""
    _check_r(r)
    scan = scan_quantity(germ, "kuo", 1, cfg)
    return verdict_from_scan(f"ktilde r={r}", scan, r, cfg)


def check_thom_inequality(germ: MapGerm, r: int, cfg: ScanConfig) -> ConditionVerdict:
    """Thom quantity at m = 2 against |x|^(2r)."""
    _check_r(r)
    scan = scan_quantity(germ, "thom", 2, cfg)
    return verdict_from_scan(f"thom-inequality r={r}", scan, 2 * r, cfg)


def check_kuo_inequality(germ: MapGerm, r: int, cfg: ScanConfig) -> ConditionVerdict:
    """Kuo quantity at m = 2 against |x|^(2r); the partner of check_thom_inequality."""
    _check_r(r)
    scan = scan_quantity(germ, "kuo", 2, cfg)
    return verdict_from_scan(f"kuo-inequality r={r}", scan, 2 * r, cfg)


def sufficiency_degree_estimate(germ: MapGerm, r_max: int, cfg: ScanConfig) -> int | None:
    """Smallest r in 1..r_max whose gradient-growth verdict holds, else None.

    The underlying scan does not depend on r, so it is performed once.
    """
    _check_r(r_max)
    scan = scan_gradient_norm(germ, cfg)
    for r in range(1, r_max + 1):
        verdict = verdict_from_scan(f"kuiper-kuo r={r}", scan, r - 1, cfg)
        if verdict.holds:
            return r
    return None


# ---------------------------------------------------------------------------
# Bounded-ratio probe


@dataclass(frozen=True)
class RatioProbe:
    """Sampled maxima of K/T and T/K at a radius and at a quarter of it."""

    m: int
    radius: float
    shrunk_radius: float
    points: int
    max_kuo_over_thom: float
    max_thom_over_kuo: float
    shrunk_max_kuo_over_thom: float
    shrunk_max_thom_over_kuo: float

    @property
    def stability_kuo_over_thom(self) -> float:
        a, b = self.max_kuo_over_thom, self.shrunk_max_kuo_over_thom
        return max(a, b) / min(a, b)

    @property
    def stability_thom_over_kuo(self) -> float:
        a, b = self.max_thom_over_kuo, self.shrunk_max_thom_over_kuo
        return max(a, b) / min(a, b)


def ratio_stability_probe(
    germ: MapGerm,
    m: int,
    radius: float = 0.01,
    points: int = 2000,
    seed: int = 0,
) -> RatioProbe:
    """Sample both ratio directions in a ball and in the 4x shrunken ball.

    Points where either quantity vanishes are excluded from the ratios.
    """
    if m < 1 or points < 16 or radius <= 0:
        raise ValueError("need m >= 1, points >= 16 and a positive radius")
    rng = np.random.default_rng(subsystem_seed(seed, "ratio-probe"))

    def sample_maxima(ball_radius: float) -> tuple[float, float]:
        dirs = rng.normal(size=(points, germ.n))
        lengths = np.sqrt(np.sum(dirs * dirs, axis=1))
        lengths[lengths < 1e-12] = 1.0
        radii = ball_radius * rng.uniform(size=points) ** (1.0 / germ.n)
        pts = dirs / lengths[:, None] * radii[:, None]
        kv = qt.kuo_values(germ, m, pts)
        tv = qt.thom_values(germ, m, pts)
        mask = (kv > 0.0) & (tv > 0.0)
        if not np.any(mask):
            raise ValueError("both quantities vanish at every sampled point")
        return float(np.max(kv[mask] / tv[mask])), float(np.max(tv[mask] / kv[mask]))

    big = sample_maxima(radius)
    small = sample_maxima(radius / 4.0)
    return RatioProbe(
        m=m,
        radius=radius,
        shrunk_radius=radius / 4.0,
        points=points,
        max_kuo_over_thom=big[0],
        max_thom_over_kuo=big[1],
        shrunk_max_kuo_over_thom=small[0],
        shrunk_max_thom_over_kuo=small[1],
    )
