"""Numerical verification layer: box counting, level-set covers, measure sampling.

Box counting comes in two routes.  The column method is exact bookkeeping:
over a depth-n column the graph spans the full y-extent of its cylinder, which
is the product of the vertical ratio magnitudes, so grouping the 3^n words by
their number of 2-symbols turns N_delta into an (n+1)-term sum.  The grid
method actually samples graph points (cylinder anchors a few levels deeper)
and counts occupied mesh cells, so it can only undercount and serves as the
independent cross-check from below.

Level sets are covered by branch and bound: a word is extended only while its
closed y-interval still contains the target level.  The exact-rational
recursion (words retained) and the float array scan (counts only) implement
the same pruning; the exhaustive filter oracle lives in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BudgetError, DepthCapError, ParameterError
from .dimensions import LOG3, okamoto_s0
from .systems import SystemSpec, build_system
from .words import Number, Word, check_a

COLUMN_DEPTH_CAP = 20
GRID_DEPTH_CAP = 14
LEVEL_SET_DEPTH_CAP = 24
SAMPLE_COUNT_CAP = 10**8
SAMPLE_DEPTH_CAP = 60


def _ceil_exact(x) -> int:
    if isinstance(x, Fraction):
        return -((-x.numerator) // x.denominator)
    return math.ceil(x)


@dataclass(frozen=True)
class BoxCountSeries:
    a: float
    method: str
    rows: tuple  # (depth n, delta = 3^-n, count)
    fitted_slope: float
    fit_residual: float

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "method": self.method,
            "rows": [{"n": n, "delta": d, "count": c} for n, d, c in self.rows],
            "fitted_slope": self.fitted_slope,
            "fit_residual": self.fit_residual,
        }


def box_count_graph(a: Number, n: int, method: str = "column") -> int:
    """Number of occupied mesh-size 3^-n boxes over the graph."""
    check_a(a)
    if n == 0:
        return 1
    if method == "column":
        if n > COLUMN_DEPTH_CAP:
            raise DepthCapError(f"column method capped at n <= {COLUMN_DEPTH_CAP}")
        return _box_count_column(a, n)
    if method == "grid":
        if n > GRID_DEPTH_CAP:
            raise DepthCapError(f"grid method capped at n <= {GRID_DEPTH_CAP}")
        return _box_count_grid(float(a), n)
    raise ParameterError(f"method must be 'column' or 'grid', got {method!r}")


def _grid_sampling_levels(a: float, n: int) -> int:
    """Extra anchor levels so samples roughly resolve the per-column oscillation.

    A column spans about (3a)^n boxes, so matching it needs n*log(3a)/log 3
    extra levels; the total point budget caps the depth at larger n.
    """
    needed = math.ceil(n * math.log(3.0 * a) / LOG3) + 1
    budget = max(2, 15 - n)  # keeps 3^(n + extra) around 1.4e7 points
    return max(2, min(needed, budget))


def _box_count_column(a: Number, n: int) -> int:
    """Exact count: words grouped by #2s; each column needs ceil(osc * 3^n) boxes."""
    b = 2 * a - 1
    total = 0
    for j in range(n + 1):
        osc_boxes = a ** (n - j) * b**j * 3**n
        total += math.comb(n, j) * 2 ** (n - j) * max(1, _ceil_exact(osc_boxes))
    return total


def _y_level_arrays(a: float, n: int) -> tuple:
    """Anchor and signed-ratio arrays of the y-maps for all depth-n words, in x-order."""
    tau = np.array([0.0, a, 1.0 - a])
    rho = np.array([a, 1.0 - 2.0 * a, a])
    t = np.zeros(1)
    r = np.ones(1)
    for _ in range(n):
        t = (t[:, None] + r[:, None] * tau[None, :]).ravel()
        r = (r[:, None] * rho[None, :]).ravel()
    return t, r


def _box_count_grid(a: float, n: int, extra_levels: int | None = None) -> int:
    """Boxes needed for sampled graph points, greedily covered column by column.

    Samples are the cylinder anchors extra_levels deeper plus the right
    endpoint, all exact graph points.  Covering the sampled points of one
    column with height-delta boxes greedily needs at most ceil(extent/delta)
    boxes, so this count never exceeds the column formula.
    """
    if extra_levels is None:
        extra_levels = _grid_sampling_levels(a, n)
    t, r = _y_level_arrays(a, n)
    anchors, _ = _y_level_arrays(a, extra_levels)
    anchors = np.append(anchors, 1.0)
    delta = 3.0**-n
    total = 0
    chunk = max(64, (1 << 22) // len(anchors))
    for lo in range(0, len(t), chunk):
        ys = t[lo : lo + chunk, None] + r[lo : lo + chunk, None] * anchors[None, :]
        ys.sort(axis=1)
        cover_end = np.full(ys.shape[0], -np.inf)
        counts = np.zeros(ys.shape[0], dtype=np.int64)
        for col in range(ys.shape[1]):
            yi = ys[:, col]
            fresh = yi > cover_end
            counts[fresh] += 1
            cover_end[fresh] = yi[fresh] + delta
        total += int(counts.sum())
    return total


def fit_dimension(rows) -> tuple:
    """OLS slope of log N against n log 3, plus the largest absolute residual."""
    if isinstance(rows, BoxCountSeries):
        pairs = [(n, c) for n, _, c in rows.rows]
    else:
        pairs = [(n, c) for n, c in rows]
    if len(pairs) < 3:
        raise ParameterError(f"dimension fit needs >= 3 rows, got {len(pairs)}")
    xs = np.array([n * LOG3 for n, _ in pairs])
    ys = np.array([math.log(c) for _, c in pairs])
    slope, intercept = np.polyfit(xs, ys, 1)
    residual = float(np.max(np.abs(slope * xs + intercept - ys)))
    return float(slope), residual


def box_count_series(a: Number, depths: Sequence[int], method: str = "column") -> BoxCountSeries:
    rows = tuple((n, 3.0**-n, box_count_graph(a, n, method)) for n in depths)
    slope, residual = fit_dimension([(n, c) for n, _, c in rows])
    return BoxCountSeries(a=float(a), method=method, rows=rows, fitted_slope=slope, fit_residual=residual)


# --- level sets ---------------------------------------------------------------


@dataclass(frozen=True)
class LevelSetCover:
    a: Number
    y: Number
    depth: int
    words: tuple

    @property
    def count(self) -> int:
        return len(self.words)

    def weighted_sum(self, t: float) -> float:
        return self.count * (3.0**-self.depth) ** t

    @property
    def dim_estimate(self) -> float:
        return math.log(self.count) / (self.depth * LOG3) if self.depth else 0.0


def level_set_cover(a: Number, y: Number, n: int) -> LevelSetCover:
    """Depth-n words whose closed y-interval contains y, by branch and bound.

    Exact rational interval arithmetic whenever both a and y are rational.
    """
    check_a(a)
    if not (0 <= y <= 1):
        raise ParameterError(f"level y must lie in [0, 1], got {y}")
    if not (1 <= n <= LEVEL_SET_DEPTH_CAP):
        raise DepthCapError(f"depth must lie in [1, {LEVEL_SET_DEPTH_CAP}], got {n}")
    exact = isinstance(a, (Fraction, int)) and isinstance(y, (Fraction, int))
    if not exact:
        a, y = float(a), float(y)
    tau = (0 * a, a, 1 - a)
    rho = (a, 1 - 2 * a, a)
    words: list[Word] = []
    frontier = [((), 0 * a, 1 + 0 * a)]  # word, anchor, signed ratio
    for _ in range(n):
        nxt = []
        for word, t, r in frontier:
            for s in (1, 2, 3):
                t2 = t + r * tau[s - 1]
                r2 = r * rho[s - 1]
                lo, hi = (t2 + r2, t2) if r2 < 0 else (t2, t2 + r2)
                if lo <= y <= hi:
                    nxt.append((word + (s,), t2, r2))
        frontier = nxt
    words = [w for w, _, _ in frontier]
    return LevelSetCover(a=a, y=y, depth=n, words=tuple(words))


def level_set_count(a: float, y: float, n: int) -> int:
    """Cover cardinality only, via the vectorized float scan."""
    check_a(a)
    if not (1 <= n <= LEVEL_SET_DEPTH_CAP):
        raise DepthCapError(f"depth must lie in [1, {LEVEL_SET_DEPTH_CAP}], got {n}")
    a = float(a)
    tau = np.array([0.0, a, 1.0 - a])
    rho = np.array([a, 1.0 - 2.0 * a, a])
    t = np.zeros(1)
    r = np.ones(1)
    for _ in range(n):
        t = (t[:, None] + r[:, None] * tau[None, :]).ravel()
        r = (r[:, None] * rho[None, :]).ravel()
        lo = t + np.minimum(r, 0.0)
        hi = t + np.maximum(r, 0.0)
        keep = (lo <= y) & (y <= hi)
        t, r = t[keep], r[keep]
    return len(t)


@dataclass(frozen=True)
class LevelSetScan:
    a: float
    depth: int
    seed: int | None
    tolerance: float
    s0_minus_1: float
    ys: tuple
    estimates: tuple
    quantiles: dict
    frac_above: float
    median_gap: float

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "depth": self.depth,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "s0_minus_1": self.s0_minus_1,
            "sample_count": len(self.ys),
            "quantiles": self.quantiles,
            "frac_above": self.frac_above,
            "median_gap": self.median_gap,
        }


def level_set_scan(
    a: float,
    sample_count: int,
    n: int,
    seed: int | None = None,
    ys: Sequence[float] | None = None,
    tolerance: float = 0.08,
) -> LevelSetScan:
    """Distribution of cover-count dimension estimates over sampled levels."""
    check_a(a)
    if ys is None:
        if seed is None:
            raise ParameterError("level_set_scan needs a seed when levels are drawn randomly")
        rng = np.random.default_rng(seed)
        ys = rng.random(sample_count)
    ys = [float(v) for v in ys]
    estimates = []
    for y in ys:
        count = level_set_count(a, y, n)
        estimates.append(math.log(count) / (n * LOG3) if count else float("nan"))
    est = np.array(estimates)
    bound = okamoto_s0(a) - 1.0
    qs = {f"q{int(100 * q)}": float(np.quantile(est, q)) for q in (0.1, 0.25, 0.5, 0.75, 0.9)}
    return LevelSetScan(
        a=float(a),
        depth=n,
        seed=seed,
        tolerance=tolerance,
        s0_minus_1=bound,
        ys=tuple(ys),
        estimates=tuple(float(e) for e in est),
        quantiles=qs,
        frac_above=float(np.mean(est > bound + tolerance)),
        median_gap=float(np.median(est) - bound),
    )


# --- measure sampling -----------------------------------------------------------


@dataclass(frozen=True)
class MeasureSample:
    system_kind: str
    parameter: float | None
    weights: tuple
    points: np.ndarray
    seed: int
    depth: int

    @property
    def count(self) -> int:
        return len(self.points)


def sample_measure(
    system: SystemSpec,
    weights: Sequence[float],
    count: int,
    depth: int,
    seed: int,
) -> MeasureSample:
    """Monte-Carlo draw from the associated self-similar (or self-affine) measure.

    Each point is the composition along an i.i.d. weight-distributed random
    word of the given depth, applied to 0.  Deterministic per seed.
    """
    if count > SAMPLE_COUNT_CAP:
        raise BudgetError(f"sample count {count} exceeds cap {SAMPLE_COUNT_CAP}")
    if depth > SAMPLE_DEPTH_CAP:
        raise BudgetError(f"sample depth {depth} exceeds cap {SAMPLE_DEPTH_CAP}")
    w = np.asarray([float(x) for x in weights])
    if len(w) != len(system.maps) or np.any(w < 0) or abs(w.sum() - 1.0) > 1e-9:
        raise ParameterError(f"invalid weight vector {weights} for {len(system.maps)} maps")
    cum = np.cumsum(w)
    rng = np.random.default_rng(seed)
    # innermost-to-outermost composition; symbol order is irrelevant for i.i.d. draws
    if system.is_planar():
        xr = np.array([float(f.x_ratio) for f in system.maps])
        xs_ = np.array([float(f.x_shift) for f in system.maps])
        yr = np.array([float(f.y_ratio) for f in system.maps])
        ys_ = np.array([float(f.y_shift) for f in system.maps])
        px = np.zeros(count)
        py = np.zeros(count)
        for _ in range(depth):
            s = np.searchsorted(cum, rng.random(count), side="right")
            px = xr[s] * px + xs_[s]
            py = yr[s] * py + ys_[s]
        pts = np.column_stack([px, py])
    else:
        ratios = np.array([float(f.ratio) for f in system.maps])
        shifts = np.array([float(f.translation) for f in system.maps])
        pts = np.zeros(count)
        for _ in range(depth):
            s = np.searchsorted(cum, rng.random(count), side="right")
            pts = ratios[s] * pts + shifts[s]
    param = None if system.parameter is None else float(system.parameter)
    return MeasureSample(
        system_kind=system.kind,
        parameter=param,
        weights=tuple(float(x) for x in w),
        points=pts,
        seed=seed,
        depth=depth,
    )


def natural_measure_sample(a: float, count: int, depth: int, seed: int) -> MeasureSample:
    """y-projection of the natural measure: projection system with weights (a,2a-1,a)/(4a-1)."""
    from .dimensions import natural_weights

    return sample_measure(build_system("projection", float(a)), natural_weights(float(a)), count, depth, seed)


def ball_masses(points: np.ndarray, x: float, radii: Sequence[float]) -> list:
    """Empirical closed-ball masses mu(B(x, r)) from a sample."""
    xs = np.sort(points)
    n = len(xs)
    out = []
    for r in radii:
        cnt = np.searchsorted(xs, x + r, side="right") - np.searchsorted(xs, x - r, side="left")
        out.append(cnt / n)
    return out


def local_dimension_estimate(sample: MeasureSample, x: float, radii: Sequence[float]) -> list:
    """log mu(B(x,r)) / log r per radius; empty balls give nan, not zero."""
    for r in radii:
        if not r > 0:
            raise ParameterError(f"radii must be positive, got {r}")
    masses = ball_masses(sample.points, x, radii)
    return [math.log(m) / math.log(r) if m > 0 else float("nan") for m, r in zip(masses, radii)]


def local_dimension_batch(sample: MeasureSample, xs: Sequence[float], radii: Sequence[float]) -> np.ndarray:
    """Matrix of local-dimension ratios, points sorted once; nan marks empty balls."""
    sorted_pts = np.sort(sample.points)
    n = len(sorted_pts)
    out = np.full((len(xs), len(radii)), np.nan)
    for i, x in enumerate(xs):
        for j, r in enumerate(radii):
            cnt = np.searchsorted(sorted_pts, x + r, side="right") - np.searchsorted(
                sorted_pts, x - r, side="left"
            )
            if cnt:
                out[i, j] = math.log(cnt / n) / math.log(r)
    return out


def local_dimension_slopes(
    sample: MeasureSample,
    xs: Sequence[float],
    r_lo: float = 1e-5,
    r_hi: float = 1e-2,
    r_count: int = 8,
) -> np.ndarray:
    """Per-point local dimension as the slope of log mu(B(x,r)) against log r.

    The slope over a finite radii window is the resolution-limited version of
    the liminf quotient; points with any empty ball give nan.
    """
    radii = np.geomspace(r_lo, r_hi, r_count)
    sorted_pts = np.sort(sample.points)
    n = len(sorted_pts)
    log_r = np.log(radii)
    out = np.full(len(xs), np.nan)
    for i, x in enumerate(xs):
        cnts = np.searchsorted(sorted_pts, x + radii, side="right") - np.searchsorted(
            sorted_pts, x - radii, side="left"
        )
        if np.all(cnts > 0):
            out[i] = np.polyfit(log_r, np.log(cnts / n), 1)[0]
    return out


# --- Fourier probe -----------------------------------------------------------------


def fourier_estimate(sample: MeasureSample, t_values: Sequence[float]) -> np.ndarray:
    """|mu_hat(t)| by Monte Carlo; standard error is at most 1/sqrt(count)."""
    pts = sample.points
    out = np.empty(len(t_values))
    for k, t in enumerate(t_values):
        arg = t * pts
        out[k] = math.hypot(float(np.cos(arg).mean()), float(np.sin(arg).mean()))
    return out


def fourier_decay_fit(sample: MeasureSample, t_values: Sequence[float]) -> tuple:
    """(slope, intercept, points used) of the log-log decay fit.

    Points whose magnitude sits below three standard errors are noise and are
    dropped before fitting.
    """
    mags = fourier_estimate(sample, t_values)
    floor = 3.0 / math.sqrt(sample.count)
    keep = mags > floor
    if keep.sum() < 2:
        return float("nan"), float("nan"), int(keep.sum())
    xs = np.log(np.asarray(t_values, dtype=float)[keep])
    ys = np.log(mags[keep])
    slope, intercept = np.polyfit(xs, ys, 1)
    return float(slope), float(intercept), int(keep.sum())


def ks_statistic(x: np.ndarray, y: np.ndarray) -> float:
    """Two-sample Kolmogorov-Smirnov statistic sup |F_x - F_y|."""
    xs = np.sort(np.asarray(x))
    ys = np.sort(np.asarray(y))
    grid = np.concatenate([xs, ys])
    fx = np.searchsorted(xs, grid, side="right") / len(xs)
    fy = np.searchsorted(ys, grid, side="right") / len(ys)
    return float(np.max(np.abs(fx - fy)))
