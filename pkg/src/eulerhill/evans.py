"""Per-class Evans function and complex root counting / refinement.

E(c; theta, d) = 2 cos(2 pi theta) - Delta(d^2; c) vanishes exactly at
the isolated eigenvalues c of the class with parameters (theta, d).
Roots in the closed first quadrant are located by argument-principle
winding numbers over rectangles with recursive subdivision, then
polished by damped Newton iteration.

Contour geometry: the cut [-1, 1] is avoided by keeping Im c >= eps_cut;
boundary sampling is graded (fine near the cut shadow and near the
imaginary axis) because roots of small-d classes approach the real axis
and a coarse boundary walk can alias away their phase winding.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .conformal import Side, s_at_origin, s_of_c
from .errors import (
    BranchCutError,
    ContourThroughRootError,
    ConvergenceError,
    DegenerateParameterError,
    OracleMismatchError,
)
from .hill import DiscriminantConfig, discriminant
from .lattice import ROOT_COUNT_BY_REGION, RegionTag

__all__ = [
    "RootSearchConfig",
    "EvansRootSet",
    "evans",
    "find_roots",
    "count_roots",
    "derivative_checks",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class RootSearchConfig:
    """Geometry, tolerances and budgets for the winding-number search."""

    c_max: float = 2.0
    eps_cut: float = 1e-3
    axis_pad: float | None = None  # default 0.0171 * c_max
    root_tol: float = 1e-10
    snap_tol: float | None = None  # default 1e-8 * c_max
    newton_steps: int = 80
    max_evals: int = 60000
    max_depth: int = 48
    guard: bool = True
    retries: int = 6
    disc: DiscriminantConfig = field(default_factory=DiscriminantConfig)
    seed: int = 20250810

    @property
    def pad(self) -> float:
        return self.axis_pad if self.axis_pad is not None else 0.0171 * self.c_max

    @property
    def snap(self) -> float:
        return self.snap_tol if self.snap_tol is not None else 1e-8 * self.c_max


DEFAULT_SEARCH = RootSearchConfig()


def evans(c, theta: float, d: float, cfg: DiscriminantConfig | None = None,
          side: Side | None = None) -> complex:
    """Evans function of the class with parameters (theta, d)."""
    c = complex(c)
    if c == 0:
        if side is None:
            raise BranchCutError("c = 0 needs an explicit branch side")
        sp = s_at_origin(side)
    else:
        sp = s_of_c(c)
    return 2.0 * math.cos(TWO_PI * theta) - discriminant(sp, d * d, cfg)


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise ConvergenceError(f"evaluation budget {self.limit} exhausted")


class _ContourHit(Exception):
    """Internal: contour passes through (or indistinguishably near) a zero."""


def _edge_points(a: complex, b: complex):
    """Boundary samples on the segment a -> b (excluding b).

    Spacing is bounded by L/12 everywhere and additionally refined where
    zeros can hide close to the contour: horizontal runs just above the
    cut, and vertical runs near the imaginary axis.
    """
    L = abs(b - a)
    coarse = L / 12.0
    pts = []
    if abs(a.imag - b.imag) < 1e-15:
        y = a.imag
        sgn = 1.0 if b.real > a.real else -1.0
        x = a.real
        while (b.real - x) * sgn > 1e-12:
            pts.append(complex(x, y))
            if abs(y) <= 0.2 and -1.1 <= x <= 1.1:
                h = max(2.0 * abs(y), 0.004)
            else:
                h = coarse
            x += sgn * min(h, coarse)
    elif abs(a.real - b.real) < 1e-15:
        x = a.real
        sgn = 1.0 if b.imag > a.imag else -1.0
        y = a.imag
        while (b.imag - y) * sgn > 1e-12:
            pts.append(complex(x, y))
            if abs(x) < 0.15 and abs(y) <= 1.3:
                h = max(2.0 * abs(x), 0.004) if abs(x) > 1e-12 else 0.01
            else:
                h = coarse
            y += sgn * min(h, coarse)
    else:  # generic segment (not used by the rectangle walker)
        n = 12
        for t in range(n):
            pts.append(a + (b - a) * (t / n))
    return pts


def _winding(f, rect, cache, budget, max_pts=20000):
    """Winding number of f over the rectangle boundary, counterclockwise.

    Argument increments are refined until each is below pi/2; a sample
    falling on a zero (or a non-integer total) raises _ContourHit so the
    caller can jitter the rectangle.
    """
    x0, x1, y0, y1 = rect

    def F(z):
        v = cache.get(z)
        if v is None:
            budget.spend()
            v = f(z)
            cache[z] = v
        if v == 0 or abs(v) < 1e-13:
            raise _ContourHit(z)
        return v

    corners = [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)]
    pts = []
    for i in range(4):
        pts.extend(_edge_points(corners[i], corners[(i + 1) % 4]))
    pts.append(pts[0])
    vals = [F(p) for p in pts]

    changed = True
    while changed and len(pts) < max_pts:
        changed = False
        new_pts, new_vals = [pts[0]], [vals[0]]
        for i in range(1, len(pts)):
            if abs(cmath.phase(vals[i] / vals[i - 1])) >= math.pi / 2:
                mid = 0.5 * (pts[i - 1] + pts[i])
                new_pts.append(mid)
                new_vals.append(F(mid))
                changed = True
            new_pts.append(pts[i])
            new_vals.append(vals[i])
        pts, vals = new_pts, new_vals

    total = 0.0
    for i in range(1, len(vals)):
        total += cmath.phase(vals[i] / vals[i - 1])
    w = total / TWO_PI
    if abs(w - round(w)) > 0.25:
        raise _ContourHit(f"non-integer winding {w:.3f}")
    return int(round(w))


def _winding_retry(f, rect, cache, budget, rng, retries):
    """Winding with outward jitter of the rectangle on contour hits."""
    x0, x1, y0, y1 = rect
    last = None
    for attempt in range(retries + 1):
        try:
            return _winding(f, (x0, x1, y0, y1), cache, budget), (x0, x1, y0, y1)
        except _ContourHit as hit:
            last = hit
            dx = (x1 - x0) * 1e-3 * (1.0 + rng.random())
            dy = (y1 - y0) * 1e-3 * (1.0 + rng.random())
            x0 -= dx
            x1 += dx
            y1 += dy
            y0 = max(y0 - dy, 0.5 * (rect[2]))  # never descend to the cut itself
    raise ContourThroughRootError(f"winding failed after jitter retries: {last}")


def _newton(f, z0, cfg, budget):
    z = complex(z0)
    fz = f(z)
    budget.spend()
    h = 1e-7 * max(1.0, abs(z))
    for _ in range(cfg.newton_steps):
        if abs(fz) < cfg.root_tol:
            return z, abs(fz)
        df = (f(z + h) - f(z - h)) / (2.0 * h)
        budget.spend(2)
        if df == 0:
            break
        step = -fz / df
        lam = 1.0
        for _ in range(30):
            zn = z + lam * step
            fn = f(zn)
            budget.spend()
            if abs(fn) < abs(fz):
                z, fz = zn, fn
                break
            lam *= 0.5
        else:
            break
    return z, abs(fz)


@dataclass(frozen=True)
class EvansRootSet:
    theta: float
    d: float
    roots: tuple  # ((c, multiplicity), ...) closed under c -> -c, conj
    region_predicted: RegionTag | None
    box: tuple
    winding_total: int

    @property
    def count(self) -> int:
        """Total root count with multiplicity over all four quadrants."""
        return self.winding_total


def _boxes(cfg: RootSearchConfig):
    pad = cfg.pad
    box_a = (-pad, cfg.c_max, cfg.eps_cut, cfg.c_max)
    box_b = (pad, cfg.c_max, cfg.eps_cut, cfg.c_max)
    return box_a, box_b


def _count_windings(f, cfg, cache, budget, rng):
    box_a, box_b = _boxes(cfg)
    wa, box_a = _winding_retry(f, box_a, cache, budget, rng, cfg.retries)
    wb, box_b = _winding_retry(f, box_b, cache, budget, rng, cfg.retries)
    if cfg.guard:
        big = (box_a[0], 4.0 * cfg.c_max, box_a[2], 4.0 * cfg.c_max)
        wg, _ = _winding_retry(f, big, cache, budget, rng, cfg.retries)
        if wg != wa:
            raise ConvergenceError(
                f"winding {wg - wa} detected in the guard annulus "
                f"[{cfg.c_max}, {4 * cfg.c_max}]; enlarge c_max"
            )
    return wa, wb, box_a, box_b


def _subdivide(f, rect, w, cfg, cache, budget, rng, out, depth=0):
    """Recursively isolate w zeros inside rect into unit-winding cells."""
    if w == 0:
        return
    x0, x1, y0, y1 = rect
    wide = max(x1 - x0, y1 - y0)
    if w == 1 and wide <= 0.1 * cfg.c_max:
        out.append((rect, 1))
        return
    if wide <= 1e-6 * cfg.c_max:
        out.append((rect, w))  # unresolved cluster: multiple root
        return
    if depth > cfg.max_depth:
        raise ConvergenceError("subdivision depth exhausted")
    for attempt in range(cfg.retries + 1):
        jit = 0.0 if attempt == 0 else (rng.random() - 0.5) * 0.2
        try:
            if (x1 - x0) >= (y1 - y0):
                xm = 0.5 * (x0 + x1) + jit * (x1 - x0)
                w1 = _winding(f, (x0, xm, y0, y1), cache, budget)
                w2 = _winding(f, (xm, x1, y0, y1), cache, budget)
                if w1 + w2 != w:
                    raise _ContourHit("children windings disagree with parent")
                _subdivide(f, (x0, xm, y0, y1), w1, cfg, cache, budget, rng, out, depth + 1)
                _subdivide(f, (xm, x1, y0, y1), w2, cfg, cache, budget, rng, out, depth + 1)
            else:
                ym = 0.5 * (y0 + y1) + jit * (y1 - y0)
                w1 = _winding(f, (x0, x1, y0, ym), cache, budget)
                w2 = _winding(f, (x0, x1, ym, y1), cache, budget)
                if w1 + w2 != w:
                    raise _ContourHit("children windings disagree with parent")
                _subdivide(f, (x0, x1, y0, ym), w1, cfg, cache, budget, rng, out, depth + 1)
                _subdivide(f, (x0, x1, ym, y1), w2, cfg, cache, budget, rng, out, depth + 1)
            return
        except _ContourHit:
            continue
    raise ContourThroughRootError(f"could not split cell {rect}")


def _float_region(theta: float, d: float) -> RegionTag:
    """Open-region classification in floating point (no boundary detection)."""
    th = theta - math.floor(theta)
    if th > 0.5:
        th -= 1.0
    n_in = sum(1 for l in (-1, 0, 1) if (th + l) ** 2 + d * d < 1.0)
    return (RegionTag.REGION_0, RegionTag.REGION_I, RegionTag.REGION_II)[n_in]


def find_roots(theta: float, d: float, cfg: RootSearchConfig | None = None) -> EvansRootSet:
    """All roots of E in the closed first quadrant, with symmetry closure.

    Roots within snap tolerance of the imaginary axis are snapped onto
    it; the returned tuple contains the full four-quadrant set obtained
    by closing under c -> -c and c -> conj(c).
    """
    cfg = cfg or DEFAULT_SEARCH
    if d < 0:
        raise ValueError("d must be nonnegative")
    disc_cfg = cfg.disc
    f = lambda c: evans(c, theta, d, disc_cfg)
    cache: dict = {}
    budget = _Budget(cfg.max_evals)
    rng = np.random.default_rng(cfg.seed)

    wa, wb, box_a, box_b = _count_windings(f, cfg, cache, budget, rng)
    total = 2 * (wa + wb)

    cells: list = []
    _subdivide(f, box_a, wa, cfg, cache, budget, rng, cells)

    snap = cfg.snap
    q1: list = []
    for rect, w in cells:
        cx = 0.5 * (rect[0] + rect[1])
        cy = 0.5 * (rect[2] + rect[3])
        if w == 1:
            z, res = _newton(f, complex(cx, cy), cfg, budget)
            if res > cfg.root_tol:
                raise ConvergenceError(
                    f"Newton stalled at |E| = {res:.2e} near {complex(cx, cy):.4f}"
                )
            q1.append((z, 1))
        else:
            q1.append((complex(cx, cy), w))

    # canonicalize: mirrors found inside the axis pad are dropped, near-axis
    # roots snapped exactly onto the axis
    cleaned = []
    for z, m in q1:
        if z.real < -snap:
            continue  # mirror of an interior root with small positive real part
        if abs(z.real) <= snap:
            z = complex(0.0, z.imag)
        cleaned.append((z, m))

    check = sum((2 if z.real == 0 else 4) * m for z, m in cleaned)
    if check != total:
        raise ConvergenceError(
            f"isolated roots account for {check} eigenvalues, windings say {total}"
        )

    closure: dict = {}
    for z, m in cleaned:
        family = {z, -z, z.conjugate(), -z.conjugate()}
        for w_ in family:
            key = (round(w_.real, 12), round(w_.imag, 12))
            closure[key] = (w_, m)
    roots = tuple(
        sorted(closure.values(), key=lambda zm: (-zm[0].imag, zm[0].real))
    )
    return EvansRootSet(
        theta=theta,
        d=d,
        roots=roots,
        region_predicted=_float_region(theta, d),
        box=box_a,
        winding_total=total,
    )


def count_roots(
    theta: float,
    d: float,
    cfg: RootSearchConfig | None = None,
    expected_region: RegionTag | None = None,
) -> int:
    """Total root count with multiplicity over all four quadrants.

    Winding numbers only, no refinement.  When the exact region tag of
    rational class data is supplied, a disagreement after the retry
    ladder raises OracleMismatchError.
    """
    cfg = cfg or DEFAULT_SEARCH
    disc_cfg = cfg.disc
    f = lambda c: evans(c, theta, d, disc_cfg)

    attempts = [cfg]
    if expected_region is not None:
        # retry lower (floored away from the degraded endpoint zone), then wider
        attempts.append(
            RootSearchConfig(
                c_max=cfg.c_max, eps_cut=max(cfg.eps_cut / 2.0, 5e-4),
                axis_pad=cfg.axis_pad, guard=cfg.guard, disc=disc_cfg,
                seed=cfg.seed + 1, max_evals=2 * cfg.max_evals,
            )
        )
        attempts.append(
            RootSearchConfig(
                c_max=2.0 * cfg.c_max, eps_cut=cfg.eps_cut, axis_pad=cfg.axis_pad,
                guard=cfg.guard, disc=disc_cfg, seed=cfg.seed + 2,
                max_evals=4 * cfg.max_evals,
            )
        )
    count = None
    for trial in attempts:
        cache: dict = {}
        budget = _Budget(trial.max_evals)
        rng = np.random.default_rng(trial.seed)
        wa, wb, _, _ = _count_windings(f, trial, cache, budget, rng)
        count = 2 * (wa + wb)
        if expected_region is None:
            return count
        if count == ROOT_COUNT_BY_REGION[expected_region]:
            return count
    raise OracleMismatchError(
        f"count_roots found {count} eigenvalues at (theta={theta}, d={d}) "
        f"but region {expected_region} predicts "
        f"{ROOT_COUNT_BY_REGION[expected_region]}"
    )


def derivative_checks(d: float, side: Side, step: float = 1e-5,
                      crossing: float = 1e-3) -> dict:
    """Finite-difference checks of the origin derivative formulas.

    Compares dE/dc and dE/dd at c = 0 against the closed forms, reports
    the inward-crossing root speed |c(t)|/t on the unit circle, and the
    (signed) normal derivative of E(0; theta, d) across the circle.
    The closed forms imply root speed 2 (the value of E at inward
    distance t is 2Rt while dE/dc = +-iR), so root_speed_ratio ~ 2.
    """
    sqrt3_2 = math.sqrt(3.0) / 2.0
    for bad in (0.0, sqrt3_2, 1.0):
        if abs(d - bad) < 1e-9:
            raise DegenerateParameterError(f"d = {d} is a degenerate value")
    if not 0.0 < d < 1.0:
        raise DegenerateParameterError("need 0 < d < 1 off the degenerate set")

    r = math.sqrt(1.0 - d * d)
    R = 2.0 * math.pi * math.sin(TWO_PI * r) / r
    theta0 = r  # point (theta0, d) sits on the circle theta^2 + d^2 = 1

    sgn = 1.0 if side == Side.UPPER else -1.0
    e0 = evans(0.0, theta0, d, side=side)
    e_eps = evans(sgn * 1j * step, theta0, d)
    fd_dc = (e_eps - e0) / (sgn * 1j * step)
    dc_expected = 1j * R if side == Side.UPPER else -1j * R

    ep = evans(0.0, theta0, d + step, side=side)
    em = evans(0.0, theta0, d - step, side=side)
    fd_dd = (ep - em) / (2.0 * step)
    dd_expected = -2.0 * d * R

    # outward normal derivative of E(0; .) on the circle
    gp = evans(0.0, theta0 * (1.0 + step), d * (1.0 + step), side=side)
    gm = evans(0.0, theta0 * (1.0 - step), d * (1.0 - step), side=side)
    normal_fd = (gp - gm) / (2.0 * step)
    normal_expected = -2.0 * R

    # inward crossing: an imaginary pair is born with unit speed
    t = crossing
    th_t, d_t = theta0 * (1.0 - t), d * (1.0 - t)
    lo, hi = 0.2 * t, 5.0 * t
    glo = evans(1j * lo, th_t, d_t).real
    ghi = evans(1j * hi, th_t, d_t).real
    ratio = math.nan
    if glo * ghi < 0:
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            gm_ = evans(1j * mid, th_t, d_t).real
            if glo * gm_ <= 0:
                hi, ghi = mid, gm_
            else:
                lo, glo = mid, gm_
        ratio = 0.5 * (lo + hi) / t

    return {
        "d": d,
        "side": side,
        "R": R,
        "fd_dc": fd_dc,
        "dc_expected": dc_expected,
        "fd_dd": fd_dd,
        "dd_expected": dd_expected,
        "normal_fd": normal_fd,
        "normal_expected": normal_expected,
        "root_speed_ratio": ratio,
    }
