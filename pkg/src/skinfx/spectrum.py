"""Discrete spectrum: index, zero locations, and the boundary curves.

The zeros of the dispersion function come in +/- pairs; for each pair exactly
one member satisfies the decay condition Re(z0/eta) > 0 and is stored.  Their
count is tied to the winding index kappa of G by N = 2 + 2*kappa, which gives
three independent routes to the same integer:

  * index_kappa       -- regular branch of arg G at infinity (branch table),
  * find_discrete_zeros -- argument-principle tally over the upper half-plane,
  * classify_delta    -- position of delta = 1/a relative to the curve traced
                         by (p(mu), +/-q(mu)) (displacement current dropped).

Any pairwise disagreement raises rather than silently proceeding.

Also here: the boundary curves of the two-mode/four-mode transition -- the
delta-plane curve, the sextic root Y(mu), and its image in the
(gamma, eps) frequency-collision plane.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dispersion import BranchTable, build_branch_table, lambda_value
from .errors import (
    InconsistencyError,
    NonConvergenceError,
    RootSelectionError,
    SpectralBoundaryError,
)
from .params import KineticParams
from .specfun import (
    p_derivative_pv,
    p_pv,
    p_upper_derivative,
    q_derivative,
    q_value,
)

__all__ = [
    "SpectrumReport",
    "DomainClass",
    "CurvePoints",
    "index_kappa",
    "find_discrete_zeros",
    "classify_delta",
    "lambda_curve",
    "y_root",
    "l_curve",
]

MU_MAX_CURVE = 6.0  # q(6) < 1e-14; Gaussian tail


@dataclass(frozen=True)
class SpectrumReport:
    kappa: int
    n_zeros: int  # total count over the full plane, N = 2 + 2*kappa
    zeros: tuple  # decaying representatives, one per +/- pair
    residuals: tuple


@dataclass(frozen=True)
class DomainClass:
    label: str  # 'DeltaPlus' | 'DeltaMinus' | 'Boundary'
    distance: float  # distance from delta to the boundary curve


@dataclass(frozen=True)
class CurvePoints:
    mu: np.ndarray
    coords: np.ndarray  # (n, 2)
    branch: np.ndarray  # +1 / -1 per point


def index_kappa(kp: KineticParams, table: BranchTable | None = None) -> int:
    """Winding index of G from the regular branch of its argument."""
    if table is None:
        table = build_branch_table(kp)
    turns = table.arg[-1] / (2.0 * np.pi)
    kappa = int(round(turns))
    if abs(turns - kappa) > 0.05:
        raise SpectralBoundaryError(
            f"winding {turns:.4f} turns is not close to an integer; "
            "parameter point too close to the spectral boundary"
        )
    if kappa not in (0, 1):
        raise SpectralBoundaryError(f"index kappa={kappa} outside {{0, 1}}")
    return kappa


# -- argument-principle machinery -------------------------------------------

def _arg_change(f_vals):
    return float(np.sum(np.angle(f_vals[1:] / f_vals[:-1])))


def _refined_arg_change(func, path, t0, t1, n0=64, tol=1.5, budget=20_000):
    """Continuous argument change of func along path(t), t in [t0, t1].

    Bisects parameter intervals until adjacent phase steps are below `tol`
    (same < pi rule as the branch table).
    """
    ts = np.linspace(t0, t1, n0)
    vals = func(path(ts))
    while True:
        steps = np.angle(vals[1:] / vals[:-1])
        bad = np.flatnonzero(np.abs(steps) >= tol)
        if bad.size == 0:
            return _arg_change(vals)
        if ts.size + bad.size > budget:
            raise NonConvergenceError("winding refinement exceeded node budget")
        mids = 0.5 * (ts[bad] + ts[bad + 1])
        vmid = func(path(mids))
        if np.any(np.abs(vmid) == 0) or np.any(~np.isfinite(vmid)):
            raise NonConvergenceError("zero on integration contour")
        ts = np.insert(ts, bad + 1, mids)
        vals = np.insert(vals, bad + 1, vmid)


def _box_winding(func, x0, x1, y0, y1):
    """Zero count of an entire function inside a rectangle (counterclockwise)."""
    corners = [x0 + 1j * y0, x1 + 1j * y0, x1 + 1j * y1, x0 + 1j * y1, x0 + 1j * y0]
    total = 0.0
    for za, zb in zip(corners[:-1], corners[1:]):
        total += _refined_arg_change(func, lambda t, za=za, zb=zb: za + t * (zb - za),
                                     0.0, 1.0, n0=32)
    return int(round(total / (2.0 * np.pi)))


def _lambda_upper(kp):
    def f(z):
        return lambda_value(np.asarray(z, dtype=complex), kp, side="above")
    return f


def _newton_polish(kp, z, max_iter=100):
    f = _lambda_upper(kp)
    scale = max(1.0, abs(kp.b - kp.a) * abs(z) ** 2)
    for _ in range(max_iter):
        fz = complex(f(np.array([z]))[0])
        if abs(fz) < 1e-14 * scale:
            return z
        dfz = 2.0 * kp.b * z - kp.a * complex(p_upper_derivative(z))
        step = fz / dfz
        z = z - step
        if abs(step) < 1e-15 * max(1.0, abs(z)):
            fz = complex(f(np.array([z]))[0])
            if abs(fz) < 1e-12 * scale:
                return z
    raise NonConvergenceError(f"Newton did not converge near z={z:.6g}")


def _subdivide(func, box, count, out, depth=0):
    """Recursively isolate `count` zeros inside box = (x0, x1, y0, y1)."""
    x0, x1, y0, y1 = box
    if depth > 60:
        raise NonConvergenceError("zero subdivision recursion limit")
    if count == 0:
        return
    if count == 1 and max(x1 - x0, y1 - y0) < 0.05:
        out.append(complex(0.5 * (x0 + x1), 0.5 * (y0 + y1)))
        return
    vertical = (x1 - x0) >= (y1 - y0)
    for frac in (0.5, 0.55, 0.61, 0.47):
        if vertical:
            xm = x0 + frac * (x1 - x0)
            boxes = [(x0, xm, y0, y1), (xm, x1, y0, y1)]
        else:
            ym = y0 + frac * (y1 - y0)
            boxes = [(x0, x1, y0, ym), (x0, x1, ym, y1)]
        try:
            counts = [_box_winding(func, *b) for b in boxes]
        except NonConvergenceError:
            continue  # split line too close to a zero; shift it
        if sum(counts) == count:
            for b, c in zip(boxes, counts):
                _subdivide(func, b, c, out, depth + 1)
            return
    raise NonConvergenceError("could not split zero-search box consistently")


def _search_radius(kp: KineticParams) -> float:
    ba = kp.b - kp.a
    if abs(ba) < 1e-12 * (abs(kp.a) + abs(kp.b)):
        raise SpectralBoundaryError(
            "b ~ a: quadratic growth of lambda degenerates; search radius undefined"
        )
    r = np.sqrt(abs((1.0 - kp.a / 2.0) / ba))
    return 4.0 * max(r, 0.5)


def find_discrete_zeros(kp: KineticParams, report_kappa: int) -> SpectrumReport:
    """Locate the decaying zeros by argument-principle subdivision + Newton.

    The upper branch of lambda continues to an entire function whose zeros in
    the open upper half-plane are exactly one representative per +/- pair, so
    the tally there must equal 1 + kappa.
    """
    func = _lambda_upper(kp)
    expected = 1 + report_kappa
    R = _search_radius(kp)
    # small margin above the real axis is not needed: lambda_above has no real
    # zeros away from spectral boundaries (guarded by g_coefficient elsewhere)
    count = _box_winding(func, -R, R, 0.0, R)
    if count != expected:
        raise InconsistencyError(
            f"argument-principle tally {count} in the upper half-plane "
            f"disagrees with 1 + kappa = {expected}"
        )
    seeds: list = []
    _subdivide(func, (-R, R, 0.0, R), count, seeds)
    zeros_upper = [_newton_polish(kp, z) for z in seeds]
    # dedupe (paranoia against a box split straddling one zero)
    uniq: list = []
    for z in zeros_upper:
        if all(abs(z - u) > 1e-8 for u in uniq):
            uniq.append(z)
    if len(uniq) != expected:
        raise InconsistencyError(
            f"located {len(uniq)} distinct zeros, expected {expected}"
        )
    reps, residuals = [], []
    for z in uniq:
        decay = (kp.z0 / z).real
        if abs(decay) < 1e-12:
            raise SpectralBoundaryError(f"zero {z:.6g} sits on the decay boundary")
        rep = z if decay > 0 else -z
        res = abs(complex(lambda_value(rep, kp, side="auto")))
        bound = 1e-10 * max(1.0, abs(kp.b - kp.a) * abs(rep) ** 2)
        if res > bound:
            raise InconsistencyError(
                f"zero residual {res:.3e} exceeds bound {bound:.3e} at {rep:.6g}"
            )
        reps.append(rep)
        residuals.append(res)
    order = np.argsort(np.abs(reps))
    reps = tuple(reps[i] for i in order)
    residuals = tuple(residuals[i] for i in order)
    return SpectrumReport(kappa=report_kappa, n_zeros=2 + 2 * report_kappa,
                          zeros=reps, residuals=residuals)


# -- delta-plane classification ---------------------------------------------

def _curve_point(mu, sign):
    return p_pv(mu) + 1j * sign * q_value(mu)


def _curve_distance(delta, n=2000):
    """Distance from delta to the boundary curve, refined locally.

    Newton iteration on the stationarity condition of the squared distance,
    with closed-form curve derivatives.  (A bounded scalar minimizer cannot
    localize the foot point below sqrt(eps)*mu, which overestimates the
    distance of on-curve points by ~|p'|*1e-7 -- far above the boundary
    classification threshold.)
    """
    mu = np.linspace(0.0, MU_MAX_CURVE, n)
    best = np.inf
    for sign in (1.0, -1.0):
        pts = _curve_point(mu, sign)
        d = np.abs(pts - delta)
        i = int(np.argmin(d))
        lo = mu[max(i - 1, 0)]
        hi = mu[min(i + 1, n - 1)]
        m = mu[i]
        for _ in range(100):
            r = complex(_curve_point(np.float64(m), sign)) - delta
            dc = float(p_derivative_pv(m)) + 1j * sign * float(q_derivative(m))
            # f(m) = |r|^2 / 2;  f' = Re(conj(r) dc);  Gauss-Newton Hessian
            grad = (r.conjugate() * dc).real
            hess = abs(dc) ** 2
            if hess == 0.0:
                break
            step = grad / hess
            m = min(max(m - step, lo), hi)
            if abs(step) < 1e-16 * max(1.0, abs(m)):
                break
        refined = abs(complex(_curve_point(np.float64(m), sign)) - delta)
        best = min(best, refined, float(d[i]))
    # beyond MU_MAX_CURVE the curve hugs the real axis within q(MU_MAX_CURVE)
    # < 2e-14 all the way to +infinity; without this tail term, near-real
    # delta with large real part would never be flagged as boundary-adjacent
    if delta.real >= float(p_pv(MU_MAX_CURVE)):
        best = min(best, abs(delta.imag))
    return best


def classify_delta(kp: KineticParams, n=4000) -> DomainClass:
    """Locate delta = 1/a relative to the closed curve (p(mu), +/-q(mu)).

    The displacement-current term is dropped here by construction: delta
    depends on a only.  Winding-number based; |winding| = 1 means the
    four-zero region.
    """
    delta = kp.delta
    dist = _curve_distance(delta)
    if dist < 1e-9 * (1.0 + abs(delta)):
        return DomainClass(label="Boundary", distance=dist)
    mu = np.linspace(0.0, MU_MAX_CURVE, n)
    loop = np.concatenate([_curve_point(mu, +1.0), _curve_point(mu[::-1], -1.0)])
    loop = np.append(loop, loop[0])
    rel = loop - delta
    winding = int(round(np.sum(np.angle(rel[1:] / rel[:-1])) / (2.0 * np.pi)))
    label = "DeltaPlus" if winding != 0 else "DeltaMinus"
    return DomainClass(label=label, distance=dist)


# -- boundary curves ---------------------------------------------------------

def lambda_curve(n_points: int) -> CurvePoints:
    """The delta-plane boundary curve, both +/- branches over [0, MU_MAX_CURVE]."""
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    mu = np.linspace(0.0, MU_MAX_CURVE, n_points)
    p, q = p_pv(mu), q_value(mu)
    mu_all = np.concatenate([mu, mu])
    coords = np.column_stack([np.concatenate([p, p]),
                              np.concatenate([q, -q])])
    branch = np.concatenate([np.ones(n_points), -np.ones(n_points)])
    return CurvePoints(mu=mu_all, coords=coords, branch=branch)


def _sextic_residual(t, p, q):
    return 64.0 * t**3 - 48.0 * p * t**2 + 3.0 * (3.0 * p**2 - q**2) * t + q**2 * p


def y_root(mu: float) -> float:
    """The unique admissible root nu1 = Y(mu) of the boundary-curve sextic.

    Solves the cubic in t = nu1**2, then filters: t real and nonnegative,
    radicand 3*t - p >= 0, and the pre-squaring equation
    nu1**3 - 3*nu1*(3*nu1**2 - p) = q*sqrt(3*nu1**2 - p)
    with the POSITIVE sign (squaring introduced the mirror root belonging to
    the lower, -q, branch of the boundary curve; restricting to the upper
    branch leaves exactly one root).
    """
    mu = float(mu)
    if mu < 0:
        raise ValueError("mu must be >= 0")
    if mu == 0.0:
        return 0.0
    p = float(p_pv(mu))
    q = float(q_value(mu))
    coeffs = [64.0, -48.0 * p, 3.0 * (3.0 * p**2 - q**2), q**2 * p]
    roots = np.roots(coeffs)
    scale = max(1.0, abs(p)) ** 3

    def branch_eq(nu):
        rad = 3.0 * nu * nu - p
        if rad < 0.0:
            return None, None
        f = -8.0 * nu**3 + 3.0 * p * nu - q * np.sqrt(rad)
        df = -24.0 * nu * nu + 3.0 * p
        if rad > 0.0:
            df -= 3.0 * q * nu / np.sqrt(rad)
        return f, df

    survivors = []
    for t in roots:
        # near-double roots (q -> 0) can surface as a conjugate pair with a
        # small spurious imaginary part; the polished residual check below is
        # the real acceptance gate, so the filter here is deliberately loose
        if abs(t.imag) > 1e-4 * max(1.0, abs(t.real)):
            continue
        t = t.real
        if t < -1e-14 * scale:
            continue
        rad = 3.0 * t - p
        if rad < -1e-10 * max(1.0, abs(p)):
            continue
        # Newton polish directly on the unsquared upper-branch equation:
        # near mu where q is tiny the cubic's two admissible roots nearly
        # collide and lose half their digits, but each branch equation
        # keeps a well-conditioned simple root
        nu = np.sqrt(max(t, 0.0))
        converged = False
        for _ in range(60):
            f, df = branch_eq(nu)
            if f is None or df == 0.0:
                break
            step = f / df
            nu -= step
            if abs(step) < 1e-15 * max(1.0, abs(nu)):
                converged = True
                break
        if not converged or nu < 0.0:
            continue
        f, _ = branch_eq(nu)
        if f is None or abs(f) > 1e-9 * max(1.0, 8.0 * abs(nu) ** 3):
            continue
        survivors.append(float(nu))
    uniq: list = []
    for nu in sorted(survivors):
        if all(abs(nu - u) > 1e-7 * max(1.0, nu) for u in uniq):
            uniq.append(nu)
    if len(uniq) != 1:
        raise RootSelectionError(
            f"root filtering left {len(uniq)} candidates at mu={mu:.6g}: {uniq}; "
            f"(p={p:.6g}, q={q:.6g})"
        )
    return float(uniq[0])


def l_curve(v_c: float, n_points: int) -> CurvePoints:
    """Image of the boundary curve in the (gamma, eps) plane at given v_c."""
    if v_c <= 0:
        raise ValueError("v_c must be > 0")
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    mu = np.linspace(0.0, MU_MAX_CURVE, n_points)
    gam = np.empty(n_points)
    eps = np.empty(n_points)
    for i, m in enumerate(mu):
        y = y_root(m)
        rad = max(3.0 * y * y - float(p_pv(m)), 0.0)
        gam[i] = v_c * np.sqrt(rad)
        eps[i] = v_c * y
    return CurvePoints(mu=mu, coords=np.column_stack([gam, eps]),
                       branch=np.ones(n_points))
