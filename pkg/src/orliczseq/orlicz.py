"""Convex gauge functions and the sequence norms they induce.

A gauge M is nondecreasing and convex with M(0) = 0 and M(t) -> inf.  The
primary norm of a coefficient sequence is the Luxemburg norm

    inf { a > 0 : sum_k M(|c_k| / a) <= 1 },

solved here by bisection on the defining inequality.  The dual (Orlicz) norm
is computed through the equivalent one-parameter form

    inf_{kappa > 0} (1 + sum_k M(kappa |c_k|)) / kappa,

and its correctness is enforced by the two-sided comparison with the
Luxemburg norm and by dual feasibility, which the test suite checks
independently of this formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from ._search import golden_max, golden_min

__all__ = [
    "OrliczFunction",
    "power",
    "exp_minus_one",
    "power_log",
    "from_spec",
    "conjugate",
    "luxemburg_norm",
    "orlicz_norm",
    "dual_witness",
]

INF = math.inf

# Maximizer search for the numeric conjugate gives up (declares +inf) here.
_UNBOUNDED_U = 1e30


@dataclass(frozen=True)
class OrliczFunction:
    """A convex gauge together with the pieces the solvers need.

    ``eval`` and ``right_derivative`` must accept scalars and numpy arrays.
    ``closed_form_conjugate`` / ``closed_form_inverse`` are optional shortcuts;
    when absent the numeric routes are used.
    """

    name: str
    eval: Callable
    right_derivative: Callable
    param: Optional[float] = None
    closed_form_conjugate: Optional[Callable] = None
    closed_form_inverse: Optional[Callable] = None

    def spec_dict(self) -> dict:
        out = {"family": self.name}
        if self.param is not None:
            out["p"] = self.param
        return out

    def __repr__(self):
        if self.param is not None:
            return f"OrliczFunction({self.name}, p={self.param})"
        return f"OrliczFunction({self.name})"


def validate_gauge(phi: OrliczFunction, *, grid_size: int = 1024, tol: float = 1e-9) -> None:
    """Sampled-grid checks of the gauge axioms; raises ValueError on failure.

    Convexity is checked by midpoint inequality on a log-spaced grid, not
    proved.  The right derivative must be nondecreasing and reproduce M by
    integration within quadrature tolerance.
    """
    m0 = float(phi.eval(0.0))
    if abs(m0) > tol:
        raise ValueError(f"{phi.name}: M(0) = {m0}, expected 0")
    t = np.logspace(-6, 3, grid_size)
    with np.errstate(over="ignore", invalid="ignore"):
        m = np.asarray(phi.eval(t), dtype=float)
        if np.any(np.diff(m) < -tol * np.maximum(m[1:], 1.0)):
            raise ValueError(f"{phi.name}: M is not nondecreasing on the test grid")
        mid = np.asarray(phi.eval((t[:-2] + t[2:]) / 2.0), dtype=float)
        finite = np.isfinite(m[:-2]) & np.isfinite(m[2:]) & np.isfinite(mid)
        lhs = mid[finite]
        rhs = (m[:-2][finite] + m[2:][finite]) / 2.0
        if np.any(lhs > rhs + tol * np.maximum(rhs, 1.0)):
            raise ValueError(f"{phi.name}: M fails midpoint convexity on the test grid")
        big = 1.0
        while float(phi.eval(big)) <= 1e6:
            big *= 2.0
            if big > 1e30:
                raise ValueError(f"{phi.name}: M does not appear to grow unboundedly")
        p = np.asarray(phi.right_derivative(t), dtype=float)
        if np.any(np.diff(p) < -tol * np.maximum(p[1:], 1.0)):
            raise ValueError(f"{phi.name}: right derivative is not nondecreasing")
    for u in (0.1, 1.0, 10.0):
        # midpoint rule: keeps clear of t = 0, where gauges with p slightly
        # above 1 have a right derivative that is 0 at the point itself but
        # near 1 immediately after
        step = u / 4096.0
        s = (np.arange(4096) + 0.5) * step
        quad = float(np.asarray(phi.right_derivative(s), dtype=float).sum() * step)
        mu = float(phi.eval(u))
        if abs(quad - mu) > 1e-4 * max(mu, 1.0):
            raise ValueError(f"{phi.name}: M(u) != integral of p on [0, {u}]")


def power(p: float) -> OrliczFunction:
    """M(t) = t**p for p >= 1.  For p = 1 the conjugate is the {0, +inf} gate."""
    return _power_cached(float(p))


@lru_cache(maxsize=None)
def _power_cached(p: float) -> OrliczFunction:
    if p < 1:
        raise ValueError("power gauge needs p >= 1")
    if p == 1:
        conj = lambda v: 0.0 if v <= 1.0 else INF
    else:
        q = p / (p - 1.0)
        scale = (p - 1.0) * p ** (-q)
        conj = lambda v: scale * v ** q
    phi = OrliczFunction(
        name="power",
        eval=lambda t: t ** p,
        right_derivative=lambda t: p * t ** (p - 1.0),
        param=p,
        closed_form_conjugate=conj,
        closed_form_inverse=lambda y: y ** (1.0 / p),
    )
    validate_gauge(phi)
    return phi


@lru_cache(maxsize=None)
def exp_minus_one() -> OrliczFunction:
    """M(t) = exp(t) - 1."""

    def conj(v):
        return float(v * math.log(v) - v + 1.0) if v > 1.0 else 0.0

    phi = OrliczFunction(
        name="exp_minus_one",
        eval=np.expm1,
        right_derivative=np.exp,
        closed_form_conjugate=conj,
        closed_form_inverse=np.log1p,
    )
    validate_gauge(phi)
    return phi


def power_log(p: float) -> OrliczFunction:
    """M(t) = t**p * log(1 + t) for p >= 1; no closed-form conjugate."""
    return _power_log_cached(float(p))


@lru_cache(maxsize=None)
def _power_log_cached(p: float) -> OrliczFunction:
    if p < 1:
        raise ValueError("power_log gauge needs p >= 1")
    phi = OrliczFunction(
        name="power_log",
        eval=lambda t: t ** p * np.log1p(t),
        right_derivative=lambda t: p * t ** (p - 1.0) * np.log1p(t) + t ** p / (1.0 + t),
        param=p,
    )
    validate_gauge(phi)
    return phi


_FAMILIES = {"power": (power, True), "exp_minus_one": (exp_minus_one, False), "power_log": (power_log, True)}


def from_spec(spec: dict) -> OrliczFunction:
    """Build a gauge from its JSON description, rejecting unknown keys.

    Accepted forms: {"family": "power", "p": 2}, {"family": "exp_minus_one"},
    {"family": "power_log", "p": 2}.
    """
    if not isinstance(spec, dict):
        raise ValueError("gauge spec must be a JSON object")
    family = spec.get("family")
    if family not in _FAMILIES:
        raise ValueError(f"unknown gauge family {family!r}")
    factory, takes_p = _FAMILIES[family]
    allowed = {"family", "p"} if takes_p else {"family"}
    extra = set(spec) - allowed
    if extra:
        raise ValueError(f"unknown keys in gauge spec: {sorted(extra)}")
    if takes_p:
        if "p" not in spec:
            raise ValueError(f"family {family!r} requires the key 'p'")
        pval = spec["p"]
        if not isinstance(pval, (int, float)) or isinstance(pval, bool):
            raise ValueError("'p' must be a number")
        return factory(float(pval))
    return factory()


# -- Young conjugate -----------------------------------------------------------


def conjugate(phi: OrliczFunction, v: float, *, rtol: float = 1e-12) -> float:
    """Young conjugate sup_{u >= 0} (u*v - M(u)); may legitimately be +inf.

    Uses the closed form when the gauge provides one.  Otherwise the concave
    objective is maximized by golden section after expanding the interval
    until the maximizer is interior, which happens exactly when the right
    derivative of M reaches v.  If it never does the supremum is +inf.
    """
    v = float(v)
    if v < 0:
        raise ValueError("conjugate argument must be nonnegative")
    if v == 0.0:
        return 0.0
    if phi.closed_form_conjugate is not None:
        return float(phi.closed_form_conjugate(v))
    if float(phi.right_derivative(0.0)) >= v:
        return 0.0
    hi = 1.0
    while float(phi.right_derivative(hi)) < v:
        hi *= 2.0
        if hi > _UNBOUNDED_U:
            return INF
    _, best = golden_max(lambda u: u * v - float(phi.eval(u)), 0.0, hi, rtol=rtol)
    return max(float(best), 0.0)


# -- Luxemburg norm ------------------------------------------------------------


def _gauge_inverse(phi, y, side):
    """Solve M(t) = y for y in (0, 1]; side picks the conservative bracket end.

    side='upper' guarantees M(result) >= y, side='lower' the reverse; the
    norm brackets below rely on exactly these one-sided properties.
    """
    if phi.closed_form_inverse is not None:
        return float(phi.closed_form_inverse(y))
    lo, hi = 0.0, 1.0
    while float(phi.eval(hi)) < y:
        hi *= 2.0
        if hi > 1e30:
            raise ValueError(f"{phi.name}: cannot invert gauge at {y}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if float(phi.eval(mid)) >= y:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-15 * hi:
            break
    return hi if side == "upper" else lo


def _rho_rows(vals, a, phi):
    # sum_k M(w_k / a) per row; overflow saturates to +inf which the
    # bisection treats as "> 1".
    with np.errstate(over="ignore"):
        return np.asarray(phi.eval(vals / a[:, None]), dtype=float).sum(axis=1)


def _lux_block(vals, phi, rtol, max_iter):
    row_max = vals.max(axis=1)
    row_sum = vals.sum(axis=1)
    out = np.zeros(vals.shape[0])
    active = row_max > 0
    if not np.any(active):
        return out
    w = vals[active]
    nnz = int(np.count_nonzero(w, axis=1).max())
    m_one = _gauge_inverse(phi, 1.0, "upper")
    m_frac = _gauge_inverse(phi, 1.0 / nnz, "lower")
    # Provable bracket: at lo the largest term alone reaches 1; at hi
    # convexity with M(0)=0 pushes the whole sum below 1.
    lo = row_max[active] / m_one
    hi = row_sum[active] / m_frac
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        below = _rho_rows(w, mid, phi) <= 1.0
        hi = np.where(below, mid, hi)
        lo = np.where(below, lo, mid)
        if np.all(hi - lo <= rtol * hi):
            break
    out[active] = 0.5 * (lo + hi)
    return out


def _lux_rows(vals, phi, *, rtol=1e-12, max_iter=200):
    """Luxemburg norms of the rows of a nonnegative 2-d array."""
    vals = np.asarray(vals, dtype=float)
    rows, cols = vals.shape
    if cols == 0:
        return np.zeros(rows)
    block = max(1, 4_000_000 // max(cols, 1))
    if rows <= block:
        return _lux_block(vals, phi, rtol, max_iter)
    out = np.empty(rows)
    for i in range(0, rows, block):
        out[i : i + block] = _lux_block(vals[i : i + block], phi, rtol, max_iter)
    return out


def _abs_values(f):
    _, cs = f.as_arrays()
    a = np.abs(cs)
    if a.size and not np.all(np.isfinite(a)):
        raise ValueError("sequence contains non-finite coefficients")
    return a


def luxemburg_norm(phi: OrliczFunction, f, *, rtol: float = 1e-12) -> float:
    """Luxemburg norm inf { a > 0 : sum M(|c_k|/a) <= 1 }; 0 for the zero sequence.

    The map a -> sum M(|c_k|/a) is nonincreasing, so plain bisection applies;
    the result is the midpoint of the final bracket at relative width rtol.
    """
    a = _abs_values(f)
    if a.size == 0:
        return 0.0
    return float(_lux_rows(a[None, :], phi, rtol=rtol)[0])


# -- Orlicz (dual) norm ----------------------------------------------------------


def orlicz_norm(phi: OrliczFunction, f, *, rtol: float = 1e-12) -> float:
    """Dual norm sup { sum lam_k |c_k| : sum conj(lam_k) <= 1 }.

    Computed through the scalar form (1 + sum M(kappa |c_k|)) / kappa, whose
    derivative numerator kappa*rho'(kappa) - rho(kappa) - 1 is nondecreasing,
    making the objective unimodal in kappa.  When the objective keeps
    descending (gauges of linear growth) the infimum sits at kappa -> inf and
    the capped evaluation is returned; the cap scales with 1/||f|| so the
    absolute error stays ~1e-18 of the norm.
    """
    a = _abs_values(f)
    if a.size == 0:
        return 0.0
    lux = float(_lux_rows(a[None, :], phi, rtol=rtol)[0])

    def g(kappa):
        with np.errstate(over="ignore"):
            s = float(np.sum(phi.eval(kappa * a)))
        return (1.0 + s) / kappa

    x = 1.0 / lux
    lo_cap, hi_cap = 1e-18 * x, 1e18 * x
    gx = g(x)
    while x * 0.5 >= lo_cap:
        down = g(x * 0.5)
        if down >= gx:
            break
        x *= 0.5
        gx = down
    capped = True
    while x * 2.0 <= hi_cap:
        up = g(x * 2.0)
        if up >= gx:
            capped = False
            break
        x *= 2.0
        gx = up
    if capped:
        return gx
    _, val = golden_min(g, x * 0.5, x * 2.0, rtol=1e-11)
    return float(min(val, gx))


def dual_witness(phi: OrliczFunction, f, *, rtol: float = 1e-12):
    """Extremal dual weights lam_k = p(|c_k|) for f scaled to unit dual norm.

    Returns [(k, lam_k), ...] over the support.  The weights satisfy Young's
    equality lam_k * u_k = M(u_k) + conj(lam_k) term by term, are feasible
    (sum conj(lam_k) <= 1), and therefore sum lam_k * u_k never exceeds the
    dual norm of the scaled sequence.  Feasibility requires the unit-dual-norm
    scaling; scaling by the Luxemburg norm breaks it for fast-growing gauges.
    """
    ks, cs = f.as_arrays()
    a = np.abs(cs)
    if a.size == 0:
        raise ValueError("the zero sequence has no dual witness")
    if not np.all(np.isfinite(a)):
        raise ValueError("sequence contains non-finite coefficients")
    norm = orlicz_norm(phi, f, rtol=rtol)
    lam = np.asarray(phi.right_derivative(a / norm), dtype=float)
    return [(int(k), float(v)) for k, v in zip(ks, lam)]
