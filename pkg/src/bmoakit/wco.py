"""Weighted composition operators ``f -> psi (f o phi)`` acting on BMOA.

Pointwise quantities (for a base point ``a`` and ``b = phi(a)``)::

    alpha(a) = |psi(a)| ||sigma_b o phi o sigma_a||_2
    beta(a)  = L(b) ||psi o sigma_a - psi(a)||_2

and the estimators assembled from them and from the power seminorms
``||psi phi^n||_*``.  Limits (``limsup_n``, ``|phi(a)| -> 1``) are replaced
by finite proxies whose parameters travel with every report.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .disc_functions import (
    AliasingError,
    AnalyticFunction,
    BoundaryGrid,
    as_point,
    horner,
    next_power_of_two,
    roots_of_unity,
)
from .mobius import GRID_CAP, log_weight, poisson_weights, sigma_unchecked
from .norms import (
    Spectrum,
    SupSearchConfig,
    bmoa_seminorm_search,
    polar_eval,
    polar_points,
    sup_search,
)

logger = logging.getLogger(__name__)

SELF_MAP_TOL = 1e-9
TOUCH_TOL = 1e-12
POWER_GRID_CAP = 2**20
DEFAULT_N_MAX = 64
DEFAULT_RHO = (0.9, 0.95, 0.99)
APPROACH_RADII = (0.97, 0.98, 0.99, 0.993, 0.995)
_CHUNK_ENTRIES = 2**22


class SelfMapError(ValueError):
    """``phi`` leaves the closed disc somewhere on the circle."""

    def __init__(self, sup: float, point: complex):
        super().__init__(f"|phi| reaches {sup:.12g} at boundary point {point:.12g}")
        self.sup = sup
        self.point = point


class BoundaryBasePointError(ValueError):
    """``|phi(a)|`` is too close to 1 for ``sigma_{phi(a)}`` to be usable."""


def boundary_sup(f: AnalyticFunction, m: int | None = None) -> tuple:
    """Max of ``|f|`` on the circle: dense scan plus a bounded 1-D polish."""
    m = m or next_power_of_two(max(4096, 64 * (f.degree + 1)))
    th = 2 * np.pi * np.arange(m) / m
    vals = np.abs(horner(f.coefficients, np.exp(1j * th)))
    j = int(np.argmax(vals))
    best_t, best = th[j], float(vals[j])
    if f.degree > 0:
        h = 2 * np.pi / m
        res = minimize_scalar(
            lambda t: -abs(horner(f.coefficients, np.exp(1j * t))),
            bounds=(best_t - h, best_t + h),
            method="bounded",
            options={"xatol": 1e-13},
        )
        if -res.fun > best:
            best, best_t = float(-res.fun), float(res.x)
    return best, complex(np.exp(1j * best_t))


def derivative_sup_bound(f: AnalyticFunction) -> float:
    k = np.arange(f.coefficients.size)
    return float(np.sum(k * np.abs(f.coefficients)))


@dataclass(frozen=True, eq=False)
class SymbolPair:
    """Validated ``(psi, phi)`` with ``phi`` a self-map of the disc."""

    psi: AnalyticFunction
    phi: AnalyticFunction
    phi_sup_estimate: float = field(init=False)
    phi_sup_point: complex = field(init=False)

    def __post_init__(self):
        for name in ("psi", "phi"):
            v = getattr(self, name)
            if not isinstance(v, AnalyticFunction):
                object.__setattr__(self, name, AnalyticFunction(v))
        sup, point = boundary_sup(self.phi)
        if sup > 1.0 + SELF_MAP_TOL:
            raise SelfMapError(sup, point)
        object.__setattr__(self, "phi_sup_estimate", sup)
        object.__setattr__(self, "phi_sup_point", point)

    @property
    def maps_strictly_inside(self) -> bool:
        return self.phi_sup_estimate < 1.0

    @property
    def phi_slope(self) -> float:
        return max(1.0, derivative_sup_bound(self.phi))

    def psi_at(self, z):
        return horner(self.psi.coefficients, z)

    def phi_at(self, z):
        return horner(self.phi.coefficients, z)

    def to_dict(self) -> dict:
        def pairs(f):
            return [[float(c.real), float(c.imag)] for c in f.coefficients]

        return {"psi": pairs(self.psi), "phi": pairs(self.phi)}


@dataclass
class EstimateReport:
    value: float
    parts: dict
    proxy_metadata: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "parts": dict(self.parts),
            "proxy_metadata": dict(self.proxy_metadata),
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, default=str)


def _report(parts: dict, meta: dict, warnings: list) -> EstimateReport:
    return EstimateReport(float(sum(parts.values())), parts, meta, warnings)


# --------------------------------------------------------------------------
# witness functions


@dataclass(frozen=True)
class ClosedForm:
    """Closed-form analytic function of one parameter ``b = phi(a)``."""

    name: str
    b: complex
    func: Callable = field(repr=False, compare=False)

    def __call__(self, z):
        return self.func(np.asarray(z, dtype=complex))

    def taylor(self, n: int = 128) -> AnalyticFunction:
        raise NotImplementedError


@dataclass(frozen=True)
class MobiusWitness(ClosedForm):
    """``sigma_b - b = (|b|^2 - 1) sum_n conj(b)^n w^(n+1)``."""

    def taylor(self, n: int = 128) -> AnalyticFunction:
        b = self.b
        c = np.zeros(n + 1, dtype=complex)
        c[1:] = (abs(b) ** 2 - 1.0) * np.conj(b) ** np.arange(n)
        return AnalyticFunction(c)


def test_f(pair: SymbolPair, a) -> MobiusWitness:
    """``f_a = sigma_{phi(a)} - phi(a)``."""
    b = _image(pair, a)
    return MobiusWitness("f_a", b, lambda w: (abs(b) ** 2 - 1.0) * w / (1.0 - np.conj(b) * w))


def test_g(pair: SymbolPair, a) -> ClosedForm:
    """``g_a = h^2 / h(phi(a))`` with ``h(z) = log(2 / (1 - conj(phi(a)) z))``.

    ``1 - conj(b) z`` has positive real part on the closed disc, so the
    principal logarithm is analytic there.
    """
    b = _image(pair, a)
    hb = math.log(2.0 / (1.0 - abs(b) ** 2))

    def g(z):
        h = np.log(2.0) - np.log(1.0 - np.conj(b) * z)
        return h * h / hb

    return ClosedForm("g_a", b, g)


test_f.__test__ = False
test_g.__test__ = False


def _image(pair: SymbolPair, a) -> complex:
    a = as_point(a)
    b = complex(pair.phi_at(a))
    if abs(b) >= 1.0 - TOUCH_TOL:
        raise BoundaryBasePointError(f"|phi(a)| = {abs(b)!r} at a = {a!r}")
    return b


def witness_grid_size(pair: SymbolPair, b: complex, minimum: int = 1024) -> int:
    """Grid resolving ``F o phi`` for ``F`` singular at ``1 / conj(b)``."""
    need = max(minimum, 64.0 * pair.phi_slope / max(1.0 - abs(b), 1e-15))
    return min(next_power_of_two(need), GRID_CAP)


# --------------------------------------------------------------------------
# operator application


def apply_wco(pair: SymbolPair, f, m: int | None = None) -> BoundaryGrid:
    """Boundary grid of ``psi (f o phi)``."""
    if isinstance(f, AnalyticFunction):
        deg = pair.psi.truncation_degree + f.truncation_degree * pair.phi.truncation_degree
        if m is None:
            m = next_power_of_two(max(64, 2 * (deg + 1)))
        elif m < 2 * (deg + 1):
            raise AliasingError(f"grid {m} < 2 ({deg} + 1)")
        inner = horner(f.coefficients, pair.phi_at(roots_of_unity(m)))
    else:
        if m is None:
            m = witness_grid_size(pair, getattr(f, "b", 0.0))
        inner = f(pair.phi_at(roots_of_unity(m)))
    xi = roots_of_unity(m)
    return BoundaryGrid(pair.psi_at(xi) * inner)


def wco_seminorm(pair: SymbolPair, f, cfg: SupSearchConfig | None = None, m: int | None = None):
    """``||W f||_*`` together with ``|(W f)(0)|``."""
    g = apply_wco(pair, f, m)
    res = bmoa_seminorm_search(g, 2.0, cfg)
    f0 = complex(f(pair.phi_at(0.0))) if callable(f) else 0j
    return res, abs(complex(pair.psi_at(0.0)) * f0)


# --------------------------------------------------------------------------
# alpha and beta


def _alpha_grid(pair: SymbolPair, a_abs: float, b_abs: float) -> int:
    need = max(1024.0, 64.0 / (1.0 - a_abs), 64.0 * pair.phi_slope / max(1.0 - b_abs, 1e-15))
    return min(next_power_of_two(need), GRID_CAP)


def alpha_values(pair: SymbolPair, points) -> np.ndarray:
    """``alpha`` at many base points; NaN where ``|phi(a)| >= 1 - 1e-12``.

    ``||sigma_b o phi o sigma_a||_2^2`` is computed as the Poisson integral of
    ``|sigma_b o phi|^2`` at ``a``, which keeps the kernel and the symbol
    singularity resolved separately.
    """
    pts = np.asarray(points, dtype=complex).ravel()
    out = np.full(pts.size, np.nan)
    bs = pair.phi_at(pts)
    psi_a = np.abs(pair.psi_at(pts))
    ok = np.abs(bs) < 1.0 - TOUCH_TOL
    sizes = np.zeros(pts.size, dtype=int)
    sizes[ok] = [_alpha_grid(pair, abs(a), abs(b)) for a, b in zip(pts[ok], bs[ok])]
    for m in np.unique(sizes[ok]):
        m = int(m)
        idx = np.flatnonzero(ok & (sizes == m))
        phi_b = pair.phi_at(roots_of_unity(m))
        step = max(1, _CHUNK_ENTRIES // m)
        for s0 in range(0, idx.size, step):
            blk = idx[s0 : s0 + step]
            w = poisson_weights(pts[blk], m)
            comp = sigma_unchecked(bs[blk][:, None], phi_b[None, :])
            out[blk] = psi_a[blk] * np.sqrt(np.mean(w * np.abs(comp) ** 2, axis=1))
    return out


def alpha(pair: SymbolPair, a, method: str = "poisson", m: int | None = None) -> float:
    a = as_point(a)
    b = _image(pair, a)
    if method == "poisson" and m is None:
        return float(alpha_values(pair, [a])[0])
    m = m or _alpha_grid(pair, abs(a), abs(b))
    xi = roots_of_unity(m)
    if method == "poisson":
        vals = np.abs(sigma_unchecked(b, pair.phi_at(xi))) ** 2
        norm = math.sqrt(float(np.mean(poisson_weights([a], m)[0] * vals)))
    elif method == "pullback":
        comp = sigma_unchecked(b, pair.phi_at(sigma_unchecked(a, xi)))
        norm = math.sqrt(float(np.mean(np.abs(comp) ** 2)))
    else:
        raise ValueError(f"unknown method {method!r}")
    return abs(complex(pair.psi_at(a))) * norm


def beta_values(pair: SymbolPair, points) -> np.ndarray:
    pts = np.asarray(points, dtype=complex).ravel()
    spec = Spectrum.of(pair.psi).centered()
    fa, pa = spec.at_points(pts)
    tn = np.sqrt(np.maximum(pa - np.abs(fa) ** 2, 0.0))
    bs = np.abs(pair.phi_at(pts))
    out = np.full(pts.size, np.nan)
    ok = bs < 1.0 - TOUCH_TOL
    out[ok] = np.log(2.0 / (1.0 - bs[ok] ** 2)) * tn[ok]
    return out


def beta(pair: SymbolPair, a) -> float:
    a = as_point(a)
    _image(pair, a)
    return float(beta_values(pair, [a])[0])


def _beta_polar(pair: SymbolPair, spec: Spectrum):
    def objective(radii, angles):
        tn = np.sqrt(spec.transform_sq_polar(radii, angles))
        b = np.abs(polar_eval(pair.phi.coefficients, radii, angles))
        with np.errstate(divide="ignore", invalid="ignore"):
            val = np.log(2.0 / (1.0 - b**2)) * tn
        return np.where(b < 1.0 - TOUCH_TOL, val, -np.inf)

    return objective


def _alpha_polar(pair: SymbolPair):
    def objective(radii, angles):
        pts = polar_points(radii, angles)
        vals = alpha_values(pair, pts).reshape(pts.shape)
        return np.where(np.isnan(vals), -np.inf, vals)

    return objective


def sup_beta(pair: SymbolPair, cfg: SupSearchConfig | None = None):
    return sup_search(_beta_polar(pair, Spectrum.of(pair.psi).centered()), cfg)


def sup_alpha(pair: SymbolPair, cfg: SupSearchConfig | None = None):
    return sup_search(_alpha_polar(pair), cfg)


# --------------------------------------------------------------------------
# powers


def power_grid_size(pair: SymbolPair, n_max: int) -> int:
    deg = pair.psi.degree + n_max * pair.phi.degree
    m = 64
    while m < 2 * (deg + 1):
        m *= 2
        if m > POWER_GRID_CAP:
            raise AliasingError(f"degree {deg} needs a grid beyond {POWER_GRID_CAP}")
    return m


def power_seminorm_search(pair: SymbolPair, n_max: int = DEFAULT_N_MAX,
                          cfg: SupSearchConfig | None = None) -> list:
    """Sup-search results for ``||psi phi^n||_*``, ``n = 0..n_max``.

    ``psi phi^n`` is formed pointwise on one boundary grid sized for the
    largest degree; coefficients are only recovered by FFT.
    """
    if n_max < 0 or n_max > 512:
        raise ValueError("n_max must lie in [0, 512]")
    m = power_grid_size(pair, n_max)
    xi = roots_of_unity(m)
    samples = pair.psi_at(xi)
    phi_b = pair.phi_at(xi)
    out = []
    for n in range(n_max + 1):
        deg = pair.psi.degree + n * pair.phi.degree
        spec = Spectrum.of(BoundaryGrid(samples), degree=deg)
        out.append(bmoa_seminorm_search(spec, 2.0, cfg))
        samples = samples * phi_b
    return out


def power_seminorm_seq(pair: SymbolPair, n_max: int = DEFAULT_N_MAX,
                       cfg: SupSearchConfig | None = None) -> list:
    return [r.value for r in power_seminorm_search(pair, n_max, cfg)]


@dataclass(frozen=True)
class TailSup:
    value: float
    index: int
    window_start: int
    trend: str

    def to_dict(self) -> dict:
        return {"value": self.value, "index": self.index,
                "window_start": self.window_start, "trend": self.trend}


def _trend(first: float, last: float) -> str:
    tol = 1e-9 + 1e-6 * max(abs(first), abs(last))
    if last < first - tol:
        return "decreasing"
    if last > first + tol:
        return "increasing"
    return "flat"


def tail_sup(seq: Sequence[float], window_start: int | None = None) -> TailSup:
    """``max_{n >= window_start} seq[n]``: a finite stand-in for ``limsup``."""
    seq = list(seq)
    if not seq:
        raise ValueError("empty sequence")
    if window_start is None:
        window_start = (len(seq) - 1) // 2
    if not 0 <= window_start < len(seq):
        raise ValueError("window start outside the sequence")
    window = seq[window_start:]
    k = int(np.argmax(window))
    return TailSup(float(window[k]), window_start + k, window_start,
                   _trend(window[0], window[-1]))


# --------------------------------------------------------------------------
# boundary-approach sampling


def approach_points(pair: SymbolPair, cfg: SupSearchConfig | None = None,
                    rho_min: float = min(DEFAULT_RHO)) -> np.ndarray:
    """Base points concentrated where ``|phi(a)|`` approaches 1.

    The coarse polar grid is extended outward, and short rays are laid
    toward the boundary points where ``|phi|`` peaks above ``rho_min``.
    """
    cfg = cfg or SupSearchConfig()
    angles = 2 * np.pi * np.arange(cfg.angles_per_radius) / cfg.angles_per_radius
    radii = np.union1d(np.array(cfg.radii), np.array(APPROACH_RADII))
    radii = radii[radii <= cfg.max_radius]
    pts = [polar_points(radii, angles).ravel()]
    if pair.phi.degree > 0 and pair.phi_sup_estimate >= rho_min:
        m = 4096
        th = 2 * np.pi * np.arange(m) / m
        mod = np.abs(pair.phi_at(np.exp(1j * th)))
        peaks = np.flatnonzero((mod >= np.roll(mod, 1)) & (mod >= np.roll(mod, -1)) & (mod >= rho_min))
        peaks = peaks[np.argsort(-mod[peaks])][:8]
        ray_r = 1.0 - np.logspace(np.log10(0.3), np.log10(1.0 - cfg.max_radius), 12)
        for j in sorted(peaks):
            offs = th[j] + np.linspace(-0.05, 0.05, 9)
            pts.append(polar_points(ray_r, offs).ravel())
    return np.concatenate(pts)


def _filtered_sup(values: np.ndarray, mask: np.ndarray):
    sel = values[mask & np.isfinite(values)]
    return float(sel.max()) if sel.size else None


def _limsup_proxy(values, key, rho_list):
    """Per-``rho`` sups of ``values`` over points with ``key >= rho``."""
    per_rho = {}
    chosen = None
    for rho in sorted(rho_list):
        s = _filtered_sup(values, key >= rho)
        per_rho[str(rho)] = s
        if s is not None:
            chosen = (rho, s)
    return chosen, per_rho


# --------------------------------------------------------------------------
# estimators


def center_term(pair: SymbolPair) -> float:
    b = complex(pair.phi_at(0.0))
    if abs(b) >= 1.0:
        raise BoundaryBasePointError("phi(0) on the circle")
    return abs(complex(pair.psi_at(0.0))) * log_weight(b)


def norm_estimate_powers(pair: SymbolPair, cfg: SupSearchConfig | None = None,
                         n_max: int = DEFAULT_N_MAX) -> EstimateReport:
    """``|psi(0)| L(phi(0)) + sup_n ||psi phi^n||_* + sup_a beta(a)``."""
    seq = power_seminorm_seq(pair, n_max, cfg)
    sb = sup_beta(pair, cfg)
    k = int(np.argmax(seq))
    parts = {"center_term": center_term(pair), "power_term": float(seq[k]),
             "beta_term": max(sb.value, 0.0)}
    meta = {"n_max": n_max, "power_argmax_n": k, "beta_argmax": [sb.argmax.real, sb.argmax.imag],
            "search": (cfg or SupSearchConfig()).to_dict()}
    return _report(parts, meta, [])


def norm_estimate_classic(pair: SymbolPair, cfg: SupSearchConfig | None = None) -> EstimateReport:
    """``|psi(0)| L(phi(0)) + sup_a alpha(a) + sup_a beta(a)``."""
    warnings = []
    cfg = cfg or SupSearchConfig()
    pts = polar_points(np.array(cfg.radii), 2 * np.pi * np.arange(cfg.angles_per_radius) / cfg.angles_per_radius)
    touching = int(np.sum(np.abs(pair.phi_at(pts)) >= 1.0 - TOUCH_TOL))
    if touching:
        warnings.append(f"{touching} base points with |phi(a)| >= 1 - 1e-12 skipped")
    sa = sup_alpha(pair, cfg)
    sb = sup_beta(pair, cfg)
    parts = {"center_term": center_term(pair), "alpha_term": max(sa.value, 0.0),
             "beta_term": max(sb.value, 0.0)}
    meta = {"alpha_argmax": [sa.argmax.real, sa.argmax.imag],
            "beta_argmax": [sb.argmax.real, sb.argmax.imag], "search": cfg.to_dict()}
    return _report(parts, meta, warnings)


def _boundary_proxies(pair, cfg, rho_list, which):
    rho_list = tuple(sorted(rho_list or DEFAULT_RHO))
    pts = approach_points(pair, cfg, min(rho_list))
    key_phi = np.abs(pair.phi_at(pts))
    key_a = np.abs(pts)
    out = {}
    for name in which:
        vals = alpha_values(pair, pts) if name == "alpha" else beta_values(pair, pts)
        out[name] = {
            "phi": _limsup_proxy(vals, key_phi, rho_list),
            "a": _limsup_proxy(vals, key_a, rho_list),
        }
    return out, pts.size


def essnorm_estimate_powers(pair: SymbolPair, cfg: SupSearchConfig | None = None,
                            rho_list: Sequence[float] = DEFAULT_RHO,
                            n_max: int = DEFAULT_N_MAX) -> EstimateReport:
    """``limsup_n ||psi phi^n||_* + limsup_{|phi(a)| -> 1} beta(a)``."""
    warnings = []
    seq = power_seminorm_seq(pair, n_max, cfg)
    ts = tail_sup(seq)
    meta = {"n_max": n_max, "power_tail": ts.to_dict(), "rho_list": list(rho_list)}
    if pair.phi_sup_estimate < min(rho_list):
        beta_part = 0.0
        meta["beta_rho"] = None
    else:
        proxies, count = _boundary_proxies(pair, cfg, rho_list, ["beta"])
        chosen, per_rho = proxies["beta"]["phi"]
        meta["beta_per_rho"] = per_rho
        meta["sample_count"] = count
        if chosen is None:
            warnings.append("no sampled base point reaches the smallest rho; beta part set to 0")
            beta_part = 0.0
            meta["beta_rho"] = None
        else:
            meta["beta_rho"], beta_part = chosen
    return _report({"power_term": ts.value, "beta_term": beta_part}, meta, warnings)


def essnorm_estimate_boundary(pair: SymbolPair, cfg: SupSearchConfig | None = None,
                              rho_list: Sequence[float] = DEFAULT_RHO) -> EstimateReport:
    """``limsup_{|phi(a)| -> 1} (alpha + beta)`` with the ``|a| -> 1`` variant in metadata."""
    warnings = []
    meta = {"rho_list": list(rho_list)}
    proxies, count = _boundary_proxies(pair, cfg, rho_list, ["alpha", "beta"])
    meta["sample_count"] = count
    parts = {}
    for name in ("alpha", "beta"):
        chosen, per_rho = proxies[name]["phi"]
        a_chosen, a_per_rho = proxies[name]["a"]
        meta[f"{name}_per_rho"] = per_rho
        meta[f"{name}_abs_a_per_rho"] = a_per_rho
        meta[f"{name}_abs_a_value"] = a_chosen[1] if a_chosen else 0.0
        if pair.phi_sup_estimate < min(rho_list) or chosen is None:
            if pair.phi_sup_estimate >= min(rho_list):
                warnings.append(f"no sampled base point reaches rho for {name}; set to 0")
            parts[f"{name}_term"] = 0.0
        else:
            parts[f"{name}_term"] = chosen[1]
    meta["abs_a_value"] = meta["alpha_abs_a_value"] + meta["beta_abs_a_value"]
    return _report(parts, meta, warnings)


@dataclass
class Classification:
    verdict: str
    evidence: dict

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "evidence": self.evidence}


def classify_compactness(pair: SymbolPair, cfg: SupSearchConfig | None = None,
                         eps: float = 1e-3, n_max: int = DEFAULT_N_MAX,
                         rho_list: Sequence[float] = DEFAULT_RHO) -> Classification:
    """Compactness verdict from ``limsup_n ||psi phi^n||_*`` and ``limsup beta``.

    ``compact`` needs both proxies below ``eps`` and not increasing;
    ``non_compact`` needs one proxy above ``10 eps`` and not decreasing.
    """
    seq = power_seminorm_seq(pair, n_max, cfg)
    ts = tail_sup(seq)
    rho_list = tuple(sorted(rho_list))
    if pair.phi_sup_estimate < rho_list[0]:
        beta_seq = [0.0] * len(rho_list)
    else:
        proxies, _ = _boundary_proxies(pair, cfg, rho_list, ["beta"])
        per_rho = proxies["beta"]["phi"][1]
        beta_seq = [per_rho[str(r)] for r in rho_list]
        beta_seq = [0.0 if v is None else v for v in beta_seq]
    beta_last = next((v for v in reversed(beta_seq) if v), 0.0)
    beta_trend = _trend(beta_seq[0], beta_seq[-1])
    proxies = {"power": (ts.value, ts.trend), "beta": (beta_last, beta_trend)}
    if all(v < eps and t != "increasing" for v, t in proxies.values()):
        verdict = "compact"
    elif any(v > 10 * eps and t != "decreasing" for v, t in proxies.values()):
        verdict = "non_compact"
    else:
        verdict = "inconclusive"
    evidence = {
        "power_sequence": [float(x) for x in seq],
        "power_tail": ts.to_dict(),
        "beta_per_rho": dict(zip(map(str, rho_list), beta_seq)),
        "beta_trend": beta_trend,
        "eps": eps,
    }
    return Classification(verdict, evidence)


# --------------------------------------------------------------------------
# boundary sets


def boundary_set_integral(pair: SymbolPair, a, t: float, variant: str = "E",
                          m: int = 4096) -> float:
    """``(int_S |psi o sigma_a|^4)^(1/4)`` over ``S = E(phi, a, t)`` or its tilde.

    ``E`` uses ``|sigma_b o phi o sigma_a| > t``; ``Etilde`` uses ``|phi o sigma_a| > t``.
    """
    if not 0.0 < t < 1.0:
        raise ValueError("t must lie in (0, 1)")
    a = as_point(a)
    mask, psi4 = _eset_mask(pair, a, t, variant, m)
    return float(np.mean(np.where(mask, psi4, 0.0)) ** 0.25)


def _eset_mask(pair, a, t, variant, m):
    b = _image(pair, a)
    w = sigma_unchecked(a, roots_of_unity(m))
    pw = pair.phi_at(w)
    if variant == "E":
        mod = np.abs(sigma_unchecked(b, pw))
    elif variant in ("Etilde", "tilde"):
        mod = np.abs(pw)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return mod > t, np.abs(pair.psi_at(w)) ** 4


@dataclass
class TailQuantity:
    value: float
    r: float
    per_t: dict
    base_points: int
    grid: int

    def to_dict(self) -> dict:
        return {"value": self.value, "r": self.r, "per_t": self.per_t,
                "base_points": self.base_points, "grid": self.grid}


def tail_quantity(pair: SymbolPair, r: float, t_list: Sequence[float],
                  cfg: SupSearchConfig | None = None, m: int = 4096) -> TailQuantity:
    """``sup_{|phi(a)| <= r} (int_E |psi o sigma_a|^4)^(1/4)`` at each ``t``.

    The reported value is the one at the largest ``t`` (the integrals shrink
    as ``t`` grows, so that is the finite proxy of ``limsup_{t -> 1}``).
    """
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1)")
    ts = sorted(float(t) for t in t_list)
    if not ts or ts[0] <= 0.0 or ts[-1] >= 1.0:
        raise ValueError("t values must lie in (0, 1)")
    cfg = cfg or SupSearchConfig()
    pts = polar_points(np.array(cfg.radii), 2 * np.pi * np.arange(cfg.angles_per_radius) / cfg.angles_per_radius).ravel()
    pts = pts[np.abs(pair.phi_at(pts)) <= r]
    per_t = {str(t): 0.0 for t in ts}
    if np.abs(pair.psi.coefficients).max() == 0.0:
        return TailQuantity(0.0, r, per_t, int(pts.size), m)
    xi = roots_of_unity(m)
    step = max(1, _CHUNK_ENTRIES // m)
    for s0 in range(0, pts.size, step):
        blk = pts[s0 : s0 + step]
        w = sigma_unchecked(blk[:, None], xi[None, :])
        b = pair.phi_at(blk)
        mod = np.abs(sigma_unchecked(b[:, None], pair.phi_at(w)))
        psi4 = np.abs(pair.psi_at(w)) ** 4
        for t in ts:
            v = np.mean(np.where(mod > t, psi4, 0.0), axis=1) ** 0.25
            per_t[str(t)] = max(per_t[str(t)], float(v.max()))
    return TailQuantity(per_t[str(ts[-1])], r, per_t, int(pts.size), m)
