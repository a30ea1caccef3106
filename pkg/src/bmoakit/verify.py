"""Numerical checks of the inequalities and identities behind the estimators.

Each check maps one generated instance (a function or a symbol pair) to a
``CheckReport``.  Inequalities whose constant is not explicit are checked
against a pinned constant; pinned values are produced by ``sweep`` and
stored in ``pinned_constants.json`` next to this module.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

import numpy as np

from . import jsonio
from .disc_functions import AnalyticFunction, next_power_of_two, roots_of_unity, sample_on
from .mobius import GRID_CAP, log_weight, q_radius, s_factor, sigma_unchecked
from .norms import (
    SupSearchConfig,
    bmoa_norm,
    bmoa_seminorm,
    bmoa_seminorm_search,
    polar_points,
    transform_norm,
)
from .wco import (
    DEFAULT_RHO,
    SymbolPair,
    alpha_values,
    beta_values,
    boundary_sup,
    essnorm_estimate_boundary,
    essnorm_estimate_powers,
    norm_estimate_classic,
    norm_estimate_powers,
    power_seminorm_seq,
    sup_beta,
    tail_quantity,
    tail_sup,
    test_f,
    test_g,
    wco_seminorm,
)

HEADROOM = 1.1
EXACT_TOL = 1e-9
GARSIA_TOL = 1e-8
MOBIUS_SERIES_BOUND = 2.1
CONSISTENCY_FLOOR = 0.05
PINNED_FILE = "pinned_constants.json"


class UnknownCheckError(KeyError):
    pass


# --------------------------------------------------------------------------
# families

DETERMINISTIC_SYMBOLS = {
    "1": [1.0],
    "z": [0.0, 1.0],
    "z/2": [0.0, 0.5],
    "z^2": [0.0, 0.0, 1.0],
    "(1+z)/2": [0.5, 0.5],
    "1/2": [0.5],
    "0": [0.0],
}
DETERMINISTIC_PSI = ("1", "z", "z/2", "z^2", "(1+z)/2", "1/2")
DETERMINISTIC_PHI = ("z", "z/2", "z^2", "(1+z)/2", "1/2", "0")
DETERMINISTIC_FUNCTIONS = ("1", "z", "z/2", "z^2", "(1+z)/2")


def symbol(name: str) -> AnalyticFunction:
    return AnalyticFunction(DETERMINISTIC_SYMBOLS[name])


def deterministic_pairs() -> list:
    return [(f"psi={p},phi={q}", SymbolPair(symbol(p), symbol(q)))
            for p in DETERMINISTIC_PSI for q in DETERMINISTIC_PHI]


def _random_poly(rng, degree: int, scale: float) -> np.ndarray:
    c = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
    return scale * c / math.sqrt(2 * (degree + 1))


def random_self_map(rng, degree_bound: int, scale: float = 1.0) -> AnalyticFunction:
    """Random polynomial self-map of the disc.

    One in four touches the circle (rescaled by its boundary maximum);
    the rest are rescaled by ``1 / (sum |c_k| + 0.05)`` when that sum exceeds 1.
    """
    deg = int(rng.integers(1, degree_bound + 1))
    c = _random_poly(rng, deg, scale)
    if rng.uniform() < 0.25:
        sup, _ = boundary_sup(AnalyticFunction(c))
        c = c / sup * (1.0 - 1e-12)
    else:
        s = np.abs(c).sum()
        if s > 1.0:
            c = c / (s + 0.05)
    return AnalyticFunction(c)


@dataclass(frozen=True)
class SymbolFamily:
    """Seeded generator of check inputs.

    ``kind`` is ``"functions"`` (single polynomials) or ``"pairs"``.
    Deterministic members come first, then ``count`` random ones.
    """

    name: str = "default"
    kind: str = "pairs"
    count: int = 200
    degree_bound: int = 8
    coefficient_scale: float = 1.0
    seed: int = 0
    include_deterministic: bool = True
    explicit: tuple = ()

    def generate(self) -> list:
        if self.explicit:
            return list(self.explicit)
        out = []
        if self.include_deterministic:
            if self.kind == "pairs":
                out.extend(deterministic_pairs())
            else:
                out.extend((n, symbol(n)) for n in DETERMINISTIC_FUNCTIONS)
        rng = np.random.default_rng(self.seed)
        for i in range(self.count):
            if self.kind == "pairs":
                dpsi = int(rng.integers(0, self.degree_bound + 1))
                psi = AnalyticFunction(_random_poly(rng, dpsi, self.coefficient_scale))
                phi = random_self_map(rng, self.degree_bound)
                out.append((f"{self.name}#{i}", SymbolPair(psi, phi)))
            else:
                d = int(rng.integers(0, self.degree_bound + 1))
                out.append((f"{self.name}#{i}", AnalyticFunction(_random_poly(rng, d, self.coefficient_scale))))
        return out


# --------------------------------------------------------------------------
# reports


@dataclass
class CheckReport:
    check_id: str
    lhs: float
    rhs: float
    ratio: float
    passed: bool
    inputs_digest: str
    notes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"check_id": self.check_id, "lhs": self.lhs, "rhs": self.rhs,
                "ratio": self.ratio, "pass": self.passed,
                "inputs_digest": self.inputs_digest, "notes": self.notes}


def safe_ratio(lhs: float, rhs: float) -> float:
    if rhs == 0.0:
        return 1.0 if lhs == 0.0 else math.inf
    return lhs / rhs


def _digest(check_id: str, label: str, instance, params: dict) -> str:
    if isinstance(instance, SymbolPair):
        payload = instance.to_dict()
    else:
        payload = [[float(c.real), float(c.imag)] for c in instance.coefficients]
    text = jsonio.dump_line({"check": check_id, "label": label, "instance": payload, "params": params})
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class VerifyConfig:
    search: SupSearchConfig = field(default_factory=SupSearchConfig)
    n_max: int = 32
    base_radii: tuple = (0.0, 0.3, 0.6, 0.8)
    base_points_per_radius: int = 2
    rho_list: tuple = DEFAULT_RHO
    seed: int = 0

    def to_dict(self) -> dict:
        return {"search": self.search.to_dict(), "n_max": self.n_max,
                "base_radii": list(self.base_radii),
                "base_points_per_radius": self.base_points_per_radius,
                "rho_list": list(self.rho_list), "seed": self.seed}


@dataclass(frozen=True)
class Check:
    id: str
    description: str
    location: str
    kind: str  # identity | explicit | pinned | symmetric | band | count
    family_kind: str
    evaluator: Callable = field(repr=False)
    bound: float = 1.0
    tolerance: float = EXACT_TOL


@dataclass
class Outcome:
    lhs: float
    rhs: float
    notes: dict = field(default_factory=dict)
    extra_ok: bool = True
    ratio: float | None = None


# --------------------------------------------------------------------------
# helpers


def _base_points(pair: SymbolPair | None, cfg: VerifyConfig, rng) -> np.ndarray:
    pts = []
    for r in cfg.base_radii:
        k = 1 if r == 0.0 else cfg.base_points_per_radius
        pts.extend(r * np.exp(2j * np.pi * rng.uniform(size=k)))
    pts = np.array(pts)
    if pair is not None:
        pts = pts[np.abs(pair.phi_at(pts)) < 0.95]
    return pts


class _Worst:
    """Tracks the base point with the largest ratio; no points means 0 / 0."""

    def __init__(self):
        self.best = None

    def beats(self, lhs: float, rhs: float) -> bool:
        return self.best is None or safe_ratio(lhs, rhs) > safe_ratio(self.best.lhs, self.best.rhs)

    def take(self, lhs: float, rhs: float, notes: dict) -> "_Worst":
        self.best = Outcome(float(lhs), float(rhs), notes)
        return self

    def outcome(self, extra_ok: bool, **notes) -> Outcome:
        out = self.best or Outcome(0.0, 0.0, {"base_points": 0})
        out.extra_ok = extra_ok
        out.notes.update(notes)
        return out


def _l2(v) -> float:
    return float(np.sqrt(np.mean(np.abs(v) ** 2)))


def _pullback_size(pair: SymbolPair, a: complex, b: complex) -> int:
    spread = (1.0 + abs(a)) / (1.0 - abs(a))
    need = 64.0 * pair.phi_slope * spread / max(1.0 - abs(b), 1e-6)
    return min(next_power_of_two(max(1024.0, need)), GRID_CAP)


class _Frame:
    """Values of the symbols on the ``sigma_a``-pullback of a uniform grid."""

    def __init__(self, pair: SymbolPair, a: complex, m: int | None = None):
        self.a = a
        self.b = complex(pair.phi_at(a))
        self.m = m or _pullback_size(pair, a, self.b)
        self.w = sigma_unchecked(a, roots_of_unity(self.m))
        self.psi_w = pair.psi_at(self.w)
        self.psi_a = complex(pair.psi_at(a))
        self.phi_w = pair.phi_at(self.w)
        self.psi_t = self.psi_w - self.psi_a


def _witness_norm(func, b: complex, cfg: VerifyConfig) -> float:
    m = min(next_power_of_two(max(1024.0, 64.0 / (1.0 - abs(b)))), GRID_CAP)
    grid = sample_on(func, m)
    return abs(complex(func(0.0))) + bmoa_seminorm(grid, 2.0, cfg.search)


# --------------------------------------------------------------------------
# evaluators: single functions


def _garsia(f: AnalyticFunction, cfg: VerifyConfig, rng) -> Outcome:
    r = 0.95 * math.sqrt(rng.uniform())
    a = r * np.exp(2j * np.pi * rng.uniform())
    c = transform_norm(f, a, 2, method="closed")
    pa = transform_norm(f, a, 2, method="poisson")
    pb = transform_norm(f, a, 2, method="pullback")
    scale = max(c, 1e-300)
    err = max(abs(pa - c), abs(pb - c), abs(pa - pb)) / scale if c > 0 else max(pa, pb)
    return Outcome(pa, c, {"a": a, "pullback": pb, "max_rel_err": err}, err <= GARSIA_TOL)


def _pointwise(f: AnalyticFunction, cfg: VerifyConfig, rng) -> Outcome:
    radii = np.array([0.0, 0.3, 0.6, 0.8, 0.9, 0.95, 0.99, 0.995])
    pts = polar_points(radii, 2 * np.pi * np.arange(32) / 32).ravel()
    vals = np.abs(f(pts)) / log_weight(pts)
    k = int(np.argmax(vals))
    return Outcome(float(vals[k]), bmoa_norm(f, cfg.search), {"argmax": pts[k]})


def _jn(f: AnalyticFunction, cfg: VerifyConfig, rng) -> Outcome:
    s4 = bmoa_seminorm(f, 4.0, cfg.search)
    s2 = bmoa_seminorm(f, 2.0, cfg.search)
    return Outcome(s4, s2)


def _schwarz(f: AnalyticFunction, cfg: VerifyConfig, rng) -> Outcome:
    g = f - complex(f.coefficients[0])
    worst = (0.0, 1.0, None)
    for t in (0.5, 0.75, 0.9):
        circle = t * roots_of_unity(4096)
        gmax = float(np.max(np.abs(g(circle))))
        radii = t * np.linspace(0.05, 1.0, 20)
        pts = polar_points(radii, 2 * np.pi * np.arange(64) / 64).ravel()
        lhs_vals = np.abs(g(pts)) / np.abs(pts)
        k = int(np.argmax(lhs_vals))
        rhs = 2.0 * gmax
        if safe_ratio(lhs_vals[k], rhs) > safe_ratio(worst[0], worst[1]):
            worst = (float(lhs_vals[k]), rhs, t)
    return Outcome(worst[0], worst[1], {"t": worst[2]})


def _sn_uniform(f: AnalyticFunction, cfg: VerifyConfig, rng) -> Outcome:
    norm = bmoa_norm(f, cfg.search)
    if norm == 0.0:
        return Outcome(0.0, 0.0, {"sequence": []})
    f = f * (1.0 / norm)
    r, t = 0.5, 0.75
    circle = q_radius(r, t) * roots_of_unity(512)
    ns = (1, 2, 4, 8, 16, 32, 64)
    seq = []
    for n in ns:
        rn = n / (1.0 + n)
        seq.append(float(np.max(np.abs(f(circle) - f(rn * circle)))))
    mono = all(b <= a + 1e-12 for a, b in zip(seq, seq[1:]))
    return Outcome(seq[-1], seq[0], {"n": list(ns), "sequence": seq, "r": r, "t": t}, mono)


# --------------------------------------------------------------------------
# evaluators: symbol pairs


def _littlewood(pair: SymbolPair, cfg: VerifyConfig, rng) -> Outcome:
    g = pair.psi - complex(pair.psi.coefficients[0])
    phi = pair.phi - complex(pair.phi.coefficients[0])
    sup, _ = boundary_sup(phi)
    if sup > 1.0:
        phi = phi * (1.0 / sup)
    norm = lambda h: float(np.sqrt(np.sum(np.abs(h.coefficients) ** 2)))
    lhs = norm(g.compose(phi))
    return Outcome(lhs, norm(phi) * norm(g))


def _alpha_by_witnesses(pair: SymbolPair, cfg: VerifyConfig, rng) -> Outcome:
    worst = _Worst()
    chain_ok = True
    sup_bound_ok = True
    for a in _base_points(pair, cfg, rng):
        fr = _Frame(pair, a)
        fa = test_f(pair, a)
        big_f = fa(fr.phi_w)
        sup_bound_ok &= bool(np.max(np.abs(big_f)) <= 2.0 + 1e-12)
        wf_t = fr.psi_w * big_f - fr.psi_a * fa(fr.b)
        alpha_grid = abs(fr.psi_a) * _l2(big_f + fr.b)
        chain_rhs = 2.0 * _l2(fr.psi_t) + _l2(wf_t)
        chain_ok &= alpha_grid <= chain_rhs * (1 + EXACT_TOL) + 1e-14
        res, _ = wco_seminorm(pair, fa, cfg.search)
        wf_star = max(res.value, _l2(wf_t))
        al = float(alpha_values(pair, [a])[0])
        be = float(beta_values(pair, [a])[0])
        lhs, rhs = al, be / log_weight(fr.b) + wf_star
        if worst.beats(lhs, rhs):
            worst = worst.take(lhs, rhs, {"a": a, "alpha_grid": alpha_grid, "chain_rhs": chain_rhs})
    return worst.outcome(chain_ok and sup_bound_ok, chain_ok=chain_ok, sup_bound_ok=sup_bound_ok)


def _beta_by_log_witnesses(pair: SymbolPair, cfg: VerifyConfig, rng) -> Outcome:
    worst = _Worst()
    chain_ok = True
    value_ok = True
    for a in _base_points(pair, cfg, rng):
        fr = _Frame(pair, a)
        ga = test_g(pair, a)
        gb = complex(ga(fr.b))
        lb = log_weight(fr.b)
        value_ok &= abs(gb - lb) <= 1e-12 * max(1.0, lb)
        gphi_t = ga(fr.phi_w) - gb
        t1 = _l2(fr.psi_t * gphi_t)
        t2 = abs(fr.psi_a) * _l2(gphi_t)
        wg_t = fr.psi_w * ga(fr.phi_w) - fr.psi_a * gb
        t3 = _l2(wg_t)
        beta_grid = lb * _l2(fr.psi_t)
        chain_ok &= beta_grid <= (t1 + t2 + t3) * (1 + EXACT_TOL) + 1e-14
        res, _ = wco_seminorm(pair, ga, cfg.search)
        al = float(alpha_values(pair, [a])[0])
        be = float(beta_values(pair, [a])[0])
        lhs, rhs = be, t1 + max(res.value, t3) + al
        if worst.beats(lhs, rhs):
            worst = worst.take(lhs, rhs, {"a": a, "beta_grid": beta_grid, "chain_rhs": t1 + t2 + t3})
    return worst.outcome(chain_ok and value_ok, chain_ok=chain_ok, g_value_ok=value_ok)


def _probe_function(rng) -> AnalyticFunction:
    d = int(rng.integers(1, 5))
    return AnalyticFunction(_random_poly(rng, d, 1.0))


def _transform_of_wf(pair: SymbolPair, cfg: VerifyConfig, rng) -> Outcome:
    f = _probe_function(rng)
    fnorm = bmoa_norm(f, cfg.search)
    worst = _Worst()
    chain_ok = True
    for a in _base_points(pair, cfg, rng):
        fr = _Frame(pair, a)
        fphi_t = f(fr.phi_w) - complex(f(fr.b))
        wf_t = fr.psi_w * f(fr.phi_w) - fr.psi_a * complex(f(fr.b))
        lhs = _l2(wf_t)
        t1 = _l2(fr.psi_t * fphi_t)
        exact = t1 + abs(fr.psi_a) * _l2(fphi_t) + abs(complex(f(fr.b))) * _l2(fr.psi_t)
        chain_ok &= lhs <= exact * (1 + EXACT_TOL) + 1e-14
        al = float(alpha_values(pair, [a])[0])
        be = float(beta_values(pair, [a])[0])
        rhs = t1 + (al + be) * fnorm
        if worst.beats(lhs, rhs):
            worst = worst.take(lhs, rhs, {"a": a, "exact_rhs": exact})
    return worst.outcome(chain_ok, chain_ok=chain_ok, f_norm=fnorm)


def _mixed_term(pair: SymbolPair, cfg: VerifyConfig, rng) -> Outcome:
    f = _probe_function(rng)
    fstar = bmoa_seminorm(f, 2.0, cfg.search)
    est = norm_estimate_powers(pair, cfg.search, cfg.n_max).value
    sup_b = max(sup_beta(pair, cfg.search).value, 0.0)
    worst = _Worst()
    for a in _base_points(pair, cfg, rng):
        fr = _Frame(pair, a)
        fphi_t = f(fr.phi_w) - complex(f(fr.b))
        lhs = _l2(fr.psi_t * fphi_t)
        rhs = fstar * min(sup_b, est / math.sqrt(log_weight(fr.b)))
        if worst.beats(lhs, rhs):
            worst = worst.take(lhs, rhs, {"a": a})
    return worst.outcome(True, estimate=est, sup_beta=sup_b)


def _mobius_series(pair: SymbolPair, cfg: VerifyConfig, rng) -> Outcome:
    seq = power_seminorm_seq(pair, cfg.n_max, cfg.search)
    sup_n = max(seq)
    lhs = 0.0
    series_ok = True
    worst_series = 0.0
    psi_sup = float(np.max(np.abs(pair.psi_at(roots_of_unity(4096)))))
    for a in _base_points(pair, cfg, rng):
        fa = test_f(pair, a)
        res, _ = wco_seminorm(pair, fa, cfg.search)
        lhs = max(lhs, res.value)
        b = fa.b
        m = 1024
        xi = roots_of_unity(m)
        phi_xi = pair.phi_at(xi)
        target = pair.psi_at(xi) * fa(phi_xi)
        partial = np.zeros(m, dtype=complex)
        term = pair.psi_at(xi) * phi_xi
        for n in range(65):
            partial = partial + (abs(b) ** 2 - 1.0) * np.conj(b) ** n * term
            term = term * phi_xi
            if n in (4, 8, 16, 32, 64):
                err = float(np.max(np.abs(partial - target)))
                bound = 2.0 * abs(b) ** (n + 1) * psi_sup
                if bound > 0:
                    worst_series = max(worst_series, err / bound)
                series_ok &= err <= bound * (1 + 1e-9) + 1e-13
    notes = {"sup_n": sup_n, "series_ok": series_ok, "series_worst_fraction": worst_series}
    return Outcome(lhs, sup_n, notes, series_ok)


def _norm_two_sided(pair: SymbolPair, cfg: VerifyConfig, rng) -> Outcome:
    p = norm_estimate_powers(pair, cfg.search, cfg.n_max)
    c = norm_estimate_classic(pair, cfg.search)
    return Outcome(p.value, c.value, {"powers": p.parts, "classic": c.parts})


def _essnorm_consistency(pair: SymbolPair, cfg: VerifyConfig, rng) -> Outcome:
    p = essnorm_estimate_powers(pair, cfg.search, cfg.rho_list, max(cfg.n_max, 64))
    c = essnorm_estimate_boundary(pair, cfg.search, cfg.rho_list)
    ratio = (p.value + CONSISTENCY_FLOOR) / (c.value + CONSISTENCY_FLOOR)
    return Outcome(p.value, c.value, {"powers": p.parts, "boundary": c.parts,
                                      "floor": CONSISTENCY_FLOOR}, ratio=ratio)


def _witness(pair: SymbolPair, cfg: VerifyConfig, rng) -> Outcome:
    est = norm_estimate_powers(pair, cfg.search, cfg.n_max).value
    seq = power_seminorm_seq(pair, 64, cfg.search)
    psi0 = complex(pair.psi_at(0.0))
    phi0 = complex(pair.phi_at(0.0))
    best, which = 0.0, None
    for n, s in enumerate(seq):
        val = abs(psi0 * phi0**n) + s  # ||z^n|| = 1 for every n >= 0
        if val > best:
            best, which = val, f"z^{n}"
    for a in _base_points(pair, cfg, rng):
        for name, func in (("f_a", test_f(pair, a)), ("g_a", test_g(pair, a))):
            res, w0 = wco_seminorm(pair, func, cfg.search)
            fn = _witness_norm(func, func.b, cfg)
            val = safe_ratio(w0 + res.value, fn)
            if val > best:
                best, which = val, f"{name}@{complex(a):.4g}"
    return Outcome(best, est, {"witness": which})


def _sandwich_points(pair: SymbolPair, r: float) -> np.ndarray:
    pts = polar_points(np.linspace(0.0, 0.95, 12), 2 * np.pi * np.arange(16) / 16).ravel()
    return pts[np.abs(pair.phi_at(pts)) <= r]


def _sandwich(pair: SymbolPair, cfg: VerifyConfig, rng) -> Outcome:
    violations, tests = 0, 0
    xi = roots_of_unity(1024)
    for r in (0.5, 0.9):
        s = s_factor(r)
        for a in _sandwich_points(pair, r):
            b = complex(pair.phi_at(a))
            w = pair.phi_at(sigma_unchecked(a, xi))
            d_in = 1.0 - np.abs(w)
            d_out = 1.0 - np.abs(sigma_unchecked(b, w))
            bad = (d_in / s > d_out + 1e-12) | (d_out > s * d_in + 1e-12)
            violations += int(np.sum(bad))
            tests += xi.size
    return Outcome(float(violations), float(tests), ratio=safe_ratio(violations, tests))


def _esets(pair: SymbolPair, cfg: VerifyConfig, rng) -> Outcome:
    violations, tests = 0, 0
    xi = roots_of_unity(1024)
    tol = 1e-12
    for r in (0.5, 0.9):
        s = s_factor(r)
        t_list = 1.0 - (1.0 / s) * np.array([0.9, 0.5, 0.1, 0.01])
        for a in _sandwich_points(pair, r):
            b = complex(pair.phi_at(a))
            w = pair.phi_at(sigma_unchecked(a, xi))
            mw = np.abs(w)
            me = np.abs(sigma_unchecked(b, w))
            for t in t_list:
                inner = 1.0 - (1.0 - t) / s
                outer = 1.0 - s * (1.0 - t)
                v1 = (mw > inner + tol) & (me <= t - tol)
                v2 = (me > t + tol) & (mw <= outer - tol)
                violations += int(np.sum(v1 | v2))
                tests += xi.size
    return Outcome(float(violations), float(tests), ratio=safe_ratio(violations, tests))


def _boundary_tail(pair: SymbolPair, cfg: VerifyConfig, rng) -> Outcome:
    tq = tail_quantity(pair, 0.9, (0.99, 0.995, 0.999), cfg.search)
    seq = power_seminorm_seq(pair, max(cfg.n_max, 64), cfg.search)
    ts = tail_sup(seq)
    ratio = (tq.value + CONSISTENCY_FLOOR) / (ts.value + CONSISTENCY_FLOOR)
    return Outcome(tq.value, ts.value, {"tail": tq.to_dict(), "power_tail": ts.to_dict(),
                                        "floor": CONSISTENCY_FLOOR}, ratio=ratio)


def _vmoa_alpha(pair: SymbolPair, cfg: VerifyConfig, rng) -> Outcome:
    worst = _Worst()
    for a in _base_points(pair, cfg, rng):
        fr = _Frame(pair, a)
        lhs = _l2(sigma_unchecked(fr.b, fr.phi_w))
        rhs = _l2(fr.phi_w - fr.b) / (1.0 - abs(fr.b))
        if worst.beats(lhs, rhs):
            worst = worst.take(lhs, rhs, {"a": a})
    return worst.outcome(True)


# --------------------------------------------------------------------------
# catalog

CATALOG = {c.id: c for c in [
    Check("garsia_identity", "closed form, Poisson and pullback transform norms agree",
          "plumbing", "identity", "functions", _garsia, tolerance=GARSIA_TOL),
    Check("pointwise_bound", "|f(z)| <~ L(z) ||f||",
          "pointwise growth estimate for BMOA", "pinned", "functions", _pointwise),
    Check("jn_equivalence", "||f||_* and ||f||_{*,4} are comparable",
          "John-Nirenberg reverse Hoelder inequality", "symmetric", "functions", _jn),
    Check("littlewood_composition", "||g o phi||_2 <~ ||phi||_2 ||g||_2 when g(0) = phi(0) = 0",
          "Littlewood-type subordination inequality", "pinned", "pairs", _littlewood),
    Check("schwarz_growth", "|g(z)| <= 2 |z| max_{|w| <= t} |g(w)| for g(0) = 0, t >= 1/2",
          "Schwarz-lemma growth bound", "explicit", "functions", _schwarz),
    Check("lemma24_i", "alpha(a) <~ beta(a)/L(phi(a)) + ||W f_a||_*, explicit chain with constant 2",
          "alpha bounded by beta and the Moebius test functions", "pinned", "pairs", _alpha_by_witnesses),
    Check("lemma24_ii", "beta(a) <~ ||psi_a (g_a o phi)_a||_2 + ||W g_a||_* + alpha(a)",
          "beta bounded through the logarithmic test functions", "pinned", "pairs", _beta_by_log_witnesses),
    Check("lemma24_iii", "||(W f)_a||_2 <~ ||psi_a (f o phi)_a||_2 + (alpha + beta) ||f||",
          "transform norm of W f", "pinned", "pairs", _transform_of_wf),
    Check("lemma24_iv", "||psi_a (f o phi)_a||_2 <~ ||f||_* min(sup beta, ||W|| / sqrt(L(phi(a))))",
          "mixed product term with logarithmic decay", "pinned", "pairs", _mixed_term),
    Check("lemma26_constant2", "sup_a ||W f_a||_* <= 2 sup_n ||psi phi^n||_* plus series identity",
          "Moebius test functions through the power series of W f_a", "explicit", "pairs", _mobius_series,
          bound=MOBIUS_SERIES_BOUND),
    Check("thm11_two_sided", "power-based and alpha-based norm estimates are comparable",
          "norm estimate via powers of phi", "band", "pairs", _norm_two_sided),
    Check("thm12_consistency", "power-based and boundary-based essential norm estimates agree",
          "essential norm via powers of phi versus boundary limsups", "symmetric", "pairs", _essnorm_consistency),
    Check("lower_bound_witness", "||W f|| / ||f|| <~ norm estimate for z^n, f_a, g_a",
          "lower bound from bounded test sequences (witness ratios only)", "pinned", "pairs", _witness),
    Check("sandwich_remark33", "s(r)^-1 (1 - |w|) <= 1 - |sigma_b(w)| <= s(r) (1 - |w|)",
          "distortion of sigma_b near the circle", "count", "pairs", _sandwich),
    Check("eset_inclusions", "Etilde(1 - (1-t)/s) c E(t) c Etilde(1 - s (1-t))",
          "boundary set comparison", "count", "pairs", _esets),
    Check("lemma42_tail", "boundary-set L^4 tail <~ limsup_n ||psi phi^n||_*",
          "boundary-set tail bounded by power seminorms", "pinned", "pairs", _boundary_tail),
    Check("sn_locally_uniform", "sup_{Q(r,t)} |f - f(r_n .)| decreases in n for ||f|| <= 1",
          "dilation remainders vanish locally uniformly", "explicit", "functions", _sn_uniform),
    Check("vmoa_alpha_bound", "||sigma_b o phi o sigma_a||_2 <= ||phi o sigma_a - b||_2 / (1 - |b|)",
          "alpha control on VMOA", "explicit", "pairs", _vmoa_alpha),
]}

INEQUALITY_KINDS = ("explicit", "pinned", "symmetric", "band")


def default_family(kind: str, count: int | None = None, seed: int = 0) -> SymbolFamily:
    if kind == "functions":
        return SymbolFamily("functions", "functions", 50 if count is None else count, 50, 1.0, seed)
    return SymbolFamily("pairs", "pairs", 200 if count is None else count, 8, 1.0, seed)


def load_pinned() -> dict:
    text = resources.files(__package__).joinpath(PINNED_FILE).read_text()
    return json.loads(text)


def _decide(check: Check, out: Outcome, ratio: float, pinned: dict) -> bool:
    if not out.extra_ok:
        return False
    if check.kind == "identity":
        return abs(ratio - 1.0) <= check.tolerance
    if check.kind == "explicit":
        return ratio <= check.bound * (1.0 + check.tolerance)
    if check.kind == "count":
        return out.lhs == 0
    entry = pinned.get(check.id)
    if entry is None:
        return True
    if check.kind == "pinned":
        return ratio <= entry["pinned"]
    if check.kind == "symmetric":
        return max(ratio, 1.0 / ratio if ratio > 0 else math.inf) <= entry["pinned"]
    if check.kind == "band":
        return entry["lo"] <= ratio <= entry["hi"]
    raise ValueError(check.kind)


def run_check(check_id: str, family: SymbolFamily | None = None,
              cfg: VerifyConfig | None = None, pinned: dict | None = None) -> list:
    """One ``CheckReport`` per family member; deterministic given the seeds."""
    if check_id not in CATALOG:
        raise UnknownCheckError(check_id)
    check = CATALOG[check_id]
    cfg = cfg or VerifyConfig()
    family = family or default_family(check.family_kind, seed=cfg.seed)
    if pinned is None:
        pinned = load_pinned()
    reports = []
    for index, (label, inst) in enumerate(family.generate()):
        if check.family_kind == "functions" and isinstance(inst, SymbolPair):
            inst = inst.psi
        if check.family_kind == "pairs" and not isinstance(inst, SymbolPair):
            raise TypeError(f"{check_id} needs symbol pairs")
        rng = np.random.default_rng([cfg.seed, family.seed, index])
        out = check.evaluator(inst, cfg, rng)
        ratio = out.ratio if out.ratio is not None else safe_ratio(out.lhs, out.rhs)
        notes = dict(out.notes, label=label)
        digest = _digest(check_id, label, inst, {"seed": cfg.seed, "family_seed": family.seed})
        reports.append(CheckReport(check_id, float(out.lhs), float(out.rhs), float(ratio),
                                   _decide(check, out, ratio, pinned), digest, notes))
    return reports


def estimate_constant(check_id: str, family: SymbolFamily | None = None,
                      cfg: VerifyConfig | None = None) -> float:
    """Smallest constant making the inequality hold over the family."""
    if check_id not in CATALOG:
        raise UnknownCheckError(check_id)
    check = CATALOG[check_id]
    if check.kind not in INEQUALITY_KINDS:
        raise ValueError(f"{check_id} is not an inequality check")
    reports = run_check(check_id, family, cfg, pinned={})
    ratios = [r.ratio for r in reports]
    if check.kind == "symmetric":
        ratios = [max(x, 1.0 / x) if x > 0 else math.inf for x in ratios]
    return float(max(ratios))


def ratio_band(check_id: str, family: SymbolFamily | None = None,
               cfg: VerifyConfig | None = None) -> tuple:
    reports = run_check(check_id, family, cfg, pinned={})
    ratios = [r.ratio for r in reports]
    return float(min(ratios)), float(max(ratios))


def sweep(cfg: VerifyConfig | None = None, families: dict | None = None) -> dict:
    """Measure family constants for every pinned check and add 10% headroom."""
    cfg = cfg or VerifyConfig()
    families = families or {}
    out = {}
    for cid, check in CATALOG.items():
        fam = families.get(cid) or default_family(check.family_kind, seed=cfg.seed)
        if check.kind in ("pinned", "symmetric"):
            measured = estimate_constant(cid, fam, cfg)
            out[cid] = {"measured": measured, "pinned": measured * HEADROOM,
                        "family": {"kind": fam.kind, "count": fam.count, "seed": fam.seed}}
        elif check.kind == "band":
            lo, hi = ratio_band(cid, fam, cfg)
            out[cid] = {"measured_lo": lo, "measured_hi": hi,
                        "lo": lo / HEADROOM, "hi": hi * HEADROOM,
                        "family": {"kind": fam.kind, "count": fam.count, "seed": fam.seed}}
    return out


def reports_to_jsonl(reports: list) -> str:
    rows = sorted(reports, key=lambda r: (r.check_id, r.inputs_digest))
    return "".join(jsonio.dump_line(r.to_dict()) + "\n" for r in rows)


def summary_rows(reports: list) -> list:
    rows = []
    for cid in sorted({r.check_id for r in reports}):
        rs = [r for r in reports if r.check_id == cid]
        rows.append({"check_id": cid, "n": len(rs),
                     "pass_rate": sum(r.passed for r in rs) / len(rs),
                     "max_ratio": max(r.ratio for r in rs)})
    return rows


def summary_csv(reports: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check_id", "n", "pass_rate", "max_ratio"])
    for row in summary_rows(reports):
        w.writerow([row["check_id"], row["n"], f"{row['pass_rate']:.12g}", f"{row['max_ratio']:.12g}"])
    return buf.getvalue()
