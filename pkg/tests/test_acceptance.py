"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import math
import time

import numpy as np
import pytest

from bmoakit import cli
from bmoakit.disc_functions import AnalyticFunction
from bmoakit.mobius import grid_size_for, poisson_weights, sigma_unchecked
from bmoakit.norms import bmoa_seminorm, transform_norm
from bmoakit.verify import SymbolFamily, default_family, deterministic_pairs, load_pinned, run_check
from bmoakit.wco import SymbolPair, boundary_sup, classify_compactness


@pytest.fixture
def announce(capsys):
    def _announce(number, name, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'} {name}: {detail}")
        assert ok, detail

    return _announce


def test_criterion_1_garsia_identity(announce):
    fam = SymbolFamily("garsia", "functions", count=1000, degree_bound=50, seed=1,
                       include_deterministic=False)
    t0 = time.perf_counter()
    reports = run_check("garsia_identity", fam)
    elapsed = time.perf_counter() - t0
    worst = max(r.notes["max_rel_err"] for r in reports)
    ok = len(reports) == 1000 and all(r.passed for r in reports) and worst <= 1e-8 and elapsed <= 30
    announce(1, "garsia_identity", ok, f"n={len(reports)} max_rel_err={worst:.3g} time={elapsed:.1f}s")


def test_criterion_2_closed_form_seminorms(announce):
    mono = max(abs(bmoa_seminorm(AnalyticFunction.monomial(n)) - 1.0) for n in range(1, 65))
    z = AnalyticFunction.identity()
    radii = np.linspace(0, 0.95, 10)
    angles = 2 * np.pi * np.arange(10) / 10
    pts = (radii[:, None] * np.exp(1j * angles[None, :])).ravel()
    tn = max(abs(transform_norm(z, a, 2) - math.sqrt(1 - abs(a) ** 2)) for a in pts)
    ok = mono <= 1e-3 and tn <= 1e-9 and pts.size == 100
    announce(2, "closed_form_seminorms", ok, f"max|s(z^n)-1|={mono:.3g} max transform err={tn:.3g}")


def test_criterion_3_mobius_invariants(announce):
    rng = np.random.default_rng(3)
    n = 10_000
    a = 0.995 * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))
    z = np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))
    inv = np.max(np.abs(sigma_unchecked(a, sigma_unchecked(a, z)) - z))
    xi = np.exp(2j * np.pi * rng.uniform(size=n))
    circ = np.max(np.abs(np.abs(sigma_unchecked(a, xi)) - 1.0))
    poisson = 0.0
    for m in sorted({grid_size_for(abs(x)) for x in a}):
        group = a[[grid_size_for(abs(x)) == m for x in a]]
        poisson = max(poisson, float(np.max(np.abs(poisson_weights(group, m).mean(axis=1) - 1.0))))
    ok = max(inv, circ, poisson) <= 1e-10
    announce(3, "mobius_invariants", ok, f"involution={inv:.3g} circle={circ:.3g} poisson={poisson:.3g}")


def test_criterion_4_constant_two(announce):
    fam = SymbolFamily("c4", "pairs", count=50, degree_bound=8, seed=4)
    reports = run_check("lemma26_constant2", fam)
    worst = max(r.ratio for r in reports)
    series = all(r.notes["series_ok"] for r in reports)
    ok = len(reports) == 86 and all(r.passed for r in reports)
    announce(4, "lemma26_constant2", ok, f"n={len(reports)} max_ratio={worst:.4f} (bound 2.1) series_ok={series}")


def test_criterion_5_sandwich_and_esets(announce):
    fam = SymbolFamily("c5", "pairs", count=50, degree_bound=8, seed=5, include_deterministic=False)
    counts = {}
    for cid in ("sandwich_remark33", "eset_inclusions"):
        reports = run_check(cid, fam)
        counts[cid] = (int(sum(r.lhs for r in reports)), int(sum(r.rhs for r in reports)))
    ok = all(v == 0 for v, _ in counts.values())
    detail = ", ".join(f"{k}: {v} violations / {t} grid tests" for k, (v, t) in counts.items())
    announce(5, "sandwich_and_esets", ok, detail)


def test_criterion_6_estimator_band(announce):
    band = load_pinned()["thm11_two_sided"]
    reports = run_check("thm11_two_sided", default_family("pairs"))
    ratios = [r.ratio for r in reports]
    ok = len(reports) == 236 and all(band["lo"] <= x <= band["hi"] for x in ratios)
    announce(6, "thm11_band", ok,
             f"n={len(reports)} ratios in [{min(ratios):.4f}, {max(ratios):.4f}] band [{band['lo']:.4f}, {band['hi']:.4f}]")


def _oracle_verdict(pair):
    # every psi in the deterministic set is nonvanishing on the circle, so the
    # operator is compact exactly when phi stays inside a smaller disc
    return "compact" if boundary_sup(pair.phi)[0] < 1.0 - 1e-12 else "non_compact"


def test_criterion_7_classification(announce):
    one, z = AnalyticFunction.constant(1.0), AnalyticFunction.identity()
    named = {
        "(1, z/2)": (SymbolPair(one, z * 0.5), "compact"),
        "(1, z)": (SymbolPair(one, z), "non_compact"),
        "(z, z)": (SymbolPair(z, z), "non_compact"),
    }
    wrong = [k for k, (p, want) in named.items() if classify_compactness(p).verdict != want]
    for label, pair in deterministic_pairs():
        if classify_compactness(pair).verdict != _oracle_verdict(pair):
            wrong.append(label)
    announce(7, "classification", not wrong, f"misclassified={wrong}")


def test_criterion_8_witnesses(announce):
    c = load_pinned()["lower_bound_witness"]["pinned"]
    reports = run_check("lower_bound_witness", default_family("pairs"))
    worst = max(reports, key=lambda r: r.ratio)
    ok = all(r.passed for r in reports)
    announce(8, "lower_bound_witness", ok,
             f"n={len(reports)} max ratio={worst.ratio:.4f} ({worst.notes['witness']}) pinned C={c:.4f}")


def test_criterion_9_determinism(announce, tmp_path, capsys):
    outputs = []
    for k in range(2):
        d = tmp_path / f"run{k}"
        cli.main(["check", "lemma24_i", "--count", "3", "--seed", "11", "--out-dir", str(d),
                  "--json", str(d / "summary.json")])
        cli.main(["wco", "--psi", "poly:1,0.5", "--phi", "poly:0.1,0.6", "norm", "--json", str(d / "wco.json")])
        outputs.append([(d / name).read_bytes() for name in
                        ("lemma24_i.jsonl", "lemma24_i_summary.csv", "summary.json", "wco.json")])
    capsys.readouterr()
    ok = outputs[0] == outputs[1]
    announce(9, "determinism", ok, f"{len(outputs[0])} artifacts byte-identical={ok}")
