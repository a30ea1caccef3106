"""Command-line front end.

    bmoakit norm --poly 0,1
    bmoakit wco --psi constant:1 --phi scaled_identity:0.5 classify
    bmoakit check garsia_identity --count 100 --seed 7
    bmoakit sweep --output pinned.json

Exit codes: 0 success, 1 failed check, 2 bad input or unknown check id,
3 numerical failure, 4 ``phi`` is not a self-map of the disc.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from . import jsonio
from .disc_functions import AliasingError, AnalyticFunction, boundary_grid, is_power_of_two
from .mobius import GridTooCoarseError
from .norms import SupSearchConfig, bmoa_norm, bmoa_seminorm_search, hardy_norm, vmoa_profile
from .verify import (
    CATALOG,
    PINNED_FILE,
    SymbolFamily,
    UnknownCheckError,
    VerifyConfig,
    default_family,
    reports_to_jsonl,
    run_check,
    summary_csv,
    summary_rows,
    sweep,
)
from .wco import (
    DEFAULT_RHO,
    BoundaryBasePointError,
    SelfMapError,
    SymbolPair,
    classify_compactness,
    essnorm_estimate_boundary,
    essnorm_estimate_powers,
    norm_estimate_classic,
    norm_estimate_powers,
    power_seminorm_seq,
)

OUTPUT_DIR_ENV = "BMOAKIT_OUTPUT_DIR"
PROFILE_RADII = (0.0, 0.5, 0.8, 0.9, 0.95, 0.99)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NUMERIC, EXIT_SELF_MAP = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


NUMERIC_ERRORS = (AliasingError, GridTooCoarseError, BoundaryBasePointError,
                  ArithmeticError, np.linalg.LinAlgError)


# --------------------------------------------------------------------------
# symbol specifications


@dataclass(frozen=True)
class SymbolSpec:
    kind: str
    params: tuple = ()

    def build(self, truncation: int = 64) -> tuple:
        """``(AnalyticFunction, truncation-error bound or None)``."""
        if self.kind == "poly":
            return AnalyticFunction(list(self.params)), None
        if self.kind == "constant":
            return AnalyticFunction.constant(self.params[0]), None
        if self.kind == "identity":
            return AnalyticFunction.identity(), None
        if self.kind == "scaled_identity":
            return AnalyticFunction([0.0, self.params[0]]), None
        if self.kind == "blaschke":
            return blaschke_taylor(self.params[0], truncation)
        raise UsageError(f"unknown symbol kind {self.kind!r}")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": list(self.params)}


def _number(text: str) -> complex:
    text = text.strip().replace("i", "j")
    try:
        v = complex(text)
    except ValueError as exc:
        raise UsageError(f"not a number: {text!r}") from exc
    if not np.isfinite(v):
        raise UsageError(f"not a finite number: {text!r}")
    return v


def _numbers(text: str) -> tuple:
    parts = [p for p in text.split(",")]
    if not text.strip() or any(not p.strip() for p in parts):
        raise UsageError(f"bad coefficient list {text!r}")
    return tuple(_number(p) for p in parts)


def parse_symbol(text: str) -> SymbolSpec:
    """``identity`` (or ``z``), ``constant:c``, ``scaled_identity:s``, ``poly:c0,c1,...``,
    ``blaschke:b`` or a bare number (a constant).  Complex values use ``1+2j``.
    """
    kind, _, arg = text.strip().partition(":")
    if kind in ("identity", "z") and not arg:
        return SymbolSpec("identity")
    if kind == "poly":
        return SymbolSpec("poly", _numbers(arg))
    if kind in ("constant", "scaled_identity", "blaschke"):
        vals = _numbers(arg)
        if len(vals) != 1:
            raise UsageError(f"{kind} takes one number")
        if kind == "blaschke" and not abs(vals[0]) < 1.0:
            raise UsageError("blaschke parameter must satisfy |b| < 1")
        return SymbolSpec(kind, vals)
    if not arg:
        return SymbolSpec("constant", (_number(kind),))
    raise UsageError(f"cannot parse symbol {text!r}")


def blaschke_taylor(b: complex, n: int) -> tuple:
    """Degree-``n`` Taylor polynomial of ``sigma_b`` and a bound on the tail.

    ``sigma_b(z) = b + (|b|^2 - 1) sum_k conj(b)^k z^(k+1)``; the neglected tail
    has sup norm at most ``(1 - |b|^2) |b|^n / (1 - |b|) = (1 + |b|) |b|^n``.
    """
    b = complex(b)
    c = np.zeros(n + 1, dtype=complex)
    c[0] = b
    c[1:] = (abs(b) ** 2 - 1.0) * np.conj(b) ** np.arange(n)
    return AnalyticFunction(c), (1.0 + abs(b)) * abs(b) ** n


# --------------------------------------------------------------------------
# run configuration


@dataclass(frozen=True)
class RunConfig:
    grid_size: int = 1024
    truncation: int = 64
    radii: tuple = SupSearchConfig().radii
    angles_per_radius: int = 64
    refine_rounds: int = 2
    refine_factor: int = 4
    n_max: int = 64
    rho_list: tuple = DEFAULT_RHO
    seed: int = 0
    output_format: str = "text"

    def __post_init__(self):
        if not is_power_of_two(self.grid_size):
            raise UsageError("grid_size must be a power of two")
        for name in ("truncation", "angles_per_radius", "refine_factor", "n_max"):
            if getattr(self, name) <= 0:
                raise UsageError(f"{name} must be positive")
        if self.refine_rounds < 0 or self.seed < 0:
            raise UsageError("refine_rounds and seed must be nonnegative")
        if not all(0.0 < r < 1.0 for r in self.rho_list):
            raise UsageError("rho values must lie in (0, 1)")
        if self.output_format not in ("text", "json"):
            raise UsageError("output_format is 'text' or 'json'")

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        data = json.loads(text)
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise UsageError(f"unknown config keys: {sorted(extra)}")
        for key in ("radii", "rho_list"):
            if key in data:
                data[key] = tuple(data[key])
        return cls(**data)

    def search(self) -> SupSearchConfig:
        try:
            return SupSearchConfig(self.radii, self.angles_per_radius, self.refine_rounds, self.refine_factor)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _load_config(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        try:
            cfg = RunConfig.from_json(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError, TypeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
    overrides = {k: getattr(args, k) for k in ("seed", "n_max") if getattr(args, k, None) is not None}
    if overrides:
        cfg = RunConfig(**{**cfg.to_dict(), **overrides})
    return cfg


# --------------------------------------------------------------------------
# output


def _emit(report: dict, args, cfg: RunConfig, text: str):
    if args.json:
        Path(args.json).write_text(jsonio.dumps(report) + "\n")
    if cfg.output_format == "json":
        print(jsonio.dumps(report))
    else:
        print(text)


def _write_csv(path: Path, header: list, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([f"{x:.12g}" if isinstance(x, float) else x for x in row])


def _output_dir(args) -> Path:
    return Path(args.out_dir or os.environ.get(OUTPUT_DIR_ENV) or ".")


# --------------------------------------------------------------------------
# commands


def cmd_norm(args) -> int:
    cfg = _load_config(args)
    if sum(x is not None for x in (args.poly, args.constant, args.symbol)) != 1:
        raise UsageError("give exactly one of --poly, --constant, --symbol")
    if args.poly is not None:
        spec = SymbolSpec("poly", _numbers(args.poly))
    elif args.constant is not None:
        spec = SymbolSpec("constant", (_number(args.constant),))
    else:
        spec = parse_symbol(args.symbol)
    f, trunc_err = spec.build(cfg.truncation)
    search = cfg.search()
    res = bmoa_seminorm_search(f, 2.0, search)
    profile = vmoa_profile(f, PROFILE_RADII)
    report = {
        "symbol": spec.to_dict(),
        "p": args.p,
        "hardy_norm": hardy_norm(boundary_grid(f, cfg.grid_size), args.p),
        "seminorm": res.value,
        "seminorm_argmax": res.argmax,
        "norm": bmoa_norm(f, search),
        "vmoa_profile": [[r, v] for r, v in profile],
        "truncation_error_bound": trunc_err,
        "config": cfg.to_dict(),
    }
    if args.p != 2.0:
        report["seminorm_p"] = bmoa_seminorm_search(f, args.p, search).value
    if args.emit_curves:
        _write_csv(Path(args.emit_curves) / "vmoa_profile.csv", ["r", "value"], profile)
    text = "\n".join([
        f"||f||_{args.p:g}   = {report['hardy_norm']:.12g}",
        f"||f||_*   = {report['seminorm']:.12g}  (argmax a = {complex(res.argmax):.6g})",
        f"||f||     = {report['norm']:.12g}",
        "VMOA profile: " + ", ".join(f"r={r:g}: {v:.6g}" for r, v in profile),
    ])
    _emit(report, args, cfg, text)
    return EXIT_OK


def _build_pair(psi_text: str, phi_text: str, cfg: RunConfig) -> tuple:
    psi_spec, phi_spec = parse_symbol(psi_text), parse_symbol(phi_text)
    psi, e1 = psi_spec.build(cfg.truncation)
    phi, e2 = phi_spec.build(cfg.truncation)
    meta = {"psi": psi_spec.to_dict(), "phi": phi_spec.to_dict()}
    bounds = {k: v for k, v in (("psi", e1), ("phi", e2)) if v is not None}
    if bounds:
        meta["truncation_error_bound"] = bounds
    return SymbolPair(psi, phi), meta


def cmd_wco(args) -> int:
    cfg = _load_config(args)
    pair, meta = _build_pair(args.psi, args.phi, cfg)
    search = cfg.search()
    if args.which == "norm":
        est = norm_estimate_powers(pair, search, cfg.n_max)
        classic = norm_estimate_classic(pair, search)
        report = {"estimate": est.to_dict(), "classic": classic.to_dict()}
        text = f"norm estimate (powers) = {est.value:.12g}\nnorm estimate (alpha/beta) = {classic.value:.12g}"
    elif args.which == "essnorm":
        est = essnorm_estimate_powers(pair, search, cfg.rho_list, cfg.n_max)
        bnd = essnorm_estimate_boundary(pair, search, cfg.rho_list)
        report = {"estimate": est.to_dict(), "boundary": bnd.to_dict()}
        text = f"essential norm estimate (powers) = {est.value:.12g}\n" \
               f"essential norm estimate (boundary) = {bnd.value:.12g}"
    else:
        cls = classify_compactness(pair, search, n_max=cfg.n_max, rho_list=cfg.rho_list)
        report = {"classification": cls.to_dict()}
        ev = cls.evidence
        text = f"{cls.verdict}\n  power tail: {ev['power_tail']}\n  beta per rho: {ev['beta_per_rho']}"
    report.update(symbols=meta, config=cfg.to_dict())
    if args.emit_curves:
        seq = power_seminorm_seq(pair, cfg.n_max, search)
        _write_csv(Path(args.emit_curves) / "power_seminorms.csv", ["n", "seminorm"],
                   [(n, float(v)) for n, v in enumerate(seq)])
        g = pair.psi * pair.phi
        _write_csv(Path(args.emit_curves) / "vmoa_profile.csv", ["r", "value"],
                   vmoa_profile(g, PROFILE_RADII))
    _emit(report, args, cfg, text)
    return EXIT_OK


def cmd_check(args) -> int:
    cfg = _load_config(args)
    ids = sorted(CATALOG) if args.id == "all" else [args.id]
    for cid in ids:
        if cid not in CATALOG:
            raise UnknownCheckError(cid)
    vcfg = VerifyConfig(search=cfg.search(), rho_list=cfg.rho_list, seed=cfg.seed,
                        n_max=min(cfg.n_max, 32) if args.n_max is None else cfg.n_max)
    explicit = ()
    if args.pair:
        psi_text, phi_text = args.pair_specs
        pair, _ = _build_pair(psi_text, phi_text, cfg)
        explicit = ((f"psi={psi_text},phi={phi_text}", pair),)
    reports = []
    for cid in ids:
        kind = CATALOG[cid].family_kind
        fam = default_family(kind, args.count, cfg.seed)
        if args.degree_bound is not None:
            fam = SymbolFamily(fam.name, kind, fam.count, args.degree_bound, fam.coefficient_scale, fam.seed)
        if explicit:
            fam = SymbolFamily("explicit", kind, explicit=explicit)
        reports.extend(run_check(cid, fam, vcfg))
    out = _output_dir(args)
    out.mkdir(parents=True, exist_ok=True)
    stem = "checks" if args.id == "all" else args.id
    (out / f"{stem}.jsonl").write_text(reports_to_jsonl(reports))
    (out / f"{stem}_summary.csv").write_text(summary_csv(reports))
    rows = summary_rows(reports)
    failed = [r for r in reports if not r.passed]
    report = {"summary": rows, "failed": [r.to_dict() for r in sorted(failed, key=lambda r: r.inputs_digest)],
              "config": vcfg.to_dict()}
    lines = [f"{r['check_id']:24s} n={r['n']:<4d} pass_rate={r['pass_rate']:.4f} max_ratio={r['max_ratio']:.6g}"
             for r in rows]
    lines.append(f"{len(reports) - len(failed)}/{len(reports)} passed; reports in {out}")
    _emit(report, args, cfg, "\n".join(lines))
    return EXIT_OK if not failed else EXIT_FAILED


def cmd_sweep(args) -> int:
    cfg = _load_config(args)
    vcfg = VerifyConfig(search=cfg.search(), rho_list=cfg.rho_list, seed=cfg.seed)
    pinned = sweep(vcfg)
    target = Path(args.output) if args.output else Path(__file__).with_name(PINNED_FILE)
    target.write_text(jsonio.dumps(pinned) + "\n")
    text = "\n".join(f"{k:24s} {v.get('pinned', [v.get('lo'), v.get('hi')])}" for k, v in sorted(pinned.items()))
    _emit(pinned, args, cfg, text + f"\nwritten to {target}")
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="also write the report as JSON")
    common.add_argument("--config", metavar="PATH", help="RunConfig as JSON")
    common.add_argument("--seed", type=int)
    common.add_argument("--n-max", dest="n_max", type=int)

    parser = _Parser(prog="bmoakit", description="BMOA norms and weighted composition operator estimates.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("norm", parents=[common], help="Hardy and BMOA norms of one function")
    p.add_argument("--poly", help="coefficients c0,c1,...")
    p.add_argument("--constant")
    p.add_argument("--symbol", help="symbol spec such as blaschke:0.5")
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--emit-curves", metavar="DIR")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("wco", parents=[common], help="estimates for psi (f o phi)")
    p.add_argument("--psi", required=True)
    p.add_argument("--phi", required=True)
    p.add_argument("which", choices=["norm", "essnorm", "classify"])
    p.add_argument("--emit-curves", metavar="DIR")
    p.set_defaults(func=cmd_wco)

    p = sub.add_parser("check", parents=[common], help="run a verification check")
    p.add_argument("id", help="check id or 'all'")
    p.add_argument("--count", type=int)
    p.add_argument("--degree-bound", type=int)
    p.add_argument("--pair", help="psi,phi symbol specs")
    p.add_argument("--out-dir", help=f"defaults to ${OUTPUT_DIR_ENV} or the working directory")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", parents=[common], help="re-measure pinned constants")
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "pair", None):
            args.pair_specs = _split_pair_text(args.pair)
        return args.func(args)
    except UnknownCheckError as exc:
        print(f"error: unknown check id {exc.args[0]!r}; known: {', '.join(sorted(CATALOG))}", file=sys.stderr)
        return EXIT_USAGE
    except SelfMapError as exc:
        print(f"error: phi is not a self-map: |phi| = {exc.sup:.12g} at boundary point "
              f"{complex(exc.point):.12g}", file=sys.stderr)
        return EXIT_SELF_MAP
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NUMERIC_ERRORS as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def _split_pair_text(text: str) -> tuple:
    pieces = text.split(",")
    for k in range(1, len(pieces)):
        left, right = ",".join(pieces[:k]), ",".join(pieces[k:])
        try:
            parse_symbol(left), parse_symbol(right)
        except UsageError:
            continue
        return left, right
    raise UsageError(f"cannot split {text!r} into two symbols")


if __name__ == "__main__":
    sys.exit(main())
