"""Batch verification runner.

Usage::

    teichtangent --mu example:3 --k 8 --checks theorem1 --out report.json
    teichtangent --config scenario.yaml --csv table.csv

Exit status: 0 when every requested check passes, 1 on a failed check
(the report is still written), 2 on a usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .appendix import ahlfors_boundary_field, verify_appendix
from .beltrami import (
    BeltramiSpec,
    ExampleFamily,
    Harmonic,
    Monomial,
    QuadraticDifferential,
    Zero,
    scale,
)
from .errors import ConfigError, TeichError
from .example_family import (
    ExampleMap,
    branch_mismatch,
    dilatation_check,
    example_expected_cdot,
    example_expected_fourier,
    example_finite_t_coefficients,
)
from .quadrature import DEFAULT_NR, DEFAULT_NTHETA, PolarGrid
from .series import DEFAULT_K
from .structures import (
    SIGN_PAPER,
    hilbert_transform,
    period_variation,
    welding_derivative,
    welding_derivative_inverse,
    wp_pairing_fields,
    wp_pairing_schlicht,
)
from .variation import fourier_variation, schlicht_variation, verify_theorem1
from .zygmund import DEFAULT_HALF_WIDTH, DEFAULT_SPACING, dyadic_offsets, line_grid, zygmund_check_sequence

CHECKS = ("theorem1", "hilbert", "welding", "wp", "period", "zygmund", "appendix", "example-family")

QUAD_TOL = 1e-8
EXACT_TOL = 1e-12
DEFAULT_TOLERANCES = {
    "theorem1": QUAD_TOL,
    "hilbert": QUAD_TOL,
    "welding": QUAD_TOL,
    "wp": EXACT_TOL,
    "period": QUAD_TOL,
    "zygmund": 0.05,
    "appendix": EXACT_TOL,
    "example-family": QUAD_TOL,
}
PERIOD_T = 0.01

CSV_HEADER = ["k", "re_a", "im_a", "re_gamma", "im_gamma"]

REPORT_SCHEMA = {
    "type": "object",
    "required": ["config", "checks", "tables", "version"],
    "additionalProperties": False,
    "properties": {
        "version": {"type": "string"},
        "config": {
            "type": "object",
            "required": ["mu", "K", "grid", "checks", "tolerances"],
            "properties": {
                "mu": {"type": "object", "required": ["kind"]},
                "K": {"type": "integer", "minimum": 2},
                "grid": {
                    "type": "object",
                    "required": ["nr", "ntheta"],
                    "properties": {"nr": {"type": "integer"}, "ntheta": {"type": "integer"}},
                },
                "checks": {"type": "array", "items": {"enum": list(CHECKS)}},
                "tolerances": {"type": "object", "additionalProperties": {"type": "number"}},
            },
        },
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "pass", "residual", "tolerance", "details"],
                "additionalProperties": False,
                "properties": {
                    "name": {"enum": list(CHECKS)},
                    "pass": {"type": "boolean"},
                    "residual": {"type": "number"},
                    "tolerance": {"type": "number"},
                    "details": {"type": "object"},
                },
            },
        },
        "tables": {
            "type": "object",
            "required": ["coefficients"],
            "properties": {
                "coefficients": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": CSV_HEADER,
                        "properties": {
                            "k": {"type": "integer"},
                            **{name: {"type": "number"} for name in CSV_HEADER[1:]},
                        },
                    },
                },
                "period": {"type": "array"},
            },
        },
    },
}


@dataclass
class ScenarioConfig:
    mu: BeltramiSpec
    mu_desc: dict
    K: int = DEFAULT_K
    nr: int = DEFAULT_NR
    ntheta: int = DEFAULT_NTHETA
    checks: list = field(default_factory=lambda: list(CHECKS))
    tolerances: dict = field(default_factory=dict)
    json_path: str | None = None
    csv_path: str | None = None
    period_csv_path: str | None = None

    def tolerance(self, check: str) -> float:
        return float(self.tolerances.get(check, DEFAULT_TOLERANCES[check]))

    def echo(self) -> dict:
        return {
            "mu": self.mu_desc,
            "K": self.K,
            "grid": {"nr": self.nr, "ntheta": self.ntheta},
            "checks": list(self.checks),
            "tolerances": {c: self.tolerance(c) for c in self.checks},
        }


# ---------------------------------------------------------------- parsing


def _complex(value, where: str) -> complex:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    try:
        return complex(str(value).replace(" ", "")) if isinstance(value, str) else complex(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{where}: cannot read {value!r} as a complex number") from None


def _json_complex(z: complex) -> list:
    return [z.real, z.imag]


def parse_mu_string(text: str) -> dict:
    """'zero' | 'example:N' | 'harmonic:h0,h1,...' | 'monomial:c,p,q' -> mu description."""
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    args = [a for a in rest.split(",") if a.strip()] if rest else []
    if kind == "zero":
        return {"kind": "zero"}
    if kind == "example":
        if len(args) != 1:
            raise ConfigError("mu: 'example:N' takes exactly one integer")
        return {"kind": "example", "n": args[0]}
    if kind == "harmonic":
        return {"kind": "harmonic", "h": args}
    if kind == "monomial":
        if len(args) != 3:
            raise ConfigError("mu: 'monomial:c,p,q' takes three values")
        return {"kind": "monomial", "c": args[0], "p": args[1], "q": args[2]}
    raise ConfigError(f"mu: unknown kind {kind!r}")


def _int(value, where: str) -> int:
    try:
        out = int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{where}: expected an integer, got {value!r}") from None
    if out != float(value):
        raise ConfigError(f"{where}: expected an integer, got {value!r}")
    return out


def build_mu(desc: dict) -> tuple[BeltramiSpec, dict]:
    """Beltrami spec plus a normalized JSON-friendly echo of its description."""
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ConfigError("mu: expected a mapping with a 'kind' field")
    kind = str(desc["kind"]).lower()
    if kind == "zero":
        return Zero(), {"kind": "zero"}
    if kind == "example":
        n = _int(desc.get("n"), "mu.n")
        if n < 3:
            raise ConfigError(f"mu.n: example family needs n >= 3, got {n}")
        return ExampleFamily(n), {"kind": "example", "n": n}
    if kind == "harmonic":
        h = [_complex(v, f"mu.h[{i}]") for i, v in enumerate(desc.get("h") or [])]
        return Harmonic(QuadraticDifferential(h)), {"kind": "harmonic", "h": [_json_complex(x) for x in h]}
    if kind == "monomial":
        c = _complex(desc.get("c", 1), "mu.c")
        p, q = _int(desc.get("p"), "mu.p"), _int(desc.get("q"), "mu.q")
        if p < 0 or q < 0:
            raise ConfigError("mu.p, mu.q: exponents must be nonnegative")
        return Monomial(c, p, q), {"kind": "monomial", "c": _json_complex(c), "p": p, "q": q}
    raise ConfigError(f"mu.kind: unknown kind {kind!r}")


def parse_tolerances(text: str) -> dict:
    """'1e-6' applies to every check; 'theorem1=1e-6,wp=1e-10' targets named checks."""
    if "=" not in text:
        return {c: float(text) for c in CHECKS}
    out = {}
    for item in text.split(","):
        name, _, val = item.partition("=")
        out[name.strip()] = float(val)
    return out


def make_config(raw: dict) -> ScenarioConfig:
    """Validate a raw mapping (parsed file merged with flags); every problem is reported."""
    problems = []
    mu = mu_desc = None
    try:
        mu, mu_desc = build_mu(raw.get("mu", {"kind": "zero"}))
    except ConfigError as exc:
        problems.append(str(exc))

    def grab_int(key, default, where):
        try:
            return _int(raw.get(key, default) if raw.get(key) is not None else default, where)
        except ConfigError as exc:
            problems.append(str(exc))
            return default

    K = grab_int("K", DEFAULT_K, "K")
    grid = raw.get("grid") or {}
    nr = grab_int_from(grid, "nr", DEFAULT_NR, problems)
    ntheta = grab_int_from(grid, "ntheta", DEFAULT_NTHETA, problems)
    if K < 2:
        problems.append(f"K: must be >= 2, got {K}")
    if nr < 8:
        problems.append(f"grid.nr: must be >= 8, got {nr}")
    if ntheta < 4 * K + 2:
        problems.append(f"grid.ntheta: must be >= 4K + 2 = {4 * K + 2}, got {ntheta}")

    checks = raw.get("checks", "all")
    if checks in (None, "all") or checks == ["all"]:
        checks = list(CHECKS)
    elif isinstance(checks, str):
        checks = [c.strip() for c in checks.split(",") if c.strip()]
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        problems.append(f"checks: unrecognized {unknown}; choose from {list(CHECKS)}")

    tolerances = dict(raw.get("tolerances") or {})
    bad_tol = [c for c in tolerances if c not in CHECKS]
    if bad_tol:
        problems.append(f"tolerances: unrecognized checks {bad_tol}")
    for c, v in tolerances.items():
        try:
            if not float(v) > 0:
                problems.append(f"tolerances.{c}: must be positive")
        except (TypeError, ValueError):
            problems.append(f"tolerances.{c}: not a number: {v!r}")

    if isinstance(mu, Harmonic) and mu.phi.degree > K - 2:
        problems.append(f"mu.h: degree {mu.phi.degree} exceeds K - 2 = {K - 2}")

    if problems:
        raise ConfigError("; ".join(problems))
    out = raw.get("output") or {}
    return ScenarioConfig(
        mu=mu,
        mu_desc=mu_desc,
        K=K,
        nr=nr,
        ntheta=ntheta,
        checks=checks,
        tolerances={c: float(v) for c, v in tolerances.items()},
        json_path=out.get("json"),
        csv_path=out.get("csv"),
        period_csv_path=out.get("period_csv"),
    )


def grab_int_from(mapping, key, default, problems):
    val = mapping.get(key, default)
    try:
        return _int(val, f"grid.{key}")
    except ConfigError as exc:
        problems.append(str(exc))
        return default


# ---------------------------------------------------------------- checks


def _identity(name, residual, tol):
    residual = float(residual)
    return {"identity": name, "residual": residual, "tolerance": tol, "pass": bool(residual < tol)}


def _check_theorem1(cfg, grid, tol):
    pair = verify_theorem1(cfg.mu, cfg.K, grid)
    return [_identity("c_k'(0) = i conj(a_k)", pair.residual, tol)], {}


def _check_hilbert(cfg, grid, tol):
    f = fourier_variation(cfg.mu, cfg.K, grid)
    fi = fourier_variation(scale(cfg.mu, 1j), cfg.K, grid)
    jj = hilbert_transform(hilbert_transform(f))
    return [
        _identity("V[i mu] = H V[mu]", fi.max_abs_diff(hilbert_transform(f)), tol),
        _identity("H^2 = -Id", float(np.max(np.abs(jj.coeffs + f.coeffs))), tol),
    ], {}


def _check_welding(cfg, grid, tol):
    f = fourier_variation(cfg.mu, cfg.K, grid)
    gamma = schlicht_variation(cfg.mu, cfg.K, grid)
    round_trip = welding_derivative(welding_derivative_inverse(f)).max_abs_diff(f)
    return [
        _identity("weld(gamma[mu]) = V[mu]", welding_derivative(gamma).max_abs_diff(f), tol),
        _identity("weld o weld^-1 = Id", round_trip, tol),
    ], {}


def _check_wp(cfg, grid, tol):
    gamma = schlicht_variation(cfg.mu, cfg.K, grid)
    V = welding_derivative(gamma)
    g_fields = wp_pairing_fields(V, V)
    g_schlicht = wp_pairing_schlicht(gamma, gamma)
    g_paper = wp_pairing_schlicht(gamma, gamma, sign_convention=SIGN_PAPER)
    scale_ = max(1.0, abs(g_fields))
    details = {
        "wp_fields": g_fields,
        "wp_schlicht": g_schlicht,
        "wp_schlicht_paper_sign": g_paper,
        "sign_discrepancy": bool(g_paper != g_schlicht),
        "sign_note": (
            "the literal convention puts a leading minus sign on the schlicht-side sum; substituting "
            "c_k'(0) = i conj(a_k) into the field pairing gives the plus sign, which is the default"
        ),
    }
    return [
        _identity("WP_schlicht(gamma, gamma) = g(weld gamma, weld gamma)", abs(g_schlicht - g_fields) / scale_, tol),
        _identity("g(V, V) >= 0", max(0.0, -g_fields), tol),
    ], details


def _check_period(cfg, grid, tol):
    R = S = cfg.K // 2
    pm = period_variation(cfg.mu, PERIOD_T, R, S, cfg.K, grid)
    details = {"R": R, "S": S, "t": PERIOD_T, "Pi_11": _json_complex(complex(pm.entries[0, 0]))}
    return [
        _identity("Fourier form = schlicht form", pm.discrepancy, tol),
        _identity("Pi_rs = Pi_sr", pm.asymmetry(), tol),
    ], details, pm


def _check_zygmund(cfg, grid, tol):
    gamma = schlicht_variation(cfg.mu, cfg.K, grid)
    est = {}
    for h in (DEFAULT_SPACING, DEFAULT_SPACING / 2):
        est[h] = zygmund_check_sequence(
            gamma, line_grid(DEFAULT_HALF_WIDTH, h), dyadic_offsets(h, DEFAULT_HALF_WIDTH)
        )
    coarse, fine = est[DEFAULT_SPACING], est[DEFAULT_SPACING / 2]
    rel = abs(fine - coarse) / fine if fine > 0 else abs(fine - coarse)
    details = {
        "estimate": coarse,
        "estimate_refined": fine,
        "note": "finite-sample lower bound; Zygmund membership is not decided",
    }
    return [_identity("relative change under grid doubling", rel, tol)], details


def _check_appendix(cfg, grid, tol):
    if isinstance(cfg.mu, Zero):
        phi = QuadraticDifferential([])
    elif isinstance(cfg.mu, Harmonic):
        phi = cfg.mu.phi
    else:
        return None
    rep = verify_appendix(phi, cfg.K)
    quad = fourier_variation(cfg.mu, cfg.K, grid).max_abs_diff(ahlfors_boundary_field(phi, cfg.K))
    return [
        _identity("schlicht route = i conj(boundary route)", rep.max_defect, tol),
        _identity("quadrature V[mu] = boundary route", quad, max(tol, QUAD_TOL)),
    ], {"exact_match": rep.exact_match}


def _check_example_family(cfg, grid, tol):
    if not isinstance(cfg.mu, ExampleFamily) or cfg.mu.n - 1 > cfg.K:
        return None
    n = cfg.mu.n
    f = fourier_variation(cfg.mu, cfg.K, grid)
    gamma = schlicht_variation(cfg.mu, cfg.K, grid)
    ts = (0.5 / n, 0.5j / n)
    branch = max(branch_mismatch(ExampleMap(n, t)) for t in ts)
    pts = (0.3 + 0.2j, -0.5j, 0.6 - 0.1j)
    dil = max(dilatation_check(ExampleMap(n, t), z) for t in ts for z in pts)
    c = example_finite_t_coefficients(ExampleMap(n, ts[0]), cfg.K)
    return [
        _identity("V[mu] = expected field", f.max_abs_diff(example_expected_fourier(n, cfg.K)), tol),
        _identity("gamma[mu] = expected variation", gamma.max_abs_diff(example_expected_cdot(n, cfg.K)), tol),
        _identity("branches agree on |zeta| = 1", branch, EXACT_TOL),
        _identity("dilatation = t mu", dil, 1e-4),
        _identity("c_{n-1}(t) = -t", abs(c[n - 3] + ts[0]), EXACT_TOL),
    ], {}


_RUNNERS = {
    "theorem1": _check_theorem1,
    "hilbert": _check_hilbert,
    "welding": _check_welding,
    "wp": _check_wp,
    "period": _check_period,
    "zygmund": _check_zygmund,
    "appendix": _check_appendix,
    "example-family": _check_example_family,
}


def coefficient_table(mu: BeltramiSpec, K: int, grid: PolarGrid) -> list[dict]:
    f = fourier_variation(mu, K, grid)
    gamma = schlicht_variation(mu, K, grid)
    return [
        {"k": k, "re_a": f[k].real, "im_a": f[k].imag, "re_gamma": gamma[k].real, "im_gamma": gamma[k].imag}
        for k in range(2, K + 1)
    ]


def run_scenario(cfg: ScenarioConfig) -> dict:
    """Run every requested check; write the outputs named in ``cfg``; return the report."""
    grid = PolarGrid(cfg.nr, cfg.ntheta)
    checks = []
    period_matrix = None
    for name in cfg.checks:
        tol = cfg.tolerance(name)
        t0 = time.perf_counter()
        result = _RUNNERS[name](cfg, grid, tol)
        elapsed = time.perf_counter() - t0
        if result is None:
            checks.append({
                "name": name, "pass": True, "residual": 0.0, "tolerance": tol,
                "details": {"skipped": f"not applicable to mu kind {cfg.mu_desc['kind']!r}", "elapsed_s": elapsed},
            })
            continue
        identities, details = result[0], result[1]
        if name == "period":
            period_matrix = result[2]
        details = {**details, "identities": identities, "elapsed_s": elapsed}
        checks.append({
            "name": name,
            "pass": all(i["pass"] for i in identities),
            "residual": max(i["residual"] for i in identities),
            "tolerance": tol,
            "details": details,
        })

    tables = {"coefficients": coefficient_table(cfg.mu, cfg.K, grid)}
    if period_matrix is not None:
        tables["period"] = [
            {"r": r + 1, "s": s + 1, "re": period_matrix.entries[r, s].real, "im": period_matrix.entries[r, s].imag}
            for r in range(period_matrix.R)
            for s in range(period_matrix.S)
        ]
    report = {"config": cfg.echo(), "checks": checks, "tables": tables, "version": __version__}

    if cfg.json_path:
        Path(cfg.json_path).write_text(json.dumps(report, indent=2) + "\n")
    if cfg.csv_path:
        write_coefficient_csv(tables["coefficients"], cfg.csv_path)
    if cfg.period_csv_path and "period" in tables:
        write_period_csv(tables["period"], cfg.period_csv_path)
    return report


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_coefficient_csv(rows, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for row in rows:
            w.writerow([row["k"]] + [_fmt(row[c]) for c in CSV_HEADER[1:]])


def write_period_csv(rows, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["r", "s", "re", "im"])
        for row in rows:
            w.writerow([row["r"], row["s"], _fmt(row["re"]), _fmt(row["im"])])


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="teichtangent", description=__doc__.split("\n\n")[0])
    p.add_argument("config", nargs="?", help="YAML scenario file")
    p.add_argument("--config", dest="config_opt", help="YAML scenario file")
    p.add_argument("--mu", help="zero | example:N | harmonic:h0,h1,... | monomial:c,p,q")
    p.add_argument("--k", type=int, help="truncation order K")
    p.add_argument("--nr", type=int, help="radial Gauss-Legendre nodes")
    p.add_argument("--ntheta", type=int, help="angular nodes")
    p.add_argument("--checks", help=f"comma list from {','.join(CHECKS)} or 'all'")
    p.add_argument("--tol", help="tolerance for all checks, or name=value,... overrides")
    p.add_argument("--out", help="JSON report path")
    p.add_argument("--csv", help="coefficient table CSV path")
    p.add_argument("--period-csv", help="period matrix CSV path")
    p.add_argument("-q", "--quiet", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = {}
        path = args.config_opt or args.config
        if path:
            try:
                raw = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
            except (OSError, yaml.YAMLError) as exc:
                raise ConfigError(f"config: cannot read {path}: {exc}") from None
            if not isinstance(raw, dict):
                raise ConfigError("config: top level must be a mapping")
        if args.mu:
            raw["mu"] = parse_mu_string(args.mu)
        if args.k is not None:
            raw["K"] = args.k
        grid = dict(raw.get("grid") or {})
        if args.nr is not None:
            grid["nr"] = args.nr
        if args.ntheta is not None:
            grid["ntheta"] = args.ntheta
        raw["grid"] = grid
        if args.checks:
            raw["checks"] = args.checks
        if args.tol:
            try:
                raw["tolerances"] = {**(raw.get("tolerances") or {}), **parse_tolerances(args.tol)}
            except ValueError:
                raise ConfigError(f"--tol: cannot parse {args.tol!r}") from None
        out = dict(raw.get("output") or {})
        for key, val in (("json", args.out), ("csv", args.csv), ("period_csv", args.period_csv)):
            if val:
                out[key] = val
        raw["output"] = out
        cfg = make_config(raw)
    except ConfigError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2

    try:
        report = run_scenario(cfg)
    except TeichError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    ok = all(c["pass"] for c in report["checks"])
    if not args.quiet:
        for c in report["checks"]:
            status = "SKIP" if "skipped" in c["details"] else ("PASS" if c["pass"] else "FAIL")
            print(f"{status:4s}  {c['name']:15s} residual={c['residual']:.3e}  tol={c['tolerance']:.1e}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
