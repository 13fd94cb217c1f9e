"""Command-line front end: deterministic JSON and CSV reports.

Commands: `analyze` (minors, symbolic quantities, sphere-scan verdicts,
ratio probes), `arcs` (exact arc-order comparison table), `relative`
(distance-band verdicts against a Sigma set, jet equality, deformation
compatibility, ellipticity probe), `example` (the built-in worked example
end to end).

All randomness flows from the single configured `seed` through named
subsystem streams, so adding a consumer never perturbs existing streams.
Reports carry `schema: 1`, the tool version, the effective configuration
and caveat strings; floats are serialized at 12 significant digits, so a
fixed (config, seed) pair produces byte-identical files.

Exit codes: 0 success; 1 parse or validation failure; 2 violated
precondition (jet mismatch, unsupported Sigma variant); 3 internal
inconsistency (an arc-order mismatch, which a correct build never emits).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from . import lojasiewicz as lj
from . import quantities as qt
from . import relative as rel
from .arcs import Arc, arc_generator, equivalence_probe, parse_arc, probe_csv
from .lojasiewicz import CAVEAT_NUMERICAL, ScanConfig
from .poly import ParseError, max_variable_index, parse_polynomial
from .quantities import MapGerm, map_germ
from .relative import (
    JetMismatchError,
    PROJECTION_TOL,
    RelativeScanConfig,
    UnsupportedSigmaError,
)
from .seeds import subsystem_seed

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PRECONDITION = 2
EXIT_INTERNAL = 3


class CliError(ValueError):
    """Invalid command line, config, or input file (exit code 1)."""


class InternalInconsistencyError(RuntimeError):
    """A result that a correct implementation can never produce (exit code 3)."""


class _Parser(argparse.ArgumentParser):
    # argparse would sys.exit(2) on bad flags; 2 is reserved for violated
    # preconditions here, so route parse failures through CliError instead
    def error(self, message: str) -> None:  # type: ignore[override]
        raise CliError(message)


DEFAULT_CONFIG: dict = {
    "seed": None,
    "m": [1, 2],
    "r": [1, 2, 3, 4],
    "r_max": 6,
    "wbar": 1.0,
    "tolerance": 0.1,
    "radii": list(lj.DEFAULT_RADII),
    "grid_per_angle": 720,
    "hi_dim_directions": 4096,
    "multistarts": 16,
    "zero_floor": 1e-100,
    "arc_count": 50,
    "arc_max_exponent": 6,
    "arc_max_terms": 3,
    "arc_coeff_bound": 9,
    "ratio_radius": 0.01,
    "ratio_points": 2000,
    "relative": {
        "delta": 0.05,
        "bands": 8,
        "samples_per_band": 256,
        "anchor_directions": 8,
        "alpha_max": 4,
        "r": [2],
        "m": [1],
        "which": ["kuo", "thom"],
        "t_grid": ["0", "1/4", "1/2", "3/4", "1"],
        "deform_germ": None,
    },
}


def load_config(path: Path | None, seed_flag: int | None) -> dict:
    """Merge the config file over the defaults; `--seed` wins over both."""
    config = {k: (dict(v) if isinstance(v, dict) else list(v) if isinstance(v, list) else v)
              for k, v in DEFAULT_CONFIG.items()}
    if path is not None:
        try:
            loaded = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise CliError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(loaded, dict):
            raise CliError(f"config {path} must be a JSON object")
        for key, value in loaded.items():
            if key not in config:
                raise CliError(f"unknown config key {key!r}")
            if key == "relative":
                if not isinstance(value, dict):
                    raise CliError("config key 'relative' must be an object")
                for rkey, rvalue in value.items():
                    if rkey not in config["relative"]:
                        raise CliError(f"unknown config key 'relative.{rkey}'")
                    config["relative"][rkey] = rvalue
            else:
                config[key] = value
    if seed_flag is not None:
        config["seed"] = seed_flag
    _validate_config(config)
    return config


def _validate_config(config: dict) -> None:
    def positive(name: str, value) -> None:
        if not isinstance(value, (int, float)) or isinstance(value, bool) or value <= 0:
            raise CliError(f"config key {name!r} must be a positive number, got {value!r}")

    if config["seed"] is not None and not isinstance(config["seed"], int):
        raise CliError("config key 'seed' must be an integer")
    for name in ("wbar", "tolerance", "zero_floor", "ratio_radius"):
        positive(name, config[name])
    for name in ("r_max", "grid_per_angle", "hi_dim_directions", "multistarts",
                 "arc_max_exponent", "arc_max_terms", "arc_coeff_bound", "ratio_points"):
        positive(name, config[name])
        if not isinstance(config[name], int):
            raise CliError(f"config key {name!r} must be an integer")
    if not isinstance(config["arc_count"], int) or config["arc_count"] < 0:
        raise CliError("config key 'arc_count' must be a nonnegative integer")
    for name in ("m", "r"):
        values = config[name]
        if not values or any(not isinstance(v, int) or v < 1 for v in values):
            raise CliError(f"config key {name!r} must be a nonempty list of positive integers")
    if not config["radii"] or any(not isinstance(v, (int, float)) or v <= 0 for v in config["radii"]):
        raise CliError("config key 'radii' must be a nonempty list of positive numbers")
    rc = config["relative"]
    for name in ("delta",):
        positive(f"relative.{name}", rc[name])
    for name in ("bands", "samples_per_band", "anchor_directions", "alpha_max"):
        positive(f"relative.{name}", rc[name])
    for name in ("m", "r"):
        values = rc[name]
        if not values or any(not isinstance(v, int) or v < 1 for v in values):
            raise CliError(f"config key 'relative.{name}' must be a nonempty list of positive integers")
    if not rc["which"] or any(w not in ("kuo", "thom") for w in rc["which"]):
        raise CliError("config key 'relative.which' must list 'kuo' and/or 'thom'")
    for entry in rc["t_grid"]:
        try:
            t = Fraction(entry)
        except (ValueError, ZeroDivisionError) as exc:
            raise CliError(f"relative.t_grid entry {entry!r} is not a rational number") from exc
        if not 0 <= t <= 1:
            raise CliError(f"relative.t_grid entry {entry!r} is outside [0, 1]")


def _require_seed(config: dict, why: str) -> int:
    if config["seed"] is None:
        raise CliError(f"a seed is required for {why}; pass --seed or set 'seed' in the config")
    return config["seed"]


def _scan_config(config: dict) -> ScanConfig:
    return ScanConfig(
        radii=tuple(config["radii"]),
        grid_per_angle=config["grid_per_angle"],
        hi_dim_directions=config["hi_dim_directions"],
        multistarts=config["multistarts"],
        seed=config["seed"],
        tolerance=config["tolerance"],
        zero_floor=config["zero_floor"],
    )


def _relative_config(config: dict) -> RelativeScanConfig:
    rc = config["relative"]
    return RelativeScanConfig(
        delta=rc["delta"],
        bands=rc["bands"],
        samples_per_band=rc["samples_per_band"],
        anchor_directions=rc["anchor_directions"],
        seed=config["seed"],
        tolerance=config["tolerance"],
        zero_floor=config["zero_floor"],
    )


# ---------------------------------------------------------------------------
# Input files


def _load_text(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def load_germ(path: Path) -> MapGerm:
    """Read a germ file: optional `nvars:`/`jet:` headers, one polynomial
    per line, `#` comments; the variable count is inferred when absent."""
    nvars: int | None = None
    jet: int | None = None
    lines: list[str] = []
    for raw in _load_text(path).splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("nvars:"):
            nvars = int(line[len("nvars:"):].strip())
        elif line.startswith("jet:"):
            jet = int(line[len("jet:"):].strip())
        else:
            lines.append(line)
    if not lines:
        raise CliError(f"germ file {path} contains no components")
    if nvars is None:
        indices = [max_variable_index(text) for text in lines]
        known = [i for i in indices if i is not None]
        nvars = max(known) + 1 if known else 1
    return map_germ(tuple(parse_polynomial(text, nvars) for text in lines), jet)


def load_arcs(path: Path, nvars: int) -> list[Arc]:
    arcs = []
    for raw in _load_text(path).splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            arcs.append(parse_arc(line, nvars))
    return arcs


def _generated_arcs(config: dict, n: int) -> list[Arc]:
    seed = _require_seed(config, "generated arcs")
    return [
        arc_generator(
            subsystem_seed(seed, f"arc:{j}"),
            n,
            max_exponent=config["arc_max_exponent"],
            max_terms=config["arc_max_terms"],
            coeff_bound=config["arc_coeff_bound"],
        )
        for j in range(config["arc_count"])
    ]


# ---------------------------------------------------------------------------
# Canonical serialization


def canonical(obj):
    """Make an object JSON-ready with reproducible float formatting."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return float(f"{obj:.12g}")
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.floating):
        return canonical(float(obj))
    if isinstance(obj, (np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _float_str(x: float | None) -> str:
    if x is None:
        return "nan"
    return f"{x:.12g}"


def _var_names(n: int) -> tuple[str, ...]:
    if n <= 4:
        return ("x", "y", "z", "w")[:n]
    return tuple(f"x{i + 1}" for i in range(n))


def _germ_dict(germ: MapGerm) -> dict:
    return {
        "components": [c.to_string() for c in germ.components],
        "n": germ.n,
        "p": germ.p,
        "jet_degree": germ.jet_degree,
    }


def _sigma_dict(sigma: rel.SigmaSet) -> dict:
    if isinstance(sigma, rel.CoordinateSubspaceUnion):
        return {
            "variant": "subspaces",
            "description": sigma.describe(),
            "distance_method": "exact",
        }
    return {
        "variant": "zeros",
        "description": sigma.describe(),
        "distance_method": f"penalized projection, residual tolerance {PROJECTION_TOL:g}",
    }


def _estimate_dict(est: lj.ExponentEstimate | None) -> dict | None:
    if est is None:
        return None
    return {
        "slope": est.slope,
        "log_constant": est.log_constant,
        "r_squared": est.r_squared,
        "n_points": est.n_points,
    }


def _scan_dict(scan: lj.RadialScan) -> dict:
    return {
        "radii": list(scan.radii),
        "min_values": list(scan.min_values),
        "feasible": list(scan.feasible),
        "total": list(scan.total),
        "strategy": {
            "kind": scan.strategy.kind,
            "grid_points": scan.strategy.grid_points,
            "multistarts": scan.strategy.multistarts,
            "seed": scan.strategy.seed,
        },
    }


def _verdict_dict(v: lj.ConditionVerdict) -> dict:
    return {
        "condition": v.condition,
        "holds": v.holds,
        "estimate": _estimate_dict(v.estimate),
        "target_exponent": v.target_exponent,
        "tolerance": v.tolerance,
        "caveat": v.caveat,
        "diagnostics": list(v.diagnostics),
        "scan": _scan_dict(v.scan),
    }


def _relative_verdict_dict(v: rel.RelativeVerdict) -> dict:
    return {
        "condition": v.condition,
        "r": v.r,
        "m": v.m,
        "holds": v.holds,
        "estimate": _estimate_dict(v.estimate),
        "target_exponent": v.target_exponent,
        "tolerance": v.tolerance,
        "caveat": v.caveat,
        "diagnostics": list(v.diagnostics),
        "sigma": v.sigma,
        "bands": [
            {"low": row.low, "high": row.high, "count": row.count, "min_value": row.min_value}
            for row in v.bands
        ],
    }


def _probe_dict(rep) -> dict:
    return {
        "m": rep.m,
        "n_equal": rep.n_equal,
        "n_total": rep.n_total,
        "all_equal": rep.all_equal,
        "rows": [
            {"arc_id": row.arc_id, "ord_K": row.ord_kuo, "ord_T": row.ord_thom, "equal": row.equal}
            for row in rep.rows
        ],
    }


def _ratio_dict(probe: lj.RatioProbe) -> dict:
    return {
        "m": probe.m,
        "radius": probe.radius,
        "shrunk_radius": probe.shrunk_radius,
        "points": probe.points,
        "max_kuo_over_thom": probe.max_kuo_over_thom,
        "max_thom_over_kuo": probe.max_thom_over_kuo,
        "shrunk_max_kuo_over_thom": probe.shrunk_max_kuo_over_thom,
        "shrunk_max_thom_over_kuo": probe.shrunk_max_thom_over_kuo,
        "stability_kuo_over_thom": probe.stability_kuo_over_thom,
        "stability_thom_over_kuo": probe.stability_thom_over_kuo,
    }


def _ellipticity_dict(report: rel.EllipticityReport) -> dict:
    return {
        "alpha_max": report.alpha_max,
        "holds": report.holds,
        "entries": [
            {
                "index": e.index,
                "generator": e.generator,
                "elliptic": e.elliptic,
                "estimate": _estimate_dict(e.estimate),
                "diagnostics": list(e.diagnostics),
            }
            for e in report.entries
        ],
    }


def _scan_csv(scan: lj.RadialScan) -> str:
    lines = ["radius,min_value"]
    for r, v in zip(scan.radii, scan.min_values):
        lines.append(f"{_float_str(r)},{_float_str(v)}")
    return "\n".join(lines) + "\n"


def _report_base(command: str, config: dict) -> dict:
    return {
        "schema": 1,
        "tool": {"name": "kuothom", "version": __version__},
        "command": command,
        "config": config,
        "caveats": [CAVEAT_NUMERICAL],
    }


def _emit(out_dir: Path, stem: str, report: dict, csvs: dict[str, str]) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    names = {}
    for name, content in csvs.items():
        fname = f"{stem}_{name}.csv"
        (out_dir / fname).write_text(content)
        names[name] = fname
    report["csv_files"] = names
    path = out_dir / f"{stem}_report.json"
    path.write_text(json.dumps(canonical(report), sort_keys=True, indent=2) + "\n")
    for fname in names.values():
        print(f"wrote {out_dir / fname}")
    print(f"wrote {path}")


# ---------------------------------------------------------------------------
# Command bodies


def _analyze_results(germ: MapGerm, config: dict, cfg: ScanConfig) -> tuple[dict, dict[str, str]]:
    cache = qt.build_minors(germ)
    names = _var_names(germ.n)
    minors = {
        "p_minors": [
            {"columns": [names[i] for i in cols], "polynomial": poly.to_string()}
            for cols, poly in cache.p_minors
        ],
        "thom_minors": [
            {"columns": [names[i] for i in cols], "polynomial": poly.to_string()}
            for cols, poly in cache.thom_minors
        ],
    }
    symbolic = {
        "kuo_m2": qt.kuo_polynomial(germ, 2).to_string(),
        "thom_m2": qt.thom_polynomial(germ, 2).to_string(),
    }
    scans = {
        "kuo_m1": lj.scan_quantity(germ, "kuo", 1, cfg),
        "kuo_m2": lj.scan_quantity(germ, "kuo", 2, cfg),
        "thom_m2": lj.scan_quantity(germ, "thom", 2, cfg),
    }
    if germ.p == 1:
        scans["gradient"] = lj.scan_gradient_norm(germ, cfg)

    verdicts = []
    csvs: dict[str, str] = {}
    for r in config["r"]:
        if germ.p == 1:
            verdicts.append(lj.verdict_from_scan(f"kuiper-kuo r={r}", scans["gradient"], r - 1, cfg))
        horn = lj.check_kuo(germ, r, config["wbar"], cfg)
        verdicts.append(horn)
        csvs[f"scan_horn_r{r}"] = _scan_csv(horn.scan)
        verdicts.append(lj.verdict_from_scan(f"ktilde r={r}", scans["kuo_m1"], r, cfg))
        verdicts.append(lj.verdict_from_scan(f"thom-inequality r={r}", scans["thom_m2"], 2 * r, cfg))
        verdicts.append(lj.verdict_from_scan(f"kuo-inequality r={r}", scans["kuo_m2"], 2 * r, cfg))
    for name, scan in scans.items():
        csvs[f"scan_{name}"] = _scan_csv(scan)

    results = {
        "minors": minors,
        "symbolic": symbolic,
        "verdicts": [_verdict_dict(v) for v in verdicts],
    }
    if germ.p == 1:
        results["sufficiency_degree"] = lj.sufficiency_degree_estimate(germ, config["r_max"], cfg)

    ratios = {}
    for m in config["m"]:
        try:
            probe = lj.ratio_stability_probe(
                germ,
                m,
                radius=config["ratio_radius"],
                points=config["ratio_points"],
                seed=config["seed"],
            )
            ratios[str(m)] = _ratio_dict(probe)
        except ValueError as exc:
            ratios[str(m)] = {"error": str(exc)}
    results["ratio_probes"] = ratios
    return results, csvs


def _arcs_results(germ: MapGerm, arcs: Sequence[Arc], ms: Sequence[int]) -> tuple[dict, dict[str, str]]:
    reports = [equivalence_probe(germ, arcs, m) for m in ms]
    csvs = {f"probe_m{rep.m}": probe_csv(rep) for rep in reports}
    results = {"probes": [_probe_dict(rep) for rep in reports]}
    return results, csvs


def _raise_on_mismatch(results: dict, where: str) -> None:
    for probe in results["probes"]:
        if not probe["all_equal"]:
            raise InternalInconsistencyError(
                f"arc-order mismatch at m={probe['m']}: {probe['n_equal']} of "
                f"{probe['n_total']} arcs agree; see {where}"
            )


def cmd_analyze(germ_path: Path, config: dict, out: Path) -> int:
    germ = load_germ(germ_path)
    _require_seed(config, "sphere scans and ratio probes")
    results, csvs = _analyze_results(germ, config, _scan_config(config))
    report = _report_base("analyze", config)
    report["germ"] = _germ_dict(germ)
    report["results"] = results
    _emit(out, "analyze", report, csvs)
    return EXIT_OK


def cmd_arcs(germ_path: Path, arcs_path: Path | None, config: dict, out: Path) -> int:
    germ = load_germ(germ_path)
    if arcs_path is not None:
        arcs = load_arcs(arcs_path, germ.n)
        source = {"kind": "file", "path": str(arcs_path)}
    else:
        arcs = _generated_arcs(config, germ.n)
        source = {"kind": "generated", "count": len(arcs)}
    results, csvs = _arcs_results(germ, arcs, config["m"])
    report = _report_base("arcs", config)
    report["germ"] = _germ_dict(germ)
    report["arcs"] = {"source": source, "list": [a.to_string() for a in arcs]}
    report["results"] = results
    _emit(out, "arcs", report, csvs)
    _raise_on_mismatch(results, str(out / "arcs_report.json"))
    return EXIT_OK


def cmd_relative(germ_path: Path, sigma_path: Path, config: dict, out: Path) -> int:
    germ = load_germ(germ_path)
    sigma = rel.parse_sigma(_load_text(sigma_path), germ.n)
    _require_seed(config, "relative distance-band scans")
    rcfg = _relative_config(config)
    rc = config["relative"]

    verdicts = []
    for which in rc["which"]:
        for r in rc["r"]:
            for m in rc["m"]:
                verdicts.append(rel.check_relative(germ, which, r, m, sigma, rcfg))
    results: dict = {
        "verdicts": [_relative_verdict_dict(v) for v in verdicts],
        "ellipticity": {
            "kuo_generators": _ellipticity_dict(
                rel.sigma_elliptic_probe(qt.ideal_generators_kuo(germ), sigma, rc["alpha_max"], rcfg)
            ),
            "thom_generators": _ellipticity_dict(
                rel.sigma_elliptic_probe(qt.ideal_generators_thom(germ), sigma, rc["alpha_max"], rcfg)
            ),
        },
    }
    if rc["deform_germ"]:
        other = load_germ(Path(rc["deform_germ"]))
        r0, m0 = rc["r"][0], rc["m"][0]
        t_grid = [Fraction(entry) for entry in rc["t_grid"]]
        per_t = {}
        for which in rc["which"]:
            pairs = rel.check_compatibility(germ, other, r0, m0, which, sigma, t_grid, rcfg)
            per_t[which] = [
                {"t": str(t), "verdict": _relative_verdict_dict(v)} for t, v in pairs
            ]
        results["compatibility"] = {
            "deform_germ": _germ_dict(other),
            "r": r0,
            "m": m0,
            "per_t": per_t,
        }
    report = _report_base("relative", config)
    report["caveats"].append("Sigma coherence is assumed, not checked")
    report["germ"] = _germ_dict(germ)
    report["sigma"] = _sigma_dict(sigma)
    report["results"] = results
    _emit(out, "relative", report, {})
    return EXIT_OK


def cmd_example(config: dict, out: Path) -> int:
    """The built-in worked example: germ (x - y^2, x^2), full pipeline."""
    if config["seed"] is None:
        config = {**config, "seed": 7}
    germ = map_germ((parse_polynomial("x - y^2", 2), parse_polynomial("x^2", 2)))
    analyze, csvs = _analyze_results(germ, config, _scan_config(config))
    arcs = _generated_arcs(config, germ.n)
    arc_results, arc_csvs = _arcs_results(germ, arcs, config["m"])
    csvs.update(arc_csvs)
    sigma = rel.CoordinateSubspaceUnion(nvars=2, subspaces=((),))
    rcfg = _relative_config(config)
    rc = config["relative"]
    relative = {
        "sigma": _sigma_dict(sigma),
        "verdicts": [
            _relative_verdict_dict(rel.check_relative(germ, which, rc["r"][0], rc["m"][0], sigma, rcfg))
            for which in rc["which"]
        ],
        "ellipticity": _ellipticity_dict(
            rel.sigma_elliptic_probe(qt.ideal_generators_kuo(germ), sigma, rc["alpha_max"], rcfg)
        ),
    }
    report = _report_base("example", config)
    report["germ"] = _germ_dict(germ)
    report["arcs"] = {"source": {"kind": "generated", "count": len(arcs)},
                      "list": [a.to_string() for a in arcs]}
    report["results"] = {"analyze": analyze, "arcs": arc_results, "relative": relative}
    _emit(out, "example", report, csvs)
    _raise_on_mismatch(arc_results, str(out / "example_report.json"))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing and dispatch


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kuothom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, germ: bool) -> None:
        if germ:
            p.add_argument("--germ", type=Path, required=True, help="germ file")
        p.add_argument("--config", type=Path, help="JSON config file")
        p.add_argument("--seed", type=int, help="master seed (overrides the config)")
        p.add_argument("--out", type=Path, default=Path("."), help="output directory")

    pa = sub.add_parser("analyze", help="minors, symbolic quantities, condition verdicts")
    common(pa, germ=True)

    pb = sub.add_parser("arcs", help="arc-order comparison of the two quantities")
    common(pb, germ=True)
    pb.add_argument("--arcs", type=Path, help="arc file (one arc per line); generated when absent")

    pc = sub.add_parser("relative", help="Sigma-relative verdicts, jets, compatibility")
    common(pc, germ=True)
    pc.add_argument("--sigma", type=Path, required=True, help="Sigma description file")

    pd = sub.add_parser("example", help="run the built-in worked example end to end")
    common(pd, germ=False)
    return parser


def run(args: argparse.Namespace) -> int:
    config = load_config(args.config, args.seed)
    if args.command == "analyze":
        return cmd_analyze(args.germ, config, args.out)
    if args.command == "arcs":
        return cmd_arcs(args.germ, args.arcs, config, args.out)
    if args.command == "relative":
        return cmd_relative(args.germ, args.sigma, config, args.out)
    if args.command == "example":
        return cmd_example(config, args.out)
    raise CliError(f"unknown command {args.command!r}")


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return run(args)
    except (JetMismatchError, UnsupportedSigmaError) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InternalInconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (CliError, ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def entry_point() -> None:
    raise SystemExit(main(sys.argv[1:]))
