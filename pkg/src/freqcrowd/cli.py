"""Command-line front end: reproducible runs with manifests.

Every command writes its outputs under ``out/<command>/<name>/`` together
with a ``manifest.json`` recording the package version, the fully resolved
configuration, and SHA-256 hashes of any input files.  ``freqcrowd rerun
<manifest>`` replays the command from that snapshot; on the same platform
the CSV/JSON outputs come back byte-identical (nothing here consults the
clock or any other ambient entropy — the default seed is 0).

Configuration precedence: command-line flags beat ``FREQCROWD_<KEY>``
environment variables, which beat ``--config`` INI entries (section
``[freqcrowd]``), which beat built-in defaults.

Exit codes: 0 success, 1 runtime or I/O failure, 2 usage/config error.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import hashlib
import json
import os
import sys

import numpy as np

from . import __version__, collision, lattice, mc, physics, svgchart, tunesim, window
from .errors import FreqcrowdError, InputError, ParameterError

TABLE2_SIGMAS = (132.3, 14.0)
EXTRAPOLATE_SIGMAS = (14.0, 12.0, 10.0, 8.0, 6.0)

# (dest, converter) for every option that may come from env or config file
_CONVERTERS = {
    "family": str, "distance": int, "base_ghz": float, "spacing_mhz": float,
    "sigma_mhz": float, "sigmas": str, "spacings": str, "trials": int,
    "seed": int, "threads": int, "out": str, "name": str, "config": str,
    "reproduce_table2": bool, "csv_path": str, "sweep_csv": str,
    "fix_exponent": float, "junctions": int, "target_spread": str,
    "median_ohm": float, "fractional_sigma": float, "noise_sigma": float,
    "step_fraction": float, "converge_band": float, "max_anneals": int,
    "residual_std_mhz": float, "anharmonicity_mhz": float, "manifest": str,
}

_DEFAULTS = {
    "base_ghz": lattice.DEFAULT_BASE_GHZ,
    "spacing_mhz": lattice.DEFAULT_SPACING_MHZ,
    "sigma_mhz": 0.0,
    "sigmas": "",
    "spacings": "",
    "trials": 0,                # 0 = adaptive policy
    "seed": 0,
    "threads": 1,
    "out": "out",
    "name": "default",
    "reproduce_table2": False,
    "fix_exponent": float("nan"),
    "junctions": 31,
    "target_spread": "",
    "median_ohm": tunesim.DEFAULT_MEDIAN_OHM,
    "fractional_sigma": tunesim.DEFAULT_FRACTIONAL_SIGMA,
    "noise_sigma": 0.10,
    "step_fraction": 0.5,
    "converge_band": 0.003,
    "max_anneals": 50,
    "residual_std_mhz": 14.5,
    "anharmonicity_mhz": collision.DEFAULT_ANHARMONICITY_MHZ,
}


class UsageError(Exception):
    pass


def _coerce(key: str, raw: str):
    conv = _CONVERTERS[key]
    if conv is bool:
        if raw.lower() in ("1", "true", "yes", "on"):
            return True
        if raw.lower() in ("0", "false", "no", "off"):
            return False
        raise UsageError(f"cannot read {raw!r} as a flag value for {key}")
    try:
        return conv(raw)
    except ValueError as exc:
        raise UsageError(f"bad value for {key}: {raw!r}") from exc


def resolve_config(args: argparse.Namespace) -> dict:
    """Merge flags, FREQCROWD_* environment, INI file, and defaults."""
    file_cfg = {}
    if getattr(args, "config", None):
        parser = configparser.ConfigParser()
        read = parser.read(args.config)
        if not read:
            raise UsageError(f"config file not found: {args.config}")
        if parser.has_section("freqcrowd"):
            for key, raw in parser.items("freqcrowd"):
                if key not in _CONVERTERS:
                    raise UsageError(f"unknown config key: {key}")
                file_cfg[key] = _coerce(key, raw)
    cfg = {"command": args.command}
    for key, value in vars(args).items():
        if key in ("command", "config"):
            continue
        if value is not None:
            cfg[key] = value
            continue
        env = os.environ.get(f"FREQCROWD_{key.upper()}")
        if env is not None:
            cfg[key] = _coerce(key, env)
        elif key in file_cfg:
            cfg[key] = file_cfg[key]
        elif key in _DEFAULTS:
            cfg[key] = _DEFAULTS[key]
        else:
            cfg[key] = None
    return cfg


def _float_list(text: str):
    return [float(tok) for tok in text.replace(";", ",").split(",") if tok.strip()]


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            h.update(block)
    return h.hexdigest()


def _config_hash(cfg: dict) -> str:
    return hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()[:12]


class RunDir:
    """Output directory plus the manifest bookkeeping for one run."""

    def __init__(self, cfg: dict):
        self.cfg = cfg
        self.path = os.path.join(cfg["out"], cfg["command"], cfg["name"])
        os.makedirs(self.path, exist_ok=True)
        self.outputs = []
        self.inputs = {}

    def note_input(self, path: str) -> None:
        self.inputs[path] = _sha256(path)

    def write_text(self, filename: str, text: str) -> str:
        full = os.path.join(self.path, filename)
        with open(full, "w", newline="") as fh:
            fh.write(text)
        self.outputs.append(filename)
        return full

    def write_json(self, filename: str, payload) -> str:
        return self.write_text(filename, json.dumps(payload, indent=2, sort_keys=True) + "\n")

    def write_csv(self, filename: str, header, rows) -> str:
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_cell(v) for v in row))
        return self.write_text(filename, "\n".join(lines) + "\n")

    def finish(self) -> None:
        snapshot = {k: v for k, v in self.cfg.items() if k not in ("out",)}
        manifest = {
            "package": "freqcrowd",
            "version": __version__,
            "command": self.cfg["command"],
            "config": snapshot,
            "config_hash": _config_hash(snapshot),
            "inputs_sha256": self.inputs,
            "outputs": sorted(self.outputs),
        }
        full = os.path.join(self.path, "manifest.json")
        with open(full, "w", newline="") as fh:
            fh.write(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def _build(cfg: dict) -> lattice.Lattice:
    try:
        return lattice.build_lattice(cfg["family"], cfg["distance"])
    except (ParameterError, InputError) as exc:
        raise UsageError(str(exc)) from exc


def _rules(cfg: dict) -> collision.CollisionRules:
    return collision.CollisionRules(anharmonicity_mhz=cfg["anharmonicity_mhz"])


def _pattern(cfg: dict) -> lattice.FrequencyPattern:
    return lattice.FrequencyPattern(
        base_ghz=cfg.get("base_ghz", _DEFAULTS["base_ghz"]),
        spacing_mhz=cfg.get("spacing_mhz", _DEFAULTS["spacing_mhz"]))


def _sweep_row(pt: mc.SweepPoint):
    return [pt.family, pt.distance, pt.n_qubits, pt.sigma_mhz, pt.spacing_mhz, pt.trials,
            pt.mean_collisions, pt.yield_fraction, *pt.per_type_means]


_SWEEP_HEADER = ["family", "distance", "n_qubits", "sigma_f_mhz", "spacing_mhz", "trials",
                 "mean_collisions", "yield"] + [f"mean_type{t}" for t in collision.TYPE_IDS]


def cmd_lattice(cfg: dict) -> int:
    lat = _build(cfg)
    run = RunDir(cfg)
    run.write_json("results.json", lattice.to_json_dict(lat))
    run.write_text("lattice.dot", lattice.to_dot(lat))
    run.finish()
    s = lattice.lattice_summary(lat)
    print(f"{lat.family} d={lat.distance}: {lat.n_qubits} qubits, {len(lat.edges)} directed couplings")
    print(f"roles: {s['code_roles']}")
    print(f"written: {run.path}")
    return 0


def cmd_check(cfg: dict) -> int:
    lat = _build(cfg)
    pattern = _pattern(cfg)
    freqs = lattice.set_points_mhz(lat, pattern)
    if cfg["sigma_mhz"] > 0.0:
        freqs = freqs + cfg["sigma_mhz"] * mc.gaussian_deviates(cfg["seed"], 1, lat.n_qubits)[0]
    report = collision.count_collisions(lat, freqs, _rules(cfg), collect=True)
    run = RunDir(cfg)
    run.write_json("results.json", {
        "family": lat.family, "distance": lat.distance, "n_qubits": lat.n_qubits,
        "sigma_f_mhz": cfg["sigma_mhz"], "spacing_mhz": cfg["spacing_mhz"],
        "per_type": {str(t): n for t, n in report.per_type.items()},
        "total": report.total,
        "instances": [list(inst) for inst in report.instances],
    })
    run.finish()
    print(f"{lat.family} d={lat.distance} at spacing {cfg['spacing_mhz']:g} MHz, "
          f"sigma {cfg['sigma_mhz']:g} MHz")
    print("type  count")
    for t, n in report.per_type.items():
        print(f"   {t}  {n}")
    print(f" all  {report.total}")
    return 0


def _policy(cfg: dict) -> mc.TrialsPolicy:
    if cfg["trials"] > 0:
        return mc.FixedTrials(cfg["trials"])
    return mc.AdaptiveTrials()


def cmd_sweep(cfg: dict) -> int:
    if cfg["reproduce_table2"]:
        return _sweep_table2(cfg)
    lat = _build(cfg)
    pattern = _pattern(cfg)
    sigma_grid = _float_list(cfg["sigmas"]) or mc.DEFAULT_SIGMA_GRID_MHZ
    spacing_grid = _float_list(cfg["spacings"]) or mc.DEFAULT_SPACING_GRID_MHZ
    points = mc.sweep_sigma(lat, pattern, sigma_grid, _policy(cfg), cfg["seed"],
                            spacing_grid=spacing_grid, rules=_rules(cfg), threads=cfg["threads"])
    run = RunDir(cfg)
    run.write_csv("results.csv", _SWEEP_HEADER, [_sweep_row(pt) for pt in points])
    snapshot = {k: v for k, v in cfg.items() if k != "out"}
    run.write_json("results.json", {
        "metadata": {"seed": cfg["seed"], "config_hash": _config_hash(snapshot)},
        "points": [{"family": pt.family, "distance": pt.distance, "n_qubits": pt.n_qubits,
                    "sigma_f_mhz": pt.sigma_mhz, "spacing_mhz": pt.spacing_mhz,
                    "trials": pt.trials, "mean_collisions": pt.mean_collisions,
                    "yield": pt.yield_fraction,
                    "per_type_means": list(pt.per_type_means)} for pt in points],
    })
    sig = [pt.sigma_mhz for pt in points]
    run.write_text("plot.svg", svgchart.line_chart(
        [("mean collisions", sig, [pt.mean_collisions for pt in points]),
         ("yield", sig, [pt.yield_fraction for pt in points])],
        title=f"{lat.family} d={lat.distance}", x_label="frequency scatter (MHz)",
        y_label="per-lattice mean / fraction"))
    run.finish()
    print(f"{lat.family} d={lat.distance}: {len(points)} sigma points -> {run.path}")
    return 0


def _sweep_table2(cfg: dict) -> int:
    """Summary table over all nine lattices at the canonical scatter levels.

    The tuned-precision column re-optimises the set-point spacing; the
    as-fabricated column reuses that spacing, since a chip is laid out
    before anyone knows how well tuning will do.
    """
    rows = []
    sigma_hi, sigma_lo = TABLE2_SIGMAS
    for family in lattice.FAMILIES:
        for distance in (3, 5, 7):
            lat = lattice.build_lattice(family, distance)
            pattern = _pattern(cfg)
            idx = collision.build_index(lat)
            policy = _policy(cfg)
            n0 = policy.base_trials(distance, sigma_lo)
            z = mc.gaussian_deviates(cfg["seed"], max(n0, policy.max_trials(distance)), lat.n_qubits)
            tuned = mc.optimize_spacing(lat, pattern, sigma_lo, n0, cfg["seed"],
                                        rules=_rules(cfg), index=idx, deviates=z,
                                        threads=cfg["threads"])
            n1 = policy.boost_trials(distance, sigma_lo, tuned.yield_fraction)
            if n1 > n0:
                tuned = mc.run_point(lat, pattern.with_spacing(tuned.spacing_mhz), sigma_lo, n1,
                                     cfg["seed"], rules=_rules(cfg), index=idx, deviates=z,
                                     threads=cfg["threads"])
            asfab = mc.run_point(lat, pattern.with_spacing(tuned.spacing_mhz), sigma_hi,
                                 policy.base_trials(distance, sigma_hi), cfg["seed"],
                                 rules=_rules(cfg), index=idx, deviates=z, threads=cfg["threads"])
            rows.append([family, distance, lat.n_qubits, asfab.mean_collisions,
                         tuned.spacing_mhz, tuned.mean_collisions, tuned.yield_fraction,
                         tuned.trials])
            print(f"{family:>14} d={distance}: N={lat.n_qubits:>3} "
                  f"mean@{sigma_hi:g}={asfab.mean_collisions:7.1f}  "
                  f"mean@{sigma_lo:g}={tuned.mean_collisions:6.2f}  "
                  f"yield={100 * tuned.yield_fraction:5.1f}%")
    run = RunDir(cfg)
    run.write_csv("results.csv",
                  ["family", "distance", "n_qubits", f"mean_collisions_sigma{sigma_hi:g}",
                   "spacing_mhz", f"mean_collisions_sigma{sigma_lo:g}", "yield", "trials"],
                  rows)
    run.finish()
    print(f"written: {run.path}")
    return 0


def _read_sweep_csv(path: str):
    """Parse a sweep results.csv into per-(family, distance) yield curves."""
    curves = {}
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    with fh:
        reader = csv.DictReader(fh)
        need = {"family", "distance", "n_qubits", "sigma_f_mhz", "yield"}
        if reader.fieldnames is None or not need.issubset(reader.fieldnames):
            raise InputError(f"{path}: expected sweep CSV with columns {sorted(need)}")
        for lineno, row in enumerate(reader, start=2):
            try:
                key = (row["family"], int(row["distance"]), int(row["n_qubits"]))
                sigma = float(row["sigma_f_mhz"])
                yld = float(row["yield"])
            except (TypeError, ValueError) as exc:
                raise InputError(f"{path} row {lineno}: {exc}") from exc
            curves.setdefault(key, []).append((sigma, yld))
    if not curves:
        raise InputError(f"{path}: no data rows")
    return curves


def cmd_fit_window(cfg: dict) -> int:
    paths = [p for p in cfg["sweep_csv"].split(",") if p.strip()]
    if not paths:
        raise UsageError("--sweep-csv is required")
    run = RunDir(cfg)
    fits = []
    for path in paths:
        run.note_input(path)
        for (family, distance, n_qubits), curve in sorted(_read_sweep_csv(path).items()):
            fit = window.fit_window(curve, n_qubits)
            fits.append({"family": family, "distance": distance, "n_qubits": n_qubits,
                         "delta_f_mhz": fit.delta_f_mhz, "residual": fit.rms_residual,
                         "n_points_used": fit.n_points_used})
            print(f"{family:>14} d={distance}: delta_f = {fit.delta_f_mhz:5.2f} MHz "
                  f"(N={n_qubits}, rms {fit.rms_residual:.3f})")
    run.write_json("results.json", {"fits": fits})
    run.write_csv("results.csv",
                  ["family", "distance", "n_qubits", "delta_f_mhz", "residual", "n_points_used"],
                  [[f["family"], f["distance"], f["n_qubits"], f["delta_f_mhz"],
                    f["residual"], f["n_points_used"]] for f in fits])
    sig = np.linspace(1.0, 150.0, 150)
    run.write_text("plot.svg", svgchart.line_chart(
        [(f"{f['family']} d={f['distance']}", sig,
          window.window_yield(f["delta_f_mhz"], sig, f["n_qubits"])) for f in fits],
        title="fitted collision-free windows", x_label="frequency scatter (MHz)",
        y_label="yield"))
    run.finish()
    print(f"written: {run.path}")
    return 0


def cmd_extrapolate(cfg: dict) -> int:
    paths = [p for p in cfg["sweep_csv"].split(",") if p.strip()]
    if not paths:
        raise UsageError("--sweep-csv is required")
    run = RunDir(cfg)
    sizes, widths = [], []
    for path in paths:
        run.note_input(path)
        for (family, distance, n_qubits), curve in sorted(_read_sweep_csv(path).items()):
            fit = window.fit_window(curve, n_qubits)
            sizes.append(n_qubits)
            widths.append(fit.delta_f_mhz)
    trend = window.fit_trend(sizes, widths)
    sigmas = _float_list(cfg["sigmas"]) or EXTRAPOLATE_SIGMAS
    ns = list(range(20, 1001, 5))
    rows = []
    for n in ns:
        df = window.predict_delta_f(trend, n)
        rows.append([n, df, *(window.window_yield(df, s, n) for s in sigmas)])
    run.write_csv("results.csv", ["n_qubits", "delta_f_mhz",
                                  *(f"yield_sigma{s:g}" for s in sigmas)], rows)
    run.write_json("results.json", {
        "trend": {"coeff_a": trend.coeff_a, "coeff_b_ln": trend.coeff_b_ln,
                  "coeff_b_log10": trend.coeff_b_log10, "rms_residual_mhz": trend.rms_residual_mhz,
                  "n_points": trend.n_points},
        "inputs": [{"n_qubits": n, "delta_f_mhz": w} for n, w in zip(sizes, widths)],
        "predictions": {"delta_f_300_mhz": window.predict_delta_f(trend, 300),
                        "delta_f_1000_mhz": window.predict_delta_f(trend, 1000)},
    })
    run.write_text("plot.svg", svgchart.line_chart(
        [(f"sigma {s:g} MHz", ns, [r[2 + i] for r in rows]) for i, s in enumerate(sigmas)],
        title="yield vs lattice size for the fitted window trend",
        x_label="qubits", y_label="yield"))
    run.finish()
    print(f"window trend: delta_f(N) = {trend.coeff_a:.2f} {trend.coeff_b_ln:+.3f} ln N  "
          f"-> delta_f(300) = {window.predict_delta_f(trend, 300):.2f} MHz, "
          f"delta_f(1000) = {window.predict_delta_f(trend, 1000):.2f} MHz")
    print(f"written: {run.path}")
    return 0


def cmd_tune(cfg: dict) -> int:
    fit = physics.PowerLawFit(prefactor=tunesim.default_wafer_fit().prefactor, exponent=-0.5,
                              residual_std_mhz=cfg["residual_std_mhz"], n_points=31,
                              exponent_fixed=True)
    model = tunesim.AnnealResponseModel.default(noise_sigma=cfg["noise_sigma"])
    policy = tunesim.TunePolicy(step_fraction=cfg["step_fraction"],
                                converge_band=cfg["converge_band"],
                                max_anneals=cfg["max_anneals"])
    records = tunesim.generate_population(cfg["junctions"], cfg["median_ohm"],
                                          cfg["fractional_sigma"], cfg["seed"])
    if cfg["target_spread"]:
        try:
            lo, hi = (float(tok) for tok in cfg["target_spread"].split(":"))
        except ValueError as exc:
            raise UsageError("--target-spread wants LO:HI in percent, e.g. 0.4:14.5") from exc
        tunesim.spread_targets(records, lo / 100.0, hi / 100.0)
        group_ids = None
    elif cfg["junctions"] == sum(tunesim.TWO_GROUP_SIZES):
        group_ids = tunesim.two_group_split(records)
    else:
        raise UsageError(f"either --target-spread LO:HI or --junctions "
                         f"{sum(tunesim.TWO_GROUP_SIZES)} (two-group scenario)")
    result = tunesim.run_campaign(records, model=model, policy=policy,
                                  master_seed=cfg["seed"], fit=fit, group_ids=group_ids)
    run = RunDir(cfg)
    run.write_csv("results.csv", ["id", "step", "power", "duration_s", "resistance_ohm", "status"],
                  tunesim.history_rows(result.records))
    run.write_json("results.json", {
        "n_junctions": len(result.records),
        "n_converged": result.n_converged,
        "converged_fraction": result.converged_fraction,
        "sigma_r_ohm": result.sigma_r_ohm,
        "group_median_r_ohm": {str(k): v for k, v in result.group_median_r_ohm.items()},
        "group_median_f_ghz": {str(k): v for k, v in (result.group_median_f_ghz or {}).items()},
        "pooled_sigma_f_mhz": result.pooled_sigma_f_mhz,
        "target_sigma_f_mhz": result.target_sigma_f_mhz,
        "predicted_sigma_f_mhz": result.predicted_sigma_f_mhz,
        "statuses": {s: sum(1 for r in result.records if r.status == s)
                     for s in (tunesim.CONVERGED, tunesim.OVERSHOT, tunesim.EXHAUSTED)},
    })
    shown = result.records[:24]
    run.write_text("plot.svg", svgchart.line_chart(
        [(f"j{rec.junction_id}", list(range(len(rec.steps) + 1)),
          [rec.r_initial_ohm] + [s.r_after_ohm for s in rec.steps]) for rec in shown],
        title="anneal trajectories", x_label="anneal step", y_label="resistance (ohm)"))
    run.finish()
    print(f"converged {result.n_converged}/{len(result.records)} "
          f"({100 * result.converged_fraction:.1f}%)  sigma_R = {result.sigma_r_ohm:.1f} ohm")
    if result.pooled_sigma_f_mhz is not None:
        print(f"pooled sigma_f = {result.pooled_sigma_f_mhz:.2f} MHz about group medians, "
              f"{result.target_sigma_f_mhz:.2f} MHz against targets "
              f"(quadrature prediction {result.predicted_sigma_f_mhz:.2f} MHz)")
    for g, med in sorted(result.group_median_r_ohm.items()):
        line = f"group {g}: median R = {med:.0f} ohm"
        if result.group_median_f_ghz:
            line += f", median f = {result.group_median_f_ghz[g]:.4f} GHz"
        print(line)
    print(f"written: {run.path}")
    return 0


def cmd_fit_rn(cfg: dict) -> int:
    path = cfg["csv_path"]
    if not path:
        raise UsageError("--csv is required")
    run = RunDir(cfg)
    run.note_input(path)
    r, f = physics.load_resistance_frequency_csv(path)
    fix = cfg["fix_exponent"]
    fit = physics.fit_power_law(r, f, fix_exponent=None if np.isnan(fix) else fix)
    run.write_json("results.json", {"prefactor": fit.prefactor, "exponent": fit.exponent,
                                    "residual_std_mhz": fit.residual_std_mhz, "n": fit.n_points})
    grid = np.geomspace(float(r.min()) * 0.98, float(r.max()) * 1.02, 80)
    run.write_text("plot.svg", svgchart.line_chart(
        [("measured", list(r), list(f)),
         ("fit", list(grid), list(physics.predict_frequency_ghz(fit, grid)))],
        title="junction resistance to qubit frequency",
        x_label="resistance (ohm)", y_label="frequency (GHz)"))
    run.finish()
    print(f"f = {fit.prefactor:.3f} * R^{fit.exponent:.4f}  "
          f"(residual {fit.residual_std_mhz:.2f} MHz over {fit.n_points} devices)")
    print(f"written: {run.path}")
    return 0


def cmd_rerun(cfg: dict) -> int:
    path = cfg["manifest"]
    try:
        with open(path) as fh:
            manifest = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read manifest: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"manifest is not valid JSON: {exc}") from exc
    for needed in ("command", "config"):
        if needed not in manifest:
            raise InputError(f"manifest lacks {needed!r}")
    for in_path, digest in manifest.get("inputs_sha256", {}).items():
        if not os.path.exists(in_path):
            raise InputError(f"input file missing: {in_path}")
        if _sha256(in_path) != digest:
            raise InputError(f"input file changed since the original run: {in_path}")
    sub = dict(manifest["config"])
    sub["command"] = manifest["command"]
    sub["out"] = cfg["out"]
    if cfg["name"] != _DEFAULTS["name"]:
        sub["name"] = cfg["name"]
    return _COMMANDS[manifest["command"]](sub)


_COMMANDS = {
    "lattice": cmd_lattice,
    "check": cmd_check,
    "sweep": cmd_sweep,
    "fit-window": cmd_fit_window,
    "extrapolate": cmd_extrapolate,
    "tune": cmd_tune,
    "fit-rn": cmd_fit_rn,
    "rerun": cmd_rerun,
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output root directory (default: out)")
    p.add_argument("--name", help="run name under out/<command>/ (default: default)")
    p.add_argument("--seed", type=int, help="master seed (default: 0, never wall-clock)")
    p.add_argument("--threads", type=int, help="worker threads; never changes results")
    p.add_argument("--config", help="INI file with a [freqcrowd] section")


def _add_lattice_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", help=f"one of: {', '.join(lattice.FAMILIES)}")
    p.add_argument("-d", "--distance", type=int, help="code distance (odd, >= 3)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freqcrowd",
        description="Frequency-crowding statistics for fixed-frequency transmon lattices.")
    parser.add_argument("--version", action="version", version=f"freqcrowd {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("lattice", help="build a lattice; write JSON and DOT")
    _add_lattice_args(p)
    _add_common(p)

    p = subs.add_parser("check", help="count collisions for one frequency assignment")
    _add_lattice_args(p)
    p.add_argument("--spacing-mhz", dest="spacing_mhz", type=float)
    p.add_argument("--base-ghz", dest="base_ghz", type=float)
    p.add_argument("--sigma-mhz", dest="sigma_mhz", type=float,
                   help="add one draw of Gaussian scatter before checking")
    p.add_argument("--anharmonicity-mhz", dest="anharmonicity_mhz", type=float)
    _add_common(p)

    p = subs.add_parser("sweep", help="Monte Carlo yield vs frequency scatter")
    _add_lattice_args(p)
    p.add_argument("--base-ghz", dest="base_ghz", type=float)
    p.add_argument("--sigmas", help="comma-separated scatter grid in MHz")
    p.add_argument("--spacings", help="comma-separated spacing grid in MHz")
    p.add_argument("--trials", type=int, help="fixed trials per point (default: adaptive)")
    p.add_argument("--anharmonicity-mhz", dest="anharmonicity_mhz", type=float)
    p.add_argument("--reproduce-table2", dest="reproduce_table2", action="store_const",
                   const=True, help="summary table over all nine lattices")
    _add_common(p)

    p = subs.add_parser("fit-window", help="fit effective collision-free windows from sweep CSVs")
    p.add_argument("--sweep-csv", dest="sweep_csv", help="comma-separated sweep results.csv paths")
    _add_common(p)

    p = subs.add_parser("extrapolate", help="window-width trend and yield projections vs size")
    p.add_argument("--sweep-csv", dest="sweep_csv", help="comma-separated sweep results.csv paths")
    p.add_argument("--sigmas", help="scatter levels for projected yield columns")
    _add_common(p)

    p = subs.add_parser("tune", help="simulate an adaptive resistance-trimming campaign")
    p.add_argument("--junctions", type=int)
    p.add_argument("--target-spread", dest="target_spread",
                   help="LO:HI percent offsets above initial resistance")
    p.add_argument("--median-ohm", dest="median_ohm", type=float)
    p.add_argument("--fractional-sigma", dest="fractional_sigma", type=float)
    p.add_argument("--noise-sigma", dest="noise_sigma", type=float)
    p.add_argument("--step-fraction", dest="step_fraction", type=float)
    p.add_argument("--converge-band", dest="converge_band", type=float)
    p.add_argument("--max-anneals", dest="max_anneals", type=int)
    p.add_argument("--residual-std", dest="residual_std_mhz", type=float)
    _add_common(p)

    p = subs.add_parser("fit-rn", help="power-law fit of measured resistance/frequency pairs")
    p.add_argument("--csv", dest="csv_path", help="CSV with header resistance_ohm,frequency_ghz")
    p.add_argument("--fix-exponent", dest="fix_exponent", type=float)
    _add_common(p)

    p = subs.add_parser("rerun", help="replay a command from its manifest.json")
    p.add_argument("manifest", help="path to a manifest.json")
    _add_common(p)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command in ("lattice", "check", "sweep") and not cfg.get("reproduce_table2"):
            if not cfg.get("family") or not cfg.get("distance"):
                raise UsageError("--family and --distance are required")
        return _COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FreqcrowdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
