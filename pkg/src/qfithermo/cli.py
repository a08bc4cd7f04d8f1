"""Command-line entry point: config parsing, orchestration, CSV/JSON output.

One JSON config document per run. Output is CSV by default (12 significant
digits, LF line endings) or JSON via --format json, and is byte-identical
across repeated runs and across any --workers setting. Exit codes:
0 success, 2 config or validation failure, 3 numerical truncation guard.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

import numpy as np

from .dicke import fit_log, saturation_check, sweep
from .linalg import ket
from .metrology import LOG2, Generator, entropy_heat_report
from .rabi import RabiConfig, TruncationError, run_c0_sweep, scan_erasure_profile
from .states import DickeFamily, family_distribution, spin_ops

FIT_MIN_N = 8  # sweep sizes below this are transient-dominated and excluded from fits

RABI_FIELDS = ("c0", "fq_over_t2", "heat_avg", "entropy_final_avg",
               "entropy_of_avg", "bound_floor", "erasure_quality")
BOUNDS_FIELDS = ("fq", "entropy_avg_state", "entropy_final",
                 "entropy_floor", "heat_floor", "kbt")
DICKE_FIELDS = ("family", "N", "entropy_nats", "weighted_fq_nats",
                "fq_over_t2", "sql_ratio")
FIT_FIELDS = ("family", "alpha", "beta", "rms_residual")
SAT_FIELDS = ("family", "N_low", "N_high", "entropy_change")
SCAN_FIELDS = ("tau", "quality")
SCAN_BEST_FIELDS = ("tau_star", "quality_star")

# columns rescaled by 1/log(2) under --bits, with their display names
BITS_COLUMNS = {
    "entropy_nats": "entropy_bits",
    "weighted_fq_nats": "weighted_fq_bits",
    "entropy_avg_state": "entropy_avg_state_bits",
    "entropy_final": "entropy_final_bits",
    "entropy_floor": "entropy_floor_bits",
    "entropy_final_avg": "entropy_final_avg_bits",
    "entropy_of_avg": "entropy_of_avg_bits",
    "alpha": "alpha_bits",
    "beta": "beta_bits",
    "rms_residual": "rms_residual_bits",
    "entropy_change": "entropy_change_bits",
}


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _load_config(args.config)
        if args.command == "bounds":
            sections = _cmd_bounds(config, args)
        elif args.command == "rabi":
            sections = _cmd_rabi(config, args)
        elif args.command == "dicke":
            sections = _cmd_dicke(config, args)
        else:
            sections = _cmd_erasure_scan(config, args)
        _emit(sections, args)
    except TruncationError as exc:
        print(f"qfithermo: truncation guard: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"qfithermo: {exc}", file=sys.stderr)
        return 2
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfithermo",
        description="Thermodynamic floors for quantum metrology: QFI, entropies and heat bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("bounds", "entropy and heat floors of one probe state"),
        ("rabi", "qubit-in-a-thermal-mode erasure sweep over c0"),
        ("dicke", "entropy scaling of symmetric multi-qubit families"),
        ("erasure-scan", "scan erasure durations for the best-erasing time"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to the JSON run configuration")
        p.add_argument("--output", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--verify", action="store_true",
                       help="re-derive the row inequalities before writing")
        p.add_argument("--bits", action="store_true",
                       help="display entropies in bits instead of nats")
        p.add_argument("--workers", type=int, default=1,
                       help="thread count for independent sweep points")
    return parser


def _load_config(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        config = json.load(fh)
    if not isinstance(config, dict):
        raise ValueError("config must be a JSON object")
    return config


def _check_keys(obj: dict, allowed: set[str], required: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ValueError(f"unknown {where} keys: {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise ValueError(f"missing {where} keys: {sorted(missing)}")


# ---------------------------------------------------------------- bounds

def _parse_amplitudes(raw) -> np.ndarray:
    if not isinstance(raw, list) or not raw:
        raise ValueError("coefficients must be a nonempty list")
    out = []
    for item in raw:
        if isinstance(item, (int, float)):
            out.append(complex(item))
        elif isinstance(item, list) and len(item) == 2:
            out.append(complex(float(item[0]), float(item[1])))
        else:
            raise ValueError("coefficients entries must be numbers or [re, im] pairs")
    return np.array(out, dtype=complex)


def _cmd_bounds(config: dict, args) -> list:
    _check_keys(config, {"state", "t", "kbt", "entropy_final"}, {"state"}, "config")
    state = config["state"]
    if not isinstance(state, dict):
        raise ValueError("state must be an object")
    if "coefficients" in state:
        _check_keys(state, {"coefficients"}, {"coefficients"}, "state")
        amps = _parse_amplitudes(state["coefficients"])
        n_qubits = amps.size - 1
        if n_qubits < 1:
            raise ValueError("need at least two coefficients")
    else:
        _check_keys(state, {"family", "N", "gamma", "nu"}, {"family", "N"}, "state")
        family = DickeFamily(
            kind=state["family"],
            gamma=float(state.get("gamma", 0.95)),
            nu=float(state.get("nu", 2.0)),
        )
        n_qubits = int(state["N"])
        amps = np.sqrt(family_distribution(family, n_qubits)).astype(complex)

    t = float(config.get("t", 1.0))
    kbt = float(config.get("kbt", 1.0))
    entropy_final = float(config.get("entropy_final", 0.0))
    _, _, jz = spin_ops(n_qubits)
    report = entropy_heat_report(ket(amps), Generator(jz, t), kbt=kbt,
                                 entropy_final=entropy_final)
    row = {field: getattr(report, field) for field in BOUNDS_FIELDS}
    if args.verify:
        _verify_bounds_row(row)
    return [("rows", BOUNDS_FIELDS, [row])]


def _verify_bounds_row(row: dict) -> None:
    if not all(math.isfinite(float(row[f])) for f in BOUNDS_FIELDS):
        raise RuntimeError("bounds row contains a non-finite entry")
    if row["entropy_avg_state"] < row["entropy_floor"] - 1e-10:
        raise RuntimeError("bounds row violates the entropy floor")
    if row["heat_floor"] < 0.0 and row["entropy_final"] <= row["entropy_floor"]:
        raise RuntimeError("negative heat floor without an entropy excess")


# ---------------------------------------------------------------- rabi

_RABI_KEYS = {"omega_qubit", "omega_mode", "coupling", "temperature",
              "nmax", "t_enc", "m_lambda", "tau", "c0"}


def _rabi_config(config: dict, extra_allowed: set[str], required: set[str]) -> RabiConfig:
    _check_keys(config, _RABI_KEYS | extra_allowed, required, "config")
    kwargs = {k: config[k] for k in _RABI_KEYS if k in config}
    for key in ("nmax", "m_lambda"):
        if key in kwargs:
            kwargs[key] = int(kwargs[key])
    for key in set(kwargs) - {"nmax", "m_lambda"}:
        kwargs[key] = float(kwargs[key])
    return RabiConfig(**kwargs)


def _cmd_rabi(config: dict, args) -> list:
    cfg = _rabi_config(config, extra_allowed={"c0_list"}, required={"c0_list", "tau"})
    c0_list = config["c0_list"]
    if not isinstance(c0_list, list) or not c0_list:
        raise ValueError("c0_list must be a nonempty list")
    outcomes = run_c0_sweep(cfg, [float(c) for c in c0_list], workers=args.workers)
    rows = [{field: getattr(o, field) for field in RABI_FIELDS} for o in outcomes]
    if args.verify:
        for row in rows:
            _verify_rabi_row(row, cfg.temperature)
    return [("rows", RABI_FIELDS, rows)]


def _verify_rabi_row(row: dict, kbt: float) -> None:
    c0 = row["c0"]
    if abs(row["fq_over_t2"] - 4.0 * c0 * c0 * (1.0 - c0 * c0)) > 1e-12:
        raise RuntimeError("rabi row QFI does not match its c0")
    if not 0.0 <= row["erasure_quality"] <= 1.0 + 1e-12:
        raise RuntimeError("rabi row erasure quality outside [0, 1]")
    gap = row["heat_avg"] + kbt * row["entropy_of_avg"] - LOG2 * kbt * row["fq_over_t2"]
    if gap < -kbt * row["erasure_quality"] - 1e-9:
        raise RuntimeError("rabi row violates the erasure heat floor")


# ---------------------------------------------------------------- dicke

def _cmd_dicke(config: dict, args) -> list:
    _check_keys(config, {"families", "N_list", "gamma", "nu"}, {"families", "N_list"}, "config")
    kinds = config["families"]
    n_list = [int(n) for n in config["N_list"]]
    if not isinstance(kinds, list) or not kinds:
        raise ValueError("families must be a nonempty list")
    if not n_list:
        raise ValueError("N_list must be nonempty")
    gamma = float(config.get("gamma", 0.95))
    nu = float(config.get("nu", 2.0))

    rows = []
    fits = []
    saturations = []
    for kind in kinds:
        family = DickeFamily(kind=kind, gamma=gamma, nu=nu)
        records = sweep(family, n_list, workers=args.workers)
        rows.extend(
            {field: getattr(r, field) for field in DICKE_FIELDS} for r in records)
        if kind == "ghz_like":
            top = sorted({r.N for r in records})
            if len(top) >= 2:
                change = saturation_check(family, (top[-2], top[-1]))
                saturations.append({"family": kind, "N_low": top[-2],
                                    "N_high": top[-1], "entropy_change": change})
        else:
            fit_records = [r for r in records if r.N >= FIT_MIN_N]
            if len(fit_records) >= 3:
                fit = fit_log(fit_records)
                fits.append({"family": kind, "alpha": fit.alpha, "beta": fit.beta,
                             "rms_residual": fit.rms_residual})
    if args.verify:
        for row in rows:
            if row["entropy_nats"] < row["weighted_fq_nats"] - 1e-12:
                raise RuntimeError("dicke row violates the weighted-QFI entropy floor")
    sections = [("rows", DICKE_FIELDS, rows)]
    if fits:
        sections.append(("fits", FIT_FIELDS, fits))
    if saturations:
        sections.append(("saturation", SAT_FIELDS, saturations))
    return sections


# ---------------------------------------------------------------- erasure scan

def _cmd_erasure_scan(config: dict, args) -> list:
    cfg = _rabi_config(config, extra_allowed={"tau_min", "tau_max", "steps"},
                       required={"tau_min", "tau_max", "steps"})
    taus, qualities = scan_erasure_profile(
        cfg, float(config["tau_min"]), float(config["tau_max"]), int(config["steps"]),
        workers=args.workers)
    if args.verify and (qualities.min() < 0.0 or qualities.max() > 1.0 + 1e-12):
        raise RuntimeError("scan produced a quality outside [0, 1]")
    rows = [{"tau": float(t), "quality": float(q)} for t, q in zip(taus, qualities)]
    # deterministic tie-break to the smallest tau within the scan tolerance
    vmin = float(qualities.min())
    best = next(i for i, q in enumerate(qualities) if q <= vmin + 1e-12)
    star = [{"tau_star": float(taus[best]), "quality_star": float(qualities[best])}]
    return [("rows", SCAN_FIELDS, rows), ("tau_star", SCAN_BEST_FIELDS, star)]


# ---------------------------------------------------------------- emission

def _format_value(value) -> str:
    if isinstance(value, (bool, int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return f"{float(value):.12g}"


def _apply_bits(sections: list, enabled: bool) -> list:
    if not enabled:
        return sections
    converted = []
    for name, fields, rows in sections:
        new_fields = tuple(BITS_COLUMNS.get(f, f) for f in fields)
        new_rows = []
        for row in rows:
            new_row = {}
            for field in fields:
                value = row[field]
                if field in BITS_COLUMNS:
                    value = float(value) / LOG2
                new_row[BITS_COLUMNS.get(field, field)] = value
            new_rows.append(new_row)
        converted.append((name, new_fields, new_rows))
    return converted


def _emit(sections: list, args) -> None:
    sections = _apply_bits(sections, args.bits)
    if args.format == "csv":
        blocks = []
        for _, fields, rows in sections:
            lines = [",".join(fields)]
            lines.extend(",".join(_format_value(row[f]) for f in fields) for row in rows)
            blocks.append("\n".join(lines))
        text = "\n\n".join(blocks) + "\n"
    else:
        payload = {}
        for name, fields, rows in sections:
            payload[name] = [
                {f: _json_value(row[f]) for f in fields} for row in rows
            ]
        text = json.dumps(payload, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_value(value):
    if isinstance(value, (bool, int, np.integer)):
        return int(value)
    if isinstance(value, str):
        return value
    return float(f"{float(value):.12g}")


if __name__ == "__main__":
    sys.exit(main())
