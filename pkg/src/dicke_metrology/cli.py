"""Sweep front end writing ground-state metrology tables as CSV or JSON.

Six subcommands cover the standard figures: entanglement and QFI sweeps,
a Wigner grid of the radiation mode, homodyne and photon-counting Fisher
information ratios, and the photon-number statistics.  Output is fully
deterministic: identical configuration produces byte-identical files, rows
stay in grid order regardless of --jobs, and floats are printed with 17
significant digits.  Rows that hit the critical window or a non-converged
series are emitted with a status flag instead of being dropped.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .dicke import DickeParams, derive, derived_to_dict, ground_state, reduced_radiation_state
from .errors import DickeMetrologyError, NonConvergedSeries
from .estimation import qfi
from .gaussian import log_negativity, state_to_dict, symplectic_spectrum, wigner_at
from .measurements import (
    HomodyneSetting,
    Target,
    fi_homodyne,
    fi_photon_counting_detail,
    mean_photon_decomposition,
    photon_distribution,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

_DEFAULTS = {
    "omega": 1.0,
    "omega0": 1.0,
    "n_atoms": 100,
    "lambda": None,
    "lambda_min": 0.01,
    "lambda_max": 1.0,
    "points": 100,
    "exclusion": 1e-3,
    "phi": [0.0],
    "target": "radiation",
    "format": "csv",
    "out": None,
    "jobs": 1,
}

_COLUMNS = {
    "entanglement": ("lambda", "E_N", "d_tilde_minus"),
    "qfi": ("lambda", "H", "quadratic_term", "displacement_term"),
    "fi-homodyne": ("lambda", "phi", "FI", "H", "ratio"),
    "photon": ("lambda", "n_s", "thermal", "coherent", "total"),
    "fi-photon": ("lambda", "FI", "H", "ratio", "n_max"),
    "wigner": ("x", "p", "W"),
}


class ConfigError(Exception):
    pass


def _params(cfg: dict, lam: float) -> DickeParams:
    return DickeParams(lam=lam, omega=cfg["omega"], omega0=cfg["omega0"], n_atoms=cfg["n_atoms"])


def _rows_entanglement(lam: float, cfg: dict) -> list[list]:
    st = ground_state(_params(cfg, lam))
    spec = symplectic_spectrum(st.cov)
    return [[lam, log_negativity(st.cov), spec.ppt_d_minus]]


def _rows_qfi(lam: float, cfg: dict) -> list[list]:
    res = qfi(_params(cfg, lam))
    return [[lam, res.qfi, res.quadratic_term, res.displacement_term]]


def _rows_fi_homodyne(lam: float, cfg: dict) -> list[list]:
    p = _params(cfg, lam)
    h = qfi(p).qfi
    target = Target(cfg["target"])
    rows = []
    for phi in cfg["phi"]:
        fi = fi_homodyne(p, HomodyneSetting(phi=phi, target=target))
        rows.append([lam, phi, fi, h, fi / h])
    return rows


def _rows_photon(lam: float, cfg: dict) -> list[list]:
    d = mean_photon_decomposition(reduced_radiation_state(_params(cfg, lam)))
    return [[lam, d.n_s, d.thermal, d.coherent, d.total]]


def _rows_fi_photon(lam: float, cfg: dict) -> list[list]:
    p = _params(cfg, lam)
    fi, n_max = fi_photon_counting_detail(p)
    h = qfi(p).qfi
    return [[lam, fi, h, fi / h, n_max]]


_ROW_BUILDERS = {
    "entanglement": _rows_entanglement,
    "qfi": _rows_qfi,
    "fi-homodyne": _rows_fi_homodyne,
    "photon": _rows_photon,
    "fi-photon": _rows_fi_photon,
}


def _compute_point(task: tuple[str, float, dict]) -> list[list]:
    """One grid point -> finished rows with status; exceptions become flags."""
    command, lam, cfg = task
    width = len(_COLUMNS[command])
    try:
        return [row + ["ok"] for row in _ROW_BUILDERS[command](lam, cfg)]
    except NonConvergedSeries:
        status = "nonconverged"
    except (DickeMetrologyError, ValueError, np.linalg.LinAlgError):
        status = "singular"
    pad = [math.nan] * (width - 1)
    if command == "fi-homodyne":
        return [[lam, phi] + pad[1:] + [status] for phi in cfg["phi"]]
    return [[lam] + pad + [status]]


def _lambda_grid(cfg: dict) -> list[float]:
    if cfg["lambda"] is not None:
        return [float(cfg["lambda"])]
    if cfg["points"] < 2:
        raise ConfigError("points must be >= 2 for a sweep")
    if not cfg["lambda_min"] < cfg["lambda_max"]:
        raise ConfigError("lambda-min must be below lambda-max")
    lam_c = math.sqrt(cfg["omega"] * cfg["omega0"]) / 2.0
    grid = np.linspace(cfg["lambda_min"], cfg["lambda_max"], cfg["points"])
    kept = [float(x) for x in grid if abs(x - lam_c) >= cfg["exclusion"]]
    if not kept:
        raise ConfigError("exclusion window removed every grid point")
    return kept


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.17g}"


def _render_csv(columns: tuple[str, ...], rows: list[list]) -> str:
    lines = [",".join(columns + ("status",))]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _json_cell(value):
    if isinstance(value, float) and math.isnan(value):
        return None
    if isinstance(value, np.integer):
        return int(value)
    return value


def _render_json(columns: tuple[str, ...], rows: list[list], extra: dict | None = None) -> str:
    doc = {"columns": list(columns) + ["status"], "rows": [[_json_cell(v) for v in row] for row in rows]}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2) + "\n"


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="ascii", newline="") as fh:
            fh.write(text)


def _pn_out_path(out: str | None) -> str | None:
    if out is None:
        return None
    root, dot, ext = out.rpartition(".")
    return f"{root}_pn{dot}{ext}" if dot else f"{out}_pn"


def _load_config(args: argparse.Namespace) -> dict:
    cfg = dict(_DEFAULTS)
    if args.config is not None:
        try:
            with open(args.config, encoding="utf-8") as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        unknown = set(loaded) - set(_DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(loaded)
    overrides = {
        "omega": args.omega,
        "omega0": args.omega0,
        "n_atoms": args.n_atoms,
        "lambda": args.lam,
        "lambda_min": args.lambda_min,
        "lambda_max": args.lambda_max,
        "points": args.points,
        "exclusion": args.exclusion,
        "format": args.format,
        "out": args.out,
        "jobs": args.jobs,
        "target": args.target,
    }
    cfg.update({k: v for k, v in overrides.items() if v is not None})
    if args.phi is not None:
        try:
            cfg["phi"] = [float(tok) for tok in args.phi.split(",") if tok.strip()]
        except ValueError as exc:
            raise ConfigError(f"bad --phi list: {args.phi!r}") from exc
        if not cfg["phi"]:
            raise ConfigError("empty --phi list")
    if cfg["format"] not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {cfg['format']!r}")
    if cfg["target"] not in ("radiation", "atoms"):
        raise ConfigError(f"target must be radiation or atoms, got {cfg['target']!r}")
    if cfg["jobs"] < 1:
        raise ConfigError("jobs must be >= 1")
    if cfg["exclusion"] < 0:
        raise ConfigError("exclusion must be nonnegative")
    return cfg


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dicke-metrology",
        description="Ground-state metrology sweeps across the superradiant transition.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("entanglement", "log-negativity between radiation and atoms over a coupling grid"),
        ("qfi", "quantum Fisher information and its two contributions"),
        ("wigner", "Wigner function of the reduced radiation mode on an x/p grid"),
        ("fi-homodyne", "homodyne Fisher information and its ratio to the QFI"),
        ("photon", "mean-photon decomposition; with --lambda also the p(n) table"),
        ("fi-photon", "photon-counting Fisher information and its ratio to the QFI"),
    ):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--config", help="JSON file with the keys the flags below override")
        sp.add_argument("--omega", type=float, help="radiation frequency")
        sp.add_argument("--omega0", type=float, help="atomic level splitting")
        sp.add_argument("--n-atoms", type=int, help="atom number N")
        sp.add_argument("--lambda", dest="lam", type=float, help="single coupling instead of a grid")
        sp.add_argument("--lambda-min", type=float)
        sp.add_argument("--lambda-max", type=float)
        sp.add_argument("--points", type=int, help="grid points (per axis for wigner)")
        sp.add_argument("--exclusion", type=float, help="half-width of the skipped window at lambda_c")
        sp.add_argument("--phi", help="comma-separated quadrature angles (fi-homodyne)")
        sp.add_argument("--target", choices=("radiation", "atoms"), help="homodyne subsystem")
        sp.add_argument("--format", choices=("csv", "json"))
        sp.add_argument("--out", help="output path (default stdout)")
        sp.add_argument("--jobs", type=int, help="parallel workers over grid points")
    return parser


def _run_wigner(cfg: dict) -> int:
    if cfg["lambda"] is None:
        raise ConfigError("wigner needs --lambda")
    points = cfg["points"] if cfg["points"] else 41
    params = _params(cfg, float(cfg["lambda"]))
    state = reduced_radiation_state(params)
    sx, sp = math.sqrt(state.cov[0, 0]), math.sqrt(state.cov[1, 1])
    xs = np.linspace(state.mean[0] - 6 * sx, state.mean[0] + 6 * sx, points)
    ps = np.linspace(state.mean[1] - 6 * sp, state.mean[1] + 6 * sp, points)
    rows = [[float(x), float(p), wigner_at(state, np.array([x, p])), "ok"] for x in xs for p in ps]
    if cfg["format"] == "csv":
        text = _render_csv(_COLUMNS["wigner"], rows)
    else:
        extra = {
            "derived": derived_to_dict(derive(params)),
            "state": state_to_dict(state),
        }
        text = _render_json(_COLUMNS["wigner"], rows, extra)
    _write(text, cfg["out"])
    return EXIT_OK


def _run_photon_pn(cfg: dict, lam: float) -> int:
    try:
        dist = photon_distribution(reduced_radiation_state(_params(cfg, lam)))
        rows = [[int(n), float(p), "ok"] for n, p in enumerate(dist.probs)]
        code = EXIT_OK
    except NonConvergedSeries:
        rows = [[0, math.nan, "nonconverged"]]
        code = EXIT_NUMERICAL
    except (DickeMetrologyError, ValueError):
        rows = [[0, math.nan, "singular"]]
        code = EXIT_NUMERICAL
    columns = ("n", "p")
    text = _render_csv(columns, rows) if cfg["format"] == "csv" else _render_json(columns, rows)
    _write(text, _pn_out_path(cfg["out"]))
    return code


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
        if args.command == "wigner":
            return _run_wigner(cfg)
        grid = _lambda_grid(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DickeMetrologyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    tasks = [(args.command, lam, cfg) for lam in grid]
    if cfg["jobs"] > 1:
        with ProcessPoolExecutor(max_workers=cfg["jobs"]) as pool:
            chunks = list(pool.map(_compute_point, tasks))
    else:
        chunks = [_compute_point(t) for t in tasks]
    rows = [row for chunk in chunks for row in chunk]
    columns = _COLUMNS[args.command]
    text = _render_csv(columns, rows) if cfg["format"] == "csv" else _render_json(columns, rows)
    _write(text, cfg["out"])
    code = EXIT_OK if all(row[-1] == "ok" for row in rows) else EXIT_NUMERICAL
    if args.command == "photon" and cfg["lambda"] is not None:
        pn_code = _run_photon_pn(cfg, float(cfg["lambda"]))
        code = max(code, pn_code)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
