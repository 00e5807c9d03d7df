"""Batch command-line front end.

Subcommands
-----------
free-space   sweep the interatomic separation in free space
half-space   sweep the separation near a half space (U0/U1/U2 breakdown)
limits       print the closed-form limit ratios and sign thresholds
thresholds   print only the sign-change thresholds
validate     run the acceptance validation suite

Configuration is a JSON file (see ``DEFAULT_CONFIG`` for the schema and
defaults); command-line flags override file values.  Sweep points are
dispatched to a process pool and rows are emitted in input order, so the
output is deterministic for a fixed config and tolerance.  Exit codes:
0 success, 1 config error, 2 numerical failure, 3 validation failure.

All quantities are in reduced units hbar = c = eps0 = mu0 = 1; lengths in
units of c/omega10 of atom A, energies in units of hbar*omega10.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .forces import free_space_force, halfspace_forces
from .greens import HalfSpaceMedium, PlanarGeometry
from .materials import LorentzMedium, ResonanceAtom
from .potentials import (
    asymptotic_coefficients,
    perfect_limit_ratio,
    threshold,
    u0_ee,
    u0_em,
    u_total,
)
from .quadrature import QuadSpec

__all__ = ["main", "ConfigError", "load_config", "DEFAULT_CONFIG",
           "run_free_space", "run_half_space"]


class ConfigError(ValueError):
    """Invalid or inconsistent scenario configuration."""


DEFAULT_CONFIG: dict = {
    "atoms": [
        {"omega10": 1.0, "alpha0": 1.0, "kind": "electric"},
        {"omega10": 1.0, "alpha0": 1.0, "kind": "electric"},
    ],
    # medium kinds: free-space | perfect (perfect: conducting|permeable)
    # | dielectric | magnetic | magneto-electric (eps and/or mu blocks).
    # Default: the single-resonance dielectric of the reference scenarios.
    "medium": {"kind": "dielectric", "omegaP": 3.0, "omegaT": 1.0,
               "gamma": 0.001},
    # geometry families: parallel (z) | vertical (z_a) | general
    # (x_a, z_a, x_b, z_b; single point only).
    "geometry": {"family": "parallel", "z": 0.01},
    "sweep": {"variable": "l", "start": 0.001, "stop": 1.0, "points": 20,
              "scale": "log"},
    "output": {"path": None, "format": "csv"},
    "rel_tol": 1e-8,
    "forces": False,
    "workers": 1,
}

FREE_COLUMNS = ("l", "U", "U_retarded_asymptote", "U_nonretarded_asymptote",
                "force", "error")
HALF_COLUMNS = ("l", "U0", "U1", "U2", "U", "ratio", "F_on_A_x", "F_on_A_z",
                "F_on_B_x", "F_on_B_z", "error")

_LIMIT_CASES = {
    "retarded-conducting": ("retarded-vertical-conducting", "40/23"),
    "retarded-permeable": ("retarded-vertical-permeable", "52/23"),
    "nonretarded-parallel-conducting": ("nonretarded-parallel-conducting",
                                        "2/3"),
    "nonretarded-parallel-permeable": ("nonretarded-parallel-permeable",
                                       "10/3"),
}
_THRESHOLD_CASES = {
    "threshold-vertical-conducting": "retarded-conducting-vertical",
    "threshold-vertical-permeable": "nonretarded-permeable-vertical",
}


def _merge(base: dict, override: dict, path: str = "") -> dict:
    out = copy.deepcopy(base)
    for key, val in override.items():
        where = f"{path}.{key}" if path else key
        if key not in base:
            raise ConfigError(f"unknown config field {where!r}")
        if isinstance(base[key], dict):
            if not isinstance(val, dict):
                raise ConfigError(f"field {where!r} must be an object")
            # geometry/medium blocks replace rather than merge: their valid
            # field sets depend on the chosen family/kind.
            if key in ("geometry", "medium"):
                out[key] = copy.deepcopy(val)
            else:
                out[key] = _merge(base[key], val, where)
        else:
            out[key] = copy.deepcopy(val)
    return out


def load_config(path: str | None, overrides: dict | None = None) -> dict:
    """Effective configuration: defaults <- file <- flag overrides."""
    cfg = copy.deepcopy(DEFAULT_CONFIG)
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"config {path!r} is not valid JSON at line {exc.lineno}, "
                f"column {exc.colno}: {exc.msg}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config {path!r} must be a JSON object")
        cfg = _merge(cfg, data)
    for key, val in (overrides or {}).items():
        if val is None:
            continue
        node = cfg
        parts = key.split(".")
        for part in parts[:-1]:
            node = node[part]
        node[parts[-1]] = val
    _validate_config(cfg)
    return cfg


def _require_number(block: dict, field: str, where: str, positive=False):
    if field not in block:
        raise ConfigError(f"missing field {where}.{field}")
    val = block[field]
    if not isinstance(val, (int, float)) or isinstance(val, bool):
        raise ConfigError(f"field {where}.{field} must be a number")
    if positive and val <= 0:
        raise ConfigError(f"field {where}.{field} must be positive")
    return float(val)


def _validate_config(cfg: dict) -> None:
    atoms = cfg["atoms"]
    if not isinstance(atoms, list) or len(atoms) != 2:
        raise ConfigError("field 'atoms' must list exactly two atoms")
    for i, atom in enumerate(atoms):
        _require_number(atom, "omega10", f"atoms[{i}]", positive=True)
        _require_number(atom, "alpha0", f"atoms[{i}]", positive=True)
        if atom.get("kind", "electric") not in ("electric", "magnetic"):
            raise ConfigError(f"atoms[{i}].kind must be 'electric' or "
                              "'magnetic'")
    sweep = cfg["sweep"]
    if sweep["variable"] not in ("l", "z"):
        raise ConfigError("sweep.variable must be 'l' or 'z'")
    _require_number(sweep, "start", "sweep", positive=True)
    _require_number(sweep, "stop", "sweep", positive=True)
    if sweep["stop"] < sweep["start"]:
        raise ConfigError("sweep.stop must be >= sweep.start")
    if not isinstance(sweep["points"], int) or sweep["points"] < 1:
        raise ConfigError("sweep.points must be a positive integer")
    if sweep["scale"] not in ("log", "linear"):
        raise ConfigError("sweep.scale must be 'log' or 'linear'")
    if cfg["output"]["format"] not in ("csv", "json"):
        raise ConfigError("output.format must be 'csv' or 'json'")
    if not isinstance(cfg["workers"], int) or cfg["workers"] < 1:
        raise ConfigError("field 'workers' must be a positive integer")
    _require_number(cfg, "rel_tol", "", positive=True)
    geom = cfg["geometry"]
    family = geom.get("family")
    if family == "parallel":
        _require_number(geom, "z", "geometry", positive=True)
    elif family == "vertical":
        _require_number(geom, "z_a", "geometry", positive=True)
    elif family == "general":
        for f in ("x_a", "z_a", "x_b", "z_b"):
            _require_number(geom, f, "geometry")
        if geom["z_a"] <= 0 or geom["z_b"] <= 0:
            raise ConfigError("geometry z-values must be positive")
        if sweep["points"] != 1:
            raise ConfigError("a 'general' geometry supports only a "
                              "single-point sweep")
    else:
        raise ConfigError("geometry.family must be 'parallel', 'vertical', "
                          "or 'general'")
    if family != "parallel" and sweep["variable"] == "z":
        raise ConfigError("sweep.variable 'z' requires the parallel family")
    _build_medium(cfg["medium"])  # raises on bad medium blocks


def _build_atoms(cfg: dict) -> tuple[ResonanceAtom, ResonanceAtom]:
    return tuple(ResonanceAtom(omega10=a["omega10"], alpha0=a["alpha0"],
                               kind=a.get("kind", "electric"))
                 for a in cfg["atoms"])


def _build_lorentz(block: dict, where: str, kind: str) -> LorentzMedium:
    return LorentzMedium(omegaP=_require_number(block, "omegaP", where),
                         omegaT=_require_number(block, "omegaT", where,
                                                positive=True),
                         gamma=_require_number(block, "gamma", where),
                         kind=kind)


def _build_medium(block: dict) -> HalfSpaceMedium | None:
    kind = block.get("kind")
    try:
        if kind == "free-space":
            return None
        if kind == "perfect":
            return HalfSpaceMedium(perfect=block.get("perfect"))
        if kind == "dielectric":
            return HalfSpaceMedium.dielectric(
                _build_lorentz(block, "medium", "electric"))
        if kind == "magnetic":
            return HalfSpaceMedium.magnetic(
                _build_lorentz(block, "medium", "magnetic"))
        if kind == "magneto-electric":
            eps = mu = None
            if "eps" in block:
                eps = _build_lorentz(block["eps"], "medium.eps", "electric")
            if "mu" in block:
                mu = _build_lorentz(block["mu"], "medium.mu", "magnetic")
            return HalfSpaceMedium(eps=eps, mu=mu)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid medium block: {exc}") from exc
    raise ConfigError("medium.kind must be 'free-space', 'perfect', "
                      "'dielectric', 'magnetic', or 'magneto-electric'")


def _sweep_values(cfg: dict) -> np.ndarray:
    sweep = cfg["sweep"]
    n = sweep["points"]
    if n == 1:
        return np.array([float(sweep["start"])])
    if sweep["scale"] == "log":
        return np.geomspace(sweep["start"], sweep["stop"], n)
    return np.linspace(sweep["start"], sweep["stop"], n)


def _geometry_at(cfg: dict, value: float) -> PlanarGeometry:
    geom = cfg["geometry"]
    family = geom["family"]
    if family == "general":
        return PlanarGeometry(geom["x_a"], geom["z_a"], geom["x_b"],
                              geom["z_b"])
    if cfg["sweep"]["variable"] == "z":
        return PlanarGeometry.parallel(geom.get("l", 1.0), value)
    if family == "parallel":
        return PlanarGeometry.parallel(value, geom["z"])
    return PlanarGeometry.vertical(geom["z_a"], value)


def _free_space_row(args) -> dict:
    cfg, l = args
    atom_a, atom_b = _build_atoms(cfg)
    spec = QuadSpec(rel_tol=cfg["rel_tol"])
    row = dict.fromkeys(FREE_COLUMNS, "")
    row["l"] = l
    try:
        co = asymptotic_coefficients(atom_a, atom_b, spec=spec)
        if atom_b.kind == "magnetic":
            row["U"] = u0_em(l, atom_a, atom_b, spec=spec)
            row["U_retarded_asymptote"] = co.c7_em / l**7
            row["U_nonretarded_asymptote"] = co.c4 / l**4
        else:
            row["U"] = u0_ee(l, atom_a, atom_b, spec=spec)
            row["U_retarded_asymptote"] = -co.c7_ee / l**7
            row["U_nonretarded_asymptote"] = -co.c6 / l**6
        row["force"] = free_space_force(l, atom_a, atom_b, spec=spec)
    except Exception as exc:  # noqa: BLE001 - row-level error marker
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _half_space_row(args) -> dict:
    cfg, value = args
    atom_a, atom_b = _build_atoms(cfg)
    medium = _build_medium(cfg["medium"])
    spec = QuadSpec(rel_tol=cfg["rel_tol"])
    row = dict.fromkeys(HALF_COLUMNS, "")
    row["l"] = value
    try:
        geom = _geometry_at(cfg, value)
        if medium is None:
            raise ConfigError("half-space command requires a non-vacuum "
                              "medium")
        bd = u_total(geom, atom_a, atom_b, medium, spec=spec)
        row.update(U0=bd.u0, U1=bd.u1, U2=bd.u2, U=bd.total, ratio=bd.ratio)
        if cfg["forces"]:
            forces = halfspace_forces(geom, atom_a, atom_b, medium, spec=spec)
            row.update(F_on_A_x=forces.f_a[0], F_on_A_z=forces.f_a[1],
                       F_on_B_x=forces.f_b[0], F_on_B_z=forces.f_b[1])
    except Exception as exc:  # noqa: BLE001 - row-level error marker
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _compute_rows(cfg: dict, worker) -> list[dict]:
    values = _sweep_values(cfg)
    tasks = [(cfg, float(v)) for v in values]
    workers = min(cfg["workers"], len(tasks))
    if workers == 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # Executor.map yields results in submission order, so rows come out
        # in input order regardless of completion order.
        return list(pool.map(worker, tasks))


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12e}"
    return str(value)


def _emit(cfg: dict, command: str, columns, rows) -> None:
    out_cfg = cfg["output"]
    if out_cfg["format"] == "json":
        payload = {
            "tool": f"vdwpair {__version__}",
            "command": command,
            "units": "reduced: hbar = c = eps0 = mu0 = 1; lengths in "
                     "c/omega10, energies in hbar*omega10",
            "rel_tol": cfg["rel_tol"],
            "effective_config": cfg,
            "columns": list(columns),
            "rows": [{c: r[c] for c in columns} for r in rows],
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        buf.write(f"# vdwpair {__version__} {command}\n")
        buf.write("# units: reduced, hbar = c = eps0 = mu0 = 1; "
                  "lengths in c/omega10, energies in hbar*omega10\n")
        buf.write(f"# rel_tol: {cfg['rel_tol']:g}\n")
        buf.write("# effective config: "
                  + json.dumps(cfg, separators=(",", ":")) + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in columns])
        text = buf.getvalue()
    if out_cfg["path"]:
        with open(out_cfg["path"], "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sweep_exit(rows) -> int:
    return 2 if any(r["error"] for r in rows) else 0


def run_free_space(cfg: dict) -> list[dict]:
    """Compute the free-space sweep rows for an effective config."""
    return _compute_rows(cfg, _free_space_row)


def run_half_space(cfg: dict) -> list[dict]:
    """Compute the half-space sweep rows for an effective config."""
    return _compute_rows(cfg, _half_space_row)


def cmd_free_space(args) -> int:
    cfg = load_config(args.config, _flag_overrides(args))
    rows = run_free_space(cfg)
    _emit(cfg, "free-space", FREE_COLUMNS, rows)
    return _sweep_exit(rows)


def cmd_half_space(args) -> int:
    cfg = load_config(args.config, _flag_overrides(args))
    rows = run_half_space(cfg)
    _emit(cfg, "half-space", HALF_COLUMNS, rows)
    return _sweep_exit(rows)


def cmd_limits(args) -> int:
    cases = list(_LIMIT_CASES) + list(_THRESHOLD_CASES)
    if args.case is not None:
        if args.case not in cases:
            print(f"unknown case {args.case!r}; choose from: "
                  + ", ".join(cases), file=sys.stderr)
            return 1
        cases = [args.case]
    print(f"{'case':42s} {'value':>14s}  exact")
    for case in cases:
        if case in _LIMIT_CASES:
            internal, exact = _LIMIT_CASES[case]
            value = perfect_limit_ratio(internal)
        else:
            value, exact = threshold(_THRESHOLD_CASES[case]), "root"
        print(f"{case:42s} {value:14.10f}  {exact}")
    return 0


def cmd_thresholds(_args) -> int:
    print(f"{'case':42s} {'z_B/z_A':>12s}")
    for case, internal in _THRESHOLD_CASES.items():
        print(f"{case:42s} {threshold(internal):12.6f}")
    return 0


def cmd_validate(_args) -> int:
    from .validate import run_all
    results = run_all(verbose=True)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 3 if failed else 0


def _flag_overrides(args) -> dict:
    over = {
        "rel_tol": args.rel_tol,
        "sweep.points": args.points,
        "output.path": args.output,
        "output.format": args.format,
        "workers": args.workers,
    }
    if args.scale is not None:
        over["sweep.scale"] = args.scale
    if getattr(args, "forces", None):
        over["forces"] = True
    return over


def _add_sweep_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="PATH",
                   help="JSON scenario config (defaults are built in)")
    p.add_argument("--rel-tol", dest="rel_tol", type=float, metavar="R",
                   help="relative quadrature tolerance")
    p.add_argument("--points", type=int, metavar="N",
                   help="number of sweep points")
    scale = p.add_mutually_exclusive_group()
    scale.add_argument("--log", dest="scale", action="store_const",
                       const="log", help="logarithmic sweep spacing")
    scale.add_argument("--linear", dest="scale", action="store_const",
                       const="linear", help="linear sweep spacing")
    p.set_defaults(scale=None)
    p.add_argument("--output", metavar="PATH",
                   help="write results to PATH instead of stdout")
    p.add_argument("--format", choices=("csv", "json"),
                   help="output format")
    p.add_argument("--workers", type=int, metavar="N",
                   help="worker processes for sweep points")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vdwpair",
        description="Two-atom van der Waals potentials and forces in free "
                    "space and near a half space (reduced units).")
    parser.add_argument("--version", action="version",
                        version=f"vdwpair {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("free-space",
                       help="sweep the free-space potential and force")
    _add_sweep_flags(p)
    p.set_defaults(func=cmd_free_space)

    p = sub.add_parser("half-space",
                       help="sweep the potential breakdown near a half space")
    _add_sweep_flags(p)
    p.add_argument("--forces", action="store_true",
                   help="also compute per-atom forces (slow)")
    p.set_defaults(func=cmd_half_space)

    p = sub.add_parser("limits",
                       help="closed-form limit ratios and thresholds")
    p.add_argument("case", nargs="?",
                   help="one case name (default: all)")
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("thresholds", help="sign-change thresholds")
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("validate", help="run the acceptance checks")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - numerical failure
        print(f"numerical failure: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
