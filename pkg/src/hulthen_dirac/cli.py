"""``hd`` command line: tables, single energies, wave functions, sweeps, comparisons.

Output is CSV by default or JSON lines with ``--format json``. Energies carry
7 significant digits. Exit codes: 0 success, 2 invalid configuration,
3 no bound state, 4 oracle failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .errors import (
    DomainError,
    IntegrationError,
    InvalidStateError,
    NoEigenvalueError,
    NotBoundStateError,
)
from .model import (
    Branch,
    ModelParams,
    QuantumState,
    Scheme,
    SchemeConfig,
    Symmetry,
    spectroscopic_label,
)
from .oracle import Mode, build_ode, shoot_eigenvalue
from .spectra import Convention, EnergySolution, energy
from .spinor import first_order_residual, ode_residual, quadrature_change, radial_grid, spinor
from .tables import PRESETS, table_entries

EXIT_OK, EXIT_CONFIG, EXIT_UNBOUND, EXIT_ORACLE = 0, 2, 3, 4

ENERGY_COLUMNS = [
    "state_label",
    "n",
    "kappa",
    "l_or_ltilde",
    "delta",
    "scheme",
    "branch",
    "energy_fm_inv",
    "valid",
    "counting_number",
]

# preset parameter sets usable with --preset
PARAMETER_PRESETS = {
    key: {
        "symmetry": p.symmetry.value,
        "mass": p.mass,
        "strength": p.strength,
        "constant": p.constant,
    }
    for key, p in PRESETS.items()
}
DEFAULTS = {"scheme": "r2", "d0": 1.0 / 12.0, "convention": "signed"}
PARAM_KEYS = ("symmetry", "scheme", "n", "kappa", "mass", "delta", "strength", "constant", "d0", "convention")


class ConfigError(ValueError):
    """Invalid or incomplete command line configuration."""


def fmt(x) -> str:
    """Seven significant digits, empty for missing values."""
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.7g}"
    return str(x)


def _json_value(x):
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return None
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(f"{float(x):.7g}")
    return str(x)


class Writer:
    """Row sink for CSV or JSON lines with ``#`` header comments in CSV."""

    def __init__(self, stream, fmt_name: str, columns: list[str]):
        self.stream = stream
        self.json = fmt_name == "json"
        self.columns = columns
        self._csv = None if self.json else csv.writer(stream, lineterminator="\n")
        self._started = False

    def comment(self, key: str, value) -> None:
        if self.json:
            self.stream.write(json.dumps({"meta": key, "value": _json_value(value)}) + "\n")
        else:
            self.stream.write(f"# {key}={fmt(value)}\n")

    def row(self, values: dict) -> None:
        if self.json:
            self.stream.write(json.dumps({c: _json_value(values.get(c)) for c in self.columns}) + "\n")
            return
        if not self._started:
            self._csv.writerow(self.columns)
            self._started = True
        self._csv.writerow([fmt(values.get(c)) for c in self.columns])


# ---------------------------------------------------------------------------
# configuration


def read_config_file(path: str) -> dict:
    """Parse ``key=value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in PARAM_KEYS and key not in ("state", "preset"):
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value
    return out


@dataclass(frozen=True)
class RunConfig:
    """Resolved inputs of a command."""

    command: str
    params: ModelParams
    states: tuple
    scheme: SchemeConfig
    convention: Convention
    output_format: str
    output: str | None


def _scheme_config(name: str, d0: float) -> SchemeConfig:
    scheme = Scheme(name)
    if scheme is Scheme.CONVENTIONAL_R2:
        return SchemeConfig.conventional()
    if scheme is Scheme.PROPER_R1:
        return SchemeConfig.proper()
    return SchemeConfig(Scheme.IMPROVED_R2, d0)


def parse_state(text: str) -> QuantumState:
    """``"n:kappa"`` or ``"n,kappa"``."""
    for sep in (":", ","):
        if sep in text:
            a, b = text.split(sep, 1)
            try:
                return QuantumState(int(a), int(b))
            except ValueError as exc:
                raise ConfigError(f"bad state {text!r}: {exc}") from exc
    raise ConfigError(f"bad state {text!r}: expected n:kappa")


def resolve(args: argparse.Namespace, need_state: bool = True) -> RunConfig:
    """Merge flags over config file over preset over defaults."""
    merged: dict = dict(DEFAULTS)
    file_values = read_config_file(args.config) if getattr(args, "config", None) else {}
    preset = getattr(args, "preset", None) or file_values.get("preset")
    if preset:
        if preset not in PARAMETER_PRESETS:
            raise ConfigError(f"unknown preset {preset!r}")
        merged.update(PARAMETER_PRESETS[preset])
    merged.update(file_values)
    for key in PARAM_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    try:
        symmetry = Symmetry(merged["symmetry"]) if "symmetry" in merged else None
        if symmetry is None:
            raise ConfigError("--symmetry is required (or use --preset)")
        for key in ("mass", "delta", "strength"):
            if key not in merged:
                raise ConfigError(f"--{key} is required")
        params = ModelParams(
            mass=float(merged["mass"]),
            screening=float(merged["delta"]),
            strength=float(merged["strength"]),
            symmetry_constant=float(merged.get("constant", 0.0)),
            symmetry=symmetry,
        )
        scheme = _scheme_config(str(merged["scheme"]), float(merged["d0"]))
        convention = Convention(merged["convention"])
    except (ValueError, DomainError) as exc:
        raise ConfigError(str(exc)) from exc

    states: list = []
    for text in getattr(args, "state", None) or []:
        states.append(parse_state(text))
    if not states and "state" in file_values:
        states = [parse_state(s) for s in file_values["state"].split()]
    if not states and ("n" in merged or "kappa" in merged):
        if "n" not in merged or "kappa" not in merged:
            raise ConfigError("both --n and --kappa are needed")
        try:
            states = [QuantumState(int(merged["n"]), int(merged["kappa"]))]
        except (ValueError, InvalidStateError) as exc:
            raise ConfigError(str(exc)) from exc
    if need_state and not states:
        raise ConfigError("no state given: use --n/--kappa or --state n:kappa")
    return RunConfig(args.command, params, tuple(states), scheme, convention, args.format, getattr(args, "output", None))


# ---------------------------------------------------------------------------
# rows


def _orbital(state: QuantumState, symmetry: Symmetry) -> int:
    return state.l if symmetry is Symmetry.SPIN else state.ltilde


def energy_rows(sol: EnergySolution, params: ModelParams, scheme: SchemeConfig) -> list[dict]:
    """Two rows per solution, one per branch, with the selected one marked."""
    rows = []
    for branch in (Branch.PLUS, Branch.MINUS):
        rows.append(
            {
                "state_label": spectroscopic_label(sol.state),
                "n": sol.state.n,
                "kappa": sol.state.kappa,
                "l_or_ltilde": _orbital(sol.state, params.symmetry),
                "delta": params.delta,
                "scheme": scheme.scheme.value,
                "branch": branch.value,
                "energy_fm_inv": sol.value(branch),
                "valid": sol.is_valid(branch),
                "counting_number": sol.counting_number,
                "real": sol.value(branch) is not None,
                "selected": sol.selected is branch,
                "convention": sol.convention.value,
                "symmetry": params.symmetry.value,
            }
        )
    return rows


# ---------------------------------------------------------------------------
# commands


def cmd_table(args, out) -> int:
    preset = PRESETS[args.preset_key]
    columns = ENERGY_COLUMNS + ["table", "column", "convention", "published", "abs_diff", "within_tolerance"]
    has_reference = any(row.reference is not None for row in preset.rows)
    if has_reference:
        columns.append("reference")
    w = Writer(out, args.format, columns)
    w.comment("table", preset.key)
    w.comment("title", preset.title)
    w.comment("mass", preset.mass)
    w.comment("strength", preset.strength)
    w.comment("constant", preset.constant)
    w.comment("tolerance", preset.tolerance)
    for e in table_entries(preset.key):
        branch = e.solution.selected
        record = {
            "state_label": e.row.label(preset.symmetry),
            "n": e.state.n,
            "kappa": e.state.kappa,
            "l_or_ltilde": e.row.orbital,
            "delta": e.delta,
            "scheme": preset.columns[e.column].scheme.scheme.value,
            "branch": branch.value if branch else None,
            "energy_fm_inv": e.computed,
            "valid": e.solution.valid,
            "counting_number": e.solution.counting_number,
            "table": preset.key,
            "column": e.column,
            "convention": e.convention.value,
            "published": e.published,
            "abs_diff": e.abs_diff,
            "within_tolerance": e.abs_diff <= preset.tolerance,
        }
        if has_reference:
            ref = e.row.reference
            record["reference"] = ref[preset.deltas.index(e.delta)] if ref is not None else None
        w.row(record)
    return EXIT_OK


def cmd_energy(args, out) -> int:
    cfg = resolve(args)
    w = Writer(out, cfg.output_format, ENERGY_COLUMNS + ["selected", "real", "convention"])
    status = EXIT_OK
    for state in cfg.states:
        sol = energy(cfg.params, state, cfg.scheme, cfg.convention)
        for row in energy_rows(sol, cfg.params, cfg.scheme):
            w.row(row)
        if sol.selected is None:
            status = EXIT_UNBOUND
    return status


def cmd_wavefunction(args, out) -> int:
    cfg = resolve(args)
    state = cfg.states[0]
    grid = None
    if args.step is not None or args.r_max is not None:
        grid = radial_grid(cfg.params.delta, None, args.step, args.r_max)
        if args.r_max is None:
            raise ConfigError("--step needs --r-max")
    sol = spinor(cfg.params, state, cfg.scheme, grid=grid, convention=cfg.convention)
    first = first_order_residual(sol, cfg.params)
    second = ode_residual(sol, cfg.params)
    w = Writer(out, cfg.output_format, ["r_fm", "F", "G"])
    w.comment("state", spectroscopic_label(state))
    w.comment("n", state.n)
    w.comment("kappa", state.kappa)
    w.comment("symmetry", cfg.params.symmetry.value)
    w.comment("scheme", cfg.scheme.scheme.value)
    w.comment("energy_fm_inv", sol.energy)
    w.comment("norm_constant", sol.norm_constant)
    w.comment("node_count", sol.nodes)
    w.comment("grid_points", len(sol.grid))
    w.comment("grid_step", sol.grid.step)
    w.comment("first_order_residual_max", first.max_relative)
    w.comment("second_order_residual_max", second.max_relative)
    w.comment("quadrature_change", quadrature_change(sol))
    stride = max(1, math.ceil(len(sol.grid) / args.max_rows)) if args.max_rows else 1
    w.comment("stride", stride)
    r = sol.grid.points
    for i in range(0, len(r), stride):
        w.row({"r_fm": r[i], "F": sol.F[i], "G": sol.G[i]})
    return EXIT_OK


_AXIS_FIELD = {"delta": "screening", "mass": "mass", "constant": "symmetry_constant"}


def _sweep_unit(task):
    """Energies of all states at one axis value; pure, so it can run in a worker."""
    params, axis, value, states, scheme, convention = task
    p = params.replace(**{_AXIS_FIELD[axis]: value})
    rows = []
    for state in states:
        try:
            sol = energy(p, state, scheme, convention)
        except (InvalidStateError, DomainError) as exc:
            rows.append({"axis": axis, "axis_value": value, "state_label": spectroscopic_label(state),
                         "n": state.n, "kappa": state.kappa, "error": str(exc)})
            continue
        for row in energy_rows(sol, p, scheme):
            row.update(axis=axis, axis_value=value)
            rows.append(row)
    return rows


def sweep_values(start: float, stop: float, steps: int) -> np.ndarray:
    if steps < 1:
        raise ConfigError("--steps must be at least 1")
    if steps == 1:
        if start != stop:
            raise ConfigError("a single step needs --from equal to --to")
        return np.array([start])
    return np.linspace(start, stop, steps)


def cmd_sweep(args, out) -> int:
    if getattr(args, args.axis, None) is None:
        # the swept quantity needs no separate flag
        setattr(args, args.axis, args.start)
    cfg = resolve(args)
    values = sweep_values(args.start, args.stop, args.steps)
    if args.axis == "delta" and np.any(values <= 0):
        raise ConfigError("delta must stay positive over the sweep")
    if args.axis == "mass" and np.any(values <= 0):
        raise ConfigError("mass must stay positive over the sweep")
    tasks = [(cfg.params, args.axis, float(v), cfg.states, cfg.scheme, cfg.convention) for v in values]
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            chunks = list(pool.map(_sweep_unit, tasks))  # map keeps input order
    else:
        chunks = [_sweep_unit(t) for t in tasks]
    columns = ["axis", "axis_value"] + ENERGY_COLUMNS + ["selected", "real", "convention", "error"]
    w = Writer(out, cfg.output_format, columns)
    for chunk in chunks:
        for row in chunk:
            w.row(row)
    return EXIT_OK


def _oracle(params, state, mode, centre: float, width: float):
    spec = build_ode(params, state, mode)
    return shoot_eigenvalue(spec, state.n, (centre - width, centre + width)).energy


def cmd_compare(args, out) -> int:
    cfg = resolve(args)
    state = cfg.states[0]
    schemes = [_scheme_config(s, cfg.scheme.d0) for s in (args.schemes or ["r2", "r1"])]
    columns = ["state_label", "n", "kappa", "delta", "scheme", "branch", "closed_form", "valid",
               "oracle_scheme", "oracle_defect", "oracle_exact", "orbital_error", "note"]
    w = Writer(out, cfg.output_format, columns)
    closed = []
    failures = 0
    for sc in schemes:
        row = {"state_label": spectroscopic_label(state), "n": state.n, "kappa": state.kappa,
               "delta": cfg.params.delta, "scheme": sc.scheme.value}
        try:
            sol = energy(cfg.params, state, sc, cfg.convention)
        except InvalidStateError as exc:
            row["note"] = str(exc)
            w.row(row)
            continue
        e = sol.energy
        row.update(branch=sol.selected.value if sol.selected else None, closed_form=e, valid=sol.valid)
        if e is None:
            row["note"] = "no real root"
            w.row(row)
            continue
        closed.append(e)
        notes = []
        try:
            approx = _oracle(cfg.params, state, sc, e, args.window)
            row.update(oracle_scheme=approx, oracle_defect=approx - e)
        except (NoEigenvalueError, IntegrationError) as exc:
            notes.append(f"scheme oracle: {exc}")
            failures += 1
        try:
            potential = None if sc.scheme is not Scheme.PROPER_R1 else "proper"
            spec = build_ode(cfg.params, state, Mode.EXACT, potential=potential)
            exact = shoot_eigenvalue(spec, state.n, (e - args.exact_window, e + args.exact_window)).energy
            row.update(oracle_exact=exact, orbital_error=e - exact)
        except (NoEigenvalueError, IntegrationError) as exc:
            notes.append(f"exact oracle: {exc}")
        row["note"] = "; ".join(notes)
        w.row(row)
    if len(closed) > 1:
        w.comment("closed_form_spread", max(closed) - min(closed))
    if failures and failures == len(closed):
        print("hd: oracle failed for every scheme, see the note column", file=sys.stderr)
        return EXIT_ORACLE
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_params(p: argparse.ArgumentParser, state: bool = True) -> None:
    g = p.add_argument_group("model")
    g.add_argument("--config", help="key=value file (flags override it)")
    g.add_argument("--preset", choices=sorted(PARAMETER_PRESETS), help="parameter set of a stored table")
    g.add_argument("--symmetry", choices=[s.value for s in Symmetry])
    g.add_argument("--scheme", choices=[s.value for s in Scheme])
    g.add_argument("--mass", type=float, help="fm^-1")
    g.add_argument("--delta", type=float, help="screening parameter, fm^-1")
    g.add_argument("--strength", type=float, help="potential strength, fm^-1")
    g.add_argument("--constant", type=float, help="symmetry constant, fm^-1")
    g.add_argument("--d0", type=float, help="shift of the improved r^-2 scheme")
    g.add_argument("--convention", choices=[c.value for c in Convention])
    if state:
        g.add_argument("--n", type=int)
        g.add_argument("--kappa", type=int)
        g.add_argument("--state", action="append", metavar="N:KAPPA", help="repeatable")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hd", description="Dirac-Hulthen bound states: spectra, spinors, checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--format", choices=["csv", "json"], default="csv")
    parser.add_argument("--output", "-o", help="write to a file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="recompute a stored table")
    t.add_argument("preset_key", choices=sorted(PRESETS), metavar="{" + ",".join(sorted(PRESETS)) + "}")
    t.set_defaults(func=cmd_table)

    e = sub.add_parser("energy", help="closed-form energies of one or more states")
    _add_params(e)
    e.set_defaults(func=cmd_energy)

    wf = sub.add_parser("wavefunction", help="normalized radial components on a grid")
    _add_params(wf)
    wf.add_argument("--step", type=float, help="grid step (fm); default refines automatically")
    wf.add_argument("--r-max", type=float, help="outer radius (fm)")
    wf.add_argument("--max-rows", type=int, default=2000, help="thin output to at most this many rows (0 = all)")
    wf.set_defaults(func=cmd_wavefunction)

    sw = sub.add_parser("sweep", help="energies over a parameter range")
    _add_params(sw)
    sw.add_argument("--axis", choices=sorted(_AXIS_FIELD), required=True)
    sw.add_argument("--from", dest="start", type=float, required=True)
    sw.add_argument("--to", dest="stop", type=float, required=True)
    sw.add_argument("--steps", type=int, required=True)
    sw.add_argument("--jobs", type=int, default=1, help="worker processes")
    sw.set_defaults(func=cmd_sweep)

    c = sub.add_parser("compare", help="closed forms against shooting solutions")
    _add_params(c)
    c.add_argument("--schemes", nargs="+", choices=[s.value for s in Scheme])
    c.add_argument("--window", type=float, default=0.01, help="half-width of the scheme oracle bracket")
    c.add_argument("--exact-window", type=float, default=1.0, help="half-width of the exact-orbital bracket")
    c.set_defaults(func=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    buffer = io.StringIO()
    try:
        code = args.func(args, buffer)
    except (ConfigError, DomainError, InvalidStateError) as exc:
        print(f"hd: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NotBoundStateError as exc:
        print(f"hd: no bound state: {exc}", file=sys.stderr)
        return EXIT_UNBOUND
    except (NoEigenvalueError, IntegrationError) as exc:
        print(f"hd: oracle failed: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    text = buffer.getvalue()
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
