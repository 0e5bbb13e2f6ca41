"""Command-line front end.

Every run is described entirely by its command line. Frequency and
parameter ranges use ``start:stop:count``, with a ``log:`` prefix for
geometric spacing. Exit codes: 0 success, 2 usage, 3 domain, 4 singularity,
5 I/O, 6 internal consistency.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np

from . import __version__
from . import cavity as cav_mod
from . import conformal_algebra, gravity, measurement, mirror_dynamics, spectra, worldline
from .errors import ConsistencyError, DomainError, InvalidInputError, SingularityError, VacuumError
from .units import Units, get_units

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_SINGULARITY = 4
EXIT_IO = 5
EXIT_CONSISTENCY = 6

SUBCOMMANDS = ("spectrum", "trajectory", "algebra", "mirror", "cavity", "measure", "gravity")
DEFAULT_FORMAT = {"algebra": "json", "cavity": "json"}


class UsageError(Exception):
    def __init__(self, message: str, usage: str = ""):
        super().__init__(message)
        self.usage = usage


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, self.format_usage())


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    params: dict
    units: str = "si"
    output: str = "csv"
    path: str = "-"


@dataclass
class SweepResult:
    columns: list
    rows: list
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.columns)
        for row in self.rows:
            if len(row) != n:
                raise ValueError(f"row has {len(row)} entries, expected {n}")

    def __eq__(self, other):
        return (
            isinstance(other, SweepResult)
            and self.columns == other.columns
            and self.rows == other.rows
            and self.meta == other.meta
        )


def parse_range(text: str) -> spectra.FrequencyGrid:
    """``start:stop:count`` or ``log:start:stop:count``."""
    parts = text.split(":")
    log = parts[0] == "log"
    if log:
        parts = parts[1:]
    if len(parts) == 1:
        return spectra.FrequencyGrid(np.array([float(parts[0])]))
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"range {text!r} is not start:stop:count")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"range {text!r}: {exc}") from None
    if count < 1:
        raise argparse.ArgumentTypeError("range count must be at least 1")
    try:
        if log:
            return spectra.FrequencyGrid.logarithmic(start, stop, count)
        return spectra.FrequencyGrid.linear(start, stop, count)
    except InvalidInputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _vector(text: str) -> tuple:
    try:
        vals = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated vector") from None
    return vals


def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--units", choices=("natural", "si"), default=None)
    common.add_argument("--format", dest="output", choices=("csv", "json"), default=None)
    common.add_argument("--output", "-o", dest="path", default="-", help="file path, '-' for stdout")

    p = _Parser(prog="vacmotion", description="Vacuum fluctuations and motion toolkit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="subcommand", parser_class=_Parser)

    s = sub.add_parser("spectrum", parents=[common], help="vacuum and thermal force spectra")
    s.add_argument("--kind", required=True, choices=("force-perfect", "momentum-density", "force-thermal"))
    s.add_argument("--omega", required=True, type=parse_range)
    s.add_argument("--temperature", type=float, default=0.0, help="for force-thermal (K in SI)")

    t = sub.add_parser("trajectory", parents=[common], help="sample a worldline and its Abraham vector")
    t.add_argument("--kind", required=True, choices=("rest", "uniform", "hyperbolic", "sinusoid", "conformal-rest"))
    t.add_argument("--lam", required=True, type=parse_range, help="parameter values")
    t.add_argument("--accel", type=float, default=1.0)
    t.add_argument("--velocity", type=float, default=0.5)
    t.add_argument("--amp", type=float, default=1e-3)
    t.add_argument("--freq", type=float, default=1.0)
    t.add_argument("--a", dest="avec", type=_vector, default=(0.0, 0.5, 0.0, 0.0),
                   help="conformal acceleration four-vector a0,a1,a2,a3")
    t.add_argument("--abraham", action="store_true", help="add Abraham vector and reaction force columns")

    a = sub.add_parser("algebra", parents=[common], help="verify conformal algebra brackets")
    a.add_argument("action", choices=("check",))
    a.add_argument("--flip-d", action="store_true", help="perturb D by a sign to exercise the check")

    m = sub.add_parser("mirror", parents=[common], help="mirror response and Langevin position noise")
    m.add_argument("--kind", choices=("perfect", "cutoff", "none"), default="perfect")
    m.add_argument("--mass", type=float, required=True)
    m.add_argument("--omega0", type=float, default=0.0)
    m.add_argument("--cutoff", type=float)
    m.add_argument("--physical-mass", action="store_true",
                   help="treat --mass as the observed mass instead of the bare mass")
    m.add_argument("--omega", required=True, type=parse_range)

    c = sub.add_parser("cavity", parents=[common], help="photons radiated by a resonantly driven cavity")
    c.add_argument("--r1", type=float, required=True)
    c.add_argument("--r2", type=float, required=True)
    c.add_argument("--length", type=float, required=True)
    c.add_argument("--mode", choices=("elongation", "translation"), required=True)
    drive = c.add_mutually_exclusive_group(required=True)
    drive.add_argument("--n", type=int, help="resonance order; drive at nπ/τ")
    drive.add_argument("--omega", type=float, help="drive angular frequency")
    c.add_argument("--amp", type=float, required=True)
    c.add_argument("--duration", type=float, required=True)

    q = sub.add_parser("measure", parents=[common], help="SQL, UQL and optimized probe noise")
    q.add_argument("--mass", type=float, required=True)
    q.add_argument("--omega0", type=float, required=True)
    q.add_argument("--gamma", type=float, required=True)
    q.add_argument("--omega", required=True, type=parse_range)
    q.add_argument("--cap-db", type=float, default=measurement.SQUEEZING_CAP_DB)

    g = sub.add_parser("gravity", parents=[common], help="Compton versus Planck position noise")
    g.add_argument("--mass", type=float, required=True)
    g.add_argument("--omega", type=parse_range, default=parse_range("log:1:1000:4"))
    g.add_argument("--factor", type=float, default=1.0)
    return p


def _check_unit_flags(argv: Sequence[str]):
    seen = []
    for i, tok in enumerate(argv):
        if tok == "--units" and i + 1 < len(argv):
            seen.append(argv[i + 1])
        elif tok.startswith("--units="):
            seen.append(tok.split("=", 1)[1])
    if len(set(seen)) > 1:
        raise UsageError(f"conflicting --units values: {', '.join(seen)}")


RANGE_FLAGS = ("--omega", "--lam")


def _attach_negative_ranges(argv: list) -> list:
    # argparse reads "-1:1:5" as an option; glue it to its flag instead
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in RANGE_FLAGS and i + 1 < len(argv) and argv[i + 1][:1] == "-" and argv[i + 1][1:2].isdigit():
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def parse_config(argv: Sequence[str]) -> RunConfig:
    argv = _attach_negative_ranges(list(argv))
    parser = build_parser()
    if not argv:
        raise UsageError("no subcommand given", parser.format_help())
    _check_unit_flags(argv)
    ns = parser.parse_args(argv)
    if ns.subcommand is None:
        raise UsageError("no subcommand given", parser.format_help())
    params = {k: v for k, v in vars(ns).items() if k not in ("subcommand", "units", "output", "path")}
    if ns.subcommand == "mirror" and ns.kind == "cutoff" and ns.cutoff is None:
        raise UsageError("--cutoff is required for --kind cutoff", parser.format_usage())
    return RunConfig(
        ns.subcommand,
        params,
        ns.units or "si",
        ns.output or DEFAULT_FORMAT.get(ns.subcommand, "csv"),
        ns.path,
    )


def _param_repr(v: Any):
    if isinstance(v, spectra.FrequencyGrid):
        return {"spacing": v.spacing, "start": float(v.points[0]), "stop": float(v.points[-1]), "count": len(v)}
    if isinstance(v, tuple):
        return list(v)
    return v


def _meta(cfg: RunConfig) -> dict:
    return {
        "subcommand": cfg.subcommand,
        "parameters": {k: _param_repr(v) for k, v in sorted(cfg.params.items())},
        "units": cfg.units,
        "version": __version__,
    }


# -- subcommand runners ------------------------------------------------------


def _run_spectrum(p: dict, u: Units):
    w = p["omega"].points
    kind = p["kind"]
    if kind == "force-perfect":
        vals = spectra.force_spectrum_perfect_mirror(w, u)
    elif kind == "momentum-density":
        vals = spectra.momentum_density_spectrum(w, u)
    else:
        xi = spectra.Spectrum(p["omega"], spectra.force_commutator_perfect_mirror(w, u), u.name, "commutator")
        state = spectra.ThermalState.from_temperature(p["temperature"], u)
        vals = spectra.thermal_fd(xi, state, u).values.real
    return ["omega", kind], [[float(a), float(b)] for a, b in zip(w, vals)]


def _trajectory(p: dict) -> worldline.Worldline:
    kind = p["kind"]
    if kind == "rest":
        return worldline.rest()
    if kind == "uniform":
        return worldline.uniform_velocity((p["velocity"], 0.0, 0.0))
    if kind == "hyperbolic":
        return worldline.hyperbolic(p["accel"])
    if kind == "sinusoid":
        return worldline.sinusoid(p["amp"], p["freq"])
    if len(p["avec"]) != 4:
        raise InvalidInputError("--a needs four components")
    lams = p["lam"].points
    return worldline.map_worldline(
        worldline.rest(), p["avec"], check_range=(float(lams[0]), float(lams[-1])), reparameterize=False
    )


def _run_trajectory(p: dict, u: Units):
    w = _trajectory(p)
    lams = p["lam"].points
    cols = ["lambda", "x0", "x1", "x2", "x3"]
    rows = [list(map(float, r)) for r in worldline.sample(w, lams)]
    if p["abraham"]:
        cols += ["gamma0", "gamma1", "gamma2", "gamma3", "force0", "force1", "force2", "force3"]
        for row, lam in zip(rows, lams):
            g = worldline.abraham_vector(w, lam).components
            f = worldline.radiation_reaction(w, lam, u).components
            row.extend(float(x) for x in np.concatenate([g, f]))
    return cols, rows


def _run_algebra(p: dict, u: Units):
    overrides = None
    if p["flip_d"]:
        overrides = {"D": conformal_algebra.generator("D").scale(-1)}
    report = conformal_algebra.check_structure_constants(overrides=overrides)
    rows = [r.as_row() for r in report.results]
    extra = {"convention": report.convention, "signs": list(report.signs),
             "passed": report.n_pass, "total": report.n_total}
    return ["bracket", "expected", "computed", "status"], rows, extra


def _run_mirror(p: dict, u: Units):
    fm = mirror_dynamics.ForceSusceptibilityModel(p["kind"], p["cutoff"] if p["kind"] == "cutoff" else None)
    osc = mirror_dynamics.OscillatorModel(p["mass"], p["omega0"], bare_mass=not p["physical_mass"])
    grid = p["omega"]
    chi = mirror_dynamics.chi_qq(osc, fm, grid.points, u)
    C = mirror_dynamics.langevin_position_spectrum(osc, fm, grid, u).values.real
    rows = [[float(w), float(c.real), float(c.imag), float(x)] for w, c, x in zip(grid.points, chi, C)]
    return ["omega", "chi_qq_re", "chi_qq_im", "C_qq"], rows


def _run_cavity(p: dict, u: Units):
    cavity = cav_mod.Cavity(p["r1"], p["r2"], p["length"], u)
    omega = p["n"] * math.pi / cavity.tau if p["n"] is not None else p["omega"]
    motion = cav_mod.MotionSpec(p["mode"], omega, p["amp"], p["duration"])
    n = cav_mod.resonance_index(cavity, motion)
    N = cav_mod.radiated_photons(cavity, motion)
    parity = "even" if n % 2 == 0 else "odd"
    return ["N", "finesse", "resonance_index", "parity"], [[N, cavity.finesse, n, parity]]


def _run_measure(p: dict, u: Units):
    s = measurement.MechanicalSusceptibility(p["mass"], p["omega0"], p["gamma"])
    rows = []
    for w in p["omega"].points:
        probe = measurement.optimize_probe(s, w, u, cap_db=p["cap_db"])
        rows.append([
            float(w),
            float(measurement.sql_bound(s, w, u)),
            float(measurement.uql_bound(s, w, u)),
            float(measurement.measured_position_noise(probe, s, w, u)),
        ])
    return ["omega", "sql", "uql", "optimized_noise"], rows


def _run_gravity(p: dict, u: Units):
    w = p["omega"].points
    compton = mirror_dynamics.compton_background(p["mass"], w, u)
    planck = gravity.geodesic_noise(w, u, factor=p["factor"])
    regime = gravity.regime_classifier(p["mass"], u)
    rows = [[float(a), float(b), float(c), regime] for a, b, c in zip(w, compton, planck)]
    return ["omega", "compton_noise", "planck_noise", "dominant_regime"], rows


_RUNNERS = {
    "spectrum": _run_spectrum,
    "trajectory": _run_trajectory,
    "algebra": _run_algebra,
    "mirror": _run_mirror,
    "cavity": _run_cavity,
    "measure": _run_measure,
    "gravity": _run_gravity,
}


def run(config: RunConfig) -> SweepResult:
    u = get_units(config.units)
    out = _RUNNERS[config.subcommand](config.params, u)
    meta = _meta(config)
    if len(out) == 3:
        cols, rows, extra = out
        meta["report"] = extra
    else:
        cols, rows = out
    return SweepResult(list(cols), rows, meta)


# -- output ---------------------------------------------------------------


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.16e}"
    return str(x)


def to_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows:
        writer.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def to_json(result: SweepResult) -> str:
    doc = {"meta": result.meta, "columns": result.columns, "rows": result.rows}
    return json.dumps(doc, indent=1, sort_keys=True, allow_nan=True) + "\n"


def load_json(text: str) -> SweepResult:
    doc = json.loads(text)
    return SweepResult(doc["columns"], doc["rows"], doc["meta"])


def emit(result: SweepResult, fmt: str = "csv", sink="-") -> None:
    """Write ``result`` as CSV or JSON to a path, ``'-'`` (stdout), or a text stream."""
    text = to_csv(result) if fmt == "csv" else to_json(result)
    if hasattr(sink, "write"):
        sink.write(text)
    elif sink == "-":
        sys.stdout.write(text)
    else:
        with open(sink, "w", newline="") as fh:
            fh.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        sys.stderr.write((exc.usage or "") + f"vacmotion: error: {exc}\n")
        return EXIT_USAGE
    try:
        result = run(cfg)
    except (DomainError, InvalidInputError) as exc:
        sys.stderr.write(f"vacmotion: domain error: {exc}\n")
        return EXIT_DOMAIN
    except SingularityError as exc:
        sys.stderr.write(f"vacmotion: singularity: {exc}\n")
        return EXIT_SINGULARITY
    except (ConsistencyError, VacuumError) as exc:
        sys.stderr.write(f"vacmotion: consistency failure: {exc}\n")
        return EXIT_CONSISTENCY
    try:
        emit(result, cfg.output, cfg.path)
    except OSError as exc:
        sys.stderr.write(f"vacmotion: I/O error: {exc}\n")
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
