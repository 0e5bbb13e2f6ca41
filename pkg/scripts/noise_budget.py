"""Noise budget of a suspended test mass: SQL, UQL, squeezed probe, and vacuum floors.

    python scripts/noise_budget.py --mass 1e-3 --omega0 6.28 --gamma 1e-3 --out budget.csv
"""
import argparse
import csv
import logging
import sys
from dataclasses import dataclass

import numpy as np

from vacmotion import gravity, measurement, mirror_dynamics
from vacmotion.units import si


@dataclass
class BudgetConfig:
    mass: float = 1e-3
    omega0: float = 2 * np.pi
    gamma: float = 1e-3
    omega_min: float = 0.1
    omega_max: float = 1e4
    points: int = 60
    cap_db: float = measurement.SQUEEZING_CAP_DB


def run(cfg: BudgetConfig):
    u = si()
    s = measurement.MechanicalSusceptibility(cfg.mass, cfg.omega0, cfg.gamma)
    omegas = np.logspace(np.log10(cfg.omega_min), np.log10(cfg.omega_max), cfg.points)
    omegas = omegas[np.abs(omegas - cfg.omega0) > 1e-9 * cfg.omega0]
    rows = []
    for w in omegas:
        probe = measurement.optimize_probe(s, w, u, cfg.cap_db)
        rows.append((
            w,
            measurement.sql_bound(s, w, u),
            measurement.uql_bound(s, w, u),
            measurement.measured_position_noise(probe, s, w, u),
            probe.squeezing_db,
            mirror_dynamics.compton_background(cfg.mass, w, u),
            gravity.geodesic_noise(w, u),
        ))
    return ["omega", "sql", "uql", "squeezed", "squeezing_db", "compton", "planck"], rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(BudgetConfig()).items():
        p.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    p.add_argument("--out", default="-")
    args = p.parse_args()
    out = args.__dict__.pop("out")
    cfg = BudgetConfig(**vars(args))
    cols, rows = run(cfg)
    logging.basicConfig(level=logging.WARNING)
    regime = gravity.regime_classifier(cfg.mass, si())
    print(f"# mass {cfg.mass:g} kg is {regime}", file=sys.stderr)
    fh = sys.stdout if out == "-" else open(out, "w", newline="")
    w = csv.writer(fh)
    w.writerow(cols)
    w.writerows([[f"{x:.12e}" for x in r] for r in rows])
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()
