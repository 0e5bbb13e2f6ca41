"""Photons radiated by a vibrating Fabry-Perot cavity across finesse and resonance order.

    python scripts/cavity_photons.py --length 0.01 --amp 1e-9 --duration 1
"""
import argparse
import math

import numpy as np

from vacmotion import cavity
from vacmotion.units import si


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--length", type=float, default=0.01, help="m")
    p.add_argument("--amp", type=float, default=1e-9, help="mirror amplitude, m")
    p.add_argument("--duration", type=float, default=1.0, help="s")
    p.add_argument("--n-max", type=int, default=5)
    args = p.parse_args()

    u = si()
    print(f"{'finesse':>10} {'n':>3} {'parity':>6} {'omega [rad/s]':>14} {'v/c':>10} {'N':>12}")
    for F in np.logspace(2, 9, 8):
        cav = cavity.Cavity.from_finesse(F, args.length, u)
        for n, w, parity in cavity.resonance_frequencies(cav, args.n_max):
            motion = cavity.MotionSpec(cavity.parity_mode(n), w, args.amp, args.duration)
            N = cavity.radiated_photons(cav, motion)
            print(f"{cav.finesse:10.3e} {n:3d} {parity:>6} {w:14.6e} {motion.peak_velocity / u.c:10.3e} {N:12.4e}")
    # where does one photon appear at the lowest resonance?
    cav = cavity.Cavity.from_finesse(1.0, args.length, u)
    w2 = 2 * math.pi / cav.tau
    beta = w2 * args.amp / u.c
    F_one = 1.0 / (w2 * args.duration / (2 * math.pi) * beta**2)
    print(f"\nfinesse for N = 1 at n = 2: {F_one:.3e}")


if __name__ == "__main__":
    main()
