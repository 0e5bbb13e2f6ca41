"""Bracket table of the conformal algebra and Abraham vectors of conformally mapped worldlines."""
import numpy as np

from vacmotion import conformal_algebra as ca
from vacmotion import worldline as wl
from vacmotion.errors import KinematicsError


def main():
    report = ca.check_structure_constants()
    print(f"convention {report.convention}, signs (s_D, s_C) = {report.signs}: "
          f"{report.n_pass}/{report.n_total} brackets")
    for r in report.results:
        if r.expected != "0":
            print(f"  {r.bracket:10s} = {r.computed}")
    flipped = ca.check_structure_constants(overrides={"D": ca.generator("D").scale(-1)})
    print(f"with D -> -D: failing rows {flipped.failures}")

    rng = np.random.default_rng(0)
    shown = 0
    while shown < 3:
        a = rng.normal(scale=0.3, size=4)
        try:
            img = wl.map_worldline(wl.rest(), a, check_range=(-2, 2))
        except KinematicsError:
            continue  # rest worldline crosses the singular locus of this map
        shown += 1
        g = max(np.abs(wl.abraham_vector(img, t).components).max() for t in np.linspace(-0.5, 0.5, 11))
        acc = img.proper_jet(0.0)[2]
        print(f"a = {np.round(a, 3)}: proper acceleration {np.sqrt(-wl.mdot(acc, acc)):.4f}, max |Γ| {g:.1e}")


if __name__ == "__main__":
    main()
