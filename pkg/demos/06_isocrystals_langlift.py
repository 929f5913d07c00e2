#!/usr/bin/env python3
"""Truncated isocrystal arithmetic: cyclic relations, polygons, Lang lifts.

A random basis change of the standard slope-k/n module keeps the cyclic
relation coefficients inside the valuation bounds, and their Newton polygon
is the single segment from (0,0) to (n,k).  The last section solves twisted
Lang equations in a unipotent truncation, growing the residue field exactly
as far as the instance requires.
"""

import numpy as np

from coxlat.ffield import ExtField
from coxlat.isocrystal import (
    Series,
    companion_phi,
    cyclic_relation,
    newton_polygon,
    random_conjugate,
    verify_cyclic_bounds,
)
from coxlat.langlift import lang_lift_experiment


def main():
    n, k, q = 5, 2, 3
    field = ExtField(q, 1)
    prec = 24
    rng = np.random.default_rng(8)
    phi = random_conjugate(companion_phi(field, n, k, prec), field, prec, rng)
    v = [Series.from_coeffs(field, 0, field.random(rng, (2,)), prec) for _ in range(n)]
    coeffs = cyclic_relation(phi, v)
    print(f"slope {k}/{n} over F_{q}: relation coefficient valuations")
    for i, a in enumerate(coeffs):
        bound = (n - i) * k / n
        shown = a.valuation if a.valuation is not None else f">= {a.prec} (zero at precision)"
        print(f"  ord(A_{i}) = {shown}  (bound {bound:.2f})")
    pts = [(0, 0)] + [(n - i, a.valuation) for i, a in enumerate(coeffs)]
    hull, slopes = newton_polygon(pts)
    print(f"  polygon vertices: {hull}, slopes: {slopes}")

    rep = verify_cyclic_bounds(4, 3, 300, seed=9, q=5)
    print(f"\n300 random trials at slope 3/4 over F_5: failures = {len(rep.failures)}")

    lrep = lang_lift_experiment(50, seed=4, n=3, level=4, q=2)
    print(f"\ntwisted Lang lifts, 50 unipotent instances (3x3, level 4, q=2):")
    print(f"  solved {lrep.solved}/50, largest residue tower degree {lrep.max_tower_degree}")


if __name__ == "__main__":
    main()
