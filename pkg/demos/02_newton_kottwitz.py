#!/usr/bin/env python3
"""Newton points and Kottwitz classes of the distinguished basic lifts.

Every family carries a small set of labelled lifts of its special twisted
Coxeter element; their Newton points are central (so the lifts are basic)
and the Kottwitz classes enumerate the inner forms.
"""

from coxlat.affine import coxeter_lift, is_basic, isocrystal_slope, kottwitz_class, newton_point, pi1_coinvariants
from coxlat.rootdata import GroupType


def main():
    print(f"{'family':>8} {'label':>6} {'slope':>7} {'basic':>6} {'kottwitz class':>16}")
    for fam, r in (("A", 5), ("B", 3), ("C", 3), ("D", 4), ("2A", 6), ("2D", 4)):
        t = GroupType(fam, r)
        pi1 = None
        for k in t.kappa_range():
            d, lift = coxeter_lift(t, k)
            if pi1 is None:
                pi1 = pi1_coinvariants(d)
            pt = newton_point(d, lift)
            print(f"{fam + str(r):>8} {k:>6} {str(isocrystal_slope(d, pt.vector)):>7} "
                  f"{str(is_basic(d, lift)):>6} {str(kottwitz_class(d, lift, pi1)):>16}")

    # random lifts of a twisted Coxeter element stay basic
    import numpy as np

    from coxlat.affine import ExtAffineElt

    rng = np.random.default_rng(1)
    d, base = coxeter_lift(GroupType("2D", 5), 0)
    checked = sum(
        is_basic(d, ExtAffineElt(base.finite_part, tuple(int(x) for x in rng.integers(-4, 5, size=d.rank))))
        for _ in range(200)
    )
    print(f"\n200 random lifts over the twisted Coxeter element of 2D5: {checked} basic")


if __name__ == "__main__":
    main()
