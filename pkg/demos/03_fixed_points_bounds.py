#!/usr/bin/env python3
"""Apartment fixed points and the valuation bound tables, two ways.

Each labelled lift acts on the apartment by an affine transformation with a
unique fixed point.  Pairing the cross-section coordinate roots against that
point gives the depth every coordinate must have to lie in the parahoric
closure.  For the families whose cyclic relation has one variable per
monomial, the same table drops out of pure valuation bookkeeping applied to
the cyclic-vector bound; the two columns agree identically.
"""

from coxlat.affine import coxeter_lift
from coxlat.apartment import cross_section_bound_table, fixed_point, golden_bound_table
from coxlat.isocrystal import tropical_bound_derivation, tropical_targets
from coxlat.rootdata import GroupType


def main():
    for fam, r in (("A", 5), ("C", 3), ("B", 3), ("D", 4), ("2A", 6), ("2D", 4)):
        t = GroupType(fam, r)
        for k in t.kappa_range():
            d, lift = coxeter_lift(t, k)
            fp = fixed_point(d, lift)
            print(f"{fam}{r} label {k}")
            print(f"  fixed point  : {tuple(str(x) for x in fp.coords)}")
            pairing = cross_section_bound_table(t, k)
            print(f"  pairing route: {[str(b) for b in pairing]}")
            print(f"  golden       : {[str(b) for b in golden_bound_table(t, k)]}")
            if k in tropical_targets(t):
                trop = tropical_bound_derivation(t, k)
                tag = "agrees" if trop == pairing else "DISAGREES"
                print(f"  tropical     : {[str(b) for b in trop]}  ({tag})")
        print()


if __name__ == "__main__":
    main()
