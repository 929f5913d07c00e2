#!/usr/bin/env python3
"""Rational conjugacy classes of twisted-Coxeter tori.

The parameter space of lifts modulo the kernel of the twisted Kottwitz map
is a finite torsor; its intersection with a basic class is cut out by the
two separating invariants, and rational classes are orbits of the twisted
centralizer.  The rank-one-squared quotient is the smallest example where
that centralizer genuinely glues two classes together.
"""

from coxlat.affine import ExtAffineElt, basic_classes, beta_image, pi1_coinvariants
from coxlat.rootdata import GroupType, build_root_datum, sl2_sl2_mod_mu2
from coxlat.tori import basic_fiber, basic_label_of, rational_class_count
from coxlat.weyl import from_word, generate_weyl_group, special_coxeter


def main():
    d = sl2_sl2_mod_mu2()
    W = generate_weyl_group(d)
    c = from_word(d, (0, 1))
    pi1 = pi1_coinvariants(d)
    print("(SL2 x SL2)/mu2, Coxeter element (s, s):")
    for name, lam in (("trivial class", (0, 0)), ("nontrivial class", (1, 0))):
        lab = basic_label_of(d, ExtAffineElt(c, lam), pi1)
        fib = basic_fiber(d, c, lab)
        rep = rational_class_count(d, c, lab, W, fib)
        print(f"  {name}: fiber size {rep.fiber_size}, rational classes {rep.orbit_count}, "
              f"centralizer acts trivially: {rep.action_is_trivial}")

    print("\nsimply connected forms: fiber = image of the coinvariant inclusion")
    for fam, r in (("A", 5), ("C", 3), ("2A", 5), ("2D", 4)):
        dt = build_root_datum(GroupType(fam, r, "sc"))
        ct = special_coxeter(dt)
        Wt = generate_weyl_group(dt)
        pit = pi1_coinvariants(dt)
        img = beta_image(dt, ct)
        for _elt, lift in basic_classes(dt):
            lab = basic_label_of(dt, lift, pit)
            fib = basic_fiber(dt, ct, lab)
            rep = rational_class_count(dt, ct, lab, Wt, fib)
            print(f"  {fam}{r}: |image| = {img.order()}, fiber {rep.fiber_size}, "
                  f"classes {rep.orbit_count}")


if __name__ == "__main__":
    main()
