#!/usr/bin/env python3
"""Fundamental groups of the six classical families.

Builds each root datum, computes pi_1 = X_*(T)/X_*(T_sc) for the adjoint
form, the Frobenius coinvariants, and the induced map from the central
cocharacters.  The split families have trivial Frobenius, so group and
coinvariants agree; the twisted families fold by the outer involution.
"""

from coxlat.rootdata import (
    GroupType,
    build_root_datum,
    center_map_on_coinvariants,
    classify_center_map,
    fundamental_group,
)


def show(g):
    if g.is_trivial():
        return "1"
    parts = []
    for d in g.invariant_factors:
        parts.append("Z" if d == 0 else f"Z/{d}")
    return " x ".join(parts)


def main():
    print(f"{'family':>8} {'rank':>4} {'pi1(adjoint)':>14} {'coinvariants':>14}")
    for fam, ranks in (("A", (2, 5, 10)), ("B", (2, 5)), ("C", (2, 5)),
                       ("D", (4, 5, 6, 7)), ("2A", (3, 4, 5, 6)), ("2D", (4, 5))):
        for r in ranks:
            fg = fundamental_group(build_root_datum(GroupType(fam, r, "adjoint")))
            print(f"{fam:>8} {r:>4} {show(fg.group):>14} {show(fg.coinvariants):>14}")

    print("\ncentral cocharacters -> pi_1 coinvariants (similitude models):")
    for fam, r in (("C", 2), ("D", 4), ("2A", 4), ("2A", 5), ("2D", 4)):
        phi = center_map_on_coinvariants(build_root_datum(GroupType(fam, r)))
        print(f"  {fam}{r}: {classify_center_map(phi)}")


if __name__ == "__main__":
    main()
