#!/usr/bin/env python3
"""Root filtrations behind the twisted cross section.

For each family the chain of positive-root subsets is printed level by
level, then checked: closure under addition, sums dropping a level, and
stability of each level under the twisted Coxeter action.  A deliberately
corrupted chain shows what a violation report looks like.
"""

import random

from coxlat.crosssection import (
    apply_displacement,
    build_filtration,
    displacement_pool,
    verify_filtration,
)
from coxlat.rootdata import GroupType, build_root_datum
from coxlat.weyl import special_coxeter


def main():
    for fam, r in (("A", 4), ("C", 3), ("B", 3), ("D", 4), ("2A", 5), ("2D", 4)):
        d = build_root_datum(GroupType(fam, r))
        c = special_coxeter(d)
        f = build_filtration(d)
        report = verify_filtration(d, f, c)
        print(f"{fam}{r}: depth {f.depth}, verified: {report.ok}")
        for i, level in enumerate(f.chain):
            names = sorted(d.root_names[j] for j in level)
            print(f"  level {i + 1}: {names}")
        print()

    # corrupt one chain and watch the verifier object
    d = build_root_datum(GroupType("C", 3))
    c = special_coxeter(d)
    f = build_filtration(d)
    rng = random.Random(0)
    pool = displacement_pool(d, f)
    root, target = pool[rng.randrange(len(pool))]
    mutated = apply_displacement(f, root, target)
    report = verify_filtration(d, mutated, c)
    print(f"after displacing {d.root_names[root]} to level {target + 1}:")
    for v in report.violations[:4]:
        print(f"  {v}")


if __name__ == "__main__":
    main()
