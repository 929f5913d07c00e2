from fractions import Fraction

import pytest

from coxlat.affine import coxeter_lift, translation_elt
from coxlat.apartment import (
    bounds_match_golden,
    cross_section_bound_table,
    cross_section_coordinate_roots,
    fixed_point,
    golden_bound_table,
    golden_comparison_mode,
    golden_fixed_point,
    mp_bound,
    point_from_ints,
    points_equal,
)
from coxlat.rootdata import GroupType, build_root_datum
from coxlat.weyl import special_coxeter

ALL = [("A", r) for r in range(2, 11)] + [("B", r) for r in range(2, 11)] + \
      [("C", r) for r in range(2, 11)] + [("D", r) for r in range(4, 11)] + \
      [("2A", r) for r in range(3, 11)] + [("2D", r) for r in range(4, 11)]


@pytest.mark.parametrize("fam,r", ALL)
def test_fixed_points_match_closed_forms(fam, r):
    t = GroupType(fam, r)
    for k in t.kappa_range():
        d, lift = coxeter_lift(t, k)
        fp = fixed_point(d, lift)
        golden = golden_fixed_point(t, k)
        assert points_equal(fp, golden), (fam, r, k, fp.coords, golden.coords)


def test_fixed_point_satisfies_equation_exactly():
    t = GroupType("D", 5)
    d, lift = coxeter_lift(t, 2)
    fp = fixed_point(d, lift)
    from coxlat.lattice import mat_mul

    lin = mat_mul(lift.finite_part.matrix, d.sigma)
    img = tuple(
        sum(Fraction(lin[i][j]) * fp.coords[j] for j in range(d.rank)) + lift.translation[i]
        for i in range(d.rank)
    )
    assert points_equal(
        point_from_ints(d, (0,) * d.rank),
        type(fp)(coords=tuple(a - b for a, b in zip(img, fp.coords)), center_dirs=fp.center_dirs),
    )


def test_fixed_point_requires_elliptic_part():
    d = build_root_datum(GroupType("A", 3))
    with pytest.raises(ValueError):
        fixed_point(d, translation_elt((1, 0, 0), 3))


def test_mp_bound_at_origin_is_zero():
    d = build_root_datum(GroupType("C", 3))
    origin = point_from_ints(d, (0,) * d.rank)
    for i in d.positive:
        assert mp_bound(d, d.roots[i], origin) == 0


def test_mp_bound_linear_in_root():
    t = GroupType("C", 3)
    d, lift = coxeter_lift(t, 1)
    x = fixed_point(d, lift)
    a, b = d.roots[d.positive[0]], d.roots[d.positive[1]]
    s = tuple(p + q for p, q in zip(a, b))
    assert mp_bound(d, s, x) == mp_bound(d, a, x) + mp_bound(d, b, x)


@pytest.mark.parametrize("fam,r", ALL)
def test_bound_tables_match_golden(fam, r):
    t = GroupType(fam, r)
    for k in t.kappa_range():
        assert bounds_match_golden(t, k), (fam, r, k,
                                           cross_section_bound_table(t, k),
                                           golden_bound_table(t, k))


def test_bounds_zero_for_unit_lifts():
    for fam, r in (("A", 5), ("B", 3), ("C", 3), ("D", 4), ("2A", 5), ("2D", 4)):
        t = GroupType(fam, r)
        assert all(b == 0 for b in cross_section_bound_table(t, 0))


def test_spec_tables():
    assert cross_section_bound_table(GroupType("A", 5), 2) == [
        Fraction(-2, 5), Fraction(-4, 5), Fraction(-6, 5), Fraction(-8, 5)]
    assert cross_section_bound_table(GroupType("D", 4), 2) == [
        Fraction(1, 2), Fraction(1), Fraction(1, 2), Fraction(1)]
    assert golden_bound_table(GroupType("2A", 7), 0) == [0, 0, 0]
    assert golden_comparison_mode(GroupType("D", 4), 1) == "ceil"
    assert golden_comparison_mode(GroupType("C", 4), 1) == "exact"


def test_cross_section_coordinate_roots_match_border_images():
    from coxlat.crosssection import cross_section_roots

    for fam, r in (("A", 4), ("B", 3), ("C", 3), ("D", 4), ("2A", 5), ("2D", 4)):
        d = build_root_datum(GroupType(fam, r))
        c = special_coxeter(d)
        assert sorted(cross_section_coordinate_roots(d)) == sorted(cross_section_roots(d, c))
