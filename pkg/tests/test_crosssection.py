import random

import pytest

from coxlat.crosssection import (
    apply_displacement,
    border_roots,
    build_filtration,
    coxeter_action_on_roots,
    cross_section_roots,
    displacement_pool,
    mutate_filtration,
    pooled_detection_rate,
    twisted_action_on_roots,
    verify_filtration,
)
from coxlat.rootdata import GroupType, build_root_datum
from coxlat.weyl import length, special_coxeter

ALL = [("A", r) for r in range(2, 11)] + [("B", r) for r in range(2, 11)] + \
      [("C", r) for r in range(2, 11)] + [("D", r) for r in range(4, 11)] + \
      [("2A", r) for r in range(3, 11)] + [("2D", r) for r in range(4, 11)]


def test_coxeter_action_examples():
    d = build_root_datum(GroupType("A", 4))
    c = special_coxeter(d)
    act = coxeter_action_on_roots(d, c)
    assert act[d.root_by_name("1-2")] == d.root_by_name("2-3")
    assert act[d.root_by_name("1-4")] is None  # image negative

    d = build_root_datum(GroupType("C", 3))
    c = special_coxeter(d)
    act = coxeter_action_on_roots(d, c)
    assert act[d.root_by_name("2.3")] is None
    assert act[d.root_by_name("2.1")] == d.root_by_name("2.2")
    assert act[d.root_by_name("1-3")] == d.root_by_name("1+2")

    d = build_root_datum(GroupType("2D", 4))
    for i in range(1, 4):
        img = d.sigma_on_root(d.roots[d.root_by_name(f"{i}+4")])
        assert d.root_id(img) == d.root_by_name(f"{i}-4")


def test_twisted_action_for_2A():
    d = build_root_datum(GroupType("2A", 5))
    c = special_coxeter(d)
    act = twisted_action_on_roots(d, c)
    # images of non-border roots stay positive
    deep = border_roots(d, c)
    for i in d.positive:
        if i not in deep:
            assert act[i] is not None


@pytest.mark.parametrize("fam,r", ALL)
def test_filtration_conditions(fam, r):
    d = build_root_datum(GroupType(fam, r))
    c = special_coxeter(d)
    f = build_filtration(d)
    report = verify_filtration(d, f, c)
    assert report.ok, (fam, r, report.violations[:4])


@pytest.mark.parametrize("fam,r", ALL)
def test_cross_section_size(fam, r):
    d = build_root_datum(GroupType(fam, r))
    c = special_coxeter(d)
    cs = cross_section_roots(d, c)
    assert len(cs) == length(d, c) == len(d.sigma_orbits_on_simple())
    pos = set(d.positive)
    for i in cs:
        assert i not in pos


def test_cross_section_examples():
    d = build_root_datum(GroupType("A", 4))
    c = special_coxeter(d)
    assert sorted(d.root_names[i] for i in cross_section_roots(d, c)) == ["2-1", "3-1", "4-1"]

    d = build_root_datum(GroupType("C", 2))
    c = special_coxeter(d)
    assert sorted(d.root_names[i] for i in cross_section_roots(d, c)) == ["-2.1", "2-1"]

    d = build_root_datum(GroupType("D", 4))
    c = special_coxeter(d)
    names = sorted(d.root_names[i] for i in cross_section_roots(d, c))
    assert names == ["-1-4", "2-1", "3-1", "4-1"]


def test_graded_twist_fibers_at_most_one():
    for fam, r in (("A", 6), ("B", 4), ("C", 4), ("D", 5), ("2A", 6), ("2D", 5)):
        d = build_root_datum(GroupType(fam, r))
        c = special_coxeter(d)
        f = build_filtration(d)
        report = verify_filtration(d, f, c)
        assert report.ok
        for level_map, (lvl, nxt) in zip(report.graded_twist_map,
                                         zip(f.chain, list(f.chain[1:]) + [frozenset()])):
            piece = lvl - nxt
            images = [v for k, v in level_map.items() if k in piece and v in piece]
            assert len(images) == len(set(images))


def test_condition_two_abelian_pieces():
    # no two roots in the same graded piece sum to a root of that piece
    from coxlat.lattice import vec_add

    for fam, r in (("A", 5), ("C", 4), ("D", 5)):
        d = build_root_datum(GroupType(fam, r))
        f = build_filtration(d)
        for lvl, nxt in zip(f.chain, list(f.chain[1:]) + [frozenset()]):
            piece = lvl - nxt
            for a in piece:
                for b in piece:
                    k = d.root_id(vec_add(d.roots[a], d.roots[b]))
                    assert k is None or k not in piece


def test_single_mutation_detected():
    d = build_root_datum(GroupType("A", 5))
    c = special_coxeter(d)
    f = build_filtration(d)
    # move a deep root up: breaks the border condition
    root = next(iter(f.chain[-1]))
    mutated = apply_displacement(f, root, 0)
    report = verify_filtration(d, mutated, c)
    assert not report.ok


def test_mutation_detection_rate_pooled():
    cases = []
    for fam in ("A", "B", "C", "D", "2A", "2D"):
        d = build_root_datum(GroupType(fam, 10))
        cases.append((d, special_coxeter(d)))
    rate = pooled_detection_rate(cases, 400, seed=20240801)
    assert rate >= 0.98


def test_mutate_filtration_changes_chain():
    d = build_root_datum(GroupType("C", 4))
    f = build_filtration(d)
    rng = random.Random(1)
    changed = 0
    for _ in range(50):
        if mutate_filtration(d, f, rng).chain != f.chain:
            changed += 1
    assert changed > 40
