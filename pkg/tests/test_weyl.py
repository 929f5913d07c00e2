import math

import pytest

from coxlat.rootdata import GroupType, build_root_datum
from coxlat.weyl import (
    all_reduced_words,
    from_word,
    generate_weyl_group,
    is_twisted_coxeter,
    length,
    reduced_word,
    sigma_conjugacy_classes,
    sigma_on_weyl,
    special_coxeter,
    twisted_centralizer,
    untwisted_coxeter_power,
    weyl_identity,
)


def test_group_orders():
    assert len(generate_weyl_group(build_root_datum(GroupType("A", 3)))) == math.factorial(3)
    assert len(generate_weyl_group(build_root_datum(GroupType("C", 3)))) == 2 ** 3 * math.factorial(3)
    assert len(generate_weyl_group(build_root_datum(GroupType("D", 4)))) == 2 ** 3 * math.factorial(4)
    assert len(generate_weyl_group(build_root_datum(GroupType("B", 2)))) == 8


def test_guard():
    with pytest.raises(ValueError):
        generate_weyl_group(build_root_datum(GroupType("A", 6)), guard=100)


def test_length_matches_word_length():
    d = build_root_datum(GroupType("C", 3))
    for w in generate_weyl_group(d):
        assert length(d, w) == len(w.word)
        assert len(reduced_word(d, w)) == len(w.word)


@pytest.mark.parametrize("fam,r", [("A", 4), ("B", 3), ("C", 3), ("D", 4), ("2A", 4), ("2A", 5), ("2D", 4)])
def test_special_coxeter_is_twisted_coxeter(fam, r):
    d = build_root_datum(GroupType(fam, r))
    c = special_coxeter(d)
    assert is_twisted_coxeter(d, c)
    assert length(d, c) == len(d.sigma_orbits_on_simple())


def test_identity_not_coxeter():
    d = build_root_datum(GroupType("A", 3))
    assert not is_twisted_coxeter(d, weyl_identity(d))


def test_s1s2s1_not_coxeter():
    d = build_root_datum(GroupType("A", 3))
    w = from_word(d, (0, 1, 0))
    assert not is_twisted_coxeter(d, w)
    # oracle: every reduced word misses no orbit but has length 3 != 2
    words = all_reduced_words(d, w)
    assert words and all(len(t) == 3 for t in words)


def test_sigma_conjugacy_class_counts():
    d = build_root_datum(GroupType("A", 2))
    assert len(sigma_conjugacy_classes(d, generate_weyl_group(d))) == 2
    d = build_root_datum(GroupType("A", 3))
    assert len(sigma_conjugacy_classes(d, generate_weyl_group(d))) == 3


def test_twisted_classes_collect_coxeter_elements():
    d = build_root_datum(GroupType("2A", 3))
    group = generate_weyl_group(d)
    classes = sigma_conjugacy_classes(d, group)
    cox = [w for w in group if is_twisted_coxeter(d, w)]
    assert cox
    cls = next(cl for cl in classes if special_coxeter(d) in cl)
    for w in cox:
        assert w in cls


def test_twisted_centralizer_identity_split():
    d = build_root_datum(GroupType("A", 3))
    group = generate_weyl_group(d)
    cent = twisted_centralizer(d, group, weyl_identity(d))
    assert len(cent) == len(group)


def test_twisted_centralizer_coxeter_cyclic():
    # split case: centralizer of the Coxeter element is cyclic of Coxeter-number order
    d = build_root_datum(GroupType("C", 2))
    group = generate_weyl_group(d)
    c = special_coxeter(d)
    cent = twisted_centralizer(d, group, c)
    assert len(cent) == 4
    powers = {weyl_identity(d).matrix}
    cur = c
    for _ in range(3):
        powers.add(cur.matrix)
        cur = cur * c
    assert {v.matrix for v in cent} == powers


def test_twisted_centralizer_generated_by_twisted_power():
    d = build_root_datum(GroupType("2A", 3))
    group = generate_weyl_group(d)
    c = special_coxeter(d)
    cent = twisted_centralizer(d, group, c)
    cspl = untwisted_coxeter_power(d, c)
    generated = {weyl_identity(d).matrix}
    cur = cspl
    for _ in range(16):
        if cur.matrix in generated:
            break
        generated.add(cur.matrix)
        cur = cur * cspl
    assert {v.matrix for v in cent} == generated


def test_class_partition_diagram_automorphism_invariance():
    # relabeling the generators by the order-reversing diagram automorphism of
    # type A preserves the sigma-class partition sizes
    d = build_root_datum(GroupType("A", 4))
    group = generate_weyl_group(d)
    classes = sigma_conjugacy_classes(d, group)
    sizes = sorted(len(cl) for cl in classes)
    # relabel: word s_i -> s_{n-1-i}
    relabeled = [from_word(d, tuple(len(d.simple) - 1 - k for k in w.word)) for w in group]
    classes2 = sigma_conjugacy_classes(d, relabeled)
    assert sorted(len(cl) for cl in classes2) == sizes
