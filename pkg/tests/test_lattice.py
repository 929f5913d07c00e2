import random

import pytest
from hypothesis import given, settings, strategies as st

from coxlat.lattice import (
    AbelianMap,
    FiniteAbelianGroup,
    coinvariants,
    columns,
    det,
    from_columns,
    identity,
    image_and_torsion,
    invariant_factors_of,
    kernel_basis,
    mat,
    mat_mul,
    mat_vec,
    mat_sub,
    minor_gcd_invariants,
    quotient_group_bfs,
    smith_normal_form,
    solve_integer,
    unimodular_inverse,
    zeros,
)


def square_matrices(n_max=4, bound=6):
    return st.integers(2, n_max).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
            min_size=n, max_size=n,
        )
    )


# --- Smith normal form ------------------------------------------------------

def test_snf_identity():
    d, u, v = smith_normal_form(identity(3))
    assert d == identity(3)
    assert u == identity(3)
    assert v == identity(3)


def test_snf_diag_2_3():
    d, u, v = smith_normal_form(mat([[2, 0], [0, 3]]))
    assert [d[i][i] for i in range(2)] == [1, 6]


def test_snf_zero():
    d, u, v = smith_normal_form(zeros(2, 2))
    assert d == zeros(2, 2)


@settings(max_examples=120, deadline=None)
@given(square_matrices())
def test_snf_properties(rows):
    m = mat(rows)
    d, u, v = smith_normal_form(m)
    assert mat_mul(mat_mul(u, m), v) == d
    assert det(u) in (1, -1)
    assert det(v) in (1, -1)
    diag = [d[i][i] for i in range(len(m))]
    for a, b in zip(diag, diag[1:]):
        assert a >= 0 and b >= 0
        if a != 0:
            assert b % a == 0
        else:
            assert b == 0


@settings(max_examples=60, deadline=None)
@given(square_matrices(n_max=3, bound=4))
def test_snf_against_minor_gcds(rows):
    m = mat(rows)
    assert invariant_factors_of(m) == minor_gcd_invariants(m)


def test_solve_and_kernel():
    m = mat([[2, 4], [0, 6]])
    x = solve_integer(m, (6, 6))
    assert x is not None and mat_vec(m, x) == (6, 6)
    assert solve_integer(m, (1, 0)) is None
    k = kernel_basis(mat([[1, 2, 3]]))
    assert len(k) == 2
    for vec in k:
        assert mat_vec(mat([[1, 2, 3]]), vec) == (0,)


def test_unimodular_inverse_roundtrip():
    m = mat([[1, 2], [1, 3]])
    inv = unimodular_inverse(m)
    assert mat_mul(m, inv) == identity(2)


# --- coinvariants ------------------------------------------------------------

def test_coinvariants_rank1_negation():
    g = coinvariants(1, mat([[-1]]))
    assert g.invariant_factors == (2,)


def test_coinvariants_identity_is_free():
    g = coinvariants(3, identity(3))
    assert g.invariant_factors == (0, 0, 0)
    assert not g.is_finite()


def test_coinvariants_cyclic_for_adjoint_coxeter():
    # rotation on the rank-(n-1) lattice of a type-A adjoint datum
    from coxlat.rootdata import GroupType, build_root_datum
    from coxlat.weyl import special_coxeter

    for n in (3, 4, 5, 7):
        d = build_root_datum(GroupType("A", n, "adjoint"))
        c = special_coxeter(d)
        g = coinvariants(d.rank, c.matrix)
        assert g.invariant_factors == (n,)


def test_coinvariants_conjugation_invariance():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(1, 3)
        f = mat([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        g1 = coinvariants(n, f)
        # conjugate by a random unimodular matrix (product of elementary ops)
        u = [list(r) for r in identity(n)]
        for _ in range(4):
            i, j = rng.randrange(n), rng.randrange(n)
            if i != j:
                k = rng.randint(-2, 2)
                for t in range(n):
                    u[i][t] += k * u[j][t]
        u = mat(u)
        f2 = mat_mul(mat_mul(u, f), unimodular_inverse(u))
        g2 = coinvariants(n, f2)
        assert g1.torsion_order() == g2.torsion_order()
        assert g1.invariant_factors == g2.invariant_factors


def test_coinvariants_against_bfs_enumeration():
    rng = random.Random(11)
    done = 0
    while done < 25:
        n = rng.randint(1, 3)
        f = mat([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        rel = mat_sub(f, identity(n))
        if det(rel) == 0 or abs(det(rel)) > 60:
            continue
        done += 1
        g = coinvariants(n, f)
        order, orders = quotient_group_bfs(n, rel)
        assert g.order() == order
        expected_orders = sorted(
            g.element_order(e) for e in g.elements()
        )
        assert orders == expected_orders


# --- group elements and maps --------------------------------------------------

def test_group_reduce_and_lift():
    g = FiniteAbelianGroup.from_presentation(2, [(4, 0), (0, 6)])
    assert sorted(g.invariant_factors) in ([2, 12], [4, 6])
    for e in g.elements():
        amb = g.lift_element(e)
        assert g.reduce(amb) == e


def test_image_zero_map():
    src = FiniteAbelianGroup.from_presentation(1, [(3,)])
    tgt = FiniteAbelianGroup.from_presentation(1, [(6,)])
    phi = AbelianMap(src, tgt, mat([[0]]))
    img = image_and_torsion(phi)
    assert img.order() == 1


def test_image_two_z_in_z4():
    src = FiniteAbelianGroup.from_presentation(1, [])  # Z
    tgt = FiniteAbelianGroup.from_presentation(1, [(4,)])
    phi = AbelianMap(src, tgt, mat([[2]]))
    img = image_and_torsion(phi)
    assert img.order() == 2
    assert img.contains((2,))
    assert not img.contains((1,))
    assert img.contains_in_torsion((2,))


def test_map_well_definedness_rejected():
    src = FiniteAbelianGroup.from_presentation(1, [(2,)])  # Z/2
    tgt = FiniteAbelianGroup.from_presentation(1, [(4,)])  # Z/4
    with pytest.raises(ValueError):
        AbelianMap(src, tgt, mat([[1]]))  # 2*1 = 2 != 0 in Z/4


def _det_cofactor(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1:] for row in m[1:])
        total += (-1) ** j * m[0][j] * _det_cofactor(minor)
    return total


@settings(max_examples=60, deadline=None)
@given(square_matrices(n_max=4, bound=7))
def test_det_against_cofactor_expansion(rows):
    m = mat(rows)
    assert det(m) == _det_cofactor(m)


def test_image_mixed_free_and_torsion():
    # Z/2 x Z -> Z/8 x Z, generator images (4,0) and (0,1)
    src = FiniteAbelianGroup.from_presentation(2, [(2, 0)])
    tgt = FiniteAbelianGroup.from_presentation(2, [(8, 0)])
    phi = AbelianMap(src, tgt, mat([[4, 0], [0, 1]]))
    img = image_and_torsion(phi)
    assert img.group.invariant_factors == (2, 0)
    assert img.torsion_order() == 2
    assert img.contains((4, 0)) and img.contains((0, 1))
    assert not img.contains((2, 0))
    assert img.contains_in_torsion((4, 0))
    assert not img.contains_in_torsion((0, 1))
