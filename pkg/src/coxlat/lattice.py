"""Exact integer-lattice algebra.

Everything here works with arbitrary-precision Python ints.  Matrices are
immutable tuples of row tuples; vectors are tuples.  The two workhorses are
Smith normal form (with unimodular transforms) and finitely generated abelian
groups presented as a cokernel ``Z^n / col-span(R)``, which is how coinvariant
lattices, fundamental groups and their images are computed downstream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Optional, Sequence

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


# ---------------------------------------------------------------------------
# basic matrix/vector arithmetic
# ---------------------------------------------------------------------------

def mat(rows: Iterable[Iterable[int]]) -> Mat:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> Mat:
    return tuple((0,) * c for _ in range(r))


def shape(m: Mat) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m)) if m else ()


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Mat, v: Sequence[int]) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_add(u: Sequence[int], v: Sequence[int]) -> Vec:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Sequence[int], v: Sequence[int]) -> Vec:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(k: int, v: Sequence[int]) -> Vec:
    return tuple(k * x for x in v)


def mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def hstack(a: Mat, b: Mat) -> Mat:
    if not a:
        return b
    if not b:
        return a
    return tuple(ra + rb for ra, rb in zip(a, b))


def columns(m: Mat) -> list[Vec]:
    return [tuple(row[j] for row in m) for j in range(shape(m)[1])]


def from_columns(cols: Sequence[Sequence[int]], nrows: Optional[int] = None) -> Mat:
    if not cols:
        return zeros(nrows or 0, 0)
    return tuple(tuple(int(col[i]) for col in cols) for i in range(len(cols[0])))


def det(m: Mat) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def mat_inverse(m: Mat) -> tuple[Mat, int]:
    """Inverse of a nonsingular integer matrix, returned as (adjugate-like
    integer matrix N, d) with ``m @ N == d * I`` and d = det(m).

    For unimodular m this gives the exact integer inverse (up to sign of d).
    """
    n = len(m)
    d = det(m)
    if d == 0:
        raise ValueError("singular matrix")
    # Solve over Q, then scale.
    a = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    inv = tuple(tuple(a[i][n + j] * d for j in range(n)) for i in range(n))
    out = tuple(tuple(int(x) for x in row) for row in inv)
    for i in range(n):
        for j in range(n):
            if inv[i][j] != out[i][j]:
                raise ArithmeticError("non-integer scaled inverse")
    return out, d


def unimodular_inverse(m: Mat) -> Mat:
    n_mat, d = mat_inverse(m)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    return n_mat if d == 1 else tuple(tuple(-x for x in row) for row in n_mat)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def smith_normal_form(m: Mat) -> tuple[Mat, Mat, Mat]:
    """Return (D, U, V) with U*m*V = D, U and V unimodular, D diagonal with
    a divisibility chain d1 | d2 | ... and nonnegative entries.

    Pivoting is deterministic: smallest nonzero absolute value, ties broken
    by lowest row index, then lowest column index.
    """
    nrows, ncols = shape(m)
    a = [list(row) for row in m]
    u = [list(row) for row in identity(nrows)]
    v = [list(row) for row in identity(ncols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, k):
        # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    def find_pivot(t):
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = a[i][j]
                if x != 0:
                    key = (abs(x), i, j)
                    if best is None or key < best[0]:
                        best = (key, i, j)
        return (best[1], best[2]) if best else None

    t = 0
    while t < min(nrows, ncols):
        pos = find_pivot(t)
        if pos is None:
            break
        if pos[0] != t:
            swap_rows(t, pos[0])
        if pos[1] != t:
            swap_cols(t, pos[1])
        while True:
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    addmul_row(i, t, -q)
                    if a[i][t] != 0:               # remainder became new smallest
                        swap_rows(t, i)
                    dirty = True
            for j in range(t + 1, ncols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    addmul_col(j, t, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                    dirty = True
            if dirty:
                continue
            # enforce divisibility of the remaining block by the pivot
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            addmul_row(t, offender, 1)
        t += 1

    for i in range(min(nrows, ncols)):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]
    return mat(a), mat(u), mat(v)


def invariant_factors_of(m: Mat) -> tuple[int, ...]:
    d, _, _ = smith_normal_form(m)
    n = min(shape(m))
    return tuple(d[i][i] for i in range(n))


def minor_gcd_invariants(m: Mat) -> tuple[int, ...]:
    """Invariant factors computed from gcds of k x k minors.

    Independent oracle for :func:`smith_normal_form`: d_1 * ... * d_k equals
    the gcd of all k x k minors.  Exponential in size; for small matrices only.
    """
    nrows, ncols = shape(m)
    out = []
    prev = 1
    for k in range(1, min(nrows, ncols) + 1):
        g = 0
        for rows_idx in itertools.combinations(range(nrows), k):
            for cols_idx in itertools.combinations(range(ncols), k):
                sub = tuple(tuple(m[i][j] for j in cols_idx) for i in rows_idx)
                g = gcd(g, det(sub))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            out.append(0)
            prev = 0
        else:
            out.append(g // prev if prev else 0)
            prev = g
    return tuple(out)


# ---------------------------------------------------------------------------
# integer linear systems and lattices (column spans)
# ---------------------------------------------------------------------------

def solve_integer(a: Mat, b: Sequence[int]) -> Optional[Vec]:
    """One integer solution x of a @ x = b, or None."""
    nrows, ncols = shape(a)
    d, u, v = smith_normal_form(a)
    c = mat_vec(u, b)
    y = [0] * ncols
    for i in range(nrows):
        di = d[i][i] if i < min(nrows, ncols) else 0
        if di == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % di != 0:
                return None
            y[i] = c[i] // di
    return mat_vec(v, y)


def kernel_basis(a: Mat) -> list[Vec]:
    """Basis of the lattice {x : a @ x = 0}."""
    nrows, ncols = shape(a)
    d, _, v = smith_normal_form(a)
    rank = sum(1 for i in range(min(nrows, ncols)) if d[i][i] != 0)
    vcols = columns(v)
    return [vcols[j] for j in range(rank, ncols)]


def column_span_basis(a: Mat) -> list[Vec]:
    """Basis of the lattice spanned by the columns of a."""
    nrows, ncols = shape(a)
    d, u, _ = smith_normal_form(a)
    uinv = unimodular_inverse(u)
    uinv_cols = columns(uinv)
    out = []
    for i in range(min(nrows, ncols)):
        if d[i][i] != 0:
            out.append(vec_scale(d[i][i], uinv_cols[i]))
    return out


# ---------------------------------------------------------------------------
# finitely generated abelian groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteAbelianGroup:
    """A finitely generated abelian group Z^n / col-span(R).

    - ``invariant_factors``: finite factors d_i > 1 first (ascending, each
      dividing the next), then one 0 per free factor.
    - ``to_canonical``: k x n matrix taking ambient coordinates to canonical
      coordinates (coordinate i taken mod d_i when d_i > 0).
    - ``lift``: n x k matrix; a section of ``to_canonical`` modulo relations.
    - ``relations``: n x r matrix whose columns span the relation lattice.
    """

    ambient_rank: int
    invariant_factors: tuple[int, ...]
    to_canonical: Mat
    lift: Mat
    relations: Mat

    # -- construction -------------------------------------------------------

    @staticmethod
    def from_presentation(n: int, relation_cols: Sequence[Sequence[int]]) -> "FiniteAbelianGroup":
        r = from_columns(relation_cols, n) if relation_cols else zeros(n, 0)
        if shape(r)[0] != n:
            raise ValueError("relation columns of wrong length")
        d, u, _ = smith_normal_form(r)
        diag = [d[i][i] if i < shape(r)[1] else 0 for i in range(n)]
        keep = [i for i in range(n) if diag[i] != 1]
        # finite factors first (SNF already sorts them by divisibility), free last
        keep.sort(key=lambda i: (diag[i] == 0, diag[i], i))
        factors = tuple(diag[i] for i in keep)
        uinv = unimodular_inverse(u)
        to_canon = tuple(u[i] for i in keep)
        lift_cols = [columns(uinv)[i] for i in keep]
        return FiniteAbelianGroup(
            ambient_rank=n,
            invariant_factors=factors,
            to_canonical=mat(to_canon) if keep else zeros(0, n),
            lift=from_columns(lift_cols, n) if keep else zeros(n, 0),
            relations=r,
        )

    # -- basic data ---------------------------------------------------------

    @property
    def num_generators(self) -> int:
        return len(self.invariant_factors)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> Optional[int]:
        if not self.is_finite():
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def torsion_order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            if d > 0:
                out *= d
        return out

    def exponent(self) -> int:
        out = 1
        for d in self.invariant_factors:
            if d > 0:
                out = out * d // gcd(out, d)
        return out

    def is_trivial(self) -> bool:
        return self.num_generators == 0

    # -- elements -----------------------------------------------------------

    def reduce(self, ambient_vec: Sequence[int]) -> Vec:
        raw = mat_vec(self.to_canonical, ambient_vec)
        return tuple(x % d if d > 0 else x for x, d in zip(raw, self.invariant_factors))

    def reduce_canonical(self, canon: Sequence[int]) -> Vec:
        return tuple(x % d if d > 0 else x for x, d in zip(canon, self.invariant_factors))

    def lift_element(self, canon: Sequence[int]) -> Vec:
        return mat_vec(self.lift, canon)

    def zero(self) -> Vec:
        return (0,) * self.num_generators

    def add(self, x: Sequence[int], y: Sequence[int]) -> Vec:
        return self.reduce_canonical(vec_add(x, y))

    def neg(self, x: Sequence[int]) -> Vec:
        return self.reduce_canonical(tuple(-a for a in x))

    def elements(self) -> Iterator[Vec]:
        if not self.is_finite():
            raise ValueError("infinite group")
        ranges = [range(d) for d in self.invariant_factors]
        return (tuple(t) for t in itertools.product(*ranges))

    def element_order(self, x: Sequence[int]) -> Optional[int]:
        n = 1
        for xi, d in zip(x, self.invariant_factors):
            if d == 0:
                if xi != 0:
                    return None
            elif xi % d != 0:
                k = d // gcd(d, xi % d)
                n = n * k // gcd(n, k)
        return n

    def torsion_elements(self) -> Iterator[Vec]:
        ranges = [range(d) if d > 0 else range(1) for d in self.invariant_factors]
        return (tuple(t) for t in itertools.product(*ranges))

    # -- induced maps --------------------------------------------------------

    def induced_endomorphism(self, ambient_endo: Mat) -> Mat:
        """Matrix of the endomorphism induced on canonical coordinates.

        The ambient endomorphism must preserve the relation lattice.
        """
        for col in columns(self.relations):
            img = mat_vec(ambient_endo, col)
            if any(self.reduce(img)):
                raise ValueError("endomorphism does not preserve relations")
        return mat_mul(mat_mul(self.to_canonical, ambient_endo), self.lift)


@dataclass(frozen=True)
class AbelianMap:
    """Homomorphism between two presented abelian groups, in canonical coords."""

    source: FiniteAbelianGroup
    target: FiniteAbelianGroup
    matrix: Mat

    def __post_init__(self):
        for j, d in enumerate(self.source.invariant_factors):
            if d > 0:
                col = tuple(d * self.matrix[i][j] for i in range(len(self.matrix)))
                if any(self.target.reduce_canonical(col)):
                    raise ValueError("map is not well defined modulo source relations")

    def apply(self, x: Sequence[int]) -> Vec:
        return self.target.reduce_canonical(mat_vec(self.matrix, x))

    def is_zero(self) -> bool:
        return all(
            not any(self.apply(tuple(1 if i == j else 0 for i in range(self.source.num_generators))))
            for j in range(self.source.num_generators)
        )


@dataclass(frozen=True)
class ImageSubgroup:
    """The image of an AbelianMap, as an abstract group plus membership test."""

    group: FiniteAbelianGroup
    torsion: FiniteAbelianGroup
    _solver: Mat = field(repr=False)
    _target: FiniteAbelianGroup = field(repr=False)

    def order(self) -> Optional[int]:
        return self.group.order()

    def torsion_order(self) -> int:
        return self.group.torsion_order()

    def contains(self, target_elt: Sequence[int]) -> bool:
        v = self._target.reduce_canonical(target_elt)
        return solve_integer(self._solver, v) is not None

    def contains_in_torsion(self, target_elt: Sequence[int]) -> bool:
        v = self._target.reduce_canonical(target_elt)
        for xi, d in zip(v, self._target.invariant_factors):
            if d == 0 and xi != 0:
                return False
        return self.contains(v)


def image_and_torsion(phi: AbelianMap) -> ImageSubgroup:
    """Image of phi as a subgroup of the target, and its torsion subgroup."""
    tgt, k = phi.target, phi.target.num_generators
    s = phi.source.num_generators
    gen_cols = columns(phi.matrix)
    rel_cols = [tuple(d if i == j else 0 for i in range(k))
                for j, d in enumerate(tgt.invariant_factors) if d > 0]
    # abstract image: Z^s / {x : phi(x) in target relations}
    stacked = from_columns(gen_cols + rel_cols, k) if (gen_cols or rel_cols) else zeros(k, 0)
    ker = kernel_basis(stacked) if shape(stacked)[1] else []
    ker_src = [v[:s] for v in ker]
    img_group = FiniteAbelianGroup.from_presentation(s, ker_src)
    tors = FiniteAbelianGroup.from_presentation(
        sum(1 for d in img_group.invariant_factors if d > 0),
        [tuple(d if i == j else 0 for i in range(sum(1 for e in img_group.invariant_factors if e > 0)))
         for j, d in enumerate([d for d in img_group.invariant_factors if d > 0])],
    )
    return ImageSubgroup(group=img_group, torsion=tors, _solver=stacked, _target=tgt)


# ---------------------------------------------------------------------------
# coinvariants
# ---------------------------------------------------------------------------

def coinvariants(rank: int, endo: Mat) -> FiniteAbelianGroup:
    """Z^rank / (endo - id) Z^rank."""
    if shape(endo) != (rank, rank):
        raise ValueError("endomorphism must be square of the given rank")
    rel = mat_sub(endo, identity(rank))
    return FiniteAbelianGroup.from_presentation(rank, columns(rel))


def quotient_group_bfs(rank: int, relation_mat: Mat, max_size: int = 200_000):
    """Brute-force model of Z^rank / R*Z^rank for square nonsingular R.

    Returns (order, sorted element order multiset).  Class representatives are
    normal forms in the half-open fundamental parallelepiped of R, computed by
    a Cramer-style reduction; this path shares no code with
    :func:`smith_normal_form` and serves as its oracle.
    """
    r = relation_mat
    if shape(r) != (rank, rank):
        raise ValueError("square relation matrix required")
    adj, dd = mat_inverse(r)  # r @ adj == dd * I with dd = det(r) != 0

    def canon(x: Vec) -> Vec:
        # subtract r @ floor(r^{-1} x); Python floordiv floors for either sign
        y = mat_vec(adj, x)
        q = tuple(v // dd for v in y)
        return vec_sub(x, mat_vec(r, q))

    basis = [tuple(1 if i == j else 0 for i in range(rank)) for j in range(rank)]
    zero = canon((0,) * rank)
    seen = {zero}
    frontier = [zero]
    while frontier:
        x = frontier.pop()
        if len(seen) > max_size:
            raise ValueError("quotient too large to enumerate")
        for b in basis:
            y = canon(vec_add(x, b))
            if y not in seen:
                seen.add(y)
                frontier.append(y)

    orders = []
    for x in seen:
        k = 1
        acc = x
        while canon(acc) != zero:
            acc = vec_add(acc, x)
            k += 1
            if k > 1_000_000:
                raise ValueError("element order runaway")
        orders.append(k)
    return len(seen), sorted(orders)
