"""Root data of the six unramified classical families.

Each family is built in the coordinates of a concrete matrix model:

- A   : invertible n x n matrices, diagonal torus, basis b_1..b_n of the
        cocharacter lattice.
- C   : symplectic similitudes of rank 2m; cocharacter basis e_0..e_m where
        e_0 is the similitude direction.
- B   : split odd orthogonal group SO_{2m+1} (adjoint); basis e_1..e_m.
- D   : orthogonal similitudes GSO_{2m}; basis e_0..e_m.
- 2A  : the quasi-split unitary form of family A; same lattice, Frobenius
        acts by x -> -w0(x).
- 2D  : the quasi-split outer form of family D; Frobenius swaps the two fork
        nodes.

Roots are stored as rows in the basis dual to the cocharacter basis, so the
canonical pairing is a plain dot product.  Everything is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .lattice import (
    FiniteAbelianGroup,
    AbelianMap,
    Mat,
    Vec,
    columns,
    from_columns,
    identity,
    mat,
    mat_mul,
    mat_vec,
    shape,
    smith_normal_form,
    solve_integer,
    unimodular_inverse,
    vec_add,
    vec_scale,
    zeros,
)

FAMILIES = ("A", "B", "C", "D", "2A", "2D")
ISOGENIES = ("model", "adjoint", "sc")

_RANK_MIN = {"A": 2, "2A": 3, "B": 2, "C": 2, "D": 4, "2D": 4}


@dataclass(frozen=True)
class GroupType:
    """A classical family with its rank parameter and isogeny choice.

    ``rank_param`` is n for families A/2A and m for B/C/D/2D.
    """

    family: str
    rank_param: int
    isogeny: str = "model"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.isogeny not in ISOGENIES:
            raise ValueError(f"unknown isogeny {self.isogeny!r}")
        if self.rank_param < _RANK_MIN[self.family]:
            raise ValueError(
                f"family {self.family} needs rank parameter >= {_RANK_MIN[self.family]}"
            )

    @property
    def semisimple_rank(self) -> int:
        if self.family in ("A",):
            return self.rank_param - 1
        if self.family == "2A":
            return self.rank_param - 1
        return self.rank_param

    def kappa_range(self) -> tuple[int, ...]:
        """Valid labels for the distinguished basic lifts of this family."""
        if self.family == "A":
            return tuple(range(self.rank_param))
        if self.family == "2A":
            return (0,) if self.rank_param % 2 == 1 else (0, 1)
        if self.family == "D":
            return (0, 1, 2)
        return (0, 1)


@dataclass(frozen=True)
class RootDatum:
    """Explicit root datum with a Frobenius action on the cocharacter lattice."""

    rank: int
    cochar_labels: tuple[str, ...]
    roots: tuple[Vec, ...]            # characters, rows
    coroots: tuple[Vec, ...]          # cocharacters
    root_names: tuple[str, ...]
    positive: tuple[int, ...]         # indices into roots
    simple: tuple[int, ...]
    sigma: Mat                        # action on cocharacters
    sc_lattice: Mat                   # columns span the coroot-side lattice of the simply connected cover
    center_lattice: Mat               # columns span the cocharacter lattice of the connected center
    family: Optional[str] = None
    rank_param: Optional[int] = None
    isogeny: str = "model"
    _root_index: dict = field(default_factory=dict, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_root_index", {r: i for i, r in enumerate(self.roots)})
        object.__setattr__(self, "_cache", {})

    # -- lookups -------------------------------------------------------------

    def root_id(self, root: Vec) -> Optional[int]:
        return self._root_index.get(tuple(root))

    def is_positive(self, root: Vec) -> Optional[bool]:
        i = self.root_id(root)
        if i is None:
            return None
        return i in self._positive_set

    @property
    def _positive_set(self):
        return frozenset(self.positive)

    def root_by_name(self, name: str) -> int:
        return self.root_names.index(name)

    def pairing(self, root: Vec, cochar: Sequence) -> object:
        return sum(a * b for a, b in zip(root, cochar))

    # -- Frobenius -----------------------------------------------------------

    def sigma_inv(self) -> Mat:
        return unimodular_inverse(self.sigma)

    def sigma_on_root(self, root: Vec) -> Vec:
        """Action of Frobenius on characters (dual to the cocharacter action)."""
        return mat_vec(transpose_inv_cache(self.sigma), root)

    def sigma_is_trivial(self) -> bool:
        return self.sigma == identity(self.rank)

    def sigma_orbits_on_simple(self) -> list[tuple[int, ...]]:
        """Frobenius orbits on the set of simple roots (as root indices)."""
        seen = set()
        orbits = []
        for s in self.simple:
            if s in seen:
                continue
            orbit = [s]
            seen.add(s)
            cur = s
            while True:
                nxt_vec = self.sigma_on_root(self.roots[cur])
                nxt = self.root_id(nxt_vec)
                if nxt is None:
                    raise ValueError("Frobenius does not permute the roots")
                if nxt == s:
                    break
                orbit.append(nxt)
                seen.add(nxt)
                cur = nxt
            orbits.append(tuple(orbit))
        return orbits


_TRANSPOSE_INV_CACHE: dict[Mat, Mat] = {}


def transpose_inv_cache(m: Mat) -> Mat:
    """(m^{-1})^T, the matrix acting on characters when m acts on cocharacters."""
    out = _TRANSPOSE_INV_CACHE.get(m)
    if out is None:
        out = tuple(zip(*unimodular_inverse(m)))
        out = tuple(tuple(r) for r in out)
        _TRANSPOSE_INV_CACHE[m] = out
    return out


def act_on_char(m: Mat, row: Vec) -> Vec:
    return mat_vec(transpose_inv_cache(m), row)


# ---------------------------------------------------------------------------
# construction of the six families (matrix models)
# ---------------------------------------------------------------------------

def _unit(n: int, i: int) -> Vec:
    return tuple(1 if j == i else 0 for j in range(n))


def _build_A(n: int, twisted: bool) -> RootDatum:
    labels = tuple(f"b{i}" for i in range(1, n + 1))
    roots, names, positive = [], [], []
    for i, j in itertools.permutations(range(n), 2):
        vec = tuple((1 if k == i else 0) - (1 if k == j else 0) for k in range(n))
        roots.append(vec)
        names.append(f"{i + 1}-{j + 1}")
        if i < j:
            positive.append(len(roots) - 1)
    coroots = list(roots)  # self-dual coordinates for this family
    simple = [names.index(f"{i}-{i + 1}") for i in range(1, n)]
    if twisted:
        sigma = tuple(tuple(-1 if j == n - 1 - i else 0 for j in range(n)) for i in range(n))
    else:
        sigma = identity(n)
    sc = from_columns([vec_scale(1, tuple((1 if k == i + 1 else 0) - (1 if k == i else 0) for k in range(n)))
                       for i in range(n - 1)], n)
    center = from_columns([(1,) * n], n)
    return RootDatum(
        rank=n, cochar_labels=labels, roots=tuple(roots), coroots=tuple(coroots),
        root_names=tuple(names), positive=tuple(positive), simple=tuple(simple),
        sigma=sigma, sc_lattice=sc, center_lattice=center,
        family="2A" if twisted else "A", rank_param=n,
    )


def _signed_root(rank: int, terms: Sequence[tuple[int, int]]) -> Vec:
    v = [0] * rank
    for idx, coeff in terms:
        v[idx] += coeff
    return tuple(v)


def _build_C(m: int) -> RootDatum:
    # coordinates e_0 (similitude), e_1..e_m
    r = m + 1
    labels = ("e0",) + tuple(f"e{i}" for i in range(1, m + 1))
    roots, coroots, names, positive = [], [], [], []

    def add(name, root, coroot, pos):
        roots.append(root)
        coroots.append(coroot)
        names.append(name)
        if pos:
            positive.append(len(roots) - 1)

    for i, j in itertools.combinations(range(1, m + 1), 2):
        add(f"{i}-{j}", _signed_root(r, [(i, 1), (j, -1)]), _signed_root(r, [(i, 1), (j, -1)]), True)
        add(f"{j}-{i}", _signed_root(r, [(j, 1), (i, -1)]), _signed_root(r, [(j, 1), (i, -1)]), False)
        add(f"{i}+{j}", _signed_root(r, [(0, 1), (i, 1), (j, 1)]), _signed_root(r, [(i, 1), (j, 1)]), True)
        add(f"-{i}-{j}", _signed_root(r, [(0, -1), (i, -1), (j, -1)]), _signed_root(r, [(i, -1), (j, -1)]), False)
    for i in range(1, m + 1):
        add(f"2.{i}", _signed_root(r, [(0, 1), (i, 2)]), _signed_root(r, [(i, 1)]), True)
        add(f"-2.{i}", _signed_root(r, [(0, -1), (i, -2)]), _signed_root(r, [(i, -1)]), False)

    simple = [names.index(f"{i}-{i + 1}") for i in range(1, m)] + [names.index(f"2.{m}")]
    sc = from_columns([_unit(r, i) for i in range(1, m + 1)], r)
    center = from_columns([tuple([2] + [-1] * m)], r)
    return RootDatum(
        rank=r, cochar_labels=labels, roots=tuple(roots), coroots=tuple(coroots),
        root_names=tuple(names), positive=tuple(positive), simple=tuple(simple),
        sigma=identity(r), sc_lattice=sc, center_lattice=center,
        family="C", rank_param=m,
    )


def _build_B(m: int) -> RootDatum:
    labels = tuple(f"e{i}" for i in range(1, m + 1))
    roots, coroots, names, positive = [], [], [], []

    def add(name, root, coroot, pos):
        roots.append(root)
        coroots.append(coroot)
        names.append(name)
        if pos:
            positive.append(len(roots) - 1)

    for i, j in itertools.combinations(range(m), 2):
        ii, jj = i + 1, j + 1
        add(f"{ii}-{jj}", _signed_root(m, [(i, 1), (j, -1)]), _signed_root(m, [(i, 1), (j, -1)]), True)
        add(f"{jj}-{ii}", _signed_root(m, [(j, 1), (i, -1)]), _signed_root(m, [(j, 1), (i, -1)]), False)
        add(f"{ii}+{jj}", _signed_root(m, [(i, 1), (j, 1)]), _signed_root(m, [(i, 1), (j, 1)]), True)
        add(f"-{ii}-{jj}", _signed_root(m, [(i, -1), (j, -1)]), _signed_root(m, [(i, -1), (j, -1)]), False)
    for i in range(m):
        add(f"{i + 1}", _unit(m, i), vec_scale(2, _unit(m, i)), True)
        add(f"-{i + 1}", vec_scale(-1, _unit(m, i)), vec_scale(-2, _unit(m, i)), False)

    simple = [names.index(f"{i}-{i + 1}") for i in range(1, m)] + [names.index(f"{m}")]
    sc = from_columns(
        [_signed_root(m, [(i, 1), (i + 1, -1)]) for i in range(m - 1)] + [vec_scale(2, _unit(m, m - 1))], m)
    center = zeros(m, 0)
    return RootDatum(
        rank=m, cochar_labels=labels, roots=tuple(roots), coroots=tuple(coroots),
        root_names=tuple(names), positive=tuple(positive), simple=tuple(simple),
        sigma=identity(m), sc_lattice=sc, center_lattice=center,
        family="B", rank_param=m,
    )


def _build_D(m: int, twisted: bool) -> RootDatum:
    r = m + 1
    labels = ("e0",) + tuple(f"e{i}" for i in range(1, m + 1))
    roots, coroots, names, positive = [], [], [], []

    def add(name, root, coroot, pos):
        roots.append(root)
        coroots.append(coroot)
        names.append(name)
        if pos:
            positive.append(len(roots) - 1)

    for i, j in itertools.combinations(range(1, m + 1), 2):
        add(f"{i}-{j}", _signed_root(r, [(i, 1), (j, -1)]), _signed_root(r, [(i, 1), (j, -1)]), True)
        add(f"{j}-{i}", _signed_root(r, [(j, 1), (i, -1)]), _signed_root(r, [(j, 1), (i, -1)]), False)
        add(f"{i}+{j}", _signed_root(r, [(0, 1), (i, 1), (j, 1)]), _signed_root(r, [(i, 1), (j, 1)]), True)
        add(f"-{i}-{j}", _signed_root(r, [(0, -1), (i, -1), (j, -1)]), _signed_root(r, [(i, -1), (j, -1)]), False)

    simple = [names.index(f"{i}-{i + 1}") for i in range(1, m)] + [names.index(f"{m - 1}+{m}")]
    sc_cols = [_signed_root(r, [(i, 1), (i + 1, -1)]) for i in range(1, m)] + \
              [_signed_root(r, [(m - 1, 1), (m, 1)])]
    sc = from_columns(sc_cols, r)
    center = from_columns([tuple([2] + [-1] * m)], r)
    if twisted:
        # e_i fixed for i < m, e_m -> -e_m, e_0 -> e_0 - e_m
        cols = []
        for j in range(r):
            if j == 0:
                cols.append(_signed_root(r, [(0, 1), (m, -1)]))
            elif j == m:
                cols.append(_signed_root(r, [(m, -1)]))
            else:
                cols.append(_unit(r, j))
        sigma = from_columns(cols, r)
    else:
        sigma = identity(r)
    return RootDatum(
        rank=r, cochar_labels=labels, roots=tuple(roots), coroots=tuple(coroots),
        root_names=tuple(names), positive=tuple(positive), simple=tuple(simple),
        sigma=sigma, sc_lattice=sc, center_lattice=center,
        family="2D" if twisted else "D", rank_param=m,
    )


def build_root_datum(t: GroupType) -> RootDatum:
    if t.family in ("A", "2A"):
        d = _build_A(t.rank_param, t.family == "2A")
    elif t.family == "C":
        d = _build_C(t.rank_param)
    elif t.family == "B":
        d = _build_B(t.rank_param)
    else:
        d = _build_D(t.rank_param, t.family == "2D")
    if t.isogeny == "adjoint":
        d = adjoint_datum(d)
    elif t.isogeny == "sc":
        d = simply_connected_datum(d)
    return d


# ---------------------------------------------------------------------------
# isogeny variants
# ---------------------------------------------------------------------------

def _change_lattice(d: RootDatum, proj: Mat, section: Mat, new_rank: int, isogeny: str,
                    sc_cols: list[Vec], center_cols: list[Vec]) -> RootDatum:
    """Rewrite a datum in a new lattice given by proj/section matrices."""
    new_coroots = tuple(mat_vec(proj, cr) for cr in d.coroots)
    new_roots = []
    for root in d.roots:
        # root must factor through the projection: solve row @ proj == root
        sol = solve_integer(tuple(zip(*proj)), root)
        if sol is None:
            raise ValueError("root does not descend to the new lattice")
        new_roots.append(tuple(sol))
    new_sigma = mat_mul(mat_mul(proj, d.sigma), section)
    return RootDatum(
        rank=new_rank, cochar_labels=tuple(f"x{i}" for i in range(new_rank)),
        roots=tuple(new_roots), coroots=new_coroots, root_names=d.root_names,
        positive=d.positive, simple=d.simple, sigma=new_sigma,
        sc_lattice=from_columns(sc_cols, new_rank) if sc_cols else zeros(new_rank, 0),
        center_lattice=from_columns(center_cols, new_rank) if center_cols else zeros(new_rank, 0),
        family=d.family, rank_param=d.rank_param, isogeny=isogeny,
    )


def adjoint_datum(d: RootDatum) -> RootDatum:
    """Quotient by the connected-center lattice (valid for these models,
    whose centers are connected tori)."""
    z = d.center_lattice
    zc = shape(z)[1]
    if zc == 0:
        return RootDatum(**{**d.__dict__, "isogeny": "adjoint",
                            "_root_index": {}})  # already adjoint
    # basis adapted to the center sublattice via SNF
    dd, u, v = smith_normal_form(z)
    # center columns map to d_i * f_i in the new basis f = u @ x;
    # quotient coordinates are the last rank - zc coordinates of u @ x
    n = d.rank
    uinv = unimodular_inverse(u)
    for i in range(zc):
        if dd[i][i] != 1:
            raise ValueError("center lattice is not saturated; quotient has torsion")
    proj = tuple(u[i] for i in range(zc, n))
    section = from_columns(columns(uinv)[zc:], n)
    new_rank = n - zc
    # new sc lattice: image of the coroot lattice
    sc_cols = [mat_vec(proj, c) for c in columns(d.sc_lattice)]
    return _change_lattice(d, mat(proj), section, new_rank, "adjoint", sc_cols, [])


def simply_connected_datum(d: RootDatum) -> RootDatum:
    """Restrict to the coroot lattice (cocharacters of the simply connected cover)."""
    s = d.sc_lattice
    k = shape(s)[1]
    # proj: solve s @ x = v for v in the sublattice
    st = tuple(zip(*s))

    def to_sub(v: Vec) -> Vec:
        sol = solve_integer(s, v)
        if sol is None:
            raise ValueError("vector not in the coroot lattice")
        return tuple(sol)

    new_coroots = tuple(to_sub(cr) for cr in d.coroots)
    new_roots = tuple(mat_vec(mat(st), root) for root in d.roots)  # restriction of characters
    sigma_cols = [to_sub(mat_vec(d.sigma, col)) for col in columns(s)]
    new_sigma = from_columns(sigma_cols, k)
    return RootDatum(
        rank=k, cochar_labels=tuple(f"y{i}" for i in range(k)),
        roots=new_roots, coroots=new_coroots, root_names=d.root_names,
        positive=d.positive, simple=d.simple, sigma=new_sigma,
        sc_lattice=identity(k), center_lattice=zeros(k, 0),
        family=d.family, rank_param=d.rank_param, isogeny="sc",
    )


# ---------------------------------------------------------------------------
# composite data: products and restriction of scalars
# ---------------------------------------------------------------------------

def direct_sum(a: RootDatum, b: RootDatum) -> RootDatum:
    ra, rb = a.rank, b.rank
    n = ra + rb

    def pad_a(v):
        return tuple(v) + (0,) * rb

    def pad_b(v):
        return (0,) * ra + tuple(v)

    roots = tuple(pad_a(r) for r in a.roots) + tuple(pad_b(r) for r in b.roots)
    coroots = tuple(pad_a(c) for c in a.coroots) + tuple(pad_b(c) for c in b.coroots)
    names = tuple(f"L:{s}" for s in a.root_names) + tuple(f"R:{s}" for s in b.root_names)
    positive = tuple(a.positive) + tuple(len(a.roots) + i for i in b.positive)
    simple = tuple(a.simple) + tuple(len(a.roots) + i for i in b.simple)
    sigma = tuple(tuple(row) + (0,) * rb for row in a.sigma) + \
            tuple((0,) * ra + tuple(row) for row in b.sigma)
    sc = from_columns([pad_a(c) for c in columns(a.sc_lattice)] +
                      [pad_b(c) for c in columns(b.sc_lattice)], n)
    center = from_columns([pad_a(c) for c in columns(a.center_lattice)] +
                          [pad_b(c) for c in columns(b.center_lattice)], n)
    return RootDatum(rank=n, cochar_labels=a.cochar_labels + b.cochar_labels,
                     roots=roots, coroots=coroots, root_names=names,
                     positive=positive, simple=simple, sigma=sigma,
                     sc_lattice=sc, center_lattice=center)


def restriction_of_scalars(d: RootDatum, degree: int) -> RootDatum:
    """Induce through an unramified extension of the given degree.

    The lattice becomes a direct sum of ``degree`` copies; Frobenius shifts the
    copies cyclically and applies the original Frobenius on wrap-around.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    out = d
    n0 = d.rank
    total = n0 * degree

    def block(v, k):
        return (0,) * (n0 * k) + tuple(v) + (0,) * (n0 * (degree - 1 - k))

    roots, coroots, names, positive, simple = [], [], [], [], []
    for k in range(degree):
        base = len(roots)
        for i, r in enumerate(d.roots):
            roots.append(block(r, k))
            coroots.append(block(d.coroots[i], k))
            names.append(f"f{k}:{d.root_names[i]}")
        positive.extend(base + i for i in d.positive)
        simple.extend(base + i for i in d.simple)
    # sigma: (x_0, ..., x_{deg-1}) -> (sigma_0(x_{deg-1}), x_0, ..., x_{deg-2})
    cols = []
    for k in range(degree):
        for col in columns(identity(n0)):
            if k < degree - 1:
                cols.append(block(col, k + 1))
            else:
                cols.append(block(mat_vec(d.sigma, col), 0))
    sigma = from_columns(cols, total)
    sc = from_columns([block(c, k) for k in range(degree) for c in columns(d.sc_lattice)], total)
    center = from_columns([block(c, k) for k in range(degree) for c in columns(d.center_lattice)], total)
    return RootDatum(rank=total,
                     cochar_labels=tuple(f"f{k}:{s}" for k in range(degree) for s in d.cochar_labels),
                     roots=tuple(roots), coroots=tuple(coroots), root_names=tuple(names),
                     positive=tuple(positive), simple=tuple(simple), sigma=sigma,
                     sc_lattice=sc, center_lattice=center)


def sl2_sl2_mod_mu2() -> RootDatum:
    """Rank-one-squared example: (SL2 x SL2)/mu2 with mu2 embedded diagonally.

    Basis of the cocharacter lattice: f1 = (eps1 + eps2)/2, f2 = eps1 where
    eps_i are the coroots of the two factors.
    """
    roots = ((1, 2), (-1, -2), (1, 0), (-1, 0))
    coroots = ((0, 1), (0, -1), (2, -1), (-2, 1))
    names = ("L:a", "L:-a", "R:a", "R:-a")
    return RootDatum(
        rank=2, cochar_labels=("f1", "f2"), roots=roots, coroots=coroots,
        root_names=names, positive=(0, 2), simple=(0, 2), sigma=identity(2),
        sc_lattice=from_columns([(0, 1), (2, -1)], 2), center_lattice=zeros(2, 0),
        family=None, rank_param=None,
    )


# ---------------------------------------------------------------------------
# fundamental groups and the central map
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FundamentalGroupData:
    group: FiniteAbelianGroup           # pi_1 = X_* / coroot-side lattice
    sigma_action: Mat                   # induced Frobenius on canonical coords
    coinvariants: FiniteAbelianGroup    # pi_1 / (sigma - 1) pi_1, on ambient X_*


def fundamental_group(d: RootDatum) -> FundamentalGroupData:
    """pi_1 = X_*(T) / X_*(T_sc), its Frobenius action, and the coinvariants.

    The coinvariant group is presented on the ambient lattice, with relation
    lattice X_*(T_sc) + (sigma - 1) X_*(T), so ``reduce`` applies directly to
    cocharacters.
    """
    n = d.rank
    pi1 = FiniteAbelianGroup.from_presentation(n, columns(d.sc_lattice))
    sig = pi1.induced_endomorphism(d.sigma)
    rels = columns(d.sc_lattice) + [
        tuple(d.sigma[i][j] - (1 if i == j else 0) for i in range(n)) for j in range(n)
    ]
    coinv = FiniteAbelianGroup.from_presentation(n, rels)
    return FundamentalGroupData(group=pi1, sigma_action=sig, coinvariants=coinv)


def center_map_on_coinvariants(d: RootDatum) -> AbelianMap:
    """Induced map  X_*(Z)_sigma -> pi_1(G)_sigma  of Frobenius coinvariants."""
    z = d.center_lattice
    zc = shape(z)[1]
    n = d.rank
    # Frobenius restricted to the center lattice
    zsig_cols = []
    for col in columns(z):
        sol = solve_integer(z, mat_vec(d.sigma, col))
        if sol is None:
            raise ValueError("Frobenius does not preserve the center lattice")
        zsig_cols.append(tuple(sol))
    zsigma = from_columns(zsig_cols, zc) if zc else zeros(0, 0)
    src = FiniteAbelianGroup.from_presentation(
        zc, [tuple(zsigma[i][j] - (1 if i == j else 0) for i in range(zc)) for j in range(zc)])
    tgt = fundamental_group(d).coinvariants
    # matrix: canonical source coords -> lift to Z^zc -> embed via z -> reduce in target
    cols = []
    for j in range(src.num_generators):
        e = tuple(1 if i == j else 0 for i in range(src.num_generators))
        amb = mat_vec(z, src.lift_element(e))
        cols.append(tgt.reduce(amb))
    matrix = from_columns(cols, tgt.num_generators) if cols else zeros(tgt.num_generators, 0)
    return AbelianMap(source=src, target=tgt, matrix=matrix)


def classify_center_map(phi: AbelianMap) -> str:
    """'zero', 'injective', or 'other' (finite source assumed when enumerating)."""
    if phi.source.is_trivial():
        return "injective"
    if phi.is_zero():
        return "zero"
    if phi.source.is_finite():
        seen = set()
        for x in phi.source.elements():
            y = phi.apply(x)
            if y in seen:
                return "other"
            seen.add(y)
        return "injective"
    # infinite cyclic sources: injective iff the generator has infinite image order
    if phi.source.invariant_factors == (0,):
        img = phi.apply((1,))
        if phi.target.element_order(img) is None:
            return "injective"
        return "other"
    return "other"
