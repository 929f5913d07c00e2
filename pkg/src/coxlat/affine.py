"""Extended affine Weyl group, Newton points, Kottwitz classes.

An element is a pair (finite part, translation); the product rule is
(w, a)(w', a') = (ww', a + w(a')), matching the normal form
"translation-by-a followed by w" inside the semidirect product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .lattice import (
    FiniteAbelianGroup,
    AbelianMap,
    ImageSubgroup,
    Mat,
    Vec,
    columns,
    from_columns,
    identity,
    image_and_torsion,
    mat,
    mat_mul,
    mat_vec,
    solve_integer,
    vec_add,
    zeros,
)
from .rootdata import GroupType, RootDatum, build_root_datum, fundamental_group
from .weyl import WeylElt, special_coxeter, sigma_on_weyl, unimodular_inv_cached

QVec = tuple[Fraction, ...]


@dataclass(frozen=True)
class ExtAffineElt:
    """Element (w, a) of W acting on the cocharacter lattice, a in that lattice."""

    finite_part: WeylElt
    translation: Vec

    def __mul__(self, other: "ExtAffineElt") -> "ExtAffineElt":
        return ExtAffineElt(
            self.finite_part * other.finite_part,
            vec_add(self.translation, self.finite_part.apply(other.translation)),
        )

    def inverse(self) -> "ExtAffineElt":
        winv = WeylElt(unimodular_inv_cached(self.finite_part.matrix))
        return ExtAffineElt(winv, tuple(-x for x in winv.apply(self.translation)))

    def __hash__(self):
        return hash((self.finite_part.matrix, self.translation))


def translation_elt(v: Sequence[int], rank: int) -> ExtAffineElt:
    return ExtAffineElt(WeylElt(identity(rank)), tuple(int(x) for x in v))


def sigma_on_affine(d: RootDatum, x: ExtAffineElt) -> ExtAffineElt:
    return ExtAffineElt(sigma_on_weyl(d, x.finite_part), mat_vec(d.sigma, x.translation))


# ---------------------------------------------------------------------------
# Newton points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NewtonPoint:
    vector: QVec          # the averaged translation, before dominantization
    dominant: QVec        # the dominant Weyl-orbit representative

    def __eq__(self, other):
        return isinstance(other, NewtonPoint) and self.dominant == other.dominant

    def __hash__(self):
        return hash(self.dominant)


def _dominantize(d: RootDatum, v: QVec) -> QVec:
    """Walk into the closed dominant chamber with simple reflections."""
    cur = list(v)
    guard = 0
    while True:
        for k in range(len(d.simple)):
            idx = d.simple[k]
            alpha = d.roots[idx]
            alpha_v = d.coroots[idx]
            pairing = sum(a * x for a, x in zip(alpha, cur))
            if pairing < 0:
                cur = [x - pairing * av for x, av in zip(cur, alpha_v)]
                break
        else:
            return tuple(cur)
        guard += 1
        if guard > 100_000:
            raise RuntimeError("dominantization did not terminate")


def newton_operator(d: RootDatum, w: WeylElt, max_steps: int = 4096) -> tuple[Mat, int]:
    """(S, steps) with the averaged translation of any lift (w, a) equal to
    S @ a / steps.

    The twisted product (w,a) sigma((w,a)) ... has translation
    sum_k M_k Sigma^k a with M_k the length-k twisted product of the finite
    part, so the dependence on the translation is linear; steps is the
    smallest power closing both the finite part and the Frobenius.  Cached on
    the datum since it depends only on (w, sigma).
    """
    key = ("newton_op", w.matrix)
    cached = d._cache.get(key)
    if cached is not None:
        return cached
    n = d.rank
    ident = identity(n)
    m_k = ident          # twisted product of finite parts, length k
    sig_pow = ident      # Sigma^k
    acc = [[0] * n for _ in range(n)]
    steps = 0
    while True:
        term = mat_mul(m_k, sig_pow)
        for i in range(n):
            row = acc[i]
            trow = term[i]
            for j in range(n):
                row[j] += trow[j]
        # extend: M_{k+1} = M_k * (Sigma^k w Sigma^-k)
        m_k = mat_mul(m_k, mat_mul(mat_mul(sig_pow, w.matrix), unimodular_inv_cached(sig_pow)))
        sig_pow = mat_mul(sig_pow, d.sigma)
        steps += 1
        if m_k == ident and sig_pow == ident:
            break
        if steps > max_steps:
            raise RuntimeError("no closing power found")
    out = (mat(acc), steps)
    d._cache[key] = out
    return out


def newton_point(d: RootDatum, x: ExtAffineElt) -> NewtonPoint:
    """Newton point of a lift: the averaged twisted-product translation,
    with its dominant Weyl-orbit representative.

    Independence of the closing power is covered by tests that continue the
    twisted product to the next closure.
    """
    s, steps = newton_operator(d, x.finite_part)
    vec = tuple(Fraction(t, steps) for t in mat_vec(s, x.translation))
    return NewtonPoint(vector=vec, dominant=_dominantize(d, vec))


def newton_point_by_products(d: RootDatum, x: ExtAffineElt, max_steps: int = 4096) -> NewtonPoint:
    """Oracle path: form the twisted products explicitly and average."""
    n = d.rank
    ident = identity(n)
    prod = x
    sig_pow = d.sigma
    steps = 1
    while not (prod.finite_part.matrix == ident and sig_pow == ident):
        twisted = ExtAffineElt(
            WeylElt(mat_mul(mat_mul(sig_pow, x.finite_part.matrix), unimodular_inv_cached(sig_pow))),
            mat_vec(sig_pow, x.translation),
        )
        prod = prod * twisted
        sig_pow = mat_mul(sig_pow, d.sigma)
        steps += 1
        if steps > max_steps:
            raise RuntimeError("no closing power found")
    vec = tuple(Fraction(t, steps) for t in prod.translation)
    return NewtonPoint(vector=vec, dominant=_dominantize(d, vec))


def is_basic(d: RootDatum, x: ExtAffineElt) -> bool:
    """Central Newton point: pairs to zero against every root."""
    nu = newton_point(d, x).vector
    return all(sum(a * v for a, v in zip(root, nu)) == 0 for root in d.roots)


# ---------------------------------------------------------------------------
# Kottwitz classes
# ---------------------------------------------------------------------------

def pi1_coinvariants(d: RootDatum) -> FiniteAbelianGroup:
    """pi_1(G) with Frobenius coinvariants, presented on the ambient lattice."""
    return fundamental_group(d).coinvariants


def kottwitz_class(d: RootDatum, x: ExtAffineElt,
                   group: Optional[FiniteAbelianGroup] = None) -> Vec:
    """Class of the translation part in pi_1(G)_Frobenius, canonical coords."""
    g = group if group is not None else pi1_coinvariants(d)
    return g.reduce(x.translation)


def coweight_coinvariants(d: RootDatum, w: WeylElt) -> FiniteAbelianGroup:
    """X_*(T) / (w*sigma - 1) X_*(T): target of the w-twisted Kottwitz map."""
    n = d.rank
    tw = mat_mul(w.matrix, d.sigma)
    rels = [tuple(tw[i][j] - (1 if i == j else 0) for i in range(n)) for j in range(n)]
    return FiniteAbelianGroup.from_presentation(n, rels)


def beta_map(d: RootDatum, w: WeylElt) -> AbelianMap:
    """Map of twisted coinvariants induced by the coroot-lattice inclusion."""
    s = d.sc_lattice
    k = len(columns(s))
    tw = mat_mul(w.matrix, d.sigma)
    # twisted Frobenius restricted to the sublattice
    cols = []
    for col in columns(s):
        sol = solve_integer(s, mat_vec(tw, col))
        if sol is None:
            raise ValueError("twisted Frobenius does not preserve the coroot lattice")
        cols.append(tuple(sol))
    tw_sub = from_columns(cols, k) if k else zeros(0, 0)
    src = FiniteAbelianGroup.from_presentation(
        k, [tuple(tw_sub[i][j] - (1 if i == j else 0) for i in range(k)) for j in range(k)])
    tgt = coweight_coinvariants(d, w)
    mcols = []
    for j in range(src.num_generators):
        e = tuple(1 if i == j else 0 for i in range(src.num_generators))
        amb = mat_vec(s, src.lift_element(e))
        mcols.append(tgt.reduce(amb))
    matrix = from_columns(mcols, tgt.num_generators) if mcols else zeros(tgt.num_generators, 0)
    return AbelianMap(source=src, target=tgt, matrix=matrix)


def beta_image(d: RootDatum, w: WeylElt) -> ImageSubgroup:
    return image_and_torsion(beta_map(d, w))


# ---------------------------------------------------------------------------
# distinguished lifts of the special Coxeter elements
# ---------------------------------------------------------------------------

def coxeter_translation(t: GroupType, d: RootDatum, kappa: int) -> Vec:
    """Translation part of the distinguished basic lift for the given label.

    Conventions per family (matrix-model coordinates; e_0 is the similitude
    coordinate where present):

    - A  : kappa * b_1
    - C  : kappa * (e_0 - e_1)            (the similitude-twisted lift)
    - B  : -kappa * e_1
    - D  : -kappa * e_m for kappa in {0,1};  c(e_0) = e_0 - e_1 - e_m for kappa = 2
    - 2A : kappa * b_1                     (kappa = 1 only for even n)
    - 2D : kappa * e_0
    """
    if kappa not in t.kappa_range():
        raise ValueError(f"label {kappa} invalid for family {t.family} (valid: {t.kappa_range()})")
    n = d.rank
    fam = t.family

    def unit(i: int, scale: int = 1) -> Vec:
        return tuple(scale if j == i else 0 for j in range(n))

    if fam in ("A", "2A"):
        return unit(0, kappa)
    if fam == "C":
        v = [0] * n
        v[0] = kappa
        v[1] = -kappa
        return tuple(v)
    if fam == "B":
        return unit(0, -kappa)
    if fam == "D":
        if kappa in (0, 1):
            return unit(n - 1, -kappa)
        v = [0] * n
        v[0], v[1], v[n - 1] = 1, -1, -1
        return tuple(v)
    if fam == "2D":
        return unit(0, kappa)
    raise ValueError(fam)


def coxeter_lift(t: GroupType, kappa: int,
                 datum: Optional[RootDatum] = None) -> tuple[RootDatum, ExtAffineElt]:
    """The distinguished lift of the special Coxeter element, as an extended
    affine element over the matrix-model datum (or a provided compatible one)."""
    d = datum if datum is not None else build_root_datum(GroupType(t.family, t.rank_param, "model"))
    c = special_coxeter(d)
    lam = coxeter_translation(t, d, kappa)
    if t.isogeny != "model" and datum is None:
        raise ValueError("coxeter_lift builds matrix-model lifts; map to other isogenies explicitly")
    return d, ExtAffineElt(c, lam)


def isocrystal_slope(d: RootDatum, nu: QVec) -> Fraction:
    """Slope of a central Newton point on the standard representation.

    Pairs nu with the weight of the first basis vector of the defining module:
    b_1 for the linear families, e_0 + e_1 for the similitude families, e_1
    for the odd orthogonal family.
    """
    fam = d.family
    if fam in ("A", "2A"):
        w = tuple(1 if i == 0 else 0 for i in range(d.rank))
    elif fam in ("C", "D", "2D"):
        w = tuple(1 if i in (0, 1) else 0 for i in range(d.rank))
    elif fam == "B":
        w = tuple(1 if i == 0 else 0 for i in range(d.rank))
    else:
        raise ValueError("no standard representation for this datum")
    return sum(a * b for a, b in zip(w, nu))


# ---------------------------------------------------------------------------
# basic classes
# ---------------------------------------------------------------------------

def basic_classes(d: RootDatum) -> list[tuple[Vec, ExtAffineElt]]:
    """One label per element of pi_1(G)_Frobenius, with a representative lift
    over the special Coxeter element (finite groups only)."""
    g = pi1_coinvariants(d)
    if not g.is_finite():
        raise ValueError("fundamental-group coinvariants are infinite; enumerate by label instead")
    c = special_coxeter(d)
    out = []
    for elt in g.elements():
        amb = g.lift_element(elt)
        out.append((elt, ExtAffineElt(c, amb)))
    return out
