"""Weyl group elements and twisted-Coxeter combinatorics.

Elements are canonicalized by their integer matrix on the cocharacter
lattice; stored reduced words are advisory.  Generation is breadth-first from
the simple reflections, which also yields shortest words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .lattice import Mat, Vec, identity, mat_mul, mat_vec, from_columns, columns
from .rootdata import RootDatum, act_on_char

DEFAULT_GUARD = 10_000_000


@dataclass(frozen=True)
class WeylElt:
    """A Weyl group element as a matrix acting on cocharacters."""

    matrix: Mat
    word: Optional[tuple[int, ...]] = None  # indices into the simple roots

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        w = None
        if self.word is not None and other.word is not None:
            w = self.word + other.word
        return WeylElt(mat_mul(self.matrix, other.matrix), w)

    def apply(self, cochar: Sequence[int]) -> Vec:
        return mat_vec(self.matrix, cochar)

    def apply_char(self, char: Vec) -> Vec:
        return act_on_char(self.matrix, char)

    def is_identity(self) -> bool:
        n = len(self.matrix)
        return self.matrix == identity(n)

    def __hash__(self):
        return hash(self.matrix)

    def __eq__(self, other):
        return isinstance(other, WeylElt) and self.matrix == other.matrix


def simple_reflection(d: RootDatum, k: int) -> WeylElt:
    """Reflection in the k-th simple root (k indexes ``d.simple``)."""
    root_idx = d.simple[k]
    alpha = d.roots[root_idx]
    alpha_v = d.coroots[root_idx]
    n = d.rank
    cols = []
    for j in range(n):
        e = tuple(1 if i == j else 0 for i in range(n))
        pairing = alpha[j]
        cols.append(tuple(e[i] - pairing * alpha_v[i] for i in range(n)))
    return WeylElt(from_columns(cols, n), (k,))


def weyl_identity(d: RootDatum) -> WeylElt:
    return WeylElt(identity(d.rank), ())


def from_word(d: RootDatum, word: Sequence[int]) -> WeylElt:
    out = weyl_identity(d)
    for k in word:
        out = out * simple_reflection(d, k)
    return WeylElt(out.matrix, tuple(word))


def length(d: RootDatum, w: WeylElt) -> int:
    """Number of positive roots sent to negative roots."""
    count = 0
    pos = set(d.positive)
    for i in pos:
        img = w.apply_char(d.roots[i])
        j = d.root_id(img)
        if j is None:
            raise ValueError("element does not permute the roots")
        if j not in pos:
            count += 1
    return count


def reduced_word(d: RootDatum, w: WeylElt) -> tuple[int, ...]:
    """One reduced word, by exchange descent (prepends a descent each step)."""
    word = []
    cur = w
    cur_len = length(d, cur)
    while cur_len > 0:
        for k in range(len(d.simple)):
            s = simple_reflection(d, k)
            cand = s * cur
            l = length(d, cand)
            if l < cur_len:
                word.append(k)
                cur, cur_len = cand, l
                break
        else:
            raise ValueError("no descent found; not a Weyl element?")
    return tuple(word)


def all_reduced_words(d: RootDatum, w: WeylElt) -> list[tuple[int, ...]]:
    """Every reduced word (exponential; small elements only)."""
    out = []
    cur_len = length(d, w)
    if cur_len == 0:
        return [()]
    for k in range(len(d.simple)):
        s = simple_reflection(d, k)
        cand = s * w
        if length(d, cand) < cur_len:
            out.extend((k,) + tail for tail in all_reduced_words(d, cand))
    return out


def generate_weyl_group(d: RootDatum, guard: int = DEFAULT_GUARD) -> list[WeylElt]:
    """The full Weyl group by breadth-first closure, words included."""
    gens = [simple_reflection(d, k) for k in range(len(d.simple))]
    seen = {identity(d.rank): ()}
    frontier = [weyl_identity(d)]
    out = [weyl_identity(d)]
    while frontier:
        nxt = []
        for w in frontier:
            for k, s in enumerate(gens):
                cand_m = mat_mul(w.matrix, s.matrix)
                if cand_m not in seen:
                    word = seen[w.matrix] + (k,)
                    seen[cand_m] = word
                    cand = WeylElt(cand_m, word)
                    out.append(cand)
                    nxt.append(cand)
                    if len(out) > guard:
                        raise ValueError(f"Weyl group exceeds guard {guard}")
        frontier = nxt
    return out


# ---------------------------------------------------------------------------
# Frobenius action and twisted notions
# ---------------------------------------------------------------------------

def sigma_on_weyl(d: RootDatum, w: WeylElt) -> WeylElt:
    """Conjugate of w by the Frobenius matrix."""
    s = d.sigma
    si = d.sigma_inv()
    return WeylElt(mat_mul(mat_mul(s, w.matrix), si))


def is_twisted_coxeter(d: RootDatum, w: WeylElt) -> bool:
    """True iff reduced words of w use exactly one reflection per Frobenius
    orbit on the simple roots.

    Since the support of an element is word-independent, it suffices that the
    length equals the number of orbits and the support meets every orbit.
    """
    orbits = d.sigma_orbits_on_simple()
    if length(d, w) != len(orbits):
        return False
    support = {d.simple[k] for k in reduced_word(d, w)}
    return all(any(s in support for s in orbit) for orbit in orbits)


def special_coxeter_word(d: RootDatum) -> tuple[int, ...]:
    """The distinguished twisted Coxeter word for the six classical families.

    For split families this is s_1 s_2 ... s_r in the standard ordering of the
    simple roots; for the twisted families it is the same product over orbit
    representatives (dropping the partner of the fork/fold).
    """
    fam = d.family
    if fam is None:
        raise ValueError("datum has no classical family tag")
    r = len(d.simple)
    if fam in ("A", "B", "C", "D"):
        return tuple(range(r))
    if fam == "2A":
        n = d.rank_param
        m = n // 2
        return tuple(range(m))
    if fam == "2D":
        return tuple(range(r - 1))
    raise ValueError(f"no special Coxeter word for family {fam}")


def special_coxeter(d: RootDatum) -> WeylElt:
    return from_word(d, special_coxeter_word(d))


def twisted_length_target(d: RootDatum) -> int:
    return len(d.sigma_orbits_on_simple())


# ---------------------------------------------------------------------------
# sigma-conjugacy and twisted centralizers
# ---------------------------------------------------------------------------

def sigma_conjugacy_classes(d: RootDatum, group: Iterable[WeylElt]) -> list[set[WeylElt]]:
    """Orbits of w -> v^{-1} w sigma(v) over the listed group."""
    elts = list(group)
    gens = [simple_reflection(d, k) for k in range(len(d.simple))]
    gen_sigmas = [sigma_on_weyl(d, g) for g in gens]
    remaining = {w.matrix: w for w in elts}
    classes = []
    while remaining:
        _, w0 = remaining.popitem()
        orbit = {w0.matrix: w0}
        frontier = [w0]
        while frontier:
            w = frontier.pop()
            for g, gs in zip(gens, gen_sigmas):
                # v = g (involution): g^{-1} w sigma(g) = g w sigma(g)
                cand = WeylElt(mat_mul(mat_mul(g.matrix, w.matrix), gs.matrix))
                if cand.matrix not in orbit:
                    orbit[cand.matrix] = cand
                    frontier.append(cand)
                    remaining.pop(cand.matrix, None)
        classes.append(set(orbit.values()))
    return classes


def twisted_centralizer(d: RootDatum, group: Iterable[WeylElt], w: WeylElt) -> list[WeylElt]:
    """All v with v w sigma(v)^{-1} = w, i.e. the centralizer of w*sigma."""
    out = []
    for v in group:
        vs = sigma_on_weyl(d, v)
        lhs = mat_mul(mat_mul(v.matrix, w.matrix), unimodular_inv_cached(vs.matrix))
        if lhs == w.matrix:
            out.append(v)
    return out


_INV_CACHE: dict[Mat, Mat] = {}


def unimodular_inv_cached(m: Mat) -> Mat:
    out = _INV_CACHE.get(m)
    if out is None:
        from .lattice import unimodular_inverse

        out = unimodular_inverse(m)
        _INV_CACHE[m] = out
    return out


def splitting_power(d: RootDatum) -> int:
    """Smallest e >= 1 with sigma^e acting trivially on the cocharacter lattice."""
    s = d.sigma
    acc = s
    e = 1
    while acc != identity(d.rank):
        acc = mat_mul(acc, s)
        e += 1
        if e > 64:
            raise ValueError("Frobenius order too large")
    return e


def untwisted_coxeter_power(d: RootDatum, c: WeylElt) -> WeylElt:
    """c * sigma(c) * ... * sigma^{e-1}(c) for e the splitting power."""
    e = splitting_power(d)
    out = c
    cur = c
    for _ in range(e - 1):
        cur = sigma_on_weyl(d, cur)
        out = out * cur
    return WeylElt(out.matrix)
