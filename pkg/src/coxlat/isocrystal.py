"""Truncated Laurent series over finite fields, isocrystals, Newton polygons.

The coefficient field is F_{q^E} in the equal-characteristic model, so the
Frobenius acts coefficientwise and the uniformizer is fixed.  Series track a
pessimistic precision bound; operations that would certify a bound below the
working precision raise instead of returning an unsound answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .ffield import ExtField
from .rootdata import GroupType


class PrecisionError(ArithmeticError):
    pass


def _poly_conv(f: ExtField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of two coefficient arrays (L, E): convolution along the
    uniformizer axis, multiplication in F_{q^E} along the last axis."""
    e = f.degree
    if e == 1:
        return (np.convolve(a[:, 0], b[:, 0]) % f.q).reshape(-1, 1)
    if e == 2 and (len(a) + len(b)) * (f.q - 1) ** 2 < (1 << 20):
        # pack both field coordinates into one integer per exponent; a single
        # convolution then yields all three product coordinates
        c = np.convolve(a[:, 0] + (a[:, 1] << 20), b[:, 0] + (b[:, 1] << 20))
        mask = (1 << 20) - 1
        wide_poly = np.empty((len(c), 3), dtype=np.int64)
        wide_poly[:, 0] = c & mask
        wide_poly[:, 1] = (c >> 20) & mask
        wide_poly[:, 2] = c >> 40
        return f._reduce_poly(wide_poly % f.q)
    wide_poly = np.zeros((len(a) + len(b) - 1, 2 * e - 1), dtype=np.int64)
    for i in range(e):
        ca = a[:, i]
        if not ca.any():
            continue
        for j in range(e):
            cb = b[:, j]
            if cb.any():
                wide_poly[:, i + j] += np.convolve(ca, cb)
    return f._reduce_poly(wide_poly % f.q)


@dataclass(slots=True)
class Series:
    """sum of coeffs[i] * pi^(lo + i), exact below exponent ``prec``.

    Invariant: either coeffs is empty (zero at working precision) or the
    leading coefficient is nonzero, so ``lo`` is the exact valuation.
    """

    field: ExtField
    lo: int
    coeffs: np.ndarray  # shape (L, E)
    prec: int

    # -- construction --------------------------------------------------------

    @staticmethod
    def zero_at(field: ExtField, prec: int) -> "Series":
        return Series(field, prec, field.zero((0,)), prec)

    @staticmethod
    def from_coeffs(field: ExtField, lo: int, coeffs: np.ndarray, prec: int) -> "Series":
        return Series._from_reduced(field, lo, coeffs % field.q, prec)

    @staticmethod
    def _from_reduced(field: ExtField, lo: int, coeffs: np.ndarray, prec: int) -> "Series":
        # assumes entries already lie in [0, q)
        n = min(len(coeffs), max(prec - lo, 0))
        coeffs = coeffs[:n]
        nz = np.nonzero(coeffs.any(axis=1))[0]
        if len(nz) == 0:
            return Series.zero_at(field, prec)
        lead = int(nz[0])
        return Series(field, lo + lead, coeffs[lead:], prec)

    @staticmethod
    def unit_pi_power(field: ExtField, k: int, prec: int) -> "Series":
        return Series.from_coeffs(field, k, field.one((1,)), prec)

    @staticmethod
    def constant(field: ExtField, value: np.ndarray, prec: int) -> "Series":
        return Series.from_coeffs(field, 0, value.reshape(1, -1), prec)

    # -- inspection -----------------------------------------------------------

    @property
    def valuation(self) -> Optional[int]:
        return None if len(self.coeffs) == 0 else self.lo

    def is_zero_at_precision(self) -> bool:
        return len(self.coeffs) == 0

    def coeff(self, exponent: int) -> np.ndarray:
        if exponent >= self.prec:
            raise PrecisionError(f"coefficient at {exponent} beyond precision {self.prec}")
        i = exponent - self.lo
        if i < 0 or i >= len(self.coeffs):
            return self.field.zero()
        return self.coeffs[i]

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "Series") -> "Series":
        f = self.field
        prec = min(self.prec, other.prec)
        if self.is_zero_at_precision():
            return Series.from_coeffs(f, other.lo, other.coeffs, prec)
        if other.is_zero_at_precision():
            return Series.from_coeffs(f, self.lo, self.coeffs, prec)
        lo = min(self.lo, other.lo)
        n = max(self.lo + len(self.coeffs), other.lo + len(other.coeffs)) - lo
        out = f.zero((n,))
        out[self.lo - lo : self.lo - lo + len(self.coeffs)] += self.coeffs
        out[other.lo - lo : other.lo - lo + len(other.coeffs)] += other.coeffs
        out %= f.q
        return Series._from_reduced(f, lo, out, prec)

    def __neg__(self) -> "Series":
        return Series(self.field, self.lo, self.field.neg(self.coeffs), self.prec)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other: "Series") -> "Series":
        f = self.field
        prec = min(self.prec + other.lo, other.prec + self.lo)
        if self.is_zero_at_precision() or other.is_zero_at_precision():
            return Series.zero_at(f, prec)
        wide = _poly_conv(f, self.coeffs, other.coeffs)
        return Series._from_reduced(f, self.lo + other.lo, wide, prec)

    def scale_pi(self, k: int) -> "Series":
        return Series(self.field, self.lo + k, self.coeffs, self.prec + k)

    def frobenius(self, power: int = 1) -> "Series":
        return Series(self.field, self.lo, self.field.frobenius(self.coeffs, power), self.prec)

    def inverse(self) -> "Series":
        f = self.field
        if self.is_zero_at_precision():
            raise ZeroDivisionError("inverting a series that vanishes at precision")
        v = self.lo
        rel = min(len(self.coeffs), self.prec - v)
        a = self.coeffs[:rel]
        # Newton iteration y <- y (2 - a y) on the unit part, doubling accuracy
        y = f.inv(a[0]).reshape(1, -1)
        cur = 1
        while cur < rel:
            cur = min(2 * cur, rel)
            ay = _poly_conv(f, a[:cur], y)[:cur]
            r = f.neg(ay)
            r[0] = f.add(r[0], f.from_int(2))
            y = _poly_conv(f, y, r)[:cur]
        # 1/s has valuation -v and relative precision rel
        return Series.from_coeffs(f, -v, y, -v + rel)

    def __truediv__(self, other: "Series") -> "Series":
        return self * other.inverse()

    def __repr__(self):
        if self.is_zero_at_precision():
            return f"O(pi^{self.prec})"
        return f"Series(val={self.lo}, len={len(self.coeffs)}, prec={self.prec})"


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------

def newton_polygon(points: Sequence[tuple[int, Optional[object]]]):
    """Lower convex hull of (index, valuation) points; None means +infinity.

    Returns (vertices, slopes) where slopes is a list of (slope, multiplicity)
    with multiplicity the horizontal extent, sorted by slope.
    """
    finite = [(i, Fraction(v)) for i, v in points if v is not None]
    if not finite:
        raise ValueError("all valuations are infinite")
    finite.sort()
    hull: list[tuple[int, Fraction]] = []
    for p in finite:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above segment hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    slopes = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slopes.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
    return hull, slopes


# ---------------------------------------------------------------------------
# phi-linear matrices and the cyclic-vector bound
# ---------------------------------------------------------------------------

@dataclass
class PhiMatrix:
    """phi = M o (coefficientwise Frobenius^e); entries are Series."""

    entries: list[list[Series]]
    frobenius_power: int = 1

    @property
    def size(self) -> int:
        return len(self.entries)

    def apply(self, vec: list[Series]) -> list[Series]:
        n = self.size
        fvec = [v.frobenius(self.frobenius_power) for v in vec]
        out = []
        for i in range(n):
            acc = None
            min_prec = None
            for j in range(n):
                entry = self.entries[i][j]
                if entry.is_zero_at_precision() or fvec[j].is_zero_at_precision():
                    p = min(entry.prec + fvec[j].lo, fvec[j].prec + entry.lo)
                    min_prec = p if min_prec is None else min(min_prec, p)
                    continue
                term = entry * fvec[j]
                acc = term if acc is None else acc + term
            if acc is None:
                acc = Series.zero_at(self.entries[0][0].field, min_prec)
            elif min_prec is not None and min_prec < acc.prec:
                acc = Series.from_coeffs(acc.field, acc.lo, acc.coeffs, min_prec)
            out.append(acc)
        return out


def companion_phi(field: ExtField, n: int, k: int, prec: int, frobenius_power: int = 1) -> PhiMatrix:
    """The standard simple isocrystal of slope k/n: e_i -> e_{i+1}, e_n -> pi^k e_1."""
    z = Series.zero_at(field, prec)
    entries = [[z for _ in range(n)] for _ in range(n)]
    for i in range(n - 1):
        entries[i + 1][i] = Series.unit_pi_power(field, 0, prec)
    entries[0][n - 1] = Series.unit_pi_power(field, k, prec)
    return PhiMatrix(entries, frobenius_power)


def conjugate_phi(m: PhiMatrix, s: list[list[Series]], s_inv: list[list[Series]]) -> PhiMatrix:
    """Basis change of a semilinear map: S^{-1} M phi(S)."""
    n = m.size
    e = m.frobenius_power
    fs = [[s[i][j].frobenius(e) for j in range(n)] for i in range(n)]

    def matmul(a, b):
        return [[_sum_series([a[i][t] * b[t][j] for t in range(n)]) for j in range(n)] for i in range(n)]

    return PhiMatrix(matmul(matmul(s_inv, m.entries), fs), e)


def _sum_series(terms: list[Series]) -> Series:
    acc = terms[0]
    for t in terms[1:]:
        acc = acc + t
    return acc


def cyclic_relation(m: PhiMatrix, v: list[Series]) -> list[Series]:
    """Coefficients A_0..A_{n-1} with phi^n(v) = sum A_i phi^i(v).

    Raises ValueError when the iterates are not independent at working
    precision (v not a cyclic vector).
    """
    coeffs, _ = cyclic_relation_with_iterates(m, v)
    return coeffs


def cyclic_relation_with_iterates(m: PhiMatrix, v: list[Series]):
    n = m.size
    iterates = [v]
    for _ in range(n):
        iterates.append(m.apply(iterates[-1]))
    cols = iterates[:n]
    rhs = iterates[n]
    a = [[cols[j][i] for j in range(n)] for i in range(n)]  # a[i][j] = (phi^j v)_i
    b = list(rhs)
    perm = list(range(n))
    sol: list[Optional[Series]] = [None] * n
    rows = list(range(n))
    used_rows = []
    col_order = []
    for col in range(n):
        piv_row, piv_val = None, None
        for r in rows:
            s = a[r][col]
            if s.is_zero_at_precision():
                continue
            if piv_val is None or s.valuation < piv_val:
                piv_row, piv_val = r, s.valuation
        if piv_row is None:
            raise ValueError("vector is not cyclic at working precision")
        rows.remove(piv_row)
        used_rows.append(piv_row)
        col_order.append(col)
        inv = a[piv_row][col].inverse()
        piv_row_entries = a[piv_row]
        for r in rows:
            if a[r][col].is_zero_at_precision():
                continue
            factor = a[r][col] * inv
            row = a[r]
            for c in range(col, n):
                p = piv_row_entries[c]
                if not p.is_zero_at_precision():
                    row[c] = row[c] - factor * p
            b[r] = b[r] - factor * b[piv_row]
    out: list[Optional[Series]] = [None] * n
    for col, r in zip(reversed(col_order), reversed(used_rows)):
        acc = b[r]
        for c in range(col + 1, n):
            acc = acc - a[r][c] * out[c]
        out[col] = acc * a[r][col].inverse()
    return [s for s in out], iterates  # type: ignore[misc]


def check_relation(m: PhiMatrix, v: list[Series], coeffs: list[Series],
                   iterates: Optional[list[list[Series]]] = None) -> bool:
    """phi^n(v) - sum A_i phi^i(v) vanishes at the surviving precision."""
    n = m.size
    if iterates is None:
        iterates = [v]
        for _ in range(n):
            iterates.append(m.apply(iterates[-1]))
    for i in range(n):
        lhs = iterates[n][i]
        for j in range(n):
            lhs = lhs - coeffs[j] * iterates[j][i]
        if not lhs.is_zero_at_precision():
            return False
    return True


# ---------------------------------------------------------------------------
# randomized verification of the cyclic-vector bound
# ---------------------------------------------------------------------------

@dataclass
class CyclicBoundReport:
    n: int
    k: int
    q: int
    trials: int
    failures: list[dict]

    @property
    def ok(self) -> bool:
        return not self.failures


def random_conjugate(base: PhiMatrix, field: ExtField, prec: int, rng,
                     max_poly_len: int = 2) -> PhiMatrix:
    """S^{-1} M phi(S) for random unimodular S, applied as elementary moves.

    Conjugating by the elementary matrix E = I + x E_{ij} costs one row and
    one column operation; by a unit diagonal, one scaling per row/column.
    """
    n = base.size
    e_pow = base.frobenius_power
    m = [row[:] for row in base.entries]
    ops = int(rng.integers(max(2, n // 2), n + 2))
    for _ in range(ops):
        i, j = int(rng.integers(0, n)), int(rng.integers(0, n))
        if i == j:
            continue
        length = int(rng.integers(1, max_poly_len + 1))
        coeffs = field.random(rng, (length,))
        x = Series.from_coeffs(field, int(rng.integers(0, 2)), coeffs, prec)
        if x.is_zero_at_precision():
            continue
        fx = x.frobenius(e_pow)
        # row_i -= x * row_j  (left multiply by E^{-1})
        for c in range(n):
            m[i][c] = m[i][c] - x * m[j][c]
        # col_j += phi(x) * col_i  (right multiply by phi(E))
        for r in range(n):
            m[r][j] = m[r][j] + m[r][i] * fx
    # unit diagonal scaling: row_i *= u_i^{-1}, col_i *= phi(u_i)
    for t in range(n):
        u = field.random(rng)
        while field.is_zero(u):
            u = field.random(rng)
        ui = Series.constant(field, field.inv(u), prec)
        fu = Series.constant(field, u, prec).frobenius(e_pow)
        for c in range(n):
            m[t][c] = ui * m[t][c]
        for r in range(n):
            m[r][t] = m[r][t] * fu
    return PhiMatrix(m, e_pow)


def _run_bound_trial(field: ExtField, n: int, k: int, prec: int, rng) -> Optional[dict]:
    """One randomized check; None on pass, a failure record otherwise.

    Raises PrecisionError when the surviving precision cannot certify the
    claimed bounds (callers escalate precision and redraw the same trial).
    """
    base = companion_phi(field, n, k, prec)
    phi = random_conjugate(base, field, prec, rng)
    coeffs_a = None
    for _ in range(8):
        v = [Series.from_coeffs(field, 0, field.random(rng, (2,)), prec) for _ in range(n)]
        try:
            coeffs_a, iterates = cyclic_relation_with_iterates(phi, v)
            break
        except ValueError:
            continue
    if coeffs_a is None:
        return {"reason": "no cyclic vector found"}
    if not check_relation(phi, v, coeffs_a, iterates):
        return {"reason": "relation residual nonzero"}
    bad = []
    for i, a in enumerate(coeffs_a):
        bound = Fraction(k * (n - i), n)
        val = a.valuation
        if val is None:
            if a.prec < bound:
                raise PrecisionError("bound not certifiable at this precision")
        elif Fraction(val) < bound:
            bad.append((i, val, bound))
    if bad:
        return {"reason": "valuation bound violated", "detail": bad}
    if coeffs_a[0].valuation is None:
        # the polygon endpoint needs the exact valuation of the 0-th coefficient
        raise PrecisionError("constant coefficient vanished at working precision")
    pts = [(0, Fraction(0))] + [
        (n - i, Fraction(a.valuation) if a.valuation is not None else None)
        for i, a in enumerate(coeffs_a)
    ]
    hull, _slopes = newton_polygon(pts)
    if hull[0] != (0, Fraction(0)) or hull[-1] != (n, Fraction(k)) or len(hull) != 2:
        return {"reason": "polygon not a single segment", "hull": hull}
    return None


def verify_cyclic_bounds(n: int, k: int, trials: int, seed: int,
                            q: int = 2, ext_degree: Optional[int] = None,
                            precision: Optional[int] = None) -> CyclicBoundReport:
    """Random conjugates of the slope-k/n companion, random cyclic vectors:
    check ord(A_i) >= (n - i) * k / n and the one-segment Newton polygon.

    Precision starts low and doubles (same per-trial seed) whenever a trial
    cannot certify its bounds at the current working precision.
    """
    if n < 1 or not (0 <= k) or (n > 1 and gcd(n, k) != 1):
        raise ValueError("slope must be k/n in lowest terms")
    # a quadratic residue extension for the smallest prime keeps the
    # semilinear case covered without paying for it on every field
    e = ext_degree if ext_degree is not None else (2 if (n > 1 and q == 2) else 1)
    field = ExtField(q, e)
    base_prec = precision if precision is not None else n + k + 10
    failures = []
    for trial in range(trials):
        prec = base_prec
        while True:
            rng = np.random.default_rng([seed, trial, prec])
            try:
                record = _run_bound_trial(field, n, k, prec, rng)
                break
            except PrecisionError:
                prec *= 2
                if prec > 64 * base_prec:
                    record = {"reason": "precision escalation exhausted"}
                    break
        if record is not None:
            record["trial"] = trial
            failures.append(record)
    return CyclicBoundReport(n=n, k=k, q=q, trials=trials, failures=failures)


# ---------------------------------------------------------------------------
# tropical (valuation-only) re-derivation of the bound tables
# ---------------------------------------------------------------------------

def _relation_shape(t: GroupType, kappa: int):
    """Symbolic cyclic relation per family: (dimension, slope, slots) where
    slots maps exponent i to a list of (pi-power, variable-index or None)."""
    fam = t.family
    F = Fraction
    if fam == "A":
        n = t.rank_param
        slots = {0: [(kappa, None)]}
        for i in range(1, n):
            slots[i] = [(kappa, i)]
        return n, F(kappa, n), slots
    if fam == "C":
        m = t.rank_param
        slots = {0: [(kappa * m, None)]}
        for i in range(1, m + 1):
            slots[i] = [(kappa * (m - i), i)]
        for i in range(m + 1, 2 * m):
            slots[i] = [(0, 2 * m - i)]
        return 2 * m, F(kappa, 2), slots
    if fam == "2A":
        if t.rank_param % 2 == 0:
            raise ValueError("tropical route covers the odd-dimension unitary family only")
        n = t.rank_param
        m = n // 2
        slots = {0: [(0, None)]}
        for i in range(1, m + 1):
            slots[i] = [(0, i)]
        slots[m + 1] = [(0, m)]
        for i in range(m + 2, n):
            slots[i] = [(0, 2 * m - i + 1)]
        return n, F(0), slots
    if fam == "2D":
        m = t.rank_param
        slots = {0: [(kappa * m, None)]}
        for i in range(1, m):
            slots[i] = [(kappa * (m - i), i)]
        for i in range(m + 1, 2 * m):
            slots[i] = [(0, 2 * m - i)]
        return 2 * m, F(kappa, 2), slots
    raise ValueError(
        f"family {fam} has cross terms in its cyclic relation; no tropical route")


def tropical_bound_derivation(t: GroupType, kappa: int) -> list[Fraction]:
    """Apply the cyclic-vector bound slotwise and solve for each variable.

    Returns the certified lower bound for ord(a_i), i = 1..l, matching the
    apartment pairing route for the supported families.
    """
    if kappa not in t.kappa_range():
        raise ValueError(f"label {kappa} invalid for family {t.family}")
    dim, slope, slots = _relation_shape(t, kappa)
    nvars = max(v for terms in slots.values() for _, v in terms if v is not None)
    bounds: dict[int, Fraction] = {}
    for i, terms in slots.items():
        for power, var in terms:
            if var is None:
                continue
            b = (dim - i) * slope - power
            bounds[var] = max(bounds.get(var, b), b)
    return [bounds[i] for i in range(1, nvars + 1)]


def tropical_targets(t: GroupType) -> tuple[int, ...]:
    """Labels for which the tropical route is available for this family."""
    if t.family in ("A", "C", "2D"):
        return t.kappa_range()
    if t.family == "2A" and t.rank_param % 2 == 1:
        return (0,)
    return ()


# ---------------------------------------------------------------------------
# trial grids
# ---------------------------------------------------------------------------

def slope_grid(max_n: int = 6) -> list[tuple[int, int]]:
    """All lowest-terms slopes k/n with 1 <= n <= max_n, 0 <= k < n."""
    out = [(1, 0)]
    for n in range(2, max_n + 1):
        for k in range(1, n):
            if gcd(n, k) == 1:
                out.append((n, k))
    return out


def _grid_task(args):
    n, k, q, trials, seed, precision = args
    rep = verify_cyclic_bounds(n, k, trials, seed=seed, q=q, precision=precision)
    return (n, k, q, trials, rep.failures)


def run_bound_grid(trials_per_slope: int, seed: int, qs=(2, 3, 5),
                   max_n: int = 6, jobs: Optional[int] = None,
                   precision: Optional[int] = None) -> list[CyclicBoundReport]:
    """Spread trials_per_slope over the q list for every slope in the grid.

    Work is split across processes; results are merged in grid order, so the
    output is independent of scheduling.
    """
    import os
    from concurrent.futures import ProcessPoolExecutor

    tasks = []
    for n, k in slope_grid(max_n):
        share = trials_per_slope // len(qs)
        extra = trials_per_slope - share * len(qs)
        for idx, q in enumerate(qs):
            cnt = share + (1 if idx < extra else 0)
            if cnt:
                tasks.append((n, k, q, cnt, seed + idx, precision))
    # large dimensions first, so the expensive work never straggles at the end
    tasks.sort(key=lambda t: (-t[0], -t[1]))
    if jobs is None:
        jobs = min(len(os.sched_getaffinity(0)), 8)
    if jobs <= 1:
        results = [_grid_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_grid_task, tasks, chunksize=1))
    key = {(n, k, q): (i, j)
           for i, (n, k) in enumerate(slope_grid(max_n)) for j, q in enumerate(qs)}
    results.sort(key=lambda rec: key[(rec[0], rec[1], rec[2])])
    out = []
    for (n, k, q, cnt, failures) in results:
        out.append(CyclicBoundReport(n=n, k=k, q=q, trials=cnt, failures=failures))
    return out
