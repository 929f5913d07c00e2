"""Level-by-level solution of twisted Lang equations in unipotent truncations.

The solver finds g with g^{-1} * b phi(g) b^{-1} = y inside the upper
unitriangular group over F[[pi]]/pi^level, with b a diagonal matrix of
monomials.  Working through the root coordinates in order of height, each
step is a scalar equation eps * phi(x) - x = r:

- when eps is not a unit the equation is solved by a contraction iteration;
- when eps is a unit it reduces, coefficient by coefficient, to affine
  Frobenius equations over the residue field, which are F_q-linear; when such
  an equation has no solution, the residue tower is extended by adjoining a
  root of the (then irreducible) polynomial, and that root is the solution.

The field tower therefore grows exactly as far as the instance requires; a
configurable degree bound turns runaway growth into an explicit failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .ffield import TowerField


class TowerBoundExceeded(RuntimeError):
    def __init__(self, degree_needed: int, bound: int, poly_note: str):
        super().__init__(
            f"residue tower would need degree {degree_needed} > bound {bound} ({poly_note})")
        self.degree_needed = degree_needed
        self.bound = bound


# ---------------------------------------------------------------------------
# truncated Laurent scalars over a tower field
# ---------------------------------------------------------------------------

@dataclass
class TruncLaurent:
    """sum coeffs[i] pi^(lo + i), exact below pi^prec; coeffs in a TowerField."""

    tower: TowerField
    lo: int
    coeffs: list  # list of numpy vectors
    prec: int

    @staticmethod
    def zero(tower: TowerField, prec: int) -> "TruncLaurent":
        return TruncLaurent(tower, prec, [], prec)

    @staticmethod
    def monomial(tower: TowerField, unit, k: int, prec: int) -> "TruncLaurent":
        return TruncLaurent(tower, k, [unit % tower.q], prec).normalized()

    @staticmethod
    def from_levels(tower: TowerField, levels: Sequence, prec: int, lo: int = 0) -> "TruncLaurent":
        return TruncLaurent(tower, lo, [v % tower.q for v in levels], prec).normalized()

    def normalized(self) -> "TruncLaurent":
        coeffs = self.coeffs[: max(self.prec - self.lo, 0)]
        lead = 0
        while lead < len(coeffs) and not coeffs[lead].any():
            lead += 1
        if lead == len(coeffs):
            return TruncLaurent(self.tower, self.prec, [], self.prec)
        return TruncLaurent(self.tower, self.lo + lead, coeffs[lead:], self.prec)

    @property
    def valuation(self) -> Optional[int]:
        return None if not self.coeffs else self.lo

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int):
        i = k - self.lo
        if i < 0 or i >= len(self.coeffs):
            return self.tower.zero()
        return self.coeffs[i]

    def rebase(self, tower: TowerField) -> "TruncLaurent":
        return TruncLaurent(tower, self.lo, [tower.embed(c) for c in self.coeffs], self.prec)

    # arithmetic ---------------------------------------------------------------

    def __add__(self, other: "TruncLaurent") -> "TruncLaurent":
        t = self.tower
        prec = min(self.prec, other.prec)
        if self.is_zero():
            return TruncLaurent(t, other.lo, list(other.coeffs), prec).normalized()
        if other.is_zero():
            return TruncLaurent(t, self.lo, list(self.coeffs), prec).normalized()
        lo = min(self.lo, other.lo)
        hi = max(self.lo + len(self.coeffs), other.lo + len(other.coeffs))
        out = [t.zero() for _ in range(hi - lo)]
        for i, c in enumerate(self.coeffs):
            out[self.lo - lo + i] = t.add(out[self.lo - lo + i], c)
        for i, c in enumerate(other.coeffs):
            out[other.lo - lo + i] = t.add(out[other.lo - lo + i], c)
        return TruncLaurent(t, lo, out, prec).normalized()

    def __neg__(self) -> "TruncLaurent":
        return TruncLaurent(self.tower, self.lo, [self.tower.sub(self.tower.zero(), c) for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "TruncLaurent") -> "TruncLaurent":
        t = self.tower
        prec = min(self.prec + other.lo, other.prec + self.lo)
        if self.is_zero() or other.is_zero():
            return TruncLaurent.zero(t, prec)
        la, lb = len(self.coeffs), len(other.coeffs)
        out = [t.zero() for _ in range(la + lb - 1)]
        for i, a in enumerate(self.coeffs):
            if not a.any():
                continue
            for j, b in enumerate(other.coeffs):
                if b.any():
                    out[i + j] = t.add(out[i + j], t.mul(a, b))
        return TruncLaurent(t, self.lo + other.lo, out, prec).normalized()

    def frobenius(self, inverse: bool = False) -> "TruncLaurent":
        t = self.tower
        op = t.frobenius_inverse if inverse else t.frobenius
        return TruncLaurent(t, self.lo, [op(c) for c in self.coeffs], self.prec)

    def scalar_mul(self, unit) -> "TruncLaurent":
        t = self.tower
        return TruncLaurent(t, self.lo, [t.mul(unit, c) for c in self.coeffs], self.prec).normalized()

    def truncate(self, prec: int) -> "TruncLaurent":
        return TruncLaurent(self.tower, self.lo, self.coeffs[: max(prec - self.lo, 0)],
                            min(self.prec, prec)).normalized()

    def equal_mod(self, other: "TruncLaurent", level: int) -> bool:
        diff = (self - other).truncate(level)
        return diff.is_zero()


# ---------------------------------------------------------------------------
# scalar twisted-Lang equations
# ---------------------------------------------------------------------------

@dataclass
class LangState:
    """Mutable context: the residue tower grows as equations demand."""

    tower: TowerField
    max_degree: int = 64
    extensions: int = 0

    def require_degree(self, factor: int, note: str):
        if self.tower.dim * factor > self.max_degree:
            raise TowerBoundExceeded(self.tower.dim * factor, self.max_degree, note)

    def solve_residue(self, a, rhs):
        """x with a * x^q - x = rhs in the residue field, extending if needed.

        Returns (solution, rebase) where rebase is not None when the tower
        grew (callers must re-embed their data through it).
        """
        t = self.tower
        sol = t.solve_frobenius_affine(a, t.sub(t.zero(), t.one()), rhs)
        if sol is not None:
            return sol, None
        # no solution: z^q - (1/a) z - rhs/a is irreducible; adjoin its root
        inv_a = t.inv(a)
        minpoly = [t.sub(t.zero(), t.mul(inv_a, rhs)), t.sub(t.zero(), inv_a)]
        minpoly += [t.zero()] * (t.q - 2)
        minpoly += [t.one()]
        poly_note = "z^%d %s" % (t.q, [c.tolist() for c in minpoly[:-1]])
        self.require_degree(t.q, f"irreducible {poly_note}")
        new_tower = t.extend(minpoly)
        self.extensions += 1
        old_dim = t.dim
        self.tower = new_tower
        root = new_tower.zero()
        root[old_dim] = 1
        return root, new_tower


def solve_scalar_lang(state: LangState, eps: TruncLaurent, rhs: TruncLaurent,
                      prec: int):
    """u with eps * phi(u) - u = rhs (mod pi^prec).

    Returns (u, rebased) where rebased reports whether the tower changed; all
    TruncLaurent inputs must be rebased by the caller in that case (the
    returned u already lives in the final tower).
    """
    grew = False
    if eps.is_zero():
        return (-rhs).truncate(prec), grew
    k = eps.valuation
    if k != 0:
        # contraction: u = -rhs + eps phi(u) (k > 0), or the inverse form
        u = TruncLaurent.zero(state.tower, prec)
        span = prec - min(0, rhs.valuation if not rhs.is_zero() else 0) + abs(k) + 1
        steps = span // abs(k) + 2
        if k > 0:
            for _ in range(steps):
                u = (-rhs + eps * u.frobenius()).truncate(prec)
        else:
            inv_eps = _laurent_inverse(eps, prec)
            for _ in range(steps):
                u = ((inv_eps * (u + rhs)).frobenius(inverse=True)).truncate(prec)
        return u, grew
    # unit case: coefficientwise affine Frobenius equations
    t = state.tower
    lo = min(rhs.lo, 0) if not rhs.is_zero() else 0
    u_levels: list = []
    eps_local, rhs_local = eps, rhs
    for idx in range(prec - lo):
        exp = lo + idx
        acc = rhs_local.coeff(exp)
        # subtract sum_{s<idx} eps_{exp-s'} phi(u_{s'})
        for jdx in range(idx):
            e_coeff = eps_local.coeff(exp - (lo + jdx))
            if e_coeff.any():
                acc = t.sub(acc, t.mul(e_coeff, t.frobenius(u_levels[jdx])))
        sol, rebase = state.solve_residue(eps_local.coeff(0), acc)
        if rebase is not None:
            grew = True
            t = state.tower
            eps_local = eps_local.rebase(t)
            rhs_local = rhs_local.rebase(t)
            u_levels = [t.embed(v) for v in u_levels]
        u_levels.append(sol)
    u = TruncLaurent.from_levels(state.tower, u_levels, prec, lo=lo)
    return u, grew


def _laurent_inverse(x: TruncLaurent, prec: int) -> TruncLaurent:
    t = x.tower
    v = x.valuation
    rel = min(len(x.coeffs), x.prec - v)
    out = [t.zero() for _ in range(rel)]
    lead_inv = t.inv(x.coeffs[0])
    out[0] = lead_inv
    for k in range(1, rel):
        acc = t.zero()
        for j in range(max(0, k - len(x.coeffs) + 1), k):
            acc = t.add(acc, t.mul(out[j], x.coeff(v + k - j)))
        out[k] = t.sub(t.zero(), t.mul(lead_inv, acc))
    return TruncLaurent(t, -v, out, -v + rel).normalized()


# ---------------------------------------------------------------------------
# unipotent upper-triangular instances
# ---------------------------------------------------------------------------

@dataclass
class UnipotentInstance:
    """g^{-1} sigma_b(g) = y in the upper unitriangular n x n group.

    b is diagonal with entries unit * pi^exponent; sigma_b applies the
    residue Frobenius coefficientwise and conjugates by b.
    """

    n: int
    level: int
    b_exponents: tuple[int, ...]
    b_units: list            # tower elements
    y: dict                  # (i, j) -> TruncLaurent, i < j


def _mat_identity(tower: TowerField, n: int, prec: int) -> list[list[TruncLaurent]]:
    one = TruncLaurent.monomial(tower, tower.one(), 0, prec)
    zero = TruncLaurent.zero(tower, prec)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def _mat_mul(a, b, n):
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = None
            for t in range(n):
                term = a[i][t] * b[t][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def _unipotent_inverse(m, n, tower, prec):
    # (I + N)^{-1} = I - N + N^2 - ... with N strictly upper triangular
    ident = _mat_identity(tower, n, prec)
    nil = [[m[i][j] if i < j else TruncLaurent.zero(tower, prec) for j in range(n)] for i in range(n)]
    out = [row[:] for row in ident]
    power = [row[:] for row in ident]
    sign = -1
    for _ in range(n - 1):
        power = _mat_mul(power, nil, n)
        for i in range(n):
            for j in range(n):
                out[i][j] = out[i][j] + (power[i][j] if sign > 0 else -power[i][j])
        sign = -sign
    return out


def _rebase_matrix(m, tower):
    return [[x.rebase(tower) for x in row] for row in m]


def _sigma_b(m, n, tower, eps_matrix):
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = m[i][j].frobenius()
            if i != j:
                x = (eps_matrix[i][j] * x)
            row.append(x)
        out.append(row)
    return out


def solve_unipotent_lang(instance: UnipotentInstance, state: LangState,
                         work_prec: Optional[int] = None):
    """Solve the instance; returns (g, residual_ok) over the final tower."""
    n, level = instance.n, instance.level
    prec = work_prec if work_prec is not None else level + 2 * n * (1 + max(
        abs(e) for e in instance.b_exponents))
    tower = state.tower

    def eps_entry(i, j, tw):
        k = instance.b_exponents[i] - instance.b_exponents[j]
        u = tw.mul(tw.embed(instance.b_units[i]), tw.inv(tw.embed(instance.b_units[j])))
        return TruncLaurent.monomial(tw, u, k, prec)

    y = {key: v.rebase(tower).truncate(prec) for key, v in instance.y.items()}
    g = _mat_identity(tower, n, prec)

    for height in range(1, n):
        for i in range(0, n - height):
            j = i + height
            eps_mat = [[eps_entry(a, b, state.tower) if a != b else None for b in range(n)]
                       for a in range(n)]
            m = _mat_mul(_unipotent_inverse(g, n, state.tower, prec),
                         _sigma_b(g, n, state.tower, eps_mat), n)
            rhs = y[(i, j)] - m[i][j]
            eps = eps_entry(i, j, state.tower)
            x, grew = solve_scalar_lang(state, eps, rhs, prec)
            if grew:
                tower = state.tower
                g = _rebase_matrix(g, tower)
                y = {key: v.rebase(tower) for key, v in y.items()}
            # g <- g (I + x E_ij)
            for r in range(n):
                g[r][j] = g[r][j] + g[r][i] * x

    tower = state.tower
    eps_mat = [[eps_entry(a, b, tower) if a != b else None for b in range(n)] for a in range(n)]
    m = _mat_mul(_unipotent_inverse(g, n, tower, prec), _sigma_b(g, n, tower, eps_mat), n)
    ok = True
    for (i, j), target in y.items():
        if not m[i][j].equal_mod(target, level):
            ok = False
    return g, ok


# ---------------------------------------------------------------------------
# the randomized experiment
# ---------------------------------------------------------------------------

@dataclass
class LangLiftReport:
    trials: int
    solved: int
    failures: list
    max_tower_degree: int

    @property
    def ok(self) -> bool:
        return not self.failures


def random_instance(n: int, level: int, q: int, rng, tower: TowerField,
                    exponent_range: tuple[int, int] = (-1, 1)) -> UnipotentInstance:
    exps = tuple(int(rng.integers(exponent_range[0], exponent_range[1] + 1)) for _ in range(n))
    units = []
    for _ in range(n):
        u = tower.random(rng)
        while tower.is_zero(u):
            u = tower.random(rng)
        units.append(u)
    y = {}
    for i in range(n):
        for j in range(i + 1, n):
            levels = [tower.random(rng) for _ in range(level)]
            y[(i, j)] = TruncLaurent.from_levels(tower, levels, level)
    return UnipotentInstance(n=n, level=level, b_exponents=exps, b_units=units, y=y)


def lang_lift_experiment(trials: int, seed: int, n: int = 3, level: int = 4,
                         q: int = 2, max_degree: int = 64) -> LangLiftReport:
    """Random instances, each starting from the prime residue field."""
    failures = []
    solved = 0
    max_dim = 1
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        state = LangState(tower=TowerField(q), max_degree=max_degree)
        inst = random_instance(n, level, q, rng, state.tower)
        try:
            _g, ok = solve_unipotent_lang(inst, state)
        except TowerBoundExceeded as exc:
            failures.append({"trial": trial, "reason": str(exc)})
            continue
        max_dim = max(max_dim, state.tower.dim)
        if not ok:
            failures.append({"trial": trial, "reason": "residual does not vanish"})
        else:
            solved += 1
    return LangLiftReport(trials=trials, solved=solved, failures=failures,
                          max_tower_degree=max_dim)
