"""Finite fields: flat extensions F_{q^E} and dynamically grown towers.

Two representations serve different needs:

- :class:`ExtField` is F_q[x]/(f) with a deterministic irreducible modulus,
  elements as fixed-length numpy coefficient vectors.  Used by the truncated
  series arithmetic, where the degree is chosen up front.
- :class:`TowerField` grows by adjoining roots of explicit irreducible
  polynomials (the ones produced by unsolvable Frobenius-affine equations).
  Elements are coefficient vectors over the product basis, so extending the
  tower embeds old elements by zero padding; no root-finding is ever needed.

q is always prime here.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

# ---------------------------------------------------------------------------
# polynomial helpers over F_q (dense coefficient tuples, lowest degree first)
# ---------------------------------------------------------------------------

def _poly_trim(p: tuple[int, ...]) -> tuple[int, ...]:
    i = len(p)
    while i > 0 and p[i - 1] == 0:
        i -= 1
    return p[:i]


def _poly_mul(a, b, q):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return _poly_trim(tuple(out))


def _poly_mod(a, f, q):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], q - 2, q)
    while len(a) - 1 >= df and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        coeff = (a[-1] * inv_lead) % q
        shift = len(a) - 1 - df
        for i, c in enumerate(f):
            a[shift + i] = (a[shift + i] - coeff * c) % q
        a.pop()
    return _poly_trim(tuple(a))


def _poly_powmod(a, e, f, q):
    result = (1,)
    base = _poly_mod(a, f, q)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, q), f, q)
        base = _poly_mod(_poly_mul(base, base, q), f, q)
        e >>= 1
    return result


def _poly_gcd(a, b, q):
    a, b = _poly_trim(tuple(x % q for x in a)), _poly_trim(tuple(x % q for x in b))
    while b:
        inv_lead = pow(b[-1], q - 2, q)
        r = list(a)
        while len(r) >= len(b) and any(r):
            if r[-1] == 0:
                r.pop()
                continue
            coeff = (r[-1] * inv_lead) % q
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[shift + i] = (r[shift + i] - coeff * c) % q
            r.pop()
        a, b = b, _poly_trim(tuple(r))
    return a


def is_irreducible(f: Sequence[int], q: int) -> bool:
    f = _poly_trim(tuple(x % q for x in f))
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    # x^(q^n) == x mod f, and gcd(x^(q^(n/p)) - x, f) == 1 for prime p | n
    x = (0, 1)
    if _poly_powmod(x, q ** n, f, q) != _poly_mod(x, f, q):
        return False
    m = n
    primes = set()
    d = 2
    while d * d <= m:
        while m % d == 0:
            primes.add(d)
            m //= d
        d += 1
    if m > 1:
        primes.add(m)
    for p in primes:
        g = _poly_powmod(x, q ** (n // p), f, q)
        diff = list(g) + [0] * (2 - len(g))
        diff[1] = (diff[1] - 1) % q
        if len(_poly_gcd(tuple(diff), f, q)) > 1:
            return False
    return True


_MODULUS_CACHE: dict[tuple[int, int], tuple[int, ...]] = {}


def irreducible_modulus(q: int, degree: int) -> tuple[int, ...]:
    """Deterministic monic irreducible of the given degree: smallest when the
    lower coefficient vector is read as a base-q number."""
    key = (q, degree)
    if key in _MODULUS_CACHE:
        return _MODULUS_CACHE[key]
    if degree == 1:
        out = (0, 1)
        _MODULUS_CACHE[key] = out
        return out
    for code in range(q ** degree):
        coeffs = []
        c = code
        for _ in range(degree):
            coeffs.append(c % q)
            c //= q
        f = tuple(coeffs) + (1,)
        if is_irreducible(f, q):
            _MODULUS_CACHE[key] = f
            return f
    raise RuntimeError("no irreducible polynomial found")


# ---------------------------------------------------------------------------
# flat extension fields with vectorized numpy arithmetic
# ---------------------------------------------------------------------------

class ExtField:
    """F_{q^E} = F_q[x]/(f), elements as length-E int arrays (stackable)."""

    def __init__(self, q: int, degree: int = 1, modulus: Optional[Sequence[int]] = None):
        self.q = q
        self.degree = degree
        if modulus is None:
            modulus = irreducible_modulus(q, degree)
        self.modulus = tuple(int(c) % q for c in modulus)
        if len(self.modulus) != degree + 1:
            raise ValueError("modulus degree mismatch")
        # reduction rows: x^(degree + k) as a length-E vector, k = 0..degree-2
        red = []
        cur = [(-c) % q for c in self.modulus[:-1]]
        red.append(list(cur))
        for _ in range(degree - 2):
            nxt = [0] + cur[:-1]
            carry = cur[-1]
            nxt = [(a + carry * b) % q for a, b in zip(nxt, red[0])]
            red.append(nxt)
            cur = nxt
        self._reduction = np.array(red, dtype=np.int64) if red else np.zeros((0, degree), dtype=np.int64)
        self._frob_matrix_cache: dict[int, np.ndarray] = {}

    # elements -------------------------------------------------------------

    def zero(self, shape=()) -> np.ndarray:
        return np.zeros(tuple(shape) + (self.degree,), dtype=np.int64)

    def one(self, shape=()) -> np.ndarray:
        out = self.zero(shape)
        out[..., 0] = 1
        return out

    def from_int(self, n: int) -> np.ndarray:
        out = self.zero()
        out[0] = n % self.q
        return out

    def gen(self) -> np.ndarray:
        out = self.zero()
        if self.degree == 1:
            out[0] = 1 % self.q
        else:
            out[1] = 1
        return out

    def random(self, rng, shape=()) -> np.ndarray:
        return rng.integers(0, self.q, size=tuple(shape) + (self.degree,), dtype=np.int64)

    # arithmetic (vectorized over leading axes) ------------------------------

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def neg(self, a):
        return (-a) % self.q

    def _reduce_poly(self, wide: np.ndarray) -> np.ndarray:
        # wide: (..., 2E-1) convolution output
        e = self.degree
        low = wide[..., :e].copy()
        if e == 2 and wide.shape[-1] == 3:
            low += wide[..., 2:3] * self._reduction[0]
            low %= self.q
            return low
        if wide.shape[-1] > e:
            high = wide[..., e:]
            low = (low + np.matmul(high, self._reduction[: high.shape[-1]])) % self.q
        return low % self.q

    def mul(self, a, b):
        e = self.degree
        if e == 1:
            return (a * b) % self.q
        wide_shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (2 * e - 1,)
        wide = np.zeros(wide_shape, dtype=np.int64)
        for i in range(e):
            wide[..., i : i + e] += a[..., i : i + 1] * b
        return self._reduce_poly(wide % self.q)

    def is_zero(self, a) -> bool:
        return not np.any(a)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("finite field inverse of zero")
        # a^(q^E - 2)
        return self.pow(a, self.q ** self.degree - 2)

    def pow(self, a, n: int):
        result = self.one(a.shape[:-1])
        base = a % self.q
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    # Frobenius ---------------------------------------------------------------

    def frobenius_matrix(self, power: int = 1) -> np.ndarray:
        """Matrix of x -> x^(q^power) on the F_q-vector space F_{q^E}."""
        power = power % self.degree if self.degree > 1 else 0
        cached = self._frob_matrix_cache.get(power)
        if cached is not None:
            return cached
        e = self.degree
        cols = []
        for i in range(e):
            basis = self.zero()
            basis[i] = 1
            cols.append(self.pow(basis, self.q ** power))
        m = np.stack(cols, axis=1) % self.q
        self._frob_matrix_cache[power] = m
        return m

    def frobenius(self, a, power: int = 1):
        if self.degree == 1:
            return a % self.q
        m = self.frobenius_matrix(power)
        return np.matmul(a, m.T) % self.q


# ---------------------------------------------------------------------------
# towers grown by adjoining explicit roots
# ---------------------------------------------------------------------------

class TowerField:
    """F_q-algebra that is a field, with a multiplication structure tensor.

    Elements are int vectors of length ``dim``.  ``extend`` adjoins a root of
    a monic irreducible polynomial with coefficients in the current field and
    returns the new tower; old element vectors embed by zero padding.
    """

    def __init__(self, q: int, dim: int = 1, tensor: Optional[np.ndarray] = None,
                 history: tuple = ()):
        self.q = q
        self.dim = dim
        if tensor is None:
            tensor = np.ones((1, 1, 1), dtype=np.int64)
        self.tensor = tensor  # tensor[i, j, k]: coeff of e_k in e_i * e_j
        self.history = history
        self._frob: Optional[np.ndarray] = None

    # elements ---------------------------------------------------------------

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def one(self) -> np.ndarray:
        out = self.zero()
        out[0] = 1
        return out

    def from_int(self, n: int) -> np.ndarray:
        out = self.zero()
        out[0] = n % self.q
        return out

    def embed(self, v: np.ndarray) -> np.ndarray:
        out = self.zero()
        out[: len(v)] = v
        return out

    def random(self, rng) -> np.ndarray:
        return rng.integers(0, self.q, size=self.dim, dtype=np.int64)

    # arithmetic ---------------------------------------------------------------

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def mul(self, a, b):
        return np.einsum("i,j,ijk->k", a, b, self.tensor) % self.q

    def mul_matrix(self, a) -> np.ndarray:
        """Matrix of left multiplication by a."""
        return np.einsum("i,ijk->kj", a, self.tensor) % self.q

    def is_zero(self, a) -> bool:
        return not np.any(a)

    def pow(self, a, n: int):
        result = self.one()
        base = a % self.q
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError
        return self.pow(a, self.q ** self.dim - 2)

    def frobenius_matrix(self) -> np.ndarray:
        if self._frob is None:
            cols = []
            for i in range(self.dim):
                e = self.zero()
                e[i] = 1
                cols.append(self.pow(e, self.q))
            self._frob = np.stack(cols, axis=1) % self.q
        return self._frob

    def frobenius(self, a, power: int = 1):
        m = self.frobenius_matrix()
        out = a % self.q
        for _ in range(power % max(self.dim, 1) if self.dim > 1 else 0):
            out = (m @ out) % self.q
        if self.dim == 1:
            return a % self.q
        return out

    def frobenius_inverse(self, a):
        # Frobenius has order dim on a field of dimension dim over F_q
        if self.dim == 1:
            return a % self.q
        return self.frobenius(a, self.dim - 1)

    # extensions -----------------------------------------------------------------

    def extend(self, minpoly: Sequence[np.ndarray]) -> "TowerField":
        """Adjoin a root of the monic polynomial with the given coefficients
        (length g+1, entries in this field, last = 1)."""
        g = len(minpoly) - 1
        if g < 2:
            raise ValueError("extension degree must be >= 2")
        if not np.array_equal(minpoly[-1] % self.q, self.one()):
            raise ValueError("minpoly must be monic")
        d0, d1 = self.dim, self.dim * g
        # z^g = -sum minpoly[k] z^k ; compute z^e for e = g..2g-2 as rows of
        # old-field coefficients per z-power
        zpow = {e: [self.zero() for _ in range(g)] for e in range(g, 2 * g - 1)}
        base = [self.sub(self.zero(), minpoly[k]) for k in range(g)]
        zpow[g] = list(base)
        for e in range(g + 1, 2 * g - 1):
            prev = zpow[e - 1]
            shifted = [self.zero()] + prev[:-1]
            carry = prev[g - 1]
            zpow[e] = [self.add(s, self.mul(carry, base[k])) for k, s in enumerate(shifted)]
        t_new = np.zeros((d1, d1, d1), dtype=np.int64)
        t_old = self.tensor
        for a in range(g):
            for b in range(g):
                e = a + b
                # (x z^a)(y z^b) = (xy) z^e
                block = t_old  # (i, j, k)
                if e < g:
                    t_new[a * d0:(a + 1) * d0, b * d0:(b + 1) * d0, e * d0:(e + 1) * d0] = block
                else:
                    for c in range(g):
                        coeff = zpow[e][c]
                        # scale the old-field product by coeff
                        m = self.mul_matrix(coeff)  # (k', k)
                        contrib = np.einsum("ijk,lk->ijl", block, m) % self.q
                        t_new[a * d0:(a + 1) * d0, b * d0:(b + 1) * d0, c * d0:(c + 1) * d0] += contrib
        t_new %= self.q
        return TowerField(self.q, d1, t_new, self.history + (tuple(v.tobytes() for v in minpoly),))

    # Frobenius-affine equations ---------------------------------------------

    def solve_frobenius_affine(self, a, b, t, power: int = 1) -> Optional[np.ndarray]:
        """Solve a * x^(q^power) + b * x = t, or return None if unsolvable."""
        f = self.frobenius_matrix()
        fp = np.linalg.matrix_power(f, power % max(self.dim, 1)) % self.q if self.dim > 1 else np.ones((1, 1), dtype=np.int64)
        m = (self.mul_matrix(a) @ fp + self.mul_matrix(b)) % self.q
        return _solve_mod_prime(m, t % self.q, self.q)


def _solve_mod_prime(m: np.ndarray, rhs: np.ndarray, q: int) -> Optional[np.ndarray]:
    n = m.shape[0]
    a = np.concatenate([m % q, (rhs % q).reshape(-1, 1)], axis=1).astype(np.int64)
    row = 0
    pivots = []
    for col in range(n):
        piv = None
        for r in range(row, n):
            if a[r, col] % q:
                piv = r
                break
        if piv is None:
            continue
        a[[row, piv]] = a[[piv, row]]
        inv = pow(int(a[row, col]), q - 2, q)
        a[row] = (a[row] * inv) % q
        for r in range(n):
            if r != row and a[r, col]:
                a[r] = (a[r] - a[r, col] * a[row]) % q
        pivots.append(col)
        row += 1
    for r in range(row, n):
        if a[r, n] % q:
            return None
    out = np.zeros(n, dtype=np.int64)
    for r, col in enumerate(pivots):
        out[col] = a[r, n]
    return out
