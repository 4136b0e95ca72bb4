"""Exact arithmetic in GF(p^k) with integer-indexed elements.

Elements of the field of order q = p^k are identified with the integers
0..q-1: the base-p digits of an index, read little-endian, are the
coordinates of the element in the polynomial basis 1, x, x^2, ...
Index 0 is the additive identity and index 1 the multiplicative identity,
so the prime subfield occupies indices 0..p-1 with index arithmetic mod p.

Fields of order up to 256 carry dense q-by-q addition/multiplication
tables; every extension field additionally carries exp/log tables over a
multiplicative generator, so scalar and numpy-vectorised operations are
plain table lookups.  Larger prime fields use modular arithmetic directly.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import FieldTooLargeError, NotPrimePowerError

ORDER_LIMIT = 1 << 16  # largest supported field order
TABLE_LIMIT = 256      # largest order that gets dense q*q tables


# ---------------------------------------------------------------------------
# small helpers over F_p (coefficient lists, little-endian, not necessarily
# normalised)
# ---------------------------------------------------------------------------

def _factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise NotPrimePowerError."""
    if q < 2:
        raise NotPrimePowerError(f"field order must be >= 2, got {q}")
    p = None
    m = q
    for cand in range(2, q + 1):
        if cand * cand > q:
            break
        if q % cand == 0:
            p = cand
            break
    if p is None:
        p = q  # q itself is prime
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise NotPrimePowerError(f"{q} is not a prime power")
    return p, k


def _poly_mod(f: list[int], g: list[int], p: int) -> list[int]:
    """Remainder of f modulo monic g, coefficients in F_p."""
    f = [c % p for c in f]
    dg = len(g) - 1
    while len(f) > dg:
        c = f[-1]
        if c:
            off = len(f) - 1 - dg
            for i in range(dg):
                f[off + i] = (f[off + i] - c * g[i]) % p
        f.pop()
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def _is_irreducible(f: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    k = len(f) - 1
    for t in range(1, k // 2 + 1):
        for lower in itertools.product(range(p), repeat=t):
            g = list(lower) + [1]
            if not _poly_mod(f, g, p):
                return False
    return True


def _smallest_irreducible(p: int, k: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree k over F_p.

    Candidate coefficient tuples (c_0, ..., c_{k-1}) are compared low
    degree first.
    """
    for lower in itertools.product(range(p), repeat=k):
        if lower[0] == 0:
            continue  # root at 0
        f = list(lower) + [1]
        if _is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldSpec:
    """A concrete GF(p^k); construct through :func:`make_field`."""

    def __init__(self, p: int, k: int, irreducible: list[int]):
        self.p = p
        self.k = k
        self.q = p ** k
        self.irreducible = tuple(irreducible)
        q = self.q
        self._ppow = np.array([p ** i for i in range(k)], dtype=np.int64)
        if k >= 2:
            # base-p digit matrix: digits[a, i] = i-th digit of index a
            idx = np.arange(q, dtype=np.int64)
            self.digits = np.stack(
                [(idx // p ** i) % p for i in range(k)], axis=1
            )
            self._exp, self._log = self._build_exp_log()
        else:
            self.digits = None
            self._exp = self._log = None
        self.add_table = self.mul_table = self.inv_table = None
        if q <= TABLE_LIMIT:
            self.add_table, self.mul_table = self._build_tables()
            self.inv_table = np.array([0] + [self.inv(a) for a in range(1, q)],
                                      dtype=np.int64)

    # -- construction helpers ------------------------------------------------

    def _mul_digits(self, a: int, b: int) -> int:
        da = [(a // self.p ** i) % self.p for i in range(self.k)]
        db = [(b // self.p ** i) % self.p for i in range(self.k)]
        prod = _poly_mod(_poly_mul(da, db, self.p), list(self.irreducible), self.p)
        return sum(c * self.p ** i for i, c in enumerate(prod))

    def _build_exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        q = self.q
        for g in range(2, q):
            seen = np.zeros(q, dtype=bool)
            exp = np.zeros(q - 1, dtype=np.int64)
            x = 1
            ok = True
            for i in range(q - 1):
                if seen[x]:
                    ok = False
                    break
                seen[x] = True
                exp[i] = x
                x = self._mul_digits(x, g)
            if ok and x == 1:
                log = np.zeros(q, dtype=np.int64)
                log[exp] = np.arange(q - 1, dtype=np.int64)
                return exp, log
        raise AssertionError("no multiplicative generator found")  # unreachable

    def _build_tables(self) -> tuple[np.ndarray, np.ndarray]:
        q, p = self.q, self.p
        idx = np.arange(q, dtype=np.int64)
        if self.k == 1:
            add = (idx[:, None] + idx[None, :]) % p
            mul = (idx[:, None] * idx[None, :]) % p
            return add, mul
        dsum = (self.digits[:, None, :] + self.digits[None, :, :]) % p
        add = dsum @ self._ppow
        mul = self._exp[(self._log[:, None] + self._log[None, :]) % (q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        return add, mul

    # -- scalar arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.add_table is not None:
            return int(self.add_table[a, b])
        if self.k == 1:
            return (a + b) % self.p
        return int((self.digits[a] + self.digits[b]) % self.p @ self._ppow)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return int((-self.digits[a]) % self.p @ self._ppow)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.mul_table is not None:
            return int(self.mul_table[a, b])
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if self.inv_table is not None and a < self.q:
            v = int(self.inv_table[a])
            if v:
                return v
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.k == 1:
            return pow(a, e, self.p)
        return int(self._exp[(int(self._log[a]) * e) % (self.q - 1)])

    def from_int(self, c: int) -> int:
        """Embed the integer c as the field element c * 1."""
        return c % self.p

    def fermat_power_sum(self, k: int) -> int:
        """Sum of x^k over every x in the field, by direct summation."""
        if not 0 <= k <= self.q - 1:
            raise ValueError(f"exponent must lie in 0..{self.q - 1}")
        acc = 0
        for x in range(self.q):
            acc = self.add(acc, self.pow(x, k))
        return acc

    # -- vectorised arithmetic on numpy int64 index arrays --------------------

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.add_table is not None:
            return self.add_table[a, b]
        if self.k == 1:
            return (a + b) % self.p
        return ((self.digits[a] + self.digits[b]) % self.p) @ self._ppow

    def vneg(self, a: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return (-a) % self.p
        return ((-self.digits[a]) % self.p) @ self._ppow

    def vsub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        if self.mul_table is not None:
            return self.mul_table[a, b]
        if self.k == 1:
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vsum(self, a: np.ndarray) -> int:
        """Field sum of all entries."""
        if self.k == 1:
            return int(a.sum() % self.p)
        dig = self.digits[a].reshape(-1, self.k).sum(axis=0) % self.p
        return int(dig @ self._ppow)

    def vsum_axis(self, a: np.ndarray, axis: int) -> np.ndarray:
        """Field sum along one axis."""
        if self.k == 1:
            return a.sum(axis=axis) % self.p
        return self.digits[a].sum(axis=axis) % self.p @ self._ppow

    def apply_rows(self, rows: np.ndarray, mat: np.ndarray) -> np.ndarray:
        """Row-wise linear map: out[r, j] = sum_i mat[j, i] * rows[r, i]."""
        return self.compile_matrix(mat)(rows)

    def compile_matrix(self, mat: np.ndarray):
        """Bake the linear map of `mat` into a single integer matmul.

        Multiplication by a fixed field element is F_p-linear on base-p
        digit vectors, so an L-by-L matrix over GF(p^k) expands to an
        Lk-by-Lk matrix over F_p acting on digit-expanded rows.
        """
        if self.k == 1:
            mt = (mat.T % self.p).copy()
            p = self.p

            def apply(rows: np.ndarray) -> np.ndarray:
                return (rows @ mt) % p
            return apply

        k, p = self.k, self.p
        ln = mat.shape[0]
        big = np.zeros((ln * k, ln * k), dtype=np.int64)
        for j in range(ln):
            for i in range(ln):
                c = int(mat[j, i])
                if c:
                    for col in range(k):
                        e = self.mul(c, int(self._ppow[col]))
                        big[j * k:(j + 1) * k, i * k + col] = self.digits[e]
        big_t = big.T.copy()
        digits, ppow = self.digits, self._ppow

        def apply(rows: np.ndarray) -> np.ndarray:
            r = rows.shape[0]
            x = digits[rows].reshape(r, -1)
            y = (x @ big_t) % p
            return y.reshape(r, ln, k) @ ppow
        return apply

    def __repr__(self) -> str:  # pragma: no cover
        return f"FieldSpec(q={self.q}, p={self.p}, k={self.k})"


_FIELDS: dict[int, FieldSpec] = {}


def make_field(q: int) -> FieldSpec:
    """Return the canonical GF(q), cached per order.

    The defining irreducible polynomial is the lexicographically smallest
    monic irreducible of degree k over F_p (coefficients compared low
    degree first); for k = 1 the degenerate polynomial X is recorded.
    """
    if q in _FIELDS:
        return _FIELDS[q]
    p, k = _factor_prime_power(q)
    if q > ORDER_LIMIT:
        raise FieldTooLargeError(f"field order {q} exceeds limit {ORDER_LIMIT}")
    irreducible = [0, 1] if k == 1 else _smallest_irreducible(p, k)
    spec = FieldSpec(p, k, irreducible)
    _FIELDS[q] = spec
    return spec
