"""Exact arithmetic in prime fields F_p and extensions F_{p^k}.

Elements are stored as coefficient vectors over F_p in the polynomial basis
and carry a canonical integer encoding enc(sum c_i * gamma^i) = sum c_i * p^i,
which is a bijection onto [0, p^k).  The encoding fixes all serialization.

Field construction, irreducible search and primitive-element search are
deterministic (smallest candidate in encoding order wins), so every derived
object is reproducible across runs.
"""

from __future__ import annotations

import functools
from typing import Iterator, Optional, Sequence

import numpy as np

ORDER_CAP = 2**31  # single-word arithmetic only
LOG_TABLE_CAP = 2**16  # log/exp tables built lazily below this order
DENSE_TABLE_CAP = 256  # 2-d add/mul tables (uint8) below this order


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# dense polynomial helpers over F_p (coefficient lists, lowest degree first)
# ---------------------------------------------------------------------------

def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    # m monic
    r = list(a)
    dm = len(m) - 1
    while len(r) - 1 >= dm and r:
        lead = r[-1]
        shift = len(r) - 1 - dm
        if lead:
            for i in range(dm + 1):
                r[shift + i] = (r[shift + i] - lead * m[i]) % p
        r.pop()
        _poly_trim(r)
    return r


def _poly_eval(c: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for ci in reversed(c):
        acc = (acc * x + ci) % p
    return acc


def poly_is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Exhaustive irreducibility test for a monic polynomial over F_p.

    Checks for roots, then trial-divides by every monic factor of degree
    up to deg/2.  Only meant for the desk-scale degrees used here.
    """
    k = len(coeffs) - 1
    if k < 1 or coeffs[-1] != 1:
        raise ValueError("polynomial must be monic of degree >= 1")
    if k == 1:
        return True
    for x in range(p):
        if _poly_eval(coeffs, x, p) == 0:
            return False
    if k <= 3:
        return True  # no root and degree <= 3 implies irreducible
    for dd in range(2, k // 2 + 1):
        for enc in range(p**dd):
            div = _enc_to_poly(enc, dd, p) + [1]
            if not _poly_mod(coeffs, div, p):
                return False
    return True


def _enc_to_poly(enc: int, k: int, p: int) -> list[int]:
    c = []
    for _ in range(k):
        c.append(enc % p)
        enc //= p
    return c


def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k over F_p.

    "Smallest" means lexicographically first in the canonical encoding of the
    non-leading coefficients, so the result is deterministic for fixed (p, k).
    Returned as a coefficient tuple (c0, ..., c_{k-1}, 1).
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if k < 2:
        raise ValueError("find_irreducible needs k >= 2")
    for enc in range(p**k):
        cand = _enc_to_poly(enc, k, p) + [1]
        if poly_is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("unreachable: an irreducible of every degree exists")


def _factorize(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class Field:
    """F_{p^k} with a fixed monic irreducible modulus (None iff k == 1)."""

    __slots__ = (
        "p", "k", "order", "modulus",
        "_exp", "_log", "_add2d", "_sub2d", "_mul2d", "_inv1d", "_neg1d",
        "_primitive",
    )

    def __init__(self, p: int, k: int = 1, modulus: Optional[Sequence[int]] = None):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if k < 1:
            raise ValueError("k must be >= 1")
        order = p**k
        if order > ORDER_CAP:
            raise ValueError(f"field order {order} exceeds cap {ORDER_CAP}")
        if k == 1:
            if modulus is not None:
                raise ValueError("prime field takes no modulus")
            self.modulus = None
        else:
            if modulus is None:
                modulus = find_irreducible(p, k)
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if not poly_is_irreducible(list(modulus), p):
                raise ValueError(f"modulus {modulus} is reducible over F_{p}")
            self.modulus = modulus
        self.p = p
        self.k = k
        self.order = order
        self._exp = None
        self._log = None
        self._add2d = None
        self._sub2d = None
        self._mul2d = None
        self._inv1d = None
        self._neg1d = None
        self._primitive = None

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.order})"

    def descriptor(self) -> str:
        """Serialize as `p k c0 ... ck` (modulus coefficients, empty for k=1)."""
        mod = " ".join(str(c) for c in (self.modulus or ()))
        return f"{self.p} {self.k}" + (f" {mod}" if mod else "")

    @staticmethod
    def from_descriptor(text: str) -> "Field":
        parts = [int(t) for t in text.split()]
        p, k = parts[0], parts[1]
        modulus = tuple(parts[2:]) or None
        return field_build(p, k, modulus)

    # -- element constructors ----------------------------------------------

    def from_enc(self, enc: int) -> "FieldElement":
        if not 0 <= enc < self.order:
            raise ValueError(f"encoding {enc} out of range for {self!r}")
        return FieldElement(self, tuple(_enc_to_poly(enc, self.k, self.p)))

    def __call__(self, value: int) -> "FieldElement":
        """Prime-subfield embedding of an integer (value mod p)."""
        c = [0] * self.k
        c[0] = value % self.p
        return FieldElement(self, tuple(c))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.k)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    def elements(self) -> Iterator["FieldElement"]:
        """All elements in canonical encoding order 0, 1, ..., order-1."""
        for e in range(self.order):
            yield self.from_enc(e)

    # -- scalar arithmetic on coefficient tuples ----------------------------

    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def _mul(self, a, b):
        if self.k == 1:
            return ((a[0] * b[0]) % self.p,)
        prod = _poly_mul(a, b, self.p)
        prod = _poly_mod(prod, list(self.modulus), self.p)
        prod += [0] * (self.k - len(prod))
        return tuple(prod)

    def _pow(self, a, e: int):
        if e < 0:
            return self._pow(self._inv(a), -e)
        result = self.one.coeffs
        base = a
        while e:
            if e & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            e >>= 1
        return result

    def _inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        # a^(q-2); fine at desk scale
        return self._pow(a, self.order - 2)

    # -- log/exp tables ------------------------------------------------------

    def _build_log_tables(self):
        if self.order > LOG_TABLE_CAP:
            raise ValueError(f"log tables unavailable for order {self.order}")
        g = self.primitive_element()
        q = self.order
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        cur = self.one
        for i in range(q - 1):
            exp[i] = cur.enc
            log[cur.enc] = i
            cur = cur * g
        exp[q - 1:] = exp[: q - 1]
        self._exp, self._log = exp, log

    @property
    def exp_table(self) -> np.ndarray:
        if self._exp is None:
            self._build_log_tables()
        return self._exp

    @property
    def log_table(self) -> np.ndarray:
        if self._log is None:
            self._build_log_tables()
        return self._log

    def primitive_element(self) -> "FieldElement":
        """Smallest generator of the multiplicative group, by encoding."""
        if self.order < 3:
            raise ValueError("primitive element needs field order >= 3")
        if self._primitive is not None:
            return self._primitive
        n = self.order - 1
        primes = _factorize(n)
        for enc in range(2, self.order):
            cand = self.from_enc(enc)
            if all(cand ** (n // ell) != self.one for ell in primes):
                self._primitive = cand
                return cand
        raise AssertionError("unreachable: F_q* is cyclic")

    # -- dense 2-d tables and vectorized arithmetic (order <= 256) ----------

    def _build_dense_tables(self):
        q = self.order
        if q > DENSE_TABLE_CAP:
            raise ValueError(f"dense tables unavailable for order {q}")
        enc = np.arange(q, dtype=np.int64)
        digits = np.zeros((self.k, q), dtype=np.int64)
        rest = enc.copy()
        for i in range(self.k):
            digits[i] = rest % self.p
            rest //= self.p
        weights = self.p ** np.arange(self.k, dtype=np.int64)
        add = np.zeros((q, q), dtype=np.int64)
        for i in range(self.k):
            add += weights[i] * ((digits[i][:, None] + digits[i][None, :]) % self.p)
        neg = np.zeros(q, dtype=np.int64)
        for i in range(self.k):
            neg += weights[i] * ((-digits[i]) % self.p)
        exp, log = self.exp_table, self.log_table
        mul = np.zeros((q, q), dtype=np.int64)
        nz = enc[1:]
        mul[np.ix_(nz, nz)] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        inv = np.zeros(q, dtype=np.int64)
        inv[nz] = exp[(q - 1 - log[nz]) % (q - 1)]
        self._add2d = add.astype(np.uint8)
        self._neg1d = neg.astype(np.uint8)
        self._sub2d = add[:, neg].astype(np.uint8)
        self._mul2d = mul.astype(np.uint8)
        self._inv1d = inv.astype(np.uint8)

    def _dense(self, name):
        if self._add2d is None:
            self._build_dense_tables()
        return getattr(self, name)

    @property
    def add2d(self) -> np.ndarray:
        return self._dense("_add2d")

    @property
    def sub2d(self) -> np.ndarray:
        return self._dense("_sub2d")

    @property
    def mul2d(self) -> np.ndarray:
        return self._dense("_mul2d")

    @property
    def inv1d(self) -> np.ndarray:
        return self._dense("_inv1d")

    @property
    def neg1d(self) -> np.ndarray:
        return self._dense("_neg1d")

    def varr(self, values) -> np.ndarray:
        """Encode a sequence of elements/encodings as a uint8 array."""
        out = [v.enc if isinstance(v, FieldElement) else int(v) for v in values]
        arr = np.asarray(out, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= self.order):
            raise ValueError("encoding out of range")
        return arr.astype(np.uint8)

    def vadd(self, a, b):
        return self.add2d[a, b]

    def vsub(self, a, b):
        return self.sub2d[a, b]

    def vmul(self, a, b):
        return self.mul2d[a, b]

    def vneg(self, a):
        return self.neg1d[a]

    def vinv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.inv1d[a]

    def vpow(self, a, e: int):
        a = np.asarray(a, dtype=np.uint8)
        if e == 0:
            return np.full(a.shape, self.one.enc, dtype=np.uint8)
        out = a.copy()
        for _ in range(e - 1):
            out = self.vmul(out, a)
        return out


class FieldElement:
    """Immutable element of a Field; coefficient tuple over F_p."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    @property
    def enc(self) -> int:
        e = 0
        for c in reversed(self.coeffs):
            e = e * self.field.p + c
        return e

    def _check(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.field(other)
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise ValueError("field mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field._add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field._sub(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return self._check(other).__sub__(self)

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field._pow(self.coeffs, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field._inv(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.order, self.coeffs))

    def __repr__(self):
        return f"GF({self.field.order}):{self.enc}"


@functools.lru_cache(maxsize=None)
def _field_cached(p: int, k: int, modulus):
    return Field(p, k, modulus)


def field_build(p: int, k: int = 1, modulus: Optional[Sequence[int]] = None) -> Field:
    """Build (or fetch the cached) F_{p^k}.

    With modulus omitted for k > 1, the deterministic find_irreducible choice
    is used, so repeated builds share tables and element encodings.
    """
    mod = tuple(modulus) if modulus is not None else None
    return _field_cached(p, k, mod)


def primitive_element(field: Field) -> FieldElement:
    return field.primitive_element()


def discrete_log(field: Field, base: FieldElement, target: FieldElement) -> int:
    """Smallest l with base^l == target, via baby-step giant-step.

    base must generate the full multiplicative group; target must be nonzero.
    """
    if target.is_zero():
        raise ValueError("discrete log of zero")
    n = field.order - 1
    primes = _factorize(n)
    if base.is_zero() or any(base ** (n // ell) == field.one for ell in primes):
        raise ValueError("base is not a primitive element")
    m = 1
    while m * m < n:
        m += 1
    table: dict[int, int] = {}
    cur = field.one
    for j in range(m):
        table.setdefault(cur.enc, j)
        cur = cur * base
    giant = (base ** m).inverse()
    cur = target
    for i in range(m + 1):
        j = table.get(cur.enc)
        if j is not None:
            return (i * m + j) % n
        cur = cur * giant
    raise AssertionError("unreachable: base generates the group")
