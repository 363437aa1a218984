"""Prime fields F_p and their degree-m extensions F_{p^m}.

Elements of F_{p^m} are handled internally as integer *codes*: the element
c_0 + c_1 x + ... + c_{m-1} x^{m-1} has code sum(c_i * p**i).  With this
encoding F_p sits inside F_{p^m} as the codes 0..p-1, so base-field matrices
can be fed to extension-field routines unchanged.

All arithmetic goes through lookup tables, which is fine for the desk-scale
fields this package targets (q^m up to roughly 2^20).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from itertools import product

import numpy as np

_FULL_TABLE_LIMIT = 1024
_MAX_ORDER = 1 << 20


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


# -- polynomials over F_p, coefficient lists with constant term first --------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def is_irreducible(modulus: list[int] | tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= m/2."""
    f = list(modulus)
    m = len(f) - 1
    if m < 1 or f[-1] != 1:
        return False
    for d in range(1, m // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_mod(f, list(low) + [1], p):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree m, ordered by integer value.

    Comparing by sum(c_i p^i) is lexicographic order read from the leading
    coefficient down, so for (2, 3) this picks x^3 + x + 1.
    """
    for code in range(p**m):
        low = [(code // p**i) % p for i in range(m)]
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise ValueError(f"no irreducible polynomial of degree {m} over F_{p}")  # pragma: no cover


@dataclass(frozen=True)
class FieldParams:
    """Base prime ``p``, extension degree ``m`` and the defining modulus."""

    p: int
    m: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.m < 1:
            raise ValueError("extension degree m must be >= 1")
        mod = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.m + 1 or any(not 0 <= c < self.p for c in mod):
            raise ValueError(f"modulus must have {self.m + 1} coefficients in [0, {self.p})")
        if not is_irreducible(mod, self.p):
            raise ValueError(f"modulus {list(mod)} is not monic irreducible over F_{self.p}")
        if self.p**self.m > _MAX_ORDER:
            raise ValueError(f"field order {self.p}^{self.m} exceeds desk-scale limit")


class GF:
    """F_{p^m} with table-driven, numpy-broadcasting arithmetic on codes.

    Use :func:`field` to obtain instances; they are cached per parameter set.
    Every arithmetic method accepts Python ints or integer arrays.
    """

    def __init__(self, params: FieldParams):
        self.params = params
        self.p = params.p
        self.m = params.m
        self.order = params.p**params.m
        self.q = params.p
        self._pows = np.array([self.p**i for i in range(self.m)], dtype=np.int64)
        self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.m}, modulus={list(self.params.modulus)})"

    def __eq__(self, other):
        return isinstance(other, GF) and other.params == self.params

    def __hash__(self):
        return hash(self.params)

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    # -- table construction ------------------------------------------------

    def _digits_of(self, code: int) -> list[int]:
        return [(code // self.p**i) % self.p for i in range(self.m)]

    def _code_of(self, digits) -> int:
        return int(sum(int(d) * self.p**i for i, d in enumerate(digits)))

    def _slow_mul(self, a: int, b: int) -> int:
        da, db = self._digits_of(a), self._digits_of(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        red = _poly_mod(prod, list(self.params.modulus), self.p)
        return self._code_of(red)

    def _find_generator(self) -> int:
        n = self.order - 1
        primes = [d for d in range(2, n + 1) if n % d == 0 and is_prime(d)]
        for g in range(1, self.order):
            if all(self._slow_pow(g, n // r) != 1 for r in primes):
                return g
        raise AssertionError("multiplicative group has no generator")  # pragma: no cover

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _build_tables(self):
        Q = self.order
        codes = np.arange(Q, dtype=np.int64)
        self.digits = ((codes[:, None] // self._pows[None, :]) % self.p).astype(np.int64)
        g = self._find_generator()
        exp = np.zeros(2 * (Q - 1), dtype=np.int64)
        log = np.zeros(Q, dtype=np.int64)
        x = 1
        for k in range(Q - 1):
            exp[k] = x
            log[x] = k
            x = self._slow_mul(x, g)
        exp[Q - 1:] = exp[: Q - 1]
        self._exp, self._log = exp, log
        self.generator = g

        neg = ((-self.digits) % self.p) @ self._pows
        self.neg_t = neg.astype(np.int64)
        inv = np.zeros(Q, dtype=np.int64)
        inv[1:] = exp[(-(log[1:])) % (Q - 1)]
        self.inv_t = inv
        # a -> a^p
        frob = np.zeros(Q, dtype=np.int64)
        frob[1:] = exp[(log[1:] * self.p) % (Q - 1)]
        self.frob_t = frob

        if Q <= _FULL_TABLE_LIMIT:
            a = codes[:, None]
            b = codes[None, :]
            self.add_t = self._add_digits(a, b)
            self.sub_t = self._add_digits(a, self.neg_t[b])
            self.mul_t = self._mul_log(a, b)
        else:
            self.add_t = self.sub_t = self.mul_t = None

    def _add_digits(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        da = self.digits[a]
        db = self.digits[b]
        return ((da + db) % self.p) @ self._pows

    def _mul_log(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    # -- arithmetic on codes ----------------------------------------------

    def add(self, a, b):
        if self.add_t is not None:
            return self.add_t[a, b]
        return self._add_digits(np.asarray(a), np.asarray(b))

    def sub(self, a, b):
        if self.sub_t is not None:
            return self.sub_t[a, b]
        return self._add_digits(np.asarray(a), self.neg_t[b])

    def neg(self, a):
        return self.neg_t[a]

    def mul(self, a, b):
        if self.mul_t is not None:
            return self.mul_t[a, b]
        return self._mul_log(a, b)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.inv_t[a]

    def pow(self, a, e: int):
        e = int(e)
        a_arr = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a_arr)[()] if a_arr.ndim else 1
        if e < 0:
            a_arr = self.inv(a_arr)
            e = -e
        out = self._exp[(self._log[a_arr] * (e % (self.order - 1))) % (self.order - 1)]
        out = np.where(a_arr == 0, 0, out)
        return out[()] if out.ndim == 0 else out

    def frobenius(self, a, i: int = 1):
        """a -> a^(p^i); identity when i is a multiple of m."""
        if i < 0:
            raise ValueError("frobenius power must be >= 0")
        out = np.asarray(a, dtype=np.int64)
        for _ in range(i % self.m):
            out = self.frob_t[out]
        return out[()] if out.ndim == 0 else out

    def dot(self, a, b):
        """Inner product of two code vectors along the last axis."""
        prods = self.mul(a, b)
        return self.sum(prods, axis=-1)

    def sum(self, a, axis=-1):
        a = np.asarray(a, dtype=np.int64)
        if a.shape[axis] == 0:
            return np.zeros(np.delete(a.shape, axis % a.ndim), dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        d = self.digits[a].sum(axis=axis % a.ndim) % self.p
        return d @ self._pows

    def matmul(self, A, B):
        """Matrix product over the field for 2-d code arrays."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if A.shape[1] != B.shape[0]:
            raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
        prods = self.mul(A[:, :, None], B[None, :, :])
        return self.sum(prods, axis=1)

    # -- base-field expansion -------------------------------------------

    def expand(self, a):
        """Coefficient vector(s) over F_p in the basis 1, x, ..., x^(m-1).

        Vector input of shape (..., n) becomes (..., m, n): column j is the
        expansion of entry j.
        """
        d = self.digits[np.asarray(a, dtype=np.int64)]
        return np.moveaxis(d, -1, -2) if d.ndim >= 2 else d

    def contract(self, v):
        v = np.asarray(v, dtype=np.int64)
        if v.shape[-1] != self.m and v.ndim == 1:
            raise ValueError(f"expected {self.m} coefficients, got {v.shape[-1]}")
        if v.ndim == 1:
            return int((v % self.p) @ self._pows)
        return np.moveaxis(v, -2, -1) % self.p @ self._pows

    def is_base(self, a) -> bool:
        """True when every entry lies in the prime subfield."""
        return bool(np.all(np.asarray(a) < self.p))

    def element(self, coeffs) -> "ExtFieldElement":
        return ExtFieldElement(self, tuple(int(c) for c in coeffs))

    def from_code(self, code: int) -> "ExtFieldElement":
        return ExtFieldElement(self, tuple(self._digits_of(int(code))))

    @property
    def alpha(self) -> int:
        """Code of the polynomial-basis generator x (or 1 when m == 1)."""
        return self.p if self.m > 1 else 1


@functools.lru_cache(maxsize=None)
def _field_cached(params: FieldParams) -> GF:
    return GF(params)


def field(p: int, m: int = 1, modulus=None) -> GF:
    """Cached field constructor; default modulus per :func:`default_modulus`."""
    if modulus is None:
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        modulus = default_modulus(p, m)
    return _field_cached(FieldParams(p, m, tuple(modulus)))


def prime_field(F: GF) -> GF:
    return field(F.p, 1)


@dataclass(frozen=True)
class ExtFieldElement:
    """Immutable value wrapper around a single element of a :class:`GF`."""

    field: GF
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.field.m:
            raise ValueError(f"element needs exactly {self.field.m} coefficients")
        if any(not 0 <= c < self.field.p for c in self.coeffs):
            raise ValueError(f"coefficients must lie in [0, {self.field.p})")

    @property
    def code(self) -> int:
        return self.field._code_of(self.coeffs)

    def _wrap(self, code) -> "ExtFieldElement":
        return self.field.from_code(int(code))

    def _check(self, other: "ExtFieldElement"):
        if not isinstance(other, ExtFieldElement):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("field parameters differ")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.add(self.code, other.code))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.sub(self.code, other.code))

    def __neg__(self):
        return self._wrap(self.field.neg(self.code))

    def __mul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.mul(self.code, other.code))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.code, e))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"{list(self.coeffs)}"


def add(a: ExtFieldElement, b: ExtFieldElement) -> ExtFieldElement:
    return a + b


def mul(a: ExtFieldElement, b: ExtFieldElement) -> ExtFieldElement:
    return a * b


def inv(a: ExtFieldElement) -> ExtFieldElement:
    return a._wrap(a.field.inv(a.code))


def power(a: ExtFieldElement, e: int) -> ExtFieldElement:
    return a**e


def frobenius(a: ExtFieldElement, i: int) -> ExtFieldElement:
    return a._wrap(a.field.frobenius(a.code, i))


def expand(a: ExtFieldElement) -> list[int]:
    return list(a.coeffs)


def contract(F: GF, v) -> ExtFieldElement:
    if len(v) != F.m:
        raise ValueError(f"expected {F.m} coefficients, got {len(v)}")
    return F.element(v)
