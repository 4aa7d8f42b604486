"""Finite fields GF(p^k), subfield embeddings and basis expansions.

Elements are integers in ``[0, p^k)``: the polynomial ``sum(a_i x^i)`` is
encoded as ``sum(a_i p^i)``.  Addition works digit-wise in base ``p`` (plain
XOR when ``p == 2``); multiplication goes through exp/log tables built from a
fixed primitive element.

The same base-``p`` digit arithmetic is used for syndrome and matrix indices
elsewhere in the package: a vector of ``m`` field elements packed as
``sum(s_i Q^i)`` is just a longer base-``p`` digit string, so vector addition
is :func:`digit_add` with ``m * k`` digits.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    CharMismatch,
    DegreeTooLarge,
    DivisionByZero,
    NoEmbedding,
    NotPrime,
)

MAX_DEGREE = 16
MAX_ORDER = 1 << 24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``; raise NotPrime otherwise."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1 or not is_prime(p):
        raise NotPrime(f"{q} is not a prime power")
    return p, k


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- digit-vector arithmetic ------------------------------------------------

def digit_add(x, y, p: int, ndigits: int):
    """Add base-``p`` digit vectors packed as integers (works on arrays)."""
    if p == 2:
        return np.bitwise_xor(x, y)
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    out = np.zeros(np.broadcast(x, y).shape, dtype=np.int64)
    scale = 1
    for _ in range(ndigits):
        out += ((x // scale + y // scale) % p) * scale
        scale *= p
    return out


def digit_neg(x, p: int, ndigits: int):
    if p == 2:
        return x
    x = np.asarray(x, dtype=np.int64)
    out = np.zeros_like(x)
    scale = 1
    for _ in range(ndigits):
        out += ((-(x // scale)) % p) * scale
        scale *= p
    return out


def digit_sub(x, y, p: int, ndigits: int):
    return digit_add(x, digit_neg(y, p, ndigits), p, ndigits)


# -- polynomials over F_p as coefficient lists (low degree first) -----------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    a = _poly_trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _poly_trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _monic_polys(p: int, degree: int):
    """Monic polynomials of the given degree in increasing encoding order."""
    for code in range(p ** degree):
        coeffs = [(code // p ** i) % p for i in range(degree)]
        yield coeffs + [1]


def _is_irreducible(m: list[int], p: int) -> bool:
    k = len(m) - 1
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(m, f, p):
                return False
    return True


def _to_digits(a: int, p: int, k: int) -> list[int]:
    return [(a // p ** i) % p for i in range(k)]


def _from_digits(digits, p: int) -> int:
    return sum(int(d) * p ** i for i, d in enumerate(digits))


class FiniteField:
    """The field GF(p^k) with the least-encoded irreducible modulus.

    Use :func:`field_create` rather than instantiating directly; it caches
    fields so that ``field_create(2, 2) is field_create(2, 2)``.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.order = p ** k
        self.modulus = modulus
        self.dtype = np.uint8 if self.order <= 256 else (
            np.uint16 if self.order <= 65536 else np.int32)
        self.generator = self._find_generator()
        n = self.order - 1
        exp = np.zeros(2 * n, dtype=np.int64)
        log = np.full(self.order, -1, dtype=np.int64)
        g = _to_digits(self.generator, p, k)
        cur = [1]
        for i in range(n):
            val = _from_digits(cur, p)
            exp[i] = val
            log[val] = i
            cur = _poly_mod(_poly_mul(cur, g, p), list(modulus), p)
        exp[n:] = exp[:n]
        self._exp = exp
        self._log = log

    # construction helpers
    def _mulmod_digits(self, a, b):
        return _poly_mod(_poly_mul(a, b, self.p), list(self.modulus), self.p)

    def _powmod_digits(self, a, e):
        result, base = [1], list(a)
        while e:
            if e & 1:
                result = self._mulmod_digits(result, base)
            base = self._mulmod_digits(base, base)
            e >>= 1
        return result

    def _find_generator(self) -> int:
        n = self.order - 1
        if n == 1:
            return 1
        factors = _prime_factors(n)
        for cand in range(1, self.order):
            d = _to_digits(cand, self.p, self.k)
            if all(self._powmod_digits(d, n // r) != [1] for r in factors):
                return cand
        raise AssertionError("no primitive element found")  # unreachable

    # -- arithmetic -------------------------------------------------------
    def add(self, a, b):
        return _scalarize(digit_add(_arr(a), _arr(b), self.p, self.k), a, b)

    def neg(self, a):
        return _scalarize(digit_neg(_arr(a), self.p, self.k), a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        x, y = np.broadcast_arrays(_arr(a), _arr(b))
        out = np.zeros(x.shape, dtype=np.int64)
        nz = (x != 0) & (y != 0)
        out[nz] = self._exp[self._log[x[nz]] + self._log[y[nz]]]
        return _scalarize(out, a, b)

    def inv(self, a):
        x = _arr(a)
        if np.any(x == 0):
            raise DivisionByZero("inverse of zero")
        out = self._exp[(self.order - 1 - self._log[x]) % (self.order - 1)]
        return _scalarize(out, a)

    def pow(self, a, e: int):
        x = _arr(a)
        out = np.where(x == 0, 0 if e else 1,
                       self._exp[(self._log[np.maximum(x, 1)] * e) % (self.order - 1)])
        return _scalarize(out, a)

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def is_element(self, a) -> bool:
        x = _arr(a)
        return bool(np.all((x >= 0) & (x < self.order)))

    def digits(self, a) -> tuple[int, ...]:
        return tuple(_to_digits(int(a), self.p, self.k))

    def from_digits(self, digits) -> int:
        return _from_digits(digits, self.p)

    def minus_one(self) -> int:
        return self.neg(1)

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (field_create, (self.p, self.k))


def _arr(a):
    return np.asarray(a, dtype=np.int64)


def _scalarize(out, *inputs):
    if all(np.ndim(x) == 0 for x in inputs):
        return int(out)
    return out


@functools.lru_cache(maxsize=None)
def _field_cached(p: int, k: int) -> FiniteField:
    for m in _monic_polys(p, k):
        if _is_irreducible(m, p):
            return FiniteField(p, k, tuple(m))
    raise AssertionError("no irreducible polynomial")  # unreachable


def field_create(p: int, k: int = 1, max_degree: int = MAX_DEGREE) -> FiniteField:
    """Return GF(p^k).

    The modulus is the first monic irreducible polynomial when candidates are
    ordered by the integer encoding of ``(c_0, ..., c_{k-1})``; the generator
    is the least-encoded primitive element.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1 or k > max_degree or p ** k > MAX_ORDER:
        raise DegreeTooLarge(f"degree {k} outside [1, {max_degree}] or order too large")
    return _field_cached(p, k)


def gf(q: int) -> FiniteField:
    """Field of order ``q`` (a prime power)."""
    p, k = prime_power(q)
    return field_create(p, k)


def field_arith(field: FiniteField, op: str, a, b=None):
    if op == "add":
        return field.add(a, b)
    if op == "mul":
        return field.mul(a, b)
    if op == "inv":
        return field.inv(a)
    if op == "neg":
        return field.neg(a)
    raise ValueError(f"unknown op {op!r}")


# -- embeddings -------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingMap:
    """Injective ring homomorphism ``sub -> sup`` stored as a lookup table."""

    sub: FiniteField
    sup: FiniteField
    table: np.ndarray = dc_field(repr=False)

    def __call__(self, a):
        out = self.table[_arr(a)]
        return int(out) if np.ndim(a) == 0 else out


def _poly_eval(field: FiniteField, coeffs, x):
    """Evaluate a polynomial with F_p-digit coefficients at field elements ``x``."""
    acc = np.zeros_like(_arr(x))
    for c in reversed(coeffs):
        acc = field.add(field.mul(acc, x), np.full_like(acc, c))
    return acc


@functools.lru_cache(maxsize=None)
def field_embed(sub: FiniteField, sup: FiniteField) -> EmbeddingMap:
    """Embed ``sub`` into ``sup`` by sending ``x`` to the least root of its modulus."""
    if sub.p != sup.p:
        raise CharMismatch(f"{sub} and {sup} have different characteristic")
    if sup.k % sub.k:
        raise NoEmbedding(f"{sub} does not embed in {sup}")
    elems = sup.elements()
    roots = np.flatnonzero(_poly_eval(sup, sub.modulus, elems) == 0)
    root = int(roots[0])
    # sub elements are polynomials in x over F_p; F_p sits in sup as constants.
    table = np.zeros(sub.order, dtype=np.int64)
    power = 1
    for i in range(sub.k):
        digit = (sub.elements() // sub.p ** i) % sub.p
        table = sup.add(table, sup.mul(digit, power))
        power = sup.mul(power, root)
    emb = EmbeddingMap(sub, sup, table)
    _verify_embedding(emb)
    return emb


def _verify_embedding(emb: EmbeddingMap, max_pairs: int = 1 << 20) -> None:
    sub, sup, t = emb.sub, emb.sup, emb.table
    if t[0] != 0 or t[1] != 1 or np.unique(t).size != sub.order:
        raise AssertionError("embedding is not injective or misses 0/1")
    if sub.order ** 2 <= max_pairs:
        a, b = np.meshgrid(sub.elements(), sub.elements(), indexing="ij")
    else:
        rng = np.random.default_rng(0)
        a = rng.integers(0, sub.order, max_pairs)
        b = rng.integers(0, sub.order, max_pairs)
    if not (np.array_equal(t[sub.add(a, b)], sup.add(t[a], t[b]))
            and np.array_equal(t[sub.mul(a, b)], sup.mul(t[a], t[b]))):
        raise AssertionError("embedding is not a homomorphism")


def embed(sub: FiniteField, sup: FiniteField, values):
    """Map ``values`` from ``sub`` into ``sup`` (identity when the fields match)."""
    if sub is sup:
        return values
    return field_embed(sub, sup)(values)


# -- basis expansion --------------------------------------------------------

@dataclass(frozen=True)
class MuBasis:
    """Coordinates of ``big`` over the subfield ``small`` in the power basis
    ``1, g, ..., g^(u-1)`` of the big field's generator ``g``."""

    big: FiniteField
    small: FiniteField
    u: int
    basis: tuple[int, ...]
    expand_table: np.ndarray = dc_field(repr=False)
    contract_table: np.ndarray = dc_field(repr=False)


@functools.lru_cache(maxsize=None)
def mu_basis(big: FiniteField, small: FiniteField) -> MuBasis:
    emb = field_embed(small, big)
    u = big.k // small.k
    basis = tuple(int(big.pow(big.generator, i)) for i in range(u))
    q = small.order
    idx = np.arange(q ** u, dtype=np.int64)
    contract = np.zeros(q ** u, dtype=np.int64)
    for i, g in enumerate(basis):
        coord = (idx // q ** i) % q
        contract = big.add(contract, big.mul(emb(coord), g))
    if np.unique(contract).size != big.order:
        raise AssertionError("power basis is not a basis")
    expand = np.zeros((big.order, u), dtype=np.int64)
    for i in range(u):
        expand[contract, i] = (idx // q ** i) % q
    return MuBasis(big, small, u, basis, expand, contract)


def mu_expand(basis: MuBasis, a) -> np.ndarray:
    """Coordinates ``(a_0, ..., a_{u-1})`` of ``a`` (vectorised on the last axis)."""
    return basis.expand_table[_arr(a)]


def mu_contract(basis: MuBasis, coords):
    c = _arr(coords)
    q = basis.small.order
    idx = (c * q ** np.arange(basis.u)).sum(axis=-1)
    out = basis.contract_table[idx]
    return int(out) if np.ndim(out) == 0 else out


def mu_matrix(basis: MuBasis, S):
    """Expand every entry of ``S`` row-wise: an ``r x c`` matrix over the big
    field becomes ``r x (u c)`` over the small field.

    Accepts a :class:`~crclab.linalg.FieldMatrix` (returns one) or a plain
    integer array.
    """
    from .linalg import FieldMatrix

    data = S.data if isinstance(S, FieldMatrix) else _arr(S)
    rows, cols = data.shape
    out = basis.expand_table[data].reshape(rows, cols * basis.u)
    if isinstance(S, FieldMatrix):
        return FieldMatrix(basis.small, out)
    return out


def mu_matrix_contract(basis: MuBasis, M):
    from .linalg import FieldMatrix

    data = M.data if isinstance(M, FieldMatrix) else _arr(M)
    rows, width = data.shape
    out = mu_contract(basis, data.reshape(rows, width // basis.u, basis.u))
    if isinstance(M, FieldMatrix):
        return FieldMatrix(basis.big, np.asarray(out))
    return np.asarray(out)
