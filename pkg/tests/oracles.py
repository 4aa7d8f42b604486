"""Independent reference implementations used by the tests.

Everything here is deliberately naive: plain Python polynomial arithmetic,
itertools enumeration of ambient spaces and dual codes, and direct
Gaussian elimination.  Only element encodings are shared with the package.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


# -- polynomials over F_p, coefficient lists, lowest degree first ---------------

def digits(a: int, p: int, k: int) -> list[int]:
    return [(a // p ** i) % p for i in range(k)]


def undigits(d, p: int) -> int:
    return sum(c * p ** i for i, c in enumerate(d))


def poly_mulmod(a, b, mod, p):
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    k = len(mod) - 1
    lead_inv = pow(mod[-1], p - 2, p)
    for top in range(len(prod) - 1, k - 1, -1):
        c = prod[top] * lead_inv % p
        if c:
            for i, m in enumerate(mod):
                prod[top - k + i] = (prod[top - k + i] - c * m) % p
    return (prod + [0] * k)[:k]


class RefField:
    """Slow GF(p^k) given an explicit modulus (coefficients lowest first)."""

    def __init__(self, p: int, modulus: list[int]):
        self.p = p
        self.k = len(modulus) - 1
        self.mod = modulus
        self.order = p ** self.k
        self._mul = {}

    def add(self, a, b):
        p, k = self.p, self.k
        return undigits([(x + y) % p for x, y in zip(digits(a, p, k), digits(b, p, k))], p)

    def neg(self, a):
        p, k = self.p, self.k
        return undigits([(-x) % p for x in digits(a, p, k)], p)

    def mul(self, a, b):
        key = (a, b)
        if key not in self._mul:
            p, k = self.p, self.k
            self._mul[key] = undigits(poly_mulmod(digits(a, p, k), digits(b, p, k), self.mod, p), p)
        return self._mul[key]

    def inv(self, a):
        for b in range(1, self.order):
            if self.mul(a, b) == 1:
                return b
        raise ZeroDivisionError


def is_irreducible(mod: list[int], p: int) -> bool:
    """Brute force: no monic factor of degree 1..k/2 divides ``mod``."""
    k = len(mod) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            f = list(low) + [1]
            if poly_divides(f, mod, p):
                return False
    return True


def poly_divides(f, g, p):
    g = list(g)
    df = len(f) - 1
    inv = pow(f[-1], p - 2, p)
    for top in range(len(g) - 1, df - 1, -1):
        c = g[top] * inv % p
        if c:
            for i, x in enumerate(f):
                g[top - df + i] = (g[top - df + i] - c * x) % p
    return not any(g[:df])


# -- codes --------------------------------------------------------------------

def mat_vec(F, H, v):
    out = []
    for row in H:
        acc = 0
        for h, x in zip(row, v):
            acc = F.add(acc, F.mul(int(h), int(x)))
        out.append(acc)
    return tuple(out)


def all_vectors(Q: int, n: int):
    return itertools.product(range(Q), repeat=n)


def coset_min_weights(F, H) -> dict[tuple, int]:
    """Syndrome tuple -> minimum weight over the coset, by enumerating F^n."""
    best: dict[tuple, int] = {}
    for v in all_vectors(F.order, len(H[0])):
        s = mat_vec(F, H, v)
        w = sum(1 for x in v if x)
        if w < best.get(s, 1 << 30):
            best[s] = w
    return best


def dual_weights(F, H) -> set[int]:
    """Nonzero weights of the row space of ``H``."""
    m, n = len(H), len(H[0])
    out = set()
    for coeffs in all_vectors(F.order, m):
        word = [0] * n
        for c, row in zip(coeffs, H):
            if c:
                word = [F.add(a, F.mul(c, int(h))) for a, h in zip(word, row)]
        w = sum(1 for x in word if x)
        if w:
            out.add(w)
    return out


def min_distance(F, H, limit: int = 4):
    """Smallest support of a nonzero codeword, searched up to ``limit``."""
    n = len(H[0])
    zero = tuple([0] * len(H))
    for w in range(1, limit + 1):
        for support in itertools.combinations(range(n), w):
            for vals in itertools.product(range(1, F.order), repeat=w):
                v = [0] * n
                for i, a in zip(support, vals):
                    v[i] = a
                if mat_vec(F, H, v) == zero:
                    return w
    return ">4"


def rank_count(q: int, d: int, e: int, r: int) -> int:
    """Number of ``d x e`` matrices of rank ``r`` over F_q."""
    num = 1
    for i in range(r):
        num *= (q ** d - q ** i) * (q ** e - q ** i)
        num //= 1
    den = 1
    for i in range(r):
        den *= q ** r - q ** i
    return num // den


def frac_rank(rows) -> int:
    M = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def ref_rank(F, rows) -> int:
    """Gaussian elimination with the slow reference field."""
    M = [[int(x) for x in r] for r in rows]
    rank = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = F.inv(M[rank][c])
        M[rank] = [F.mul(inv, x) for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [F.add(a, F.neg(F.mul(f, b))) for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def ambient_intersection_array(F, H):
    """Equitable-partition test on the vectors themselves.

    Returns ``(b, c)`` or ``None`` when neighbour counts are not constant on
    a distance class.
    """
    n = len(H[0])
    best = coset_min_weights(F, H)
    cols = list(zip(*H))
    # syndrome change when coordinate i moves by delta
    shift = {(i, dl): tuple(F.mul(dl, int(h)) for h in cols[i])
             for i in range(n) for dl in range(1, F.order)}
    seen: dict[int, tuple[int, int]] = {}
    for v in all_vectors(F.order, n):
        s = mat_vec(F, H, v)
        d = best[s]
        down = up = 0
        for i in range(n):
            for a in range(F.order):
                if a == v[i]:
                    continue
                dl = F.add(a, F.neg(v[i]))
                dw = best[tuple(F.add(x, y) for x, y in zip(s, shift[i, dl]))]
                down += dw == d - 1
                up += dw == d + 1
        if seen.setdefault(d, (down, up)) != (down, up):
            return None
    rho = max(seen)
    return [seen[i][1] for i in range(rho)], [seen[i][0] for i in range(1, rho + 1)]
