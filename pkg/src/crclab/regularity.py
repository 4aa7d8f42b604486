"""Complete regularity, intersection arrays and uniform packing.

Neighbour counts are taken on syndromes: for a linear code the distance from
``x + alpha e_i`` to the code is the weight of the coset with syndrome
``s + alpha h_i``, so the layer transition counts of a vector depend only on
its syndrome.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .code import (
    CosetTable,
    LinearCode,
    coset_weight_distributions,
    coset_weights,
    outer_distance,
    DEFAULT_MAX_AMBIENT,
    DEFAULT_MAX_DUAL,
)


@dataclass(frozen=True)
class IntersectionArray:
    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        if len(self.b) != len(self.c):
            raise ValueError("b and c must have the same length")

    @property
    def rho(self) -> int:
        return len(self.b)

    def a(self, degree: int) -> tuple[int, ...]:
        """``a_l = degree - b_l - c_l`` for ``l = 0..rho`` (``c_0 = b_rho = 0``)."""
        b = self.b + (0,)
        c = (0,) + self.c
        return tuple(degree - bl - cl for bl, cl in zip(b, c))

    def __str__(self):
        return f"({', '.join(map(str, self.b))}; {', '.join(map(str, self.c))})"

    def as_dict(self):
        return {"b": list(self.b), "c": list(self.c)}


@dataclass(frozen=True)
class NotCR:
    """Two syndromes of weight ``layer`` whose neighbour counts differ."""

    layer: int
    syndromes: tuple[int, int]
    counts: tuple[tuple[int, int], tuple[int, int]]  # (c-count, b-count) per syndrome

    def __str__(self):
        (s1, s2), (k1, k2) = self.syndromes, self.counts
        return (f"layer {self.layer}: syndrome {s1} has (c, b) = {k1}, "
                f"syndrome {s2} has {k2}")

    def as_dict(self):
        return {"layer": self.layer, "syndromes": list(self.syndromes),
                "counts": [list(self.counts[0]), list(self.counts[1])]}


def layer_counts(table: CosetTable) -> tuple[np.ndarray, np.ndarray]:
    """For every syndrome, how many generators (with multiplicity) step down
    one layer and how many step up one layer."""
    code = table.code
    w = table.weights.astype(np.int16)
    idx = np.arange(table.size, dtype=np.int64)
    down = np.zeros(table.size, dtype=np.int32)
    up = np.zeros(table.size, dtype=np.int32)
    for g in table.generators:
        wn = w[code.add_index(idx, g)]
        down += wn == w - 1
        up += wn == w + 1
    return down, up


def check_completely_regular(table: CosetTable) -> IntersectionArray | NotCR:
    """Intersection array if the distance partition is equitable, else a witness."""
    down, up = layer_counts(table)
    w = table.weights
    b, c = [], []
    for layer in range(table.rho + 1):
        members = np.flatnonzero(w == layer)
        pairs = np.stack([down[members], up[members]], axis=1)
        bad = np.flatnonzero((pairs != pairs[0]).any(axis=1))
        if bad.size:
            s1, s2 = int(members[0]), int(members[bad[0]])
            return NotCR(layer, (s1, s2), (tuple(int(x) for x in pairs[0]),
                                           tuple(int(x) for x in pairs[bad[0]])))
        if layer > 0:
            c.append(int(pairs[0, 0]))
        if layer < table.rho:
            b.append(int(pairs[0, 1]))
    return IntersectionArray(b, c)


def predicted_intersection_array(q: int, u: int, m_a: int, m_b: int) -> IntersectionArray:
    """Closed-form array of the Kronecker code ``H_{m_a}^{q^u} (x) H_{m_b}^q``:

    ``b_l = (q^{u m_a} - q^l)(q^{m_b} - q^l)/(q - 1)`` and
    ``c_l = q^{l-1}(q^l - 1)/(q - 1)`` with ``rho = min(u m_a, m_b)``.
    """
    rho = min(u * m_a, m_b)
    A, B = q ** (u * m_a), q ** m_b
    b = []
    for ell in range(rho):
        num = (A - q ** ell) * (B - q ** ell)
        assert num % (q - 1) == 0
        b.append(num // (q - 1))
    c = [q ** (ell - 1) * (q ** ell - 1) // (q - 1) for ell in range(1, rho + 1)]
    return IntersectionArray(b, c)


def verify_mu_recurrence(table: CosetTable, ia: IntersectionArray) -> bool:
    """``mu_i b_i == mu_{i+1} c_{i+1}`` for all ``i < rho``."""
    mu = table.mu
    if len(mu) != ia.rho + 1:
        return False
    return all(mu[i] * ia.b[i] == mu[i + 1] * ia.c[i] for i in range(ia.rho))


@dataclass(frozen=True)
class UPCertificate:
    rho: int
    s: int
    is_up: bool
    alpha: tuple[Fraction, ...] | None = None

    def as_dict(self):
        out = {"rho": self.rho, "s": self.s, "is_up": self.is_up}
        if self.alpha is not None:
            out["alpha"] = [str(a) for a in self.alpha]
        return out


def check_uniformly_packed(code: LinearCode, table: CosetTable | None = None,
                           max_dual: int = DEFAULT_MAX_DUAL,
                           with_alpha: bool = False) -> UPCertificate:
    """Uniformly packed (wide sense) iff covering radius equals outer distance."""
    table = coset_weights(code) if table is None else table
    s = outer_distance(code, max_dual)
    alpha = solve_alpha(code, table.rho) if with_alpha else None
    return UPCertificate(table.rho, s, table.rho == s, alpha)


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Particular solution of ``rows @ x = rhs`` (free variables set to 0) or None."""
    ncols = len(rows[0])
    aug = [list(r) + [v] for r, v in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        lead = aug[r][col]
        aug[r] = [x / lead for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    if any(all(x == 0 for x in row[:-1]) and row[-1] != 0 for row in aug):
        return None
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        x[col] = aug[i][-1]
    return tuple(x)


def distance_distributions(code: LinearCode, rho: int,
                           max_ambient: int = DEFAULT_MAX_AMBIENT) -> np.ndarray:
    """Distinct vectors ``(f_0(v), ..., f_rho(v))`` over all cosets.

    ``f_k(v)``, the number of codewords at distance ``k`` from ``v``, is the
    number of weight-``k`` vectors in the coset ``v + C``.
    """
    D = coset_weight_distributions(code, max_ambient)
    return np.unique(D[:, :rho + 1], axis=0)


def solve_alpha(code: LinearCode, rho: int | None = None,
                max_ambient: int = DEFAULT_MAX_AMBIENT):
    """Exact rationals with ``sum(alpha_k f_k(v)) == 1`` for every ``v``,
    or ``None`` when the system is inconsistent."""
    if rho is None:
        rho = coset_weights(code).rho
    F = distance_distributions(code, rho, max_ambient)
    rows = [[Fraction(int(x)) for x in row] for row in F]
    return _solve_exact(rows, [Fraction(1)] * len(rows))


def check_cr_by_distributions(code: LinearCode, table: CosetTable | None = None,
                              max_ambient: int = DEFAULT_MAX_AMBIENT):
    """Independent complete-regularity test via full coset weight distributions.

    Returns ``(True, None)`` when cosets of equal minimum weight always share
    their weight distribution, else ``(False, (s1, s2))``.
    """
    D = coset_weight_distributions(code, max_ambient)
    minw = np.argmax(D > 0, axis=1)
    for w in np.unique(minw):
        members = np.flatnonzero(minw == w)
        bad = np.flatnonzero((D[members] != D[members[0]]).any(axis=1))
        if bad.size:
            return False, (int(members[0]), int(members[bad[0]]))
    return True, None
