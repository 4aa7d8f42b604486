"""Linear codes given by parity-check matrices and their syndrome spaces.

Syndromes are taken with respect to a maximal set of independent rows of
``H`` (the first ones, scanning downwards), so for a full-rank ``H`` the
syndrome is the ordinary ``H x^T``.  A syndrome ``(s_0, ..., s_{m-1})`` over
a field of order ``Q`` is indexed by ``sum(s_i Q^i)``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from typing import Any

import numpy as np

from .errors import AmbientTooLarge, DualTooLarge, EmptyMatrix, SyndromeSpaceTooLarge
from .gf import FiniteField, digit_add, field_create
from .linalg import FieldMatrix, independent_rows, null_space

DEFAULT_MAX_SYNDROMES = 1 << 28
DEFAULT_MAX_DUAL = 1 << 25
DEFAULT_MAX_AMBIENT = 1 << 24


def max_syndromes_default() -> int:
    env = os.environ.get("CRCLAB_MAX_SYNDROMES")
    return int(env) if env else DEFAULT_MAX_SYNDROMES


@dataclass(eq=False)
class LinearCode:
    """Null space of a parity-check matrix.

    ``H`` is kept verbatim; ``Hr`` holds its first maximal set of independent
    rows and fixes the syndrome coordinates.
    """

    H: FieldMatrix
    provenance: str = "raw"
    params: dict[str, Any] = dc_field(default_factory=dict)
    Hr: FieldMatrix = dc_field(init=False, repr=False)
    row_basis: list[int] = dc_field(init=False, repr=False)

    def __post_init__(self):
        if self.H.rows == 0 or self.H.cols == 0 or not self.H.data.any():
            raise EmptyMatrix("parity-check matrix is empty or zero")
        self.row_basis = independent_rows(self.H)
        self.Hr = FieldMatrix(self.H.field, self.H.data[self.row_basis])

    @property
    def field(self) -> FiniteField:
        return self.H.field

    @property
    def n(self) -> int:
        return self.H.cols

    @property
    def m(self) -> int:
        return len(self.row_basis)

    @property
    def k(self) -> int:
        return self.n - self.m

    @property
    def Q(self) -> int:
        return self.field.order

    @property
    def syndrome_count(self) -> int:
        return self.Q ** self.m

    @property
    def has_zero_column(self) -> bool:
        return bool((self.H.data == 0).all(axis=0).any())

    @property
    def index_digits(self) -> int:
        """Number of base-p digits in a syndrome index."""
        return self.m * self.field.k

    def __repr__(self):
        return f"LinearCode([{self.n},{self.k}]_{self.Q}, {self.provenance})"

    # syndrome helpers
    def syndrome(self, v) -> np.ndarray:
        """Syndrome vectors ``Hr v^T`` for rows of ``v`` (shape ``(..., n)``)."""
        F = self.field
        v = np.asarray(v, dtype=np.int64)
        out = np.zeros(v.shape[:-1] + (self.m,), dtype=np.int64)
        for j in range(self.n):
            out = F.add(out, F.mul(v[..., j:j + 1], self.Hr.data[:, j]))
        return out

    def syndrome_index(self, v) -> np.ndarray:
        return pack_vector(self.Q, self.syndrome(v))

    def contains(self, v) -> np.ndarray:
        return ~np.any(self.syndrome(v) != 0, axis=-1)

    def generator_matrix(self) -> FieldMatrix:
        return null_space(self.H)

    def generator_syndromes(self) -> np.ndarray:
        """Syndrome index of ``alpha e_i`` for every coordinate ``i`` and
        ``alpha`` in ``1..Q-1``; shape ``(n, Q-1)``."""
        F = self.field
        alphas = np.arange(1, self.Q, dtype=np.int64)
        cols = F.mul(alphas[None, :, None], self.Hr.data.T[:, None, :])
        return pack_vector(self.Q, cols)

    def add_index(self, x, y):
        return digit_add(x, y, self.field.p, self.index_digits)


def pack_vector(Q: int, vec) -> np.ndarray:
    """Mixed-radix index ``sum(v_i Q^i)`` along the last axis."""
    vec = np.asarray(vec, dtype=np.int64)
    weights = Q ** np.arange(vec.shape[-1], dtype=np.int64)
    return (vec * weights).sum(axis=-1)


def unpack_index(Q: int, idx, length: int) -> np.ndarray:
    idx = np.asarray(idx, dtype=np.int64)
    return (idx[..., None] // Q ** np.arange(length, dtype=np.int64)) % Q


def code_from_parity(H: FieldMatrix, provenance: str = "raw",
                     params: dict | None = None) -> LinearCode:
    return LinearCode(H, provenance, dict(params or {}))


# -- coset weights ------------------------------------------------------------

@dataclass(eq=False)
class CosetTable:
    """Weight of every coset, indexed by syndrome."""

    code: LinearCode
    weights: np.ndarray = dc_field(repr=False)
    mu: tuple[int, ...]
    generators: np.ndarray = dc_field(repr=False)

    @property
    def rho(self) -> int:
        return len(self.mu) - 1

    @property
    def size(self) -> int:
        return self.weights.size

    def distinct_generators(self) -> np.ndarray:
        g = np.unique(self.generators)
        return g[g != 0]


UNSEEN = np.uint8(255)


def coset_weights(code: LinearCode, max_syndromes: int | None = None) -> CosetTable:
    """Coset weights by breadth-first search from the zero syndrome.

    The search runs on the Cayley graph of the syndrome group generated by the
    syndromes of all ``alpha e_i``; a vertex's BFS depth is the weight of its
    coset.  Layers are expanded top-down while the frontier is small and
    bottom-up (each unseen syndrome looks for a parent in the frontier) once
    the frontier dominates, which is what makes spaces of ~2^24 syndromes
    tractable.
    """
    cap = max_syndromes_default() if max_syndromes is None else max_syndromes
    N = code.syndrome_count
    if N > cap:
        raise SyndromeSpaceTooLarge(f"{N} syndromes exceed cap {cap}")
    gens_multiset = code.generator_syndromes().ravel()
    gens = np.unique(gens_multiset)
    gens = gens[gens != 0]
    p, nd = code.field.p, code.index_digits

    dist = np.full(N, UNSEEN, dtype=np.uint8)
    dist[0] = 0
    frontier = np.array([0], dtype=np.int64)
    unseen = N - 1
    mu = [1]
    level = 0
    while frontier.size and unseen:
        level += 1
        if level >= 255:
            raise SyndromeSpaceTooLarge("covering radius exceeds weight storage")
        if frontier.size * 14 < unseen:
            chunk = max(1, (1 << 22) // max(1, gens.size))
            for start in range(0, frontier.size, chunk):
                cand = digit_add(frontier[start:start + chunk, None], gens[None, :], p, nd).ravel()
                dist[cand[dist[cand] == UNSEEN]] = level
        else:
            active = np.flatnonzero(dist == UNSEEN)
            prev = np.uint8(level - 1)
            for g in gens:
                hit = dist[digit_add(active, g, p, nd)] == prev
                if hit.any():
                    dist[active[hit]] = level
                    active = active[~hit]
                    if active.size == 0:
                        break
        frontier = np.flatnonzero(dist == level)
        mu.append(int(frontier.size))
        unseen -= frontier.size
    if unseen:
        raise AssertionError("generators do not span the syndrome space")
    return CosetTable(code, dist, tuple(mu), gens_multiset)


def covering_radius(table: CosetTable) -> int:
    return table.rho


# -- dual code ----------------------------------------------------------------

def span(field: FiniteField, rows: np.ndarray) -> np.ndarray:
    """All ``Q^len(rows)`` linear combinations of ``rows``."""
    rows = np.asarray(rows, dtype=np.int64)
    words = np.zeros((1, rows.shape[1]), dtype=np.int64)
    alphas = field.elements()
    for r in rows:
        scaled = field.mul(alphas[:, None], r[None, :])
        words = field.add(words[None, :, :], scaled[:, None, :]).reshape(-1, rows.shape[1])
    return words


def dual_weight_counts(code: LinearCode, max_words: int = DEFAULT_MAX_DUAL) -> np.ndarray:
    """Weight distribution of the dual code (length ``n + 1``).

    Meet in the middle: each dual word is ``x + y`` with ``x``, ``y`` ranging
    over the spans of the two halves of the rows of ``Hr``, and its weight is
    the number of coordinates where ``-x`` and ``y`` differ.
    """
    N = code.syndrome_count
    if N > max_words:
        raise DualTooLarge(f"{N} dual words exceed cap {max_words}")
    F = code.field
    half = code.m // 2
    left = F.neg(span(F, code.Hr.data[:half]))
    right = span(F, code.Hr.data[half:])
    dtype = np.uint8 if F.order <= 256 else np.int32
    left = left.astype(dtype)
    right = right.astype(dtype)
    counts = np.zeros(code.n + 1, dtype=np.int64)
    chunk = max(1, (1 << 24) // max(1, right.shape[0] * code.n))
    for start in range(0, left.shape[0], chunk):
        w = (left[start:start + chunk, None, :] != right[None, :, :]).sum(axis=2)
        counts += np.bincount(w.ravel(), minlength=code.n + 1)
    return counts


def outer_distance(code: LinearCode, max_words: int = DEFAULT_MAX_DUAL) -> int:
    """Number of distinct nonzero weights in the dual code."""
    counts = dual_weight_counts(code, max_words)
    return int(np.count_nonzero(counts[1:]))


# -- minimum distance ---------------------------------------------------------

def min_distance_upto4(code: LinearCode):
    """Smallest number of dependent columns of ``H`` if at most 4, else ``">4"``.

    Works on syndromes: weight-1 vectors with zero syndrome give d = 1,
    colliding weight-1 syndromes from different columns give d = 2, a
    weight-2 syndrome equal to a weight-1 syndrome gives d = 3, and two
    distinct weight-2 vectors sharing a syndrome give d = 4.
    """
    G = code.generator_syndromes()          # (n, Q-1)
    n, Q = code.n, code.Q
    if (G == 0).any():
        return 1
    flat = G.ravel()
    if np.unique(flat).size < flat.size:
        return 2
    i, j = np.triu_indices(n, 1)
    w2 = code.add_index(G[i][:, :, None], G[j][:, None, :]).ravel()
    if np.isin(w2, flat).any():
        return 3
    if np.unique(w2).size < w2.size:
        return 4
    return ">4"


# -- lifting ------------------------------------------------------------------

def lift(code: LinearCode, r: int) -> LinearCode:
    """Reinterpret ``H`` over the degree-``r`` extension of the code's field."""
    if r < 1:
        raise ValueError("extension degree must be >= 1")
    if r == 1:
        return code
    F = code.field
    big = field_create(F.p, F.k * r)
    params = dict(code.params)
    params.setdefault("q", F.order)
    params["r"] = params.get("r", 1) * r
    return LinearCode(code.H.to_field(big), "lifted", params)


# -- ambient enumeration ----------------------------------------------------

def ambient_syndromes(code: LinearCode, max_ambient: int = DEFAULT_MAX_AMBIENT):
    """Syndrome index and Hamming weight of every vector of ``F_Q^n``.

    Vector ``v`` has index ``sum(v_i Q^i)``.
    """
    Q, n = code.Q, code.n
    total = Q ** n
    if total > max_ambient:
        raise AmbientTooLarge(f"{total} ambient vectors exceed cap {max_ambient}")
    G = code.generator_syndromes()
    synd = np.zeros(1, dtype=np.int64)
    wt = np.zeros(1, dtype=np.int8)
    for i in range(n):
        shifts = np.concatenate([[0], G[i]])
        synd = code.add_index(shifts[:, None], synd[None, :]).ravel()
        wt = (wt[None, :] + (np.arange(Q) != 0)[:, None]).astype(np.int8).ravel()
    return synd, wt


def coset_weight_distributions(code: LinearCode,
                               max_ambient: int = DEFAULT_MAX_AMBIENT) -> np.ndarray:
    """``D[s, w]`` = number of weight-``w`` vectors in the coset with syndrome ``s``."""
    synd, wt = ambient_syndromes(code, max_ambient)
    flat = synd * (code.n + 1) + wt
    counts = np.bincount(flat, minlength=code.syndrome_count * (code.n + 1))
    return counts.reshape(code.syndrome_count, code.n + 1)
