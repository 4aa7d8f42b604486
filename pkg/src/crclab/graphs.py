"""Coset graphs, distance-regularity, bilinear forms graphs and isomorphism."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .code import CosetTable, LinearCode, coset_weights, pack_vector, unpack_index
from .errors import (
    Disconnected,
    GraphTooLarge,
    Mismatch,
    TooLargeForGenericIso,
    UnsupportedProvenance,
)
from .gf import FiniteField, digit_add, gf, mu_basis
from .linalg import FieldMatrix, hamming_matrix, rank
from .regularity import IntersectionArray

DEFAULT_MAX_VERTICES = 1 << 20
FULL_DRG_LIMIT = 4096
GENERIC_ISO_LIMIT = 4096


@dataclass(frozen=True, eq=False)
class SimpleGraph:
    """Undirected simple graph in CSR form with sorted neighbour lists.

    ``cayley`` marks graphs built as Cayley graphs of an abelian group; they
    are vertex-transitive, so one BFS gives the diameter.
    """

    vcount: int
    indptr: np.ndarray
    indices: np.ndarray
    label: str = ""
    cayley: bool = False

    @classmethod
    def from_neighbor_array(cls, nbrs: np.ndarray, label: str = "", cayley: bool = False):
        nbrs = np.sort(np.asarray(nbrs, dtype=np.int64), axis=1)
        n, k = nbrs.shape
        if k and (np.diff(nbrs, axis=1) == 0).any():
            raise ValueError("duplicate neighbours")
        if k and (nbrs == np.arange(n)[:, None]).any():
            raise ValueError("loops are not allowed")
        indptr = np.arange(0, n * k + 1, k, dtype=np.int64)
        return cls(n, indptr, nbrs.ravel(), label, cayley)

    @classmethod
    def from_edges(cls, n: int, edges, label: str = ""):
        e = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        e = e[e[:, 0] != e[:, 1]]
        both = np.concatenate([e, e[:, ::-1]])
        both = np.unique(both, axis=0)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, both[:, 0] + 1, 1)
        return cls(n, np.cumsum(indptr), both[:, 1].copy(), label)

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @property
    def edge_count(self) -> int:
        return int(self.indices.size // 2)

    def is_regular(self) -> bool:
        d = self.degrees
        return bool(d.size == 0 or (d == d[0]).all())

    def edges(self) -> np.ndarray:
        src = np.repeat(np.arange(self.vcount), self.degrees)
        mask = src < self.indices
        return np.stack([src[mask], self.indices[mask]], axis=1)

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.vcount, self.vcount), dtype=bool)
        src = np.repeat(np.arange(self.vcount), self.degrees)
        A[src, self.indices] = True
        return A

    def is_symmetric(self) -> bool:
        e = self.edges()
        return 2 * len(e) == self.indices.size


def bfs_distances(g: SimpleGraph, source: int) -> np.ndarray:
    dist = np.full(g.vcount, -1, dtype=np.int32)
    dist[source] = 0
    frontier = np.array([source])
    level = 0
    while frontier.size:
        level += 1
        starts, ends = g.indptr[frontier], g.indptr[frontier + 1]
        lens = ends - starts
        offs = np.repeat(starts - np.concatenate([[0], np.cumsum(lens)[:-1]]), lens)
        nb = g.indices[np.arange(lens.sum()) + offs]
        nb = np.unique(nb[dist[nb] < 0])
        dist[nb] = level
        frontier = nb
    return dist


def write_edge_list(g: SimpleGraph, path) -> int:
    """One ``u v`` line per edge, ``u < v``, sorted; returns the line count."""
    e = g.edges()
    e = e[np.lexsort((e[:, 1], e[:, 0]))]
    Path(path).write_text("".join(f"{u} {v}\n" for u, v in e))
    return len(e)


def read_edge_list(path, n: int) -> SimpleGraph:
    lines = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip()]
    return SimpleGraph.from_edges(n, [(int(a), int(b)) for a, b in lines])


# -- constructions --------------------------------------------------------------

def _cayley(N: int, connection: np.ndarray, p: int, ndigits: int, label: str,
            max_vertices: int) -> SimpleGraph:
    if N > max_vertices:
        raise GraphTooLarge(f"{N} vertices exceed cap {max_vertices}")
    dtype = np.int32 if N < (1 << 31) else np.int64
    nbrs = digit_add(np.arange(N, dtype=np.int64)[:, None], connection[None, :], p, ndigits)
    return SimpleGraph.from_neighbor_array(nbrs.astype(dtype), label, cayley=True)


def coset_graph(table: CosetTable, max_vertices: int = DEFAULT_MAX_VERTICES) -> SimpleGraph:
    """Vertices are syndromes; ``s ~ s'`` when ``s' - s`` is the syndrome of a
    weight-one vector."""
    code = table.code
    return _cayley(table.size, table.distinct_generators(), code.field.p,
                   code.index_digits, f"coset graph of {code!r}", max_vertices)


def rank_one_indices(field: FiniteField, d: int, e: int) -> np.ndarray:
    """Indices of all rank-one ``d x e`` matrices, as outer products ``x y^T``
    with ``x`` normalised (first nonzero entry 1) and ``y`` nonzero."""
    q = field.order
    xs = hamming_matrix(field, d).data.T                      # normalised, (.., d)
    ys = unpack_index(q, np.arange(1, q ** e), e)             # nonzero, (.., e)
    outer = field.mul(xs[:, None, :, None], ys[None, :, None, :])
    return np.sort(pack_vector(q, outer.reshape(-1, d * e)))


def matrix_index(q: int, X) -> np.ndarray:
    """Row-major mixed-radix index of ``d x e`` matrices (last two axes)."""
    X = np.asarray(X, dtype=np.int64)
    return pack_vector(q, X.reshape(X.shape[:-2] + (-1,)))


def bilinear_forms_graph(field: FiniteField, d: int, e: int,
                         max_vertices: int = DEFAULT_MAX_VERTICES) -> SimpleGraph:
    """All ``d x e`` matrices over ``field``; adjacent iff the difference has rank 1."""
    N = field.order ** (d * e)
    return _cayley(N, rank_one_indices(field, d, e), field.p, field.k * d * e,
                   f"bilinear forms graph {d}x{e} over {field}", max_vertices)


# -- distance regularity --------------------------------------------------------

@dataclass(frozen=True)
class NotDRG:
    base: int
    vertex: int
    count: int
    expected: int
    what: str

    def __str__(self):
        return (f"{self.what}: vertex {self.vertex} relative to base {self.base} "
                f"has {self.count}, expected {self.expected}")

    def as_dict(self):
        return {"base": self.base, "vertex": self.vertex, "count": self.count,
                "expected": self.expected, "what": self.what}


def _regularity_witness(g: SimpleGraph):
    d = g.degrees
    bad = np.flatnonzero(d != d[0])
    if bad.size:
        return NotDRG(0, int(bad[0]), int(d[bad[0]]), int(d[0]), "degree")
    return None


def _constant_or_witness(values, pairs, what):
    bad = np.flatnonzero(values != values[0])
    if bad.size:
        i = bad[0]
        return NotDRG(int(pairs[0][i]), int(pairs[1][i]), int(values[i]), int(values[0]), what)
    return None


def _drg_full(g: SimpleGraph) -> IntersectionArray | NotDRG:
    A = g.adjacency().astype(np.float32)
    n = g.vcount
    reached = np.eye(n, dtype=bool)
    layers = [np.eye(n, dtype=bool)]
    counts = [A.copy()]               # counts[i][x, y] = #{z ~ x : d(z, y) = i}
    while True:
        nxt = (counts[-1] > 0) & ~reached
        if not nxt.any():
            break
        layers.append(nxt)
        reached |= nxt
        counts.append(A @ nxt.astype(np.float32))
    if not reached.all():
        raise Disconnected("graph is not connected")
    D = len(layers) - 1
    b, c = [], []
    for i in range(D + 1):
        pairs = np.nonzero(layers[i])        # (y, x) with d = i; count rows are x
        if i > 0:
            vals = counts[i - 1].T[pairs].astype(np.int64)
            w = _constant_or_witness(vals, pairs, f"c_{i}")
            if w:
                return w
            c.append(int(vals[0]))
        if i < D:
            vals = counts[i + 1].T[pairs].astype(np.int64)
            w = _constant_or_witness(vals, pairs, f"b_{i}")
            if w:
                return w
            b.append(int(vals[0]))
    return IntersectionArray(b, c)


def _drg_sampled(g: SimpleGraph, seed: int, count: int) -> IntersectionArray | NotDRG:
    n = g.vcount
    k = int(g.degrees[0])
    nbrs = g.indices.reshape(n, k)
    rng = np.random.default_rng(seed)
    bases = np.sort(rng.choice(n, size=min(count, n), replace=False))
    ref = None
    for base in bases:
        dist = bfs_distances(g, int(base))
        if (dist < 0).any():
            raise Disconnected("graph is not connected")
        D = int(dist.max())
        nd = dist[nbrs]
        down = (nd == dist[:, None] - 1).sum(axis=1)
        up = (nd == dist[:, None] + 1).sum(axis=1)
        b, c = [], []
        for i in range(D + 1):
            members = np.flatnonzero(dist == i)
            pairs = (np.full(members.size, base), members)
            if i > 0:
                w = _constant_or_witness(down[members], pairs, f"c_{i}")
                if w:
                    return w
                c.append(int(down[members[0]]))
            if i < D:
                w = _constant_or_witness(up[members], pairs, f"b_{i}")
                if w:
                    return w
                b.append(int(up[members[0]]))
        arr = IntersectionArray(b, c)
        if ref is None:
            ref = arr
        elif arr != ref:
            return NotDRG(int(base), int(base), arr.rho, ref.rho, "array differs between bases")
    return ref


def check_distance_regular(g: SimpleGraph, mode: str = "auto", seed: int = 0,
                           count: int = 64) -> IntersectionArray | NotDRG:
    """Intersection array of a distance-regular graph, or a witness.

    ``mode="full"`` checks every pair of vertices through products of the
    adjacency matrix with the distance-``i`` matrices; ``"sampled"`` runs a
    BFS from ``count`` pseudorandom base vertices.  ``"auto"`` picks full up to
    4096 vertices.
    """
    if g.vcount == 0:
        raise Disconnected("empty graph")
    w = _regularity_witness(g)
    if w:
        return w
    if mode == "auto":
        mode = "full" if g.vcount <= FULL_DRG_LIMIT else "sampled"
    if mode == "full":
        return _drg_full(g)
    if mode == "sampled":
        return _drg_sampled(g, seed, count)
    raise ValueError(f"unknown mode {mode!r}")


def diameter(g: SimpleGraph) -> int:
    sources = [0] if g.cayley else range(g.vcount)
    D = 0
    for s in sources:
        dist = bfs_distances(g, s)
        if (dist < 0).any():
            raise Disconnected("graph is not connected")
        D = max(D, int(dist.max()))
    return D


def check_antipodal(g: SimpleGraph, D: int | None = None):
    """``True``/``False`` for antipodality, ``None`` when the diameter is below 3.

    Antipodal means the distance-``D`` graph is a disjoint union of cliques,
    i.e. ``{x} | Gamma_D(x)`` is the same set for every member ``x`` of it.
    """
    if D is None:
        D = diameter(g)
    if D < 3:
        return None
    classes = np.full(g.vcount, -1, dtype=np.int64)
    for x in range(g.vcount):
        if classes[x] >= 0:
            continue
        dist = bfs_distances(g, x)
        if (dist < 0).any():
            raise Disconnected("graph is not connected")
        cls = np.flatnonzero((dist == D) | (dist == 0))
        if (classes[cls] >= 0).any():
            return False
        for y in cls[1:]:
            dy = bfs_distances(g, int(y))
            other = np.flatnonzero((dy == D) | (dy == 0))
            if not np.array_equal(other, cls):
                return False
        classes[cls] = x
    return True


# -- explicit isomorphism with bilinear forms graphs ------------------------------

@dataclass(frozen=True, eq=False)
class BilinearIsomorphism:
    """Vertex ``s`` of the coset graph maps to matrix index ``mapping[s]``."""

    field: FiniteField
    d: int
    e: int
    mapping: np.ndarray

    def transposed(self) -> "BilinearIsomorphism":
        q = self.field.order
        X = unpack_index(q, self.mapping, self.d * self.e).reshape(-1, self.d, self.e)
        return BilinearIsomorphism(self.field, self.e, self.d,
                                   matrix_index(q, X.transpose(0, 2, 1)))


def syndrome_matrices(code: LinearCode, syndromes) -> tuple[FiniteField, np.ndarray]:
    """Matrices over the base field for the given syndrome indices.

    Kronecker codes: the syndrome is reshaped so rows follow the base-field
    factor and columns the extension-field factor, then each row is expanded
    coordinate-wise over the base field.  Lifted codes: column ``i`` holds the
    coordinates of syndrome entry ``i``.
    """
    prov, P = code.provenance, code.params
    if code.m != code.H.rows:
        raise UnsupportedProvenance("parity-check matrix is not of full row rank")
    s = unpack_index(code.Q, syndromes, code.m)
    if prov == "kronecker":
        small = gf(P["q"])
        basis = mu_basis(code.field, small)
        m_big, m_small = P["m_big"], P["m_small"]
        if P.get("big_side", "left") == "left":
            S = s.reshape(-1, m_big, m_small).transpose(0, 2, 1)
        else:
            S = s.reshape(-1, m_small, m_big)
        X = basis.expand_table[S].reshape(S.shape[0], S.shape[1], -1)
        return small, X
    if prov == "lifted":
        small = gf(P["q"])
        basis = mu_basis(code.field, small)
        X = basis.expand_table[s].transpose(0, 2, 1)
        return small, X
    raise UnsupportedProvenance(f"no explicit map for provenance {prov!r}")


def explicit_bilinear_isomorphism(code: LinearCode, table: CosetTable | None = None,
                                  full_check_limit: int = FULL_DRG_LIMIT) -> BilinearIsomorphism:
    """Build the syndrome-to-matrix map and verify it is a graph isomorphism
    onto the bilinear forms graph of matching shape.

    The map is additive, so it is an isomorphism of Cayley graphs as soon as
    it is bijective and sends the connection set (distinct weight-one
    syndromes) onto the rank-one matrices.  Small graphs are additionally
    checked edge by edge.
    """
    table = coset_weights(code) if table is None else table
    small, X = syndrome_matrices(code, np.arange(table.size))
    q = small.order
    N, d, e = X.shape
    mapping = matrix_index(q, X)
    if N != q ** (d * e) or np.unique(mapping).size != N:
        raise Mismatch("syndrome-to-matrix map is not a bijection")
    gens = table.distinct_generators()
    for g in gens:
        if rank(FieldMatrix(small, X[g])) != 1:
            raise Mismatch(f"generator syndrome {int(g)} maps to a matrix of rank != 1",
                           generator=int(g))
    expected = (q ** d - 1) * (q ** e - 1) // (q - 1)
    if gens.size != expected:
        raise Mismatch(f"coset graph degree {gens.size} != {expected} rank-one matrices")
    code_p, nd = code.field.p, code.index_digits
    idx = np.arange(N, dtype=np.int64)
    step = max(1, (1 << 24) // N)
    for start in range(0, gens.size, step):
        gs = gens[start:start + step]
        lhs = mapping[digit_add(idx[:, None], gs[None, :], code_p, nd)]
        rhs = digit_add(mapping[:, None], mapping[gs][None, :], small.p, small.k * d * e)
        if not np.array_equal(lhs, rhs):
            raise Mismatch("syndrome-to-matrix map is not additive")
    iso = BilinearIsomorphism(small, d, e, mapping)
    if N <= full_check_limit:
        g1 = coset_graph(table)
        g2 = bilinear_forms_graph(small, d, e)
        if not is_isomorphism(g1, g2, mapping):
            raise Mismatch("edge check failed")
    return iso


def is_isomorphism(g1: SimpleGraph, g2: SimpleGraph, mapping) -> bool:
    mapping = np.asarray(mapping)
    if g1.vcount != g2.vcount or g1.edge_count != g2.edge_count:
        return False
    if np.unique(mapping).size != g1.vcount:
        return False
    e = g1.edges()
    img = np.sort(mapping[e], axis=1)
    target = g2.edges()
    key = lambda a: a[:, 0] * g2.vcount + a[:, 1]
    return bool(np.isin(key(img), key(target)).all())


# -- generic isomorphism ----------------------------------------------------------

def _initial_colors(g: SimpleGraph, use_distances: bool) -> np.ndarray:
    cols = [g.degrees]
    if use_distances:
        prof = np.zeros((g.vcount, g.vcount), dtype=np.int64)
        for v in range(g.vcount):
            d = bfs_distances(g, v)
            prof[v] = np.bincount(d[d >= 0], minlength=g.vcount)[:g.vcount]
        cols.append(prof)
    return np.column_stack(cols)


def _refine(A1, A2, c1, c2):
    """Colour refinement on both graphs with a shared palette.  Returns the
    stable colourings or ``None`` if class sizes diverge."""
    n = len(c1)
    while True:
        k = int(max(c1.max(), c2.max())) + 1
        oh1 = np.zeros((n, k), dtype=np.float32)
        oh2 = np.zeros((n, k), dtype=np.float32)
        oh1[np.arange(n), c1] = 1
        oh2[np.arange(n), c2] = 1
        sig = np.vstack([np.column_stack([c1, A1 @ oh1]), np.column_stack([c2, A2 @ oh2])])
        _, new = np.unique(sig.astype(np.int64), axis=0, return_inverse=True)
        new = new.ravel()
        n1, n2 = new[:n], new[n:]
        if not np.array_equal(np.bincount(n1, minlength=new.max() + 1),
                              np.bincount(n2, minlength=new.max() + 1)):
            return None
        if new.max() + 1 == k:
            return n1, n2
        c1, c2 = n1, n2


def graph_isomorphic(g1: SimpleGraph, g2: SimpleGraph):
    """``(True, mapping)`` with ``mapping[v1] = v2`` or ``(False, None)``.

    Degree and distance-profile colours, colour refinement, then
    individualisation and backtracking.
    """
    if max(g1.vcount, g2.vcount) > GENERIC_ISO_LIMIT:
        raise TooLargeForGenericIso("use explicit_bilinear_isomorphism for large graphs")
    if g1.vcount != g2.vcount or g1.edge_count != g2.edge_count:
        return False, None
    n = g1.vcount
    if n == 0:
        return True, np.zeros(0, dtype=np.int64)
    use_dist = n * g1.indices.size <= (1 << 26)
    init = np.vstack([_initial_colors(g1, use_dist), _initial_colors(g2, use_dist)])
    _, colors = np.unique(init, axis=0, return_inverse=True)
    colors = colors.ravel()
    A1 = g1.adjacency().astype(np.float32)
    A2 = g2.adjacency().astype(np.float32)
    res = _refine(A1, A2, colors[:n], colors[n:])
    if res is None:
        return False, None

    def search(c1, c2):
        sizes = np.bincount(c1)
        if (sizes == 1).all():
            mapping = np.empty(n, dtype=np.int64)
            order2 = np.argsort(c2)
            mapping[np.argsort(c1)] = order2
            return mapping if is_isomorphism(g1, g2, mapping) else None
        target = int(np.flatnonzero(sizes > 1)[np.argmin(sizes[sizes > 1])])
        v = int(np.flatnonzero(c1 == target)[0])
        fresh = int(max(c1.max(), c2.max())) + 1
        for w in np.flatnonzero(c2 == target):
            d1, d2 = c1.copy(), c2.copy()
            d1[v] = fresh
            d2[w] = fresh
            r = _refine(A1, A2, d1, d2)
            if r is None:
                continue
            found = search(*r)
            if found is not None:
                return found
        return None

    mapping = search(*res)
    return (mapping is not None), mapping
