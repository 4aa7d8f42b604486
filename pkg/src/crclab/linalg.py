"""Dense matrices over finite fields and the parity-check builders."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import EmptyMatrix, FieldMismatch, LengthTooSmall
from .gf import FiniteField, embed, field_create


@dataclass(frozen=True, eq=False)
class FieldMatrix:
    """Row-major matrix of element encodings over ``field``."""

    field: FiniteField
    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=np.int64, copy=True)
        if data.ndim != 2:
            raise ValueError("FieldMatrix needs a 2-d array")
        if data.size and not self.field.is_element(data):
            raise ValueError(f"entries outside {self.field}")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __eq__(self, other):
        return (isinstance(other, FieldMatrix) and self.field is other.field
                and np.array_equal(self.data, other.data))

    def __repr__(self):
        return f"FieldMatrix({self.field}, {self.rows}x{self.cols})"

    def column(self, j: int) -> np.ndarray:
        return self.data[:, j]

    def to_field(self, target: FiniteField) -> "FieldMatrix":
        return FieldMatrix(target, embed(self.field, target, self.data))

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.field, self.data.T)

    def matmul(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.field is not other.field:
            raise FieldMismatch("matrices over different fields")
        return FieldMatrix(self.field, matmul(self.field, self.data, other.data))


def matmul(field: FiniteField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of integer-encoded arrays over ``field``."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for t in range(a.shape[1]):
        out = field.add(out, field.mul(a[:, t:t + 1], b[t:t + 1, :]))
    return out


def identity(field: FiniteField, n: int) -> FieldMatrix:
    return FieldMatrix(field, np.eye(n, dtype=np.int64))


# -- elimination --------------------------------------------------------------

def row_echelon(field: FiniteField, data) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns ``(R, pivot_columns)``."""
    a = np.array(data, dtype=np.int64, copy=True)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = field.mul(a[r], field.inv(int(a[r, c])))
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = field.sub(a[i], field.mul(a[r], int(a[i, c])))
        pivots.append(c)
        r += 1
    return a, pivots


def rank(M: FieldMatrix) -> int:
    """Rank over the matrix's field (Gaussian elimination on a copy)."""
    if M.data.size == 0:
        return 0
    return len(row_echelon(M.field, M.data)[1])


def independent_rows(M: FieldMatrix) -> list[int]:
    """Indices of the first maximal linearly independent set of rows,
    scanning top to bottom."""
    field = M.field
    kept: list[int] = []
    basis = np.zeros((0, M.cols), dtype=np.int64)
    for i in range(M.rows):
        trial = np.vstack([basis, M.data[i:i + 1]])
        if len(row_echelon(field, trial)[1]) == len(kept) + 1:
            kept.append(i)
            basis = trial
    return kept


def null_space(M: FieldMatrix) -> FieldMatrix:
    """Rows spanning ``{x : M x^T = 0}``."""
    field = M.field
    R, pivots = row_echelon(field, M.data)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = np.zeros((len(free), M.cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = field.neg(int(R[r, f]))
    return FieldMatrix(field, basis)


# -- builders -----------------------------------------------------------------

def kronecker(A: FieldMatrix, B: FieldMatrix, target_field: FiniteField | None = None) -> FieldMatrix:
    """Kronecker product ``A (x) B`` after embedding both factors in ``target_field``.

    Block ``(r, s)`` is ``a[r, s] * B``; column ``j * n_b + t`` is
    ``a^(j) (x) b^(t)``.
    """
    if target_field is None:
        target_field = A.field if A.field.k >= B.field.k else B.field
    a = embed(A.field, target_field, A.data)
    b = embed(B.field, target_field, B.data)
    ma, na = a.shape
    mb, nb = b.shape
    prod = target_field.mul(a[:, None, :, None], b[None, :, None, :])
    return FieldMatrix(target_field, np.asarray(prod).reshape(ma * mb, na * nb))


def hamming_matrix(field: FiniteField, m: int) -> FieldMatrix:
    """Parity-check matrix of the ``q``-ary Hamming code of redundancy ``m``.

    Columns are the nonzero vectors of ``F_q^m`` whose first nonzero entry is
    1, sorted by their value read top-to-bottom as base-``q`` digits.
    """
    if m < 1:
        raise ValueError("redundancy must be >= 1")
    q = field.order
    codes = np.arange(1, q ** m, dtype=np.int64)
    cols = np.stack([(codes // q ** (m - 1 - i)) % q for i in range(m)])
    first = cols[np.argmax(cols != 0, axis=0), np.arange(cols.shape[1])]
    H = FieldMatrix(field, cols[:, first == 1])
    assert H.cols == (q ** m - 1) // (q - 1)
    return H


def repetition_matrix(field: FiniteField, n: int) -> FieldMatrix:
    """``[I_{n-1} | -1^T]``, the parity check of the length-``n`` repetition code."""
    if n < 2:
        raise LengthTooSmall(f"repetition length {n} < 2")
    data = np.zeros((n - 1, n), dtype=np.int64)
    data[:, :n - 1] = np.eye(n - 1, dtype=np.int64)
    data[:, n - 1] = field.minus_one()
    return FieldMatrix(field, data)


def monomial_matrix(field: FiniteField, perm, scales) -> FieldMatrix:
    """``n x n`` matrix with ``scales[i]`` at ``(perm[i], i)``."""
    n = len(perm)
    data = np.zeros((n, n), dtype=np.int64)
    data[np.asarray(perm), np.arange(n)] = scales
    return FieldMatrix(field, data)


# -- text format ----------------------------------------------------------------

def format_matrix(M: FieldMatrix) -> str:
    lines = [f"{M.field.p} {M.field.k} {M.rows} {M.cols}"]
    lines += [" ".join(str(int(x)) for x in row) for row in M.data]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> FieldMatrix:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 4:
        raise ValueError("matrix header must be 'p k rows cols'")
    p, k, rows, cols = (int(x) for x in lines[0])
    body = lines[1:]
    if len(body) != rows or any(len(r) != cols for r in body):
        raise ValueError("matrix body does not match header dimensions")
    if rows == 0 or cols == 0:
        raise EmptyMatrix("matrix has no entries")
    data = np.array([[int(x) for x in r] for r in body], dtype=np.int64)
    return FieldMatrix(field_create(p, k), data)


def write_matrix(M: FieldMatrix, path) -> None:
    Path(path).write_text(format_matrix(M))


def read_matrix(path) -> FieldMatrix:
    return parse_matrix(Path(path).read_text())
