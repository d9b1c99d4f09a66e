"""Exact linear algebra over the two-element field.

Matrices and vectors are bit-packed into unsigned 64-bit words so that a
row elimination is a handful of word-level XORs.  Every operation is
deterministic: pivots are always taken from the lowest-index nonzero row,
so ranks, particular solutions, and kernel bases are reproducible bit for
bit across runs.
"""

from __future__ import annotations

import numpy as np

from .errors import ContractViolation

_WORD = 64


def _word_count(nbits: int) -> int:
    return (nbits + _WORD - 1) // _WORD


def _pack_bits(bits) -> np.ndarray:
    """Pack an iterable of 0/1 into little-endian uint64 words."""
    arr = np.asarray(bits, dtype=np.uint8) & 1
    if arr.size == 0:
        return np.zeros(0, dtype=np.uint64)
    padded = np.zeros(_word_count(arr.size) * _WORD, dtype=np.uint8)
    padded[: arr.size] = arr
    return np.packbits(padded, bitorder="little").view(np.uint64)

def _unpack_bits(words: np.ndarray, nbits: int) -> np.ndarray:
    if nbits == 0:
        return np.zeros(0, dtype=np.uint8)
    return np.unpackbits(words.view(np.uint8), bitorder="little")[:nbits]


class Gf2Vector:
    """Immutable bit vector over the two-element field."""

    __slots__ = ("length", "_words")

    def __init__(self, length: int, words: np.ndarray):
        self.length = int(length)
        words = np.ascontiguousarray(words, dtype=np.uint64)
        words.setflags(write=False)
        self._words = words

    @classmethod
    def zeros(cls, length: int) -> "Gf2Vector":
        return cls(length, np.zeros(_word_count(length), dtype=np.uint64))

    @classmethod
    def from_bits(cls, bits) -> "Gf2Vector":
        bits = np.asarray(bits, dtype=np.uint8)
        return cls(bits.size, _pack_bits(bits))

    @classmethod
    def from_indices(cls, length: int, indices) -> "Gf2Vector":
        bits = np.zeros(length, dtype=np.uint8)
        idx = np.asarray(list(indices), dtype=np.int64)
        if idx.size:
            bits[idx] ^= 1
        return cls(length, _pack_bits(bits))

    def get(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        w, b = divmod(i, _WORD)
        return int(self._words[w] >> np.uint64(b)) & 1

    def to_bits(self) -> np.ndarray:
        return _unpack_bits(self._words, self.length)

    def nonzero_indices(self) -> list[int]:
        return np.nonzero(self.to_bits())[0].tolist()

    def weight(self) -> int:
        return int(np.bitwise_count(self._words).sum())

    def is_zero(self) -> bool:
        return not self._words.any()

    def __xor__(self, other: "Gf2Vector") -> "Gf2Vector":
        if self.length != other.length:
            raise ContractViolation("vector length mismatch")
        return Gf2Vector(self.length, self._words ^ other._words)

    def dot(self, other: "Gf2Vector") -> int:
        if self.length != other.length:
            raise ContractViolation("vector length mismatch")
        return int(np.bitwise_count(self._words & other._words).sum()) & 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Gf2Vector)
            and self.length == other.length
            and bool(np.array_equal(self._words, other._words))
        )

    def __hash__(self):
        return hash((self.length, self._words.tobytes()))

    def __repr__(self):
        return f"Gf2Vector({self.length}, ones={self.nonzero_indices()})"


def _rref(words: np.ndarray, ncols: int):
    """In-place reduced row echelon form; returns the pivot columns.

    Scans columns left to right and picks the lowest-index available row
    as pivot, then clears the column everywhere else.
    """
    nrows = words.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        w, b = divmod(c, _WORD)
        bit = np.uint64(1 << b)
        below = np.nonzero(words[r:, w] & bit)[0]
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            words[[r, p]] = words[[p, r]]
        hits = (words[:, w] & bit) != 0
        hits[r] = False
        if hits.any():
            words[hits] ^= words[r]
        pivots.append(c)
        r += 1
    return pivots


class Gf2Matrix:
    """Immutable bit matrix; rows are packed little-endian into uint64."""

    __slots__ = ("row_count", "col_count", "_words", "_rank")

    def __init__(self, row_count: int, col_count: int, words: np.ndarray):
        self.row_count = int(row_count)
        self.col_count = int(col_count)
        words = np.ascontiguousarray(words, dtype=np.uint64)
        if words.shape != (self.row_count, _word_count(self.col_count)):
            raise ContractViolation("packed storage has wrong shape")
        words.setflags(write=False)
        self._words = words
        self._rank = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, row_count: int, col_count: int) -> "Gf2Matrix":
        return cls(
            row_count,
            col_count,
            np.zeros((row_count, _word_count(col_count)), dtype=np.uint64),
        )

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        words = np.zeros((n, _word_count(n)), dtype=np.uint64)
        idx = np.arange(n)
        words[idx, idx // _WORD] = np.uint64(1) << (idx % _WORD).astype(np.uint64)
        return cls(n, n, words)

    @classmethod
    def from_rows(cls, rows, col_count: int | None = None) -> "Gf2Matrix":
        rows = [np.asarray(r, dtype=np.uint8) & 1 for r in rows]
        if col_count is None:
            col_count = rows[0].size if rows else 0
        words = np.zeros((len(rows), _word_count(col_count)), dtype=np.uint64)
        for i, r in enumerate(rows):
            if r.size != col_count:
                raise ContractViolation("ragged rows")
            words[i] = _pack_bits(r) if col_count else 0
        return cls(len(rows), col_count, words)

    @classmethod
    def from_triplets(cls, row_count, col_count, rows, cols) -> "Gf2Matrix":
        """Sparse constructor; a repeated (row, col) entry cancels mod 2."""
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        if rows.shape != cols.shape:
            raise ContractViolation("triplet arrays differ in length")
        if rows.size and (
            rows.min() < 0
            or rows.max() >= row_count
            or cols.min() < 0
            or cols.max() >= col_count
        ):
            raise ContractViolation("triplet index out of range")
        words = np.zeros((row_count, _word_count(col_count)), dtype=np.uint64)
        if rows.size:
            shifted = np.uint64(1) << (cols % _WORD).astype(np.uint64)
            np.bitwise_xor.at(words, (rows, cols // _WORD), shifted)
        return cls(row_count, col_count, words)

    # -- accessors ---------------------------------------------------------

    def row(self, i: int) -> Gf2Vector:
        return Gf2Vector(self.col_count, self._words[i])

    def get(self, i: int, j: int) -> int:
        w, b = divmod(j, _WORD)
        return int(self._words[i, w] >> np.uint64(b)) & 1

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.row_count, self.col_count), dtype=np.uint8)
        for i in range(self.row_count):
            out[i] = _unpack_bits(self._words[i], self.col_count)
        return out

    def is_zero(self) -> bool:
        return not self._words.any()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Gf2Matrix)
            and self.row_count == other.row_count
            and self.col_count == other.col_count
            and bool(np.array_equal(self._words, other._words))
        )

    def __hash__(self):
        return hash((self.row_count, self.col_count, self._words.tobytes()))

    def __repr__(self):
        return f"Gf2Matrix({self.row_count}x{self.col_count})"

    # -- algebra -----------------------------------------------------------

    def transpose(self) -> "Gf2Matrix":
        dense = self.to_dense().T
        words = np.zeros(
            (self.col_count, _word_count(self.row_count)), dtype=np.uint64
        )
        for i in range(self.col_count):
            words[i] = _pack_bits(dense[i]) if self.row_count else 0
        return Gf2Matrix(self.col_count, self.row_count, words)

    def mul_vec(self, v: Gf2Vector) -> Gf2Vector:
        if v.length != self.col_count:
            raise ContractViolation("dimension mismatch in matrix-vector product")
        if self.row_count == 0:
            return Gf2Vector.zeros(0)
        parities = np.bitwise_count(self._words & v._words[None, :]).sum(axis=1) & 1
        return Gf2Vector.from_bits(parities.astype(np.uint8))

    def matmul(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.col_count != other.row_count:
            raise ContractViolation("dimension mismatch in matrix product")
        words = np.zeros(
            (self.row_count, _word_count(other.col_count)), dtype=np.uint64
        )
        for i in range(self.row_count):
            sel = np.nonzero(_unpack_bits(self._words[i], self.col_count))[0]
            if sel.size:
                words[i] = np.bitwise_xor.reduce(other._words[sel], axis=0)
        return Gf2Matrix(self.row_count, other.col_count, words)

    def rank(self) -> int:
        if self._rank is None:
            work = self._words.copy()
            self._rank = len(_rref(work, self.col_count))
        return self._rank

    def solve(self, b: Gf2Vector):
        """One solution of m.x = b, or None when the system is inconsistent.

        Free variables are set to zero, so the result is the echelon-form
        particular solution.
        """
        if b.length != self.row_count:
            raise ContractViolation("right-hand side length must equal row count")
        n = self.col_count
        aug_cols = n + 1
        aug = np.zeros((self.row_count, _word_count(aug_cols)), dtype=np.uint64)
        aug[:, : self._words.shape[1]] = self._words
        w, sh = divmod(n, _WORD)
        bbits = b.to_bits()
        aug[:, w] |= bbits.astype(np.uint64) << np.uint64(sh)
        pivots = _rref(aug, aug_cols)
        if pivots and pivots[-1] == n:
            return None
        xbits = np.zeros(n, dtype=np.uint8)
        for r, c in enumerate(pivots):
            xbits[c] = (aug[r, w] >> np.uint64(sh)) & np.uint64(1)
        return Gf2Vector.from_bits(xbits)

    def kernel_basis(self) -> list[Gf2Vector]:
        """Deterministic basis of the null space, ordered by free column."""
        work = self._words.copy()
        pivots = _rref(work, self.col_count)
        pivot_set = set(pivots)
        basis = []
        for f in range(self.col_count):
            if f in pivot_set:
                continue
            bits = np.zeros(self.col_count, dtype=np.uint8)
            bits[f] = 1
            wf, bf = divmod(f, _WORD)
            for r, c in enumerate(pivots):
                bits[c] = (work[r, wf] >> np.uint64(bf)) & np.uint64(1)
            basis.append(Gf2Vector.from_bits(bits))
        return basis
