"""Bit-packed Boolean matrices and exact brute-force witness oracles.

A row is stored as one Python integer used as a bitset: bit k of
``row_bits[i]`` is the entry in row i, column k. Integers pack bits into
machine words internally, so AND/OR over a whole row is a handful of word
operations, and the maximum witness of an entry is just the highest set bit
of ``row_of_A & column_of_B``. Everything else in the package is checked
against the oracles defined here.

Indices are 0-based throughout. A witness of entry (i, j) of the Boolean
product C = A x B is any k with A[i,k] = B[k,j] = 1; the maximum witness is
the largest such k, and the rank of a witness is 1 plus the number of
strictly greater witnesses (the maximum witness has rank 1).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "BoolMatrix",
    "WitnessMatrix",
    "WitnessLists",
    "bool_product",
    "transpose",
    "max_witness_oracle",
    "witness_mask",
    "witness_count",
    "rank_of",
    "random_matrix",
    "witness_violations",
]


@dataclass(frozen=True)
class BoolMatrix:
    """Immutable Boolean matrix with bit-packed rows.

    Invariant: every row integer is nonnegative and has no bits at or above
    ``cols`` (padding stays canonically zero, so equality and popcounts never
    see garbage bits).
    """

    rows: int
    cols: int
    row_bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix must be at least 1x1")
        if len(self.row_bits) != self.rows:
            raise ValueError("row count does not match row_bits length")
        for r in self.row_bits:
            if r < 0 or (r >> self.cols):
                raise ValueError("row bits exceed column count; padding must stay zero")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "BoolMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def ones(cls, rows: int, cols: int | None = None) -> "BoolMatrix":
        cols = rows if cols is None else cols
        full = (1 << cols) - 1
        return cls(rows, cols, (full,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Iterable[int]]) -> "BoolMatrix":
        """Build from nested 0/1 values, e.g. [[1, 0], [0, 1]]."""
        packed = []
        width = None
        for row in rows:
            vals = [int(bool(v)) for v in row]
            if width is None:
                width = len(vals)
            elif len(vals) != width:
                raise ValueError("ragged rows")
            packed.append(sum(v << k for k, v in enumerate(vals)))
        if width is None or width == 0:
            raise ValueError("matrix must be at least 1x1")
        return cls(len(packed), width, tuple(packed))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BoolMatrix":
        """Build from strings of '0'/'1'; leftmost character is column 0."""
        return cls.from_rows([[c == "1" for c in row] for row in rows])

    @classmethod
    def from_dense(cls, dense: np.ndarray) -> "BoolMatrix":
        arr = np.asarray(dense)
        if arr.ndim != 2:
            raise ValueError("dense array must be 2-D")
        arr = (arr != 0).astype(np.uint8)
        packed = np.packbits(arr, axis=1, bitorder="little")
        rows = tuple(int.from_bytes(packed[i].tobytes(), "little") for i in range(arr.shape[0]))
        return cls(arr.shape[0], arr.shape[1], rows)

    # -- accessors ---------------------------------------------------------

    def get(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) out of range for {self.rows}x{self.cols}")
        return (self.row_bits[i] >> j) & 1

    def to_dense(self) -> np.ndarray:
        """Return an (rows, cols) uint8 array of 0/1 values."""
        nbytes = (self.cols + 7) // 8
        buf = b"".join(r.to_bytes(nbytes, "little") for r in self.row_bits)
        arr = np.frombuffer(buf, np.uint8).reshape(self.rows, nbytes)
        return np.unpackbits(arr, axis=1, bitorder="little")[:, : self.cols].copy()

    def density(self) -> float:
        return sum(r.bit_count() for r in self.row_bits) / (self.rows * self.cols)

    def __str__(self) -> str:
        return "\n".join(
            "".join("1" if (r >> j) & 1 else "0" for j in range(self.cols))
            for r in self.row_bits
        )


class WitnessMatrix:
    """Square matrix of optional witness indices; -1 encodes absence.

    An entry carries a witness exactly when the Boolean product is 1 there.
    """

    __slots__ = ("n", "_w")

    def __init__(self, n: int, entries: np.ndarray | None = None):
        if n < 1:
            raise ValueError("witness matrix must be at least 1x1")
        self.n = n
        if entries is None:
            self._w = np.full((n, n), -1, dtype=np.int64)
        else:
            arr = np.asarray(entries, dtype=np.int64)
            if arr.shape != (n, n):
                raise ValueError("entries must be an n x n array")
            self._w = arr.copy()

    @property
    def array(self) -> np.ndarray:
        """The raw (n, n) int64 array; -1 means no witness."""
        return self._w

    def get(self, i: int, j: int) -> int | None:
        v = int(self._w[i, j])
        return None if v < 0 else v

    def set(self, i: int, j: int, witness: int | None) -> None:
        self._w[i, j] = -1 if witness is None else int(witness)

    def present_mask(self) -> np.ndarray:
        return self._w >= 0

    def present_count(self) -> int:
        return int((self._w >= 0).sum())

    def agreement(self, other: "WitnessMatrix") -> float:
        """Fraction of entries (including absent ones) that match exactly."""
        if self.n != other.n:
            raise ValueError("size mismatch")
        return float((self._w == other._w).mean())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, WitnessMatrix)
            and self.n == other.n
            and bool(np.array_equal(self._w, other._w))
        )

    def __hash__(self) -> int:  # mutable content; not hashable
        raise TypeError("WitnessMatrix is not hashable")

    def to_json_dict(self, one_based: bool = False) -> dict:
        off = 1 if one_based else 0
        ii, jj = np.nonzero(self._w >= 0)
        entries = [
            {"i": int(i) + off, "j": int(j) + off, "witness": int(self._w[i, j]) + off}
            for i, j in zip(ii.tolist(), jj.tolist())
        ]
        return {"n": self.n, "entries": entries}

    @classmethod
    def from_json_dict(cls, obj: dict, one_based: bool = False) -> "WitnessMatrix":
        off = 1 if one_based else 0
        wm = cls(int(obj["n"]))
        for e in obj["entries"]:
            wm.set(int(e["i"]) - off, int(e["j"]) - off, int(e["witness"]) - off)
        return wm

    def to_csv_rows(self, one_based: bool = False) -> list[tuple[int, int, int]]:
        off = 1 if one_based else 0
        ii, jj = np.nonzero(self._w >= 0)
        return [
            (int(i) + off, int(j) + off, int(self._w[i, j]) + off)
            for i, j in zip(ii.tolist(), jj.tolist())
        ]


class WitnessLists:
    """Per-entry lists of distinct witnesses, sorted descending.

    Produced by the k-witness solver: entry (i, j) holds min(k, W) distinct
    witnesses where W is that entry's witness count, so the list is empty
    exactly where the Boolean product is 0.
    """

    __slots__ = ("n", "k", "lists")

    def __init__(self, n: int, k: int, lists: list[list[list[int]]]):
        if len(lists) != n or any(len(row) != n for row in lists):
            raise ValueError("lists must be n x n")
        self.n = n
        self.k = k
        self.lists = lists

    def get(self, i: int, j: int) -> list[int]:
        return self.lists[i][j]

    def lengths(self) -> np.ndarray:
        return np.array([[len(c) for c in row] for row in self.lists], dtype=np.int64)

    def validate(self) -> None:
        """Check sortedness and distinctness; raises ValueError on violation."""
        for row in self.lists:
            for cell in row:
                if len(cell) > self.k:
                    raise ValueError("list longer than k")
                if any(a <= b for a, b in zip(cell, cell[1:])):
                    raise ValueError("list not strictly decreasing")

    def to_json_dict(self, one_based: bool = False) -> dict:
        off = 1 if one_based else 0
        entries = []
        for i, row in enumerate(self.lists):
            for j, cell in enumerate(row):
                if cell:
                    entries.append(
                        {"i": i + off, "j": j + off, "witnesses": [w + off for w in cell]}
                    )
        return {"n": self.n, "k": self.k, "entries": entries}


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def _check_product_dims(a: BoolMatrix, b: BoolMatrix) -> None:
    if a.cols != b.rows:
        raise ValueError(f"inner dimensions differ: {a.rows}x{a.cols} times {b.rows}x{b.cols}")


def bool_product(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    """Boolean matrix product, bit-parallel.

    Row i of the result is the OR of the rows of b selected by the set bits
    of row i of a: O(rows * popcount) word operations in total.
    """
    _check_product_dims(a, b)
    rows_b = b.row_bits
    out = []
    for bits in a.row_bits:
        acc = 0
        m = bits
        while m:
            low = m & -m
            acc |= rows_b[low.bit_length() - 1]
            m ^= low
        out.append(acc)
    return BoolMatrix(a.rows, b.cols, tuple(out))


def transpose(m: BoolMatrix) -> BoolMatrix:
    return BoolMatrix.from_dense(m.to_dense().T)


def max_witness_oracle(a: BoolMatrix, b: BoolMatrix) -> WitnessMatrix:
    """Exact maximum witnesses of a x b via per-entry bitset scans.

    The product must be square (a.rows == b.cols). For each entry the witness
    set is one AND of packed rows; its highest set bit is the answer.
    """
    _check_product_dims(a, b)
    if a.rows != b.cols:
        raise ValueError("witness matrix requires a square product")
    n = a.rows
    bt = transpose(b).row_bits
    w = np.full((n, n), -1, dtype=np.int64)
    for i, ra in enumerate(a.row_bits):
        if ra == 0:
            continue
        wi = w[i]
        for j in range(n):
            m = ra & bt[j]
            if m:
                wi[j] = m.bit_length() - 1
    return WitnessMatrix(n, w)


def witness_mask(a: BoolMatrix, b: BoolMatrix, i: int, j: int) -> int:
    """Bitset of all witnesses of entry (i, j): bit k set iff A[i,k] = B[k,j] = 1."""
    _check_product_dims(a, b)
    if not (0 <= i < a.rows and 0 <= j < b.cols):
        raise IndexError(f"entry ({i}, {j}) out of range")
    col = 0
    for k in range(b.rows):
        col |= ((b.row_bits[k] >> j) & 1) << k
    return a.row_bits[i] & col


def witness_count(a: BoolMatrix, b: BoolMatrix, i: int, j: int) -> int:
    """Number of witnesses of entry (i, j)."""
    return witness_mask(a, b, i, j).bit_count()


def rank_of(a: BoolMatrix, b: BoolMatrix, i: int, j: int, k: int) -> int:
    """Rank of witness k at entry (i, j): 1 + number of strictly greater witnesses."""
    mask = witness_mask(a, b, i, j)
    if not (0 <= k < b.rows) or not (mask >> k) & 1:
        raise ValueError(f"k={k} is not a witness of entry ({i}, {j})")
    return 1 + (mask >> (k + 1)).bit_count()


def random_matrix(n: int, density: float, seed: int) -> BoolMatrix:
    """n x n matrix with i.i.d. Bernoulli(density) entries, reproducible by seed."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    return BoolMatrix.from_dense(rng.random((n, n)) < density)


def witness_violations(a: BoolMatrix, b: BoolMatrix, wm: WitnessMatrix) -> dict:
    """Compare a witness matrix against ground truth.

    Returns counts and small samples of three defect classes:
    invalid (reported k is not a witness), missing (product is 1 but no
    witness reported), spurious (product is 0 but a witness is reported).
    """
    _check_product_dims(a, b)
    pattern = bool_product(a, b)
    bt = transpose(b).row_bits
    invalid: list[tuple[int, int, int]] = []
    missing: list[tuple[int, int]] = []
    spurious: list[tuple[int, int]] = []
    warr = wm.array
    for i, ra in enumerate(a.row_bits):
        prow = pattern.row_bits[i]
        for j in range(wm.n):
            k = int(warr[i, j])
            present = (prow >> j) & 1
            if k < 0:
                if present:
                    missing.append((i, j))
            elif not present:
                spurious.append((i, j))
            elif not (ra >> k) & 1 or not (bt[j] >> k) & 1:
                invalid.append((i, j, k))
    return {
        "invalid": invalid,
        "missing": missing,
        "spurious": spurious,
        "ok": not (invalid or missing or spurious),
    }
