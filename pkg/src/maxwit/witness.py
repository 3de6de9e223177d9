"""Randomized and strip-based witness solvers for Boolean matrix products.

Three families live here:

* an exact solver that splits the inner dimension into strips, finds the
  highest strip whose partial product is 1 for each entry, and scans only
  that strip (identical output to the brute-force oracle for every input);
* single-witness / k-witness solvers built on random column sampling: where
  exactly one sampled column survives, the integer products count(i,j) and
  sum(i,j) pin that witness down; a deterministic fallback scan tops up any
  entry the sampling missed, so the advertised contract holds for every seed;
* two approximation schemes: a rank-bounded solver (reported witness always
  has rank at most the strip width) and a multiwitness scheme that repeatedly
  halves the second factor and keeps the best witness seen per entry.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .boolmat import (
    BoolMatrix,
    WitnessLists,
    WitnessMatrix,
    transpose,
)
from .rng import np_stream

__all__ = [
    "StripDecomposition",
    "ApproxParams",
    "default_strip_width",
    "strip_decomposition",
    "largest_nonzero_strip",
    "exact_max_witness_strips",
    "single_witness_product",
    "k_witness",
    "approx_rank_bounded",
    "approx_multiwitness",
    "approx_multiwitness_boosted",
    "witness_rank_matrix",
]

# Stream tags keep the seed spaces of the different solvers disjoint.
_TAG_SINGLE = 1
_TAG_KWIT = 2
_TAG_RANK = 3
_TAG_MULTI = 4


@dataclass(frozen=True)
class StripDecomposition:
    """Partition of the inner index range [0, n) into strips of width ell.

    All strips have width ell except possibly the last; ``masks[p]`` is the
    bitset covering strip p, for intersecting packed rows directly.
    """

    n: int
    ell: int
    ranges: tuple[tuple[int, int], ...]
    masks: tuple[int, ...]

    @classmethod
    def build(cls, n: int, ell: int) -> "StripDecomposition":
        if n < 1:
            raise ValueError("n must be at least 1")
        if not 1 <= ell <= n:
            raise ValueError(f"strip width must satisfy 1 <= ell <= n, got ell={ell}, n={n}")
        ranges = []
        masks = []
        for start in range(0, n, ell):
            end = min(start + ell, n)
            ranges.append((start, end))
            masks.append(((1 << (end - start)) - 1) << start)
        return cls(n, ell, tuple(ranges), tuple(masks))

    def strip_of(self, k: int) -> int:
        if not 0 <= k < self.n:
            raise IndexError(f"index {k} outside [0, {self.n})")
        return k // self.ell

    def __len__(self) -> int:
        return len(self.ranges)


def strip_decomposition(n: int, ell: int) -> StripDecomposition:
    return StripDecomposition.build(n, ell)


def default_strip_width(n: int) -> int:
    """Default ell = ceil(n^(2/3)), balancing strip count against strip width."""
    return max(1, math.ceil(n ** (2.0 / 3.0)))


@dataclass(frozen=True)
class ApproxParams:
    """Parameters of the multiwitness approximation.

    k is the per-round witness budget; the rank analysis needs k >= 4.
    """

    k: int
    reps: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.k < 4:
            raise ValueError("multiwitness approximation requires k >= 4")
        if self.reps < 1:
            raise ValueError("reps must be at least 1")


def _square_dims(a: BoolMatrix, b: BoolMatrix) -> tuple[int, int]:
    if a.cols != b.rows:
        raise ValueError("inner dimensions differ")
    if a.rows != b.cols:
        raise ValueError("square product required")
    return a.rows, a.cols


# ---------------------------------------------------------------------------
# Exact strip solver
# ---------------------------------------------------------------------------


def largest_nonzero_strip(a: BoolMatrix, b: BoolMatrix, dec: StripDecomposition) -> np.ndarray:
    """For each entry, the highest strip p whose partial product is 1, else -1.

    Scans strips from the top; per row a bitset of still-unassigned columns
    shrinks as strips claim entries, so total OR work matches one Boolean
    product.
    """
    if a.cols != b.rows:
        raise ValueError("inner dimensions differ")
    if dec.n != a.cols:
        raise ValueError("decomposition does not cover the inner dimension")
    out = np.full((a.rows, b.cols), -1, dtype=np.int64)
    rows_b = b.row_bits
    full = (1 << b.cols) - 1
    for i, ra in enumerate(a.row_bits):
        if ra == 0:
            continue
        remaining = full
        oi = out[i]
        for p in range(len(dec.masks) - 1, -1, -1):
            rp = ra & dec.masks[p]
            if not rp:
                continue
            acc = 0
            m = rp
            while m:
                low = m & -m
                acc |= rows_b[low.bit_length() - 1]
                m ^= low
            newly = acc & remaining
            if not newly:
                continue
            mm = newly
            while mm:
                low = mm & -mm
                oi[low.bit_length() - 1] = p
                mm ^= low
            remaining &= ~newly
            if not remaining:
                break
    return out


def exact_max_witness_strips(a: BoolMatrix, b: BoolMatrix, ell: int | None = None) -> WitnessMatrix:
    """Exact maximum witnesses via strip decomposition.

    The maximum witness lives in the highest strip whose partial product is
    nonzero, so only that strip is scanned per entry. Output is identical to
    max_witness_oracle for every input and every strip width.
    """
    n, q = _square_dims(a, b)
    if ell is None:
        ell = default_strip_width(q)
    dec = StripDecomposition.build(q, ell)
    parr = largest_nonzero_strip(a, b, dec)
    bt = transpose(b).row_bits
    w = np.full((n, n), -1, dtype=np.int64)
    masks = dec.masks
    arows = a.row_bits
    for i, j in zip(*np.nonzero(parr >= 0)):
        w[i, j] = (arows[i] & bt[j] & masks[parr[i, j]]).bit_length() - 1
    return WitnessMatrix(n, w)


# ---------------------------------------------------------------------------
# Sampling core
# ---------------------------------------------------------------------------


def _sample_rounds(n_scale: int, k: int) -> int:
    # enough rounds that the fallback rarely fires when W is near k
    return 2 * math.ceil(math.log2(max(n_scale, 2))) + 2 * k


def _collect_witnesses(
    a_dense: np.ndarray, b_dense: np.ndarray, k: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Find min(k, W) distinct witnesses per entry of the product of 0/1 arrays.

    Returns (found, counts, wcount): found is (p, r, k) int64 sorted
    descending per entry and padded with -1; counts equals min(k, wcount)
    for every entry, unconditionally.

    Entries with a single witness are read off the full integer products
    count(i,j) and sum(i,j). Entries with at most k witnesses take their
    complete witness set directly. Entries with more than k witnesses draw
    random column subsets at rate 2^-t near t = log2(W); each subset where
    exactly one witness survives contributes that witness. A final
    deterministic scan fills whatever the sampling missed.
    """
    p, q = a_dense.shape
    q2, r = b_dense.shape
    if q != q2:
        raise ValueError("inner dimensions differ")
    af = a_dense.astype(np.float64)
    bf = b_dense.astype(np.float64)
    # counts and index sums stay far below 2^53, so float64 products are exact
    wcount = (af @ bf).astype(np.int64)
    target = np.minimum(wcount, k)
    found = np.full((p, r, k), -1, dtype=np.int64)
    cnt = np.zeros((p, r), dtype=np.int64)

    weights = np.arange(q, dtype=np.float64)
    sum0 = ((af * weights) @ bf).astype(np.int64)
    one = wcount == 1
    if one.any():
        found[:, :, 0][one] = sum0[one]
        cnt[one] = 1

    few = (wcount > 1) & (wcount <= k)
    if few.any():
        ii, jj = np.nonzero(few)
        sub = (a_dense[ii] & b_dense[:, jj].T).astype(np.int32)  # (m, q)
        score = sub * (np.arange(q, dtype=np.int32) + 1)
        rows = np.arange(len(ii))
        for s in range(min(k, q)):
            top = score.argmax(axis=1)
            ok = score[rows, top] > 0
            found[ii[ok], jj[ok], s] = top[ok]
            score[rows, top] = 0
        cnt[ii, jj] = wcount[ii, jj]

    active = wcount > k
    if active.any():
        rounds = _sample_rounds(max(p, q, r), k)
        unfinished = active & (cnt < target)
        for t in range(1, math.ceil(math.log2(max(q, 2))) + 1):
            band = unfinished & (wcount >= (1 << (t - 1))) & (wcount <= (4 << t))
            if not band.any():
                continue
            rate = 2.0**-t
            for _ in range(rounds):
                cols = np.flatnonzero(rng.random(q) < rate)
                if cols.size == 0:
                    continue
                asub = af[:, cols]
                bsub = bf[cols, :]
                cnt_s = asub @ bsub
                hit = (cnt_s == 1.0) & unfinished
                if hit.any():
                    sums = (asub * cols.astype(np.float64)) @ bsub
                    ii, jj = np.nonzero(hit)
                    w = sums[ii, jj].astype(np.int64)
                    fresh = ~(found[ii, jj, :] == w[:, None]).any(axis=1)
                    if fresh.any():
                        ii, jj, w = ii[fresh], jj[fresh], w[fresh]
                        slots = cnt[ii, jj]
                        found[ii, jj, slots] = w
                        cnt[ii, jj] = slots + 1
                        unfinished = active & (cnt < target)
                        band = band & unfinished
                        if not band.any():
                            break
            if not unfinished.any():
                break

    shortfall = np.nonzero(cnt < target)
    for i, j in zip(*shortfall):
        have = set(found[i, j, : cnt[i, j]].tolist())
        ks = np.flatnonzero(a_dense[i] & b_dense[:, j])
        for kk in ks[::-1]:
            if cnt[i, j] >= target[i, j]:
                break
            kk = int(kk)
            if kk not in have:
                found[i, j, cnt[i, j]] = kk
                cnt[i, j] += 1

    found = np.sort(found, axis=2)[:, :, ::-1]  # descending, -1 padding last
    assert (cnt == target).all()
    return np.ascontiguousarray(found), cnt, wcount


# ---------------------------------------------------------------------------
# Witness products
# ---------------------------------------------------------------------------


def single_witness_product(a: BoolMatrix, b: BoolMatrix, seed: int = 0) -> WitnessMatrix:
    """One genuine witness per nonzero product entry; absent elsewhere.

    Which witness is reported depends on the seed; its validity does not.
    """
    n, _ = _square_dims(a, b)
    found, _, _ = _collect_witnesses(a.to_dense(), b.to_dense(), 1, np_stream(seed, _TAG_SINGLE))
    return WitnessMatrix(n, found[:, :, 0])


def k_witness(a: BoolMatrix, b: BoolMatrix, k: int, seed: int = 0) -> WitnessLists:
    """min(k, W) distinct witnesses per entry, sorted descending.

    The length contract holds for every seed; the sampling only decides which
    witnesses are reported when there are more than k.
    """
    n, q = _square_dims(a, b)
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= n, got k={k}, n={n}")
    found, cnt, _ = _collect_witnesses(a.to_dense(), b.to_dense(), k, np_stream(seed, _TAG_KWIT))
    lists = [
        [found[i, j, : cnt[i, j]].tolist() for j in range(n)]
        for i in range(n)
    ]
    return WitnessLists(n, k, lists)


def approx_rank_bounded(a: BoolMatrix, b: BoolMatrix, ell: int, seed: int = 0) -> WitnessMatrix:
    """Witness of rank at most ell per nonzero entry.

    Runs the single-witness solver on each strip pair and keeps, per entry,
    the witness from the highest strip whose partial product is nonzero. All
    greater witnesses then lie inside that strip, so the rank is at most its
    width. ell=1 degenerates to exact maximum witnesses.
    """
    n, q = _square_dims(a, b)
    dec = StripDecomposition.build(q, ell)
    ad = a.to_dense()
    bd = b.to_dense()
    wit = np.full((n, n), -1, dtype=np.int64)
    for p in range(len(dec.ranges) - 1, -1, -1):
        s, e = dec.ranges[p]
        found, _, _ = _collect_witnesses(
            ad[:, s:e], bd[s:e, :], 1, np_stream(seed, _TAG_RANK, p)
        )
        wp = found[:, :, 0]
        newly = (wp >= 0) & (wit < 0)
        if newly.any():
            wit[newly] = wp[newly] + s
    return WitnessMatrix(n, wit)


def _multiwitness_rounds(n: int) -> int:
    return math.ceil(2 * math.log2(max(n, 2))) + 2


def _multiwitness_run(a: BoolMatrix, b: BoolMatrix, k: int, seed: int, rep: int) -> np.ndarray:
    n, _ = _square_dims(a, b)
    ad = a.to_dense()
    d = b.to_dense().copy()
    wit = np.full((n, n), -1, dtype=np.int64)
    for rnd in range(_multiwitness_rounds(n)):
        rng = np_stream(seed, _TAG_MULTI, rep, rnd)
        found, _, _ = _collect_witnesses(ad, d, k, rng)
        wit = np.maximum(wit, found[:, :, 0])  # descending order: slot 0 is the max
        # keep each remaining 1 of the second factor with probability 1/2
        d &= (rng.random(d.shape) < 0.5).astype(np.uint8)
    return wit


def approx_multiwitness(a: BoolMatrix, b: BoolMatrix, params: ApproxParams) -> WitnessMatrix:
    """One round-robin of k-witness calls against a halving second factor.

    Every nonzero product entry receives some genuine witness (the first
    round sees the intact factor); with constant probability per entry the
    best witness kept has rank at most 4*ceil(W/k).
    """
    if params.reps != 1:
        raise ValueError("single run takes reps=1; use approx_multiwitness_boosted for reps>1")
    n = a.rows
    return WitnessMatrix(n, _multiwitness_run(a, b, params.k, params.seed, 0))


def approx_multiwitness_boosted(a: BoolMatrix, b: BoolMatrix, params: ApproxParams) -> WitnessMatrix:
    """Entrywise best witness over params.reps independent runs."""
    n, _ = _square_dims(a, b)
    wit = np.full((n, n), -1, dtype=np.int64)
    for rep in range(params.reps):
        wit = np.maximum(wit, _multiwitness_run(a, b, params.k, params.seed, rep))
    return WitnessMatrix(n, wit)


# ---------------------------------------------------------------------------
# Rank checking
# ---------------------------------------------------------------------------


def witness_rank_matrix(a: BoolMatrix, b: BoolMatrix, wm: WitnessMatrix) -> np.ndarray:
    """Rank of every reported witness: -1 where absent, -2 where invalid.

    Vectorized over all entries via suffix counts of the witness tensor;
    meant for verifying rank bounds over many runs quickly.
    """
    if a.cols != b.rows or a.rows != b.cols or wm.n != a.rows:
        raise ValueError("dimension mismatch")
    n = wm.n
    q = a.cols
    ad = a.to_dense()
    bd = b.to_dense()
    t = ad[:, :, None] & bd[None, :, :]  # (n, q, n); t[i,k,j] = 1 iff k witnesses (i,j)
    padded = np.concatenate([t, np.zeros((n, 1, n), dtype=np.uint8)], axis=1)
    suffix = padded[:, ::-1, :].cumsum(axis=1, dtype=np.int32)[:, ::-1, :]
    ranks = np.full((n, n), -1, dtype=np.int64)
    w = wm.array
    ii, jj = np.nonzero(w >= 0)
    if ii.size == 0:
        return ranks
    kk = w[ii, jj]
    if (kk >= q).any():
        raise ValueError("witness index out of range")
    valid = t[ii, kk, jj] == 1
    greater = suffix[ii, kk + 1, jj].astype(np.int64)
    ranks[ii, jj] = np.where(valid, greater + 1, -2)
    return ranks
