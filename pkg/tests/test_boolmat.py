"""Bit-packed matrices and brute-force witness oracles vs scalar loops."""
from __future__ import annotations

import numpy as np
import pytest

from maxwit.boolmat import (
    BoolMatrix,
    WitnessLists,
    WitnessMatrix,
    bool_product,
    max_witness_oracle,
    random_matrix,
    rank_of,
    transpose,
    witness_count,
    witness_mask,
    witness_violations,
)
from maxwit.rng import np_stream

from scalar_oracles import (
    dense_product,
    max_witness_dense,
    rank_of_entry,
    witness_count_entry,
)


def _dense(m: BoolMatrix) -> list[list[int]]:
    return m.to_dense().astype(int).tolist()


def test_product_hand_example():
    a = BoolMatrix.from_rows([[1, 1], [0, 1]])
    b = BoolMatrix.from_rows([[1, 0], [1, 1]])
    c = bool_product(a, b)
    assert _dense(c) == [[1, 1], [1, 1]]


def test_product_identity_and_zeros():
    for n in (1, 3, 8, 65):
        a = random_matrix(n, 0.4, seed=n)
        assert bool_product(a, BoolMatrix.identity(n)) == a
        assert bool_product(BoolMatrix.identity(n), a) == a
        z = bool_product(a, BoolMatrix.zeros(n))
        assert all(r == 0 for r in z.row_bits)


def test_product_matches_scalar_loops():
    for seed in range(10):
        rng = np_stream(seed, 900)
        n = int(rng.integers(1, 40))
        m = int(rng.integers(1, 40))
        r = int(rng.integers(1, 40))
        d1, d2 = rng.random(2)
        a = BoolMatrix.from_dense(rng.random((n, m)) < d1)
        b = BoolMatrix.from_dense(rng.random((m, r)) < d2)
        assert _dense(bool_product(a, b)) == dense_product(_dense(a), _dense(b))


def test_product_rejects_dimension_mismatch():
    a = BoolMatrix.zeros(2, 3)
    b = BoolMatrix.zeros(4, 2)
    with pytest.raises(ValueError):
        bool_product(a, b)


def test_padding_must_stay_zero():
    with pytest.raises(ValueError):
        BoolMatrix(1, 2, (4,))  # bit 2 is outside a 2-column row
    with pytest.raises(ValueError):
        BoolMatrix(1, 2, (-1,))


def test_transpose_involution_and_product_identity():
    for seed in range(6):
        a = random_matrix(17, 0.3, seed=seed)
        b = random_matrix(17, 0.6, seed=seed + 100)
        assert transpose(transpose(a)) == a
        # (A x B)^T = B^T x A^T
        assert transpose(bool_product(a, b)) == bool_product(transpose(b), transpose(a))


def test_from_strings_and_str_roundtrip():
    rows = ["10110", "01001", "11111"]
    m = BoolMatrix.from_strings(rows)
    assert str(m).splitlines() == rows
    assert m.get(0, 0) == 1 and m.get(0, 1) == 0 and m.get(2, 4) == 1
    with pytest.raises(IndexError):
        m.get(3, 0)


def test_from_dense_roundtrip_widths():
    # exercise widths around byte and word boundaries
    for cols in (1, 7, 8, 9, 63, 64, 65, 130):
        rng = np_stream(cols, 901)
        dense = (rng.random((5, cols)) < 0.5).astype(np.uint8)
        m = BoolMatrix.from_dense(dense)
        assert m.cols == cols
        assert np.array_equal(m.to_dense(), dense)


def test_random_matrix_density_extremes_and_concentration():
    assert random_matrix(20, 0.0, seed=1) == BoolMatrix.zeros(20)
    assert random_matrix(20, 1.0, seed=1) == BoolMatrix.ones(20)
    n = 128
    for density in (0.1, 0.5, 0.9):
        m = random_matrix(n, density, seed=7)
        ones = sum(r.bit_count() for r in m.row_bits)
        sigma = (n * n * density * (1 - density)) ** 0.5
        assert abs(ones - n * n * density) <= 4 * sigma
    assert random_matrix(32, 0.5, seed=3) == random_matrix(32, 0.5, seed=3)


def test_max_witness_oracle_matches_scalar_loops():
    for seed in range(8):
        for density in (0.01, 0.1, 0.5, 0.9):
            n = 24 if seed % 2 else 33
            a = random_matrix(n, density, seed=seed)
            b = random_matrix(n, density, seed=seed + 50)
            got = max_witness_oracle(a, b).array.tolist()
            assert got == max_witness_dense(_dense(a), _dense(b))


def test_max_witness_oracle_requires_square_product():
    a = BoolMatrix.ones(2, 3)
    b = BoolMatrix.ones(3, 4)
    with pytest.raises(ValueError):
        max_witness_oracle(a, b)


def test_witness_mask_count_rank_vs_scalar():
    a = random_matrix(20, 0.4, seed=11)
    b = random_matrix(20, 0.4, seed=12)
    da, db = _dense(a), _dense(b)
    for i in range(20):
        for j in range(20):
            mask = witness_mask(a, b, i, j)
            assert witness_count(a, b, i, j) == witness_count_entry(da, db, i, j)
            k = mask.bit_length() - 1
            if mask:
                assert rank_of(a, b, i, j, k) == 1
                low = (mask & -mask).bit_length() - 1
                assert rank_of(a, b, i, j, low) == rank_of_entry(da, db, i, j, low)


def test_rank_of_rejects_non_witness():
    a = BoolMatrix.from_rows([[1, 0], [0, 0]])
    b = BoolMatrix.from_rows([[1, 0], [0, 0]])
    assert rank_of(a, b, 0, 0, 0) == 1
    with pytest.raises(ValueError):
        rank_of(a, b, 0, 0, 1)
    with pytest.raises(ValueError):
        rank_of(a, b, 1, 1, 0)


def test_witness_matrix_json_csv_roundtrip():
    wm = WitnessMatrix(3)
    wm.set(0, 1, 2)
    wm.set(2, 2, 0)
    doc = wm.to_json_dict()
    assert doc == {"n": 3, "entries": [{"i": 0, "j": 1, "witness": 2}, {"i": 2, "j": 2, "witness": 0}]}
    assert WitnessMatrix.from_json_dict(doc) == wm
    doc1 = wm.to_json_dict(one_based=True)
    assert doc1["entries"][0] == {"i": 1, "j": 2, "witness": 3}
    assert WitnessMatrix.from_json_dict(doc1, one_based=True) == wm
    assert wm.to_csv_rows(one_based=True) == [(1, 2, 3), (3, 3, 1)]
    assert wm.present_count() == 2


def test_witness_matrix_agreement_and_hash():
    u = WitnessMatrix(2)
    v = WitnessMatrix(2)
    assert u.agreement(v) == 1.0
    v.set(0, 0, 1)
    assert u.agreement(v) == 0.75
    assert u != v
    with pytest.raises(TypeError):
        hash(u)


def test_witness_lists_validate():
    good = WitnessLists(2, 2, [[[3, 1], []], [[2], [0]]])
    good.validate()
    assert good.lengths().tolist() == [[2, 0], [1, 1]]
    bad = WitnessLists(1, 2, [[[1, 2]]])
    with pytest.raises(ValueError):
        bad.validate()
    toolong = WitnessLists(1, 1, [[[5, 3, 1]]])
    with pytest.raises(ValueError):
        toolong.validate()


def test_witness_violations_classes():
    a = random_matrix(12, 0.3, seed=21)
    b = random_matrix(12, 0.3, seed=22)
    wm = max_witness_oracle(a, b)
    assert witness_violations(a, b, wm)["ok"]

    # deterministic corruption: report a k with A[i,k] = 0
    arr = wm.array.copy()
    ii, jj = np.nonzero(arr >= 0)
    i, j = int(ii[0]), int(jj[0])
    zero_k = next(k for k in range(12) if not (a.row_bits[i] >> k) & 1)
    bad = WitnessMatrix(12, arr)
    bad.set(i, j, zero_k)
    rep = witness_violations(a, b, bad)
    assert rep["invalid"] == [(i, j, zero_k)] and not rep["ok"]

    gone = WitnessMatrix(12, arr)
    gone.set(i, j, None)
    assert witness_violations(a, b, gone)["missing"] == [(i, j)]

    zi, zj = [(x, y) for x in range(12) for y in range(12) if arr[x, y] < 0][0]
    extra = WitnessMatrix(12, arr)
    extra.set(zi, zj, 0)
    assert witness_violations(a, b, extra)["spurious"] == [(zi, zj)]
