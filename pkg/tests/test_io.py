"""File formats: text/binary matrices, graphs, dags, witness JSON/CSV."""
from __future__ import annotations

import json

import pytest

from maxwit.boolmat import BoolMatrix, max_witness_oracle, random_matrix
from maxwit.graphs import Dag, VertexWeightedGraph, demo_dag, random_weighted_graph
from maxwit.io import (
    MATRIX_MAGIC,
    canonical_json,
    load_dag,
    load_graph,
    load_matrix,
    read_witness_json,
    save_dag,
    save_graph,
    save_matrix_binary,
    save_matrix_text,
    write_witness_csv,
    write_witness_json,
)


def test_matrix_text_roundtrip(tmp_path):
    for n, cols in ((1, 1), (5, 9), (10, 64), (3, 70)):
        m = BoolMatrix.from_dense(random_matrix(max(n, cols), 0.4, seed=n).to_dense()[:n, :cols])
        p = tmp_path / f"m{n}x{cols}.txt"
        save_matrix_text(p, m)
        assert load_matrix(p) == m


def test_matrix_text_format_is_human_readable(tmp_path):
    p = tmp_path / "m.txt"
    save_matrix_text(p, BoolMatrix.from_strings(["101", "010"]))
    assert p.read_text() == "2 3\n101\n010\n"


def test_matrix_binary_roundtrip_and_header(tmp_path):
    for cols in (1, 63, 64, 65, 129):
        m = random_matrix(max(4, cols), 0.5, seed=cols)
        m = BoolMatrix.from_dense(m.to_dense()[:4, :cols])
        p = tmp_path / f"b{cols}.bmat"
        save_matrix_binary(p, m)
        raw = p.read_bytes()
        assert raw[:4] == MATRIX_MAGIC
        assert int.from_bytes(raw[4:8], "little") == 4
        assert int.from_bytes(raw[8:12], "little") == cols
        assert raw[12:16] == b"\x00" * 4
        stride = (cols + 63) // 64 * 8
        assert len(raw) == 16 + 4 * stride
        assert load_matrix(p) == m


def test_load_matrix_sniffs_format(tmp_path):
    m = random_matrix(6, 0.5, seed=9)
    t, b = tmp_path / "m.txt", tmp_path / "m.bin"
    save_matrix_text(t, m)
    save_matrix_binary(b, m)
    assert load_matrix(t) == load_matrix(b) == m


def test_corrupt_matrix_files_rejected(tmp_path):
    p = tmp_path / "bad"
    p.write_bytes(MATRIX_MAGIC + b"\x01")  # truncated header
    with pytest.raises(ValueError):
        load_matrix(p)
    p.write_bytes(MATRIX_MAGIC + (1).to_bytes(4, "little") + (1).to_bytes(4, "little") + b"\x00\x00\x00\x01" + b"\x00" * 8)
    with pytest.raises(ValueError):
        load_matrix(p)  # reserved bytes must be zero
    p.write_text("2 2\n10\n")
    with pytest.raises(ValueError):
        load_matrix(p)  # missing row
    p.write_text("2 2\n10\n012\n")
    with pytest.raises(ValueError):
        load_matrix(p)  # wrong row length
    p.write_text("")
    with pytest.raises(ValueError):
        load_matrix(p)


def test_binary_padding_must_be_zero(tmp_path):
    p = tmp_path / "pad"
    header = MATRIX_MAGIC + (1).to_bytes(4, "little") + (3).to_bytes(4, "little") + b"\x00" * 4
    p.write_bytes(header + (0b1011).to_bytes(8, "little"))  # bit 3 is padding for cols=3
    with pytest.raises(ValueError):
        load_matrix(p)


def test_witness_json_and_csv(tmp_path):
    a = random_matrix(8, 0.4, seed=31)
    b = random_matrix(8, 0.4, seed=32)
    wm = max_witness_oracle(a, b)
    jp = tmp_path / "w.json"
    write_witness_json(jp, wm)
    assert read_witness_json(jp) == wm
    doc = json.loads(jp.read_text())
    assert set(doc) == {"n", "entries"}

    cp = tmp_path / "w.csv"
    write_witness_csv(cp, wm, one_based=True)
    lines = cp.read_text().splitlines()
    assert lines[0] == "i,j,witness"
    assert len(lines) == 1 + wm.present_count()
    i, j, w = map(int, lines[1].split(","))
    assert wm.get(i - 1, j - 1) == w - 1


def test_graph_roundtrip(tmp_path):
    for seed in range(4):
        g = random_weighted_graph(12, 0.3, seed=seed, directed=bool(seed % 2))
        p = tmp_path / f"g{seed}.txt"
        save_graph(p, g)
        h = load_graph(p)
        assert (h.n, h.edges, h.directed) == (g.n, g.edges, g.directed)
        assert h.weights == pytest.approx(g.weights)


def test_graph_text_format(tmp_path):
    g = VertexWeightedGraph(3, ((0, 1), (1, 2)), (1.5, 2.0, 0.25))
    p = tmp_path / "g.txt"
    save_graph(p, g)
    lines = p.read_text().splitlines()
    assert lines[0] == "3 2 weighted"
    assert lines[1:3] == ["0 1", "1 2"]
    assert [float(x) for x in lines[3].split()] == [1.5, 2.0, 0.25]


def test_graph_unweighted_defaults_to_unit_weights(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("3 2 directed\n0 1\n1 2\n")
    g = load_graph(p)
    assert g.directed and g.weights == (1.0, 1.0, 1.0)
    p.write_text("3 1 bogus\n0 1\n")
    with pytest.raises(ValueError):
        load_graph(p)


def test_dag_roundtrip(tmp_path):
    dag = demo_dag()
    p = tmp_path / "d.txt"
    save_dag(p, dag)
    back = load_dag(p)
    assert isinstance(back, Dag)
    assert back.n == dag.n and set(back.edges) == set(dag.edges)
    assert p.read_text().splitlines()[0] == "6 6 directed"


def test_canonical_json_is_stable():
    s1 = canonical_json({"b": 1, "a": [2, 3]})
    s2 = canonical_json({"a": [2, 3], "b": 1})
    assert s1 == s2
    assert s1.endswith("\n")
    assert json.loads(s1) == {"a": [2, 3], "b": 1}
