import numpy as np
import pytest

from negtype import errors, io, space


def test_matrix_csv_roundtrip(tmp_path):
    X = space.gen_random_semimetric(5, 9, 0.5, 4.0)
    path = tmp_path / "m.csv"
    path.write_text(io.write_matrix_csv(X))
    Y = io.read_matrix_csv(str(path))
    assert np.array_equal(X.dist, Y.dist)  # .17g is lossless for doubles
    assert Y.labels == tuple(str(i) for i in range(5))


def test_matrix_csv_headerless(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("0,1\n1,0\n")
    Y = io.read_matrix_csv(str(path))
    assert Y.n == 2
    assert Y.labels is None


def test_matrix_csv_rejects_garbage(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("a,b\n0,1\n")
    with pytest.raises(errors.AsymmetricMatrix):
        io.read_matrix_csv(str(path))  # 1 data row under a 2-label header
    path.write_text("0,1,2\n1,0\n")
    with pytest.raises(errors.AsymmetricMatrix):
        io.read_matrix_csv(str(path))
    path.write_text("0,1\n2,0\n")
    with pytest.raises(errors.AsymmetricMatrix):
        io.read_matrix_csv(str(path))


def test_tree_file(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("# a star\n0 1 1.0\n\n0 2 1.0\n0 3 1.0\n")
    edges = io.read_tree_edge_list(str(path))
    assert edges == [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]
    X = io.read_tree_edges(str(path))
    assert X.n == 4
    assert X.dist[1, 2] == 2.0


def test_tree_file_malformed(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("0 1\n")
    with pytest.raises(errors.NotATree):
        io.read_tree_edge_list(str(path))
    path.write_text("0 x 1.0\n")
    with pytest.raises(errors.NotATree):
        io.read_tree_edge_list(str(path))


def test_json_roundtrip():
    X = space.gen_star(3, 1.5)
    text = io.space_to_json(X)
    Y = io.space_from_json(text)
    assert np.array_equal(X.dist, Y.dist)
    assert Y.labels == X.labels
    assert io.space_to_json(Y) == text
