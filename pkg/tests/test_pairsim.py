import numpy as np
import pytest

from builders import rows_as_dataset
from semrel.errors import AlignmentError, ConfigError
from semrel.featurize import EmbeddingSet
from semrel.pairsim import build_pair_features, cosine, save_pair_features


def test_cosine_known_value():
    assert cosine(np.array([1.0, 2.0]), np.array([2.0, 1.0])) == pytest.approx(0.8)


def test_cosine_parallel_and_orthogonal():
    a = np.array([3.0, 0.0])
    assert cosine(a, 2 * a) == pytest.approx(1.0)
    assert cosine(a, np.array([0.0, 5.0])) == pytest.approx(0.0)
    assert cosine(a, -a) == pytest.approx(-1.0)


def test_cosine_zero_vector_is_zero():
    assert cosine(np.zeros(3), np.array([1.0, 2.0, 3.0])) == 0.0
    assert cosine(np.zeros(2), np.zeros(2)) == 0.0


def test_cosine_dimension_mismatch():
    with pytest.raises(AlignmentError):
        cosine(np.zeros(2), np.zeros(3))


def pair_embeddings(vecs):
    dim = len(next(iter(vecs.values())))
    return EmbeddingSet(provenance="external:t", dim=dim,
                        vectors={k: np.asarray(v, dtype=float) for k, v in vecs.items()})


def test_cosine_only_features():
    ds = rows_as_dataset([("p1", "x", "y", 0.5)], with_score=False)
    emb = pair_embeddings({"p1#a": [1.0, 2.0], "p1#b": [2.0, 1.0]})
    feats = build_pair_features(ds, emb, mode="cosine_only")
    assert feats.feature_names == ["cos"]
    assert feats.matrix.shape == (1, 1)
    assert feats.matrix[0, feats.cosine_col] == pytest.approx(0.8)


def test_rich_features_layout_and_values():
    ds = rows_as_dataset([("p1", "x", "y", 0.5)], with_score=False)
    a = np.array([1.0, -2.0, 0.5])
    b = np.array([0.5, 1.0, 0.5])
    emb = pair_embeddings({"p1#a": a, "p1#b": b})
    feats = build_pair_features(ds, emb, mode="rich")
    assert feats.matrix.shape == (1, 1 + 2 * 3)
    assert feats.feature_names[0] == "cos"
    assert feats.feature_names[1:4] == ["absdiff_0", "absdiff_1", "absdiff_2"]
    assert feats.feature_names[4:] == ["prod_0", "prod_1", "prod_2"]
    row = feats.matrix[0]
    assert row[0] == pytest.approx(cosine(a, b))
    np.testing.assert_allclose(row[1:4], np.abs(a - b), atol=1e-12)
    np.testing.assert_allclose(row[4:], a * b, atol=1e-12)


def test_rich_is_default_mode():
    ds = rows_as_dataset([("p1", "x", "y", 0.5)], with_score=False)
    emb = pair_embeddings({"p1#a": [1.0], "p1#b": [1.0]})
    feats = build_pair_features(ds, emb)
    assert feats.matrix.shape == (1, 3)


def test_unknown_mode_rejected():
    ds = rows_as_dataset([("p1", "x", "y", 0.5)], with_score=False)
    emb = pair_embeddings({"p1#a": [1.0], "p1#b": [1.0]})
    with pytest.raises(ConfigError):
        build_pair_features(ds, emb, mode="everything")


def test_feature_rows_follow_dataset_order():
    ds = rows_as_dataset(
        [("p1", "x", "y", 0.5), ("p2", "x", "y", 0.5)], with_score=False
    )
    emb = pair_embeddings({
        "p1#a": [1.0, 0.0], "p1#b": [1.0, 0.0],
        "p2#a": [1.0, 0.0], "p2#b": [0.0, 1.0],
    })
    feats = build_pair_features(ds, emb, mode="cosine_only")
    assert feats.matrix[:, 0] == pytest.approx([1.0, 0.0])
    assert feats.n_pairs == 2


def test_save_pair_features_round_trip(tmp_path):
    ds = rows_as_dataset(
        [("p1", "x", "y", 0.5), ("p2", "x", "y", 0.5)], with_score=False
    )
    emb = pair_embeddings({
        "p1#a": [1.0, 2.0], "p1#b": [2.0, 1.0],
        "p2#a": [0.25, 0.5], "p2#b": [1.0, 4.0],
    })
    feats = build_pair_features(ds, emb, mode="rich")
    path = tmp_path / "feats.csv"
    save_pair_features(feats, path)
    lines = path.read_text().splitlines()
    assert lines[0].split(",") == feats.feature_names
    assert len(lines) == 1 + feats.n_pairs
    for line, expected_row in zip(lines[1:], feats.matrix):
        values = [float(v) for v in line.split(",")]
        assert values == pytest.approx(list(expected_row), abs=1e-9)
