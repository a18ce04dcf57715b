# =======================================================================================
# tests/test_knn.py - k-Nearest Neighbours
# =======================================================================================
import numpy as np
import pytest
from pydantic import ValidationError

from conftest import make_blobs
from szclassify.models import FeatureMatrix, KnnConfig, Label
from szclassify.services.classifiers.knn import fit_knn, neighbour_order, resolve_k, vote
from szclassify.services.classifiers.trained import predict, predict_codes
from szclassify.services.preprocessing import fit_standardizer
from szclassify.utils.exceptions import EmptyTrainingSet, KTooLarge


def test_k1_recovers_training_labels():
    rng = np.random.default_rng(3)
    m = FeatureMatrix.from_arrays(rng.normal(size=(25, 3)), rng.integers(0, 2, 25))
    model = fit_knn(m, KnnConfig(k=1))
    assert np.array_equal(predict_codes(model, m), m.labels)


def test_majority_of_three():
    train = FeatureMatrix.from_arrays([[0.0], [0.1], [0.2], [10.0]], [1, 1, 0, 0])
    model = fit_knn(train, KnnConfig(k=3, standardize=False))
    assert predict(model, FeatureMatrix.from_arrays([[0.05]], [0])) == [Label.SZ]


@pytest.mark.parametrize("k", [0, 4, -1])
def test_invalid_k_rejected_by_config(k):
    with pytest.raises(ValidationError):
        KnnConfig(k=k)


def test_k_larger_than_training_set():
    m = FeatureMatrix.from_arrays([[0.0], [1.0], [2.0]], [0, 1, 0])
    with pytest.raises(KTooLarge):
        fit_knn(m, KnnConfig(k=5))


def test_empty_training_set():
    with pytest.raises(EmptyTrainingSet):
        fit_knn(FeatureMatrix.from_arrays(np.empty((0, 2)), []), KnnConfig(k=1))


def test_equal_distances_prefer_lower_index():
    order = neighbour_order(np.array([[0.0]]), np.array([[1.0], [-1.0], [1.0]]))
    assert order[0].tolist() == [0, 1, 2]


def test_tied_vote_takes_nearest_label():
    order = np.array([[2, 1, 0, 3], [1, 2, 0, 3]])
    y = np.array([1, 0, 1, 0], dtype=np.int8)
    assert vote(order, y, 2).tolist() == [1, 0]


def test_matches_exhaustive_sort_oracle():
    rng = np.random.default_rng(17)
    X = rng.normal(size=(20, 3))
    y = rng.integers(0, 2, 20)
    queries = rng.normal(size=(15, 3))
    k = 5
    model = fit_knn(FeatureMatrix.from_arrays(X, y), KnnConfig(k=k, standardize=False))

    expected = []
    for q in queries:
        dist = [(float(np.sqrt(((q - x) ** 2).sum())), i) for i, x in enumerate(X)]
        nearest = [i for _, i in sorted(dist)[:k]]
        expected.append(int(sum(y[nearest]) * 2 > k))
    got = predict_codes(model, FeatureMatrix.from_arrays(queries, [0] * 15))
    assert got.tolist() == expected


def test_auto_k_on_separated_blobs():
    m = make_blobs(n_per_class=30, dims=2, separation=6.0, seed=8)
    k, scores = resolve_k(m.values, m.labels)
    assert k % 2 == 1
    assert scores[k] >= 0.95


def test_auto_candidates_bounded_by_inner_training_size():
    m = make_blobs(n_per_class=3, dims=2, seed=1)
    _, scores = resolve_k(m.values, m.labels)
    # 6 rows, 5 folds: smallest inner training set holds 4 rows
    assert max(scores) <= 4
    assert all(k % 2 == 1 for k in scores)


def test_auto_fit_records_resolved_k(log_messages):
    model = fit_knn(make_blobs(seed=2), KnnConfig())
    assert model.k % 2 == 1
    assert any("resolved k" in msg for msg in log_messages)


def test_standardization_is_embedded():
    # second column dwarfs the first unless standardized
    X = np.array([[0.0, 0.0], [1.0, 1000.0], [0.1, 900.0], [0.9, 50.0]])
    m = FeatureMatrix.from_arrays(X, [0, 1, 1, 0])
    model = fit_knn(m, KnnConfig(k=1))
    assert model.standardizer is not None
    np.testing.assert_allclose(model.X.mean(axis=0), 0.0, atol=1e-12)
    assert np.array_equal(predict_codes(model, m), m.labels)


def test_matches_exhaustive_sort_on_random_instances():
    rng = np.random.default_rng(41)
    for _ in range(50):
        X = rng.normal(size=(20, 5))
        y = rng.integers(0, 2, 20)
        queries = rng.normal(size=(10, 5))
        ranked = [
            [i for _, i in sorted((float(((q - x) ** 2).sum()), i) for i, x in enumerate(X))]
            for q in queries
        ]
        for k in range(1, 20, 2):
            model = fit_knn(FeatureMatrix.from_arrays(X, y), KnnConfig(k=k, standardize=False))
            expected = [int(y[nearest[:k]].sum() * 2 > k) for nearest in ranked]
            got = predict_codes(model, FeatureMatrix.from_arrays(queries, [0] * 10))
            assert got.tolist() == expected


def test_k_equal_to_training_size_predicts_global_majority():
    rng = np.random.default_rng(5)
    X = rng.normal(size=(15, 3))
    y = np.array([1] * 9 + [0] * 6)
    model = fit_knn(FeatureMatrix.from_arrays(X, y), KnnConfig(k=15))
    queries = FeatureMatrix.from_arrays(rng.normal(scale=4.0, size=(30, 3)), [0] * 30)
    assert predict_codes(model, queries).tolist() == [1] * 30



def test_standardizer_comes_from_training_rows_only():
    train = make_blobs(n_per_class=20, dims=2, separation=2.0, seed=3)
    shifted = FeatureMatrix.from_arrays(train.values[:10] + 50.0, train.labels[:10])
    model = fit_knn(train, KnnConfig(k=3))
    assert model.standardizer == fit_standardizer(train)
    predict_codes(model, shifted)
    assert model.standardizer == fit_standardizer(train)
