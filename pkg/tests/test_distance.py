# =======================================================================================
# tests/test_distance.py - Euclidean Distance and RBF Kernel
# =======================================================================================
import math

import numpy as np
import pytest

from szclassify.services.classifiers.distance import (
    euclidean_distance, rbf_kernel, rbf_matrix, squared_distances,
)
from szclassify.utils.exceptions import InvalidConfig, LengthMismatch, SzClassifyError


def test_pythagorean_pair():
    assert euclidean_distance([0, 0], [3, 4]) == 5.0


def test_distance_to_self():
    a = np.array([1.5, -2.0, 7.0])
    assert euclidean_distance(a, a) == 0.0


def test_ten_dimensional_pair_matches_summation():
    rng = np.random.default_rng(9)
    a, b = rng.normal(size=10), rng.normal(size=10)
    expected = math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))
    assert euclidean_distance(a, b) == pytest.approx(expected, abs=1e-12)


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        euclidean_distance([1, 2], [1, 2, 3])


def test_kernel_of_identical_points():
    assert rbf_kernel([1, 2], [1, 2], gamma=3.7) == 1.0


def test_kernel_unit_distance():
    assert rbf_kernel([0, 0], [1, 0], gamma=1.0) == pytest.approx(math.exp(-1), abs=1e-6)


def test_kernel_with_zero_gamma():
    assert rbf_kernel([0, 0], [50, -3], gamma=0.0) == 1.0


def test_negative_gamma_rejected():
    with pytest.raises(InvalidConfig) as info:
        rbf_kernel([0], [1], gamma=-1.0)
    assert isinstance(info.value, SzClassifyError)
    assert info.value.to_dict()["error"] == "InvalidConfig"


def test_kernel_is_one_on_the_diagonal_and_symmetric():
    rng = np.random.default_rng(21)
    vectors = rng.normal(scale=3.0, size=(1000, 6))
    gammas = rng.uniform(0.0, 2.0, size=1000)
    for a, b, gamma in zip(vectors, vectors[::-1], gammas):
        assert rbf_kernel(a, a, gamma) == 1.0
        forward = rbf_kernel(a, b, gamma)
        assert forward == rbf_kernel(b, a, gamma)
        assert 0.0 <= forward <= 1.0


def test_matrix_forms_agree_with_pairwise():
    rng = np.random.default_rng(4)
    X, Y = rng.normal(size=(7, 3)), rng.normal(size=(5, 3))
    D = squared_distances(X, Y)
    K = rbf_matrix(X, Y, 0.4)
    for i in range(7):
        for j in range(5):
            assert D[i, j] == pytest.approx(euclidean_distance(X[i], Y[j]) ** 2, abs=1e-12)
            assert K[i, j] == pytest.approx(rbf_kernel(X[i], Y[j], 0.4), abs=1e-12)
