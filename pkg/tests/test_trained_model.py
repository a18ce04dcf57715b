# =======================================================================================
# tests/test_trained_model.py - Fit/Predict Contract and Model Files
# =======================================================================================
import json

import numpy as np
import pytest

from conftest import make_blobs
from szclassify.models import FeatureMatrix, KnnConfig, SvmConfig, TreeConfig
from szclassify.services.classifiers import (
    KnnModel, SvmModel, TreeModel, fit_model, load_model, parse_model_config, predict_codes,
    save_model,
)
from szclassify.services.classifiers.trained import decision_function, model_from_dict, model_to_dict
from szclassify.utils.exceptions import MissingFile, ModelFormatError, SchemaMismatch

CONFIGS = [TreeConfig(), KnnConfig(k=3), KnnConfig(), SvmConfig(C=2.0)]


@pytest.mark.parametrize(
    "data, expected",
    [({"kind": "dt", "max_depth": 3}, TreeConfig), ({"kind": "knn"}, KnnConfig), ({"kind": "svm", "gamma": 0.1}, SvmConfig)],
)
def test_config_dispatch_on_kind(data, expected):
    assert isinstance(parse_model_config(data), expected)


def test_fit_model_dispatch():
    m = make_blobs(seed=1)
    assert isinstance(fit_model(m, TreeConfig()), TreeModel)
    assert isinstance(fit_model(m, KnnConfig()), KnnModel)
    assert isinstance(fit_model(m, SvmConfig()), SvmModel)


@pytest.mark.parametrize("cfg", CONFIGS, ids=lambda c: f"{c.kind}")
def test_saved_model_predicts_identically(tmp_path, cfg):
    train = make_blobs(n_per_class=15, dims=3, separation=2.0, seed=5)
    queries = make_blobs(n_per_class=10, dims=3, separation=2.0, seed=6)
    model = fit_model(train, cfg)

    path = save_model(model, tmp_path / "model.json")
    again = load_model(path)

    assert again.config == model.config
    assert again.columns == model.columns
    assert np.array_equal(predict_codes(again, queries), predict_codes(model, queries))


def test_svm_decision_values_survive_exactly(tmp_path):
    train = make_blobs(n_per_class=15, dims=2, separation=2.0, seed=9)
    model = fit_model(train, SvmConfig())
    again = load_model(save_model(model, tmp_path / "svm.json"))
    assert np.array_equal(decision_function(again, train), decision_function(model, train))


def test_predict_checks_columns():
    model = fit_model(make_blobs(seed=1), TreeConfig())
    other = FeatureMatrix.from_arrays([[0.0, 1.0]], [0], names=["a", "b"])
    with pytest.raises(SchemaMismatch):
        predict_codes(model, other)


def test_unknown_format_version():
    document = model_to_dict(fit_model(make_blobs(seed=1), TreeConfig()))
    document["format_version"] = 99
    with pytest.raises(ModelFormatError):
        model_from_dict(document)


def test_unknown_kind():
    document = model_to_dict(fit_model(make_blobs(seed=1), TreeConfig()))
    document["kind"] = "forest"
    with pytest.raises(ModelFormatError):
        model_from_dict(document)


def test_malformed_params():
    document = model_to_dict(fit_model(make_blobs(seed=1), KnnConfig(k=1)))
    del document["params"]["X"]
    with pytest.raises(ModelFormatError):
        model_from_dict(document)


def test_not_json(tmp_path):
    path = tmp_path / "model.json"
    path.write_text("not json")
    with pytest.raises(ModelFormatError):
        load_model(path)


def test_missing_model_file(tmp_path):
    with pytest.raises(MissingFile):
        load_model(tmp_path / "absent.json")


def test_document_is_plain_json():
    document = model_to_dict(fit_model(make_blobs(seed=1), SvmConfig()))
    assert json.loads(json.dumps(document)) == document
    assert document["kind"] == "svm"
    assert document["format_version"] == 1


@pytest.mark.parametrize("cfg", [TreeConfig(), KnnConfig(), SvmConfig()], ids=lambda c: f"{c.kind}")
def test_refit_gives_identical_predictions(cfg):
    train = make_blobs(n_per_class=25, dims=3, separation=1.0, seed=14)
    queries = make_blobs(n_per_class=10, dims=3, separation=1.0, seed=15)
    first, second = fit_model(train, cfg), fit_model(train, cfg)
    assert np.array_equal(predict_codes(first, queries), predict_codes(second, queries))
    assert model_to_dict(first) == model_to_dict(second)


def test_saved_run_id_is_ignored_on_load(tmp_path):
    model = fit_model(make_blobs(seed=1), KnnConfig(k=3))
    path = save_model(model, tmp_path / "model.json", run_id="0123456789abcdef")
    assert json.loads(path.read_text())["run_id"] == "0123456789abcdef"
    assert model_to_dict(load_model(path)) == model_to_dict(model)
