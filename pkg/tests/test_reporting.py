# =======================================================================================
# tests/test_reporting.py - Result Files and Run Manifests
# =======================================================================================
import json

import pandas as pd
import pytest

from conftest import make_blobs
from szclassify.config import config
from szclassify.models import DatasetGroup, KnnConfig, SplitPolicy, TreeConfig
from szclassify.services.evaluation import evaluate
from szclassify.services.reporting import (
    RunRecorder, canonical_json, results_grid, sha256_file, write_eval_rows, write_json,
)


@pytest.fixture(scope="module")
def results():
    m = make_blobs(n_per_class=10, seed=2)
    policy = SplitPolicy(folds=2)
    return {
        ("knn", DatasetGroup.ALL): evaluate(m, KnnConfig(k=3), policy, group="all"),
        ("dt", DatasetGroup.ERP_ONLY): evaluate(m, TreeConfig(), policy, group="erp"),
    }


class TestResultsGrid:
    def test_layout(self, results):
        grid = results_grid(results)
        assert list(grid.columns) == ["model", "ERP", "EEG & demographic", "ALL"]
        # fixed model order, only evaluated models appear
        assert list(grid["model"]) == ["Decision Tree Classification", "K-NN"]

    def test_missing_cells_are_empty(self, results):
        grid = results_grid(results).set_index("model")
        assert pd.isna(grid.loc["K-NN", "ERP"])
        assert grid.loc["K-NN", "ALL"] == results[("knn", DatasetGroup.ALL)].accuracy
        assert pd.isna(grid.loc["Decision Tree Classification", "EEG & demographic"])

    def test_eval_rows(self, results, tmp_path):
        rows = pd.read_csv(write_eval_rows(results, tmp_path / "rows.csv"))
        assert len(rows) == 2
        assert set(rows["model"]) == {"knn", "dt"}
        assert (rows["folds"] == 2).all()
        assert (rows["tp"] + rows["tn"] + rows["fp"] + rows["fn"] == 20).all()


class TestWriteJson:
    def test_run_id_is_embedded(self, tmp_path):
        path = write_json({"b": 1, "a": 2}, tmp_path / "x" / "doc.json", run_id="abc")
        assert json.loads(path.read_text()) == {"a": 2, "b": 1, "run_id": "abc"}
        assert path.read_text().endswith("\n")

    def test_keys_sorted(self, tmp_path):
        text = write_json({"b": 1, "a": 2}, tmp_path / "doc.json").read_text()
        assert text.index('"a"') < text.index('"b"')

    def test_canonical_json_ignores_key_order(self):
        assert canonical_json({"x": 1, "y": [1, 2]}) == canonical_json({"y": [1, 2], "x": 1})


class TestRunRecorder:
    def _recorder(self, argv=("evaluate",)):
        run = RunRecorder("evaluate", argv, seed=42, tool_version="1.0.0")
        run.add_config("policy", SplitPolicy(folds=3))
        return run

    def test_run_id_ignores_argv(self):
        assert self._recorder(["evaluate", "--out", "a"]).run_id == self._recorder(["evaluate", "--out", "b"]).run_id

    def test_run_id_follows_configs(self):
        other = self._recorder()
        other.add_config("policy", SplitPolicy(folds=4))
        assert other.run_id != self._recorder().run_id
        assert len(other.run_id) == 16

    def test_run_id_follows_input_content(self, tmp_path):
        source = tmp_path / "in.csv"
        source.write_text("a\n1\n")
        first = self._recorder()
        first.add_inputs([source])
        source.write_text("a\n2\n")
        second = self._recorder()
        second.add_inputs([source])
        assert first.run_id != second.run_id

    def test_missing_inputs_are_skipped(self, tmp_path):
        run = self._recorder()
        run.add_inputs([tmp_path / "absent.csv"])
        assert run.inputs == {}

    def test_manifest(self, tmp_path, monkeypatch):
        monkeypatch.setattr(config, "SOURCE_DATE_EPOCH", 0)
        run = self._recorder()
        output = write_json({"v": 1}, tmp_path / "result.json", run.run_id)
        run.add_outputs([output], tmp_path)
        manifest = run.finish(tmp_path)

        assert manifest.outputs == {"result.json": sha256_file(output)}
        assert manifest.started_at == manifest.finished_at == "1970-01-01T00:00:00+00:00"
        written = json.loads((tmp_path / "run_manifest.json").read_text())
        assert written["run_id"] == manifest.run_id == json.loads(output.read_text())["run_id"]
        assert written["configs"]["policy"]["folds"] == 3
