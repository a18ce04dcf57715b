# =======================================================================================
# szclassify/services/reporting.py - Result Files and Run Manifests
# =======================================================================================
import hashlib
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

import pandas as pd
from loguru import logger

from ..config import config
from ..models.enums import DatasetGroup, GROUP_TITLES, MODEL_TITLES
from ..models.schemas import AblationReport, EntropyRanking, EvalResult, RunManifest

MANIFEST_FILE = "run_manifest.json"
MODEL_ORDER = ("svm", "dt", "knn")

Cell = Tuple[str, DatasetGroup]


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _write_csv(frame: pd.DataFrame, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def write_json(payload: Dict[str, Any], path, run_id: Optional[str] = None) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    document = dict(payload)
    if run_id is not None:
        document["run_id"] = run_id
    p.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return p


# ---------- evaluation ----------

def results_grid(results: Mapping[Cell, EvalResult]) -> pd.DataFrame:
    """Model × dataset-group accuracy table; cells not evaluated stay empty."""
    models = [m for m in MODEL_ORDER if any(kind == m for kind, _ in results)]
    rows = []
    for model in models:
        row: Dict[str, Any] = {"model": MODEL_TITLES[model]}
        for group in DatasetGroup:
            result = results.get((model, group))
            row[GROUP_TITLES[group]] = result.accuracy if result is not None else None
        rows.append(row)
    return pd.DataFrame(rows, columns=["model", *(GROUP_TITLES[g] for g in DatasetGroup)])


def eval_row(model: str, group: DatasetGroup, result: EvalResult) -> Dict[str, Any]:
    return {
        "model": model,
        "group": group.value,
        "scheme": result.policy.describe(),
        "split": result.policy.mode.value,
        "folds": len(result.per_fold),
        "n_features": result.n_features,
        "accuracy": result.accuracy,
        "tp": result.tp,
        "tn": result.tn,
        "fp": result.fp,
        "fn": result.fn,
    }


def write_results_grid(results: Mapping[Cell, EvalResult], path) -> Path:
    return _write_csv(results_grid(results), Path(path))


def write_eval_rows(results: Mapping[Cell, EvalResult], path) -> Path:
    rows = [eval_row(model, group, r) for (model, group), r in results.items()]
    return _write_csv(pd.DataFrame(rows), Path(path))


def write_eval_json(result: EvalResult, path, run_id: Optional[str] = None) -> Path:
    return write_json(result.model_dump(mode="json"), path, run_id)


# ---------- ablation ----------

def ablation_frame(report: AblationReport) -> pd.DataFrame:
    return pd.DataFrame(
        [r.model_dump() for r in report.records],
        columns=["step", "removed", "remaining_count", "accuracy"],
    )


def plot_frame(report: AblationReport) -> pd.DataFrame:
    return pd.DataFrame(report.plot_points(), columns=["step", "accuracy"])


def write_ablation(report: AblationReport, out_dir, plot_data: bool = False, run_id: Optional[str] = None) -> List[Path]:
    out = Path(out_dir)
    stem = f"ablation_{report.mode.value}"
    written = [
        _write_csv(ablation_frame(report), out / f"{stem}.csv"),
        write_json(report.model_dump(mode="json"), out / f"{stem}.json", run_id),
    ]
    if plot_data:
        written.append(_write_csv(plot_frame(report), out / f"{stem}_plot.csv"))
    return written


# ---------- ranking ----------

def ranking_frame(ranking: EntropyRanking) -> pd.DataFrame:
    return pd.DataFrame([s.model_dump() for s in ranking.scores], columns=["column", "entropy_bits"])


def write_ranking(ranking: EntropyRanking, path) -> Path:
    return _write_csv(ranking_frame(ranking), Path(path))


# ---------- manifest ----------

def _timestamp() -> str:
    if config.SOURCE_DATE_EPOCH is not None:
        moment = datetime.fromtimestamp(config.SOURCE_DATE_EPOCH, tz=timezone.utc)
    else:
        moment = datetime.now(tz=timezone.utc)
    return moment.replace(microsecond=0).isoformat()


class RunRecorder:
    """Collects what one command read and wrote, then emits its RunManifest.

    The run id hashes command, configs, seed, version and input digests, so it
    is known before any output exists and can be embedded in JSON results.
    """

    def __init__(self, command: str, argv: Iterable[str], seed: int, tool_version: str):
        self.command = command
        self.argv = list(argv)
        self.seed = seed
        self.tool_version = tool_version
        self.configs: Dict[str, Any] = {}
        self.inputs: Dict[str, str] = {}
        self.outputs: Dict[str, str] = {}
        self.started_at = _timestamp()

    def add_config(self, name: str, value: Any) -> None:
        self.configs[name] = value.model_dump(mode="json") if hasattr(value, "model_dump") else value

    def add_inputs(self, paths: Iterable[Path]) -> None:
        for p in paths:
            if Path(p).is_file():
                self.inputs[str(p)] = sha256_file(p)

    def add_outputs(self, paths: Iterable[Path], base: Optional[Path] = None) -> None:
        for p in paths:
            name = str(Path(p).relative_to(base)) if base is not None else str(p)
            self.outputs[name] = sha256_file(p)

    @property
    def run_id(self) -> str:
        identity = {
            "command": self.command,
            "configs": self.configs,
            "inputs": sorted(self.inputs.values()),
            "seed": self.seed,
            "tool_version": self.tool_version,
        }
        return hashlib.sha256(canonical_json(identity).encode("utf-8")).hexdigest()[:16]

    def finish(self, out_dir) -> RunManifest:
        manifest = RunManifest(
            run_id=self.run_id,
            command=self.command,
            argv=self.argv,
            tool_version=self.tool_version,
            seed=self.seed,
            configs=self.configs,
            inputs=self.inputs,
            outputs=self.outputs,
            started_at=self.started_at,
            finished_at=_timestamp(),
        )
        path = write_json(manifest.model_dump(mode="json"), Path(out_dir) / MANIFEST_FILE)
        logger.debug(f"Run manifest {manifest.run_id} written to {path}")
        return manifest
