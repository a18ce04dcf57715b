# =======================================================================================
# szclassify/main.py - Command-Line Entry Point
# =======================================================================================
import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from loguru import logger
from pydantic import ValidationError

from . import __version__
from .config import config
from .models.enums import AblationMode, DatasetGroup, SchemeKind, SplitMode
from .models.schemas import BinningConfig, SplitPolicy, SynthConfig
from .services.ablation import run_entropy_incremental, run_leave_one_out
from .services.classifiers.trained import fit_model, parse_model_config, save_model
from .services.entropy import rank_features
from .services.evaluation import evaluate
from .services.ingestion import check_inputs, ingest, resolve_paths, select_group
from .services.reporting import (
    RunRecorder, write_ablation, write_eval_json, write_eval_rows, write_json, write_ranking,
    write_results_grid,
)
from .services.synthetic import write_cohort
from .utils.exceptions import SzClassifyError
from .utils.log import configure_logging

MODEL_CHOICES = ("dt", "knn", "svm")
SPLIT_MODES = {"trial": SplitMode.TRIAL_LEVEL, "subject": SplitMode.SUBJECT_LEVEL}
ABLATION_MODES = {
    "leave-one-out": AblationMode.LEAVE_ONE_OUT,
    "entropy-incremental": AblationMode.ENTROPY_INCREMENTAL,
}


# ---------- flag parsing ----------

def parse_scheme(text: str) -> Tuple[SchemeKind, Optional[float]]:
    """'kfold:K', 'holdout:F' or 'resub'."""
    name, _, value = text.partition(":")
    try:
        if name == "kfold":
            return SchemeKind.KFOLD, int(value) if value else None
        if name == "holdout":
            return SchemeKind.HOLDOUT, float(value) if value else None
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid scheme parameter in {text!r}")
    if name == "resub" and not value:
        return SchemeKind.RESUBSTITUTION, None
    raise argparse.ArgumentTypeError(f"scheme must be kfold:K, holdout:F or resub, got {text!r}")


def _auto_or_int(text: str):
    if text == "auto":
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or an integer, got {text!r}")


def _scale_or_float(text: str):
    if text == "scale":
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'scale' or a number, got {text!r}")


def _shared_flags() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--seed", type=int, default=config.SEED)
    shared.add_argument("--out", default=config.OUT_DIR, help="output directory")
    shared.add_argument("--log-level", default=None, help="loguru level (default from SZC_LOG_LEVEL)")
    return shared


def _data_flags() -> argparse.ArgumentParser:
    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--data", default=None, help="directory holding the three canonical CSV files")
    data.add_argument("--erp", default=None, help="ERP averages CSV (overrides --data)")
    data.add_argument("--eeg", default=None, help="EEG trials CSV (overrides --data)")
    data.add_argument("--demo", default=None, help="demographics CSV (overrides --data)")
    return data


def _experiment_flags() -> argparse.ArgumentParser:
    exp = argparse.ArgumentParser(add_help=False)
    exp.add_argument("--bins", type=int, default=config.BINS)
    exp.add_argument("--split", choices=sorted(SPLIT_MODES), default="trial")
    exp.add_argument("--scheme", type=parse_scheme, default=f"kfold:{config.FOLDS}")
    exp.add_argument("--model", choices=MODEL_CHOICES, default="dt")
    exp.add_argument("--group", choices=[g.value for g in DatasetGroup], default=DatasetGroup.ALL.value)
    exp.add_argument("--no-standardize", action="store_true")
    exp.add_argument("--no-stratify", action="store_true")
    exp.add_argument("--jobs", type=int, default=config.N_JOBS)

    hyper = exp.add_argument_group("model hyperparameters")
    hyper.add_argument("--k", type=_auto_or_int, default=None)
    hyper.add_argument("--C", type=float, default=None)
    hyper.add_argument("--gamma", type=_scale_or_float, default=None)
    hyper.add_argument("--tol", type=float, default=None)
    hyper.add_argument("--max-passes", type=int, default=None)
    hyper.add_argument("--max-depth", type=int, default=None)
    hyper.add_argument("--min-samples-split", type=int, default=None)
    return exp


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="szclassify",
        description="Schizophrenia vs. control classification from ERP/EEG features",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    shared, data, exp = _shared_flags(), _data_flags(), _experiment_flags()

    sub.add_parser("ingest-check", parents=[shared, data], help="validate the input tables")
    sub.add_parser("rank", parents=[shared, data, exp], help="rank features by entropy")
    sub.add_parser("train", parents=[shared, data, exp], help="fit one model on the full matrix")

    ev = sub.add_parser("evaluate", parents=[shared, data, exp], help="estimate accuracy")
    ev.add_argument("--all", action="store_true", help="every model x dataset group")

    ab = sub.add_parser("ablate", parents=[shared, data, exp], help="feature ablation experiments")
    ab.add_argument("--mode", choices=sorted(ABLATION_MODES), required=True)
    ab.add_argument("--plot-data", action="store_true", help="also write (step, accuracy) pairs")

    sy = sub.add_parser("synth", parents=[shared], help="write a synthetic cohort")
    sy.add_argument("--n-hc", type=int, default=32)
    sy.add_argument("--n-sz", type=int, default=49)
    sy.add_argument("--effect-size", type=float, default=1.0)
    sy.add_argument("--trials-per-subject", type=int, default=1)
    sy.add_argument("--informative-columns", type=int, default=9)
    sy.add_argument("--noise-informative", action="store_true")
    return parser


# ---------- configuration from flags ----------

def model_config(args: argparse.Namespace, kind: Optional[str] = None):
    kind = kind or args.model
    fields: Dict[str, Any] = {"kind": kind}
    if kind == "dt":
        fields.update(max_depth=args.max_depth, min_samples_split=args.min_samples_split)
    elif kind == "knn":
        fields.update(k=args.k, standardize=not args.no_standardize)
    else:
        fields.update(
            C=args.C, gamma=args.gamma, tolerance=args.tol, max_passes=args.max_passes,
            seed=args.seed, standardize=not args.no_standardize,
        )
    # unset flags fall back to the model defaults
    return parse_model_config({k: v for k, v in fields.items() if v is not None})


def split_policy(args: argparse.Namespace) -> SplitPolicy:
    scheme, value = args.scheme if isinstance(args.scheme, tuple) else parse_scheme(args.scheme)
    fields: Dict[str, Any] = {
        "mode": SPLIT_MODES[args.split],
        "scheme": scheme,
        "stratified": not args.no_stratify,
        "seed": args.seed,
    }
    if scheme is SchemeKind.KFOLD and value is not None:
        fields["folds"] = value
    if scheme is SchemeKind.HOLDOUT and value is not None:
        fields["test_fraction"] = value
    return SplitPolicy(**fields)


def synth_config(args: argparse.Namespace) -> SynthConfig:
    return SynthConfig(
        n_hc=args.n_hc,
        n_sz=args.n_sz,
        effect_size=args.effect_size,
        noise_dims_informative=args.noise_informative,
        trials_per_subject=args.trials_per_subject,
        informative_columns=args.informative_columns,
        seed=args.seed,
    )


def resolve_configs(args: argparse.Namespace) -> Dict[str, Any]:
    """Every config the subcommand needs, built from flags before any work starts.

    A pydantic ValidationError raised here is a usage error; one raised later is not.
    """
    if args.command == "synth":
        return {"synth": synth_config(args)}
    if args.command == "ingest-check":
        return {}
    kinds = MODEL_CHOICES if getattr(args, "all", False) else (args.model,)
    return {
        "binning": BinningConfig(bin_count=args.bins),
        "policy": split_policy(args),
        "models": {kind: model_config(args, kind) for kind in kinds},
    }


def _paths(args: argparse.Namespace):
    return resolve_paths(args.data, args.erp, args.eeg, args.demo)


# ---------- commands ----------

def cmd_ingest_check(args: argparse.Namespace, cfg: Dict[str, Any], run: RunRecorder, out: Path) -> int:
    paths = _paths(args)
    run.add_inputs(paths.values())
    report = check_inputs(paths)
    written = write_json(report.model_dump(mode="json"), out / "ingest_report.json", run.run_id)
    run.add_outputs([written], out)
    if not report.ok:
        for violation in report.violations:
            logger.error(violation)
        print(json.dumps({"error": "SchemaViolation", "violations": report.violations}), file=sys.stderr)
        return 1
    logger.info(f"Inputs OK: {report.n_rows} rows x {report.n_cols} columns {report.label_counts}")
    return 0


def cmd_rank(args: argparse.Namespace, cfg: Dict[str, Any], run: RunRecorder, out: Path) -> int:
    bins = cfg["binning"]
    paths = _paths(args)
    run.add_config("binning", bins)
    run.add_config("group", args.group)
    run.add_inputs(paths.values())

    m = select_group(ingest(paths), DatasetGroup(args.group))
    ranking = rank_features(m, bins)
    for position, score in enumerate(ranking.scores, start=1):
        logger.debug(f"{position:>3}. {score.column:<12} {score.entropy_bits:.4f} bits")
    run.add_outputs([write_ranking(ranking, out / "ranking.csv")], out)
    return 0


def cmd_train(args: argparse.Namespace, cfg: Dict[str, Any], run: RunRecorder, out: Path) -> int:
    model_cfg = cfg["models"][args.model]
    paths = _paths(args)
    run.add_config("model", model_cfg)
    run.add_config("group", args.group)
    run.add_inputs(paths.values())

    m = select_group(ingest(paths), DatasetGroup(args.group))
    model = fit_model(m, model_cfg)
    target = save_model(model, out / f"model_{model_cfg.kind}_{args.group}.json", run_id=run.run_id)
    run.add_outputs([target], out)
    logger.info(f"Trained {model_cfg.kind} on {m.n_rows} rows x {m.n_cols} columns -> {target}")
    return 0


def cmd_evaluate(args: argparse.Namespace, cfg: Dict[str, Any], run: RunRecorder, out: Path) -> int:
    policy = cfg["policy"]
    paths = _paths(args)
    configs = cfg["models"]
    models = list(configs)
    groups = list(DatasetGroup) if args.all else [DatasetGroup(args.group)]

    run.add_config("policy", policy)
    run.add_config("models", {k: c.model_dump(mode="json") for k, c in configs.items()})
    run.add_config("groups", [g.value for g in groups])
    run.add_inputs(paths.values())

    full = ingest(paths)
    results = {}
    written: List[Path] = []
    for kind in models:
        for group in groups:
            result = evaluate(select_group(full, group), configs[kind], policy, group=group.value, n_jobs=args.jobs)
            logger.info(f"{kind} / {group.value}: accuracy {result.accuracy:.4f} ({policy.describe()})")
            results[(kind, group)] = result
            written.append(write_eval_json(result, out / f"eval_{kind}_{group.value}.json", run.run_id))

    written.append(write_results_grid(results, out / "results.csv"))
    written.append(write_eval_rows(results, out / "eval_rows.csv"))
    run.add_outputs(written, out)
    return 0


def cmd_ablate(args: argparse.Namespace, cfg: Dict[str, Any], run: RunRecorder, out: Path) -> int:
    mode = ABLATION_MODES[args.mode]
    model_cfg = cfg["models"][args.model]
    policy = cfg["policy"]
    paths = _paths(args)
    run.add_config("model", model_cfg)
    run.add_config("policy", policy)
    run.add_config("group", args.group)
    run.add_config("mode", mode.value)
    if mode is AblationMode.ENTROPY_INCREMENTAL:
        run.add_config("binning", cfg["binning"])
    run.add_inputs(paths.values())

    m = select_group(ingest(paths), DatasetGroup(args.group))
    if mode is AblationMode.LEAVE_ONE_OUT:
        report = run_leave_one_out(m, model_cfg, policy, n_jobs=args.jobs)
    else:
        report = run_entropy_incremental(m, model_cfg, policy, cfg["binning"], n_jobs=args.jobs)
    run.add_outputs(write_ablation(report, out, plot_data=args.plot_data, run_id=run.run_id), out)
    return 0


def cmd_synth(args: argparse.Namespace, cfg: Dict[str, Any], run: RunRecorder, out: Path) -> int:
    run.add_config("synth", cfg["synth"])
    run.add_outputs(write_cohort(cfg["synth"], out, run_id=run.run_id).values(), out)
    return 0


COMMANDS = {
    "ingest-check": cmd_ingest_check,
    "rank": cmd_rank,
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "ablate": cmd_ablate,
    "synth": cmd_synth,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand; 0 on success, 1 on a pipeline error, 2 on bad usage."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 0

    try:
        cfg = resolve_configs(args)
    except ValidationError as e:
        print(f"{parser.prog} {args.command}: invalid configuration:\n{e}", file=sys.stderr)
        return 2

    configure_logging(args.log_level)
    out = Path(args.out)
    run = RunRecorder(args.command, argv, args.seed, __version__)
    try:
        code = COMMANDS[args.command](args, cfg, run, out)
    except SzClassifyError as e:
        logger.error(str(e))
        print(json.dumps(e.to_dict()), file=sys.stderr)
        return 1

    run.finish(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
