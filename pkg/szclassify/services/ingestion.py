# =======================================================================================
# szclassify/services/ingestion.py - Table Loading, Merging and Column Selection
# =======================================================================================
from collections import Counter, OrderedDict
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np
import pandas as pd
from loguru import logger

from ..models.dataset import ColumnSchema, FeatureMatrix, RawTable
from ..models.enums import (
    CANONICAL_FILES, CATEGORICAL_COLUMNS, DEMOGRAPHIC_COLUMNS, DatasetGroup, ERP_COLUMNS,
    GROUP_COLUMN, Label, RAW_ELECTRODE_COLUMNS, SUBJECT_COLUMN, TIMING_COLUMNS, TableKind,
)
from ..models.schemas import IngestReport
from ..utils.exceptions import (
    DataError, DuplicateDemographics, EmptySelection, LabelConflict, MissingHeader,
    NonNumericCell, RowCountMismatch, SchemaMismatch, UnknownColumn, UnknownSubject,
)
from ..utils.validators import SchemaValidator

_MISSING_TOKENS = {"", "na", "nan", "null", "none"}


def load_table(path, expected_kind: TableKind) -> RawTable:
    """Parse one input CSV, checking its header and numeric cells.

    Rows with missing cells are dropped and counted; a non-numeric value in a
    numeric column is an error reported with its data-row number (1-based).
    """
    p = SchemaValidator.require_file(path)
    try:
        frame = pd.read_csv(p, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError:
        raise MissingHeader(f"{p}: file is empty, expected a header row")

    frame.columns = [str(c).strip() for c in frame.columns]
    keep = SchemaValidator.check_header(p, expected_kind, list(frame.columns))
    frame = frame[keep].apply(lambda s: s.str.strip())

    missing = frame.apply(lambda s: s.str.lower().isin(_MISSING_TOKENS))

    for name in keep:
        if name in CATEGORICAL_COLUMNS:
            continue
        parsed = pd.to_numeric(frame[name].where(~missing[name]), errors="coerce")
        bad = (~missing[name]) & ~np.isfinite(parsed.to_numpy(dtype=float, na_value=np.nan))
        if bad.any():
            row = int(np.flatnonzero(bad.to_numpy())[0])
            raise NonNumericCell(p, row + 1, name, frame[name].iloc[row])
        frame[name] = parsed

    incomplete = missing.any(axis=1)
    dropped = int(incomplete.sum())
    if dropped:
        logger.info(f"{p}: dropped {dropped} row(s) with missing cells")
    frame = frame.loc[~incomplete].reset_index(drop=True)

    logger.debug(f"Loaded {expected_kind.value} table {p} ({len(frame)} rows)")
    return RawTable(kind=expected_kind, path=str(p), frame=frame, dropped_rows=dropped)


def _rows_by_subject(table: RawTable) -> "OrderedDict[str, List[int]]":
    groups: "OrderedDict[str, List[int]]" = OrderedDict()
    for i, subject in enumerate(table.frame[SUBJECT_COLUMN]):
        groups.setdefault(subject, []).append(i)
    return groups


def _check_kind(table: RawTable, kind: TableKind) -> None:
    if table.kind is not kind:
        raise SchemaMismatch(f"Expected a {kind.value} table, got {table.kind.value}")


def merge(erp: RawTable, eeg: RawTable, demo: RawTable) -> FeatureMatrix:
    """Join ERP and EEG observation rows with subject demographics.

    ERP and EEG rows of a subject pair up in file order; a single ERP row is
    broadcast to all of the subject's EEG rows. Output rows follow the EEG table.
    """
    _check_kind(erp, TableKind.ERP_AVERAGES)
    _check_kind(eeg, TableKind.EEG_TRIALS)
    _check_kind(demo, TableKind.DEMOGRAPHICS)

    counts = Counter(demo.frame[SUBJECT_COLUMN])
    duplicated = sorted(s for s, c in counts.items() if c > 1)
    if duplicated:
        raise DuplicateDemographics(f"Subjects listed more than once in demographics: {', '.join(duplicated)}")

    demographics: Dict[str, Tuple[List[float], Label]] = {}
    for i, row in demo.frame.iterrows():
        where = f"{demo.path}: row {i + 1}: "
        gender = SchemaValidator.parse_gender(row["gender"], where)
        demographics[row[SUBJECT_COLUMN]] = (
            [float(row["age"]), float(gender), float(row["education"])],
            SchemaValidator.parse_group(row[GROUP_COLUMN], where),
        )

    erp_rows = _rows_by_subject(erp)
    eeg_rows = _rows_by_subject(eeg)

    only_erp = [s for s in erp_rows if s not in eeg_rows]
    only_eeg = [s for s in eeg_rows if s not in erp_rows]
    if only_erp or only_eeg:
        raise UnknownSubject(
            "ERP and EEG tables cover different subjects "
            f"(ERP only: {', '.join(only_erp) or '-'}; EEG only: {', '.join(only_eeg) or '-'})"
        )
    no_demo = [s for s in eeg_rows if s not in demographics]
    if no_demo:
        raise UnknownSubject(f"Observation rows reference subjects without demographics: {', '.join(no_demo)}")

    erp_values = erp.frame[list(TIMING_COLUMNS) + list(ERP_COLUMNS)].to_numpy(dtype=np.float64)
    eeg_values = eeg.frame[list(RAW_ELECTRODE_COLUMNS)].to_numpy(dtype=np.float64)

    occurrence: Dict[str, int] = {}
    values: List[np.ndarray] = []
    labels: List[int] = []
    subjects: List[str] = []

    for i, subject in enumerate(eeg.frame[SUBJECT_COLUMN]):
        own_erp = erp_rows[subject]
        n_eeg = len(eeg_rows[subject])
        if len(own_erp) not in (1, n_eeg):
            raise RowCountMismatch(
                f"Subject {subject}: {len(own_erp)} ERP rows cannot pair with {n_eeg} EEG rows"
            )
        j = occurrence.get(subject, 0)
        occurrence[subject] = j + 1
        erp_i = own_erp[0] if len(own_erp) == 1 else own_erp[j]

        demo_values, demo_label = demographics[subject]
        where = f"subject {subject}: "
        erp_label = SchemaValidator.parse_group(erp.frame[GROUP_COLUMN].iloc[erp_i], where)
        eeg_label = SchemaValidator.parse_group(eeg.frame[GROUP_COLUMN].iloc[i], where)
        if not (erp_label == eeg_label == demo_label):
            raise LabelConflict(
                f"Subject {subject}: group disagrees across tables "
                f"(erp={erp_label.name}, eeg={eeg_label.name}, demographics={demo_label.name})"
            )

        values.append(np.concatenate([erp_values[erp_i], eeg_values[i], demo_values]))
        labels.append(int(eeg_label))
        subjects.append(subject)

    schema = ColumnSchema.canonical()
    matrix = np.vstack(values) if values else np.empty((0, len(schema)))
    logger.info(f"Merged feature matrix: {matrix.shape[0]} rows x {matrix.shape[1]} columns")
    return FeatureMatrix(schema, matrix, np.asarray(labels, dtype=np.int8), tuple(subjects))


def select_group(m: FeatureMatrix, g: DatasetGroup) -> FeatureMatrix:
    """Keep the columns whose kind belongs to the group, in schema order."""
    indices = [i for i, col in enumerate(m.schema) if col.kind in g.kinds]
    if not indices:
        raise EmptySelection(f"Dataset group '{g.value}' selects no columns of this schema")
    if len(indices) == m.n_cols:
        return m
    return m.take_columns(indices)


def drop_columns(m: FeatureMatrix, names: Iterable[str]) -> FeatureMatrix:
    names = set(names)
    unknown = names - set(m.names)
    if unknown:
        raise UnknownColumn(unknown)
    if not names:
        return m
    return m.take_columns([i for i, n in enumerate(m.names) if n not in names])


def concat_columns(m: FeatureMatrix, extra: FeatureMatrix, order: Optional[Iterable[str]] = None) -> FeatureMatrix:
    """Put columns of `extra` back beside `m`, optionally reordered by name."""
    if extra.subject_ids != m.subject_ids or not np.array_equal(extra.labels, m.labels):
        raise SchemaMismatch("Cannot join columns from matrices with different rows")
    schema = ColumnSchema(m.schema.columns + extra.schema.columns)
    joined = FeatureMatrix(schema, np.hstack([m.values, extra.values]), m.labels, m.subject_ids)
    if order is None:
        return joined
    return joined.take_columns([schema.index(n) for n in order])


# ---------- convenience ----------

def resolve_paths(
    data_dir=None, erp=None, eeg=None, demo=None,
) -> Dict[TableKind, Path]:
    """Canonical file names inside data_dir, overridden per table."""
    base = Path(data_dir) if data_dir else Path(".")
    return {
        TableKind.ERP_AVERAGES: Path(erp) if erp else base / CANONICAL_FILES[TableKind.ERP_AVERAGES],
        TableKind.EEG_TRIALS: Path(eeg) if eeg else base / CANONICAL_FILES[TableKind.EEG_TRIALS],
        TableKind.DEMOGRAPHICS: Path(demo) if demo else base / CANONICAL_FILES[TableKind.DEMOGRAPHICS],
    }


def ingest(paths: Mapping[TableKind, Path]) -> FeatureMatrix:
    """Load the three tables and merge them."""
    tables = {kind: load_table(path, kind) for kind, path in paths.items()}
    return merge(tables[TableKind.ERP_AVERAGES], tables[TableKind.EEG_TRIALS], tables[TableKind.DEMOGRAPHICS])


def check_inputs(paths: Mapping[TableKind, Path]) -> IngestReport:
    """Load and merge, collecting every violation instead of stopping at the first."""
    violations: List[str] = []
    tables: Dict[TableKind, RawTable] = {}
    for kind, path in paths.items():
        try:
            tables[kind] = load_table(path, kind)
        except DataError as e:
            violations.append(f"{kind.value}: {e}")

    report = dict(
        table_rows={k.value: t.n_rows for k, t in tables.items()},
        dropped_rows={k.value: t.dropped_rows for k, t in tables.items()},
    )
    if violations:
        return IngestReport(ok=False, violations=violations, **report)

    try:
        m = merge(tables[TableKind.ERP_AVERAGES], tables[TableKind.EEG_TRIALS], tables[TableKind.DEMOGRAPHICS])
    except DataError as e:
        return IngestReport(ok=False, violations=[f"merge: {e}"], **report)

    label_counts = Counter(label.name for label in m.label_list)
    return IngestReport(
        ok=True, n_rows=m.n_rows, n_cols=m.n_cols,
        label_counts={name: label_counts.get(name, 0) for name in ("SZ", "HC")},
        **report,
    )
