# =======================================================================================
# szclassify/models/dataset.py - Feature Schema and Dataset Containers
# =======================================================================================
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .enums import (
    ColumnKind, DEMOGRAPHIC_COLUMNS, Electrode, ErpComponent, Label, TableKind,
    TIMING_COLUMNS, erp_column,
)
from ..utils.exceptions import NonFiniteValue, SchemaMismatch, UnknownColumn


@dataclass(frozen=True)
class Column:
    """One named feature column and what it measures."""
    name: str
    kind: ColumnKind
    electrode: Optional[Electrode] = None
    component: Optional[ErpComponent] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "kind": self.kind.value,
            "electrode": self.electrode.value if self.electrode else None,
            "component": self.component.value if self.component else None,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Column":
        return cls(
            name=data["name"],
            kind=ColumnKind(data["kind"]),
            electrode=Electrode(data["electrode"]) if data.get("electrode") else None,
            component=ErpComponent(data["component"]) if data.get("component") else None,
        )


@dataclass(frozen=True)
class ColumnSchema:
    """Ordered, uniquely named feature columns."""
    columns: Tuple[Column, ...]

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        seen = set()
        for col in self.columns:
            if col.name in seen:
                raise SchemaMismatch(f"Duplicate column name '{col.name}'")
            seen.add(col.name)

    @classmethod
    def canonical(cls) -> "ColumnSchema":
        """2 timing + 36 ERP + 9 raw electrode + 3 demographic = 50 columns."""
        cols: List[Column] = [Column(n, ColumnKind.TIMING) for n in TIMING_COLUMNS]
        cols += [
            Column(erp_column(e, c), ColumnKind.ERP, electrode=e, component=c)
            for e in Electrode for c in ErpComponent
        ]
        cols += [Column(e.value, ColumnKind.RAW_ELECTRODE, electrode=e) for e in Electrode]
        cols += [Column(n, ColumnKind.DEMOGRAPHIC) for n in DEMOGRAPHIC_COLUMNS]
        return cls(tuple(cols))

    @classmethod
    def of_names(cls, names: Iterable[str], kind: ColumnKind = ColumnKind.DEMOGRAPHIC) -> "ColumnSchema":
        """Schema of plain columns sharing one kind (custom matrices, tests)."""
        return cls(tuple(Column(n, kind) for n in names))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    def __len__(self) -> int:
        return len(self.columns)

    def __iter__(self) -> Iterator[Column]:
        return iter(self.columns)

    def index(self, name: str) -> int:
        for i, col in enumerate(self.columns):
            if col.name == name:
                return i
        raise UnknownColumn([name])

    def subset(self, indices: Sequence[int]) -> "ColumnSchema":
        return ColumnSchema(tuple(self.columns[i] for i in indices))

    def to_list(self) -> List[Dict[str, Any]]:
        return [c.to_dict() for c in self.columns]

    @classmethod
    def from_list(cls, data: List[Dict[str, Any]]) -> "ColumnSchema":
        return cls(tuple(Column.from_dict(d) for d in data))


@dataclass
class RawTable:
    """A parsed input CSV with its header names preserved."""
    kind: TableKind
    path: str
    frame: pd.DataFrame
    dropped_rows: int = 0

    @property
    def n_rows(self) -> int:
        return len(self.frame)

    @property
    def header(self) -> List[str]:
        return list(self.frame.columns)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """Observations × named features, with a label and a subject id per row."""
    schema: ColumnSchema
    values: np.ndarray
    labels: np.ndarray
    subject_ids: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim == 1 and len(self.schema) == 1:
            values = values.reshape(-1, 1)
        if values.ndim != 2:
            raise SchemaMismatch(f"Feature values must be 2-D, got {values.ndim}-D")
        labels = np.array([int(Label(v)) for v in np.asarray(self.labels).ravel()], dtype=np.int8)
        subject_ids = tuple(str(s) for s in self.subject_ids) or tuple(str(i) for i in range(values.shape[0]))

        if values.shape[1] != len(self.schema):
            raise SchemaMismatch(
                f"Matrix has {values.shape[1]} columns but schema has {len(self.schema)}"
            )
        if not (values.shape[0] == labels.shape[0] == len(subject_ids)):
            raise SchemaMismatch(
                f"Row counts disagree: values={values.shape[0]}, labels={labels.shape[0]}, "
                f"subject_ids={len(subject_ids)}"
            )
        if not np.isfinite(values).all():
            raise NonFiniteValue("Feature matrix contains NaN or infinite values")

        object.__setattr__(self, "values", _frozen(values))
        object.__setattr__(self, "labels", _frozen(labels))
        object.__setattr__(self, "subject_ids", subject_ids)

    # ---------- constructors ----------

    @classmethod
    def from_arrays(
        cls,
        values,
        labels,
        names: Optional[Sequence[str]] = None,
        subject_ids: Optional[Sequence[str]] = None,
        kind: ColumnKind = ColumnKind.DEMOGRAPHIC,
    ) -> "FeatureMatrix":
        values = np.asarray(values, dtype=np.float64)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        if names is None:
            names = [f"f{i}" for i in range(values.shape[1])]
        return cls(ColumnSchema.of_names(names, kind), values, np.asarray(labels), tuple(subject_ids or ()))

    # ---------- shape ----------

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_cols(self) -> int:
        return self.values.shape[1]

    @property
    def names(self) -> Tuple[str, ...]:
        return self.schema.names

    @property
    def label_list(self) -> List[Label]:
        return [Label(int(v)) for v in self.labels]

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.schema.index(name)]

    # ---------- slicing ----------

    def take_rows(self, indices: Sequence[int]) -> "FeatureMatrix":
        idx = np.asarray(indices, dtype=np.intp)
        return FeatureMatrix(
            self.schema, self.values[idx], self.labels[idx],
            tuple(self.subject_ids[i] for i in idx),
        )

    def take_columns(self, indices: Sequence[int]) -> "FeatureMatrix":
        idx = list(indices)
        return FeatureMatrix(
            self.schema.subset(idx), self.values[:, idx], self.labels, self.subject_ids
        )

    def with_values(self, values: np.ndarray) -> "FeatureMatrix":
        """Same schema, labels and subjects over new values."""
        return FeatureMatrix(self.schema, values, self.labels, self.subject_ids)

    def equals(self, other: "FeatureMatrix") -> bool:
        return (
            self.schema == other.schema
            and np.array_equal(self.values, other.values)
            and np.array_equal(self.labels, other.labels)
            and self.subject_ids == other.subject_ids
        )
