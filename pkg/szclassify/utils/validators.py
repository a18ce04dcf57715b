# =======================================================================================
# szclassify/utils/validators.py - Validation Helpers
# =======================================================================================

from pathlib import Path
from typing import Iterable, List, Sequence

from loguru import logger

from .exceptions import HeaderMismatch, InvalidCategory, LengthMismatch, MissingFile, SchemaMismatch
from ..models.enums import Label, REQUIRED_HEADERS, TableKind

_GROUP_VALUES = {"sz": Label.SZ, "1": Label.SZ, "hc": Label.HC, "0": Label.HC}
_GENDER_VALUES = {"male": 0, "m": 0, "0": 0, "female": 1, "f": 1, "1": 1}


class SchemaValidator:
    """Validates input files, headers and categorical cells."""

    @staticmethod
    def require_file(path) -> Path:
        p = Path(path)
        if not p.is_file():
            raise MissingFile(p)
        return p

    @staticmethod
    def check_header(path, kind: TableKind, header: Sequence[str]) -> List[str]:
        """Return the required columns in file order; raise if any are absent."""
        required = REQUIRED_HEADERS[kind]
        missing = set(required) - set(header)
        if missing:
            raise HeaderMismatch(path, missing)

        extra = [h for h in header if h not in required]
        if extra:
            logger.warning(f"{path}: ignoring unexpected columns {', '.join(extra)}")
        return [h for h in header if h in required]

    @staticmethod
    def parse_group(value: str, where: str = "") -> Label:
        """SZ/HC (any case) or 1/0."""
        label = _GROUP_VALUES.get(str(value).strip().lower())
        if label is None:
            raise InvalidCategory(f"{where}unknown group value {value!r} (expected SZ/HC or 1/0)")
        return label

    @staticmethod
    def parse_gender(value: str, where: str = "") -> int:
        """male→0, female→1; m/f and 0/1 accepted."""
        v = str(value).strip().lower()
        if v in ("0.0", "1.0"):
            v = v[0]
        code = _GENDER_VALUES.get(v)
        if code is None:
            raise InvalidCategory(f"{where}unknown gender value {value!r} (expected male/female)")
        return code

    @staticmethod
    def same_length(a: Sequence, b: Sequence) -> None:
        if len(a) != len(b):
            raise LengthMismatch(f"Vectors differ in length: {len(a)} vs {len(b)}")

    @staticmethod
    def same_columns(expected: Iterable[str], actual: Iterable[str]) -> None:
        expected, actual = tuple(expected), tuple(actual)
        if expected != actual:
            raise SchemaMismatch(
                f"Column schema mismatch: expected {len(expected)} columns "
                f"({', '.join(expected[:5])}...), got {len(actual)} ({', '.join(actual[:5])}...)"
            )
