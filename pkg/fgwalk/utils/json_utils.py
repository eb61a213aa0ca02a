# fgwalk/utils/json_utils.py
import csv
import dataclasses
import io
import json
import math
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np
from tabulate import tabulate

from ..core.config import OUTPUT_SCHEMA_VERSION, VERSION, logger
from ..core.errors import PreconditionError
from ..graphcore.laurent import LaurentPoly
from ..graphcore.polynomial import RationalPoly
from .string_utils import format_laurent, format_rational

OUTPUT_FORMATS = ("json", "csv", "table")

# Integers beyond this magnitude are emitted as decimal strings
SAFE_INTEGER = 2**53


def _integer(value: int):
    return value if abs(value) <= SAFE_INTEGER else str(value)


def to_jsonable(obj: Any) -> Any:
    """
    Converts results into plain JSON values without losing exactness.

    Fractions become "p/q" (or integers), large integers decimal strings,
    complex numbers {"re", "im"}, polynomials their text and coefficients,
    and dataclasses / NamedTuples dictionaries.
    """
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return None if obj is None else bool(obj)
    if isinstance(obj, (int, np.integer)):
        return _integer(int(obj))
    if isinstance(obj, Fraction):
        return _integer(obj.numerator) if obj.denominator == 1 else format_rational(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else str(value)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": to_jsonable(obj.real), "im": to_jsonable(obj.imag)}
    if isinstance(obj, RationalPoly):
        return {"text": obj.format(), "coeffs": [to_jsonable(c) for c in obj.coeffs]}
    if isinstance(obj, LaurentPoly):
        return {
            "text": format_laurent(dict(obj.terms)),
            "terms": [[list(e), to_jsonable(c)] for e, c in sorted(obj.terms.items())],
        }
    if isinstance(obj, np.ndarray):
        items = obj if obj.dtype == object else obj.tolist()
        return [to_jsonable(x) for x in items]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)
        }
    if isinstance(obj, tuple) and hasattr(obj, "_asdict"):
        return {k: to_jsonable(v) for k, v in obj._asdict().items()}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [to_jsonable(x) for x in obj]
    logger.warning(f"to_jsonable: falling back to str() for {type(obj).__name__}")
    return str(obj)


def make_envelope(
    command: str,
    params: Dict[str, Any],
    result: Any,
    diagnostics: Optional[List[str]] = None,
) -> Dict[str, Any]:
    """The schema-versioned output object every CLI command prints."""
    return {
        "schema_version": OUTPUT_SCHEMA_VERSION,
        "fgwalk_version": VERSION,
        "command": command,
        "params": to_jsonable(params),
        "result": to_jsonable(result),
        "diagnostics": list(diagnostics or []),
    }


def tabular_rows(result: Any) -> Optional[List[Dict[str, Any]]]:
    """Rows of a tabular result: a list of dicts, or a dict with a "rows" list."""
    if isinstance(result, dict) and isinstance(result.get("rows"), list):
        result = result["rows"]
    if (
        isinstance(result, list)
        and result
        and all(isinstance(row, dict) for row in result)
    ):
        return result
    return None


def _cell(value: Any) -> Any:
    return json.dumps(value) if isinstance(value, (dict, list)) else value


def render(envelope: Dict[str, Any], fmt: str = "json") -> str:
    """
    Renders an envelope as JSON, CSV (tabular results only) or a table.

    Raises:
        PreconditionError: unknown format, or CSV requested for a
            non-tabular result.
    """
    if fmt == "json":
        return json.dumps(envelope, indent=2)
    rows = tabular_rows(envelope["result"])
    if fmt == "csv":
        if rows is None:
            raise PreconditionError(
                f"'{envelope['command']}' has no tabular result; use --format json"
            )
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(v) for k, v in row.items()})
        return buffer.getvalue().rstrip("\n")
    if fmt == "table":
        if rows is None:
            result = envelope["result"]
            pairs = result.items() if isinstance(result, dict) else [("result", result)]
            return tabulate(
                [(k, _cell(v)) for k, v in pairs], headers=["field", "value"]
            )
        return tabulate(
            [{k: _cell(v) for k, v in row.items()} for row in rows], headers="keys"
        )
    raise PreconditionError(
        f"unknown output format '{fmt}', expected one of {OUTPUT_FORMATS}"
    )
