# Copyright 2026 The qswitch-thermal Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Serialization of sweep tables and scalar reports.

CSV files start with ``# key=value`` metadata lines, followed by a header row
and one row per grid point in row-major axis order. Floats are written with 17
significant digits so that parsing them back is exact; excluded cells hold the
token ``nan`` and ``excluded=1``. Files are written to a temporary sibling and
renamed into place.
"""

from __future__ import annotations

import io
import json
import logging
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Mapping, Tuple, Union

import numpy as np
import pandas as pd

from .exceptions import InvalidParameter
from .optimize import SweepTable

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
FORMATS = ("csv", "json")

PathLike = Union[str, "os.PathLike[str]"]


def atomic_write(path: PathLike, text: str) -> Path:
    """Write ``text`` to ``path`` through a temporary file and ``os.replace``."""
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise
    logger.debug("Wrote %d bytes to %s", len(text), target)
    return target


def sweep_to_csv(table: SweepTable) -> str:
    buf = io.StringIO()
    buf.write(f"# kind={table.kind}\n")
    for key, value in table.metadata.items():
        buf.write(f"# {key}={value}\n")
    table.to_frame().to_csv(
        buf, index=False, float_format=FLOAT_FORMAT, na_rep="nan", lineterminator="\n"
    )
    return buf.getvalue()


def _jsonable(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return None if math.isnan(value) else value
    return value


def sweep_to_json(table: SweepTable) -> str:
    """JSON object with ``kind``, ``metadata`` and one list per column; NaN becomes null."""
    frame = table.to_frame()
    payload = {
        "kind": table.kind,
        "metadata": dict(table.metadata),
        "columns": {
            name: [_jsonable(v) for v in frame[name].tolist()] for name in frame.columns
        },
    }
    return json.dumps(payload, indent=2) + "\n"


def write_sweep(table: SweepTable, path: PathLike, fmt: str = "csv") -> Path:
    if fmt not in FORMATS:
        raise InvalidParameter(f"Unknown output format {fmt!r}; expected one of {FORMATS}.")
    text = sweep_to_csv(table) if fmt == "csv" else sweep_to_json(table)
    return atomic_write(path, text)


def read_sweep_csv(path: PathLike) -> Tuple[Dict[str, str], pd.DataFrame]:
    """Metadata mapping and data frame of a file written by :func:`write_sweep`."""
    metadata: Dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            key, _, value = line[1:].strip().partition("=")
            metadata[key] = value
    frame = pd.read_csv(path, comment="#", float_precision="round_trip")
    return metadata, frame


def format_report(record: Mapping[str, Any]) -> str:
    """Single flat JSON object with snake_case keys."""
    return json.dumps({k: _jsonable(v) for k, v in record.items()}, indent=2)


def report_to_csv(record: Mapping[str, Any]) -> str:
    """One header row and one value row, floats at full precision."""
    frame = pd.DataFrame([{k: _jsonable(v) for k, v in record.items()}])
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, na_rep="nan", lineterminator="\n")
