"""CSV and JSON artifacts.

Every file is written from sorted keys and a fixed float format, so the same
configuration always reproduces the same bytes.
"""

from pathlib import Path
from typing import Any, Dict, Sequence
import json
import logging
import math

import numpy as np

from .solver import Field

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _finite(value: Any) -> Any:
    """Non-finite floats become None, so they are written as JSON null."""
    if isinstance(value, dict):
        return {key: _finite(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(item) for item in value]
    if isinstance(value, np.ndarray):
        return _finite(value.tolist())
    if isinstance(value, (float, np.floating)) and not math.isfinite(value):
        return None
    return value


class ArtifactWriter:
    """Writes the artifacts of one command below ``root/<command>/``."""

    def __init__(self, root: Path, command: str):
        self.directory = Path(root) / command
        self.directory.mkdir(parents=True, exist_ok=True)

    def path(self, name: str) -> Path:
        return self.directory / name

    def csv(self, name: str, columns: Sequence[str], rows: np.ndarray) -> Path:
        """Header row plus one line per row of ``rows``."""
        target = self.path(name)
        data = np.atleast_2d(np.asarray(rows, dtype=float))
        if data.size == 0:
            data = np.empty((0, len(columns)))
        np.savetxt(target, data, delimiter=",", header=",".join(columns), comments="", fmt=FLOAT_FORMAT)
        logger.debug(f"wrote {target}")
        return target

    def json(self, name: str, payload: Dict[str, Any]) -> Path:
        target = self.path(name)
        text = json.dumps(_finite(payload), sort_keys=True, indent=2, default=_jsonable, allow_nan=False)
        target.write_text(text + "\n")
        logger.debug(f"wrote {target}")
        return target

    def snapshot(self, field: Field) -> Path:
        return self.csv(f"snap_t{field.time:.6}.csv", ("x", "T"), np.column_stack([field.x, field.values]))
