# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

__all__ = [
    "canonical_hash",
    "load_yaml",
    "write_csv",
    "write_manifest",
    "write_plotdata",
]

import hashlib
import json
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence

import numpy as np
import scipy
import yaml

from bft._version import version as bft_version
from bft.errors import ConfigurationError

CSV_FORMAT = "%.17g"


def canonical_hash(content: Any) -> str:
    """sha256 of the sorted-key JSON form of `content`."""
    canonical = json.dumps(content, sort_keys=True, default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def load_yaml(path: Path) -> Dict[Any, Any]:
    """Return the content of a YAML (or JSON) file."""
    if not path.is_file():
        raise ConfigurationError(f"Couldn't find config file {str(path)!r}")
    try:
        with path.open("rb") as f:
            loaded = yaml.safe_load(f)
        if not isinstance(loaded, dict):
            raise ConfigurationError(
                f"Config file {str(path)!r} does not define a mapping"
            )
        return loaded
    except (yaml.error.YAMLError, OSError) as e:
        raise ConfigurationError(
            f"Failed to read/parse config file {str(path)!r}: {e}"
        )


def _format_cell(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return CSV_FORMAT % value
    return str(value)


def write_csv(
    path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]
) -> Path:
    """Write a table with a header row; floats keep 17 significant digits."""
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)]
    for row in rows:
        if len(row) != len(header):
            raise ValueError(
                f"Row {row!r} does not match header {list(header)!r}."
            )
        lines.append(",".join(_format_cell(cell) for cell in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def write_plotdata(
    path: Path, header: Sequence[str], rows: Sequence[Sequence[float]]
) -> Path:
    """Write a gnuplot-friendly whitespace-separated table."""
    path.parent.mkdir(parents=True, exist_ok=True)
    table = np.asarray(rows, dtype=float).reshape(-1, len(header))
    np.savetxt(
        path, table, delimiter=" ", fmt=CSV_FORMAT, header=" ".join(header)
    )
    return path


def write_manifest(
    directory: Path,
    command: str,
    config_hash: str,
    seed: Optional[int],
    extra: Optional[Dict[str, Any]] = None,
) -> Path:
    """Record what produced the files in `directory`."""
    directory.mkdir(parents=True, exist_ok=True)
    manifest = {
        "command": command,
        "config-hash": config_hash,
        "seed": seed,
        "versions": {
            "bft": bft_version,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
        },
    }
    if extra:
        manifest.update(extra)
    path = directory / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path
