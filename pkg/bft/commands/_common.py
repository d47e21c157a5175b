# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

"""Pieces shared by the commands that write results."""

from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from craft_cli import emit

from bft.config import RunConfig
from bft.errors import CheckFailed, ConfigurationError
from bft.fields import FieldState
from bft.hamiltonian import HamiltonianSpec
from bft.utils import canonical_hash, write_manifest, write_plotdata


def add_config_argument(
    parser: ArgumentParser, required: bool = False
) -> None:
    parser.add_argument(
        "-c",
        "--config",
        type=Path,
        required=required,
        help="Read the run configuration (JSON or YAML) from this path.",
    )


def add_output_arguments(parser: ArgumentParser) -> None:
    parser.add_argument(
        "--out",
        type=Path,
        default=Path("results"),
        help="Write results into this directory.",
    )
    parser.add_argument(
        "--plotdata",
        action="store_true",
        default=False,
        help="Also write whitespace-separated tables for plotting.",
    )


def add_jobs_argument(parser: ArgumentParser) -> None:
    parser.add_argument(
        "--jobs",
        type=int,
        default=None,
        help="Solve up to this many seeds in parallel.",
    )


def load_config(args: Namespace) -> RunConfig:
    """Load `--config`, or the defaults when it is absent."""
    path = getattr(args, "config", None)
    if path is None:
        return RunConfig()
    return RunConfig.load(path)


def override(config: RunConfig, section: str, **changes: Any) -> RunConfig:
    """Apply command-line overrides that were actually given."""
    changes = {k: v for k, v in changes.items() if v is not None}
    if not changes:
        return config
    updated = getattr(config, section).copy(update=changes)
    # re-validate so bad flag values fail like bad config values
    return RunConfig.parse(
        {
            **config.dict(by_alias=True),
            section.replace("_", "-"): updated.dict(by_alias=True),
        },
        source="<command line>",
    )


def build_hamiltonian(config: RunConfig) -> HamiltonianSpec:
    try:
        return config.hamiltonian.build()
    except ValueError as e:
        raise ConfigurationError(f"Invalid Hamiltonian: {e}")


def load_snapshot(path: Path) -> FieldState:
    if not path.is_file():
        raise ConfigurationError(f"Couldn't find snapshot {str(path)!r}")
    try:
        return FieldState.load(path)
    except ValueError as e:
        raise ConfigurationError(str(e))


class Checks:
    """Named pass/fail assertions made by one run."""

    def __init__(self) -> None:
        self.results: List[Tuple[str, bool, str]] = []

    def record(self, name: str, passed: bool, detail: str = "") -> bool:
        self.results.append((name, bool(passed), detail))
        status = "ok" if passed else "FAILED"
        emit.progress(f"{name}: {status} {detail}".rstrip(), permanent=True)
        return bool(passed)

    @property
    def failed(self) -> List[str]:
        return [name for name, passed, _ in self.results if not passed]

    def raise_for_failures(self) -> None:
        failed = self.failed
        if failed:
            details = [d for name, p, d in self.results if not p and d]
            raise CheckFailed(", ".join(failed), "; ".join(details))


def finish(
    args: Namespace,
    command: str,
    checks: Checks,
    config: Optional[RunConfig] = None,
    extra: Optional[Dict[str, Any]] = None,
) -> int:
    """Write the manifest, then fail if any check failed.

    Without a run configuration the `extra` settings are what is hashed.
    """
    manifest_extra: Dict[str, Any] = dict(extra or {})
    if config is None:
        config_hash, seed = canonical_hash(manifest_extra), None
    else:
        config_hash, seed = config.config_hash(), config.seed
    manifest_extra["checks"] = {
        name: passed for name, passed, _ in checks.results
    }
    write_manifest(args.out, command, config_hash, seed, manifest_extra)
    checks.raise_for_failures()
    emit.message(f"Wrote results to {str(args.out)!r}.")
    return 0


def maybe_plotdata(
    args: Namespace,
    name: str,
    header: Sequence[str],
    rows: Sequence[Sequence[float]],
) -> None:
    if getattr(args, "plotdata", False):
        write_plotdata(args.out / f"{name}.dat", header, rows)
