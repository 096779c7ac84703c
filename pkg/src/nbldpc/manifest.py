"""Experiment manifests for reproducible command-line runs.

Every file the command-line tool emits carries a manifest describing the
run that produced it: the command, its arguments, the master seed, the
artifact version, and a hash of the field modulus table.  The manifest
splits into two parts:

* a deterministic part, embedded in the data file itself (a ``# manifest:``
  comment line in CSV, a ``"manifest"`` object in JSON).  Two runs with the
  same command line produce byte-identical data files.
* a timing part (wall-clock seconds, creation timestamp), written to a
  sidecar ``<out>.manifest.json`` so it never perturbs the data file.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field

from .galois import DEFAULT_MODULI

ARTIFACT_VERSION = "0.1.0"


def modulus_table_hash() -> str:
    """Hash of the default modulus table, pinning field conventions.

    Any change to the default primitive polynomials changes every labeled
    code's arithmetic, so the hash ties an artifact to the table that
    produced it.
    """
    blob = json.dumps(sorted(DEFAULT_MODULI.items())).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


@dataclass
class ExperimentManifest:
    """Provenance record for one command invocation.

    Parameters
    ----------
    command:
        Subcommand name (``"bound"``, ``"simulate"``, ...).
    arguments:
        Flag values that determine the output, as a flat dict of
        JSON-serialisable values.
    seed:
        Master seed for any randomised step, or None for deterministic
        commands.
    budget:
        Pattern/search budget in effect, or None for the default.
    threads:
        Worker count requested (the library currently runs single
        threaded; the value is recorded for provenance).
    """

    command: str
    arguments: dict = field(default_factory=dict)
    seed: int | None = None
    budget: int | None = None
    threads: int = 1
    version: str = ARTIFACT_VERSION
    modulus_hash: str = field(default_factory=modulus_table_hash)
    wall_clock_seconds: float | None = None

    def deterministic_dict(self) -> dict:
        """The embeddable part: everything except timing."""
        return {
            "command": self.command,
            "arguments": dict(sorted(self.arguments.items())),
            "seed": self.seed,
            "budget": self.budget,
            "threads": self.threads,
            "version": self.version,
            "modulus_hash": self.modulus_hash,
        }

    def comment_line(self) -> str:
        """Single CSV comment line carrying the deterministic part."""
        return "# manifest: " + json.dumps(
            self.deterministic_dict(), sort_keys=True, separators=(",", ":")
        )

    def write_sidecar(self, out_path: str) -> str:
        """Write ``<out_path>.manifest.json`` with the timing included."""
        payload = self.deterministic_dict()
        payload["wall_clock_seconds"] = self.wall_clock_seconds
        payload["created"] = time.strftime("%Y-%m-%dT%H:%M:%S%z")
        sidecar = out_path + ".manifest.json"
        with open(sidecar, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        return sidecar


def parse_comment_line(line: str) -> dict:
    """Invert :meth:`ExperimentManifest.comment_line`."""
    prefix = "# manifest: "
    if not line.startswith(prefix):
        raise ValueError(f"not a manifest line: {line!r}")
    return json.loads(line[len(prefix):])
