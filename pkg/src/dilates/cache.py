"""Content-addressed result cache and experiment records.

Layout: <cache_dir>/<kind>/<sha256>.json holds the canonical JSON outputs
of one experiment; a .meta.json sidecar holds timestamps and tool version
so the outputs themselves stay byte-identical across reruns.  The cache
directory defaults to ./dilates_cache and is overridden by the
DILATES_CACHE_DIR environment variable.
"""

from __future__ import annotations

import json
import os
import subprocess
import time
from dataclasses import dataclass
from hashlib import sha256
from pathlib import Path

ENV_CACHE_DIR = "DILATES_CACHE_DIR"
KINDS = ("construct", "verify", "search", "sweep", "gap", "pipeline")


def default_cache_dir() -> Path:
    return Path(os.environ.get(ENV_CACHE_DIR, "dilates_cache"))


def canonical_json(obj) -> bytes:
    """Stable byte encoding: sorted keys, no whitespace, trailing newline."""
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode()


def digest_of(obj) -> str:
    return sha256(canonical_json(obj)).hexdigest()


def atomic_write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


def git_describe() -> str:
    try:
        out = subprocess.run(["git", "describe", "--always", "--dirty"],
                             capture_output=True, text=True, timeout=5)
        return out.stdout.strip() or "unknown"
    except OSError:
        return "unknown"


@dataclass(frozen=True)
class ExperimentRecord:
    """One cached experiment: byte-stable outputs plus run metadata.

    `outputs` is what reruns must reproduce byte-identically; the
    metadata (timestamps, versions) goes to the sidecar only.
    """

    kind: str
    inputs_digest: str
    outputs: object
    created_at: str
    tool_version: str
    git_describe: str

    @classmethod
    def create(cls, kind: str, inputs_digest: str, outputs) -> "ExperimentRecord":
        if kind not in KINDS:
            raise ValueError(f"unknown experiment kind {kind!r}")
        from . import __version__
        return cls(
            kind=kind,
            inputs_digest=inputs_digest,
            outputs=outputs,
            created_at=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            tool_version=__version__,
            git_describe=git_describe(),
        )

    def store(self, cache_dir) -> Path:
        cache_dir = Path(cache_dir)
        out_path = cache_dir / self.kind / f"{self.inputs_digest}.json"
        atomic_write(out_path, canonical_json(self.outputs))
        meta = {
            "kind": self.kind,
            "inputs_digest": self.inputs_digest,
            "created_at": self.created_at,
            "tool_version": self.tool_version,
            "git_describe": self.git_describe,
        }
        atomic_write(cache_dir / self.kind / f"{self.inputs_digest}.meta.json",
                     canonical_json(meta))
        return out_path


def store_experiment(cache_dir, kind: str, inputs_digest: str, outputs) -> Path:
    """Write outputs (byte-stable) plus a metadata sidecar; returns the
    outputs path."""
    return ExperimentRecord.create(kind, inputs_digest, outputs).store(cache_dir)


def load_outputs(cache_dir, kind: str, inputs_digest: str):
    """Cached outputs for a digest, or None on a miss."""
    path = Path(cache_dir) / kind / f"{inputs_digest}.json"
    if not path.is_file():
        return None
    return json.loads(path.read_text())


def list_outputs(cache_dir, kind: str) -> list[tuple[str, dict]]:
    """All (digest, outputs) pairs of one kind, sorted by digest."""
    root = Path(cache_dir) / kind
    if not root.is_dir():
        return []
    pairs = []
    for path in sorted(root.glob("*.json")):
        if path.name.endswith(".meta.json") or path.name.endswith(".tmp"):
            continue
        pairs.append((path.stem, json.loads(path.read_text())))
    return pairs
