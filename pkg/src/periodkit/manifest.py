"""Run manifests: what was run, with which flags and seed, and the digest of the output."""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def sha256_file(path) -> str:
    with open(path, "rb") as fh:
        return sha256_bytes(fh.read())


def now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def manifest_path_for(output_path: str) -> str:
    root, _ = os.path.splitext(output_path)
    return root + ".manifest.json"


@dataclass
class RunManifest:
    command: str
    argv: list
    flags: dict
    seed: int
    version: str
    started: str
    finished: str
    output: str
    digest: str
    inputs: dict = field(default_factory=dict)

    def write(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(asdict(self), fh, sort_keys=True, indent=2)
            fh.write("\n")

    @classmethod
    def read(cls, path):
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        return cls(**data)
