"""Deterministic binary checkpoints.

Layout: magic, 8-byte little-endian header length, canonical JSON header
(sorted keys), then the raw little-endian array bytes in header order.
No timestamps or compression, so save -> load -> save is byte-identical.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass

import numpy as np

from ..errors import CheckpointError
from .nets import ActorCritic, PolicySpec, load_params_numpy, policy_params_numpy

MAGIC = b"SFCKPT1\n"


@dataclass
class Checkpoint:
    arrays: dict                 # name -> np.ndarray
    spec: PolicySpec
    step: int
    config_digest: str
    critical_interval_ms: float
    extra: dict

    def load_into(self, policy: ActorCritic) -> None:
        if policy.spec != self.spec:
            raise CheckpointError(
                f"policy spec mismatch: checkpoint {self.spec}, "
                f"target {policy.spec}")
        load_params_numpy(policy, self.arrays)


def save_checkpoint(path, policy: ActorCritic, step: int, config_digest: str,
                    critical_interval_ms: float, extra: dict | None = None) -> None:
    arrays = policy_params_numpy(policy)
    names = sorted(arrays)
    header = {
        "arrays": [{"name": n,
                    "shape": list(arrays[n].shape),
                    "dtype": str(arrays[n].dtype)} for n in names],
        "spec": policy.spec.to_dict(),
        "step": int(step),
        "config_digest": config_digest,
        "critical_interval_ms": float(critical_interval_ms),
        "extra": extra or {},
    }
    blob = json.dumps(header, sort_keys=True, separators=(",", ":")).encode()
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<Q", len(blob)))
        fh.write(blob)
        for n in names:
            arr = np.ascontiguousarray(arrays[n])
            fh.write(arr.astype(arr.dtype.newbyteorder("<"), copy=False).tobytes())


def load_checkpoint(path) -> Checkpoint:
    with open(path, "rb") as fh:
        magic = fh.read(len(MAGIC))
        if magic != MAGIC:
            raise CheckpointError(f"{path}: not a checkpoint file")
        (hlen,) = struct.unpack("<Q", fh.read(8))
        header = json.loads(fh.read(hlen))
        arrays = {}
        for meta in header["arrays"]:
            dtype = np.dtype(meta["dtype"]).newbyteorder("<")
            count = int(np.prod(meta["shape"])) if meta["shape"] else 1
            raw = fh.read(count * dtype.itemsize)
            if len(raw) != count * dtype.itemsize:
                raise CheckpointError(f"{path}: truncated array {meta['name']}")
            arrays[meta["name"]] = np.frombuffer(raw, dtype=dtype).reshape(
                meta["shape"]).astype(np.dtype(meta["dtype"]))
    return Checkpoint(arrays=arrays,
                      spec=PolicySpec.from_dict(header["spec"]),
                      step=header["step"],
                      config_digest=header["config_digest"],
                      critical_interval_ms=header["critical_interval_ms"],
                      extra=header.get("extra", {}))
