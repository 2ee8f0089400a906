"""Labeled seed derivation.

Every run hangs off one master seed; components get independent streams
through a stable label -> subseed map so a single integer reproduces an
entire experiment.
"""

from __future__ import annotations

import hashlib

import numpy as np


def derive_seed(master: int, label: str) -> int:
    """Derive a component subseed from the master seed and a label."""
    digest = hashlib.sha256(f"{master}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


def labeled_rng(master: int, label: str) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master, label))
