"""Seed fan-out: one master seed, named sub-streams, replayable in isolation."""

from __future__ import annotations

import zlib

import numpy as np


def substream(seed: int, label: str, index: int = 0) -> np.random.Generator:
    """Deterministic generator for (seed, label, index)."""
    key = zlib.crc32(label.encode("utf-8"))
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(key, index)))


class SeedBank:
    """Hands out numbered sub-streams per label, in call order."""

    def __init__(self, seed: int):
        self.seed = seed
        self._counts: dict[str, int] = {}

    def rng(self, label: str) -> np.random.Generator:
        i = self._counts.get(label, 0)
        self._counts[label] = i + 1
        return substream(self.seed, label, i)
