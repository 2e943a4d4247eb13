"""Counter-based random substreams.

Every task (a bootstrap replicate, a simulation rep) gets its own Philox
generator keyed by ``(seed, purpose)`` and started at a counter offset derived
from the task index. A task's draws therefore depend only on its key and
index, never on which worker ran it or in what order.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1

# Purpose tags; distinct keys keep streams for different jobs disjoint.
BOOTSTRAP = 0xB007
SIMULATE = 0x5111
COVERAGE_SEEDS = 0xC0DE


def substream(seed: int, index: int, purpose: int) -> np.random.Generator:
    """Generator for task ``index`` under ``seed``; 2**192 draws per task."""
    if index < 0:
        raise ValueError("task index must be non-negative")
    key = (int(purpose) << 64) | (int(seed) & _MASK64)
    return np.random.Generator(np.random.Philox(key=key, counter=int(index) << 192))


def derive_seed(seed: int, index: int, purpose: int) -> int:
    """A 63-bit child seed, e.g. for nesting a bootstrap inside a simulation rep."""
    return int(substream(seed, index, purpose).integers(0, 1 << 63))
