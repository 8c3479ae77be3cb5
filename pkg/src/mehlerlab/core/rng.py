"""Counter-based random streams.

A stream is identified by ``(master_seed, block_index)``; path ensembles are
cut into fixed-size blocks, so the numbers drawn for a given path never depend
on how blocks are scheduled across threads.
"""

from __future__ import annotations

import numpy as np

from mehlerlab.core.constants import PATH_BLOCK_SIZE


def stream(master_seed: int, block_index: int = 0) -> np.random.Generator:
    """Return the generator for one block of work."""
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), int(block_index)]))


def block_sizes(total: int, block_size: int = PATH_BLOCK_SIZE) -> list[int]:
    """Split *total* items into consecutive blocks of at most *block_size*."""
    if total <= 0:
        return []
    full, rest = divmod(total, block_size)
    return [block_size] * full + ([rest] if rest else [])
