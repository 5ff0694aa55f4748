"""Deterministic random-stream management.

Every random draw in the package comes from a named substream of a single
master seed.  A substream is identified by a path of small integers
(stream kind, repetition, channel, block, ...), hashed through
``numpy.random.SeedSequence`` into an independent PCG64 generator.  Equal
(seed, path) pairs always produce bit-identical streams; distinct paths
produce statistically independent ones.
"""

import numpy as np

# Stream kinds.  Values are part of the reproducibility contract: changing
# them changes every derived random stream.
KIND_INFO = 1  # shaper information bits; path (KIND_INFO, branch, ..., block)
KIND_SIGNS = 2  # sign bits standing in for FEC output
KIND_ASE = 3  # amplifier noise; path (KIND_ASE, repetition, span)
KIND_SYMBOLS = 4  # uniform-signaling symbol draws
KIND_TEST = 99


def substream(master_seed: int, *path: int) -> np.random.Generator:
    """Return the PCG64 generator for one (seed, path) substream."""
    entropy = (int(master_seed),) + tuple(int(p) for p in path)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def random_bits(master_seed: int, count: int, *path: int) -> np.ndarray:
    """Uniform 0/1 array of length ``count`` drawn from the named substream."""
    rng = substream(master_seed, *path)
    return rng.integers(0, 2, size=int(count), dtype=np.uint8)
