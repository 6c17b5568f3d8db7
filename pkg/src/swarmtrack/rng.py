"""Named, seed-derived random streams.

Every consumer of randomness asks for its own stream by name, so adding a
draw in one module never shifts the numbers another module sees.
"""

import numpy as np

STREAMS = {"spawn": 0, "montecarlo": 1, "scenario": 2}


def substream(seed: int, name: str) -> np.random.SeedSequence:
    return np.random.SeedSequence(entropy=seed & (2**64 - 1), spawn_key=(STREAMS[name],))


def generator(seed: int, name: str) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(substream(seed, name)))
