import numpy as np

__all__ = ["generator", "derive_seeds", "normalized_draws", "random_signs"]

""" Seeded random streams for disorder realizations.

    Every stream is a `numpy.random.Generator` on the counter-based Philox
    bit generator, keyed by a single 64-bit seed. Philox output is defined
    bit-for-bit by its key and counter, so draws are identical on every
    platform and numpy release that ships it.
"""

SEED_MASK = (1 << 64) - 1

def generator(seed):
    return np.random.Generator(np.random.Philox(int(seed) & SEED_MASK))

def derive_seeds(seed, count):
    """ Independent child seeds for sweep points or ensemble members.

        Args:
            seed: (int)
                Parent seed.
            count: (int)
                Number of child seeds.

        Returns:
            seeds: (list of int)
                Unsigned 64-bit seeds, stable for a given (seed, count).
    """
    children = np.random.SeedSequence(int(seed) & SEED_MASK).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]

def normalized_draws(rng, size, distribution='gaussian'):
    """ Draws with zero empirical mean and unit empirical population spread.
        A single draw, or draws without spread, return zeros.
    """
    if distribution == 'gaussian':
        raw = rng.standard_normal(size)
    elif distribution == 'uniform':
        raw = rng.uniform(-1.0, 1.0, size)
    else:
        raise ValueError("distribution not in {'gaussian','uniform'}")

    centered = raw - raw.mean()
    spread = centered.std()
    if size < 2 or spread == 0.0:
        return np.zeros(size)
    return centered/spread

def random_signs(rng, size):
    return np.where(rng.integers(0, 2, size) == 1, 1.0, -1.0)
