"""A seeded corpus of random locally gentle pairs shared by the test modules."""

from __future__ import annotations

import functools
import random

from slgentle.quiver import random_locally_gentle

CORPUS_SIZE = 520
MAX_VERTICES = 12


@functools.lru_cache(maxsize=None)
def random_corpus(size: int = CORPUS_SIZE, seed: int = 2024):
    """``size`` random pairs with 1..12 vertices and up to two arrows per vertex."""
    rng = random.Random(seed)
    out = []
    while len(out) < size:
        n = rng.randint(1, MAX_VERTICES)
        m = rng.randint(0, 2 * n - (n > 1))
        try:
            out.append(random_locally_gentle(rng.randrange(10**9), n, m))
        except ValueError:
            continue
    return tuple(out)


def gentle_subcorpus(size: int = CORPUS_SIZE):
    from slgentle.quiver import is_gentle

    return tuple(p for p in random_corpus(size) if is_gentle(p))
