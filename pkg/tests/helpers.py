from functools import lru_cache

from hyperlattice.enumeration import enumerate_corner_sum, enumerate_latin


@lru_cache(maxsize=None)
def lattice(n: int):
    return tuple(enumerate_corner_sum(n).objects())


@lru_cache(maxsize=None)
def latin(n: int):
    return tuple(enumerate_latin(n).objects())
