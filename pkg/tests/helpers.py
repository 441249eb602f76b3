"""Shared data for the test-suite."""
from functools import lru_cache

from neronlat import gallery
from neronlat.generator import random_datum

RANDOM_SEEDS = range(100)


@lru_cache(maxsize=None)
def gallery_data():
    return tuple(gallery.datum(n) for n in gallery.DATA)


@lru_cache(maxsize=None)
def random_data(unipotent: bool = False, count: int = 100):
    """Valid random data of ranks 2, 4 and 6 (the rank cycles with the seed)."""
    return tuple(random_datum(s, rank=(2, 4, 6)[s % 3], unipotent=unipotent) for s in range(count))


@lru_cache(maxsize=None)
def reports(kind: str):
    """Full analyses (identity checks included) of 'gallery', 'random' or 'unipotent' data."""
    from neronlat.chain import blowup_chain

    data = {"gallery": gallery_data, "random": random_data, "unipotent": lambda: random_data(True)}[kind]()
    return tuple(blowup_chain(d) for d in data)
