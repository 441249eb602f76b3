"""Random data generator."""
import pytest
from hypothesis import given, settings, strategies as st

from neronlat.chain import classify_quintic
from neronlat.generator import Infeasible, random_datum
from neronlat.io import datum_to_dict, jordan_type
from neronlat.mhs import validate_datum


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([2, 4, 6]))
def test_valid_and_deterministic(seed, rank):
    d = random_datum(seed, rank=rank)
    assert d.rank == rank
    assert validate_datum(d).ok
    assert datum_to_dict(random_datum(seed, rank=rank)) == datum_to_dict(d)


@pytest.mark.parametrize("jordan", [[4], [2, 2], [3, 3], [2, 1, 1], [1, 1, 1, 1], [2, 2, 2], [4, 2], [6]])
def test_prescribed_jordan_type(jordan):
    for seed in range(4):
        d = random_datum(seed, jordan=jordan)
        assert validate_datum(d).ok
        assert jordan_type(d.N) == sorted(jordan, reverse=True)


def test_unipotent_flag():
    for seed in range(10):
        assert random_datum(seed, rank=4, unipotent=True).is_unipotent


def test_quintic_type_I_by_construction():
    for seed in range(5):
        assert classify_quintic(random_datum(seed, jordan=[4], unipotent=True)) == "I"


def test_infeasible():
    with pytest.raises(Infeasible):
        random_datum(0, rank=3)
    with pytest.raises(Infeasible):
        random_datum(0, jordan=[3])
    with pytest.raises(Infeasible):
        random_datum(0, rank=4, jordan=[2])
