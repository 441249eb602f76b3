"""Degeneration data: validation, spectral data, vanishing part, component group, transformations."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import gallery_data, random_data
from neronlat.exact.cyclotomic import cyclotomic_field
from neronlat import gallery
from neronlat.exact.linalg import Subspace, identity, inverse, mat_pow, mat_scale, matmul, matvec
from neronlat.exact.nilpotent import nilpotent_exp
from neronlat.generator import _unimodular
from neronlat.mhs import (
    DegenerationDatum,
    InvalidDatum,
    component_group,
    jordan_chevalley,
    monodromy_weight_filtration,
    require_valid,
    twist_minus_one,
    unipotent_base_change,
    validate_datum,
    vanishing_part,
)

I = cyclotomic_field(4).zeta


def _block(n):
    return [[Fraction(int(j == i + 1)) for j in range(n)] for i in range(n)]


def test_jordan_chevalley_examples():
    assert jordan_chevalley(identity(2)) == (identity(2), identity(2), [[0, 0], [0, 0]])
    Ts, Tu, N = jordan_chevalley([[1, 1], [0, 1]])
    assert Ts == identity(2) and N == [[0, 1], [0, 0]]
    Ts, Tu, N = jordan_chevalley([[-1, 1], [0, -1]])
    assert Ts == [[-1, 0], [0, -1]] and N == [[0, -1], [0, 0]]
    assert matmul(Ts, nilpotent_exp(N)) == [[-1, 1], [0, -1]]


def test_weight_filtration_examples():
    W = monodromy_weight_filtration([[0, 0], [0, 0]])
    assert W(-1).dim == 2 and W(-2).dim == 0
    N = _block(2)
    W = monodromy_weight_filtration(N)
    img = Subspace(2, [[1, 0]])
    assert W(0).dim == 2 and W(-1) == img and W(-2) == img and W(-3).dim == 0
    W = monodromy_weight_filtration(_block(4))
    assert W.weights == [-4, -2, 0, 2]
    assert all(W.graded_dim(k) == 1 for k in W.weights)


def _check_weight_axioms(N, n):
    W = monodromy_weight_filtration(N)
    for k in range(-n - 2, n + 1):
        assert W(k).image(N) <= W(k - 2)
        assert W(k - 1) <= W(k)
    for k in range(1, n + 1):
        Nk = mat_pow(N, k)
        assert W.graded_dim(-1 + k) == W.graded_dim(-1 - k)
        # N^k : Gr_{-1+k} -> Gr_{-1-k} onto
        assert W(-1 + k).image(Nk) + W(-2 - k) == W(-1 - k)


def test_weight_axioms_on_data():
    for d in gallery_data() + random_data()[:40]:
        _check_weight_axioms(d.N, d.rank)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=3), st.integers(0, 10**6))
def test_weight_axioms_property(blocks, seed):
    n = sum(blocks)
    N = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b - 1):
            N[off + i][off + i + 1] = Fraction(1)
        off += b
    g = _unimodular(n, random.Random(seed), 2 * n)
    gi = inverse(g)
    _check_weight_axioms(matmul(matmul(g, N), gi), n)


# -- validation -------------------------------------------------------------------------
def test_gallery_valid():
    for d in gallery_data():
        assert validate_datum(d).ok, d.name


def test_symmetric_polarization_rejected():
    d = gallery.g1()
    bad = DegenerationDatum.build(d.T, [[0, 1], [1, 0]], {0: [[1, I]], -1: [[1, 0], [0, 1]]}, order=4)
    rep = validate_datum(bad)
    assert not rep["skew-symmetry"].ok
    with pytest.raises(InvalidDatum):
        require_valid(bad)


def test_ts_unstable_filtration_rejected():
    d = gallery.g6()
    bad = DegenerationDatum.build(d.T, d.S, {0: [[1, 0]], -1: [[1, 0], [0, 1]]}, order=6)
    assert not validate_datum(bad)["T_s F = F"].ok


def test_eigen_decomposition():
    for d in gallery_data() + random_data()[:30]:
        K = d.field
        total = Subspace(d.rank)
        for c in d.eigenclasses:
            assert K.zeta_power(-int(c.alpha * d.order)) == c.eigenvalue
            for v in c.space.basis:
                assert list(matvec(d.T_s, v)) == [c.eigenvalue * x for x in v]
            total = total + c.space
        assert total.dim == d.rank == sum(c.dim for c in d.eigenclasses)
        assert all(Fraction(0) <= c.alpha < 1 and (c.alpha * d.m).denominator == 1 for c in d.eigenclasses)


# -- vanishing part, component group ---------------------------------------------------
def test_vanishing_part_trivial():
    d = DegenerationDatum.build(identity(2), [[0, 1], [-1, 0]], {0: [[1, I]], -1: [[1, 0], [0, 1]]}, order=4)
    vp = vanishing_part(d)
    assert vp.dim_van == 0 and vp.a == 0 and all(x == 0 for x in vp.d)


def test_vanishing_part_quintic():
    vp = vanishing_part(gallery.g2())
    assert vp.dim_van == 3 and vp.d_k(1) == 1 and vp.d_k(2) == 0 and vp.a == 1
    vp = vanishing_part(gallery.g4())
    assert vp.d_k(1) == 0 and vp.a == 0


def test_d_weakly_decreasing():
    for d in gallery_data() + random_data():
        vp = vanishing_part(d)
        assert all(x >= y for x, y in zip(vp.d, vp.d[1:]))


@pytest.mark.parametrize("T, G", [(identity(2), []), ([[1, 1], [0, 1]], []), ([[-1, 0], [0, -1]], [2, 2])])
def test_component_group_examples(T, G):
    assert component_group(T) == G


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 99), st.integers(0, 10**6))
def test_component_group_conjugation_invariant(i, seed):
    d = (gallery_data() + random_data())[i % (len(gallery_data()) + len(random_data()))]
    g = _unimodular(d.rank, random.Random(seed), 3 * d.rank)
    gi = [[int(x) for x in row] for row in inverse(g)]
    assert component_group(matmul(matmul(g, d.T), gi)) == component_group(d.T)


# -- transformations --------------------------------------------------------------------
def test_twist_of_g2():
    t = twist_minus_one(gallery.g2())
    assert validate_datum(t).ok
    assert vanishing_part(t).h_inv.dim == 0
    assert [c.alpha for c in t.eigenclasses] == [Fraction(1, 2)]


def test_twist_of_tate_curve():
    assert vanishing_part(twist_minus_one(gallery.g1())).a == 0


@pytest.mark.parametrize("i", range(0, 100, 7))
def test_twist_involution(i):
    d = (gallery_data() + random_data())[i]
    tt = twist_minus_one(twist_minus_one(d))
    assert tt.T == d.T and tt.name == d.name
    assert all(tt.F(p) == d.F(p) for p in range(d.bottom_hodge_level - 1, d.top_hodge_level + 2))


def test_base_change():
    assert unipotent_base_change(gallery.g1()).T == gallery.g1().T
    d = twist_minus_one(gallery.g1())
    b = unipotent_base_change(d)
    assert b.T_matrix == mat_pow(d.T_matrix, 2)
    assert b.N == mat_scale(2, d.N) and b.is_unipotent
    minus = DegenerationDatum.build([[-1, 0], [0, -1]], [[0, 1], [-1, 0]], {0: [[1, I]], -1: [[1, 0], [0, 1]]}, order=4)
    b = unipotent_base_change(minus)
    assert b.T_matrix == identity(2) and b.N == [[0, 0], [0, 0]]
