"""Graded modules over Q[t_1..t_s]: Hilbert functions, duals, torsion, Koszul complexes."""
from fractions import Fraction
from itertools import product
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from neronlat import poly
from neronlat.poly import GradedPolyModule, NotHomogeneous, DegreeOutOfRange


def brute_monomials(s, d):
    return [m for m in product(range(d + 1), repeat=s) if sum(m) == d]


def test_hilbert_free():
    R = GradedPolyModule.free(2, [0])
    assert [R.hilbert(d) for d in range(7)] == [d + 1 for d in range(7)]


def test_hilbert_I0():
    I0 = poly.p1_maximal_ideal()
    assert I0.hilbert(0) == 0
    # oracle: monomials of degree d >= 1 all lie in I_0
    assert [I0.hilbert(d) for d in range(1, 7)] == [len(brute_monomials(2, d)) for d in range(1, 7)]


def test_hilbert_koszul_cokernel():
    M = poly.p3_koszul_cokernel()
    assert [M.hilbert(d) for d in range(7)] == [3 * comb(d + 2, 2) - comb(d + 1, 2) for d in range(7)]
    assert [M.hilbert(d) for d in range(3)] == [3, 8, 15]
    with pytest.raises(DegreeOutOfRange):
        M.hilbert(7)


def test_dual_examples():
    d = poly.dual_module(GradedPolyModule.free(2, [0]), 6)
    assert d.module.row_degrees == [0] and d.module.p == 0
    d = poly.dual_module(poly.p1_maximal_ideal(), 6)
    assert d.module.row_degrees == [0] and d.module.p == 0
    M = poly.p3_koszul_cokernel()
    d = poly.dual_module(M, 6)
    assert d.module.q == 3 and d.module.row_degrees == [1, 1, 1]
    # generators are the Koszul syzygies of the row (t1, t2, t3)
    row = [poly.var(3, i) for i in range(3)]
    for g in d.generators:
        total = {}
        for x, y in zip(g, row):
            total = poly.padd(total, poly.pmul(x, y))
        assert total == {}
    assert [d.kernel_dims[e] for e in range(1, 4)] == [M.hilbert(e - 1) for e in range(1, 4)]


@pytest.mark.parametrize("build", [poly.p1_maximal_ideal, poly.p3_koszul_cokernel, lambda: GradedPolyModule.free(2, [0, 1])])
def test_dual_presentation_matches_kernel(build):
    d = poly.dual_module(build(), 6)
    for e, k in d.kernel_dims.items():
        if e in d.module.degrees():
            assert d.module.hilbert(e) == k


def test_reflexivity():
    rep = poly.reflexivity_report(GradedPolyModule.free(2, [0, 0]), 5)
    assert rep.reflexive_evidence and rep.free_evidence
    rep = poly.reflexivity_report(poly.p1_maximal_ideal(), 6)
    assert not rep.reflexive_evidence and not rep.free_evidence
    assert (rep.hilbert[0], rep.double_dual_hilbert[0]) == (0, 1)
    rep = poly.reflexivity_report(poly.p3_koszul_cokernel(), 6)
    assert rep.reflexive_evidence and not rep.free_evidence and rep.self_dual_evidence
    assert rep.generator_degrees == [0, 0, 0]


def test_torsion():
    t1, t2 = poly.var(2, 0), poly.var(2, 1)
    koszul_like = GradedPolyModule.from_matrix(2, [[t1], [t2]])
    assert poly.torsion_check(koszul_like, t1, 6) is None
    P2 = poly.p2_pullback()
    deg, x = poly.torsion_check(P2, t1, 6)
    assert deg == 1 and x == [poly.const(2), t2]
    # oracle: t1 * (1, t2) is the relation column itself
    assert [poly.pmul(t1, c) for c in x] == [P2.A[0][0], P2.A[1][0]]
    assert poly.torsion_check(P2, poly.const(2), 6) is None


def test_koszul():
    k1 = poly.koszul_complex(1)
    assert k1.maps == [[[poly.var(1, 0)]]]
    k2 = poly.koszul_complex(2)
    assert k2.maps[1] == [[poly.pscale(-1, poly.var(2, 1)), poly.var(2, 0)]]
    for s in (1, 2, 3):
        k = poly.koszul_complex(s)
        assert k.composite_vanishes() and k.middle_exact(6)
        assert k.cohomology_dim(s, 0) == 1
        assert all(k.cohomology_dim(s, e) == 0 for e in range(1, 5))


def test_grading():
    t1, t2 = poly.var(2, 0), poly.var(2, 1)
    with pytest.raises(NotHomogeneous):
        GradedPolyModule.from_matrix(2, [[poly.padd(t1, poly.pmul(t1, t2))]])
    P2 = poly.p2_pullback()
    assert P2.row_degrees == [1, 0] and P2.col_degrees == [2]


def test_syzygy_equation():
    assert poly.syzygy_equation(poly.p1_maximal_ideal()) == ["(-t2)*x1 + (t1)*x2 = 0"]


polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.fractions(-5, 5, max_denominator=3).filter(bool), max_size=4)


@settings(max_examples=60, deadline=None)
@given(polys)
def test_parse_format_roundtrip(f):
    assert poly.parse_poly(poly.pformat(f), 2) == f


@settings(max_examples=30, deadline=None)
@given(polys, polys, polys)
def test_ring_laws(f, g, h):
    assert poly.pmul(f, poly.padd(g, h)) == poly.padd(poly.pmul(f, g), poly.pmul(f, h))
    assert poly.pmul(f, g) == poly.pmul(g, f)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.lists(st.integers(0, 2), min_size=1, max_size=3))
def test_dual_of_free_is_free(s, shifts):
    F = GradedPolyModule.free(s, shifts, 4)
    d = poly.dual_module(F, 4)
    assert sorted(d.module.row_degrees) == sorted(-a for a in shifts) and d.module.p == 0
    for e, k in d.kernel_dims.items():
        assert k == poly.free_hilbert(s, [-a for a in shifts], e)
