"""Graded lattices over the disk: standard lattices, F_0M, duality, quotients."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import gallery_data, random_data
from neronlat.exact.cyclotomic import cyclotomic_field
from neronlat import gallery
from neronlat.disk import (
    Element,
    GradedDiskModule,
    WindowTooSmall,
    compute_F0M,
    deligne_lattice,
    dual_lattice,
    elementary_divisors,
    gamma_regularity_check,
    grV_quotient_dims,
    hodge_sublattice,
    quotient_dims,
    zucker_lattice,
)
from neronlat.exact.linalg import Subspace, identity
from neronlat.mhs import DegenerationDatum, twist_minus_one, vanishing_part

E1, E2 = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))

I = cyclotomic_field(4).zeta


def trivial_datum():
    return DegenerationDatum.build(identity(2), [[0, 1], [-1, 0]], {0: [[1, I]], -1: [[1, 0], [0, 1]]}, order=4)


def minus_identity():
    return DegenerationDatum.build([[-1, 0], [0, -1]], [[0, 1], [-1, 0]], {0: [[1, I]], -1: [[1, 0], [0, 1]]}, order=4)


def module(d, window=None):
    return GradedDiskModule(d, window)


def test_deligne_generators():
    gens = deligne_lattice(module(gallery.g1()), 0).generators()
    assert {g.terms[0][:2] for g in gens} == {(0, 0)}
    assert Subspace(2, [g.terms[0][2] for g in gens]).dim == 2
    gens = deligne_lattice(module(minus_identity()), -1, strict=True).generators()
    assert {g.terms[0][:2] for g in gens} == {(Fraction(1, 2), -1)}


def test_hodge_sublattice_extremes():
    m = module(gallery.g2())
    assert hodge_sublattice(m, -5, 0) == deligne_lattice(m, 0)
    assert hodge_sublattice(m, 5, 0) == m.zero_lattice()


def test_griffiths_transversality():
    m = module(gallery.g2())
    for p in range(-2, 3):
        target = hodge_sublattice(m, p - 1, -1)
        for g in hodge_sublattice(m, p, 0).generators():
            if g.terms[0][1] < m.hi:
                assert target.contains(m.dt(g))


def test_F0M_examples():
    m = module(trivial_datum())
    assert compute_F0M(m) == hodge_sublattice(m, 0, -1, strict=True)
    m = module(gallery.g1())
    assert compute_F0M(m) == hodge_sublattice(m, 0, -1, strict=True)
    m = module(gallery.g2())
    F0M, base = compute_F0M(m), hodge_sublattice(m, 0, -1, strict=True)
    assert base <= F0M and F0M != base
    assert F0M.value(Fraction(0), -1).dim > 0


def test_pairing_examples():
    m = module(gallery.g1())
    assert m.pairing(Element([(0, 0, E1)]), Element([(0, 0, E1)])).coeffs == {}
    assert m.pairing(Element([(0, 0, E1)]), Element([(0, 0, E2)])).coeffs == {0: 1}


def _random_element(m, rng):
    c = rng.choice(list(m.classes.values()))
    v = [Fraction(0)] * m.n
    for b in c.space.basis:
        k = rng.randint(-3, 3)
        v = [x + k * y for x, y in zip(v, b)]
    return Element([(c.alpha, rng.randint(-3, 3), tuple(v))])


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["G2", "G3", "G5a", "G6"]))
def test_leibniz(seed, name):
    rng = random.Random(seed)
    m = module(gallery.datum(name))
    x, y = _random_element(m, rng), _random_element(m, rng)
    assert m.pairing(x, y).derivative() == m.pairing(m.dt(x), y) + m.pairing(x, m.dt(y))


def test_deligne_duality():
    for d in (gallery.g2(), twist_minus_one(gallery.g2()), gallery.g6()):
        m = module(d)
        assert dual_lattice(deligne_lattice(m, -1, strict=True)) == deligne_lattice(m, 0)
        assert dual_lattice(deligne_lattice(m, 0)) == deligne_lattice(m, -1, strict=True)


def test_double_dual_Ep():
    m = module(gallery.g2())
    Ep = dual_lattice(compute_F0M(m))
    assert dual_lattice(dual_lattice(Ep)) == Ep


def _random_lattice(m, rng):
    gens = []
    for a, c in m.classes.items():
        for b in c.space.basis:
            gens.append(Element([(a, 2, b)]))
        for _ in range(rng.randint(0, 3)):
            v = [Fraction(0)] * m.n
            for b in c.space.basis:
                k = rng.randint(-2, 2)
                v = [x + k * y for x, y in zip(v, b)]
            gens.append(Element([(a, rng.randint(-2, 1), tuple(v))]))
    return m.from_generators("random", gens)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["G1", "G2", "G3", "G5b", "G6"]))
def test_duality_exchanges_sum_and_intersection(seed, name):
    rng = random.Random(seed)
    m = module(gallery.datum(name), window=5)
    L, L2 = _random_lattice(m, rng), _random_lattice(m, rng)
    D = dual_lattice
    assert D(L) & D(L2) == D(L + L2)
    assert D(L) + D(L2) == D(L & L2)
    assert D(D(L)) == L
    assert (L <= L2) == (D(L2) <= D(L))


# -- quotients ---------------------------------------------------------------------------
def test_quotient_trivial_cases():
    m = module(gallery.g2())
    E = deligne_lattice(m, 0)
    assert quotient_dims(E, E, 3) == [0, 0, 0, 0]
    assert quotient_dims(E, E.shift(1), 3) == [0, 4, 4, 4]
    assert elementary_divisors(E, E) == [0, 0, 0, 0]
    assert grV_quotient_dims(E, E) == {}


def test_synthetic_divisors():
    m = module(gallery.g2())
    E = deligne_lattice(m, 0)
    e = [tuple(Fraction(int(i == j)) for j in range(4)) for i in range(4)]
    Ep = m.from_generators("Ep", [Element([(0, 2, e[0])]), Element([(0, 1, e[1])]), Element([(0, 0, e[2])]), Element([(0, 0, e[3])])])
    assert elementary_divisors(E, Ep) == [2, 1, 0, 0]


def test_g2_quotients():
    m = module(gallery.g2())
    E, Ep = zucker_lattice(m), dual_lattice(compute_F0M(m))
    assert quotient_dims(E, Ep, 2)[1:] == [1, 1]
    assert elementary_divisors(E, Ep) == [1, 0]
    assert grV_quotient_dims(E, Ep) == {0: 1}


def test_twisted_grV():
    d = twist_minus_one(gallery.g2())
    m = module(d)
    grv = grV_quotient_dims(zucker_lattice(m), dual_lattice(compute_F0M(m)))
    assert set(grv) <= {Fraction(1, 2) + j for j in range(5)}
    assert sum(v for k, v in grv.items() if k < 1) == vanishing_part(d).d_k(1)


def test_gamma_regularity():
    assert gamma_regularity_check(module(trivial_datum()))
    for d in gallery_data() + random_data()[:20]:
        assert gamma_regularity_check(module(d))


def test_window_too_small():
    with pytest.raises(WindowTooSmall):
        dual_lattice(compute_F0M(module(gallery.g2(), window=1)))
