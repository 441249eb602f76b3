"""Builtin example data: degenerations G1-G6 and graded presentations P1-P3."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .exact.cyclotomic import cyclotomic_field
from .mhs import DegenerationDatum, twist_minus_one


def g1() -> DegenerationDatum:
    """Tate curve."""
    return DegenerationDatum.build(
        [[1, 1], [0, 1]], [[0, 1], [-1, 0]], {0: [[0, 1]], -1: [[1, 0], [0, 1]]}, name="G1"
    )


def g2() -> DegenerationDatum:
    """Mirror quintic, type I: one 4-block, basis f_i = N^(i-1) v / (i-1)!."""
    T = [[1, 1, 1, 1], [0, 1, 2, 3], [0, 0, 1, 3], [0, 0, 0, 1]]
    S = [[0, 0, 0, -3], [0, 0, 1, 0], [0, -1, 0, 0], [3, 0, 0, 0]]
    e = _basis(4)
    F = {1: [e[3]], 0: [e[2], e[3]], -1: [e[1], e[2], e[3]], -2: e}
    return DegenerationDatum.build(T, S, F, name="G2")


def g3() -> DegenerationDatum:
    """Type II_2: N^2 = 0, rank N = 2; limit Gr^W_0 of type (1,-1),(-1,1) needs Q(i)."""
    K = cyclotomic_field(4)
    i = K.zeta
    T = [[1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1]]
    S = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    F = {
        1: [[0, 0, 1, i]],
        0: [[0, 0, 1, i], [1, i, 0, 0]],
        -1: [[0, 0, 1, 0], [0, 0, 0, 1], [1, i, 0, 0]],
        -2: _basis(4),
    }
    return DegenerationDatum.build(T, S, F, order=4, name="G3")


def g4() -> DegenerationDatum:
    """Type II_1: N^2 = 0, rank N = 1."""
    K = cyclotomic_field(4)
    i = K.zeta
    T = [[1, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    S = [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]
    F = {
        1: [[0, 1, i, 0]],
        0: [[0, 1, i, 0], [0, 0, 0, 1]],
        -1: [[0, 1, i, 0], [0, 0, 0, 1], [1, 0, 0, 0]],
        -2: _basis(4),
    }
    return DegenerationDatum.build(T, S, F, order=4, name="G4")


def g6() -> DegenerationDatum:
    """Elliptic curve with monodromy of order 6; F^0 an eigenline of T."""
    K = cyclotomic_field(6)
    z = K.zeta
    return DegenerationDatum.build(
        [[1, -1], [1, 0]], [[0, 1], [-1, 0]], {0: [[1, 1 - z]], -1: _basis(2)}, order=6, name="G6"
    )


def _basis(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _twisted(f, name):
    def build():
        return twist_minus_one(f()).replace(name=name)

    return build


DATA: dict[str, Callable[[], DegenerationDatum]] = {
    "G1": g1,
    "G2": g2,
    "G3": g3,
    "G4": g4,
    "G5a": _twisted(g2, "G5a"),
    "G5b": _twisted(g3, "G5b"),
    "G5c": _twisted(g4, "G5c"),
    "G6": g6,
}

DESCRIPTIONS = {
    "G1": "Tate curve (unipotent, rank 2)",
    "G2": "mirror quintic type I (N^3 != 0)",
    "G3": "mirror quintic type II_2 (N^2 = 0, rk N = 2)",
    "G4": "mirror quintic type II_1 (N^2 = 0, rk N = 1)",
    "G5a": "-1 twist of G2",
    "G5b": "-1 twist of G3",
    "G5c": "-1 twist of G4",
    "G6": "elliptic curve, monodromy of order 6",
    "P1": "maximal ideal I_0 of C[t1, t2]: dual and double dual",
    "P2": "coker of (t1, t1 t2): torsion after pullback",
    "P3": "M' = coker of (t1, t2, t3): Koszul self-duality",
}


def names() -> list[str]:
    return list(DESCRIPTIONS)


def datum(name: str) -> DegenerationDatum:
    try:
        return DATA[name]()
    except KeyError:
        raise KeyError(f"unknown gallery datum {name!r}") from None
