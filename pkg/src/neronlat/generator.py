"""Deterministic pseudo-random degeneration data with a prescribed Jordan type.

The datum is assembled from N-strings.  A single string of even length is of
Hodge-Tate type; two strings of equal length carry a pair of conjugate Hodge
types (p, q), (q, p) using a Gaussian or Eisenstein coefficient.  Semisimple
parts act by a sign on a block, or by a rotation of order 4 or 6 on a pair.
A random unimodular change of basis then hides the block structure.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm

from .exact.cyclotomic import cyclotomic_field
from .exact.linalg import inverse, matmul, matvec, transpose
from .exact.nilpotent import nilpotent_exp
from .mhs import DegenerationDatum


class Infeasible(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    length: int
    pair: bool  # two strings (v, w) instead of one
    p: int  # top Hodge level of x (for a Hodge-Tate string p = q)
    q: int
    kind: str = "rational"  # "gauss" or "eisenstein" for pairs
    sign: int = 1
    rotate: bool = False

    @property
    def size(self) -> int:
        return self.length * (2 if self.pair else 1)


def plan_blocks(partition: list[int], rng: random.Random, unipotent: bool = False, max_gap: int = 3) -> list[Block]:
    """Group Jordan block lengths into Hodge-Tate strings and conjugate pairs."""
    counts: dict[int, int] = {}
    for ell in partition:
        if ell < 1:
            raise Infeasible(f"block length {ell} < 1")
        counts[ell] = counts.get(ell, 0) + 1
    kind = rng.choice(["gauss", "eisenstein"])
    blocks = []
    for ell in sorted(counts, reverse=True):
        c = counts[ell]
        if ell % 2:
            if c % 2:
                raise Infeasible(f"odd block length {ell} occurs an odd number of times; no weight -1 MHS has this N")
            singles, pairs = 0, c // 2
        else:
            pairs = rng.randint(0, c // 2)
            singles = c - 2 * pairs
        for _ in range(singles):
            p = ell // 2 - 1
            blocks.append(Block(ell, False, p, p, sign=1 if unipotent else rng.choice([1, -1])))
        for _ in range(pairs):
            # p + q = ell - 2, p > q, p - q of the parity of ell - 2
            gaps = [g for g in range(1, max_gap + 1) if (g - (ell - 2)) % 2 == 0]
            g = rng.choice(gaps)
            p = (ell - 2 + g) // 2
            rot = False if unipotent else rng.random() < 0.5
            sign = 1 if unipotent else rng.choice([1, -1])
            blocks.append(Block(ell, True, p, p - g, kind, sign, rot))
    return blocks


def random_partition(rank: int, rng: random.Random) -> list[int]:
    if rank % 2:
        raise Infeasible("a weight -1 polarized structure has even rank")
    parts: list[int] = []
    left = rank
    while left:
        choices = [ell for ell in range(1, left + 1) if ell % 2 == 0 or 2 * ell <= left]
        ell = rng.choice(choices)
        if ell % 2:
            parts += [ell, ell]
            left -= 2 * ell
        else:
            parts.append(ell)
            left -= ell
    return sorted(parts, reverse=True)


def _field_order(blocks: list[Block]) -> int:
    M = 1
    for b in blocks:
        if b.sign == -1:
            M = lcm(M, 2)
        if b.pair:
            M = lcm(M, 4 if b.kind == "gauss" else 6)
    return M


def _pair_constants(kind: str, K):
    """(c, sigma_skew, sigma_sym, R): x = v + c w, polarization forms on (v, w), rotation."""
    if kind == "gauss":
        c = K.zeta_power(K.order // 4)
        return c, [[0, 1], [-1, 0]], [[2, 0], [0, 2]], [[0, -1], [1, 0]]
    # c = zeta_3 : c^2 + c + 1 = 0
    c = K.zeta_power(K.order // 3)
    return c, [[0, 1], [-1, 0]], [[2, 1], [1, 2]], [[0, -1], [1, 1]]


def _unimodular(n: int, rng: random.Random, steps: int) -> list[list[int]]:
    g = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        c = rng.choice([-1, 1])
        g[i] = [a + c * b for a, b in zip(g[i], g[j])]
    if n > 1:
        perm = list(range(n))
        rng.shuffle(perm)
        g = [g[k] for k in perm]
    return g


def random_datum(
    seed: int,
    rank: int | None = None,
    jordan: list[int] | None = None,
    unipotent: bool = False,
    mix: bool = True,
) -> DegenerationDatum:
    rng = random.Random(seed)
    if jordan is None:
        if rank is None:
            rank = rng.choice([2, 4, 6])
        jordan = random_partition(rank, rng)
    elif rank is not None and sum(jordan) != rank:
        raise Infeasible(f"Jordan type {jordan} does not have rank {rank}")
    blocks = plan_blocks(list(jordan), rng, unipotent)
    n = sum(b.size for b in blocks)
    M = _field_order(blocks)
    K = cyclotomic_field(M)
    zero = Fraction(0)
    N = [[zero] * n for _ in range(n)]
    Ts = [[zero] * n for _ in range(n)]
    S = [[zero] * n for _ in range(n)]
    hodge: dict[int, list] = {}

    def add_F(level_top: int, vecs_by_j):
        # vecs_by_j[j] sits in F^(level_top - j)
        for j, v in enumerate(vecs_by_j):
            hodge.setdefault(level_top - j, []).append(v)

    off = 0
    for b in blocks:
        ell = b.length
        strings = 2 if b.pair else 1
        idx = [[off + s * ell + i for i in range(ell)] for s in range(strings)]  # idx[s][i] = f_i of string s
        for s in range(strings):
            for i in range(ell - 1):
                N[idx[s][i + 1]][idx[s][i]] = Fraction(i + 1)  # N f_i = (i+1) f_{i+1}
        if b.pair:
            c, sk, sy, R = _pair_constants(b.kind, K)
            sigma = sk if ell % 2 else sy
            for s in range(2):
                for u in range(2):
                    for i in range(ell):
                        j = ell - 1 - i
                        S[idx[s][i]][idx[u][j]] = Fraction((-1) ** i * comb(ell - 1, i) * sigma[s][u])
                for u in range(2):
                    r = R[s][u] if b.rotate else int(s == u)
                    for i in range(ell):
                        Ts[idx[s][i]][idx[u][i]] = Fraction(b.sign * r)
            cbar = K.conj(c)
            for coef, top in ((c, b.p), (cbar, b.q)):
                vecs = []
                for i in range(ell):
                    v = [zero] * n
                    v[idx[0][i]] = K(1)
                    v[idx[1][i]] = coef
                    vecs.append(v)
                add_F(top, vecs)
        else:
            for i in range(ell):
                j = ell - 1 - i
                S[idx[0][i]][idx[0][j]] = Fraction((-1) ** i * comb(ell - 1, i))
                Ts[idx[0][i]][idx[0][i]] = Fraction(b.sign)
            vecs = []
            for i in range(ell):
                v = [zero] * n
                v[idx[0][i]] = Fraction(1)
                vecs.append(v)
            add_F(b.p, vecs)
        off += b.size

    T = matmul(Ts, nilpotent_exp(N))
    levels = sorted(hodge)
    F = {}
    acc: list = []
    for p in reversed(levels):
        acc = acc + hodge[p]
        F[p] = list(acc)
    if mix:
        shift = Fraction(rng.randint(-2, 2))
        if shift:
            E = nilpotent_exp([[shift * x for x in row] for row in N])
            F = {p: [matvec(E, v) for v in vs] for p, vs in F.items()}
        g = _unimodular(n, rng, 3 * n)
        gi = inverse([[Fraction(x) for x in row] for row in g])
        gF = [[Fraction(x) for x in row] for row in g]
        T = matmul(matmul(gF, T), gi)
        S = matmul(matmul(transpose(gi), S), gi)
        F = {p: [matvec(gF, v) for v in vs] for p, vs in F.items()}
    name = f"random-{seed}"
    return DegenerationDatum.build(T, S, {p: [tuple(K(x) for x in v) for v in vs] for p, vs in F.items()}, order=M, name=name)
