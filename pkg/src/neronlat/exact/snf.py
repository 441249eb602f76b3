"""Smith normal form over Z and lattice saturation."""
from __future__ import annotations

from fractions import Fraction
from math import lcm


def _ident(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form_int(A) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (U, D, V) with U*A*V = D, D diagonal with d_i | d_{i+1}, d_i >= 0.

    U and V are unimodular. Works for any rectangular integer matrix.
    """
    D = [[int(x) for x in row] for row in A]
    m = len(D)
    n = len(D[0]) if m else 0
    U = _ident(m)
    V = _ident(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row_dst += c * row_src
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for row in D:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        while True:
            # move the smallest nonzero entry of the remaining block to (t, t)
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, D, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
            if any(D[i][t] for i in range(t + 1, m)) or any(D[t][j] for j in range(t + 1, n)):
                continue  # a smaller remainder appeared; pick it as the next pivot
            # divisibility: the pivot must divide the rest of the block
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            add_row(bad, t, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, D, V


def invariant_factors(A) -> list[int]:
    _, D, _ = smith_normal_form_int(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def torsion_of_cokernel(A) -> list[int]:
    """Invariant factors > 1 of coker(A: Z^n -> Z^m)."""
    return [d for d in invariant_factors(A) if d > 1]


def _int_inverse(U: list[list[int]]) -> list[list[int]]:
    from .linalg import inverse

    inv = inverse([[Fraction(x) for x in row] for row in U])
    out = []
    for row in inv:
        assert all(x.denominator == 1 for x in row)
        out.append([int(x) for x in row])
    return out


def saturate(vectors, n: int) -> list[tuple[int, ...]]:
    """Z-basis of (span_Q vectors) intersected with Z^n."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return []
    rows = []
    for v in vecs:
        den = lcm(*[Fraction(x).denominator for x in v])
        rows.append([int(Fraction(x) * den) for x in v])
    B = [list(col) for col in zip(*rows)]  # n x r, columns are the vectors
    U, D, _ = smith_normal_form_int(B)
    r = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i])
    Uinv = _int_inverse(U)
    return [tuple(Uinv[i][j] for i in range(n)) for j in range(r)]
