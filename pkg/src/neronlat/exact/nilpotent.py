"""Finite log/exp series for unipotent and nilpotent matrices, quasi-unipotent order."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .linalg import identity, is_zero_matrix, mat_add, mat_pow, mat_scale, mat_sub, matmul


class NotUnipotent(ValueError):
    pass


class NotQuasiUnipotent(ValueError):
    pass


def is_nilpotent(X) -> bool:
    return is_zero_matrix(mat_pow(X, len(X))) if X else True


def nilpotent_log(U):
    """log U = sum_{k>=1} (-1)^{k+1} (U - I)^k / k, finite because U - I is nilpotent."""
    n = len(U)
    X = mat_sub(U, identity(n))
    if not is_nilpotent(X):
        raise NotUnipotent("U - I is not nilpotent")
    result = [[Fraction(0)] * n for _ in range(n)]
    power = X
    k = 1
    while not is_zero_matrix(power):
        result = mat_add(result, mat_scale(Fraction((-1) ** (k + 1), k), power))
        power = matmul(power, X)
        k += 1
    return result


def nilpotent_exp(X):
    n = len(X)
    if not is_nilpotent(X):
        raise ValueError("matrix is not nilpotent")
    result = identity(n)
    term = identity(n)
    k = 1
    while True:
        term = mat_scale(Fraction(1, k), matmul(term, X))
        if is_zero_matrix(term):
            return result
        result = mat_add(result, term)
        k += 1


def _psi(m: int) -> int:
    """Smallest n such that GL_n(Z) has an element of order m."""
    total = 0
    k = m
    p = 2
    factors = []
    while p * p <= k:
        if k % p == 0:
            e = 0
            while k % p == 0:
                k //= p
                e += 1
            factors.append((p, e))
        p += 1
    if k > 1:
        factors.append((k, 1))
    for p, e in factors:
        total += (p - 1) * p ** (e - 1)
    if m % 4 == 2:
        total -= 1
    return total


@lru_cache(maxsize=None)
def max_torsion_order(n: int) -> int:
    """Largest order of a finite-order element of GL_n(Z)."""
    best = 1
    for m in range(1, 64 * max(n, 1) ** 2 + 3):
        if _psi(m) <= n:
            best = m
    return best


def quasi_unipotent_order(T, bound: int | None = None) -> int:
    """Smallest m <= bound with (T^m - I) nilpotent."""
    n = len(T)
    if bound is None:
        bound = max_torsion_order(n)
    Tm = identity(n)
    for m in range(1, bound + 1):
        Tm = matmul(Tm, T)
        if is_nilpotent(mat_sub(Tm, identity(n))):
            return m
    raise NotQuasiUnipotent(f"no m <= {bound} with T^m unipotent")
