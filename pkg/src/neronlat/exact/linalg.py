"""Exact dense linear algebra over Q and Q(zeta_M).

Matrices are lists of rows, vectors are tuples. Every routine only uses
``+ - * /`` and comparison with 0, so Fraction and CycloScalar entries both
work. Plain ints are promoted to Fraction on entry.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Matrix = list  # list[list[scalar]]
Vector = tuple


def q(x):
    return Fraction(x) if isinstance(x, int) else x


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[q(x) for x in row] for row in rows]


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = Fraction(0)
            for a, b in zip(row, col):
                if a and b:
                    acc = acc + a * b
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(A: Matrix, v: Sequence) -> Vector:
    out = []
    for row in A:
        acc = Fraction(0)
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return tuple(out)


def dot(u: Sequence, v: Sequence):
    acc = Fraction(0)
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A: Matrix) -> Matrix:
    return [[c * a for a in row] for row in A]


def mat_pow(A: Matrix, k: int) -> Matrix:
    if k < 0:
        return mat_pow(inverse(A), -k)
    result = identity(len(A))
    base = A
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def is_zero_matrix(A: Matrix) -> bool:
    return not any(x for row in A for x in row)


def mat_equal(A: Matrix, B: Matrix) -> bool:
    return shape(A) == shape(B) and all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def mat_map(f, A: Matrix) -> Matrix:
    return [[f(x) for x in row] for row in A]


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    M = [[q(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(M)):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv if x else x for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b if b else a for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(A: Matrix) -> int:
    return len(rref(A)[0]) if A else 0


def nullspace(A: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of {x : A x = 0}."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    R, pivots = rref(A, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            if row[f]:
                x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(as_matrix(A))]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def determinant(A: Matrix):
    M = as_matrix(A)
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c]
        inv = 1 / M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return det


class Subspace:
    """A subspace of K^n stored by its canonical RREF basis (so ``==`` is exact)."""

    __slots__ = ("n", "basis", "_pivots")

    def __init__(self, n: int, vectors: Iterable[Sequence] = ()):
        vecs = [tuple(v) for v in vectors]
        for v in vecs:
            if len(v) != n:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {n}")
        R, piv = rref(vecs, n) if vecs else ([], [])
        self.n = n
        self.basis = tuple(tuple(row) for row in R)
        self._pivots = tuple(piv)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, identity(n))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self._pivots == other._pivots and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.n, self._pivots, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(n={self.n}, dim={self.dim})"

    def contains(self, v: Sequence) -> bool:
        v = [q(x) for x in v]
        for row, p in zip(self.basis, self._pivots):
            c = v[p]
            if c:
                v = [a - c * b if b else a for a, b in zip(v, row)]
        return not any(v)

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return Subspace(self.n, self.basis + other.basis)

    def annihilator(self) -> "Subspace":
        """{y : <b, y> = 0 for every basis vector b} under the dot product."""
        if self.dim == 0:
            return Subspace.full(self.n)
        return Subspace(self.n, nullspace([list(b) for b in self.basis], self.n))

    def __and__(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.n)
        if self <= other:
            return self
        if other <= self:
            return other
        return (self.annihilator() + other.annihilator()).annihilator()

    def image(self, A: Matrix) -> "Subspace":
        return Subspace(len(A), [matvec(A, b) for b in self.basis])

    def map(self, f) -> "Subspace":
        return Subspace(self.n, [tuple(f(x) for x in b) for b in self.basis])

    def extend_basis(self, target) -> list[Vector]:
        """Vectors of ``target`` (a Subspace or a list of vectors) completing a basis of self to one of the sum."""
        cur = self
        added = []
        for b in (target.basis if isinstance(target, Subspace) else target):
            if not cur.contains(b):
                added.append(b)
                cur = Subspace(self.n, cur.basis + (b,))
        return added

    def vectors(self) -> list[Vector]:
        return list(self.basis)
