"""Degeneration data: monodromy, polarization and limit Hodge filtration.

Computes the Jordan decomposition of the monodromy, the eigenclass
decomposition of T_s, the monodromy weight filtration, the invariant and
vanishing parts with the dimensions d_k, the component group, and the two
datum transformations (-1 twist, unipotent base change).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Mapping, Sequence

from .exact.cyclotomic import CyclotomicField, cyclotomic_field
from .exact.linalg import (
    Subspace,
    determinant,
    identity,
    inverse,
    is_zero_matrix,
    mat_equal,
    mat_pow,
    mat_scale,
    mat_sub,
    matmul,
    matvec,
    nullspace,
    transpose,
)
from .exact.nilpotent import NotQuasiUnipotent, nilpotent_exp, nilpotent_log, quasi_unipotent_order
from .exact.snf import saturate, torsion_of_cokernel

WEIGHT = -1


@dataclass(frozen=True)
class EigenClass:
    alpha: Fraction
    eigenvalue: object  # exp(-2 pi i alpha) in the coefficient field
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim


@dataclass(frozen=True)
class WeightFiltration:
    n: int
    pieces: Mapping[int, Subspace]  # W_k for k in [lo, hi]; below lo zero, above hi everything
    center: int = WEIGHT

    def __call__(self, k: int) -> Subspace:
        if not self.pieces:
            return Subspace.full(self.n) if k >= self.center else Subspace.zero(self.n)
        lo, hi = min(self.pieces), max(self.pieces)
        if k < lo:
            return Subspace.zero(self.n)
        if k > hi:
            return Subspace.full(self.n)
        return self.pieces[k]

    @property
    def weights(self) -> list[int]:
        return sorted(k for k in self.pieces if self.graded_dim(k))

    def graded_dim(self, k: int) -> int:
        return self(k).dim - self(k - 1).dim


def monodromy_weight_filtration(N, center: int = WEIGHT) -> WeightFiltration:
    """The weight filtration of a nilpotent N, centred at ``center``.

    Uses W_{c+j} = sum_{a >= max(0, -j-1)} Im N^a  cap  Ker N^{a+j+1}.
    """
    n = len(N)
    powers = [identity(n)]
    while not is_zero_matrix(powers[-1]):
        powers.append(matmul(powers[-1], N))
    ell = len(powers) - 1  # N^ell = 0, N^(ell-1) != 0
    full = Subspace.full(n)
    images = [full.image(P) for P in powers]
    kernels = [Subspace(n, nullspace(P, n)) for P in powers]

    def img(a):
        return images[a] if a <= ell else Subspace.zero(n)

    def ker(b):
        return kernels[b] if b <= ell else full

    pieces = {}
    for j in range(-ell, ell):
        acc = Subspace.zero(n)
        for a in range(max(0, -j - 1), ell + 1):
            b = a + j + 1
            if b < 0:
                continue
            acc = acc + (img(a) & ker(b))
        pieces[center + j] = acc
    pieces[center + ell] = full
    return WeightFiltration(n, pieces, center)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


class InvalidDatum(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        names = ", ".join(c.name for c in report.failures)
        super().__init__(f"datum fails: {names}")


def _freeze_matrix(A) -> tuple[tuple[int, ...], ...]:
    out = []
    for row in A:
        r = []
        for x in row:
            fx = Fraction(x)
            if fx.denominator != 1:
                raise ValueError(f"non-integral entry {x}")
            r.append(int(fx))
        out.append(tuple(r))
    return tuple(out)


@dataclass(frozen=True)
class DegenerationDatum:
    """Integral monodromy T, polarization S (weight -1), limit Hodge filtration F.

    ``hodge`` maps a level p to generators of F^p (vectors over Q(zeta_order)).
    An unlisted level p takes the value of the nearest listed level above it,
    and is zero above the top listed level.
    """

    T: tuple
    S: tuple
    hodge: tuple  # ((p, (vector, ...)), ...) sorted by p
    order: int = 1
    name: str = ""
    window: int | None = None

    @classmethod
    def build(cls, T, S, hodge: Mapping[int, Sequence], order: int = 1, name: str = "", window=None):
        K = cyclotomic_field(order)
        T = _freeze_matrix(T)
        S = _freeze_matrix(S)
        n = len(T)
        if any(len(r) != n for r in T) or len(S) != n or any(len(r) != n for r in S):
            raise ValueError("T and S must be square of the same size")
        levels = []
        for p in sorted(hodge):
            vecs = []
            for v in hodge[p]:
                if len(v) != n:
                    raise ValueError(f"Hodge vector at level {p} has length {len(v)}, expected {n}")
                vecs.append(tuple(K(x) for x in v))
            levels.append((int(p), tuple(vecs)))
        return cls(T, S, tuple(levels), order, name, window)

    def replace(self, **changes) -> "DegenerationDatum":
        from dataclasses import replace

        return replace(self, **changes)

    # -- basic structure -------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.T)

    @property
    def field(self) -> CyclotomicField:
        return cyclotomic_field(self.order)

    @cached_property
    def T_matrix(self):
        return [[Fraction(x) for x in row] for row in self.T]

    @cached_property
    def S_matrix(self):
        return [[Fraction(x) for x in row] for row in self.S]

    @cached_property
    def _hodge_spaces(self) -> dict[int, Subspace]:
        return {p: Subspace(self.rank, vecs) for p, vecs in self.hodge}

    def F(self, p: int) -> Subspace:
        spaces = self._hodge_spaces
        for level in sorted(spaces):
            if level >= p:
                return spaces[level]
        return Subspace.zero(self.rank)

    @property
    def hodge_levels(self) -> list[int]:
        return sorted(self._hodge_spaces)

    @cached_property
    def top_hodge_level(self) -> int:
        """Largest p with F^p != 0 (0 if F is empty)."""
        nonzero = [p for p, sp in self._hodge_spaces.items() if sp.dim]
        return max(nonzero) if nonzero else 0

    @cached_property
    def bottom_hodge_level(self) -> int:
        return min(self._hodge_spaces) if self._hodge_spaces else 0

    def hodge_numbers(self) -> dict[int, int]:
        """h^{p, -1-p} = dim F^p - dim F^{p+1} of the general fibre."""
        lo, hi = self.bottom_hodge_level, self.top_hodge_level
        return {p: self.F(p).dim - self.F(p + 1).dim for p in range(lo, hi + 1) if self.F(p).dim - self.F(p + 1).dim}

    # -- monodromy -------------------------------------------------------------
    @cached_property
    def m(self) -> int:
        return quasi_unipotent_order(self.T_matrix)

    @cached_property
    def jordan(self):
        return jordan_chevalley(self.T_matrix)

    @property
    def T_s(self):
        return self.jordan[0]

    @property
    def T_u(self):
        return self.jordan[1]

    @property
    def N(self):
        return self.jordan[2]

    @property
    def is_unipotent(self) -> bool:
        return self.m == 1

    @cached_property
    def eigenclasses(self) -> tuple[EigenClass, ...]:
        return eigen_decomposition(self)

    def eigenclass(self, alpha) -> EigenClass:
        alpha = Fraction(alpha)
        for c in self.eigenclasses:
            if c.alpha == alpha:
                return c
        raise KeyError(alpha)

    @cached_property
    def weight_filtration(self) -> WeightFiltration:
        return monodromy_weight_filtration(self.N)

    def conj_subspace(self, V: Subspace) -> Subspace:
        return V.map(self.field.conj)

    def pairing_value(self, u, v):
        """S(u, v) for coordinate vectors."""
        return sum((u[i] * self.S_matrix[i][j] * v[j] for i in range(self.rank) for j in range(self.rank) if u[i] and v[j] and self.S_matrix[i][j]), Fraction(0))

    def s_perp(self, V: Subspace) -> Subspace:
        """{u : S(u, v) = 0 for all v in V}."""
        return Subspace(self.rank, [matvec(self.S_matrix, b) for b in V.basis]).annihilator()


def jordan_chevalley(T):
    """(T_s, T_u, N) with T = T_s T_u, N = log T_u = (1/m) log(T^m)."""
    m = quasi_unipotent_order(T)
    N = mat_scale(Fraction(1, m), nilpotent_log(mat_pow(T, m)))
    T_u = nilpotent_exp(N)
    T_s = matmul(T, inverse(T_u))
    return T_s, T_u, N


def eigen_decomposition(datum: DegenerationDatum) -> tuple[EigenClass, ...]:
    """Eigenspaces of T_s in H over Q(zeta_order); raises if T_s does not split."""
    K = datum.field
    M = datum.order
    n = datum.rank
    classes = []
    total = 0
    for j in range(M):
        lam = K.zeta_power(j)
        A = [[datum.T_s[r][c] - (lam if r == c else 0) for c in range(n)] for r in range(n)]
        ker = Subspace(n, nullspace(A, n))
        if ker.dim:
            classes.append(EigenClass(Fraction((-j) % M, M), lam, ker))
            total += ker.dim
    if total != n:
        raise NotQuasiUnipotent(f"eigenvalues of T_s do not lie in Q(zeta_{M})")
    return tuple(sorted(classes, key=lambda c: c.alpha))


def validate_datum(datum: DegenerationDatum) -> ValidationReport:
    """Itemized check of every datum axiom. Failures are diagnostics, not exceptions."""
    checks: list[CheckResult] = []
    n = datum.rank
    T, S = datum.T_matrix, datum.S_matrix

    def add(name, ok, detail=""):
        checks.append(CheckResult(name, bool(ok), detail))

    det_T = determinant(T)
    add("T integral invertible", det_T in (1, -1), f"det T = {det_T}")
    try:
        m = datum.m
        add("quasi-unipotent", True, f"m = {m}")
    except NotQuasiUnipotent as exc:
        add("quasi-unipotent", False, str(exc))
        m = None
    add("skew-symmetry", mat_equal(transpose(S), mat_scale(-1, S)))
    add("nondegeneracy", determinant(S) != 0, f"det S = {determinant(S)}")
    add("T-invariance", mat_equal(matmul(matmul(transpose(T), S), T), S))

    levels = datum.hodge_levels
    nested = all(datum.F(p + 1) <= datum.F(p) for p in range(min(levels, default=0), max(levels, default=0) + 1))
    add("F nested", nested)
    add("F exhaustive", datum.F(datum.bottom_hodge_level).dim == n, f"dim F^{datum.bottom_hodge_level} = {datum.F(datum.bottom_hodge_level).dim}")
    iso = True
    for p in range(datum.bottom_hodge_level - 1, datum.top_hodge_level + 2):
        Fp, Fq = datum.F(p), datum.F(-p)
        if any(datum.pairing_value(u, v) for u in Fp.basis for v in Fq.basis):
            iso = False
            break
    add("isotropy", iso, "S(F^p, F^q) = 0 for p + q >= 0")
    add("F^0 Lagrangian", 2 * datum.F(0).dim == n, f"dim F^0 = {datum.F(0).dim}, rank = {n}")

    if m is None:
        for name in ("eigenvalues in field", "infinitesimal invariance", "T_s F = F", "N F^p in F^(p-1)", "MHS opposedness"):
            add(name, False, "skipped: monodromy is not quasi-unipotent")
        return ValidationReport(tuple(checks))

    add("eigenvalues in field", datum.order % m == 0, f"m = {m}, field order = {datum.order}")
    N, T_s = datum.N, datum.T_s
    add("infinitesimal invariance", is_zero_matrix(mat_sub(matmul(transpose(N), S), mat_scale(-1, matmul(S, N)))), "S(Nx, y) + S(x, Ny) = 0")
    rng = range(datum.bottom_hodge_level, datum.top_hodge_level + 1)
    add("T_s F = F", all(datum.F(p).image(T_s) == datum.F(p) for p in rng))
    add("N F^p in F^(p-1)", all(datum.F(p).image(N) <= datum.F(p - 1) for p in rng))

    if datum.order % m:
        add("MHS opposedness", False, "skipped: field does not contain the eigenvalues")
    else:
        ok, detail = _mhs_opposed(datum)
        add("MHS opposedness", ok, detail)
    return ValidationReport(tuple(checks))


def _mhs_opposed(datum: DegenerationDatum) -> tuple[bool, str]:
    W = datum.weight_filtration
    lo, hi = datum.bottom_hodge_level - 1, datum.top_hodge_level + 2
    for k in W.weights:
        Wk, Wk1 = W(k), W(k - 1)
        g = Wk.dim - Wk1.dim
        for p in range(lo - abs(k) - 1, hi + abs(k) + 2):
            A = (datum.F(p) & Wk) + Wk1
            B = (datum.conj_subspace(datum.F(k + 1 - p)) & Wk) + Wk1
            a, b = A.dim - Wk1.dim, B.dim - Wk1.dim
            if a + b != g or (A + B).dim != Wk.dim:
                return False, f"Gr^W_{k}: F^{p} and conj F^{k + 1 - p} not opposed ({a} + {b} vs {g})"
    return True, ""


def require_valid(datum: DegenerationDatum) -> DegenerationDatum:
    report = validate_datum(datum)
    if not report.ok:
        raise InvalidDatum(report)
    return datum


@dataclass(frozen=True)
class VanishingPart:
    h_inv_Z: tuple[tuple[int, ...], ...]  # saturated Z-basis of Ker(T - id)
    h_inv: Subspace
    d: tuple[int, ...]  # d_k = dim F^k H^van for k = 0 .. top + 1
    a: int
    quotient_filtration: Mapping[int, Subspace]  # preimages F^k + H^inv in H

    @property
    def dim_van(self) -> int:
        return self.h_inv.n - self.h_inv.dim

    def d_k(self, k: int) -> int:
        return self.d[k] if 0 <= k < len(self.d) else 0


def invariant_lattice(datum: DegenerationDatum) -> list[tuple[int, ...]]:
    n = datum.rank
    A = mat_sub(datum.T_matrix, identity(n))
    return saturate(nullspace(A, n), n)


def vanishing_part(datum: DegenerationDatum) -> VanishingPart:
    n = datum.rank
    basis_Z = invariant_lattice(datum)
    inv = Subspace(n, basis_Z)
    d = []
    filt = {}
    for k in range(0, max(datum.top_hodge_level, 0) + 2):
        pre = datum.F(k) + inv
        filt[k] = pre
        d.append(pre.dim - inv.dim)
    a = max((k for k in range(1, len(d)) if d[k]), default=0)
    return VanishingPart(tuple(basis_Z), inv, tuple(d), a, filt)


def component_group(T) -> list[int]:
    """Invariant factors of the torsion of coker(T - id) = H^1(punctured disk, H_Z)_tor."""
    n = len(T)
    return torsion_of_cokernel([[int(T[i][j]) - int(i == j) for j in range(n)] for i in range(n)])


def twist_minus_one(datum: DegenerationDatum) -> DegenerationDatum:
    """Tensor with the rank-one local system of monodromy -1."""
    T = tuple(tuple(-x for x in row) for row in datum.T)
    order = datum.order
    hodge = datum.hodge
    if order % 2:
        new_order = lcm(order, 2)
        K = cyclotomic_field(new_order)
        hodge = tuple((p, tuple(tuple(K(x) for x in v) for v in vecs)) for p, vecs in hodge)
        order = new_order
    name = datum.name
    if name:
        name = name[: -len("(-1)")] if name.endswith("(-1)") else name + "(-1)"
    return DegenerationDatum(T, datum.S, hodge, order, name, datum.window)


def unipotent_base_change(datum: DegenerationDatum) -> DegenerationDatum:
    """Pull back along t = s^m: monodromy T^m, same S and F."""
    Tm = mat_pow(datum.T_matrix, datum.m)
    name = f"{datum.name}[m={datum.m}]" if datum.name and datum.m != 1 else datum.name
    return DegenerationDatum(_freeze_matrix(Tm), datum.S, datum.hodge, datum.order, name, datum.window)
