"""Graded modules over Q[t_1, ..., t_s], computed one degree slice at a time.

A module is the cokernel of a homogeneous matrix A: F1 -> F0 between graded
free modules F0 = sum R(-a_i), F1 = sum R(-b_j); entry A[i][j] is homogeneous
of degree b_j - a_i.  Every statement is linear algebra on finite slices, so
results hold "up to degree D".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

from .exact.linalg import Subspace, nullspace, rank

Poly = dict  # exponent tuple -> Fraction


class DegreeOutOfRange(ValueError):
    pass


class GeneratorsNotFoundBelowBound(RuntimeError):
    pass


class NotHomogeneous(ValueError):
    pass


# -- polynomials -------------------------------------------------------------------
def var(s: int, i: int) -> Poly:
    return {tuple(int(k == i) for k in range(s)): Fraction(1)}


def const(s: int, c=1) -> Poly:
    return {(0,) * s: Fraction(c)} if c else {}


def padd(f: Poly, g: Poly) -> Poly:
    out = dict(f)
    for m, c in g.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def pscale(c, f: Poly) -> Poly:
    return {m: c * v for m, v in f.items()} if c else {}


def pmul(f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m)
    return out


def pdegree(f: Poly) -> int | None:
    """Total degree of a homogeneous polynomial (None for 0)."""
    if not f:
        return None
    degs = {sum(m) for m in f}
    if len(degs) != 1:
        raise NotHomogeneous(f"polynomial {pformat(f)} is not homogeneous")
    return degs.pop()


def pformat(f: Poly, names: Sequence[str] | None = None) -> str:
    if not f:
        return "0"
    terms = []
    for m in sorted(f, reverse=True):
        c = f[m]
        s = len(m)
        nm = names or [f"t{i + 1}" for i in range(s)]
        mono = "*".join(nm[i] + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e)
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms).replace("+ -", "- ")


def parse_poly(text: str, s: int) -> Poly:
    """Parse sums of terms like '3/2*t1^2*t2', '-t3', '1'."""
    text = text.replace(" ", "").replace("-", "+-")
    out: Poly = {}
    for term in filter(None, text.split("+")):
        coef = Fraction(1)
        mono = [0] * s
        if term.startswith("-"):
            coef = -coef
            term = term[1:]
        for factor in term.split("*"):
            if factor.startswith("t"):
                base, _, e = factor.partition("^")
                idx = int(base[1:]) - 1
                if not 0 <= idx < s:
                    raise ValueError(f"variable {base} out of range")
                mono[idx] += int(e or 1)
            else:
                coef *= Fraction(factor)
        out = padd(out, {tuple(mono): coef})
    return out


@lru_cache(maxsize=None)
def monomials(s: int, d: int) -> tuple[tuple[int, ...], ...]:
    if d < 0:
        return ()
    if s == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in monomials(s - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


def free_hilbert(s: int, shifts: Sequence[int], d: int) -> int:
    return sum(comb(d - a + s - 1, s - 1) for a in shifts if d >= a)


# -- graded modules ------------------------------------------------------------------
def infer_grading(A: Sequence[Sequence[Poly]], q: int, p: int) -> tuple[list[int], list[int]]:
    """Row shifts a_i and column shifts b_j with deg A[i][j] = b_j - a_i; min a_i = 0 per component."""
    a: list[int | None] = [None] * q
    b: list[int | None] = [None] * p
    for start in range(q):
        if a[start] is not None:
            continue
        a[start] = 0
        comp_rows = [start]
        stack = [("r", start)]
        while stack:
            kind, idx = stack.pop()
            if kind == "r":
                for j in range(p):
                    dg = pdegree(A[idx][j])
                    if dg is None:
                        continue
                    val = a[idx] + dg
                    if b[j] is None:
                        b[j] = val
                        stack.append(("c", j))
                    elif b[j] != val:
                        raise NotHomogeneous("no grading makes the presentation homogeneous")
            else:
                for i in range(q):
                    dg = pdegree(A[i][idx])
                    if dg is None:
                        continue
                    val = b[idx] - dg
                    if a[i] is None:
                        a[i] = val
                        comp_rows.append(i)
                        stack.append(("r", i))
                    elif a[i] != val:
                        raise NotHomogeneous("no grading makes the presentation homogeneous")
        lo = min(a[i] for i in comp_rows)
        for i in comp_rows:
            a[i] -= lo
        for j in range(p):
            if b[j] is not None and any(A[i][j] for i in comp_rows):
                b[j] -= lo
    b = [x if x is not None else 0 for x in b]
    return [int(x) for x in a], [int(x) for x in b]


@dataclass
class GradedPolyModule:
    """coker(A: sum R(-col_degrees) -> sum R(-row_degrees)) over Q[t_1..t_s]."""

    s: int
    A: list  # q x p matrix of Poly
    row_degrees: list[int]
    col_degrees: list[int]
    D: int = 6
    name: str = ""

    @classmethod
    def from_matrix(cls, s: int, A, D: int = 6, name: str = "", row_degrees=None, col_degrees=None) -> "GradedPolyModule":
        A = [[dict(x) for x in row] for row in A]
        q = len(A)
        p = len(A[0]) if q else 0
        if row_degrees is None or col_degrees is None:
            r, c = infer_grading(A, q, p)
            row_degrees = row_degrees if row_degrees is not None else r
            col_degrees = col_degrees if col_degrees is not None else c
        for i in range(q):
            for j in range(p):
                dg = pdegree(A[i][j])
                if dg is not None and dg != col_degrees[j] - row_degrees[i]:
                    raise NotHomogeneous(f"entry ({i}, {j}) has degree {dg}, expected {col_degrees[j] - row_degrees[i]}")
        return cls(s, A, list(row_degrees), list(col_degrees), D, name)

    @classmethod
    def free(cls, s: int, shifts: Sequence[int], D: int = 6, name: str = "") -> "GradedPolyModule":
        return cls(s, [[] for _ in shifts], list(shifts), [], D, name)

    @property
    def q(self) -> int:
        return len(self.row_degrees)

    @property
    def p(self) -> int:
        return len(self.col_degrees)

    @property
    def initial_degree(self) -> int:
        return min(self.row_degrees, default=0)

    def degrees(self) -> range:
        d0 = self.initial_degree
        return range(d0, d0 + self.D + 1)

    # slices
    def f0_basis(self, d: int) -> list[tuple[int, tuple[int, ...]]]:
        return [(i, m) for i, a in enumerate(self.row_degrees) for m in monomials(self.s, d - a)]

    def image_vectors(self, d: int) -> list[list[Fraction]]:
        index = {key: k for k, key in enumerate(self.f0_basis(d))}
        out = []
        for j, b in enumerate(self.col_degrees):
            for mu in monomials(self.s, d - b):
                v = [Fraction(0)] * len(index)
                for i in range(self.q):
                    for m, c in pmul(self.A[i][j], {mu: Fraction(1)}).items():
                        v[index[(i, m)]] += c
                if any(v):
                    out.append(v)
        return out

    def image_slice(self, d: int) -> Subspace:
        return Subspace(len(self.f0_basis(d)), self.image_vectors(d))

    def check_degree(self, d: int):
        if d > self.initial_degree + self.D:
            raise DegreeOutOfRange(f"degree {d} beyond bound {self.initial_degree + self.D}")

    def hilbert(self, d: int) -> int:
        self.check_degree(d)
        return len(self.f0_basis(d)) - self.image_slice(d).dim

    def hilbert_values(self) -> dict[int, int]:
        return {d: self.hilbert(d) for d in self.degrees()}

    def multiply_into(self, f: Poly, d: int) -> list[list[Fraction]]:
        """Matrix (as list of image vectors) of multiplication by homogeneous f from F0_d to F0_{d+deg f}."""
        e = pdegree(f) or 0
        target = {key: k for k, key in enumerate(self.f0_basis(d + e))}
        cols = []
        for i, m in self.f0_basis(d):
            v = [Fraction(0)] * len(target)
            for mm, c in pmul({m: Fraction(1)}, f).items():
                v[target[(i, mm)]] += c
            cols.append(v)
        return cols

    def minimal_generator_degrees(self) -> list[int]:
        """Degrees of a minimal generating set (dim M_d / R_1 M_{d-1})."""
        out = []
        for d in self.degrees():
            total = len(self.f0_basis(d))
            span = self.image_vectors(d)
            for i in range(self.s):
                span += self.multiply_into(var(self.s, i), d - 1) if d - 1 >= self.initial_degree else []
            out += [d] * (total - Subspace(total, span).dim if span else total)
        return out

    def element(self, d: int, vec: Sequence) -> list[Poly]:
        """Coordinates on the degree-d slice -> vector of polynomials."""
        out = [dict() for _ in range(self.q)]
        for (i, m), c in zip(self.f0_basis(d), vec):
            if c:
                out[i] = padd(out[i], {m: Fraction(c)})
        return out


def hilbert_function(M: GradedPolyModule, d: int) -> int:
    return M.hilbert(d)


@dataclass
class DualModule:
    module: GradedPolyModule  # presentation of the dual
    generators: list  # generator vectors in F0^dual = sum R(a_i), as lists of Poly
    kernel_dims: dict  # degree -> dim of the kernel slice (the dual's Hilbert function)


def _kernel_slice(M: GradedPolyModule, e: int) -> tuple[list, list[list[Fraction]]]:
    """Degree-e maps M -> R: y in sum R(a_i) with y A = 0.  Returns (basis keys, kernel vectors)."""
    keys = [(i, m) for i, a in enumerate(M.row_degrees) for m in monomials(M.s, e + a)]
    rows = []
    for j, b in enumerate(M.col_degrees):
        out_monos = {m: k for k, m in enumerate(monomials(M.s, e + b))}
        block = [[Fraction(0)] * len(keys) for _ in out_monos]
        for col, (i, m) in enumerate(keys):
            for mm, c in pmul({m: Fraction(1)}, M.A[i][j]).items():
                block[out_monos[mm]][col] += c
        rows += block
    if not keys:
        return keys, []
    if not rows:
        return keys, [[Fraction(int(k == c)) for k in range(len(keys))] for c in range(len(keys))]
    return keys, [list(v) for v in nullspace(rows, len(keys))]


def _generators_degreewise(s: int, slices: Mapping[int, tuple[list, list]]) -> list[tuple[int, list, list]]:
    """Minimal homogeneous generators of a graded submodule of a free module from its slices."""
    gens = []
    prev = None
    for e in sorted(slices):
        keys, vecs = slices[e]
        index = {k: n for n, k in enumerate(keys)}
        produced = []
        if prev is not None:
            pkeys, pvecs = prev
            for v in pvecs:
                for t in range(s):
                    w = [Fraction(0)] * len(keys)
                    for (i, m), c in zip(pkeys, v):
                        if c:
                            mm = tuple(x + (1 if k == t else 0) for k, x in enumerate(m))
                            w[index[(i, mm)]] += c
                    produced.append(w)
        cur = Subspace(len(keys), produced) if produced else Subspace.zero(len(keys))
        for v in cur.extend_basis(Subspace(len(keys), vecs) if vecs else Subspace.zero(len(keys))):
            gens.append((e, keys, list(v)))
        prev = (keys, vecs)
    return gens


def dual_module(M: GradedPolyModule, D: int | None = None) -> DualModule:
    """Hom(M, R) as Ker(A^T), generated and presented degreewise up to the bound."""
    D = M.D if D is None else D
    s = M.s
    e0 = -max(M.row_degrees, default=0)
    slices = {e: _kernel_slice(M, e) for e in range(e0, e0 + D + 1)}
    gens = _generators_degreewise(s, slices)
    if gens and gens[-1][0] == e0 + D and D > 1:
        raise GeneratorsNotFoundBelowBound(f"new dual generators still appear at degree {e0 + D}")
    q = len(M.row_degrees)
    gvecs = []
    gdeg = []
    for e, keys, v in gens:
        poly = [dict() for _ in range(q)]
        for (i, m), c in zip(keys, v):
            if c:
                poly[i] = padd(poly[i], {m: c})
        gvecs.append(poly)
        gdeg.append(e)
    # presentation: syzygies among the generators, degree by degree
    r = len(gvecs)
    syz_slices = {}
    for e in range(min(gdeg, default=e0), (min(gdeg, default=e0)) + D + 1):
        keys = [(k, m) for k, c in enumerate(gdeg) for m in monomials(s, e - c)]
        target_keys = [(i, m) for i, a in enumerate(M.row_degrees) for m in monomials(s, e + a)]
        tindex = {k: n for n, k in enumerate(target_keys)}
        cols = []
        for k, m in keys:
            w = [Fraction(0)] * len(target_keys)
            for i in range(q):
                for mm, c in pmul(gvecs[k][i], {m: Fraction(1)}).items():
                    w[tindex[(i, mm)]] += c
            cols.append(w)
        if keys:
            mat = [[cols[c][rr] for c in range(len(keys))] for rr in range(len(target_keys))]
            kern = nullspace(mat, len(keys)) if target_keys else [tuple(Fraction(int(x == y)) for x in range(len(keys))) for y in range(len(keys))]
        else:
            kern = []
        syz_slices[e] = (keys, [list(v) for v in kern])
    syz = _generators_degreewise(s, syz_slices)
    A = [[dict() for _ in syz] for _ in range(r)]
    col_deg = []
    for j, (e, keys, v) in enumerate(syz):
        for (k, m), c in zip(keys, v):
            if c:
                A[k][j] = padd(A[k][j], {m: c})
        col_deg.append(e)
    dual = GradedPolyModule(s, A, gdeg, col_deg, D, f"{M.name}^dual" if M.name else "dual")
    kdims = {e: len(slices[e][1]) for e in slices}
    return DualModule(dual, gvecs, kdims)


@dataclass
class ReflexivityReport:
    degree_bound: int
    hilbert: dict
    dual_hilbert: dict
    double_dual_hilbert: dict
    reflexive_evidence: bool
    free_evidence: bool
    self_dual_evidence: bool
    generator_degrees: list
    details: list = field(default_factory=list)


def _normalized(values: Mapping[int, int]) -> list[int]:
    items = sorted(values.items())
    while items and items[0][1] == 0:
        items.pop(0)
    return [v for _, v in items]


def reflexivity_report(M: GradedPolyModule, D: int | None = None) -> ReflexivityReport:
    """Hilbert-function evidence (up to degree D) for freeness, reflexivity and self-duality."""
    D = M.D if D is None else D
    dual = dual_module(M, D)
    ddual = dual_module(dual.module, D)
    lo = min(M.initial_degree, ddual.module.initial_degree)
    degs = range(lo, lo + D + 1)
    h = {d: _safe_h(M, d) for d in degs}
    hdd = {d: _safe_h(ddual.module, d) for d in degs}
    hd = dict(sorted(dual.kernel_dims.items()))
    gens = M.minimal_generator_degrees()
    free_h = {d: free_hilbert(M.s, gens, d) for d in degs}
    details = []
    reflexive = h == hdd
    if not reflexive:
        bad = next(d for d in degs if h[d] != hdd[d])
        details.append(f"h_M({bad}) = {h[bad]} but h_M^vv({bad}) = {hdd[bad]}")
    free = h == free_h
    if not free:
        bad = next(d for d in degs if h[d] != free_h[d])
        details.append(f"{len(gens)} minimal generators; a free module on them has h({bad}) = {free_h[bad]}, M has {h[bad]}")
    a, b = _normalized(h), _normalized(hd)
    k = min(len(a), len(b))
    self_dual = k > 0 and a[:k] == b[:k]
    details.append(f"verified up to degree {D}")
    return ReflexivityReport(D, h, hd, hdd, reflexive, free, self_dual, gens, details)


def _safe_h(M: GradedPolyModule, d: int) -> int:
    if d < M.initial_degree:
        return 0
    return len(M.f0_basis(d)) - M.image_slice(d).dim


def torsion_check(M: GradedPolyModule, f: Poly, D: int | None = None):
    """A class x != 0 in coker(A) with f x = 0, searched degree by degree; None if none up to D."""
    D = M.D if D is None else D
    e = pdegree(f)
    if e is None:
        return None
    for d in range(M.initial_degree, M.initial_degree + D + 1):
        basis = M.f0_basis(d)
        if not basis:
            continue
        img_hi = M.image_slice(d + e)
        img = M.image_slice(d)
        # x with f x in image: kernel of (mult by f) composed with projection away from the image
        mult = M.multiply_into(f, d)
        ann = img_hi.annihilator()
        conds = [[sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in mult] for row in ann.basis]
        X = Subspace(len(basis), nullspace(conds, len(basis))) if conds else Subspace.full(len(basis))
        for v in X.basis:
            if not img.contains(v):
                return d, M.element(d, v)
    return None


# -- Koszul complex ---------------------------------------------------------------------
@dataclass
class KoszulComplex:
    s: int
    maps: list  # maps[j]: K^j -> K^{j+1}, matrix of Poly (rows: subsets of size j+1, cols: size j)
    subsets: list

    def composite_vanishes(self) -> bool:
        for j in range(len(self.maps) - 1):
            A, B = self.maps[j], self.maps[j + 1]
            for r in range(len(B)):
                for c in range(len(A[0]) if A else 0):
                    acc: Poly = {}
                    for k in range(len(A)):
                        acc = padd(acc, pmul(B[r][k], A[k][c]))
                    if acc:
                        return False
        return True

    def map_rank(self, j: int, e: int) -> int:
        """Rank of d^j on the part of K^j with coefficients of degree e."""
        if j < 0 or j >= self.s or e < 0:
            return 0
        s = self.s
        A = self.maps[j]
        src = [(I, m) for I in self.subsets[j] for m in monomials(s, e)]
        tgt = [(J, m) for J in self.subsets[j + 1] for m in monomials(s, e + 1)]
        tindex = {k: n for n, k in enumerate(tgt)}
        rows = {J: n for n, J in enumerate(self.subsets[j + 1])}
        cols_of = {I: n for n, I in enumerate(self.subsets[j])}
        cols = []
        for I, m in src:
            w = [Fraction(0)] * len(tgt)
            for J in self.subsets[j + 1]:
                for mm, c in pmul(A[rows[J]][cols_of[I]], {m: Fraction(1)}).items():
                    w[tindex[(J, mm)]] += c
            cols.append(w)
        return rank(cols)

    def cohomology_dim(self, j: int, e: int) -> int:
        """dim H^j restricted to coefficient degree e."""
        dim = len(self.subsets[j]) * len(monomials(self.s, e))
        return dim - self.map_rank(j, e) - self.map_rank(j - 1, e - 1)

    def middle_exact(self, D: int) -> bool:
        """H^j = 0 for j < s in coefficient degrees up to D (H^s is the residue field)."""
        return all(self.cohomology_dim(j, e) == 0 for j in range(self.s) for e in range(D + 1))


def koszul_complex(s: int) -> KoszulComplex:
    """0 -> K^0 -> ... -> K^s -> 0 with K^j = wedge^j R^s and d(e_I) = sum_i t_i e_i ^ e_I."""
    if s < 1:
        raise ValueError("need at least one variable")
    subsets = [list(combinations(range(s), j)) for j in range(s + 1)]
    maps = []
    for j in range(s):
        rows = subsets[j + 1]
        cols = subsets[j]
        rindex = {J: n for n, J in enumerate(rows)}
        A = [[dict() for _ in cols] for _ in rows]
        for c, I in enumerate(cols):
            for i in range(s):
                if i in I:
                    continue
                sign = (-1) ** sum(1 for k in I if k < i)
                J = tuple(sorted(I + (i,)))
                A[rindex[J]][c] = pscale(sign, var(s, i))
        maps.append(A)
    return KoszulComplex(s, maps, subsets)


# -- builtin presentations -------------------------------------------------------------
def p1_maximal_ideal(D: int = 6) -> GradedPolyModule:
    """I_0 = (t1, t2) presented by its single syzygy (-t2, t1)."""
    s = 2
    A = [[pscale(-1, var(s, 1))], [var(s, 0)]]
    return GradedPolyModule.from_matrix(s, A, D, "I0", row_degrees=[1, 1], col_degrees=[2])


def p2_pullback(D: int = 6) -> GradedPolyModule:
    """coker of (t1', t1' t2') after pulling the presentation of I_0 back along the blow-up."""
    s = 2
    A = [[var(s, 0)], [pmul(var(s, 0), var(s, 1))]]
    return GradedPolyModule.from_matrix(s, A, D, "P2")


def p3_koszul_cokernel(D: int = 6) -> GradedPolyModule:
    """M' = coker of (t1, t2, t3): R(-1) -> R^3."""
    s = 3
    A = [[var(s, i)] for i in range(s)]
    return GradedPolyModule.from_matrix(s, A, D, "M'")


def syzygy_equation(M: GradedPolyModule) -> list[str]:
    """Equations sum_i x_i * A[i][j] = 0 of Spec Sym(M), one per relation."""
    out = []
    for j in range(M.p):
        terms = []
        for i in range(M.q):
            if M.A[i][j]:
                terms.append(f"({pformat(M.A[i][j])})*x{i + 1}")
        out.append(" + ".join(terms) + " = 0")
    return out
