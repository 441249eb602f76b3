"""Graded lattices over the disk in the nilpotent-orbit model.

An element (alpha, k, v) stands for the twisted section t^(k + alpha) v-hat with
v in the eigenspace H_lambda.  Every lattice in play is spanned by such
homogeneous sections, so a lattice is stored, per eigenclass, as an
increasing filtration of subspaces of H_lambda indexed by the level k: its
value below the truncation window is a fixed ``floor`` and above it a fixed
``ceiling``.  The t-action shifts the level, so closure under t is the
monotonicity of the filtration.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import floor as _floor
from typing import Callable, Iterable, Mapping, Sequence

from .exact.linalg import Subspace, matvec
from .mhs import DegenerationDatum, invariant_lattice


class WindowTooSmall(RuntimeError):
    pass


class InclusionViolated(ValueError):
    pass


def default_window(datum: DegenerationDatum) -> int:
    return max(datum.top_hodge_level, 0) + 2


@dataclass(frozen=True)
class ClassData:
    alpha: Fraction
    space: Subspace  # H_lambda inside the ambient coordinates
    dual_alpha: Fraction
    shift: int  # alpha + dual_alpha, 0 or 1


class GradedDiskModule:
    """The ambient module: one copy of H_lambda per class and integer level."""

    def __init__(self, datum: DegenerationDatum, window: int | None = None):
        self.datum = datum
        K = window if window is not None else (datum.window or default_window(datum))
        if K < 1:
            raise ValueError("window must be positive")
        self.lo, self.hi = -K, K
        self.N = datum.N
        self.n = datum.rank
        classes = {}
        for c in datum.eigenclasses:
            dual = (-c.alpha) % 1
            classes[c.alpha] = ClassData(c.alpha, c.space, dual, int(c.alpha + dual))
        self.classes: dict[Fraction, ClassData] = dict(sorted(classes.items()))
        self._perp_cache: dict = {}

    @property
    def window(self) -> int:
        return self.hi

    @property
    def levels(self) -> range:
        return range(self.lo, self.hi + 1)

    def with_window(self, K: int) -> "GradedDiskModule":
        return GradedDiskModule(self.datum, K)

    # -- operators -------------------------------------------------------------
    def t(self, x: "Element") -> "Element":
        return Element(tuple((a, k + 1, v) for a, k, v in x.terms))

    def dt(self, x: "Element") -> "Element":
        out = []
        for a, k, v in x.terms:
            Nv = matvec(self.N, v)
            out.append((a, k - 1, tuple((k + a) * vi - wi for vi, wi in zip(v, Nv))))
        return Element(tuple(out))

    def dt_level_map(self, alpha: Fraction, k: int) -> Callable[[Subspace], Subspace]:
        """The action of d/dt from level k to level k - 1 on subspaces of H_lambda."""
        n = self.n
        A = [[(k + alpha) * int(i == j) - self.N[i][j] for j in range(n)] for i in range(n)]
        return lambda V: V.image(A)

    def pairing(self, x: "Element", y: "Element") -> "PairingValue":
        S = self.datum.S_matrix
        acc: dict[int, object] = {}
        for a, k, u in x.terms:
            Su = [sum((u[i] * S[i][j] for i in range(self.n) if u[i] and S[i][j]), Fraction(0)) for j in range(self.n)]
            for b, l, v in y.terms:
                s = a + b
                if s not in (0, 1):
                    continue
                val = sum((Su[j] * v[j] for j in range(self.n) if Su[j] and v[j]), Fraction(0))
                if val:
                    e = k + l + int(s)
                    acc[e] = acc.get(e, 0) + val
        return PairingValue({e: c for e, c in acc.items() if c})

    def perp(self, alpha: Fraction, V: Subspace) -> Subspace:
        """{u in H_lambda : S(u, v) = 0 for v in V}, for V inside the dual class."""
        cls = self.classes[alpha]
        if V.dim == 0:
            return cls.space
        key = (alpha, V)
        if key not in self._perp_cache:
            S = self.datum.S_matrix
            self._perp_cache[key] = Subspace(self.n, [matvec(S, b) for b in V.basis]).annihilator() & cls.space
        return self._perp_cache[key]

    # -- lattices ----------------------------------------------------------------
    def lattice(self, name: str, values: Mapping[Fraction, Callable[[int], Subspace]], floors, ceilings) -> "DiskLattice":
        data = {}
        for a in self.classes:
            f = values[a]
            data[a] = (floors[a], tuple(f(k) for k in self.levels), ceilings[a])
        return DiskLattice(self, name, data)

    def from_generators(self, name: str, gens: Iterable["Element"], floors=None, ceiling=None) -> "DiskLattice":
        """O-span of homogeneous generators (plus a floor subspace per class)."""
        z = {a: Subspace.zero(self.n) for a in self.classes}
        floors = floors or z
        by = {a: {} for a in self.classes}
        for g in gens:
            for a, k, v in g.terms:
                if k < self.lo or k > self.hi:
                    raise WindowTooSmall(f"generator at level {k} outside [{self.lo}, {self.hi}]")
                by[a].setdefault(k, []).append(v)
        data = {}
        for a in self.classes:
            cur = floors[a]
            vals = []
            for k in self.levels:
                if k in by[a]:
                    cur = cur + Subspace(self.n, by[a][k])
                vals.append(cur)
            ceil = ceiling[a] if ceiling else vals[-1]
            data[a] = (floors[a], tuple(vals), ceil)
        return DiskLattice(self, name, data)

    def zero_lattice(self) -> "DiskLattice":
        z = {a: Subspace.zero(self.n) for a in self.classes}
        return self.lattice("0", {a: (lambda k: Subspace.zero(self.n)) for a in self.classes}, z, z)


class Element:
    """A finite sum of homogeneous terms (alpha, k, v)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Sequence = ()):
        self.terms = tuple((Fraction(a), int(k), tuple(v)) for a, k, v in terms)

    def __add__(self, other: "Element") -> "Element":
        return Element(self.terms + other.terms)

    def __repr__(self):
        return f"Element({self.terms!r})"


class PairingValue:
    """A Laurent polynomial in t: exponent -> coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, object]):
        self.coeffs = {e: c for e, c in coeffs.items() if c}

    def derivative(self) -> "PairingValue":
        return PairingValue({e - 1: e * c for e, c in self.coeffs.items() if e})

    def __add__(self, other: "PairingValue") -> "PairingValue":
        acc = dict(self.coeffs)
        for e, c in other.coeffs.items():
            acc[e] = acc.get(e, 0) + c
        return PairingValue(acc)

    def __eq__(self, other) -> bool:
        return isinstance(other, PairingValue) and self.coeffs == other.coeffs

    @property
    def is_regular(self) -> bool:
        return all(e >= 0 for e in self.coeffs)

    def __repr__(self):
        return f"PairingValue({self.coeffs})"


class DiskLattice:
    """Per class: (floor, values on the window levels, ceiling)."""

    def __init__(self, module: GradedDiskModule, name: str, data):
        self.module = module
        self.name = name
        self.data = data
        for a, (fl, vals, ce) in data.items():
            if vals[0] != fl or vals[-1] != ce:
                raise WindowTooSmall(f"{name}: class {a} not stabilised inside levels [{module.lo}, {module.hi}]")
            for x, y in zip(vals, vals[1:]):
                if not x <= y:
                    raise ValueError(f"{name}: not closed under t in class {a}")

    def value(self, alpha, k: int) -> Subspace:
        fl, vals, ce = self.data[Fraction(alpha)]
        if k < self.module.lo:
            return fl
        if k > self.module.hi:
            return ce
        return vals[k - self.module.lo]

    def floor(self, alpha) -> Subspace:
        return self.data[Fraction(alpha)][0]

    def ceiling(self, alpha) -> Subspace:
        return self.data[Fraction(alpha)][2]

    @property
    def classes(self):
        return list(self.data)

    def __eq__(self, other) -> bool:
        return isinstance(other, DiskLattice) and self.data == other.data

    def __le__(self, other: "DiskLattice") -> bool:
        return all(
            self.floor(a) <= other.floor(a) and self.ceiling(a) <= other.ceiling(a)
            and all(self.value(a, k) <= other.value(a, k) for k in self.module.levels)
            for a in self.data
        )

    def _combine(self, other: "DiskLattice", op, name) -> "DiskLattice":
        m = self.module
        data = {}
        for a in self.data:
            data[a] = (op(self.floor(a), other.floor(a)), tuple(op(self.value(a, k), other.value(a, k)) for k in m.levels), op(self.ceiling(a), other.ceiling(a)))
        return DiskLattice(m, name, data)

    def __add__(self, other):
        return self._combine(other, lambda x, y: x + y, f"({self.name} + {other.name})")

    def __and__(self, other):
        return self._combine(other, lambda x, y: x & y, f"({self.name} & {other.name})")

    def shift(self, j: int) -> "DiskLattice":
        """t^j times the lattice."""
        m = self.module
        data = {a: (self.floor(a), tuple(self.value(a, k - j) for k in m.levels), self.ceiling(a)) for a in self.data}
        return DiskLattice(m, f"t^{j}{self.name}", data)

    def contains(self, x: Element) -> bool:
        return all(self.value(a, k).contains(v) for a, k, v in x.terms)

    def generators(self) -> list[Element]:
        """Homogeneous generators: floor basis plus a complement at every jump."""
        gens = []
        m = self.module
        for a in self.data:
            prev = self.floor(a)
            for v in prev.basis:
                gens.append(Element([(a, m.lo, v)]))
            for k in m.levels:
                cur = self.value(a, k)
                for v in prev.extend_basis(cur):
                    gens.append(Element([(a, k, v)]))
                prev = cur
        return gens

    def graded_dims(self) -> dict[tuple[Fraction, int], int]:
        return {(a, k): self.value(a, k).dim for a in self.data for k in self.module.levels}

    def __repr__(self):
        return f"DiskLattice({self.name})"


# -- standard lattices -----------------------------------------------------------
def _strict(alpha, k, beta, strict):
    return k + alpha > beta if strict else k + alpha >= beta


def hodge_sublattice(module: GradedDiskModule, p: int | None, beta, strict: bool = False) -> DiskLattice:
    """F^p L^{>=beta} (or L^{>beta} when ``strict``); p = None gives the Deligne lattice."""
    beta = Fraction(beta)
    d = module.datum
    zero = {a: Subspace.zero(module.n) for a in module.classes}
    ceil = {}
    for a, cls in module.classes.items():
        ceil[a] = cls.space if p is None else (d.F(p) & cls.space)
    vals = {a: (lambda k, a=a: ceil[a] if _strict(a, k, beta, strict) else zero[a]) for a in module.classes}
    rel = ">" if strict else ">="
    name = f"L^{rel}{beta}" if p is None else f"F^{p}L^{rel}{beta}"
    return module.lattice(name, vals, zero, ceil)


def deligne_lattice(module: GradedDiskModule, beta, strict: bool = False) -> DiskLattice:
    return hodge_sublattice(module, None, beta, strict)


def compute_FpM(module: GradedDiskModule, p: int = 0) -> DiskLattice:
    """F_pM = sum_{i >= 0} dt^i (F^{i-p} L^{>-1})."""
    d = module.datum
    top = max(d.top_hodge_level, 0)
    n = module.n
    data = {}
    for a, cls in module.classes.items():
        contrib = {k: Subspace.zero(n) for k in module.levels}
        for i in range(0, top + p + 1):
            src = d.F(i - p) & cls.space
            if src.dim == 0:
                continue
            # sources at level k (k + a > -1) moved down i levels
            k0 = 0 if a == 0 else -1
            for k in range(k0, module.hi + i + 1):
                V = src
                for j in range(i):
                    V = module.dt_level_map(a, k - j)(V)
                target = k - i
                if target < module.lo:
                    raise WindowTooSmall(f"F_{p}M: contribution at level {target} below window")
                if target <= module.hi:
                    contrib[target] = contrib[target] + V
        cur = Subspace.zero(n)
        vals = []
        for k in module.levels:
            cur = cur + contrib[k]
            vals.append(cur)
        data[a] = (Subspace.zero(n), tuple(vals), d.F(-p) & cls.space if p >= 0 else vals[-1])
    return DiskLattice(module, f"F_{p}M", data)


def compute_F0M(module: GradedDiskModule) -> DiskLattice:
    return compute_FpM(module, 0)


def dual_lattice(L: DiskLattice) -> DiskLattice:
    """D(L) = {xi : <xi, g> regular for all g in L}, level by level."""
    m = L.module
    data = {}
    for a, cls in m.classes.items():
        b, s = cls.dual_alpha, cls.shift
        vals = tuple(m.perp(a, L.value(b, -k - s - 1)) for k in m.levels)
        data[a] = (m.perp(a, L.ceiling(b)), vals, m.perp(a, L.floor(b)))
    return DiskLattice(m, f"D({L.name})", data)


def zucker_lattice(module: GradedDiskModule) -> DiskLattice:
    """E = L^{>=0} / F^0 L^{>=0}, stored by its preimage (floor F^0 H_lambda)."""
    d = module.datum
    fl = {a: d.F(0) & c.space for a, c in module.classes.items()}
    ce = {a: c.space for a, c in module.classes.items()}
    vals = {a: (lambda k, a=a: ce[a] if k + a >= 0 else fl[a]) for a in module.classes}
    return module.lattice("E", vals, fl, ce)


def _check_inclusion(E: DiskLattice, Ep: DiskLattice):
    if not Ep <= E:
        raise InclusionViolated(f"{Ep.name} is not contained in {E.name}")


def quotient_dims(E: DiskLattice, Ep: DiskLattice, K: int) -> list[int]:
    """n_k = dim E / (E' + t^k E) for k = 0..K."""
    _check_inclusion(E, Ep)
    m = E.module
    out = []
    for k in range(K + 1):
        total = 0
        for a in E.classes:
            for l in range(m.lo, m.hi + k + 1):
                total += E.value(a, l).dim - (Ep.value(a, l) + E.value(a, l - k)).dim
        out.append(total)
    return out


def elementary_divisors(E: DiskLattice, Ep: DiskLattice) -> list[int]:
    """Sorted (descending) a_i with E / E' = sum C[t]/t^{a_i}."""
    m = E.module
    K = m.hi - m.lo + 2
    n = quotient_dims(E, Ep, K)
    if n[-1] != n[-2]:
        raise WindowTooSmall("quotient dimensions did not stabilise")
    rank = sum(E.ceiling(a).dim - E.floor(a).dim for a in E.classes)
    counts = [n[k] - n[k - 1] for k in range(1, K + 1)]  # counts[k-1] = #{a_i >= k}
    divisors = []
    for k in range(len(counts), 0, -1):
        ge_k = counts[k - 1]
        ge_k1 = counts[k] if k < len(counts) else 0
        divisors += [k] * (ge_k - ge_k1)
    divisors += [0] * (rank - len(divisors))
    return divisors


def grV_quotient_dims(E: DiskLattice, Ep: DiskLattice) -> dict[Fraction, int]:
    """V-index -> dim Gr_V(E / E'), omitting zeros."""
    _check_inclusion(E, Ep)
    out = {}
    for a in E.classes:
        for l in E.module.levels:
            d = E.value(a, l).dim - Ep.value(a, l).dim
            if d:
                out[l + a] = out.get(l + a, 0) + d
    return dict(sorted(out.items()))


def gamma_regularity_check(module: GradedDiskModule, F0M: DiskLattice | None = None) -> bool:
    """Flat integral sections pair regularly with F_0M."""
    if 0 not in module.classes:
        return True
    F0M = F0M or compute_F0M(module)
    flat = [Element([(0, 0, tuple(Fraction(x) for x in u))]) for u in invariant_lattice(module.datum)]
    return all(module.pairing(u, g).is_regular for u in flat for g in F0M.generators())


def base_change_element(x: Element, m: int) -> Element:
    """Pullback along t = s^m: t^(k + alpha) v-hat becomes s^(m (k + alpha)) v-hat in the unipotent model."""
    out = []
    for a, k, v in x.terms:
        e = m * (k + a)
        if e.denominator != 1:
            raise ValueError(f"m * alpha not integral for alpha = {a}, m = {m}")
        out.append((0, int(e), v))
    return Element(out)
