"""Blow-up chain, fibre comparisons and the full analysis of a degeneration datum."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .disk import (
    DiskLattice,
    Element,
    GradedDiskModule,
    compute_F0M,
    compute_FpM,
    deligne_lattice,
    dual_lattice,
    elementary_divisors,
    gamma_regularity_check,
    grV_quotient_dims,
    hodge_sublattice,
    quotient_dims,
    zucker_lattice,
)
from .exact.linalg import Subspace, is_zero_matrix, matmul, nullspace, rank
from .mhs import (
    DegenerationDatum,
    ValidationReport,
    component_group,
    validate_datum,
    vanishing_part,
)


@dataclass(frozen=True)
class AdaptedVector:
    alpha: Fraction
    level: int  # the vector v_i lives at (alpha, level)
    vector: tuple
    divisor: int  # t^divisor v_i is the matching basis vector of E'


@dataclass(frozen=True)
class AdaptedBasis:
    vectors: tuple[AdaptedVector, ...]

    @property
    def divisors(self) -> list[int]:
        return [v.divisor for v in self.vectors]


def _mixed(vectors, rng):
    """Random unitriangular integer recombination of a basis."""
    vs = [list(v) for v in vectors]
    order = list(range(len(vs)))
    rng.shuffle(order)
    vs = [vs[i] for i in order]
    out = []
    for i, v in enumerate(vs):
        w = list(v)
        for j in range(i + 1, len(vs)):
            c = rng.randint(-2, 2)
            if c:
                w = [a + c * b for a, b in zip(w, vs[j])]
        out.append(tuple(w))
    return out


def adapted_basis(E: DiskLattice, Ep: DiskLattice, rng: random.Random | None = None) -> AdaptedBasis:
    """Simultaneous basis: v_i in E with {t^{a_i} v_i} a basis of E'.

    Both lattices are filtrations of the same H_lambda, so a common basis for
    the two flags is built by walking the (level in E, level in E') grid.
    """
    m = E.module
    out = []
    for a in E.classes:
        fl = E.floor(a)
        for j in m.levels:
            for k in range(j, m.hi + 1):
                target = E.value(a, j) & Ep.value(a, k)
                existing = fl + (E.value(a, j - 1) & Ep.value(a, k)) + (E.value(a, j) & Ep.value(a, k - 1))
                if target.dim == existing.dim:
                    continue
                cand = _mixed(target.basis, rng) if rng else target.basis
                for v in existing.extend_basis(list(cand)):
                    out.append(AdaptedVector(a, j, tuple(v), k - j))
    out.sort(key=lambda v: -v.divisor)
    return AdaptedBasis(tuple(out))


def lattice_from_adapted(E: DiskLattice, basis: AdaptedBasis, shifted: bool) -> DiskLattice:
    gens = [Element([(v.alpha, v.level + (v.divisor if shifted else 0), v.vector)]) for v in basis.vectors]
    floors = {a: E.floor(a) for a in E.classes}
    ceil = {a: E.ceiling(a) for a in E.classes}
    return E.module.from_generators("adapted", gens, floors, ceil)


@dataclass(frozen=True)
class BlowupStep:
    k: int
    m_k: int
    d_k: int
    center_codim: int
    center_dim: int
    fiber_dim: int
    center_equations: tuple[int, ...]  # x_i^{(k-1)} = 0 (1-based) together with t = 0
    transition: tuple[tuple[int, bool], ...]  # (i, x_i^{(k-1)} = t x_i^{(k)}?)


@dataclass
class Fiber:
    """A subspace of E_0 = E / tE: adapted-basis indices plus per (alpha, level) preimages in H."""

    indices: tuple[int, ...]
    pieces: dict  # (alpha, level) -> Subspace of H_lambda containing E_{level-1}

    def __eq__(self, other):
        return isinstance(other, Fiber) and self.pieces == other.pieces


@dataclass
class ChainReport:
    datum: DegenerationDatum
    validation: ValidationReport
    window: int
    rank: int = 0
    divisors: list[int] = field(default_factory=list)
    a: int = 0
    a_closed: int = 0
    d: tuple[int, ...] = ()
    m: list[int] = field(default_factory=list)
    grV: dict = field(default_factory=dict)
    steps: list[BlowupStep] = field(default_factory=list)
    basis: Optional[AdaptedBasis] = None
    image_fiber: Optional[Fiber] = None
    fiber_by_k: dict = field(default_factory=dict)
    ker_n_fiber: Optional[Fiber] = None
    center_is_ker_n: Optional[bool] = None
    image_identity: Optional[bool] = None
    image_identity_dims: tuple[int, int, int] = (0, 0, 0)
    gamma_regular: Optional[bool] = None
    gamma_rank: int = 0
    component_group: list[int] = field(default_factory=list)
    classification: str = "not-applicable"
    notes: list[str] = field(default_factory=list)
    identities: dict = field(default_factory=dict)
    error: str = ""

    @property
    def two_paths_agree(self) -> bool:
        return list(self.m) == [self.d_k(k) for k in range(1, len(self.m) + 1)] and self.a == self.a_closed

    def d_k(self, k: int) -> int:
        return self.d[k] if 0 <= k < len(self.d) else 0


class Analysis:
    """Lattices attached to a datum at a fixed truncation window."""

    def __init__(self, datum: DegenerationDatum, window: int | None = None):
        self.datum = datum
        self.module = GradedDiskModule(datum, window)
        self.F0M = compute_F0M(self.module)
        self.E = zucker_lattice(self.module)
        self.Ep = dual_lattice(self.F0M)

    def E_k(self, k: int) -> DiskLattice:
        return self.Ep + self.E.shift(k)


def _e0_pieces(E: DiskLattice, lattice: DiskLattice) -> dict:
    """Image of ``lattice`` in E / tE, as preimages per (alpha, level)."""
    out = {}
    for a in E.classes:
        for j in E.module.levels:
            if E.value(a, j).dim != E.value(a, j - 1).dim:
                out[(a, j)] = (lattice.value(a, j) & E.value(a, j)) + E.value(a, j - 1)
    return out


def _fiber_from_indices(E: DiskLattice, basis: AdaptedBasis, keep) -> Fiber:
    pieces = {}
    for a in E.classes:
        for j in E.module.levels:
            if E.value(a, j).dim != E.value(a, j - 1).dim:
                vecs = [v.vector for i, v in enumerate(basis.vectors) if v.alpha == a and v.level == j and keep(i)]
                pieces[(a, j)] = E.value(a, j - 1) + Subspace(E.module.n, vecs)
    idx = tuple(i + 1 for i in range(len(basis.vectors)) if keep(i))
    return Fiber(idx, pieces)


def image_fiber(an: Analysis, basis: AdaptedBasis, k: int) -> tuple[Fiber, Fiber]:
    """Image of the fibre of Y_k in E_0, from the chart (c_{k,i} = min(a_i, k)) and from E_k + tE."""
    chart = _fiber_from_indices(an.E, basis, lambda i: min(basis.vectors[i].divisor, k) == 0)
    lat = Fiber(chart.indices, _e0_pieces(an.E, an.E_k(k)))
    return chart, lat


def ker_n_fiber(an: Analysis) -> Fiber:
    """Image of Ker N in E_0, eigenclass by eigenclass (defined by GGK only for unipotent monodromy)."""
    d = an.datum
    kerN = Subspace(d.rank, nullspace(d.N, d.rank))
    pieces = {}
    for (a, j), _ in _e0_pieces(an.E, an.E).items():
        cls = an.module.classes[a]
        pieces[(a, j)] = (kerN & cls.space) + an.E.value(a, j - 1)
    return Fiber((), pieces)


def ggk_fiber(datum: DegenerationDatum, window: int | None = None) -> tuple[Subspace, bool]:
    """(Ker N cap H_1 + F^0 H_1, informational flag).  The flag is set for non-unipotent input."""
    n = datum.rank
    kerN = Subspace(n, nullspace(datum.N, n))
    H1 = datum.eigenclass(0).space if any(c.alpha == 0 for c in datum.eigenclasses) else Subspace.zero(n)
    return (kerN & H1) + (datum.F(0) & H1), not datum.is_unipotent


def image_fiber_identity(an: Analysis, fiber: Fiber) -> tuple[bool, tuple[int, int, int]]:
    """Unipotent part of the image fibre vs image of H^inv in H_1 / F^0 H_1, plus a dimension cross-check."""
    d = an.datum
    n = d.rank
    vp = vanishing_part(d)
    if 0 not in an.module.classes:
        return vp.h_inv.dim == 0, (0, 0, 0)
    H1 = an.module.classes[Fraction(0)].space
    F0H1 = d.F(0) & H1
    inv_image = vp.h_inv + F0H1
    lhs = fiber.pieces.get((Fraction(0), 0), F0H1)
    kerN = Subspace(n, nullspace(d.N, n))
    dim_a = H1.dim - (F0H1 + (kerN & H1)).dim
    dim_b = an.E.value(0, 0).dim - an.Ep.value(0, 0).dim
    dim_c = (d.F(1) & H1).image(d.N).dim
    return lhs == inv_image and dim_a == dim_b == dim_c, (dim_a, dim_b, dim_c)


def classify_quintic(datum: DegenerationDatum) -> str:
    if datum.rank != 4:
        return "not-applicable"
    h = datum.hodge_numbers()
    if h != {-2: 1, -1: 1, 0: 1, 1: 1}:
        return "not-applicable"
    N = datum.N
    N2 = matmul(N, N)
    if not is_zero_matrix(matmul(N2, N)):
        return "I"
    if is_zero_matrix(N2):
        r = rank(N)
        if r == 2:
            return "II2"
        if r == 1:
            return "II1"
    return "not-applicable"


def is_abelian(datum: DegenerationDatum) -> bool:
    """General-fibre Hodge numbers supported in p in {-1, 0}."""
    return set(datum.hodge_numbers()) <= {-1, 0}


def identity_checks(an: Analysis) -> dict[str, bool]:
    """Calculus identities on the lattices of ``an``."""
    m = an.module
    d = an.datum
    F0M, E, Ep = an.F0M, an.E, an.Ep
    out = {}
    out["double dual"] = dual_lattice(Ep) == F0M and dual_lattice(dual_lattice(E)) == E
    Lgt = deligne_lattice(m, -1, strict=True)
    out["F0M meets L>-1 in F0L>-1"] = (F0M & Lgt) == hodge_sublattice(m, 0, -1, strict=True)
    F1M = compute_FpM(m.with_window(m.window + 1), 1)
    ok = True
    for a in m.classes:
        for k in m.levels:
            if k + a < 0:
                img = m.dt_level_map(a, k)(F0M.value(a, k))
                if img.dim != F0M.value(a, k).dim or img != F1M.value(a, k - 1):
                    ok = False
    out["dt bijective below 0"] = ok
    # V-graded dual quotient vs graded pieces of F_0 M
    grv = grV_quotient_dims(E, Ep)
    ok = True
    for a, cls in m.classes.items():
        for j in m.levels:
            if j + a < 0:
                continue
            lhs = E.value(a, j).dim - Ep.value(a, j).dim
            rhs = F0M.value(cls.dual_alpha, -j - cls.shift - 1).dim
            ok = ok and lhs == rhs
    out["graded duality"] = ok
    d_vec = vanishing_part(d).d
    sums = {}
    for v, dim in grv.items():
        j = _floor_frac(v)
        sums[j] = sums.get(j, 0) + dim
    out["Gr_V sums give d"] = all(sums.get(j, 0) == (d_vec[j + 1] if j + 1 < len(d_vec) else 0) for j in range(0, m.hi + 1)) and all(j >= 0 for j in sums)
    out["gamma regularity"] = gamma_regularity_check(m, F0M)
    out["base change"] = base_change_check(an)
    return out


def _floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def base_change_check(an: Analysis) -> bool:
    """Generators of L^{>=0} pull back into the unipotent Deligne lattice at level m*alpha,
    positive exactly off the unipotent class, compatibly with s d/ds = m t d/dt."""
    from .disk import base_change_element
    from .mhs import unipotent_base_change

    d = an.datum
    mm = d.m
    if d.order % mm:
        return False
    tilde = GradedDiskModule(unipotent_base_change(d), an.module.window * mm + mm)
    L0 = deligne_lattice(an.module, 0)
    for g in L0.generators():
        (a, k, v), = g.terms
        if k + a >= 1:
            continue
        y = base_change_element(g, mm)
        (_, e, _), = y.terms
        if e < 0 or (e >= 1) != (a != 0):
            return False
        # s d/ds y = m * pullback(t d/dt g)
        lhs = tilde.t(tilde.dt(y)) if e >= 1 else None
        rhs = an.module.t(an.module.dt(g))
        rhs_pulled = base_change_element(rhs, mm)
        if lhs is not None:
            (_, e1, w1), = lhs.terms
            (_, e2, w2), = rhs_pulled.terms
            if e1 != e2 or any(x != mm * z for x, z in zip(w1, w2)):
                return False
    return True


def blowup_chain(datum: DegenerationDatum, window: int | None = None, rng: random.Random | None = None, checks: bool = True) -> ChainReport:
    validation = validate_datum(datum)
    an = None
    report = ChainReport(datum, validation, window or datum.window or 0)
    if not validation.ok:
        report.error = "validation failed"
        return report
    an = Analysis(datum, window)
    report.window = an.module.window
    vp = vanishing_part(datum)
    report.d = vp.d
    report.a_closed = vp.a
    report.gamma_rank = vp.h_inv.dim
    report.component_group = component_group(datum.T)
    report.classification = classify_quintic(datum)

    E, Ep = an.E, an.Ep
    report.divisors = elementary_divisors(E, Ep)
    report.rank = len(report.divisors)
    report.a = max(report.divisors, default=0)
    report.grV = grV_quotient_dims(E, Ep)
    n = quotient_dims(E, Ep, report.a + 1)
    report.m = [n[k] - n[k - 1] for k in range(1, report.a + 1)]
    basis = adapted_basis(E, Ep, rng)
    report.basis = basis
    if sorted(basis.divisors, reverse=True) != report.divisors:
        raise AssertionError("adapted basis divisors disagree with quotient dimensions")
    r = report.rank
    for k in range(1, report.a + 1):
        mk = sum(1 for x in basis.divisors if x >= k)
        report.steps.append(
            BlowupStep(
                k=k,
                m_k=mk,
                d_k=report.d_k(k),
                center_codim=mk + 1,
                center_dim=r - mk,
                fiber_dim=r,
                center_equations=tuple(range(1, mk + 1)),
                transition=tuple((i, i <= mk) for i in range(1, r + 1)),
            )
        )
    fib, _ = image_fiber(an, basis, max(report.a, 1))
    report.image_fiber = fib
    for k in range(1, report.a + 1):
        report.fiber_by_k[k] = image_fiber(an, basis, k)
    report.ker_n_fiber = ker_n_fiber(an)
    if report.a:
        report.center_is_ker_n = fib == report.ker_n_fiber
    report.image_identity, report.image_identity_dims = image_fiber_identity(an, fib)
    report.gamma_regular = gamma_regularity_check(an.module, an.F0M)
    if checks:
        report.identities = identity_checks(an)

    if report.a == 0:
        report.notes.append("J^Sch,0 = Zucker extension")
        if is_abelian(datum):
            report.notes.append("coincides with the Clemens extension")
    else:
        report.notes.append(f"{report.a} blow-up step(s); first center of codimension {report.steps[0].center_codim}")
        if report.center_is_ker_n is False:
            report.notes.append("center ≠ image of Ker N")
        elif datum.is_unipotent:
            report.notes.append("center = image of Ker N")
    if not datum.is_unipotent:
        report.notes.append("Ker N image is informational (monodromy not unipotent)")
    return report


analyze = blowup_chain
