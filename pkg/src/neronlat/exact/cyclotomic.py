"""The cyclotomic field Q(zeta_M) as the quotient ring Q[x]/Phi_M(x).

For M in {1, 2} the field is Q itself and elements are plain
:class:`fractions.Fraction` values; otherwise they are :class:`CycloScalar`.
Both support ``+ - * /``, equality with ints, and can be mixed freely.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd


def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("order must be positive")
    return _cyclo_poly(m)


@lru_cache(maxsize=None)
def _cyclo_poly(m: int) -> tuple[int, ...]:
    num = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num = _exact_div(num, list(_cyclo_poly(d)))
    return tuple(num)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(q) - 1, -1, -1):
        c, r = divmod(num[i + len(den) - 1], lead)
        assert r == 0
        q[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    assert not any(num[: len(den) - 1])
    return q


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


class CyclotomicField:
    """Q(zeta_order). Use :func:`cyclotomic_field` to get the cached instance."""

    def __init__(self, order: int):
        self.order = order
        self.degree = euler_phi(order)
        self._phi = cyclotomic_polynomial(order)
        # zeta^k for k in [degree, 2*degree) in the power basis
        d = self.degree
        self._high_powers = []
        for k in range(d, 2 * d):
            self._high_powers.append(tuple(self._reduce([0] * k + [1])))

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __repr__(self) -> str:
        return f"CyclotomicField({self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclotomicField) and other.order == self.order

    def __hash__(self) -> int:
        return hash(("Q(zeta)", self.order))

    # -- element construction --------------------------------------------------
    def __call__(self, value):
        """Coerce an int, Fraction, coefficient sequence or element."""
        if isinstance(value, CycloScalar):
            if value.field.order == self.order:
                return value
            return self.from_coeffs(_embed(value, self))
        if isinstance(value, (list, tuple)):
            return self.from_coeffs(value)
        return self._wrap_rational(Fraction(value))

    def _wrap_rational(self, q: Fraction):
        if self.is_rational:
            return q
        return CycloScalar(self, (q,) + (Fraction(0),) * (self.degree - 1))

    def from_coeffs(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > self.degree:
            cs = self._reduce(cs)
        cs += [Fraction(0)] * (self.degree - len(cs))
        if self.is_rational:
            return cs[0]
        return CycloScalar(self, tuple(cs))

    def coeffs(self, x) -> tuple[Fraction, ...]:
        if isinstance(x, CycloScalar):
            return x.c
        q = Fraction(x)
        return (q,) + (Fraction(0),) * (self.degree - 1)

    @property
    def zero(self):
        return self._wrap_rational(Fraction(0))

    @property
    def one(self):
        return self._wrap_rational(Fraction(1))

    def zeta_power(self, k: int):
        """zeta^k (with zeta = exp(2 pi i / order))."""
        k %= self.order
        if self.order == 2:
            return Fraction((-1) ** k)
        if self.is_rational:
            return Fraction(1)
        return self.from_coeffs([0] * k + [1])

    @property
    def zeta(self):
        return self.zeta_power(1)

    def conj(self, x):
        """Complex conjugation zeta -> zeta^{-1}."""
        if not isinstance(x, CycloScalar):
            return x
        acc = [Fraction(0)] * (self.order)
        for j, c in enumerate(x.c):
            if c:
                acc[(-j) % self.order] += c
        return self.from_coeffs(acc)

    def to_complex(self, x) -> complex:
        """Numeric embedding zeta -> exp(2 pi i / order); display only."""
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * z**j for j, c in enumerate(self.coeffs(x)))

    def _reduce(self, cs) -> list[Fraction]:
        d = self.degree
        cs = [Fraction(c) for c in cs]
        phi = self._phi
        for i in range(len(cs) - 1, d - 1, -1):
            c = cs[i]
            if c:
                for j in range(d):
                    cs[i - d + j] -= c * phi[j]
                cs[i] = Fraction(0)
        return (cs + [Fraction(0)] * d)[:d]


def _embed(x: "CycloScalar", target: CyclotomicField):
    if target.order % x.field.order:
        raise ValueError(f"cannot embed Q(zeta_{x.field.order}) into Q(zeta_{target.order})")
    step = target.order // x.field.order
    acc = [Fraction(0)] * target.order
    for j, c in enumerate(x.c):
        acc[(j * step) % target.order] += c
    return acc


@lru_cache(maxsize=None)
def cyclotomic_field(order: int) -> CyclotomicField:
    return CyclotomicField(order)


class CycloScalar:
    """An element of Q(zeta_M) with M >= 3, stored in the power basis."""

    __slots__ = ("field", "c")

    def __init__(self, field: CyclotomicField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.c = coeffs

    def _coerce(self, other):
        if isinstance(other, CycloScalar):
            if other.field.order != self.field.order:
                raise ValueError("mixing different cyclotomic fields")
            return other.c
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return (q,) + (Fraction(0),) * (self.field.degree - 1)
        return None

    def __add__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return CycloScalar(self.field, tuple(a + b for a, b in zip(self.c, oc)))

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar(self.field, tuple(-a for a in self.c))

    def __sub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return CycloScalar(self.field, tuple(a - b for a, b in zip(self.c, oc)))

    def __rsub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return CycloScalar(self.field, tuple(b - a for a, b in zip(self.c, oc)))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.field.from_coeffs(())
            return CycloScalar(self.field, tuple(a * other for a in self.c))
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        d = self.field.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(oc):
                    if b:
                        prod[i + j] += a * b
        out = prod[:d]
        for k, ck in enumerate(prod[d:]):
            if ck:
                red = self.field._high_powers[k]
                for j in range(d):
                    out[j] += ck * red[j]
        return CycloScalar(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CycloScalar":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        # solve (multiplication-by-self matrix) * y = e_0
        d = self.field.degree
        cols = []
        basis_elt = self.field.one
        zeta = self.field.zeta
        for _ in range(d):
            cols.append((self * basis_elt).c)
            basis_elt = basis_elt * zeta
        aug = [[cols[j][i] for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for col in range(d):
            piv = next(r for r in range(col, d) if aug[r][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [v * inv for v in aug[col]]
            for r in range(d):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return CycloScalar(self.field, tuple(aug[i][d] for i in range(d)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CycloScalar(self.field, tuple(a / other for a in self.c))
        if isinstance(other, CycloScalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CycloScalar):
            return other.field.order == self.field.order and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash((self.field.order, self.c))

    def __bool__(self):
        return any(self.c)

    def conjugate(self) -> "CycloScalar":
        return self.field.conj(self)

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.c):
            if c:
                terms.append(f"{c}" if j == 0 else f"{c}*z^{j}")
        return f"<{' + '.join(terms) or '0'} in Q(z{self.field.order})>"
