"""Truncated formal power series in z over Q(x) or the biquadratic extension.

Ordinary generating functions are built by power-series division of their
rational closed forms.  Exponential generating functions are expanded as
finite sums of exponential atoms ``w * exp(r z)``, so the coefficient of z^j
is ``sum(w * r^j) / j!`` exactly; all EGF series store these plain z^j
coefficients, and one Cauchy product serves both kinds.

The functional equations that tie the generating functions together are
collected in :data:`FUNCTIONAL_EQUATIONS` and checked with :func:`fe_check`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .arith import X, DomainError, Poly, RatFunc
from .quadext import CHEB_FIB_CTX, ExtCtx, ExtElem, format_ext
from .sequences import SeqKind, seq_poly

DEFAULT_ORDER = 64


class Series:
    """``coeffs[j]`` is the coefficient of z^j, for j = 0..order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if not coeffs:
            raise ValueError("a series needs at least one coefficient")
        self.coeffs = tuple(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, j: int):
        return self.coeffs[j]

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other: "Series") -> None:
        if other.order != self.order:
            raise DomainError(f"series order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        return Series([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Series") -> "Series":
        self._check(other)
        return Series([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "Series":
        return Series([-a for a in self.coeffs])

    def __mul__(self, other) -> "Series":
        if isinstance(other, Series):
            return series_mul(self, other)
        return Series([a * other for a in self.coeffs])

    def __rmul__(self, other) -> "Series":
        return Series([other * a for a in self.coeffs])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.coeffs == other.coeffs

    def shift(self, m: int = 1) -> "Series":
        """Multiply by z^m, keeping the order."""
        zero = self.coeffs[0] * 0
        return Series(([zero] * m + list(self.coeffs))[: self.order + 1])

    def scale_arg(self, s) -> "Series":
        """The series in the variable ``s*z``: coefficient j picks up ``s^j``."""
        out, p = [], None
        for a in self.coeffs:
            out.append(a if p is None else a * p)
            p = s if p is None else p * s
        return Series(out)

    def lift(self, ctx: ExtCtx) -> "Series":
        """Rational-function coefficients viewed inside the extension ``ctx``."""
        return Series([a if isinstance(a, ExtElem) else ExtElem.const(ctx, a) for a in self.coeffs])


def series_mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated to the common order."""
    a._check(b)
    n = a.order
    zero = a.coeffs[0] * 0
    ac = [(i, c) for i, c in enumerate(a.coeffs) if c]
    bc = [(j, c) for j, c in enumerate(b.coeffs) if c]
    out = [zero] * (n + 1)
    for i, ca in ac:
        for j, cb in bc:
            if i + j > n:
                break
            out[i + j] = out[i + j] + ca * cb
    return Series(out)


def _as_rf(c) -> RatFunc:
    if isinstance(c, RatFunc):
        return c
    if isinstance(c, Poly):
        return RatFunc.from_poly(c)
    return RatFunc.const(c)


def series_from_rational_gf(num: Sequence, den: Sequence, order: int) -> Series:
    """Expand ``num(z)/den(z)`` (coefficient lists in z) up to z^order."""
    num = [_as_rf(c) for c in num]
    den = [_as_rf(c) for c in den]
    if not den or not den[0]:
        raise DomainError("denominator has a zero constant term")
    inv0 = den[0].inverse()
    out: list[RatFunc] = []
    for j in range(order + 1):
        acc = num[j] if j < len(num) else RatFunc()
        for i in range(1, min(j, len(den) - 1) + 1):
            if den[i]:
                acc = acc - den[i] * out[j - i]
        out.append(acc * inv0)
    return Series(out)


# -- generating function families --------------------------------------------

_x2 = X * X
_CHEB_DEN = (1, -(2 * X), 1)
_CHEB2_DEN = (1, -(4 * _x2 - 2), 1)
_FIB_DEN = (1, -X, -1)
_FIB2_DEN = (1, -(_x2 + 2), 1)

#: family -> (numerator in z, denominator in z)
OGF_FORMS: dict[str, tuple[tuple, tuple]] = {
    "t": ((1, -X), _CHEB_DEN),
    "t1": ((X, -X), _CHEB2_DEN),
    "t2": ((1, -(2 * _x2 - 1)), _CHEB2_DEN),
    "u": ((1,), _CHEB_DEN),
    "u1": ((2 * X,), _CHEB2_DEN),
    "u2": ((1, 1), _CHEB2_DEN),
    "f": ((0, 1), _FIB_DEN),
    "f1": ((1, -1), _FIB2_DEN),
    "f2": ((0, X), _FIB2_DEN),
}

EGF_FAMILIES = ("tau", "tau1", "tau2", "omega", "omega1", "omega2", "phi", "phi1", "phi2")

#: family -> (sequence kind, index multiplier, index offset): coefficient j is W_{a*j+b}
FAMILY_SEQUENCE = {
    "t": (SeqKind.T, 1, 0), "t1": (SeqKind.T, 2, 1), "t2": (SeqKind.T, 2, 0),
    "u": (SeqKind.U, 1, 0), "u1": (SeqKind.U, 2, 1), "u2": (SeqKind.U, 2, 0),
    "f": (SeqKind.F, 1, 0), "f1": (SeqKind.F, 2, 1), "f2": (SeqKind.F, 2, 0),
}
for _o, _e in zip(OGF_FORMS, EGF_FAMILIES):
    FAMILY_SEQUENCE[_e] = FAMILY_SEQUENCE[_o]


@dataclass(frozen=True)
class GfSpec:
    family: str
    scale: RatFunc = field(default_factory=lambda: RatFunc.const(1))

    def __post_init__(self):
        if self.family not in OGF_FORMS and self.family not in EGF_FAMILIES:
            raise ValueError(f"unknown generating function family {self.family!r}")

    @property
    def is_egf(self) -> bool:
        return self.family in EGF_FAMILIES


def series_gf(spec: GfSpec, order: int) -> Series:
    """Ordinary generating function of ``spec.family`` in the variable ``scale*z``."""
    if spec.is_egf:
        raise ValueError(f"{spec.family} is an exponential generating function")
    num, den = OGF_FORMS[spec.family]
    s = series_from_rational_gf(num, den, order)
    return s if spec.scale == 1 else s.scale_arg(spec.scale)


# An atom list represents sum(weight * exp(rate * z)).
Atoms = list[tuple[ExtElem, ExtElem]]


def _e(v, ctx: ExtCtx = CHEB_FIB_CTX) -> ExtElem:
    return v if isinstance(v, ExtElem) else ExtElem.const(ctx, v)


def cosh_atoms(q: ExtElem, weight=1, shift=0) -> Atoms:
    """``weight * exp(shift z) * cosh(q z)``."""
    w, p = _e(weight, q.ctx) * Fraction(1, 2), _e(shift, q.ctx)
    return [(w, p + q), (w, p - q)]


def sinh_atoms(q: ExtElem, weight=1, shift=0) -> Atoms:
    """``weight * exp(shift z) * sinh(q z)``."""
    w, p = _e(weight, q.ctx) * Fraction(1, 2), _e(shift, q.ctx)
    return [(w, p + q), (-w, p - q)]


def atoms_series(atoms: Atoms, order: int) -> Series:
    """Plain z^j coefficients ``sum(w r^j) / j!`` of an atom combination."""
    ctx = atoms[0][0].ctx
    coeffs = []
    powers = [ExtElem.const(ctx, 1) for _ in atoms]
    fact = 1
    for j in range(order + 1):
        if j:
            fact *= j
            powers = [p * r for p, (_, r) in zip(powers, atoms)]
        acc = ExtElem.const(ctx, 0)
        for p, (w, _) in zip(powers, atoms):
            acc = acc + w * p
        coeffs.append(acc * Fraction(1, fact))
    return Series(coeffs)


def egf_atoms(family: str, ctx: ExtCtx = CHEB_FIB_CTX) -> Atoms:
    """Exponential-atom expansion of an EGF family, read off its exp/cosh/sinh closed form."""
    w1, w2 = ExtElem.w1(ctx), ExtElem.w2(ctx)
    x = _e(X, ctx)
    c2 = 2 * _x2 - 1
    q2 = x * w1 * 2
    h = (_x2 + 2) * Fraction(1, 2)
    qf = x * w2 * Fraction(1, 2)
    if family == "tau":
        return cosh_atoms(w1, 1, x)
    if family == "tau1":
        return cosh_atoms(q2, x, c2) + sinh_atoms(q2, w1, c2)
    if family == "tau2":
        return cosh_atoms(q2, 1, c2)
    inv_w1 = 1 / w1
    if family == "omega":
        return sinh_atoms(w1, x * inv_w1, x) + cosh_atoms(w1, 1, x)
    if family == "omega1":
        return sinh_atoms(q2, inv_w1 * c2, c2) + cosh_atoms(q2, 2 * x, c2)
    if family == "omega2":
        return sinh_atoms(q2, inv_w1 * x, c2) + cosh_atoms(q2, 1, c2)
    inv_w2 = 1 / w2
    if family == "phi":
        return sinh_atoms(w2 * Fraction(1, 2), 2 * inv_w2, x * Fraction(1, 2))
    if family == "phi1":
        return sinh_atoms(qf, inv_w2 * x, h) + cosh_atoms(qf, 1, h)
    if family == "phi2":
        return sinh_atoms(qf, 2 * inv_w2, h)
    raise ValueError(f"unknown exponential generating function family {family!r}")


def series_egf_ext(spec: GfSpec, order: int, ctx: ExtCtx = CHEB_FIB_CTX) -> Series:
    """EGF as a series with extension coefficients (radicals cancel, but stay typed as ExtElem)."""
    s = atoms_series(egf_atoms(spec.family, ctx), order)
    return s if spec.scale == 1 else s.scale_arg(_e(spec.scale, ctx))


def series_egf(spec: GfSpec, order: int) -> Series:
    """EGF with plain z^j coefficients in Q(x); the 1/j! is folded in."""
    if not spec.is_egf:
        raise ValueError(f"{spec.family} is an ordinary generating function")
    s = atoms_series(egf_atoms(spec.family), order)
    out = Series([c.project_ratfunc() for c in s])
    return out if spec.scale == 1 else out.scale_arg(spec.scale)


def gf_series(spec: GfSpec, order: int) -> Series:
    return series_egf(spec, order) if spec.is_egf else series_gf(spec, order)


def expected_coefficient(family: str, j: int) -> RatFunc:
    """What coefficient j of an unscaled family should be, from the sequences."""
    kind, a, b = FAMILY_SEQUENCE[family]
    p = RatFunc.from_poly(seq_poly(kind, a * j + b))
    return p * Fraction(1, math.factorial(j)) if family in EGF_FAMILIES else p


# -- functional equations -----------------------------------------------------

@dataclass
class FEReport:
    residuals: list
    ok: bool
    first_nonzero: int | None

    def residual_text(self) -> str:
        if self.first_nonzero is None:
            return "0"
        r = self.residuals[self.first_nonzero]
        body = format_ext(r) if isinstance(r, ExtElem) else str(r)
        return f"z^{self.first_nonzero}: {body}"


def fe_check(lhs: Series, rhs: Series) -> FEReport:
    """Coefficient-wise ``lhs - rhs``; success iff every difference is zero."""
    diff = lhs - rhs
    first = next((j for j, c in enumerate(diff) if c), None)
    return FEReport(list(diff), first is None, first)


def _z_poly(order: int, coeffs: Sequence) -> Series:
    """A polynomial in z (coefficient list) as a series."""
    out = [_as_rf(c) for c in coeffs][: order + 1]
    out += [RatFunc()] * (order + 1 - len(out))
    return Series(out)


def _fe_thm1_t(order):
    t, f = series_gf(GfSpec("t"), order), series_gf(GfSpec("f"), order)
    lhs = _z_poly(order, [1, -X]) * f - t.shift(1)
    rhs = _z_poly(order, [0, -X, 2]) * t * f
    return lhs, rhs


def _fe_thm1_u(order):
    u, f = series_gf(GfSpec("u"), order), series_gf(GfSpec("f"), order)
    fu = f * u
    lhs = f - u.shift(1)
    rhs = fu.shift(2) * 2 - fu.shift(1) * X
    return lhs, rhs


def _fe_thm3_u1f2(order):
    u1, f2 = series_gf(GfSpec("u1"), order), series_gf(GfSpec("f2"), order)
    lhs = f2 * (2 * X)
    rhs = u1.shift(1) * X - (u1 * f2).shift(1) * (3 * _x2 - 4)
    return lhs, rhs


def _ctx_bits():
    ctx = CHEB_FIB_CTX
    w1, w2 = ExtElem.w1(ctx), ExtElem.w2(ctx)
    x = _e(X, ctx)
    return ctx, w1, w2, x


def _egf(family, order, scale=None):
    spec = GfSpec(family) if scale is None else GfSpec(family, scale)
    return series_egf(spec, order).lift(CHEB_FIB_CTX)


def _fe_thm4_t(order):
    ctx, w1, w2, x = _ctx_bits()
    half = Fraction(1, 2)
    lhs = _egf("tau", order, RatFunc.const(half)) * atoms_series(sinh_atoms(w2 * half, 2), order)
    rhs = _egf("phi", order) * atoms_series(cosh_atoms(w1 * half, w2), order)
    return lhs, rhs


def _fe_thm4_u(order):
    ctx, w1, w2, x = _ctx_bits()
    half = Fraction(1, 2)
    lhs = atoms_series(sinh_atoms(w2 * half, 2 * w1), order) * _egf("omega", order, RatFunc.const(half))
    bracket = atoms_series(sinh_atoms(w1 * half, x * w2) + cosh_atoms(w1 * half, w1 * w2), order)
    rhs = bracket * _egf("phi", order)
    return lhs, rhs


def _thm56_pieces():
    ctx, w1, w2, x = _ctx_bits()
    a_rate = w2 * RatFunc(2 * X ** 3 - X, _x2 + 2)
    s = RatFunc(4 * _x2 - 2, _x2 + 2)
    q2 = x * w1 * 2
    return ctx, w1, w2, x, a_rate, s, q2


def _fe_thm5_t(order):
    ctx, w1, w2, x, a_rate, s, q2 = _thm56_pieces()
    lhs = atoms_series(sinh_atoms(a_rate, x) + cosh_atoms(a_rate, w2), order) * _egf("tau1", order)
    rhs = atoms_series(cosh_atoms(q2, w2 * x) + sinh_atoms(q2, w2 * w1), order) * _egf("phi1", order, s)
    return lhs, rhs


def _fe_thm5_u(order):
    ctx, w1, w2, x, a_rate, s, q2 = _thm56_pieces()
    lhs = atoms_series(sinh_atoms(a_rate, 2 * x) + cosh_atoms(a_rate, 2 * w2), order) * _egf("omega1", order)
    # sqrt((x^2+4)/(x^2-1)) = w1*w2/(x^2-1)
    root = w1 * w2 * RatFunc(1, _x2 - 1)
    a2 = (x + w1) ** 2
    b2 = (x - w1) ** 2
    rhs = atoms_series([(root * a2, q2), (-root * b2, -q2)], order) * _egf("phi1", order, s)
    return lhs, rhs


def _fe_thm6_t(order):
    ctx, w1, w2, x, a_rate, s, q2 = _thm56_pieces()
    lhs = atoms_series(sinh_atoms(a_rate, 2), order) * _egf("tau2", order)
    rhs = atoms_series(cosh_atoms(q2, w2), order) * _egf("phi2", order, s)
    return lhs, rhs


def _fe_thm6_u(order, printed=False):
    ctx, w1, w2, x, a_rate, s, q2 = _thm56_pieces()
    lhs_w, rhs_w = (1, 2) if printed else (2, 1)
    lhs = atoms_series(sinh_atoms(a_rate, w1 * lhs_w), order) * _egf("omega2", order)
    rhs = atoms_series(sinh_atoms(q2, w2 * x * rhs_w) + cosh_atoms(q2, w2 * w1 * rhs_w), order) * _egf("phi2", order, s)
    return lhs, rhs


@dataclass(frozen=True)
class FunctionalEquation:
    id: str
    anchor: str
    build: Callable[[int], tuple[Series, Series]]
    printed: Callable[[int], tuple[Series, Series]] | None = None


FUNCTIONAL_EQUATIONS: dict[str, FunctionalEquation] = {fe.id: fe for fe in (
    FunctionalEquation("FE1.1", "Theorem 1 proof: (1-xz)f(z,x)-zt(z,x) = (2z^2-xz)t(z,x)f(z,x)", _fe_thm1_t),
    FunctionalEquation("FE1.2", "Theorem 1 proof: f(z,x) - z u(z,x) = 2 z^2 f(z,x)u(z,x) - x z f(z,x) u(z,x)", _fe_thm1_u),
    FunctionalEquation("FE3.8", "Theorem 3 proof: 2xf_2(z,x)=xzu_1(z,x)-(3x^2-4)zu_1(z,x)f_2(z,x)", _fe_thm3_u1f2),
    FunctionalEquation("FE4.1", "Theorem 4 proof: 2tau(z/2,x)sinh(sqrt(x^2+4)z/2)=phi(z,x)sqrt(x^2+4)cosh(sqrt(x^2-1)z/2)", _fe_thm4_t),
    FunctionalEquation("FE4.2", "Theorem 4 proof: 2sqrt(x^2-1)sinh(sqrt(x^2+4)z/2)omega(z/2,x) = sqrt(x^2+4)(x sinh+sqrt(x^2-1)cosh)(sqrt(x^2-1)z/2)phi(z,x)", _fe_thm4_u),
    FunctionalEquation("FE5.1", "Theorem 5 proof: (x sinh(Az)+sqrt(x^2+4)cosh(Az))tau_1(z,x) = sqrt(x^2+4)(x cosh+sqrt(x^2-1)sinh)(2x sqrt(x^2-1)z)phi_1((4x^2-2)z/(x^2+2),x)", _fe_thm5_t),
    FunctionalEquation("FE5.2", "Theorem 5 proof: 2(x sinh(Az)+sqrt(x^2+4)cosh(Az))omega_1(z,x) = sqrt((x^2+4)/(x^2-1))(alpha^2 e^{2x sqrt(x^2-1)z}-beta^2 e^{-2x sqrt(x^2-1)z})phi_1(...)", _fe_thm5_u),
    FunctionalEquation("FE6.1", "Theorem 6 proof: 2sinh(Az)tau_2(z,x)=sqrt(x^2+4)cosh(2x sqrt(x^2-1)z)phi_2((4x^2-2)z/(x^2+2),x)", _fe_thm6_t),
    FunctionalEquation("FE6.2", "Theorem 6 proof: sqrt(x^2-1)sinh(Az)omega_2(z,x) = 2sqrt(x^2+4)(x sinh+sqrt(x^2-1)cosh)(2x sqrt(x^2-1)z)phi_2(...)",
                       _fe_thm6_u, lambda order: _fe_thm6_u(order, printed=True)),
)}


def check_functional_equation(fe_id: str, order: int = DEFAULT_ORDER, printed: bool = False) -> FEReport:
    fe = FUNCTIONAL_EQUATIONS[fe_id]
    build = fe.printed if printed else fe.build
    if build is None:
        raise ValueError(f"{fe_id} has no printed variant")
    return fe_check(*build(order))
