"""Arithmetic in the biquadratic extension Q(x)(w1, w2), w1^2 = d1, w2^2 = d2.

Elements are stored on the basis ``{1, w1, w2, w1*w2}`` with rational-function
coordinates.  Either discriminant may be absent (``None``), giving a plain
quadratic extension or Q(x) itself.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import ONE, X, DomainError, Poly, RatFunc, Scalar, format_ratfunc

# basis index -> (w1 exponent, w2 exponent)
_BITS = ((0, 0), (1, 0), (0, 1), (1, 1))
_NAMES = ("", "w1", "w2", "w1*w2")


class NotAPolynomial(ValueError):
    """Projection of an element that is not a radical-free polynomial."""

    def __init__(self, elem: "ExtElem"):
        super().__init__(f"not a polynomial: {elem}")
        self.components = elem.components


def rational_sqrt(c: Fraction) -> Optional[Fraction]:
    if c < 0:
        return None
    from math import isqrt
    p, q = c.numerator, c.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def poly_sqrt(p: Poly) -> Optional[Poly]:
    """Square root by coefficient matching, or ``None`` if ``p`` is not a square.

    The root is normalized to a positive leading coefficient.
    """
    if p.is_zero():
        return p
    d = p.degree
    if d % 2:
        return None
    lead = rational_sqrt(p.lc())
    if lead is None:
        return None
    m = d // 2
    c = p.coeffs
    # match coefficients of x^(d-i) for i = 1..m, top down
    root = [Fraction(0)] * (m + 1)
    root[m] = lead
    for i in range(1, m + 1):
        acc = c[d - i]
        for j in range(1, i):
            acc -= root[m - j] * root[m - i + j]
        root[m - i] = acc / (2 * lead)
    s = Poly(root)
    return s if s * s == p else None


def ratfunc_sqrt(r: RatFunc) -> Optional[RatFunc]:
    a, b = poly_sqrt(r.num), poly_sqrt(r.den)
    if a is None or b is None:
        return None
    return RatFunc(a, b)


@dataclass(frozen=True)
class ExtCtx:
    """The pair of discriminants; compared by value, in order."""

    d1: Optional[Poly] = None
    d2: Optional[Poly] = None

    def __post_init__(self):
        for d in (self.d1, self.d2):
            if d is not None and (d.is_zero() or poly_sqrt(d) is not None):
                raise DomainError(f"discriminant {d} is zero or a perfect square")
        if self.d1 is not None and self.d2 is not None:
            if self.d1 == self.d2 or poly_sqrt(self.d1 * self.d2) is not None:
                raise DomainError("d1*d2 is a perfect square; the extension is not biquadratic")

    def disc(self, which: int) -> Poly:
        d = self.d1 if which == 1 else self.d2
        if d is None:
            raise DomainError(f"radical w{which} is unbound in {self}")
        return d

    def __str__(self) -> str:
        return f"ExtCtx(d1={self.d1}, d2={self.d2})"


#: Q(x)(sqrt(x^2-1), sqrt(x^2+4)), home of alpha, beta, rho, sigma
CHEB_FIB_CTX = ExtCtx(X * X - 1, X * X + 4)
BARE_CTX = ExtCtx()


def _rf(v) -> RatFunc:
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, Poly):
        return RatFunc.from_poly(v)
    return RatFunc.const(v)


_RF_ZERO = RatFunc()


class ExtElem:
    """``c00 + c10*w1 + c01*w2 + c11*w1*w2`` over one :class:`ExtCtx`."""

    __slots__ = ("ctx", "components")

    def __init__(self, ctx: ExtCtx, c00=0, c10=0, c01=0, c11=0):
        comps = (_rf(c00), _rf(c10), _rf(c01), _rf(c11))
        if ctx.d1 is None and (comps[1] or comps[3]):
            raise DomainError("w1 component in a context without d1")
        if ctx.d2 is None and (comps[2] or comps[3]):
            raise DomainError("w2 component in a context without d2")
        self.ctx = ctx
        self.components = comps

    @classmethod
    def _make(cls, ctx: ExtCtx, comps) -> "ExtElem":
        e = cls.__new__(cls)
        e.ctx = ctx
        e.components = tuple(comps)
        return e

    @classmethod
    def w1(cls, ctx: ExtCtx) -> "ExtElem":
        ctx.disc(1)
        return cls._make(ctx, (_RF_ZERO, RatFunc.const(1), _RF_ZERO, _RF_ZERO))

    @classmethod
    def w2(cls, ctx: ExtCtx) -> "ExtElem":
        ctx.disc(2)
        return cls._make(ctx, (_RF_ZERO, _RF_ZERO, RatFunc.const(1), _RF_ZERO))

    @classmethod
    def const(cls, ctx: ExtCtx, v) -> "ExtElem":
        return cls._make(ctx, (_rf(v), _RF_ZERO, _RF_ZERO, _RF_ZERO))

    @property
    def c00(self) -> RatFunc:
        return self.components[0]

    @property
    def c10(self) -> RatFunc:
        return self.components[1]

    @property
    def c01(self) -> RatFunc:
        return self.components[2]

    @property
    def c11(self) -> RatFunc:
        return self.components[3]

    def is_zero(self) -> bool:
        return not any(self.components)

    def is_rational(self) -> bool:
        c = self.components
        return not (c[1] or c[2] or c[3])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExtElem):
            return self.ctx == other.ctx and self.components == other.components
        if isinstance(other, (int, Fraction, Poly, RatFunc)):
            return self.is_rational() and self.components[0] == _rf(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx, self.components))

    def __repr__(self) -> str:
        return f"ExtElem({format_ext(self)!r})"

    def __str__(self) -> str:
        return format_ext(self)

    def _coerce(self, other) -> "ExtElem":
        if isinstance(other, ExtElem):
            if other.ctx != self.ctx:
                raise DomainError(f"context mismatch: {self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, (int, Fraction, Poly, RatFunc)):
            return ExtElem.const(self.ctx, other)
        return NotImplemented

    def __add__(self, other) -> "ExtElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExtElem._make(self.ctx, (a + b for a, b in zip(self.components, other.components)))

    __radd__ = __add__

    def __neg__(self) -> "ExtElem":
        return ExtElem._make(self.ctx, (-a for a in self.components))

    def __sub__(self, other) -> "ExtElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExtElem._make(self.ctx, (a - b for a, b in zip(self.components, other.components)))

    def __rsub__(self, other) -> "ExtElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other) -> "ExtElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ext_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ExtElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ext_mul(self, ext_inv(other))

    def __rtruediv__(self, other) -> "ExtElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ext_mul(other, ext_inv(self))

    def __pow__(self, e: int) -> "ExtElem":
        return ext_pow(self, e)

    def conj(self, which: int) -> "ExtElem":
        """Flip the sign of ``w1`` (which=1) or ``w2`` (which=2)."""
        c = self.components
        if which == 1:
            return ExtElem._make(self.ctx, (c[0], -c[1], c[2], -c[3]))
        return ExtElem._make(self.ctx, (c[0], c[1], -c[2], -c[3]))

    def project_poly(self) -> Poly:
        return ext_project_poly(self)

    def project_ratfunc(self) -> RatFunc:
        if not self.is_rational():
            raise NotAPolynomial(self)
        return self.components[0]


def _basis_factor(ctx: ExtCtx, i: int, j: int) -> Optional[Poly]:
    """Polynomial produced when basis elements i and j multiply (None means 1)."""
    (a1, a2), (b1, b2) = _BITS[i], _BITS[j]
    f = None
    if a1 and b1:
        f = ctx.d1
    if a2 and b2:
        f = ctx.d2 if f is None else f * ctx.d2
    return f


def ext_mul(a: ExtElem, b: ExtElem) -> ExtElem:
    """Product reduced by w1^2 -> d1, w2^2 -> d2; zero components are skipped."""
    if a.ctx != b.ctx:
        raise DomainError(f"context mismatch: {a.ctx} vs {b.ctx}")
    ctx = a.ctx
    out = [None, None, None, None]
    ac, bc = a.components, b.components
    for i in range(4):
        if not ac[i]:
            continue
        for j in range(4):
            if not bc[j]:
                continue
            term = ac[i] * bc[j]
            f = _basis_factor(ctx, i, j)
            if f is not None:
                term = term * RatFunc.from_poly(f)
            k = i ^ j
            out[k] = term if out[k] is None else out[k] + term
    return ExtElem._make(ctx, (c if c is not None else _RF_ZERO for c in out))


def _inv_in_w1(p: RatFunc, q: RatFunc, ctx: ExtCtx) -> tuple[RatFunc, RatFunc]:
    """Inverse of ``p + q*w1`` in Q(x)(w1) via its norm ``p^2 - q^2 d1``."""
    if not q:
        return p.inverse(), _RF_ZERO
    norm = p * p - q * q * RatFunc.from_poly(ctx.disc(1))
    if not norm:
        raise DomainError("zero divisor in Q(x)(w1)")
    inv_norm = norm.inverse()
    return p * inv_norm, -q * inv_norm


def ext_inv(a: ExtElem) -> ExtElem:
    """Tower inversion: conjugate over w2, then invert the norm in Q(x)(w1)."""
    if a.is_zero():
        raise DomainError("inverse of zero")
    ctx = a.ctx
    c00, c10, c01, c11 = a.components
    # single-component elements invert directly
    nz = [i for i in range(4) if a.components[i]]
    if len(nz) == 1:
        i = nz[0]
        c = a.components[i]
        if i == 0:
            return ExtElem._make(ctx, (c.inverse(), _RF_ZERO, _RF_ZERO, _RF_ZERO))
        # (c*w)^-1 = w / (c * w^2)
        w2sq = _basis_factor(ctx, i, i)
        comps = [_RF_ZERO] * 4
        comps[i] = (c * RatFunc.from_poly(w2sq)).inverse()
        return ExtElem._make(ctx, comps)
    if not (c01 or c11):
        p, q = _inv_in_w1(c00, c10, ctx)
        return ExtElem._make(ctx, (p, q, _RF_ZERO, _RF_ZERO))
    # a = A + B*w2 with A, B in Q(x)(w1); a^-1 = (A - B*w2) / (A^2 - B^2 d2)
    d1 = RatFunc.from_poly(ctx.disc(1)) if ctx.d1 is not None else _RF_ZERO
    d2 = RatFunc.from_poly(ctx.disc(2))
    # A^2 - d2 B^2 = (c00^2 + d1 c10^2 - d2 c01^2 - d1 d2 c11^2) + (2 c00 c10 - 2 d2 c01 c11) w1
    p = c00 * c00 + d1 * c10 * c10 - d2 * c01 * c01 - d1 * d2 * c11 * c11
    q = 2 * (c00 * c10) - 2 * d2 * c01 * c11
    if not (p or q):
        raise DomainError("zero divisor in the extension")
    ip, iq = _inv_in_w1(p, q, ctx)
    conj = ExtElem._make(ctx, (c00, c10, -c01, -c11))
    return ext_mul(conj, ExtElem._make(ctx, (ip, iq, _RF_ZERO, _RF_ZERO)))


def ext_pow(a: ExtElem, e: int) -> ExtElem:
    """Integer power by repeated squaring; negative exponents go through :func:`ext_inv`."""
    ctx = a.ctx
    if e == 0:
        return ExtElem.const(ctx, 1)
    if a.is_zero():
        if e < 0:
            raise DomainError("zero raised to a negative power")
        return a
    nz = [i for i in range(4) if a.components[i]]
    if len(nz) == 1:
        # (c*w)^e = c^e * (w^2)^(e//2) * w^(e%2)
        i = nz[0]
        c = a.components[i] ** e
        if i == 0:
            return ExtElem._make(ctx, (c, _RF_ZERO, _RF_ZERO, _RF_ZERO))
        sq = RatFunc.from_poly(_basis_factor(ctx, i, i))
        c = c * sq ** (e // 2)
        comps = [_RF_ZERO] * 4
        comps[i if e % 2 else 0] = c
        return ExtElem._make(ctx, comps)
    if e < 0:
        a, e = ext_inv(a), -e
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else ext_mul(result, base)
        e >>= 1
        if e:
            base = ext_mul(base, base)
    return result


def ext_project_poly(a: ExtElem) -> Poly:
    """The element as a radical-free polynomial, or :class:`NotAPolynomial`."""
    c00 = a.components[0]
    if not a.is_rational() or not c00.is_poly():
        raise NotAPolynomial(a)
    return c00.num


def ext_eval_poly(p: Poly, v: ExtElem) -> ExtElem:
    """Horner evaluation of ``p`` at an extension element."""
    coeffs = p.coeffs
    acc = ExtElem.const(v.ctx, 0)
    for c in reversed(coeffs):
        acc = ext_mul(acc, v) + c
    return acc


def format_ext(a: ExtElem) -> str:
    """Canonical text: nonzero components joined as ``c + (c)*w1 + ...``."""
    parts = []
    for i, c in enumerate(a.components):
        if not c:
            continue
        s = format_ratfunc(c)
        if i == 0:
            parts.append(s)
        elif c == RatFunc.const(1):
            parts.append(_NAMES[i])
        elif c == RatFunc.const(-1):
            parts.append("-" + _NAMES[i])
        else:
            parts.append(f"({s})*{_NAMES[i]}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def alpha(ctx: ExtCtx = CHEB_FIB_CTX) -> ExtElem:
    return ExtElem(ctx, X, 1)


def beta(ctx: ExtCtx = CHEB_FIB_CTX) -> ExtElem:
    return ExtElem(ctx, X, -1)


def rho(ctx: ExtCtx = CHEB_FIB_CTX) -> ExtElem:
    return ExtElem(ctx, X * Fraction(1, 2), 0, Fraction(1, 2))


def sigma(ctx: ExtCtx = CHEB_FIB_CTX) -> ExtElem:
    return ExtElem(ctx, X * Fraction(1, 2), 0, Fraction(-1, 2))
