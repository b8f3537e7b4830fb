"""Exact scalar, polynomial and rational-function arithmetic over Q.

Scalars are :class:`fractions.Fraction`.  A :class:`Poly` keeps its
coefficients as a tuple of integer numerators over one shared positive
denominator, which keeps convolution in machine-friendly integer arithmetic
while the public ``coeffs`` view is a tuple of Fractions.

A :class:`RatFunc` is always stored in canonical form: coprime numerator and
denominator, denominator monic.  Equality is therefore structural.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]

#: degree of the zero polynomial; compares below every integer
ZERO_DEGREE = -math.inf


class DomainError(ArithmeticError):
    """Raised for mathematically undefined operations (0^-1, gcd(0, 0), ...)."""


def _trim(nums: list[int]) -> list[int]:
    while nums and nums[-1] == 0:
        nums.pop()
    return nums


class Poly:
    """Dense univariate polynomial in ``x`` with rational coefficients.

    ``Poly([c0, c1, c2])`` is ``c0 + c1*x + c2*x^2``.
    """

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        nums = [int(c * den) for c in fr]
        self._set(nums, den)

    def _set(self, nums: list[int], den: int) -> None:
        nums = _trim(nums)
        if not nums:
            self._num, self._den = (), 1
        else:
            if den < 0:
                nums = [-a for a in nums]
                den = -den
            g = math.gcd(den, *nums)
            if g != 1:
                nums = [a // g for a in nums]
                den //= g
            self._num, self._den = tuple(nums), den
        self._hash = None

    @classmethod
    def _raw(cls, nums: Sequence[int], den: int = 1) -> "Poly":
        p = cls.__new__(cls)
        p._set(list(nums), den)
        return p

    @classmethod
    def constant(cls, c: Scalar) -> "Poly":
        c = Fraction(c)
        return cls._raw([c.numerator], c.denominator)

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "Poly":
        c = Fraction(c)
        return cls._raw([0] * k + [c.numerator], c.denominator)

    @classmethod
    def x(cls) -> "Poly":
        return cls._raw([0, 1])

    # -- views ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self._den) for a in self._num)

    @property
    def degree(self) -> int | float:
        return len(self._num) - 1 if self._num else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self._num

    def is_constant(self) -> bool:
        return len(self._num) <= 1

    def lc(self) -> Fraction:
        if not self._num:
            return Fraction(0)
        return Fraction(self._num[-1], self._den)

    def constant_term(self) -> Fraction:
        return Fraction(self._num[0], self._den) if self._num else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self._num):
            return Fraction(self._num[i], self._den)
        return Fraction(0)

    def __len__(self) -> int:
        return len(self._num)

    def integer_parts(self) -> tuple[tuple[int, ...], int]:
        """``(numerators, denominator)`` with ``self == Poly(numerators) / denominator``."""
        return self._num, self._den

    # -- comparison ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._num)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- ring operations -----------------------------------------------

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._num:
            return self
        if not self._num:
            return other
        d1, d2 = self._den, other._den
        if d1 == d2:
            a, b, den = self._num, other._num, d1
        else:
            g = math.gcd(d1, d2)
            s1, s2 = d2 // g, d1 // g
            a = [c * s1 for c in self._num]
            b = [c * s2 for c in other._num]
            den = d1 * s1
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(out, den)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw([-c for c in self._num], self._den)

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise DomainError("negative power of a polynomial")
        result = Poly.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: Scalar) -> "Poly":
        c = Fraction(c)
        return Poly._raw([a * c.numerator for a in self._num], self._den * c.denominator)

    def monic(self) -> "Poly":
        if not self._num:
            return self
        lead = self._num[-1]
        return Poly._raw(list(self._num), lead)

    def primitive(self) -> tuple[int, ...]:
        """Integer primitive part with positive leading coefficient."""
        if not self._num:
            return ()
        g = math.gcd(*self._num)
        if self._num[-1] < 0:
            g = -g
        return tuple(a // g for a in self._num)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division over Q."""
        if not other._num:
            raise DomainError("polynomial division by zero")
        r = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        lead = b[-1]
        if len(r) - 1 < db:
            return Poly(), self
        q = [Fraction(0)] * (len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c:
                c = c / lead
                q[i - db] = c
                for j in range(db + 1):
                    r[i - db + j] -= c * b[j]
        return Poly(q), Poly(r[:db])

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of a division known to be exact; raises if it is not."""
        if not other._num:
            raise DomainError("polynomial division by zero")
        if not self._num:
            return self
        ga, gb = math.gcd(*self._num), math.gcd(*other._num)
        q = _primitive_div([c // ga for c in self._num], [c // gb for c in other._num])
        if q is None:
            raise ArithmeticError("inexact polynomial division")
        # (ga*pA/da) / (gb*pB/db) = q * ga*db / (gb*da)
        return Poly._raw(q, 1).scale(Fraction(ga * other._den, gb * self._den))

    # -- evaluation ----------------------------------------------------

    def __call__(self, v):
        if isinstance(v, (int, Fraction)):
            return poly_eval_rational(self, Fraction(v))
        return horner(self, v)

    def compose(self, inner: "Poly") -> "Poly":
        if len(inner._num) == 2 and inner._num[0] == 0:
            # scaling x -> c*x: coefficient i picks up c^i
            c = Fraction(inner._num[1], inner._den)
            out, p = [], Fraction(1)
            for a in self.coeffs:
                out.append(a * p)
                p *= c
            return Poly(out)
        return horner(self, inner)


def horner(p: Poly, v):
    """Evaluate ``p`` at ``v`` for any ring element ``v`` supporting + and *."""
    coeffs = p.coeffs
    if not coeffs:
        return v * 0
    acc = v * 0 + coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * v + c
    return acc


X = Poly.x()
ONE = Poly.constant(1)
ZERO = Poly()


def poly_mul(a: Poly, b: Poly) -> Poly:
    """Schoolbook product; the zero polynomial absorbs."""
    an, bn = a._num, b._num
    if not an or not bn:
        return ZERO
    if len(an) < len(bn):
        an, bn = bn, an
    if len(bn) == 1:
        c = bn[0]
        return Poly._raw([v * c for v in an], a._den * b._den)
    out = [0] * (len(an) + len(bn) - 1)
    for j, bj in enumerate(bn):
        if bj:
            for i, ai in enumerate(an):
                out[i + j] += ai * bj
    return Poly._raw(out, a._den * b._den)


def poly_eval_rational(p: Poly, v: Fraction) -> Fraction:
    """Exact Horner evaluation at a rational point."""
    v = Fraction(v)
    num, den = p._num, p._den
    if not num:
        return Fraction(0)
    vp, vq = v.numerator, v.denominator
    # sum a_i vp^i vq^(d-i) over vq^d * den
    acc, qpow = 0, 1
    for a in reversed(num):
        acc = acc * vp + a * qpow
        qpow *= vq
    return Fraction(acc, den * vq ** (len(num) - 1))


# -- integer polynomial helpers (tuples, low -> high) -----------------------

def _primitive_div(a: Sequence[int], b: Sequence[int]):
    """Quotient of integer polys when ``b`` divides ``a`` over Z (Gauss), else None."""
    r = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(r) - 1 < db:
        return None if any(r) else []
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c:
            qc, rem = divmod(c, lead)
            if rem:
                return None
            q[i - db] = qc
            for j in range(db + 1):
                r[i - db + j] -= qc * b[j]
    if any(r[:db]):
        return None
    return q


def _int_eval(f: Sequence[int], v: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = acc * v + c
    return acc


def _interpolate(h: int, v: int) -> list[int]:
    """Recover an integer polynomial from its value at a large point (balanced digits)."""
    out = []
    half = v // 2
    while h:
        c = h % v
        if c > half:
            c -= v
        out.append(c)
        h = (h - c) // v
    return out


def _heu_gcd(f: tuple[int, ...], g: tuple[int, ...]):
    """Heuristic integer polynomial gcd (GCDHEU); ``None`` when it gives up."""
    nf = max(abs(c) for c in f)
    ng = max(abs(c) for c in g)
    bound = 2 * min(nf, ng) + 29
    v = max(min(bound, 99 * math.isqrt(bound)),
            2 * min(nf // abs(f[-1]), ng // abs(g[-1])) + 2)
    for _ in range(6):
        ff, gg = _int_eval(f, v), _int_eval(g, v)
        if ff and gg:
            h = math.gcd(ff, gg)
            cand = _interpolate(h, v)
            if cand:
                c = math.gcd(*cand)
                if cand[-1] < 0:
                    c = -c
                cand = [a // c for a in cand]
                if _primitive_div(f, cand) is not None and _primitive_div(g, cand) is not None:
                    return tuple(cand)
            cof = _interpolate(ff // h, v)
            if cof:
                h2 = _primitive_div(f, cof)
                if h2 is not None and h2:
                    c = math.gcd(*h2)
                    if h2[-1] < 0:
                        c = -c
                    h2 = [a // c for a in h2]
                    if _primitive_div(g, h2) is not None:
                        return tuple(h2)
        v = 73794 * v * math.isqrt(math.isqrt(v)) // 27011
    return None


def euclid_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the classical Euclidean algorithm over Q."""
    if a.is_zero() and b.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
        b = b.monic() if not b.is_zero() else b
    return a.monic()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor over Q.

    Uses a heuristic integer gcd on the primitive parts and falls back to
    :func:`euclid_gcd` whenever the heuristic gives up.
    """
    if a.is_zero() and b.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return ONE
    pa, pb = a.primitive(), b.primitive()
    if pa == pb:
        return a.monic()
    h = _heu_gcd(pa, pb)
    if h is None:
        return euclid_gcd(a, b)
    return Poly._raw(list(h)).monic()


# -- rational functions -----------------------------------------------------

class RatFunc:
    """Element of Q(x) as a normalized quotient ``num/den``."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly | Scalar = 0, den: Poly | Scalar = 1, *, _normalized: bool = False):
        if not isinstance(num, Poly):
            num = Poly.constant(num)
        if not isinstance(den, Poly):
            den = Poly.constant(den)
        if not _normalized:
            if den.is_zero():
                raise DomainError("rational function with zero denominator")
            if num.is_zero():
                num, den = ZERO, ONE
            else:
                if not den.is_constant():
                    g = poly_gcd(num, den)
                    if not g.is_constant():
                        num, den = num.exact_div(g), den.exact_div(g)
                lead = den.lc()
                if lead != 1:
                    num, den = num.scale(1 / lead), den.scale(1 / lead)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, ONE, _normalized=True)

    @classmethod
    def const(cls, c: Scalar) -> "RatFunc":
        return cls(Poly.constant(c), ONE, _normalized=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> Poly:
        if not self.is_poly():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Poly)):
            return self == _coerce_rf(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __repr__(self) -> str:
        return f"RatFunc({format_ratfunc(self)!r})"

    def __str__(self) -> str:
        return format_ratfunc(self)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _normalized=True)

    def __add__(self, other) -> "RatFunc":
        other = _coerce_rf(other)
        if other is NotImplemented:
            return other
        return ratfunc_arith(self, other, "add")

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        other = _coerce_rf(other)
        if other is NotImplemented:
            return other
        return ratfunc_arith(self, other, "sub")

    def __rsub__(self, other) -> "RatFunc":
        other = _coerce_rf(other)
        if other is NotImplemented:
            return other
        return ratfunc_arith(other, self, "sub")

    def __mul__(self, other) -> "RatFunc":
        other = _coerce_rf(other)
        if other is NotImplemented:
            return other
        return ratfunc_arith(self, other, "mul")

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = _coerce_rf(other)
        if other is NotImplemented:
            return other
        return ratfunc_arith(self, other, "div")

    def __rtruediv__(self, other) -> "RatFunc":
        other = _coerce_rf(other)
        if other is NotImplemented:
            return other
        return ratfunc_arith(other, self, "div")

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DomainError("inverse of the zero rational function")
        num, den = self.den, self.num
        lead = den.lc()
        return RatFunc(num.scale(1 / lead), den.scale(1 / lead), _normalized=True)

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inverse() ** (-e)
        # powers of a reduced fraction stay reduced
        return RatFunc(self.num ** e, self.den ** e, _normalized=True)

    def eval(self, v: Fraction) -> Fraction:
        d = poly_eval_rational(self.den, v)
        if d == 0:
            raise DomainError(f"pole at {v}")
        return poly_eval_rational(self.num, v) / d


def _coerce_rf(v):
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, Poly):
        return RatFunc.from_poly(v)
    if isinstance(v, (int, Fraction)):
        return RatFunc.const(v)
    return NotImplemented


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Field operation ``op`` in {add, sub, mul, div}, result re-normalized.

    Uses Henrici-style partial gcds so the full numerator/denominator gcd is
    never recomputed from scratch.
    """
    if op == "sub":
        b, op = -b, "add"
    elif op == "div":
        if b.is_zero():
            raise DomainError("division by the zero rational function")
        b, op = b.inverse(), "mul"
    if op == "add":
        if a.is_zero():
            return b
        if b.is_zero():
            return a
        if a.den == b.den:
            num = a.num + b.num
            if a.den.is_constant():
                return RatFunc(num, a.den, _normalized=True)
            return RatFunc(num, a.den)
        g = poly_gcd(a.den, b.den)
        if g.is_constant():
            num = a.num * b.den + b.num * a.den
            return RatFunc(num, a.den * b.den, _normalized=True)
        ad, bd = a.den.exact_div(g), b.den.exact_div(g)
        num = a.num * bd + b.num * ad
        if num.is_zero():
            return RatFunc()
        h = poly_gcd(num, g)
        if not h.is_constant():
            num, g = num.exact_div(h), g.exact_div(h)
        return RatFunc(num, ad * bd * g, _normalized=True)
    if op == "mul":
        if a.is_zero() or b.is_zero():
            return RatFunc()
        an, ad, bn, bd = a.num, a.den, b.num, b.den
        if not bd.is_constant() and not an.is_constant():
            g = poly_gcd(an, bd)
            if not g.is_constant():
                an, bd = an.exact_div(g), bd.exact_div(g)
        if not ad.is_constant() and not bn.is_constant():
            g = poly_gcd(bn, ad)
            if not g.is_constant():
                bn, ad = bn.exact_div(g), ad.exact_div(g)
        num, den = an * bn, ad * bd
        lead = den.lc()
        if lead != 1:
            num, den = num.scale(1 / lead), den.scale(1 / lead)
        return RatFunc(num, den, _normalized=True)
    raise ValueError(f"unknown operation {op!r}")


# -- canonical printing -----------------------------------------------------

def _format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly, var: str = "x") -> str:
    """Descending powers, explicit ``*``, ``x^k``, rationals as ``p/q``."""
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = _format_scalar(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{_format_scalar(a)}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def format_ratfunc(r: RatFunc) -> str:
    if r.den == ONE:
        return format_poly(r.num)
    return f"({format_poly(r.num)})/({format_poly(r.den)})"
