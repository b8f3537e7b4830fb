"""Immutable AST for identity statements."""
from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from typing import Iterator, Optional, Union

from ..arith import Poly, X

SEQ_CALLS = ("T", "U", "F", "B", "C")
NUMSEQ_CALLS = ("Fib", "Luc", "Bal")
NAMED_CONSTS = ("alpha", "beta", "rho", "sigma")
RESERVED = frozenset(SEQ_CALLS + NUMSEQ_CALLS + NAMED_CONSTS + ("binom", "sum", "sqrt", "sign", "x", "for"))


@dataclass(frozen=True)
class Affine:
    """Integer-affine index expression ``sum(c_v * v) + const``."""

    terms: tuple[tuple[str, int], ...] = ()
    const: int = 0

    @staticmethod
    def _order(var: str):
        return (var != "n", var)

    @classmethod
    def make(cls, coeffs: dict[str, int], const: int = 0) -> "Affine":
        terms = tuple(sorted(((v, c) for v, c in coeffs.items() if c), key=lambda t: cls._order(t[0])))
        return cls(terms, const)

    @classmethod
    def of(cls, value: Union[int, str]) -> "Affine":
        if isinstance(value, int):
            return cls((), value)
        return cls(((value, 1),), 0)

    def as_dict(self) -> dict[str, int]:
        return dict(self.terms)

    def __add__(self, other: "Affine") -> "Affine":
        d = self.as_dict()
        for v, c in other.terms:
            d[v] = d.get(v, 0) + c
        return Affine.make(d, self.const + other.const)

    def __neg__(self) -> "Affine":
        return Affine(tuple((v, -c) for v, c in self.terms), -self.const)

    def __sub__(self, other: "Affine") -> "Affine":
        return self + (-other)

    def scale(self, k: int) -> "Affine":
        return Affine.make({v: c * k for v, c in self.terms}, self.const * k)

    def is_constant(self) -> bool:
        return not self.terms

    def variables(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.terms)

    def evaluate(self, env: dict[str, int]) -> int:
        return self.const + sum(c * env[v] for v, c in self.terms)


class Expr:
    """Base class of expression nodes."""

    def children(self) -> Iterator["Expr"]:
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, Expr):
                yield v


@dataclass(frozen=True)
class IntConst(Expr):
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("integer constants are nonnegative; negate with Neg")


@dataclass(frozen=True)
class Var(Expr):
    """The polynomial variable ``x``."""


@dataclass(frozen=True)
class MetaVar(Expr):
    name: str


@dataclass(frozen=True)
class SeqRef(Expr):
    kind: str
    index: Affine
    arg: Expr


@dataclass(frozen=True)
class NumSeqRef(Expr):
    kind: str
    index: Affine


@dataclass(frozen=True)
class Binom(Expr):
    top: Affine
    bottom: Affine


@dataclass(frozen=True)
class Sum(Expr):
    var: str
    lo: Affine
    hi: Affine
    body: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: Affine


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sqrt(Expr):
    radicand: Expr


@dataclass(frozen=True)
class NamedConst(Expr):
    """alpha, beta, rho or sigma evaluated at ``arg``."""

    name: str
    arg: Expr


@dataclass(frozen=True)
class SignPow(Expr):
    """``(-1)^exponent``."""

    exponent: Affine


BINARY = (Add, Sub, Mul, Div)

DEFAULT_RADICALS: tuple[tuple[Poly, str], ...] = ((X * X - 1, "w1"), (X * X + 4, "w2"))


@dataclass(frozen=True)
class Identity:
    lhs: Expr
    rhs: Expr
    n_min: int
    radical_bindings: tuple[tuple[Poly, str], ...] = field(default=DEFAULT_RADICALS)


def walk(e: Expr) -> Iterator[Expr]:
    yield e
    for c in e.children():
        yield from walk(c)


def identity_nodes(ident: Identity) -> Iterator[Expr]:
    yield from walk(ident.lhs)
    yield from walk(ident.rhs)


def infer_mode(ident: Identity) -> str:
    """symbolic-ext if radicals appear, symbolic-poly if x appears, else numeric."""
    nodes = list(identity_nodes(ident))
    if any(isinstance(e, (Sqrt, NamedConst)) for e in nodes):
        return "symbolic-ext"
    if any(isinstance(e, Var) for e in nodes):
        return "symbolic-poly"
    return "numeric"


def int_sites(ident: Identity) -> list[tuple[str, int]]:
    """Positions ``(side, preorder index)`` of every integer constant."""
    out = []
    for side in ("lhs", "rhs"):
        for i, e in enumerate(walk(getattr(ident, side))):
            if isinstance(e, IntConst):
                out.append((side, i))
    return out


def _coefficient_preorder(e: Expr, counter: list[int], out: list[int], inside: bool) -> None:
    idx = counter[0]
    counter[0] += 1
    if isinstance(e, IntConst) and not inside:
        out.append(idx)
    for f in fields(e):
        v = getattr(e, f.name)
        if isinstance(v, Expr):
            shielded = inside or isinstance(e, (Sqrt, NamedConst)) or (isinstance(e, SeqRef) and f.name == "arg")
            _coefficient_preorder(v, counter, out, shielded)


def coefficient_sites(ident: Identity) -> list[tuple[str, int]]:
    """Integer constants acting as coefficients.

    Excludes constants inside sequence arguments (``F(k, 3*x)``) and radicands,
    which change what is being evaluated rather than how it is weighted.
    """
    out = []
    for side in ("lhs", "rhs"):
        idx: list[int] = []
        _coefficient_preorder(getattr(ident, side), [0], idx, False)
        out.extend((side, i) for i in idx)
    return out


def _rebuild(e: Expr, target: int, counter: list[int], new_value: int) -> Expr:
    idx = counter[0]
    counter[0] += 1
    if idx == target:
        if not isinstance(e, IntConst):
            raise ValueError("mutation site is not an integer constant")
        return IntConst(new_value)
    changes = {}
    for f in fields(e):
        v = getattr(e, f.name)
        if isinstance(v, Expr):
            changes[f.name] = _rebuild(v, target, counter, new_value)
    return replace(e, **changes) if changes else e


def mutate_int(ident: Identity, site: tuple[str, int], new_value: Optional[int] = None) -> Identity:
    """Copy of ``ident`` with one integer constant replaced (default: incremented)."""
    side, target = site
    node = list(walk(getattr(ident, side)))[target]
    if new_value is None:
        new_value = node.value + 1
    new_side = _rebuild(getattr(ident, side), target, [0], new_value)
    return replace(ident, **{side: new_side})
