"""Exact evaluation of identity ASTs in the biquadratic extension."""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Optional

from ..arith import X, DomainError, Poly, RatFunc, horner
from ..quadext import BARE_CTX, ExtCtx, ExtElem, ext_eval_poly, ratfunc_sqrt
from ..sequences import NumSeqKind, SeqKind, num_seq, seq_poly
from .ast import (
    Add, Affine, Binom, Div, Expr, Identity, IntConst, MetaVar, Mul, NamedConst,
    Neg, NumSeqRef, Pow, SeqRef, SignPow, Sqrt, Sub, Sum, Var,
)


class EvalError(ArithmeticError):
    """The statement cannot be evaluated at this n (as opposed to being false)."""


_NUM_KINDS = {"Fib": NumSeqKind.FIB, "Luc": NumSeqKind.LUC, "Bal": NumSeqKind.BAL}


def context_for(ident: Identity) -> ExtCtx:
    bound = {name: poly for poly, name in ident.radical_bindings}
    return ExtCtx(bound.get("w1"), bound.get("w2"))


def _affine_vars(a: Affine) -> frozenset[str]:
    return a.variables()


class Evaluator:
    """Evaluates expressions of one identity, memoizing by node and relevant bindings.

    Nodes are keyed by ``id``; the evaluator keeps the roots alive so ids stay valid.
    """

    def __init__(self, ctx: ExtCtx, roots: tuple[Expr, ...] = ()):
        self.ctx = ctx
        self._roots = roots
        self._free: dict[int, tuple[str, ...]] = {}
        self._memo: dict[tuple, ExtElem] = {}
        self._seq_cache: dict[tuple, ExtElem] = {}
        self._sqrt_cache: dict[RatFunc, ExtElem] = {}
        self._one = ExtElem.const(ctx, 1)

    # -- free variables ------------------------------------------------

    def free_vars(self, e: Expr) -> tuple[str, ...]:
        key = id(e)
        got = self._free.get(key)
        if got is not None:
            return got
        fv: set[str] = set()
        if isinstance(e, MetaVar):
            fv.add(e.name)
        elif isinstance(e, (SeqRef, NumSeqRef)):
            fv |= _affine_vars(e.index)
        elif isinstance(e, Binom):
            fv |= _affine_vars(e.top) | _affine_vars(e.bottom)
        elif isinstance(e, Pow):
            fv |= _affine_vars(e.exponent)
        elif isinstance(e, SignPow):
            fv |= _affine_vars(e.exponent)
        if isinstance(e, Sum):
            fv |= _affine_vars(e.lo) | _affine_vars(e.hi)
            fv |= set(self.free_vars(e.body)) - {e.var}
        else:
            for c in e.children():
                fv |= set(self.free_vars(c))
        out = tuple(sorted(fv))
        self._free[key] = out
        return out

    # -- evaluation ----------------------------------------------------

    def const(self, v) -> ExtElem:
        return ExtElem.const(self.ctx, v)

    def eval(self, e: Expr, env: dict[str, int]) -> ExtElem:
        if isinstance(e, (IntConst, Var)):
            return self._eval(e, env)
        try:
            key = (id(e),) + tuple(env[v] for v in self.free_vars(e))
        except KeyError as exc:
            raise EvalError(f"unbound meta-variable {exc.args[0]!r}") from None
        got = self._memo.get(key)
        if got is None:
            got = self._eval(e, env)
            self._memo[key] = got
        return got

    def index(self, a: Affine, env: dict[str, int]) -> int:
        try:
            return a.evaluate(env)
        except KeyError as exc:
            raise EvalError(f"unbound meta-variable {exc.args[0]!r}") from None

    def _eval(self, e: Expr, env: dict[str, int]) -> ExtElem:
        if isinstance(e, IntConst):
            return self.const(e.value)
        if isinstance(e, Var):
            return self.const(X)
        if isinstance(e, MetaVar):
            return self.const(self.index(Affine.of(e.name), env))
        if isinstance(e, Add):
            return self.eval(e.left, env) + self.eval(e.right, env)
        if isinstance(e, Sub):
            return self.eval(e.left, env) - self.eval(e.right, env)
        if isinstance(e, Mul):
            return self.eval(e.left, env) * self.eval(e.right, env)
        if isinstance(e, Div):
            den = self.eval(e.right, env)
            if den.is_zero():
                raise EvalError("division by zero")
            return self.eval(e.left, env) / den
        if isinstance(e, Neg):
            return -self.eval(e.operand, env)
        if isinstance(e, Pow):
            base = self.eval(e.base, env)
            k = self.index(e.exponent, env)
            if k < 0 and base.is_zero():
                raise EvalError("zero raised to a negative power")
            return base ** k
        if isinstance(e, SignPow):
            return self.const(-1 if self.index(e.exponent, env) % 2 else 1)
        if isinstance(e, Binom):
            return self.const(binom(self.index(e.top, env), self.index(e.bottom, env)))
        if isinstance(e, Sum):
            lo, hi = self.index(e.lo, env), self.index(e.hi, env)
            acc = self.const(0)
            inner = dict(env)
            for k in range(lo, hi + 1):
                inner[e.var] = k
                acc = acc + self.eval(e.body, inner)
            return acc
        if isinstance(e, SeqRef):
            return self._seq(e, env)
        if isinstance(e, NumSeqRef):
            i = self.index(e.index, env)
            if i < 0:
                raise EvalError(f"negative sequence index {e.kind}({i})")
            return self.const(num_seq(_NUM_KINDS[e.kind], i))
        if isinstance(e, Sqrt):
            return self.sqrt(self.eval(e.radicand, env))
        if isinstance(e, NamedConst):
            return self._named(e, env)
        raise TypeError(f"cannot evaluate {type(e).__name__}")

    def _seq(self, e: SeqRef, env: dict[str, int]) -> ExtElem:
        i = self.index(e.index, env)
        if i < 0:
            raise EvalError(f"negative sequence index {e.kind}({i}, ...)")
        p = seq_poly(SeqKind[e.kind], i)
        if isinstance(e.arg, Var):
            return self.const(p)
        arg = self.eval(e.arg, env)
        key = (e.kind, i, arg)
        got = self._seq_cache.get(key)
        if got is None:
            if arg.is_rational():
                r = arg.c00
                got = self.const(p.compose(r.num) if r.is_poly() else horner(p, r))
            else:
                got = ext_eval_poly(p, arg)
            self._seq_cache[key] = got
        return got

    def sqrt(self, value: ExtElem) -> ExtElem:
        """Square root of a Q(x) value, as q, q*w1, q*w2 or q*w1*w2."""
        if not value.is_rational():
            raise EvalError(f"radicand {value} is not in Q(x)")
        r = value.c00
        got = self._sqrt_cache.get(r)
        if got is not None:
            return got
        q = ratfunc_sqrt(r)
        if q is not None:
            got = self.const(q)
        else:
            d1, d2 = self.ctx.d1, self.ctx.d2
            bases = []
            if d1 is not None:
                bases.append((d1, ExtElem.w1(self.ctx)))
            if d2 is not None:
                bases.append((d2, ExtElem.w2(self.ctx)))
            if d1 is not None and d2 is not None:
                bases.append((d1 * d2, ExtElem.w1(self.ctx) * ExtElem.w2(self.ctx)))
            for d, w in bases:
                q = ratfunc_sqrt(r / RatFunc.from_poly(d))
                if q is not None:
                    got = w * q
                    break
            else:
                raise EvalError(f"radical sqrt({r}) is unbound in {self.ctx}")
        self._sqrt_cache[r] = got
        return got

    def _named(self, e: NamedConst, env: dict[str, int]) -> ExtElem:
        a = self.eval(e.arg, env)
        if e.name in ("alpha", "beta"):
            root = self.sqrt(a * a - 1)
            return a + root if e.name == "alpha" else a - root
        root = self.sqrt(a * a + 4)
        half = Fraction(1, 2)
        return (a + root) * half if e.name == "rho" else (a - root) * half


def binom(top: int, bottom: int) -> int:
    """Binomial coefficient; zero when ``bottom`` lies outside ``[0, top]``."""
    if top < 0:
        raise EvalError(f"binomial with negative top {top}")
    if bottom < 0 or bottom > top:
        return 0
    return comb(top, bottom)


def eval_sides(ident: Identity, n: int, ctx: Optional[ExtCtx] = None,
               evaluator: Optional[Evaluator] = None) -> tuple[ExtElem, ExtElem]:
    if n < ident.n_min:
        raise ValueError(f"n={n} is below the identity's lower bound {ident.n_min}")
    ev = evaluator or Evaluator(ctx or context_for(ident), (ident.lhs, ident.rhs))
    env = {"n": n}
    try:
        return ev.eval(ident.lhs, env), ev.eval(ident.rhs, env)
    except DomainError as exc:
        raise EvalError(str(exc)) from None


def eval_identity(ident: Identity, n: int, ctx: Optional[ExtCtx] = None,
                  evaluator: Optional[Evaluator] = None) -> ExtElem:
    """Residual ``lhs - rhs`` at ``n``; the zero element when the identity holds."""
    lhs, rhs = eval_sides(ident, n, ctx, evaluator)
    return lhs - rhs


def evaluator_for(ident: Identity, ctx: Optional[ExtCtx] = None) -> Evaluator:
    """An evaluator whose caches can be shared across several values of n."""
    return Evaluator(ctx or context_for(ident), (ident.lhs, ident.rhs))


def constant_poly(e: Expr) -> Poly:
    """Evaluate a closed expression (no meta-variables, no radicals) to a polynomial."""
    v = Evaluator(BARE_CTX, (e,)).eval(e, {})
    r = v.c00
    if not r.is_poly():
        raise EvalError(f"{r} is not a polynomial")
    return r.num
