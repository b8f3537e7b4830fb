from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chebfib.arith import X, RatFunc
from chebfib.idl import (
    ArityError, EvalError, LexError, NonAffineError, ParseError, eval_identity, eval_sides,
    format_expr, format_file, format_identity, parse, parse_expr, parse_file,
)
from chebfib.idl.ast import (
    Add, Affine, IntConst, MetaVar, Mul, Neg, Pow, SeqRef, SignPow, Sub, Sum, Var,
)
from chebfib.idl.evaluator import Evaluator, binom
from chebfib.quadext import ExtCtx

THM11 = "F(n,x) = T(n-1,x) - sum(k,1,n-2,(x*T(n-1-k,x)-2*T(n-2-k,x))*F(k,x)) for n >= 1"
THM22 = ("2*x*F(2*n+1,x) = U(2*n+1,x) - U(2*n-1,x) - (3*x^2-4)*"
         "sum(k,0,n-1,F(2*k+1,x)*U(2*n-2*k-1,x)) for n >= 1")
THM41 = ("sum(k,0,n-1,binom(n,k)*sqrt(x^2+4)^(n-k-1)*(1-sign(n-k))*T(k,x)) = "
         "sum(k,1,n,binom(n,k)*2^(k-1)*sqrt(x^2-1)^(n-k)*(1+sign(n-k))*F(k,x)) for n >= 0")


def test_parse_thm11_structure():
    ident = parse(THM11)
    assert ident.n_min == 1
    assert ident.lhs == SeqRef("F", Affine.of("n"), Var())
    assert isinstance(ident.rhs, Sub) and isinstance(ident.rhs.right, Sum)
    s = ident.rhs.right
    assert s.var == "k" and s.lo == Affine.of(1) and s.hi == Affine.make({"n": 1}, -2)


def test_whitespace_and_comments_ignored():
    spaced = "F( n , x )=T(n - 1,x)-sum(k, 1, n-2, (x*T(n-1-k,x) - 2*T(n-2-k,x)) * F(k,x))  for n>=1  # note"
    assert parse(spaced) == parse(THM11)


@pytest.mark.parametrize("text, exc, fragment", [
    ("F(n,x) = sum(k,0,n-1,", ParseError, "sum("),
    ("T(n*k, x) = 0 for n >= 0", NonAffineError, ""),
    ("T(n, x, x) = 0 for n >= 0", ArityError, ""),
    ("Fib(n, x) = 0 for n >= 0", ArityError, ""),
    ("F(n,x) = $ for n >= 0", LexError, ""),
    ("F(n,x) = q for n >= 0", ParseError, "q"),
    ("F(n,x) = F(n,x)", ParseError, ""),
])
def test_parse_errors(text, exc, fragment):
    with pytest.raises(exc) as info:
        parse(text)
    assert fragment in str(info.value)
    assert info.value.line >= 1 and info.value.col >= 1


def test_unclosed_sum_location():
    with pytest.raises(ParseError) as info:
        parse("F(n,x) = sum(k,0,n-1,")
    assert "sum(" in info.value.message
    assert info.value.kind == "syntax error"


def test_power_binds_tighter_than_minus():
    assert parse_expr("-x^2") == Neg(Pow(Var(), Affine.of(2)))
    assert parse_expr("2^n") == Pow(IntConst(2), Affine.of("n"))


def test_free_sum_variable_rejected():
    with pytest.raises(ParseError, match="unbound"):
        parse_expr("2^k")


def test_round_trip_fixed_point():
    ident = parse(THM11)
    text = format_identity(ident)
    assert parse(text) == ident
    assert format_identity(parse(text)) == text


def test_format_sign_exact():
    assert format_expr(parse_expr("sum(k,0,n,sign(n-k))")) == "sum(k, 0, n, sign(n-k))"
    assert "sign(n-k)" in format_identity(parse(THM41))


def test_format_normalizes():
    a = format_identity(parse("F(n,x)=((x))*(F(n-1,x))+F(n-2,x)for n>=2"))
    b = format_identity(parse("F( n , x ) = x*F(n-1,x) + (F(n-2,x)) for n >= 2"))
    assert a == b == "F(n, x) = x*F(n-1, x) + F(n-2, x) for n >= 2"


def test_thm11_residual_zero_at_3():
    assert eval_identity(parse(THM11), 3).is_zero()


def test_thm41_small_n_by_hand():
    # n=2: left sum keeps k=1 only: 2*1*2*x; right keeps k=2 only: 1*2*1*2*F_2 = 4x
    lhs, rhs = eval_sides(parse(THM41), 2)
    assert lhs.c00 == RatFunc.from_poly(4 * X) and lhs.is_rational()
    assert rhs.c00 == RatFunc.from_poly(4 * X) and rhs.is_rational()


def test_below_range_boundary():
    # at n=1 the THM1.1 sum is empty and both sides reduce to seed terms
    assert eval_identity(parse(THM11), 1).is_zero()


def _ev():
    return Evaluator(ExtCtx(X * X - 1, X * X + 4))


def test_sum_semantics():
    body = MetaVar("k")
    ev = _ev()
    empty = Sum("k", Affine.of(3), Affine.of(2), body)
    single = Sum("k", Affine.of(3), Affine.of(3), body)
    assert ev.eval(empty, {}).is_zero()
    assert ev.eval(single, {}) == ev.const(3)


@pytest.mark.parametrize("e", range(-6, 7))
def test_signpow(e):
    assert _ev().eval(SignPow(Affine.of(e)), {}) == _ev().const(1 if e % 2 == 0 else -1)


def test_binom_edges():
    assert binom(5, 2) == 10 and binom(5, -1) == 0 and binom(5, 6) == 0
    with pytest.raises(EvalError):
        binom(-1, 0)


@pytest.mark.parametrize("text", [
    "sqrt(x+7) = 0 for n >= 0",          # unbound radical
    "F(n-2,x) = 0 for n >= 0",           # negative index at n=0
    "(x-x)^(n-1) = 0 for n >= 0",        # zero to a negative power
    "x/(x-x) = 0 for n >= 0",            # division by zero
])
def test_evaluation_errors(text):
    with pytest.raises(EvalError):
        eval_identity(parse(text), 0)


def test_below_n_min_rejected():
    with pytest.raises(ValueError):
        eval_identity(parse(THM11), 0)


def test_named_constants():
    ctx = ExtCtx(X * X - 1, X * X + 4)
    a = _ev().eval(parse_expr("alpha(x)*beta(x)"), {})
    assert a == _ev().const(1)
    r = _ev().eval(parse_expr("rho(x)*sigma(x)"), {})
    assert r == _ev().const(-1)
    assert eval_identity(parse("alpha(x)^n + beta(x)^n = 2*T(n,x) for n >= 0"), 7, ctx).is_zero()


def test_evaluated_sequence_argument():
    assert eval_identity(parse("F(n,3*x) = 3*x*F(n-1,3*x) + F(n-2,3*x) for n >= 2"), 6).is_zero()


# -- hand-coded closed-loop oracles ---------------------------------------

def _cheb(kind_first, n, x):
    a, b = Fraction(1), (x if kind_first else 2 * x)
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, 2 * x * b - a
    return b


def _fib(n, x):
    a, b = Fraction(0), Fraction(1)
    for _ in range(n):
        a, b = b, x * b + a
    return a


def _thm11_sides(n, x):
    T = lambda i: _cheb(True, i, x)
    rhs = T(n - 1) - sum(((x * T(n - 1 - k) - 2 * T(n - 2 - k)) * _fib(k, x) for k in range(1, n - 1)),
                         Fraction(0))
    return _fib(n, x), rhs


def _thm22_sides(n, x):
    U = lambda i: _cheb(False, i, x)
    s = sum((_fib(2 * k + 1, x) * U(2 * n - 2 * k - 1) for k in range(n)), Fraction(0))
    return 2 * x * _fib(2 * n + 1, x), U(2 * n + 1) - U(2 * n - 1) - (3 * x * x - 4) * s


@pytest.mark.parametrize("text, oracle", [(THM11, _thm11_sides), (THM22, _thm22_sides)])
def test_evaluator_matches_closed_loop(text, oracle):
    ident = parse(text)
    for n in range(ident.n_min, 16):
        lhs, rhs = eval_sides(ident, n)
        for x in (Fraction(2), Fraction(-3), Fraction(1, 3)):
            want_l, want_r = oracle(n, x)
            assert want_l == want_r
            assert lhs.c00.eval(x) == want_l
            assert rhs.c00.eval(x) == want_r


def test_closed_loop_detects_mutation():
    bad = parse(THM22.replace("3*x^2-4", "3*x^2-5"))
    assert not eval_identity(bad, 1).is_zero()


# -- files -----------------------------------------------------------------

def test_parse_file_directives_and_labels():
    src = ("# sample\n"
           "radicals: x^2+4 -> w1, x^2-1 -> w2\n"
           "anchor: first one\n"
           "A1: F(n,x) = x*F(n-1,x) + F(n-2,x) for n >= 2\n"
           "\n"
           "T(n,x) = 2*x*T(n-1,x) - T(n-2,x) for n >= 2\n")
    entries = parse_file(src)
    assert [e.label for e in entries] == ["A1", "line6"]
    assert entries[0].anchor == "first one" and entries[1].anchor == ""
    assert entries[0].identity.radical_bindings == ((X * X + 4, "w1"), (X * X - 1, "w2"))
    again = parse_file(format_file(entries))
    assert [(e.label, e.identity, e.anchor) for e in again] == \
        [("A1", entries[0].identity, "first one"), ("line6", entries[1].identity, "")]


def test_bad_radicals_directive():
    with pytest.raises(ParseError):
        parse_file("radicals: x^2-1 -> w3\nF(n,x) = F(n,x) for n >= 0\n")


# -- random round trips ----------------------------------------------------

_affines = st.builds(
    lambda a, c: Affine.make({"n": a}, c), st.integers(-3, 3), st.integers(-5, 5),
)
_leaves = st.one_of(
    st.integers(0, 9).map(IntConst), st.just(Var()), st.just(MetaVar("n")),
    st.builds(SignPow, _affines),
    st.builds(lambda kind, i: SeqRef(kind, i, Var()), st.sampled_from("TUFBC"), _affines),
)


def _extend(children):
    return st.one_of(
        st.builds(Add, children, children), st.builds(Sub, children, children),
        st.builds(Mul, children, children), st.builds(Neg, children),
        st.builds(Pow, children, st.integers(0, 4).map(Affine.of)),
        st.builds(lambda b, a: Sum("k", Affine.of(0), a, b), children, _affines),
    )


@given(st.recursive(_leaves, _extend, max_leaves=12))
def test_random_expression_round_trip(e):
    text = format_expr(e)
    assert parse_expr(text) == e
    assert format_expr(parse_expr(text)) == text
