import threading
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from chebfib.arith import X, Poly, poly_eval_rational
from chebfib.quadext import ExtCtx, ExtElem, ext_eval_poly
from chebfib.sequences import (
    NumSeqKind, SeqKind, chebyshev_at_four, num_seq, seq_binet, seq_explicit, seq_poly,
)

T, U, F, B, C = SeqKind.T, SeqKind.U, SeqKind.F, SeqKind.B, SeqKind.C


def fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def luc(n):
    a, b = 2, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def test_examples():
    assert seq_poly(T, 1) == X
    assert seq_poly(F, 0) == Poly([])
    assert seq_poly(U, 3) == 8 * X ** 3 - 4 * X
    assert seq_binet(T, 2) == 2 * X * X - 1
    assert seq_binet(F, 3) == X * X + 1
    assert seq_binet(C, 1) == 3 * X
    assert seq_explicit(T, 2) == 2 * X * X - 1
    assert seq_explicit(F, 5) == X ** 4 + 3 * X * X + 1
    assert seq_explicit(U, 0) == Poly([1])


def test_numbers():
    assert num_seq(NumSeqKind.FIB, 10) == 55
    assert num_seq(NumSeqKind.LUC, 0) == 2
    assert num_seq(NumSeqKind.BAL, 3) == 35
    for n in range(30):
        assert num_seq(NumSeqKind.FIB, n) == poly_eval_rational(seq_poly(F, n), Fraction(1))
        assert num_seq(NumSeqKind.BAL, n) == poly_eval_rational(seq_poly(B, n), Fraction(1))


def test_errors():
    with pytest.raises(ValueError):
        seq_poly(T, -1)
    with pytest.raises(ValueError):
        seq_explicit(B, 3)
    with pytest.raises(ValueError):
        SeqKind.parse("Z")
    assert SeqKind.parse("ChebyshevU") is U


@given(st.integers(0, 50), st.sampled_from([T, U, F]))
def test_triple_agreement(n, kind):
    assert seq_poly(kind, n) == seq_binet(kind, n) == seq_explicit(kind, n)


def test_balancing_connection():
    for n in range(1, 41):
        assert seq_poly(B, n) == seq_poly(U, n - 1).compose(3 * X)
        assert seq_poly(C, n) == seq_poly(T, n).compose(3 * X)


def test_values_at_three_halves_and_four():
    half3 = Fraction(3, 2)
    for n in range(41):
        assert poly_eval_rational(seq_poly(T, n), half3) == Fraction(luc(2 * n), 2)
        assert poly_eval_rational(seq_poly(U, n), half3) == fib(2 * n + 2)
        assert poly_eval_rational(seq_poly(F, n), Fraction(4)) == Fraction(fib(3 * n), 2)


def test_chebyshev_at_four():
    assert chebyshev_at_four(T, 1) == 4
    assert chebyshev_at_four(T, 2) == 31
    assert chebyshev_at_four(U, 2) == 63
    for n in range(31):
        assert chebyshev_at_four(T, n) == poly_eval_rational(seq_poly(T, n), Fraction(4))
        assert chebyshev_at_four(U, n) == poly_eval_rational(seq_poly(U, n), Fraction(4))


def test_minus_sqrt5_cases():
    ctx = ExtCtx(Poly([5]))
    r5 = ExtElem.w1(ctx)
    v = -r5
    for n in range(31):
        t, u, f = (ext_eval_poly(seq_poly(k, n), v) for k in (T, U, F))
        if n % 2 == 0:
            assert t == Fraction(luc(3 * n), 2)
            assert u == Fraction(luc(3 * n + 3), 4)
            assert f == r5 * Fraction(-fib(2 * n), 3)
        else:
            assert t == r5 * Fraction(-fib(3 * n), 2)
            assert u == r5 * Fraction(-fib(3 * n + 3), 4)
            assert f == Fraction(luc(2 * n), 3)


def test_sqrt5_over_two_cases():
    ctx = ExtCtx(Poly([5]))
    r5 = ExtElem.w1(ctx)
    v = r5 * Fraction(1, 2)
    for m in range(16):
        assert ext_eval_poly(seq_poly(T, 2 * m), v) == Fraction(luc(2 * m), 2)
        assert ext_eval_poly(seq_poly(U, 2 * m), v) == luc(2 * m + 1)
        assert ext_eval_poly(seq_poly(T, 2 * m + 1), v) == r5 * Fraction(fib(2 * m + 1), 2)
        assert ext_eval_poly(seq_poly(U, 2 * m + 1), v) == r5 * fib(2 * m + 2)


def test_i_over_two_cases():
    ctx = ExtCtx(Poly([-1]))
    i = ExtElem.w1(ctx)
    v = i * Fraction(1, 2)
    for n in range(31):
        assert ext_eval_poly(seq_poly(T, n), v) == i ** n * Fraction(luc(n), 2)
        assert ext_eval_poly(seq_poly(U, n), v) == i ** n * fib(n + 1)


def test_explicit_binomial_at_four_matches_closed_form():
    for n in range(20):
        s = sum(comb(n, 2 * j) * Fraction(15, 16) ** j for j in range(n // 2 + 1))
        assert 4 ** n * s == poly_eval_rational(seq_poly(T, n), Fraction(4))


def test_concurrent_memo():
    results = {}

    def work(tag):
        results[tag] = [seq_poly(SeqKind.C, n) for n in range(60, 0, -7)]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    first = results[0]
    assert all(r == first for r in results.values())
    assert first[0] == seq_binet(SeqKind.C, 60)
