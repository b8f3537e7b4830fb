"""Chebyshev, Fibonacci and balancing polynomial sequences.

Every polynomial family can be produced three ways: by its three-term
recurrence (memoized, the working route), by its Binet closed form computed
in the biquadratic extension, and by its explicit binomial sum.  The last two
are never cached so they stay usable as independent checks of the first.
"""
from __future__ import annotations

import enum
import threading
from fractions import Fraction
from math import comb

from .arith import ONE, X, ZERO, Poly
from .quadext import CHEB_FIB_CTX, ExtElem, alpha, beta, rho, sigma


class SeqKind(enum.Enum):
    T = "ChebyshevT"
    U = "ChebyshevU"
    F = "FibonacciPoly"
    B = "BalancingB"
    C = "LucasBalancingC"

    @classmethod
    def parse(cls, name: str) -> "SeqKind":
        for k in cls:
            if name in (k.name, k.value):
                return k
        raise ValueError(f"unknown sequence kind {name!r}")


class NumSeqKind(enum.Enum):
    FIB = "FibonacciNum"
    LUC = "LucasNum"
    BAL = "BalancingNum"


# (seed0, seed1, multiplier, sign): w_{n+1} = multiplier*w_n + sign*w_{n-1}
_RECURRENCES = {
    SeqKind.T: (ONE, X, 2 * X, -1),
    SeqKind.U: (ONE, 2 * X, 2 * X, -1),
    SeqKind.F: (ZERO, ONE, X, 1),
    SeqKind.B: (ZERO, ONE, 6 * X, -1),
    SeqKind.C: (ONE, 3 * X, 6 * X, -1),
}

_memo: dict[SeqKind, list[Poly]] = {}
_memo_lock = threading.Lock()


def _check_index(n: int) -> None:
    if n < 0:
        raise ValueError(f"negative sequence index {n}")


def seq_poly(kind: SeqKind, n: int) -> Poly:
    """n-th polynomial of ``kind`` by its recurrence."""
    _check_index(n)
    table = _memo.get(kind)
    if table is not None and n < len(table):
        return table[n]
    with _memo_lock:
        s0, s1, mult, sign = _RECURRENCES[kind]
        table = _memo.setdefault(kind, [s0, s1])
        while len(table) <= n:
            nxt = mult * table[-1]
            nxt = nxt + table[-2] if sign > 0 else nxt - table[-2]
            table.append(nxt)
        return table[n]


def _binet_t(n: int) -> Poly:
    a, b = alpha(), beta()
    return ((a ** n + b ** n) * Fraction(1, 2)).project_poly()


def _binet_u(m: int) -> Poly:
    """``(alpha^m - beta^m) / (2 sqrt(x^2-1))``, i.e. U_{m-1}; zero at m = 0."""
    a, b = alpha(), beta()
    two_w1 = ExtElem.w1(CHEB_FIB_CTX) * 2
    return ((a ** m - b ** m) / two_w1).project_poly()


def seq_binet(kind: SeqKind, n: int) -> Poly:
    """n-th polynomial from the Binet form, projected out of the extension."""
    _check_index(n)
    if kind is SeqKind.T:
        return _binet_t(n)
    if kind is SeqKind.U:
        return _binet_u(n + 1)
    if kind is SeqKind.F:
        r, s = rho(), sigma()
        return ((r ** n - s ** n) / ExtElem.w2(CHEB_FIB_CTX)).project_poly()
    if kind is SeqKind.B:
        return _binet_u(n).compose(3 * X)
    if kind is SeqKind.C:
        return _binet_t(n).compose(3 * X)
    raise ValueError(kind)


def seq_explicit(kind: SeqKind, n: int) -> Poly:
    """n-th polynomial from its explicit binomial sum (T, U and F only)."""
    _check_index(n)
    if kind is SeqKind.T:
        return sum(((X * X - 1) ** k * X ** (n - 2 * k) * comb(n, 2 * k) for k in range(n // 2 + 1)), ZERO)
    if kind is SeqKind.U:
        return sum(((X * X - 1) ** k * X ** (n - 2 * k) * comb(n + 1, 2 * k + 1) for k in range(n // 2 + 1)), ZERO)
    if kind is SeqKind.F:
        if n == 0:
            return ZERO
        return sum((Poly.monomial(n - 2 * k - 1, comb(n - k - 1, k)) for k in range((n - 1) // 2 + 1)), ZERO)
    raise ValueError(f"no explicit binomial form for {kind.value}")


_num_memo: dict[NumSeqKind, list[int]] = {}


def num_seq(kind: NumSeqKind, n: int) -> Fraction:
    """Fibonacci, Lucas (L_0=2, L_1=1) and balancing numbers, exactly."""
    _check_index(n)
    table = _num_memo.get(kind)
    if table is None or n >= len(table):
        with _memo_lock:
            seeds, mult, sign = {
                NumSeqKind.FIB: ((0, 1), 1, 1),
                NumSeqKind.LUC: ((2, 1), 1, 1),
                NumSeqKind.BAL: ((0, 1), 6, -1),
            }[kind]
            table = _num_memo.setdefault(kind, list(seeds))
            while len(table) <= n:
                table.append(mult * table[-1] + sign * table[-2])
    return Fraction(table[n])


def chebyshev_at_four(kind: SeqKind, n: int) -> Fraction:
    """T_n(4) or U_n(4) from the closed binomial forms in powers of 15/16."""
    _check_index(n)
    r = Fraction(15, 16)
    if kind is SeqKind.T:
        s = sum(comb(n, 2 * j) * r ** j for j in range(n // 2 + 1))
    elif kind is SeqKind.U:
        s = sum(comb(n + 1, 2 * j + 1) * r ** j for j in range(n // 2 + 1))
    else:
        raise ValueError(f"closed form at 4 exists only for T and U, not {kind.value}")
    return 4 ** n * Fraction(s)
