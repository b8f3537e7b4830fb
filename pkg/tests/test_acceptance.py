"""The eight acceptance criteria, each checked at its stated range and time limit.

Every test prints one ``criterion N: PASS|FAIL`` line to the terminal.
"""
import math
import random
import time
from fractions import Fraction

import pytest

from chebfib import catalog as cat
from chebfib.arith import Poly, RatFunc, poly_eval_rational
from chebfib.idl import IdlEntry, format_file, parse_file
from chebfib.quadext import ExtCtx, ExtElem, ext_eval_poly
from chebfib.sequences import (
    NumSeqKind, SeqKind, chebyshev_at_four, num_seq, seq_binet, seq_explicit, seq_poly,
)
from chebfib.series import (
    EGF_FAMILIES, FAMILY_SEQUENCE, FUNCTIONAL_EQUATIONS, OGF_FORMS, GfSpec,
    check_functional_equation, series_egf, series_gf,
)

T, U, F, B, C = SeqKind.T, SeqKind.U, SeqKind.F, SeqKind.B, SeqKind.C


@pytest.fixture
def record(capsys):
    def emit(num, title, ok, elapsed, limit, extra=""):
        verdict = "PASS" if ok and elapsed < limit else "FAIL"
        line = f"criterion {num}: {verdict}  {title}  ({elapsed:.2f}s, limit {limit}s){extra}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
        assert elapsed < limit, line
    return emit


def test_1_triple_oracle(record):
    t0 = time.perf_counter()
    ok = all(seq_poly(k, n) == seq_binet(k, n) == seq_explicit(k, n)
             for k in (T, U, F) for n in range(51))
    ok &= all(seq_poly(k, n) == seq_binet(k, n) for k in (B, C) for n in range(41))
    record(1, "triple-oracle agreement", ok, time.perf_counter() - t0, 10)


def test_2_generating_functions(record):
    t0 = time.perf_counter()
    ok = True
    for fam in OGF_FORMS:
        kind, a, b = FAMILY_SEQUENCE[fam]
        s = series_gf(GfSpec(fam), 40)
        ok &= all(s[j] == RatFunc.from_poly(seq_poly(kind, a * j + b)) for j in range(41))
    for fam in EGF_FAMILIES:
        kind, a, b = FAMILY_SEQUENCE[fam]
        s = series_egf(GfSpec(fam), 25)
        ok &= all(s[j] * math.factorial(j) == RatFunc.from_poly(seq_poly(kind, a * j + b))
                  for j in range(26))
    record(2, "OGF and EGF consistency", ok, time.perf_counter() - t0, 30)


def test_3_functional_equations(record):
    t0 = time.perf_counter()
    bad = [fe for fe in FUNCTIONAL_EQUATIONS if not check_functional_equation(fe, 64).ok]
    record(3, f"{len(FUNCTIONAL_EQUATIONS)} functional equations at order 64", not bad,
           time.perf_counter() - t0, 60, f"  failing: {bad}" if bad else "")


_full_run = {}


def test_4_catalog(record):
    t0 = time.perf_counter()
    reports = cat.verify_all(include_fe=False)
    elapsed = time.perf_counter() - t0
    _full_run["reports"] = reports
    gated = [r for r in reports if r.gated]
    printed = [r for r in reports if not r.gated]
    ranges_ok = all(r.n_range[1] == cat.DEFAULT_N_HI[r.mode] for r in reports)
    variants_recorded = all(r.status == "fail" and r.first_failing_n is not None for r in printed)
    ok = len(gated) == 55 and cat.gate_passed(reports) and ranges_ok and variants_recorded
    extra = "  printed variants first fail at " + ", ".join(f"{r.id}@n={r.first_failing_n}" for r in printed)
    record(4, "catalog (55 entries, corrected variants)", ok, elapsed, 300, extra)


def _fib(n):
    return num_seq(NumSeqKind.FIB, n)


def _luc(n):
    return num_seq(NumSeqKind.LUC, n)


def test_5_anchor_relations(record):
    t0 = time.perf_counter()
    ok = True
    for n in range(31):
        ok &= poly_eval_rational(seq_poly(U, n), Fraction(3, 2)) == _fib(2 * n + 2)
        ok &= poly_eval_rational(seq_poly(F, n), Fraction(4)) == Fraction(_fib(3 * n), 2)
        for k in (T, U):
            ok &= chebyshev_at_four(k, n) == poly_eval_rational(seq_poly(k, n), Fraction(4))
    r5 = ExtElem.w1(ExtCtx(Poly([5])))
    for n in range(31):
        t, u, f = (ext_eval_poly(seq_poly(k, n), -r5) for k in (T, U, F))
        if n % 2 == 0:
            ok &= t == Fraction(_luc(3 * n), 2) and u == Fraction(_luc(3 * n + 3), 4)
            ok &= f == r5 * Fraction(-_fib(2 * n), 3)
        else:
            ok &= t == r5 * Fraction(-_fib(3 * n), 2) and u == r5 * Fraction(-_fib(3 * n + 3), 4)
            ok &= f == Fraction(_luc(2 * n), 3)
        t, u = (ext_eval_poly(seq_poly(k, n), r5 * Fraction(1, 2)) for k in (T, U))
        if n % 2 == 0:
            ok &= t == Fraction(_luc(n), 2) and u == _luc(n + 1)
        else:
            ok &= t == r5 * Fraction(_fib(n), 2) and u == r5 * _fib(n + 1)
    i = ExtElem.w1(ExtCtx(Poly([-1])))
    for n in range(31):
        ok &= ext_eval_poly(seq_poly(T, n), i * Fraction(1, 2)) == i ** n * Fraction(_luc(n), 2)
        ok &= ext_eval_poly(seq_poly(U, n), i * Fraction(1, 2)) == i ** n * _fib(n + 1)
    for cid in ("COR10.1", "COR10.2"):
        ok &= cat.verify_entry(cid, None, 30).status == "pass"
    record(5, "anchor relations for n <= 30", ok, time.perf_counter() - t0, 60)


def test_6_negative_controls(record):
    t0 = time.perf_counter()
    rng = random.Random(20240601)
    ids = [e.id for e in cat.catalog_list(include_fe=False)]
    muts = [cat.mutation_control(i, rng) for i in rng.sample(ids, 10)]
    caught = [m for m in muts if m.report.status != "pass" and m.report.first_failing_n <= 3]
    extra = "  " + ", ".join(f"{m.entry_id}:{m.old}->{m.new}@n={m.report.first_failing_n}" for m in muts)
    record(6, f"{len(caught)}/10 mutations caught by n <= 3", len(caught) == 10,
           time.perf_counter() - t0, 60, extra)


def test_7_dsl_round_trip(record):
    t0 = time.perf_counter()
    original = parse_file(cat.catalog_text())
    text = format_file(original)
    reparsed = parse_file(text)
    same_ast = [(e.label, e.identity, e.anchor) for e in original] == \
               [(e.label, e.identity, e.anchor) for e in reparsed]
    fixed_point = format_file(reparsed) == text
    from_text = cat.run_entries([cat.entry_from_idl(e) for e in reparsed], parallelism=1)
    builtin = _full_run.get("reports") or cat.verify_all(include_fe=False)
    same_reports = cat.report_json(from_text, timing=False) == cat.report_json(builtin, timing=False)
    record(7, "catalog text round-trip reproduces reports", same_ast and fixed_point and same_reports,
           time.perf_counter() - t0, 300)


def test_8_determinism(record):
    t0 = time.perf_counter()
    serial = cat.report_json(cat.verify_all(parallelism=1), timing=False)
    parallel = cat.report_json(cat.verify_all(parallelism=8), timing=False)
    record(8, "verify_all identical at parallelism 1 and 8", serial == parallel,
           time.perf_counter() - t0, 600)
