import json
import random

import pytest

from chebfib import catalog as cat
from chebfib.idl import coefficient_sites, eval_sides, int_sites


def test_listing_counts():
    assert len(cat.catalog_list("THM2")) == 4
    assert len(cat.catalog_list("THM7")) == 12
    base = cat.catalog_list(include_fe=False)
    assert len(base) == 55
    assert len(cat.catalog_list()) == 64
    assert len(cat.catalog_list(include_variants=True)) == 75
    ids = [e.id for e in cat.catalog_list(include_variants=True)]
    assert len(ids) == len(set(ids))


def test_prefix_does_not_overmatch():
    assert all(e.id.startswith("COR1.") for e in cat.catalog_list("COR1"))
    assert {e.id for e in cat.catalog_list("COR10")} == {"COR10.1", "COR10.2"}


def test_modes():
    modes = {e.id: e.mode for e in cat.catalog_list()}
    assert modes["THM1.1"] == "symbolic-poly"
    assert modes["THM4.1"] == "symbolic-ext"
    assert modes["COR8.1"] == "numeric"
    assert modes["FE1.1"] == "series"


@pytest.mark.parametrize("entry_id, n", [("THM1.1", 3), ("THM1.2", 2), ("COR8.1", 1)])
def test_spec_examples_pass(entry_id, n):
    rep = cat.verify_entry(entry_id, n, n)
    assert rep.status == "pass" and rep.first_failing_n is None and rep.residual == "0"


def test_empty_range():
    rep = cat.verify_entry("THM1.1", 5, 4)
    assert rep.status == "pass" and rep.note == "empty range"


def test_unknown_and_low_range():
    with pytest.raises(cat.UnknownEntry):
        cat.verify_entry("THM99.9")
    with pytest.raises(ValueError):
        cat.verify_entry("THM1.1", 0, 4)


def test_printed_variants_fail_but_are_ungated():
    variants = [e for e in cat.catalog_list(include_variants=True) if e.variant == "printed"]
    assert len(variants) == 11
    reports = cat.run_entries(variants, 10, order=12, parallelism=1)
    for r in reports:
        assert r.status == "fail" and r.first_failing_n is not None and not r.gated
    assert cat.gate_passed(reports)


def test_corrected_catalog_small_range():
    reports = cat.verify_all(10, parallelism=1, include_fe=False, include_variants=False)
    assert len(reports) == 55
    assert all(r.status == "pass" for r in reports), [r.id for r in reports if r.status != "pass"]


def test_thm41_parity_structure():
    # the parity factors only keep even powers of each radical, so both sides lie in Q(x)
    ident = cat.get_entry("THM4.1").identity
    for n in range(0, 8):
        lhs, rhs = eval_sides(ident, n)
        assert lhs == rhs
        assert lhs.is_rational()


def test_report_shape():
    reports = cat.verify_all(4, parallelism=1, prefix="THM1", include_variants=False)
    doc = json.loads(cat.report_json(reports, 4, 8))
    assert doc["run"]["passed"] is True and "timestamp" in doc["run"]
    e = doc["entries"][0]
    assert set(e) == {"id", "anchor", "mode", "n_range", "status", "first_failing_n",
                      "residual", "wall_time_ms"}
    assert "timestamp" not in json.loads(cat.report_json(reports, 4, 8, timing=False))["run"]


def test_parallel_matches_serial():
    entries = cat.catalog_list("THM5", include_variants=True) + cat.catalog_list("COR9")
    a = cat.run_entries(entries, 8, parallelism=1)
    b = cat.run_entries(entries, 8, parallelism=4)
    assert cat.report_json(a, 8, timing=False) == cat.report_json(b, 8, timing=False)


def test_mutation_controls():
    rng = random.Random(7)
    ids = [e.id for e in cat.catalog_list(include_fe=False)]
    for entry_id in rng.sample(ids, 12):
        m = cat.mutation_control(entry_id, rng)
        assert m.report.status != "pass", (m.entry_id, m.site, m.old, m.new)
        assert m.report.first_failing_n <= 3


def test_coefficient_sites_skip_sequence_arguments():
    ident = cat.get_entry("COR7.3").identity
    sites = coefficient_sites(ident)
    every = int_sites(ident)
    assert set(sites) < set(every)
    # the 3 in each F(., 3*x) is shielded: two such arguments
    assert len(every) - len(sites) == 2


def test_fe_entry_uses_order():
    rep = cat.verify_entry("FE1.1", n_hi=10)
    assert rep.status == "pass" and rep.n_range == (0, 10)
