"""Built-in identity catalog, per-entry verification and whole-catalog reports."""
from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from functools import lru_cache
from importlib import resources
from typing import Iterable, Optional, Sequence

from .arith import format_poly, format_ratfunc
from .idl import (
    EvalError, Identity, IdlEntry, eval_identity, evaluator_for, infer_mode,
    coefficient_sites, mutate_int, parse_file,
)
from .quadext import format_ext
from .series import DEFAULT_ORDER, FUNCTIONAL_EQUATIONS, check_functional_equation

PRINTED_SUFFIX = "-printed"
DEFAULT_N_HI = {"symbolic-poly": 25, "symbolic-ext": 20, "numeric": 40}
FE_MODE = "series"


class UnknownEntry(KeyError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    anchor: str
    mode: str
    n_min: int
    identity: Optional[Identity] = None  # None for functional equations
    variant: Optional[str] = None  # "printed" for as-published false statements

    @property
    def is_fe(self) -> bool:
        return self.identity is None

    @property
    def gated(self) -> bool:
        """Whether the entry counts toward the overall pass/fail verdict."""
        return self.variant != "printed"

    def info(self) -> dict:
        return {"id": self.id, "anchor": self.anchor, "mode": self.mode,
                "n_min": self.n_min, "variant": self.variant}


def catalog_text() -> str:
    return resources.files("chebfib").joinpath("data/catalog.idl").read_text(encoding="utf-8")


def entry_from_idl(e: IdlEntry) -> CatalogEntry:
    variant = "printed" if e.label.endswith(PRINTED_SUFFIX) else None
    return CatalogEntry(e.label, e.anchor, infer_mode(e.identity), e.identity.n_min, e.identity, variant)


def entries_from_text(text: str) -> list[CatalogEntry]:
    return [entry_from_idl(e) for e in parse_file(text)]


@lru_cache(maxsize=1)
def _builtin() -> dict[str, CatalogEntry]:
    out = {e.id: e for e in entries_from_text(catalog_text())}
    for fe in FUNCTIONAL_EQUATIONS.values():
        out[fe.id] = CatalogEntry(fe.id, fe.anchor, FE_MODE, 0)
        if fe.printed is not None:
            pid = fe.id + PRINTED_SUFFIX
            out[pid] = CatalogEntry(pid, fe.anchor + " (as printed)", FE_MODE, 0, None, "printed")
    return out


def get_entry(entry_id: str) -> CatalogEntry:
    try:
        return _builtin()[entry_id]
    except KeyError:
        raise UnknownEntry(f"unknown catalog id {entry_id!r}") from None


def _matches(entry_id: str, prefix: Optional[str]) -> bool:
    if prefix is None or prefix.lower() == "all" or entry_id == prefix:
        return True
    if not entry_id.startswith(prefix):
        return False
    # "COR1" must not pick up "COR10.1"
    return prefix[-1] in ".-" or entry_id[len(prefix)] in ".-"


def catalog_list(prefix: Optional[str] = None, include_variants: bool = False,
                 include_fe: bool = True) -> list[CatalogEntry]:
    """Entries whose id matches ``prefix``, in catalog file order with equations last."""
    return [e for e in _builtin().values()
           if _matches(e.id, prefix)
           and (include_variants or e.variant is None)
           and (include_fe or not e.is_fe)]


# -- verification --------------------------------------------------------------

@dataclass
class VerifyReport:
    id: str
    anchor: str
    mode: str
    n_range: tuple[int, int]
    status: str  # pass | fail | error
    first_failing_n: Optional[int]
    residual: str
    wall_time_ms: float
    gated: bool = field(default=True, compare=False)
    note: str = field(default="", compare=False)

    def to_dict(self, timing: bool = True) -> dict:
        d = {"id": self.id, "anchor": self.anchor, "mode": self.mode,
             "n_range": list(self.n_range), "status": self.status,
             "first_failing_n": self.first_failing_n, "residual": self.residual}
        if timing:
            d["wall_time_ms"] = round(self.wall_time_ms, 3)
        return d


def residual_text(value) -> str:
    if value.is_rational():
        r = value.c00
        return format_poly(r.num) if r.is_poly() else format_ratfunc(r)
    return format_ext(value)


def verify_identity(entry: CatalogEntry, n_lo: Optional[int] = None, n_hi: Optional[int] = None) -> VerifyReport:
    """Evaluate ``entry`` at every n in ``[n_lo, n_hi]``; stops at the first failure."""
    ident = entry.identity
    n_lo = entry.n_min if n_lo is None else n_lo
    if n_lo < entry.n_min:
        raise ValueError(f"{entry.id}: n_lo={n_lo} is below n_min={entry.n_min}")
    n_hi = DEFAULT_N_HI[entry.mode] if n_hi is None else n_hi
    t0 = time.perf_counter()
    status, first, residual, note = "pass", None, "0", ""
    if n_hi < n_lo:
        note = "empty range"
    ev = evaluator_for(ident)
    for n in range(n_lo, n_hi + 1):
        try:
            r = eval_identity(ident, n, evaluator=ev)
        except (EvalError, ZeroDivisionError, ArithmeticError) as exc:
            status, first, residual = "error", n, f"error: {exc}"
            break
        if not r.is_zero():
            status, first, residual = "fail", n, residual_text(r)
            break
    ms = (time.perf_counter() - t0) * 1000
    return VerifyReport(entry.id, entry.anchor, entry.mode, (n_lo, n_hi), status, first,
                        residual, ms, entry.gated, note)


def _verify_fe(entry: CatalogEntry, order: int) -> VerifyReport:
    t0 = time.perf_counter()
    base = entry.id.removesuffix(PRINTED_SUFFIX)
    rep = check_functional_equation(base, order, printed=entry.variant == "printed")
    ms = (time.perf_counter() - t0) * 1000
    status = "pass" if rep.ok else "fail"
    return VerifyReport(entry.id, entry.anchor, entry.mode, (0, order), status, rep.first_nonzero,
                        rep.residual_text(), ms, entry.gated)


def verify_entry(entry_id: str, n_lo: Optional[int] = None, n_hi: Optional[int] = None) -> VerifyReport:
    """Verify one catalog entry; for functional equations ``n_hi`` is the truncation order."""
    entry = get_entry(entry_id)
    if entry.is_fe:
        return _verify_fe(entry, DEFAULT_ORDER if n_hi is None else n_hi)
    return verify_identity(entry, n_lo, n_hi)


def _run_one(job) -> VerifyReport:
    entry, n_hi, order = job
    if entry.is_fe:
        return _verify_fe(entry, order)
    return verify_identity(entry, None, n_hi)


def run_entries(entries: Sequence[CatalogEntry], n_hi: Optional[int] = None,
                order: int = DEFAULT_ORDER, parallelism: Optional[int] = None) -> list[VerifyReport]:
    """Verify entries, possibly in worker processes; results follow the input order."""
    jobs = [(e, n_hi, order) for e in entries]
    workers = parallelism or os.cpu_count() or 1
    if workers <= 1 or len(jobs) <= 1:
        return [_run_one(j) for j in jobs]
    # heaviest first keeps the pool busy; the merge below restores input order
    order_idx = sorted(range(len(jobs)), key=lambda i: (not jobs[i][0].is_fe, jobs[i][0].mode != "symbolic-ext"))
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        done = dict(zip(order_idx, pool.map(_run_one, [jobs[i] for i in order_idx])))
    return [done[i] for i in range(len(jobs))]


def verify_all(n_hi: Optional[int] = None, parallelism: Optional[int] = None,
               order: int = DEFAULT_ORDER, prefix: Optional[str] = None,
               include_fe: bool = True, include_variants: bool = True) -> list[VerifyReport]:
    """Every catalog entry over its default or given range.

    As-printed variants are included by default; they appear in reports but
    never affect :func:`gate_passed`.
    """
    entries = catalog_list(prefix, include_variants=include_variants, include_fe=include_fe)
    return run_entries(entries, n_hi, order, parallelism)


def gate_passed(reports: Iterable[VerifyReport]) -> bool:
    return all(r.status == "pass" for r in reports if r.gated)


def build_report(reports: Sequence[VerifyReport], n_hi: Optional[int] = None,
                 order: int = DEFAULT_ORDER, timing: bool = True) -> dict:
    meta = {
        "order": order,
        "n_hi": n_hi if n_hi is not None else dict(DEFAULT_N_HI),
        "gate_excluded": [r.id for r in reports if not r.gated],
        "passed": gate_passed(reports),
    }
    if timing:
        meta["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return {"run": meta, "entries": [r.to_dict(timing) for r in reports]}


def report_json(reports: Sequence[VerifyReport], n_hi: Optional[int] = None,
                order: int = DEFAULT_ORDER, timing: bool = True) -> str:
    return json.dumps(build_report(reports, n_hi, order, timing), indent=2) + "\n"


def format_text(reports: Sequence[VerifyReport]) -> str:
    lines = []
    for r in reports:
        lo, hi = r.n_range
        tag = "" if r.gated else "  [not gated]"
        line = f"{r.id:<16} {r.status:<5} n={lo}..{hi}"
        if r.first_failing_n is not None:
            line += f"  first failing n={r.first_failing_n}  residual: {r.residual}"
        if r.note:
            line += f"  ({r.note})"
        lines.append(line + tag)
    return "\n".join(lines) + ("\n" if lines else "")


# -- negative controls ---------------------------------------------------------

@dataclass(frozen=True)
class Mutation:
    entry_id: str
    site: tuple[str, int]
    old: int
    new: int
    report: VerifyReport


def mutate_entry(entry: CatalogEntry, site: tuple[str, int], new_value: Optional[int] = None) -> CatalogEntry:
    ident = mutate_int(entry.identity, site, new_value)
    return CatalogEntry(entry.id + "~mut", entry.anchor, entry.mode, entry.n_min, ident, entry.variant)


def mutation_control(entry_id: str, rng: random.Random, n_hi: int = 3) -> Mutation:
    """Change one integer coefficient of an entry at random and re-verify it up to ``n_hi``."""
    from .idl.ast import walk

    entry = get_entry(entry_id)
    if entry.is_fe:
        raise ValueError("mutation controls apply to identity entries only")
    site = rng.choice(coefficient_sites(entry.identity))
    old = list(walk(getattr(entry.identity, site[0])))[site[1]].value
    new = old + rng.choice([1, 2, 3])
    report = verify_identity(mutate_entry(entry, site, new), None, n_hi)
    return Mutation(entry_id, site, old, new, report)
