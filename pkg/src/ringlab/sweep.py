"""Catalog-wide verification: per-pair reports, the isoclinism sweep, and a summary."""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor

from .catalog import Catalog
from .errors import SizeLimitExceeded
from .isoclinism import corollary_report, theorem51_report
from .limits import DEFAULT_LIMITS, Limits
from .rncg import CONJECTURE, FAIL, HARD_KINDS, INDETERMINATE, NA, PASS, RingPair, hard_failures, pair_report

log = logging.getLogger(__name__)


def _one(args) -> dict:
    pair, seed, limits = args
    return pair_report(pair, seed, limits)


def pair_reports(pairs: list[RingPair], seed: int, limits: Limits, jobs: int = 1) -> list[dict]:
    work = [(p, seed, limits) for p in pairs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_one, work, chunksize=4))
    return [_one(w) for w in work]


def isoclinism_sweep(pairs: list[RingPair], limits: Limits) -> dict:
    """Every unordered pair (self-pairs included) through the graph-isomorphism check."""
    compared = isoclinic = checked = skipped = 0
    violations: list[dict] = []
    rows: list[list] = []
    for i, p in enumerate(pairs):
        for q in pairs[i:]:
            compared += 1
            try:
                rep = theorem51_report(p, q, limits)
            except SizeLimitExceeded:
                skipped += 1
                continue
            if rep["isoclinic"]:
                isoclinic += 1
                rows.append([rep["pair1"], rep["pair2"], rep["status"]])
            if rep["status"] != NA:
                checked += 1
            if rep["status"] == FAIL:
                violations.append(rep)
                log.error("isoclinic pairs with non-isomorphic graphs: %s vs %s", p.name, q.name)

    corollary = Counter()
    corollary_violations: list[list[str]] = []
    by_ring: dict[str, list[RingPair]] = defaultdict(list)
    for p in pairs:
        by_ring[p.R.name].append(p)
    for group in by_ring.values():
        for i, p in enumerate(group):
            for q in group[i:]:
                try:
                    rep = corollary_report(p.R, p.S, q.S, limits)
                except SizeLimitExceeded:
                    corollary["skipped"] += 1
                    continue
                corollary[rep["status"]] += 1
                if rep["status"] == FAIL:
                    corollary_violations.append([p.name, q.name])
    return {
        "compared": compared,
        "isoclinic": isoclinic,
        "conclusion_checked": checked,
        "skipped_over_cap": skipped,
        "violations": violations,
        "isoclinic_pairs": rows,
        "subring_corollary": dict(sorted(corollary.items())),
        "subring_corollary_violations": corollary_violations,
    }


def summarize(reports: list[dict], iso: dict | None) -> dict:
    tally: dict[str, Counter] = defaultdict(Counter)
    kinds: dict[str, str] = {}
    hard: Counter = Counter()
    for r in reports:
        for name, status in r["checks"].items():
            tally[name][status] += 1
            kinds[name] = r["kinds"][name]
        for name in hard_failures(r):
            hard[name] += 1
    n_hard = sum(hard.values())
    if iso is not None:
        n_hard += len(iso["violations"]) + len(iso["subring_corollary_violations"])
    return {
        "pairs": len(reports),
        "checks": {k: dict(sorted(v.items())) for k, v in sorted(tally.items())},
        "kinds": dict(sorted(kinds.items())),
        "hard_failures": dict(sorted(hard.items())),
        "hard_failure_total": n_hard,
        "exit_code": 1 if n_hard else 0,
    }


def conjecture_evidence(reports: list[dict]) -> list[dict]:
    rows = []
    for r in reports:
        if r["kinds"].get("proper_subring_class_one") == CONJECTURE and r["checks"]["proper_subring_class_one"] != NA:
            rows.append({
                "pair": r["name"],
                "edges": len(r["edges"]),
                "max_degree": r["max_degree"],
                "chi_prime": r["chi_prime"],
                "class": r["class"],
                "status": r["checks"]["proper_subring_class_one"],
            })
    return rows


def run_verify(catalog: Catalog, seed: int = 0, limits: Limits = DEFAULT_LIMITS, jobs: int = 1, isoclinism: bool = True) -> dict:
    pairs = [e.pair for e in catalog]
    reports = pair_reports(pairs, seed, limits, jobs)
    for e, r in zip(catalog, reports):
        r["provenance"] = e.provenance
    iso = isoclinism_sweep(pairs, limits) if isoclinism else None
    out = {
        "seed": seed,
        "pairs": reports,
        "evidence": {"proper_subring_class_one": conjecture_evidence(reports)},
        "summary": summarize(reports, iso),
    }
    if iso is not None:
        out["isoclinism"] = iso
    return out


def format_table(results: dict) -> str:
    """Human-readable check tally, one line per check."""
    s = results["summary"]
    width = max((len(k) for k in s["checks"]), default=10)
    lines = [f"{'check':<{width}}  kind        pass  fail    na  indet"]
    for name, counts in s["checks"].items():
        lines.append(
            f"{name:<{width}}  {s['kinds'][name]:<10} {counts.get(PASS, 0):5d} {counts.get(FAIL, 0):5d}"
            f" {counts.get(NA, 0):5d} {counts.get(INDETERMINATE, 0):6d}"
        )
    iso = results.get("isoclinism")
    if iso is not None:
        lines.append(
            f"isoclinism: {iso['compared']} compared, {iso['isoclinic']} isoclinic, "
            f"{iso['conclusion_checked']} graph checks, {len(iso['violations'])} violations"
        )
    ev = results["evidence"]["proper_subring_class_one"]
    classes = Counter(str(r["class"]) for r in ev)
    lines.append("conjecture evidence (proper subrings): " + ", ".join(f"class {k}: {v}" for k, v in sorted(classes.items())))
    lines.append(f"{s['pairs']} pairs, {s['hard_failure_total']} hard failures")
    for name, n in s["hard_failures"].items():
        lines.append(f"  FAIL {name}: {n} pairs")
    return "\n".join(lines)


__all__ = ["run_verify", "format_table", "summarize", "HARD_KINDS"]
