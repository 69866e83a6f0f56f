"""Run the whittler against its oracles over a range of torus braids."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .braids import make_torus_braid
from .counting import classify_survivor, count_bound_terms, formula_N, jnf_count
from .homology import (
    ComplexError,
    close_and_build,
    default_workers,
    euler_state_sum,
    homology,
    signed_counts,
    survivor_capacity,
)
from .states import PLAIN, UNIT, differential_components, enumerate_enhanced, gradings, resolve
from .whittler import CycleDetected, WhittledComplex, detect_iso_at, whittle

log = logging.getLogger(__name__)

CHECKS = ("acyclic", "deflate", "euler", "bound", "jnf", "homology")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    n_values: list[int]
    k_values: list[int]
    checks: list[str] = field(default_factory=lambda: list(CHECKS))
    out_dir: str | None = None
    convention: str = PLAIN
    verbosity: int = 0

    def __post_init__(self):
        if not self.n_values or not self.k_values:
            raise ConfigError("n and k ranges must be nonempty")
        if min(self.n_values) < 2:
            raise ConfigError("n must be at least 2")
        if min(self.k_values) < 1:
            raise ConfigError("k must be at least 1")
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise ConfigError(f"unknown checks: {sorted(unknown)}")
        # keep the canonical order so reports do not depend on flag order
        self.checks = [c for c in CHECKS if c in self.checks]

    def cases(self) -> list[tuple[int, int]]:
        return [(n, k) for n in sorted(set(self.n_values)) for k in sorted(set(self.k_values))]


def _key(pairing_laurent):
    return {" ".join(map(str, p)): {str(e): c for e, c in v.items()} for p, v in pairing_laurent.items()}


def check_deflate(wc: WhittledComplex) -> tuple[bool, dict]:
    """Sources and targets are distinct, and every isomorphism is a unit component of degree (1, 0)."""
    seen = set()
    problems = []
    for iso in wc.cancelled:
        for e in (iso.source, iso.target):
            if e in seen:
                problems.append(f"{e} used twice")
            seen.add(e)
        hs, qs = gradings(iso.source)
        ht, qt = gradings(iso.target)
        if (ht - hs, qt - qs) != (1, 0):
            problems.append(f"{iso.source} -> {iso.target} shifts (h, q) by ({ht - hs}, {qt - qs})")
        if not any(c.target == iso.target and c.coefficient == UNIT for c in differential_components(iso.source)):
            problems.append(f"{iso.source} -> {iso.target} is not a unit component")
    survivors = wc.all_survivors()
    total = sum(1 for _ in enumerate_enhanced(wc.braid))
    if len(survivors) + len(seen) != total or seen & set(survivors):
        problems.append("survivors and cancelled pairs do not partition the enhanced states")
    return not problems, {"pairs": len(wc.cancelled), "collisions": len(wc.collisions), "problems": problems[:20]}


def check_euler(wc: WhittledComplex, convention: str = PLAIN) -> tuple[bool, dict]:
    everything = signed_counts(enumerate_enhanced(wc.braid), convention)
    kept = signed_counts(wc.all_survivors(), convention)
    bracket = euler_state_sum(wc.braid, closed=False, convention=convention)
    ok = everything == kept and everything == bracket
    return ok, {"pairing_classes": len(everything), "matches_bracket": everything == bracket,
                "survivor_sums": _key(kept)}


def check_bound(wc: WhittledComplex, n: int, k: int) -> tuple[bool, dict]:
    rows = []
    ok = True
    for h in sorted(wc.survivors):
        states = len(wc.survivor_states(h))
        printed = count_bound_terms(n, k, h)
        variant = count_bound_terms(n, k, h, two_part_of=k)
        row = {
            "h": h,
            "survivor_states": states,
            "survivor_generators": len(wc.survivors[h]),
            "bound": printed.total,
            "bound_p_k_2": variant.total,
            "formula_N": formula_N(n, h),
            "jnf_words": jnf_count(n, h),
        }
        if states > printed.total:
            ok = False
        rows.append(row)
    return ok, {"rows": rows}


def check_jnf(wc: WhittledComplex) -> tuple[bool, dict]:
    form1 = form2 = 0
    failures = []
    for e in wc.all_survivors():
        form = classify_survivor(resolve(e.state).word)
        if form is None:
            failures.append({"bars": e.bars, "marks": e.marks, "tl_word": list(resolve(e.state).word.gens)})
        elif form.variant == "Form1":
            form1 += 1
        else:
            form2 += 1
    return not failures, {"form1": form1, "form2": form2, "unclassified": len(failures), "examples": failures[:10]}


def check_homology(wc: WhittledComplex, convention: str = PLAIN) -> tuple[bool, dict]:
    cx = close_and_build(wc.braid, convention)  # raises ComplexError if d o d != 0
    hs = homology(cx, workers=1)
    euler_ok = hs.euler() == euler_state_sum(wc.braid, closed=True, convention=convention)
    dominated = {h: (hs.rational_dim(h), survivor_capacity(wc.survivors.get(h, []))) for h in hs.free_ranks}
    dom_ok = all(a <= b for a, b in dominated.values())
    return euler_ok and dom_ok, {
        "free_ranks": {str(h): r for h, r in hs.free_ranks.items()},
        "torsion": {str(h): t for h, t in hs.torsion.items()},
        "euler_matches": euler_ok,
        "domination": {str(h): list(v) for h, v in dominated.items()},
    }


def verify_case(n: int, k: int, checks: list[str], convention: str = PLAIN) -> dict:
    """Run the selected checks for ``ft_n^k``; the result is JSON-ready."""
    b = make_torus_braid(n, k)
    result: dict = {"n": n, "k": k, "checks": {}, "timings": {}}
    t0 = time.perf_counter()
    try:
        wc = whittle(b)
    except CycleDetected as exc:
        result["checks"]["acyclic"] = {"passed": False, "cycle": exc.cycle}
        result["internal_error"] = str(exc)
        return result
    result["timings"]["whittle"] = round(time.perf_counter() - t0, 4)
    result["counters"] = {
        "enhanced_states": len(wc.all_survivors()) + 2 * len(wc.cancelled),
        "isomorphisms": len(wc.cancelled),
        "edges": len(wc.graph.edges),
        "survivors": len(wc.all_survivors()),
    }
    runners = {
        "acyclic": lambda: (True, {"vertices": len(wc.graph.vertices), "edges": len(wc.graph.edges),
                                   "reselect_on_survivors": _reselect_empty(wc)}),
        "deflate": lambda: check_deflate(wc),
        "euler": lambda: check_euler(wc, convention),
        "bound": lambda: check_bound(wc, n, k),
        "jnf": lambda: check_jnf(wc),
        "homology": lambda: check_homology(wc, convention),
    }
    for name in checks:
        t0 = time.perf_counter()
        try:
            ok, details = runners[name]()
        except ComplexError as exc:
            result["checks"][name] = {"passed": False, "error": str(exc)}
            result["internal_error"] = str(exc)
            continue
        result["checks"][name] = {"passed": ok, **details}
        result["timings"][name] = round(time.perf_counter() - t0, 4)
        if not ok:
            log.warning("check %s failed for ft_%d^%d", name, n, k)
    return result


def _reselect_empty(wc: WhittledComplex) -> bool:
    """A fresh scan restricted to the survivors finds no isomorphism between two survivors."""
    alive = set(wc.all_survivors())
    n = wc.braid.strands
    for e in alive:
        for start in range(1, len(wc.braid) - n + 2):
            if not e.state.is_barred(start):
                continue
            iso = detect_iso_at(e, start, start + n - 1)
            if iso is not None and iso.target in alive:
                return False
    return True


def _run_case(args):
    return verify_case(*args)


def run_verify(cfg: RunConfig, workers: int | None = None) -> dict:
    workers = default_workers() if workers is None else workers
    jobs = [(n, k, cfg.checks, cfg.convention) for n, k in cfg.cases()]
    t0 = time.perf_counter()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_case, jobs))
    else:
        results = [_run_case(j) for j in jobs]
    failed = sorted({name for r in results for name, c in r["checks"].items() if not c["passed"]})
    return {
        "config": {"n": sorted(set(cfg.n_values)), "k": sorted(set(cfg.k_values)),
                   "checks": cfg.checks, "convention": cfg.convention},
        "results": results,
        "failed_checks": failed,
        "internal_error": any("internal_error" in r for r in results),
        "all_passed": not failed,
        "timings": {"total": round(time.perf_counter() - t0, 4)},
    }
