"""Verification campaigns: resolve graph sources, compute invariants, evaluate
bounds and lemma checks, and assemble deterministic reports.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .bounds import BOUND_NAMES, bound_theorem1, check_theoremC, evaluate_all
from .generators import FamilyExpectation, GeneratorError, GeneratorSpec
from .graph import Graph, Graph6Error, encode_graph6, parse_graph6
from .invariants import EXHAUSTIVE_CAP, compute_profile
from .machinery.lemmas import LEMMA_IDS, check_lemma, generate_instances

CHECKS = BOUND_NAMES + ("theoremC", "sharpness", "lemma_suite")
# Bounds whose violations point at an implementation defect (they are proved);
# theorem1 is asserted only for κ >= 2.
ASSERTED_BOUNDS = ("dirac", "dirac2", "theoremD", "theoremE", "theoremF")
DEFAULT_TIME_BUDGET = 10.0


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class CampaignConfig:
    sources: tuple[str, ...]
    checks: tuple[str, ...]
    jobs: int = 1
    seed: int = 0
    output: Optional[str] = None
    format: str = "json"
    time_budget: Optional[float] = DEFAULT_TIME_BUDGET
    include_timing: bool = False
    edges_count: bool = True
    lemma_mode: str = "all"  # "all" longest (C, H) pairs, or the solver's "witness" pair only
    lemma_cap: int = EXHAUSTIVE_CAP

    def __post_init__(self) -> None:
        if not self.sources:
            raise ConfigError("at least one source is required")
        if not self.checks:
            raise ConfigError("at least one check is required")
        unknown = [c for c in self.checks if c not in CHECKS]
        if unknown:
            raise ConfigError(f"unknown checks: {', '.join(unknown)}")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        if self.format not in ("json", "csv"):
            raise ConfigError("format must be json or csv")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ConfigError("time budget must be positive")
        if self.lemma_mode not in ("all", "witness"):
            raise ConfigError("lemma mode must be all or witness")
        if self.lemma_cap < 1 or (self.lemma_mode == "all" and self.lemma_cap > EXHAUSTIVE_CAP):
            raise ConfigError(f"lemma cap must lie in 1..{EXHAUSTIVE_CAP} in mode all")

    def echo(self) -> dict:
        return {
            "sources": list(self.sources),
            "checks": list(self.checks),
            "seed": self.seed,
            "format": self.format,
            "time_budget": self.time_budget,
            "edges_count": self.edges_count,
            "lemma_mode": self.lemma_mode,
            "lemma_cap": self.lemma_cap,
        }


# --- sources -------------------------------------------------------------------------------


@dataclass(frozen=True)
class WorkItem:
    index: int
    source: str
    graph6: bytes
    expectation: Optional[FamilyExpectation] = None


def _is_generator_text(text: str) -> bool:
    kind = text.split(":", 1)[0]
    return ":" in text and kind in ("kappa_family", "gnp", "named", "enum", "enumerate_connected")


def resolve_sources(config: CampaignConfig) -> tuple[list[WorkItem], list[dict]]:
    """Expand sources into work items; unreadable sources become error records."""
    items: list[WorkItem] = []
    errors: list[dict] = []
    for src in config.sources:
        if not os.path.exists(src) and _is_generator_text(src):
            try:
                spec = GeneratorSpec.parse(src)
                if spec.kind == "gnp" and "seed=" not in src:
                    spec = GeneratorSpec(spec.kind, {**spec.params, "seed": config.seed})
                for sid, g, exp in spec.graphs():
                    items.append(WorkItem(len(items), sid, encode_graph6(g), exp))
            except GeneratorError as exc:
                errors.append({"source": src, "error": str(exc)})
            continue
        try:
            with open(src, "rb") as fh:
                lines = [ln for ln in fh.read().splitlines() if ln.strip()]
        except OSError as exc:
            errors.append({"source": src, "error": f"unreadable source: {exc.strerror or exc}"})
            continue
        for k, line in enumerate(lines):
            try:
                g = parse_graph6(line)
            except Graph6Error as exc:
                errors.append({"source": f"{src}#{k}", "error": f"malformed graph6: {exc}"})
                continue
            items.append(WorkItem(len(items), f"{src}#{k}", encode_graph6(g)))
    return items, errors


# --- serialization ----------------------------------------------------------------------------


def rational(x: Optional[Fraction]) -> Optional[dict]:
    if x is None:
        return None
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _profile_json(p) -> dict:
    return {
        "n": p.n,
        "delta": p.delta,
        "kappa": p.kappa,
        "c": p.c,
        "cycle": list(p.cycle.vertices),
        "cycle_kind": p.cycle.kind,
        "cbar": p.cbar,
        "pbar": p.pbar,
        "residual_empty": p.residual_empty,
        "residual_cycle": list(p.residual_cycle.vertices) if p.residual_cycle else None,
        "residual_path": list(p.residual_path.vertices) if p.residual_path else None,
        "incomplete": p.incomplete,
    }


# --- per-graph processing ----------------------------------------------------------------------


@dataclass(frozen=True)
class _Job:
    item: WorkItem
    checks: tuple[str, ...]
    time_budget: Optional[float]
    edges_count: bool
    lemma_mode: str = "all"
    lemma_cap: int = EXHAUSTIVE_CAP
    overrides: Optional[dict] = None  # bound name -> picklable callable


def process_item(job: _Job) -> dict:
    item = job.item
    g = parse_graph6(item.graph6)
    rec: dict = {"index": item.index, "source": item.source, "graph6": item.graph6.decode(), "skips": []}
    profile = compute_profile(g, job.time_budget)
    rec["profile"] = _profile_json(profile)
    if profile.incomplete:
        rec["skips"].append("solver budget exceeded; circumference is a lower bound")
    names = [c for c in job.checks if c in BOUND_NAMES]
    if names:
        report = evaluate_all(profile, names, job.overrides)
        rec["bounds"] = {
            e.name: {
                "applicable": e.applicable,
                "value": rational(e.value),
                "satisfied": e.satisfied,
                "slack": rational(e.slack),
                "reason": e.reason,
            }
            for e in report.entries
        }
    if "theoremC" in job.checks:
        res = check_theoremC(g, profile)
        rec["theoremC"] = {"applicable": res.applicable, "reason": res.reason} if not res.applicable else {
            "applicable": True,
            "long_cycle": res.long_cycle,
            "all_dominating": res.all_dominating,
            "violated": res.violated,
        }
    if "sharpness" in job.checks:
        rec["sharpness"] = _sharpness(item.expectation, profile)
    if "lemma_suite" in job.checks:
        rec["lemmas"] = _lemma_suite(g, job, rec["skips"])
    return rec


def _sharpness(exp: Optional[FamilyExpectation], profile) -> dict:
    """Family closed form against the measured invariants and Theorem 1's bound.

    Equality with the bound is asserted only where ``c̄ >= κ``: below that the
    second branch governs and the family does not attain it.
    """
    if exp is None:
        return {"applicable": False, "reason": "no closed-form expectation"}
    out = {
        "expected": {"n": exp.n, "delta": exp.delta, "kappa": exp.kappa, "c": exp.c, "cbar": exp.cbar},
        "invariants_match": (profile.n, profile.delta, profile.kappa, profile.c, profile.cbar)
        == (exp.n, exp.delta, exp.kappa, exp.c, exp.cbar),
    }
    if profile.incomplete or profile.residual_empty:
        return {**out, "applicable": False, "reason": "profile incomplete or residual empty"}
    value = bound_theorem1(profile.delta, profile.kappa, profile.cbar)
    out.update({"bound": rational(value), "slack": rational(profile.c - value)})
    if profile.cbar < profile.kappa:
        return {**out, "applicable": False, "reason": "cbar < kappa: second branch, equality not claimed"}
    return {**out, "applicable": True, "sharp": out["invariants_match"] and profile.c == value}


def _lemma_suite(g: Graph, job: _Job, skips: list) -> dict:
    if g.n > job.lemma_cap:
        skips.append(f"lemma_suite: n above machinery cap {job.lemma_cap}")
        return {"instances": 0, "results": {}}
    instances, reasons = generate_instances(g, job.edges_count, job.lemma_mode, job.lemma_cap)
    skips.extend(f"lemma_suite: {r}" for r in reasons)
    agg: dict = {}
    full = sum(1 for i in instances if i.ext is not None)
    for inst in instances:
        for lid in LEMMA_IDS:
            if inst.ext is None and lid != "lemma3":
                continue
            r = check_lemma(inst, lid)
            cur = agg.get(lid)
            slack = None if r.lhs is None else r.lhs - r.rhs
            entry = {
                "holds": r.holds,
                "checked": r.checked,
                "lhs": rational(r.lhs),
                "rhs": rational(r.rhs),
                "slack": slack,
                "context": r.context,
            }
            if cur is None:
                agg[lid] = entry
                continue
            cur["checked"] += r.checked
            worse = (not r.holds and cur["holds"]) or (
                r.holds == cur["holds"] and slack is not None and (cur["slack"] is None or slack < cur["slack"]))
            if worse:
                cur.update({k: entry[k] for k in ("lhs", "rhs", "slack", "context")})
            cur["holds"] = cur["holds"] and r.holds
    for entry in agg.values():
        entry["slack"] = rational(entry["slack"])
    return {"instances": full, "results": {k: agg[k] for k in sorted(agg)}}


# --- campaign ----------------------------------------------------------------------------------


def _violations(rec: dict) -> tuple[list[dict], list[dict]]:
    """(asserted violations, reported findings) for one record."""
    bad, findings = [], []
    for name, e in rec.get("bounds", {}).items():
        if not e["applicable"] or e["satisfied"]:
            continue
        item = {"index": rec["index"], "source": rec["source"], "graph6": rec["graph6"], "check": name,
                "value": e["value"], "c": rec["profile"]["c"]}
        if name == "conjecture1" or (name == "theorem1" and rec["profile"]["kappa"] <= 1):
            findings.append(item)
        elif name in ASSERTED_BOUNDS or name == "theorem1":
            bad.append(item)
    tc = rec.get("theoremC")
    if tc and tc.get("violated"):
        bad.append({"index": rec["index"], "source": rec["source"], "graph6": rec["graph6"], "check": "theoremC"})
    sh = rec.get("sharpness")
    if sh and sh.get("applicable") and not sh["sharp"]:
        bad.append({"index": rec["index"], "source": rec["source"], "graph6": rec["graph6"], "check": "sharpness"})
    for lid, e in rec.get("lemmas", {}).get("results", {}).items():
        if not e["holds"]:
            bad.append({"index": rec["index"], "source": rec["source"], "graph6": rec["graph6"],
                        "check": f"lemma:{lid}", "context": e["context"]})
    return bad, findings


def run_campaign(config: CampaignConfig, overrides: Optional[dict] = None) -> dict:
    started = time.perf_counter()
    items, errors = resolve_sources(config)
    jobs = [
        _Job(it, config.checks, config.time_budget, config.edges_count, config.lemma_mode, config.lemma_cap, overrides)
        for it in items
    ]
    if config.jobs == 1 or len(jobs) <= 1:
        records = [process_item(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            records = list(pool.map(process_item, jobs, chunksize=max(1, len(jobs) // (config.jobs * 8))))
    violations, findings = [], []
    counts = {c: {"evaluated": 0, "violations": 0} for c in config.checks}
    sharp = []
    lemma_instances = 0
    for rec in records:
        bad, found = _violations(rec)
        violations.extend(bad)
        findings.extend(found)
        for name, e in rec.get("bounds", {}).items():
            if e["applicable"]:
                counts[name]["evaluated"] += 1
                if not e["satisfied"]:
                    counts[name]["violations"] += 1
        if rec.get("theoremC", {}).get("applicable"):
            counts["theoremC"]["evaluated"] += 1
            counts["theoremC"]["violations"] += int(rec["theoremC"]["violated"])
        if rec.get("sharpness", {}).get("applicable"):
            counts["sharpness"]["evaluated"] += 1
            if rec["sharpness"]["sharp"]:
                sharp.append(rec["index"])
            else:
                counts["sharpness"]["violations"] += 1
        if "lemmas" in rec:
            lemma_instances += rec["lemmas"]["instances"]
            counts["lemma_suite"]["evaluated"] += rec["lemmas"]["instances"]
            counts["lemma_suite"]["violations"] += sum(
                1 for e in rec["lemmas"]["results"].values() if not e["holds"])
    summary = {
        "graphs": len(records),
        "source_errors": len(errors),
        "skipped": sum(1 for r in records if r["skips"]),
        "incomplete": sum(1 for r in records if r["profile"]["incomplete"]),
        "checks": counts,
        "violations": violations,
        "findings": findings,
        "sharp_instances": sharp,
        "lemma_instances": lemma_instances,
    }
    if "conjecture1" in config.checks:
        n_conj = counts["conjecture1"]["evaluated"]
        conj = [f for f in findings if f["check"] == "conjecture1"]
        summary["conjecture1"] = (
            f"no counterexample found in {n_conj} instances" if not conj
            else f"{len(conj)} counterexample(s) found in {n_conj} instances")
    if config.include_timing:
        summary["total_runtime_seconds"] = round(time.perf_counter() - started, 3)
    return {"config_echo": config.echo(), "records": records, "source_errors": errors, "summary": summary}


def search_counterexamples(config: CampaignConfig, conjecture_bound: Optional[Callable] = None) -> list[dict]:
    """Conjecture-1 sweep; ``conjecture_bound`` replaces the formula (fault injection)."""
    cfg = CampaignConfig(
        sources=config.sources, checks=("conjecture1",), jobs=config.jobs, seed=config.seed,
        time_budget=config.time_budget, edges_count=config.edges_count,
        lemma_mode=config.lemma_mode, lemma_cap=config.lemma_cap)
    overrides = {"conjecture1": conjecture_bound} if conjecture_bound is not None else None
    report = run_campaign(cfg, overrides)
    by_index = {r["index"]: r for r in report["records"]}
    out = []
    for f in report["summary"]["findings"]:
        if f["check"] == "conjecture1":
            rec = by_index[f["index"]]
            out.append({**f, "profile": rec["profile"]})
    return out


# --- output ------------------------------------------------------------------------------------


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _fmt(r: Optional[dict]) -> str:
    if r is None:
        return ""
    return r["num"] if r["den"] == "1" else f"{r['num']}/{r['den']}"


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "source", "graph6", "n", "delta", "kappa", "c", "cbar", "pbar",
                "check", "applicable", "value", "satisfied", "slack", "note"])
    for rec in report["records"]:
        p = rec["profile"]
        head = [rec["index"], rec["source"], rec["graph6"], p["n"], p["delta"], p["kappa"], p["c"],
                "" if p["cbar"] is None else p["cbar"], p["pbar"]]
        for name, e in rec.get("bounds", {}).items():
            w.writerow(head + [name, e["applicable"], _fmt(e["value"]),
                               "" if e["satisfied"] is None else e["satisfied"], _fmt(e["slack"]), e["reason"]])
        if "theoremC" in rec:
            t = rec["theoremC"]
            w.writerow(head + ["theoremC", t["applicable"], "", "" if not t["applicable"] else not t["violated"],
                               "", t.get("reason", "")])
        if "sharpness" in rec:
            s = rec["sharpness"]
            w.writerow(head + ["sharpness", s["applicable"], _fmt(s.get("bound")),
                               s.get("sharp", ""), _fmt(s.get("slack")), s.get("reason", "")])
        for lid, e in rec.get("lemmas", {}).get("results", {}).items():
            w.writerow(head + [f"lemma:{lid}", e["checked"] > 0, _fmt(e["rhs"]), e["holds"],
                               _fmt(e["slack"]), e["context"]])
    return buf.getvalue()


def render(report: dict, fmt: str) -> str:
    return to_json(report) if fmt == "json" else to_csv(report)
