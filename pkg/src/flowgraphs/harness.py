"""Expectation files and the validation run.

An expectation file is JSON naming an input program plus, per relation
(``cf``/``df``), either the exact set of expected ``[source txt, target
txt]`` pairs, an expected count of distinct pairs, or a ``*_subset`` list
that only has to be contained in the result. A missing key skips the check.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from .cfa import synthesize_cf_edges
from .dfa import synthesize_df_edges
from .errors import FlowgraphError, PipelineError, SchemaError
from .flowgraph import CF_NEXT, DF_NEXT, FlowGraph
from .frontend import load_source_file
from .transform import java_to_flowgraph

Pairs = frozenset  # of (str, str)
STAGES = ("struct", "cf", "df")


@dataclass(frozen=True)
class Check:
    mode: str  # "set", "subset", "count" or "skip"
    pairs: Pairs = frozenset()
    count: int = 0


@dataclass(frozen=True)
class Expectation:
    input: Path
    cf: Check = Check("skip")
    df: Check = Check("skip")


@dataclass
class RelationResult:
    mode: str
    missing: set = field(default_factory=set)
    extra: set = field(default_factory=set)
    count_ok: Optional[bool] = None
    actual_count: Optional[int] = None

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra and self.count_ok is not False

    def to_dict(self) -> dict:
        d = {"mode": self.mode, "missing": sorted(map(list, self.missing)),
             "extra": sorted(map(list, self.extra))}
        if self.count_ok is not None:
            d["count_ok"] = self.count_ok
            d["actual_count"] = self.actual_count
        return d


@dataclass
class ValidationReport:
    cf: RelationResult
    df: RelationResult
    timings_ms: dict = field(default_factory=dict)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.cf.ok and self.df.ok

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return 2
        return 0 if self.passed else 1

    # flat accessors
    cf_missing = property(lambda self: self.cf.missing)
    cf_extra = property(lambda self: self.cf.extra)
    df_missing = property(lambda self: self.df.missing)
    df_extra = property(lambda self: self.df.extra)
    cf_count_ok = property(lambda self: self.cf.count_ok)
    df_count_ok = property(lambda self: self.df.count_ok)

    def to_dict(self) -> dict:
        d = {"pass": self.passed, "cf": self.cf.to_dict(), "df": self.df.to_dict(),
             "timings_ms": self.timings_ms}
        if self.error is not None:
            d["error"] = self.error
        return d

    def format(self) -> str:
        lines = []
        for rel, res, name in (("cf", self.cf, "cfNext"), ("df", self.df, "dfNext")):
            if res.mode == "skip":
                lines.append(f"No expected {name} links given.")
            elif res.mode == "count":
                lines.append(f"Only checking number of {name} links: "
                             f"{'ok' if res.count_ok else 'MISMATCH'} (actual {res.actual_count}).")
            for label, diff in (("Missing", res.missing), ("Too many", res.extra)):
                if diff:
                    lines.append(f"{label} {rel}-edges:")
                    lines.extend(f"  [{s!r} {t!r}]" for s, t in sorted(diff))
        if self.timings_ms:
            lines.append("Execution Times:")
            lines.extend(f"  - {k}: {v:.3f} ms" for k, v in self.timings_ms.items())
        if self.error is not None:
            lines.append(f"ERROR {self.error}")
        else:
            lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def _pairs(value, path) -> Pairs:
    if not isinstance(value, list):
        raise SchemaError(path, "expected a list of [source, target] pairs")
    out = set()
    for i, p in enumerate(value):
        if (not isinstance(p, list) or len(p) != 2
                or not all(isinstance(s, str) and s for s in p)):
            raise SchemaError(f"{path}[{i}]", "expected [non-empty string, non-empty string]")
        out.add((p[0], p[1]))
    return frozenset(out)


def _check(doc, rel) -> Check:
    exact, subset = doc.get(rel), doc.get(f"{rel}_subset")
    if exact is not None and subset is not None:
        raise SchemaError(f"$.{rel}", f"'{rel}' and '{rel}_subset' are mutually exclusive")
    if subset is not None:
        return Check("subset", _pairs(subset, f"$.{rel}_subset"))
    if exact is None:
        return Check("skip")
    if isinstance(exact, int) and not isinstance(exact, bool):
        if exact < 0:
            raise SchemaError(f"$.{rel}", "count must be non-negative")
        return Check("count", count=exact)
    return Check("set", _pairs(exact, f"$.{rel}"))


def parse_expectation(doc: dict, base: Union[str, Path] = ".") -> Expectation:
    if not isinstance(doc, dict):
        raise SchemaError("$", "expectation must be a JSON object")
    inp = doc.get("input")
    if not isinstance(inp, str) or not inp:
        raise SchemaError("$.input", "missing or not a string")
    return Expectation(Path(base) / inp, _check(doc, "cf"), _check(doc, "df"))


def load_expectation(path) -> Expectation:
    """Read an expectation file; ``input`` resolves relative to the file."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    return parse_expectation(doc, path.parent)


def run_pipeline(path, stage: str = "df", *, implicit_exit_fallthrough=False,
                 keep_vars=False, timings: Optional[dict] = None) -> FlowGraph:
    """frontend -> transform -> cf -> df, stopping after *stage*."""
    if stage not in STAGES:
        raise ValueError(f"unknown stage {stage!r}")
    timings = timings if timings is not None else {}

    def timed(key, stage_name, fn, *args, **kw):
        t0 = time.perf_counter()
        try:
            return fn(*args, **kw)
        except (FlowgraphError, OSError, UnicodeDecodeError) as exc:
            raise PipelineError(stage_name, exc) from exc
        finally:
            timings[key] = (time.perf_counter() - t0) * 1000.0

    methods = timed("parse", "frontend", load_source_file, path)
    graph, _ = timed("transform", "transform", java_to_flowgraph, methods)
    if stage in ("cf", "df"):
        timed("cf", "cfa", synthesize_cf_edges, graph,
              implicit_exit_fallthrough=implicit_exit_fallthrough)
    if stage == "df":
        timed("df", "dfa", synthesize_df_edges, graph, keep_vars=keep_vars)
    return graph


def compare(check: Check, actual: set) -> RelationResult:
    res = RelationResult(check.mode)
    if check.mode == "set":
        res.missing = set(check.pairs - actual)
        res.extra = set(actual - check.pairs)
    elif check.mode == "subset":
        res.missing = set(check.pairs - actual)
    elif check.mode == "count":
        res.actual_count = len(actual)
        res.count_ok = len(actual) == check.count
    return res


def validate(exp: Expectation, *, implicit_exit_fallthrough=False) -> ValidationReport:
    timings: dict = {}
    try:
        graph = run_pipeline(exp.input, implicit_exit_fallthrough=implicit_exit_fallthrough,
                             timings=timings)
    except PipelineError as exc:
        return ValidationReport(RelationResult(exp.cf.mode), RelationResult(exp.df.mode),
                                timings, error=str(exc))
    return ValidationReport(compare(exp.cf, graph.cross_pairs(CF_NEXT)),
                            compare(exp.df, graph.cross_pairs(DF_NEXT)), timings)
