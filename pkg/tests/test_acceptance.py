"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line in ACCEPTANCE_RESULTS; conftest prints
them in the terminal summary so a plain ``pytest`` run shows the verdicts.
"""

import json
import re
import time

from flowgraphs.cli import main
from flowgraphs.dfa import df_oracle, synthesize_df_edges
from flowgraphs.flowgraph import CF_NEXT, DF_NEXT
from flowgraphs.frontend import load_source_file, parse_source
from flowgraphs.harness import load_expectation, run_pipeline, validate
from flowgraphs.render import render
from flowgraphs.source import Statement, walk
from flowgraphs.transform import java_to_flowgraph

from checks import cf_violations, memo_violations
from conftest import ACCEPTANCE_RESULTS, FIXTURES, TEST4_SRC, build
from progen import generate

N_PROGRAMS = 300
FIXTURE_SOURCES = ["Test0.java", "Test4.java"]


def record(name, ok, detail):
    ACCEPTANCE_RESULTS[name] = (ok, detail)
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert ok, detail


def test_test4_exact_reproduction(tmp_path):
    spec = json.loads((FIXTURES / "test4.spec.json").read_text())
    exp_cf = {tuple(p) for p in spec["cf"]}
    exp_df = {tuple(p) for p in spec["df"]}
    assert (len(exp_cf), len(exp_df)) == (11, 12)
    src = tmp_path / "Test4.java"
    src.write_text(TEST4_SRC)
    t0 = time.perf_counter()
    g = run_pipeline(src)
    elapsed = time.perf_counter() - t0
    cf, df = g.cross_pairs(CF_NEXT), g.cross_pairs(DF_NEXT)
    ok = cf == exp_cf and df == exp_df and elapsed < 1.0
    record("Test4 exact reproduction", ok,
           f"cf {len(cf & exp_cf)}/11 (+{len(cf - exp_cf)} extra), "
           f"df {len(df & exp_df)}/12 (+{len(df - exp_df)} extra), {elapsed * 1000:.1f} ms")


def test_test0_containment():
    g = run_pipeline(FIXTURES / "Test0.java")
    want_cf = {("testMethod()", "int a = 1;"), ("return b * c;", "Exit")}
    want_df = {("int a = 1;", "int c = a + b;"), ("b = a - b;", "return b * c;")}
    cf_hit = want_cf & g.cross_pairs(CF_NEXT)
    df_hit = want_df & g.cross_pairs(DF_NEXT)
    record("Test0 containment", cf_hit == want_cf and df_hit == want_df,
           f"cf {len(cf_hit)}/2, df {len(df_hit)}/2")


def test_dfa_oracle_equivalence():
    t0 = time.perf_counter()
    mismatches, features = [], set()
    max_stmts = max_depth = 0
    for seed in range(N_PROGRAMS):
        src, n_stmts, depth = generate(seed)
        max_stmts, max_depth = max(max_stmts, n_stmts), max(max_depth, depth)
        features |= {f for f in ("while", "if", "break", "continue", ":") if f in src}
        _, g, _ = build(src)
        expected = df_oracle(g)
        synthesize_df_edges(g)
        if set(g.edges(DF_NEXT)) != expected:
            mismatches.append(seed)
    elapsed = time.perf_counter() - t0
    ok = (not mismatches and elapsed < 30 and max_stmts <= 20 and max_depth <= 4
          and features == {"while", "if", "break", "continue", ":"})
    record("DFA oracle equivalence", ok,
           f"{N_PROGRAMS - len(mismatches)}/{N_PROGRAMS} programs equal "
           f"(max {max_stmts} stmts, depth {max_depth}), {elapsed:.2f} s")


def test_cfa_invariants():
    sources = [(FIXTURES / f).read_text() for f in FIXTURE_SOURCES]
    sources += [generate(seed)[0] for seed in range(N_PROGRAMS)]
    bad = {}
    for i, src in enumerate(sources):
        _, g, _ = build(src)
        v = cf_violations(g)
        if v:
            bad[i] = v
    record("CFA invariant suite", not bad,
           f"{len(sources) - len(bad)}/{len(sources)} graphs with zero violations")


def test_memoization_audit():
    sources = [(FIXTURES / f).read_text() for f in FIXTURE_SOURCES]
    sources += [generate(seed)[0] for seed in range(50)]
    total = []
    for src in sources:
        methods = parse_source(src)
        g, traces = java_to_flowgraph(methods)
        total += memo_violations(methods, g, traces)
    record("Memoization audit", not total, f"{len(total)} violations over {len(sources)} programs")


def normalize(text):
    text = re.sub(r"\s+", " ", text.strip())
    text = re.sub(r"\s*(\+\+|--)", r"\1", text)
    return re.sub(r"\s*;", ";", text)


def test_render_roundtrip():
    checked, wrong = 0, []
    for name in FIXTURE_SOURCES:
        path = FIXTURES / name
        expected = [normalize(t) for t in re.findall(r"[^;{})]+;", path.read_text())]
        [m] = load_source_file(path)
        rendered = [render(n) for n in walk(m) if isinstance(n, Statement) and render(n).endswith(";")]
        checked += len(expected)
        if rendered != expected:
            wrong.append((name, rendered, expected))
        # each statement on its own, re-parsed from its own text
        for text in expected:
            body = f"while (i > 0) {text}" if text == "break;" else text
            [one] = parse_source(f"int f(int a, int b, int c, int i) {{ {{ {body} }} }}")
            stmt = one.statements[0].statements[0]
            stmt = stmt.statement if text == "break;" else stmt
            if render(stmt) != text:
                wrong.append(text)
    record("Render round-trip", not wrong and checked == 9,
           f"{checked - len(wrong)}/{checked} statements byte-identical")


def test_harness_semantics(tmp_path, capsys):
    spec = json.loads((FIXTURES / "test4.spec.json").read_text())
    (tmp_path / "Test4.java").write_text(TEST4_SRC)
    results = []

    def run(doc, name):
        p = tmp_path / name
        p.write_text(json.dumps(doc))
        return validate(load_expectation(p)), p

    for rel in ("cf", "df"):
        perturbed = json.loads(json.dumps(spec))
        src, dst = perturbed[rel][0]
        perturbed[rel][0] = [src, dst + "X"]
        rep, _ = run(perturbed, f"perturb_{rel}.json")
        missing, extra = getattr(rep, f"{rel}_missing"), getattr(rep, f"{rel}_extra")
        # the perturbed expected pair is missing; the real one it replaced is now extra
        results.append(len(missing) == 1 and len(extra) == 1 and rep.exit_code == 1)
        dropped = json.loads(json.dumps(spec))
        dropped[rel].pop()
        rep, _ = run(dropped, f"drop_{rel}.json")
        results.append(len(getattr(rep, f"{rel}_missing")) == 0
                       and len(getattr(rep, f"{rel}_extra")) == 1)
        added = json.loads(json.dumps(spec))
        added[rel].append(["nowhere", "nothing"])
        rep, _ = run(added, f"add_{rel}.json")
        results.append(len(getattr(rep, f"{rel}_missing")) == 1
                       and len(getattr(rep, f"{rel}_extra")) == 0)
    for cf, df in [(11, 12), (12, 12), (11, 11)]:
        rep, _ = run({"input": "Test4.java", "cf": cf, "df": df}, "count.json")
        results.append(rep.passed == (cf == 11 and df == 12))
    _, ok_path = run(spec, "ok.json")
    _, fail_path = run(dict(spec, cf=10), "fail.json")
    codes = (main(["validate", str(ok_path)]), main(["validate", str(fail_path)]),
             main(["validate", str(tmp_path / "absent.json")]),
             main(["analyze", str(tmp_path / "missing.java")]))
    capsys.readouterr()
    results.append(codes == (0, 1, 2, 2))
    record("Harness semantics", all(results),
           f"{sum(results)}/{len(results)} checks, exit codes {codes}")
