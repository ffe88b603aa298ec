from pathlib import Path

import pytest

from flowgraphs.cfa import synthesize_cf_edges
from flowgraphs.frontend import parse_source
from flowgraphs.transform import java_to_flowgraph

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

TEST4_SRC = ("void testMethod() { int i = 100; while (i > 0) { while (i > 50) "
             "{ i = i - 10; if (i == 50) break; } i--; } }")

# shared with test_acceptance: criterion -> (ok, detail)
ACCEPTANCE_RESULTS = {}


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def build(src, cf=True):
    """Parse + transform (+ cf synthesis); returns (methods, graph, traces)."""
    methods = parse_source(src)
    graph, traces = java_to_flowgraph(methods)
    if cf:
        synthesize_cf_edges(graph)
    return methods, graph, traces


def by_txt(graph, txt):
    hits = [nid for nid, n in graph.nodes.items() if n.txt == txt]
    assert len(hits) == 1, (txt, hits)
    return hits[0]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
