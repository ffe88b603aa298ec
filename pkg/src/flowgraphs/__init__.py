"""Control and data flow graph synthesis for a small imperative Java subset."""

from .cfa import cf_peek, cf_synth, synthesize_cf_edges
from .dfa import df_oracle, find_nearest_definers, synthesize_df_edges
from .flowgraph import FlowGraph, FlowNode, Kind, export_dot, export_json, import_json
from .frontend import load_ast_json, parse_source, parse_unit, tokenize
from .harness import load_expectation, run_pipeline, validate
from .render import operator_text, render
from .transform import java_to_flowgraph, used_vars

__all__ = [
    "FlowGraph", "FlowNode", "Kind", "cf_peek", "cf_synth", "df_oracle", "export_dot",
    "export_json", "find_nearest_definers", "import_json", "java_to_flowgraph",
    "load_ast_json", "load_expectation", "operator_text", "parse_source", "parse_unit",
    "render", "run_pipeline", "synthesize_cf_edges", "synthesize_df_edges", "tokenize",
    "used_vars", "validate",
]
