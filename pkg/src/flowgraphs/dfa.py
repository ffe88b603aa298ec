"""Data flow synthesis: link each definition to the uses it reaches.

For every flow instruction and every variable it reads, walk backwards over
``cfPrev`` until hitting instructions that write the variable; those are the
nearest definers. A definer stops the walk along its path, and a visited set
guards against control flow cycles.
"""

from __future__ import annotations

from collections import deque

from .flowgraph import DATA, FlowGraph


def find_nearest_definers(graph: FlowGraph, fi: int, uv: int) -> list[int]:
    """Nearest cf-predecessors of *fi* that define *uv*, in discovery order."""
    preds = list(dict.fromkeys(graph.predecessors(fi)))
    result: list[int] = []
    known: set[int] = set()
    while preds:
        definers = [p for p in preds if uv in graph.nodes[p].defs]
        others = [p for p in preds if uv not in graph.nodes[p].defs]
        result.extend(definers)
        known.update(preds)
        # dedupe so a node reached twice in one round is expanded once
        preds = list(dict.fromkeys(q for o in others for q in graph.predecessors(o) if q not in known))
    return result


def synthesize_df_edges(graph: FlowGraph, keep_vars: bool = False) -> None:
    for fi in graph.flow_instrs():
        for used_var in graph.nodes[fi].uses:
            for definer in find_nearest_definers(graph, fi, used_var):
                graph.add_df_edge(definer, fi)
    if not keep_vars:
        prune_data_nodes(graph)


def prune_data_nodes(graph: FlowGraph) -> None:
    for nid in [n for n, node in graph.nodes.items() if node.kind in DATA]:
        graph.delete_node(nid)


def df_oracle(graph: FlowGraph) -> set[tuple[int, int]]:
    """Reference def-use pairs by forward reachability, one search per
    (definer, variable). Requires def/use lists, so run it before pruning."""
    pairs = set()
    for a, node in graph.nodes.items():
        for v in node.defs:
            seen = set()
            todo = deque(graph.successors(a))
            while todo:
                x = todo.popleft()
                if x in seen:
                    continue
                seen.add(x)
                xn = graph.nodes[x]
                if v in xn.uses:
                    pairs.add((a, x))
                if v not in xn.defs:
                    todo.extend(graph.successors(x))
    return pairs
