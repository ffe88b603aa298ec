"""Structure-graph IR: a node store plus control/data flow adjacency.

Nodes live in ``FlowGraph.nodes`` keyed by integer id. Containment (the
``stmts``/``expr``/``then``/... references) is what the control flow
synthesis walks; ``defs``/``uses`` point at ``Var``/``Param`` data nodes,
which are owned by the graph directly and never appear as children.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import NotFlowInstr, SchemaError, UnknownId


class Kind(str, enum.Enum):
    METHOD = "Method"
    EXIT = "Exit"
    SIMPLE_STMT = "SimpleStmt"
    EXPR = "Expr"
    BLOCK = "Block"
    IF = "If"
    LOOP = "Loop"
    RETURN = "Return"
    BREAK = "Break"
    CONTINUE = "Continue"
    LABEL = "Label"
    VAR = "Var"
    PARAM = "Param"

    def __str__(self):
        return self.value


FLOW_INSTR = frozenset({Kind.METHOD, Kind.EXIT, Kind.SIMPLE_STMT, Kind.EXPR,
                        Kind.RETURN, Kind.BREAK, Kind.CONTINUE})
STRUCTURAL = frozenset({Kind.BLOCK, Kind.IF, Kind.LOOP, Kind.LABEL})
DATA = frozenset({Kind.VAR, Kind.PARAM})

CF_NEXT = "cfNext"
DF_NEXT = "dfNext"

# python attribute -> serialized reference name
_SCALAR_REFS = {"exit": "exit", "expr": "expr", "then": "then", "else_": "else",
                "body": "body", "label": "label", "stmt": "stmt"}
_LIST_REFS = {"stmts": "stmts", "defs": "def", "uses": "use"}


@dataclass
class FlowNode:
    id: int
    kind: Kind
    txt: str = ""
    stmts: list[int] = field(default_factory=list)
    defs: list[int] = field(default_factory=list)
    uses: list[int] = field(default_factory=list)
    exit: Optional[int] = None
    expr: Optional[int] = None
    then: Optional[int] = None
    else_: Optional[int] = None
    body: Optional[int] = None
    label: Optional[int] = None
    stmt: Optional[int] = None

    @property
    def is_flow_instr(self) -> bool:
        return self.kind in FLOW_INSTR


class FlowGraph:
    def __init__(self):
        self.nodes: dict[int, FlowNode] = {}
        self.cf_next: dict[int, list[int]] = {}
        self.cf_prev: dict[int, list[int]] = {}
        self.df_next: dict[int, list[int]] = {}
        self.methods: list[int] = []
        self._next_id = 1

    def __len__(self):
        return len(self.nodes)

    def add_node(self, kind, txt: str = "") -> int:
        kind = Kind(kind)
        nid = self._next_id
        self._next_id += 1
        self.nodes[nid] = FlowNode(nid, kind, txt)
        if kind is Kind.METHOD:
            self.methods.append(nid)
        return nid

    def node(self, nid: int) -> FlowNode:
        try:
            return self.nodes[nid]
        except KeyError:
            raise UnknownId(nid) from None

    def __getitem__(self, nid):
        return self.node(nid)

    def __contains__(self, nid):
        return nid in self.nodes

    def of_kind(self, *kinds) -> list[int]:
        kinds = {Kind(k) for k in kinds}
        return [nid for nid, n in self.nodes.items() if n.kind in kinds]

    def flow_instrs(self) -> list[int]:
        return [nid for nid, n in self.nodes.items() if n.kind in FLOW_INSTR]

    def traversal_children(self, nid: int) -> list[int]:
        """Ordered containment children, as walked by control flow synthesis."""
        n = self.node(nid)
        if n.kind is Kind.METHOD:
            return list(n.stmts) + ([n.exit] if n.exit is not None else [])
        if n.kind is Kind.IF:
            return [c for c in (n.expr, n.then, n.else_) if c is not None]
        if n.kind is Kind.LOOP:
            return [c for c in (n.expr, n.body) if c is not None]
        if n.kind is Kind.BLOCK:
            return list(n.stmts)
        if n.kind is Kind.LABEL:
            return [n.stmt] if n.stmt is not None else []
        return []

    def contents(self, nid: int) -> Iterator[int]:
        """All nodes transitively contained in *nid*, pre-order, excluding *nid*."""
        stack = list(reversed(self.traversal_children(nid)))
        while stack:
            c = stack.pop()
            yield c
            stack.extend(reversed(self.traversal_children(c)))

    # -- edges

    def _check_instr(self, nid):
        n = self.node(nid)
        if n.kind not in FLOW_INSTR:
            raise NotFlowInstr(nid, n.kind.value)

    def add_cf_edge(self, src: int, dst: int) -> None:
        self._check_instr(src)
        self._check_instr(dst)
        succ = self.cf_next.setdefault(src, [])
        if dst in succ:
            return
        succ.append(dst)
        self.cf_prev.setdefault(dst, []).append(src)

    def add_df_edge(self, src: int, dst: int) -> None:
        self._check_instr(src)
        self._check_instr(dst)
        succ = self.df_next.setdefault(src, [])
        if dst not in succ:
            succ.append(dst)

    def successors(self, nid: int, edge: str = CF_NEXT) -> list[int]:
        adj = self.cf_next if edge == CF_NEXT else self.df_next
        return adj.get(nid, [])

    def predecessors(self, nid: int) -> list[int]:
        return self.cf_prev.get(nid, [])

    def edges(self, edge: str = CF_NEXT) -> list[tuple[int, int]]:
        adj = _adjacency(self, edge)
        return [(s, t) for s in sorted(adj) for t in adj[s]]

    def remove_cf_edge(self, src: int, dst: int) -> None:
        if dst in self.cf_next.get(src, []):
            self.cf_next[src].remove(dst)
            self.cf_prev[dst].remove(src)

    def delete_node(self, nid: int) -> None:
        """Remove *nid* together with every reference and edge touching it."""
        self.node(nid)
        del self.nodes[nid]
        for n in self.nodes.values():
            for attr in _LIST_REFS:
                refs = getattr(n, attr)
                if nid in refs:
                    setattr(n, attr, [r for r in refs if r != nid])
            for attr in _SCALAR_REFS:
                if getattr(n, attr) == nid:
                    setattr(n, attr, None)
        for adj in (self.cf_next, self.cf_prev, self.df_next):
            adj.pop(nid, None)
            for src, targets in adj.items():
                if nid in targets:
                    adj[src] = [t for t in targets if t != nid]
        if nid in self.methods:
            self.methods.remove(nid)

    def cross_pairs(self, edge: str = CF_NEXT) -> set[tuple[str, str]]:
        """(txt, txt) pairs of every edge of the relation; equal texts collapse."""
        return {(self.nodes[s].txt, self.nodes[t].txt) for s, t in self.edges(edge)}

    def inverse_ok(self) -> bool:
        fwd = {(s, t) for s, ts in self.cf_next.items() for t in ts}
        back = {(s, t) for t, ss in self.cf_prev.items() for s in ss}
        dup = any(len(v) != len(set(v)) for adj in (self.cf_next, self.cf_prev) for v in adj.values())
        return fwd == back and not dup


def _adjacency(graph, edge):
    if edge == CF_NEXT:
        return graph.cf_next
    if edge == DF_NEXT:
        return graph.df_next
    raise ValueError(f"unknown edge relation {edge!r}")


# -- export -----------------------------------------------------------------

def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")


def export_dot(graph: FlowGraph, name: str = "flowgraph") -> str:
    """Graphviz rendering: solid cfNext, dashed dfNext, dotted containment."""
    lines = [f"digraph {name} {{"]
    for nid in sorted(graph.nodes):
        n = graph.nodes[nid]
        shape = "box" if n.kind in FLOW_INSTR else ("ellipse" if n.kind in DATA else "plaintext")
        label = _dot_escape(f"{n.txt}\n({n.kind.value})")
        lines.append(f'  n{nid} [label="{label}", shape={shape}];')
    for nid in sorted(graph.nodes):
        for c in graph.traversal_children(nid):
            lines.append(f"  n{nid} -> n{c} [style=dotted, arrowhead=none];")
    for s, t in graph.edges(CF_NEXT):
        lines.append(f"  n{s} -> n{t} [style=solid];")
    for s, t in graph.edges(DF_NEXT):
        lines.append(f"  n{s} -> n{t} [style=dashed, color=blue];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(graph: FlowGraph) -> dict:
    nodes = []
    for nid in sorted(graph.nodes):
        n = graph.nodes[nid]
        entry = {"id": nid, "kind": n.kind.value, "txt": n.txt}
        for attr, key in _LIST_REFS.items():
            if getattr(n, attr):
                entry[key] = list(getattr(n, attr))
        for attr, key in _SCALAR_REFS.items():
            if getattr(n, attr) is not None:
                entry[key] = getattr(n, attr)
        nodes.append(entry)
    return {
        "nodes": nodes,
        "methods": list(graph.methods),
        "cfNext": [list(e) for e in graph.edges(CF_NEXT)],
        "dfNext": [list(e) for e in graph.edges(DF_NEXT)],
    }


def export_json(graph: FlowGraph) -> str:
    return json.dumps(graph_to_dict(graph), indent=1)


def graph_from_dict(doc: dict) -> FlowGraph:
    graph = FlowGraph()
    try:
        for entry in doc["nodes"]:
            nid = entry["id"]
            n = FlowNode(nid, Kind(entry["kind"]), entry.get("txt", ""))
            for attr, key in _LIST_REFS.items():
                setattr(n, attr, list(entry.get(key, [])))
            for attr, key in _SCALAR_REFS.items():
                setattr(n, attr, entry.get(key))
            graph.nodes[nid] = n
        graph.methods = list(doc.get("methods", graph.of_kind(Kind.METHOD)))
        graph._next_id = max(graph.nodes, default=0) + 1
        for s, t in doc.get("cfNext", []):
            graph.add_cf_edge(s, t)
        for s, t in doc.get("dfNext", []):
            graph.add_df_edge(s, t)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError("$", f"malformed graph document: {exc}") from None
    return graph


def import_json(text: str) -> FlowGraph:
    return graph_from_dict(json.loads(text))
