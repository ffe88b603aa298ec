"""AST -> structure graph lowering.

Each rule maps one source node kind to freshly created flow node(s) and is
memoized per source node: the target is created and recorded in the trace
before the rule body runs, so a recursive request for the same source (a
labeled ``break`` asking for its enclosing label, say) gets the node that is
still being filled in. Generalizing rules try their subrules in order and
apply the first whose source kind matches.
"""

from __future__ import annotations

import functools
from collections import defaultdict

from .errors import MalformedLhs, NoApplicableRule, RuleMismatch
from .flowgraph import FlowGraph, Kind
from .render import render
from .source import (
    AssignmentExpr, Block, Break, Condition, Continue, Expression, JumpLabel,
    LocalVariable, LocalVariableStatement, Method, Parameter, Return, SourceNode,
    Statement, SuffixUnaryModificationExpr, WhileLoop, IdentifierReference, walk,
)


def used_vars(node: SourceNode) -> list[SourceNode]:
    """Declarations referenced anywhere in *node*'s containment closure, in
    pre-order of first mention."""
    seen: dict[int, SourceNode] = {}
    for n in walk(node):
        if isinstance(n, IdentifierReference) and n.target not in seen:
            seen[n.target] = n.decl
    return list(seen.values())


def _the(found, node):
    if len(found) != 1:
        raise MalformedLhs(node.id, found)
    return found[0]


def _add_unique(refs: list[int], nid: int):
    if nid not in refs:
        refs.append(nid)


class TraceStore:
    """Per-rule maps from source node id to created flow node id(s)."""

    def __init__(self):
        self.rules: dict[str, dict[int, object]] = defaultdict(dict)

    def __getitem__(self, rule: str) -> dict[int, object]:
        if rule in GENERALIZING:
            merged = {}
            for sub in GENERALIZING[rule]:
                merged.update(self.rules.get(sub, {}))
            return merged
        return self.rules.get(rule, {})

    def lookup(self, rule, src_id):
        return self[rule].get(src_id)


def rule(source, *targets):
    """Declare a transformation rule from *source* kind(s) to *targets*.

    The wrapped method receives the source node followed by the ids of the
    created target nodes; it returns nothing. The rule call itself returns
    the single target id (or a tuple when several targets are declared).
    """
    def deco(body):
        name = body.__name__.removeprefix("rule_")

        @functools.wraps(body)
        def apply(self, src):
            if not isinstance(src, source):
                raise RuleMismatch(name, getattr(src, "kind", type(src).__name__))
            trace = self.traces.rules[name]
            if src.id in trace:
                return trace[src.id]
            ids = tuple(self.graph.add_node(k) for k in targets)
            self.graph.nodes[ids[0]].txt = render(src)
            result = ids[0] if len(ids) == 1 else ids
            trace[src.id] = result
            body(self, src, *ids)
            return result

        apply.source = source
        apply.rule_name = name
        return apply
    return deco


GENERALIZING = {
    "stmt2item": ["local_var_stmt2simple_stmt", "condition2if", "block2block",
                  "return2return", "while_loop2loop", "break2break",
                  "continue2continue", "label2label", "stmt2simple_stmt"],
    "var_creating_rule": ["param2param", "local_var2var"],
}


class Java2FlowGraph:
    """One transformation run: owns its output graph and trace store."""

    def __init__(self, graph: FlowGraph | None = None):
        self.graph = graph if graph is not None else FlowGraph()
        self.traces = TraceStore()

    def run(self, methods) -> tuple[FlowGraph, TraceStore]:
        for m in methods:
            self.rule_method2method(m)
        return self.graph, self.traces

    def _node(self, nid):
        return self.graph.nodes[nid]

    # -- generalizing rules

    def _generalized(self, name, src):
        for sub in GENERALIZING[name]:
            r = getattr(self, "rule_" + sub)
            if isinstance(src, r.source):
                return r(src)
        raise NoApplicableRule(name, getattr(src, "kind", type(src).__name__))

    def stmt2item(self, stmt) -> int:
        return self._generalized("stmt2item", stmt)

    def var_creating_rule(self, var) -> int:
        return self._generalized("var_creating_rule", var)

    def _vars(self, node) -> list[int]:
        return [self.var_creating_rule(d) for d in used_vars(node)]

    # -- rules

    @rule(Method, Kind.METHOD, Kind.EXIT)
    def rule_method2method(self, m, fgm, fgex):
        self._node(fgex).txt = "Exit"
        self._node(fgm).stmts = [self.stmt2item(s) for s in m.statements]
        self._node(fgm).exit = fgex
        self._node(fgm).defs = [self.rule_param2param(p) for p in m.parameters]

    @rule(Parameter, Kind.PARAM)
    def rule_param2param(self, p, fgp):
        pass

    @rule(LocalVariable, Kind.VAR)
    def rule_local_var2var(self, lv, fgv):
        pass

    @rule(LocalVariableStatement, Kind.SIMPLE_STMT)
    def rule_local_var_stmt2simple_stmt(self, lvs, fgss):
        node = self._node(fgss)
        node.defs = [self.rule_local_var2var(lvs.variable)]
        init = lvs.variable.initial_value
        node.uses = self._vars(init) if init is not None else []

    @rule(Statement, Kind.SIMPLE_STMT)
    def rule_stmt2simple_stmt(self, s, fgss):
        node = self._node(fgss)
        closure = list(walk(s))
        for aex in closure:
            if isinstance(aex, AssignmentExpr):
                _add_unique(node.defs, self.var_creating_rule(_the(used_vars(aex.child), aex)))
                for v in self._vars(aex.value):
                    _add_unique(node.uses, v)
        for umex in closure:
            if isinstance(umex, SuffixUnaryModificationExpr):
                var = self.var_creating_rule(_the(used_vars(umex.child), umex))
                _add_unique(node.defs, var)
                _add_unique(node.uses, var)

    @rule(JumpLabel, Kind.LABEL)
    def rule_label2label(self, lbl, fgl):
        self._node(fgl).stmt = self.stmt2item(lbl.statement)

    @rule(Expression, Kind.EXPR)
    def rule_expression2expr(self, ex, fgex):
        self._node(fgex).uses = self._vars(ex)

    @rule(Condition, Kind.IF)
    def rule_condition2if(self, c, fgif):
        node = self._node(fgif)
        node.expr = self.rule_expression2expr(c.condition)
        node.then = self.stmt2item(c.statement)
        if c.else_statement is not None:
            node.else_ = self.stmt2item(c.else_statement)

    @rule(Block, Kind.BLOCK)
    def rule_block2block(self, b, fgb):
        self._node(fgb).stmts = [self.stmt2item(s) for s in b.statements]

    @rule(Return, Kind.RETURN)
    def rule_return2return(self, r, fgr):
        self._node(fgr).uses = self._vars(r)

    @rule(Break, Kind.BREAK)
    def rule_break2break(self, b, fgb):
        if b.decl is not None:
            self._node(fgb).label = self.rule_label2label(b.decl)

    @rule(Continue, Kind.CONTINUE)
    def rule_continue2continue(self, c, fgc):
        if c.decl is not None:
            self._node(fgc).label = self.rule_label2label(c.decl)

    @rule(WhileLoop, Kind.LOOP)
    def rule_while_loop2loop(self, wl, fgl):
        node = self._node(fgl)
        node.expr = self.rule_expression2expr(wl.condition)
        node.body = self.stmt2item(wl.statement)


def java_to_flowgraph(methods) -> tuple[FlowGraph, TraceStore]:
    return Java2FlowGraph().run(methods)
