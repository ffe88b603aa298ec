"""Control flow synthesis over the structure graph.

The method body is flattened into a work sequence walked front to back with
one element of look-ahead: each flow instruction links to the first flow
instruction of whatever follows it, and structured elements rewrite the
sequence (a block splices in its statements, a loop becomes
``expr body expr``, an if spawns a nested walk for its then-branch).

Loop context (condition and successor) is scoped: it is restored once the
loop's trailing condition has been processed, so a ``break`` after an inner
loop still targets the outer one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .errors import (EmptyContainer, ExitNotLast, MissingLabelTarget, MissingLoopContext,
                     MissingSuccessor)
from .flowgraph import FLOW_INSTR, FlowGraph, Kind


class Step(NamedTuple):
    node: int
    # loop context to reinstate after this element is processed
    restore: Optional[tuple] = None
    # look-ahead target only: supplies a successor, never processed itself
    peek_only: bool = False


@dataclass
class CfState:
    pending: deque = field(default_factory=deque)
    exit: Optional[int] = None
    loop_expr: Optional[int] = None
    loop_succ: Optional[int] = None
    label_succ: dict = field(default_factory=dict)

    @classmethod
    def start(cls, nodes, exit):
        return cls(deque(Step(n) for n in nodes), exit)

    def fork(self, nodes):
        return CfState(deque(nodes), self.exit, self.loop_expr, self.loop_succ, dict(self.label_succ))


def cf_peek(graph: FlowGraph, el: int) -> int:
    """*el* itself if it is a flow instruction, else the first one inside it."""
    start = el
    while True:
        node = graph.node(el)
        if node.kind in FLOW_INSTR:
            return el
        children = graph.traversal_children(el)
        if not children:
            raise EmptyContainer(start, graph.node(start).txt)
        el = children[0]


def cf_synth(graph: FlowGraph, state: CfState, implicit_exit_fallthrough: bool = False) -> None:
    frames = [state]
    while frames:
        st = frames[-1]
        if not st.pending:
            frames.pop()
            continue
        step = st.pending.popleft()
        if step.peek_only:
            continue
        el = step.node
        n = st.pending[0].node if st.pending else None
        node = graph.node(el)
        kind = node.kind

        if kind is Kind.METHOD:
            stmts = graph.traversal_children(el)
            graph.add_cf_edge(el, cf_peek(graph, stmts[0]))
            st.pending = deque(Step(s) for s in stmts)
            st.loop_expr = st.loop_succ = None
            st.label_succ = {}

        elif kind in (Kind.SIMPLE_STMT, Kind.EXPR):
            if n is not None:
                graph.add_cf_edge(el, cf_peek(graph, n))
            elif implicit_exit_fallthrough and st.exit is not None:
                graph.add_cf_edge(el, st.exit)

        elif kind is Kind.BLOCK:
            st.pending.extendleft(Step(c) for c in reversed(graph.traversal_children(el)))

        elif kind is Kind.LABEL:
            st.pending.appendleft(Step(node.stmt))
            st.label_succ[el] = n

        elif kind is Kind.RETURN:
            graph.add_cf_edge(el, st.exit)

        elif kind is Kind.BREAK:
            if node.label is not None:
                succ = st.label_succ.get(node.label)
                if succ is None:
                    raise MissingLabelTarget(node.label, graph.node(node.label).txt)
            else:
                succ = st.loop_succ
                if succ is None:
                    raise MissingLoopContext(el, node.txt)
            graph.add_cf_edge(el, cf_peek(graph, succ))

        elif kind is Kind.CONTINUE:
            if node.label is not None:
                labeled = graph.node(node.label).stmt
                if labeled is None or graph.node(labeled).kind is not Kind.LOOP:
                    raise MissingLoopContext(el, node.txt)
                graph.add_cf_edge(el, cf_peek(graph, node.label))
            else:
                if st.loop_expr is None:
                    raise MissingLoopContext(el, node.txt)
                graph.add_cf_edge(el, st.loop_expr)

        elif kind is Kind.LOOP:
            expr, body = node.expr, node.body
            saved = (st.loop_expr, st.loop_succ)
            st.pending.extendleft([Step(expr, restore=saved), Step(body), Step(expr)])
            st.loop_expr, st.loop_succ = expr, n

        elif kind is Kind.IF:
            if n is not None:
                after = cf_peek(graph, n)
            elif implicit_exit_fallthrough and st.exit is not None:
                after = st.exit
            else:
                raise MissingSuccessor(el, node.txt)
            if node.else_ is not None:
                st.pending.extendleft([Step(node.else_), Step(node.expr)])
            else:
                st.pending.appendleft(Step(node.expr))
            frames.append(st.fork([Step(node.expr), Step(node.then), Step(after, peek_only=True)]))

        elif kind is Kind.EXIT:
            if n is not None:
                raise ExitNotLast(el)

        if step.restore is not None:
            st.loop_expr, st.loop_succ = step.restore


def synthesize_cf_edges(graph: FlowGraph, implicit_exit_fallthrough: bool = False) -> None:
    for m in list(graph.methods):
        cf_synth(graph, CfState.start([m], graph.node(m).exit), implicit_exit_fallthrough)
