"""Exception hierarchy shared by every stage of the pipeline."""


class FlowgraphError(Exception):
    """Base class for all errors raised by this package."""


# frontend

class UnknownCharacter(FlowgraphError):
    def __init__(self, line, col, char=""):
        self.line, self.col, self.char = line, col, char
        super().__init__(f"{line}:{col}: unknown character {char!r}")


class ParseError(FlowgraphError):
    def __init__(self, line, col, expected, found=None):
        self.line, self.col, self.expected, self.found = line, col, expected, found
        msg = f"{line}:{col}: expected {expected}"
        if found is not None:
            msg += f", found {found!r}"
        super().__init__(msg)


class UnresolvedName(FlowgraphError):
    def __init__(self, name, line=None, col=None):
        self.name = name
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(f"{where}unresolved name {name!r}")


class UnresolvedLabel(FlowgraphError):
    def __init__(self, name, line=None, col=None):
        self.name = name
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(f"{where}unresolved label {name!r}")


class SchemaError(FlowgraphError):
    def __init__(self, path, reason=""):
        self.path = path
        super().__init__(f"{path}: {reason}" if reason else path)


class DanglingReference(FlowgraphError):
    def __init__(self, id):
        self.id = id
        super().__init__(f"reference to unknown node id {id}")


# render

class UnsupportedKind(FlowgraphError):
    def __init__(self, kind):
        self.kind = kind
        super().__init__(f"no renderer for node kind {kind!r}")


# flowgraph

class UnknownId(FlowgraphError, KeyError):
    def __init__(self, id):
        self.id = id
        super().__init__(f"no flow node with id {id}")

    def __str__(self):
        return self.args[0]


class NotFlowInstr(FlowgraphError):
    def __init__(self, id, kind=None):
        self.id, self.kind = id, kind
        super().__init__(f"node {id} ({kind}) is not a flow instruction")


# transform

class RuleMismatch(FlowgraphError):
    def __init__(self, rule, kind):
        self.rule, self.kind = rule, kind
        super().__init__(f"rule {rule} does not apply to {kind}")


class NoApplicableRule(FlowgraphError):
    def __init__(self, rule, kind):
        self.rule, self.kind = rule, kind
        super().__init__(f"no subrule of {rule} applies to {kind}")


class MalformedLhs(FlowgraphError):
    def __init__(self, node_id, found):
        self.node_id, self.found = node_id, found
        super().__init__(
            f"source node {node_id}: expected exactly one variable, found {len(found)}")


# cfa

class CfSynthError(FlowgraphError):
    pass


class EmptyContainer(CfSynthError):
    def __init__(self, id, txt=""):
        self.id = id
        super().__init__(f"node {id} {txt!r} contains no flow instruction")


class MissingLabelTarget(CfSynthError):
    def __init__(self, label_id, txt=""):
        self.label_id = label_id
        super().__init__(f"break to label {txt!r} ({label_id}) outside its statement")


class MissingLoopContext(CfSynthError):
    def __init__(self, id, txt=""):
        self.id = id
        super().__init__(f"{txt!r} ({id}) has no enclosing loop")


class ExitNotLast(CfSynthError):
    def __init__(self, id):
        self.id = id
        super().__init__(f"exit node {id} is followed by further elements")


class MissingSuccessor(CfSynthError):
    def __init__(self, id, txt=""):
        self.id = id
        super().__init__(f"{txt!r} ({id}) has no following element")


# harness

class PipelineError(FlowgraphError):
    def __init__(self, stage, cause):
        self.stage, self.cause = stage, cause
        super().__init__(f"[{stage}] {cause}")
