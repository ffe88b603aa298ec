"""Model-to-text: the concrete syntax stored in each flow node's ``txt``.

``render`` dispatches on the node class. Containers render as fixed
placeholders (``{...}``, ``if``, ``while``) since only atomic statements and
expressions carry their full text into the structure graph.
"""

from functools import singledispatch

from .errors import UnsupportedKind
from .source import (
    AssignmentExpr, BinaryExpr, Block, Break, Condition, Continue,
    DecimalIntegerLiteral, ExpressionStatement, IdentifierReference, JumpLabel,
    LocalVariable, LocalVariableStatement, Method, Operator, Parameter, PrimitiveType,
    Return, SourceNode, SuffixUnaryModificationExpr, UnaryExpr, WhileLoop,
)


def operator_text(op: Operator) -> str:
    return op.value


@singledispatch
def render(node: SourceNode) -> str:
    raise UnsupportedKind(getattr(node, "kind", type(node).__name__))


@render.register
def _(node: Method):
    return f"{node.name}()"


@render.register
def _(node: PrimitiveType):
    return node.name.lower()


@render.register
def _(node: LocalVariableStatement):
    var = node.variable
    text = f"{render(var.type_ref)} {render(var)}"
    if var.initial_value is not None:
        text += f" = {render(var.initial_value)}"
    return text + ";"


@render.register(LocalVariable)
@render.register(Parameter)
def _(node):
    return node.name


@render.register
def _(node: IdentifierReference):
    if node.decl is None:
        raise UnsupportedKind(f"unresolved IdentifierReference {node.id}")
    return render(node.decl)


@render.register
def _(node: BinaryExpr):
    return f"{render(node.left)} {operator_text(node.operator)} {render(node.right)}"


@render.register
def _(node: AssignmentExpr):
    return f"{render(node.child)} {operator_text(node.operator)} {render(node.value)}"


@render.register
def _(node: UnaryExpr):
    return "".join(operator_text(op) for op in node.operators) + render(node.child)


@render.register
def _(node: SuffixUnaryModificationExpr):
    return render(node.child) + operator_text(node.operator)


@render.register
def _(node: DecimalIntegerLiteral):
    return str(node.decimal_value)


@render.register
def _(node: Block):
    return "{...}"


@render.register
def _(node: Condition):
    return "if"


@render.register
def _(node: WhileLoop):
    return "while"


@render.register
def _(node: JumpLabel):
    return node.name + ":"


@render.register(Break)
@render.register(Continue)
def _(node):
    keyword = "break" if isinstance(node, Break) else "continue"
    if node.decl is not None:
        return f"{keyword} {node.decl.name};"
    return keyword + ";"


@render.register
def _(node: Return):
    if node.return_value is None:
        return "return;"
    return f"return {render(node.return_value)};"


@render.register
def _(node: ExpressionStatement):
    return render(node.expression) + ";"
