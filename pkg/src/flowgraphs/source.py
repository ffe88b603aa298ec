"""Source-level AST for the supported Java fragment.

Each node kind is its own dataclass. Containment children are ordinary
fields holding nodes (or lists of nodes); cross references
(``IdentifierReference.target``, ``Break.target``, ``Continue.target``) hold
the *id* of the referenced node, with the resolved object kept in ``decl``
for convenience. ``decl`` is excluded from equality so structural comparison
never chases a reference cycle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, fields
from typing import ClassVar, Iterator, Optional, Union


class Operator(enum.Enum):
    # value is the concrete lexeme
    Multiplication = "*"
    Subtraction = "-"
    Addition = "+"
    Division = "/"
    LessThan = "<"
    GreaterThan = ">"
    Assignment = "="
    MinusMinus = "--"
    PlusPlus = "++"
    AssignmentPlus = "+="
    Equal = "=="


PRIMITIVE_TYPES = ("int", "boolean", "long", "short", "byte", "char", "float", "double", "void")


@dataclass(eq=True)
class SourceNode:
    id: int

    kind: ClassVar[str] = "SourceNode"

    def __init_subclass__(cls, **kw):
        super().__init_subclass__(**kw)
        cls.kind = cls.__name__

    def children(self) -> list[SourceNode]:
        """Containment children in field order."""
        out = []
        for f in fields(self):
            if f.name == "decl":
                continue
            value = getattr(self, f.name)
            if isinstance(value, SourceNode):
                out.append(value)
            elif isinstance(value, list):
                out.extend(v for v in value if isinstance(v, SourceNode))
        return out


def walk(node: SourceNode) -> Iterator[SourceNode]:
    """Depth-first pre-order over the reflexive-transitive containment closure."""
    stack = [node]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(n.children()))


# -- types, variables -------------------------------------------------------

@dataclass(eq=True)
class PrimitiveType(SourceNode):
    name: str = "int"


@dataclass(eq=True)
class Parameter(SourceNode):
    name: str = ""
    type_ref: Optional[PrimitiveType] = None


@dataclass(eq=True)
class LocalVariable(SourceNode):
    name: str = ""
    type_ref: Optional[PrimitiveType] = None
    initial_value: Optional[Expression] = None


Declaration = Union[Parameter, LocalVariable]


# -- expressions ------------------------------------------------------------

@dataclass(eq=True)
class Expression(SourceNode):
    pass


@dataclass(eq=True)
class IdentifierReference(Expression):
    target: int = -1
    decl: Optional[Declaration] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class DecimalIntegerLiteral(Expression):
    decimal_value: int = 0


@dataclass(eq=True)
class AssignmentExpr(Expression):
    child: Optional[Expression] = None
    operator: Operator = Operator.Assignment
    value: Optional[Expression] = None


@dataclass(eq=True)
class BinaryExpr(Expression):
    left: Optional[Expression] = None
    operator: Operator = Operator.Addition
    right: Optional[Expression] = None


class AdditiveExpr(BinaryExpr):
    pass


class MultiplicativeExpr(BinaryExpr):
    pass


class EqualityExpr(BinaryExpr):
    pass


class RelationExpr(BinaryExpr):
    pass


@dataclass(eq=True)
class UnaryExpr(Expression):
    operators: list[Operator] = field(default_factory=list)
    child: Optional[Expression] = None


@dataclass(eq=True)
class SuffixUnaryModificationExpr(Expression):
    child: Optional[Expression] = None
    operator: Operator = Operator.PlusPlus


# -- statements -------------------------------------------------------------

@dataclass(eq=True)
class Statement(SourceNode):
    pass


@dataclass(eq=True)
class LocalVariableStatement(Statement):
    variable: Optional[LocalVariable] = None


@dataclass(eq=True)
class ExpressionStatement(Statement):
    expression: Optional[Expression] = None


@dataclass(eq=True)
class Condition(Statement):
    condition: Optional[Expression] = None
    statement: Optional[Statement] = None
    else_statement: Optional[Statement] = None


@dataclass(eq=True)
class WhileLoop(Statement):
    condition: Optional[Expression] = None
    statement: Optional[Statement] = None


@dataclass(eq=True)
class Block(Statement):
    statements: list[Statement] = field(default_factory=list)


@dataclass(eq=True)
class JumpLabel(Statement):
    name: str = ""
    statement: Optional[Statement] = None


@dataclass(eq=True)
class Break(Statement):
    target: Optional[int] = None
    decl: Optional[JumpLabel] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class Continue(Statement):
    target: Optional[int] = None
    decl: Optional[JumpLabel] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class Return(Statement):
    return_value: Optional[Expression] = None


@dataclass(eq=True)
class Method(SourceNode):
    name: str = ""
    parameters: list[Parameter] = field(default_factory=list)
    statements: list[Statement] = field(default_factory=list)


NODE_CLASSES: dict[str, type[SourceNode]] = {
    cls.kind: cls
    for cls in (
        Method, Parameter, LocalVariableStatement, LocalVariable, ExpressionStatement,
        Condition, WhileLoop, Block, JumpLabel, Break, Continue, Return,
        AssignmentExpr, AdditiveExpr, MultiplicativeExpr, EqualityExpr, RelationExpr,
        UnaryExpr, SuffixUnaryModificationExpr, IdentifierReference,
        DecimalIntegerLiteral, PrimitiveType,
    )
}

BINARY_OPERATORS = {
    AdditiveExpr: {Operator.Addition, Operator.Subtraction},
    MultiplicativeExpr: {Operator.Multiplication, Operator.Division},
    EqualityExpr: {Operator.Equal},
    RelationExpr: {Operator.LessThan, Operator.GreaterThan},
}


def index_nodes(methods) -> dict[int, SourceNode]:
    return {n.id: n for m in methods for n in walk(m)}
