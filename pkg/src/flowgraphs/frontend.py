"""Tokenizer, recursive-descent parser and JSON AST loader for the Java subset.

Only the constructs the flow analyses understand are accepted; for-loops,
method calls, arrays, strings and the like are rejected with a ParseError.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import NamedTuple, Optional

from .errors import (DanglingReference, ParseError, SchemaError, UnknownCharacter,
                     UnresolvedLabel, UnresolvedName)
from .source import (
    BINARY_OPERATORS, NODE_CLASSES, PRIMITIVE_TYPES, AdditiveExpr, AssignmentExpr,
    Block, Break, Condition, Continue, DecimalIntegerLiteral, EqualityExpr,
    Expression, ExpressionStatement, IdentifierReference, JumpLabel, LocalVariable,
    LocalVariableStatement, Method, MultiplicativeExpr, Operator, Parameter,
    PrimitiveType, RelationExpr, Return, SourceNode, Statement,
    SuffixUnaryModificationExpr, UnaryExpr, WhileLoop, walk,
)

KEYWORDS = frozenset({
    "if", "else", "while", "break", "continue", "return",
    "public", "static", "class", *PRIMITIVE_TYPES,
})
# reserved but unsupported: always a parse error, never an identifier
UNSUPPORTED_KEYWORDS = frozenset({
    "for", "do", "switch", "case", "default", "new", "this", "try", "catch", "throw",
    "private", "protected", "final", "true", "false", "null",
})

# longest lexemes first: maximal munch
_OPERATORS = [
    ("--", "MinusMinus"), ("++", "PlusPlus"), ("+=", "AssignmentPlus"), ("==", "Equal"),
    ("*", "Star"), ("-", "Minus"), ("+", "Plus"), ("/", "Slash"),
    ("<", "Lt"), (">", "Gt"), ("=", "Assign"),
    ("(", "LParen"), (")", "RParen"), ("{", "LBrace"), ("}", "RBrace"),
    (";", "Semi"), (":", "Colon"), (",", "Comma"),
]
_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\f\v]+|//[^\n]*)"
    r"|(?P<nl>\n)"
    r"|(?P<ident>[A-Za-z_$][A-Za-z0-9_$]*)"
    r"|(?P<int>[0-9]+)"
    r"|(?P<op>" + "|".join(re.escape(lex) for lex, _ in _OPERATORS) + ")"
)
_OP_KIND = dict(_OPERATORS)


class Token(NamedTuple):
    kind: str  # Ident, IntLit, Kw, EOF or a punctuation/operator name
    text: str
    line: int
    col: int


def tokenize(source: str) -> list[Token]:
    """Split *source* into tokens; the list always ends with an EOF token."""
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        col = pos - line_start + 1
        if m is None:
            raise UnknownCharacter(line, col, source[pos])
        group, text = m.lastgroup, m.group()
        if group == "nl":
            line += 1
            line_start = m.end()
        elif group == "ident":
            tokens.append(Token("Kw" if text in KEYWORDS or text in UNSUPPORTED_KEYWORDS else "Ident", text, line, col))
        elif group == "int":
            tokens.append(Token("IntLit", text, line, col))
        elif group == "op":
            tokens.append(Token(_OP_KIND[text], text, line, col))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


_BINARY_LEVELS = [
    (EqualityExpr, {"Equal": Operator.Equal}),
    (RelationExpr, {"Lt": Operator.LessThan, "Gt": Operator.GreaterThan}),
    (AdditiveExpr, {"Plus": Operator.Addition, "Minus": Operator.Subtraction}),
    (MultiplicativeExpr, {"Star": Operator.Multiplication, "Slash": Operator.Division}),
]


class Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self._ids = 0
        self.scopes: list[dict[str, SourceNode]] = []
        self.labels: list[JumpLabel] = []

    # -- token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k=1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def at(self, kind, text=None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def at_kw(self, *words) -> bool:
        return self.tok.kind == "Kw" and self.tok.text in words

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "EOF":
            self.pos += 1
        return t

    def expect(self, kind, text=None, what=None) -> Token:
        if not self.at(kind, text):
            self.error(what or text or kind)
        return self.advance()

    def error(self, expected):
        t = self.tok
        raise ParseError(t.line, t.col, expected, t.text or "end of input")

    def new_id(self) -> int:
        self._ids += 1
        return self._ids

    # -- scoping

    def declare(self, decl):
        self.scopes[-1][decl.name] = decl

    def lookup(self, tok: Token):
        for scope in reversed(self.scopes):
            if tok.text in scope:
                return scope[tok.text]
        raise UnresolvedName(tok.text, tok.line, tok.col)

    def lookup_label(self, tok: Token) -> JumpLabel:
        for label in reversed(self.labels):
            if label.name == tok.text:
                return label
        raise UnresolvedLabel(tok.text, tok.line, tok.col)

    # -- declarations

    def parse_unit(self) -> list[Method]:
        methods = []
        if self.at_kw("class"):
            self.advance()
            self.expect("Ident", what="class name")
            self.expect("LBrace")
            while not self.at("RBrace"):
                methods.append(self.parse_method())
            self.expect("RBrace")
        else:
            while not self.at("EOF"):
                methods.append(self.parse_method())
        self.expect("EOF", what="end of input")
        return methods

    def parse_type(self, allow_void=False) -> PrimitiveType:
        t = self.tok
        if t.kind != "Kw" or t.text not in PRIMITIVE_TYPES or (t.text == "void" and not allow_void):
            self.error("type")
        self.advance()
        return PrimitiveType(self.new_id(), t.text)

    def parse_method(self) -> Method:
        while self.at_kw("public", "static"):
            self.advance()
        m = Method(self.new_id())
        self.parse_type(allow_void=True)  # return type is not modelled
        m.name = self.expect("Ident", what="method name").text
        self.expect("LParen")
        self.scopes.append({})
        if not self.at("RParen"):
            while True:
                p = Parameter(self.new_id())
                p.type_ref = self.parse_type()
                p.name = self.expect("Ident", what="parameter name").text
                self.declare(p)
                m.parameters.append(p)
                if not self.at("Comma"):
                    break
                self.advance()
        self.expect("RParen")
        self.expect("LBrace")
        while not self.at("RBrace"):
            m.statements.append(self.parse_statement(allow_decl=True))
        self.advance()
        self.scopes.pop()
        return m

    # -- statements

    def parse_statement(self, allow_decl=False) -> Statement:
        t = self.tok
        if t.kind == "LBrace":
            return self.parse_block()
        if t.kind == "Kw":
            if t.text in PRIMITIVE_TYPES and t.text != "void":
                if not allow_decl:
                    self.error("statement (declarations need an enclosing block)")
                return self.parse_local_var()
            if t.text == "if":
                return self.parse_if()
            if t.text == "while":
                return self.parse_while()
            if t.text in ("break", "continue"):
                return self.parse_jump()
            if t.text == "return":
                node = Return(self.new_id())
                self.advance()
                if not self.at("Semi"):
                    node.return_value = self.parse_expression()
                self.expect("Semi")
                return node
            self.error("statement")
        if t.kind == "Ident" and self.peek().kind == "Colon":
            return self.parse_label()
        return self.parse_expression_statement()

    def parse_block(self) -> Block:
        block = Block(self.new_id())
        self.expect("LBrace")
        self.scopes.append({})
        while not self.at("RBrace"):
            if self.at("EOF"):
                self.error("'}'")
            block.statements.append(self.parse_statement(allow_decl=True))
        self.advance()
        self.scopes.pop()
        return block

    def parse_local_var(self) -> LocalVariableStatement:
        stmt = LocalVariableStatement(self.new_id())
        var = LocalVariable(self.new_id())
        var.type_ref = self.parse_type()
        var.name = self.expect("Ident", what="variable name").text
        if self.at("Assign"):
            self.advance()
            var.initial_value = self.parse_expression()
        self.expect("Semi")
        self.declare(var)
        stmt.variable = var
        return stmt

    def parse_if(self) -> Condition:
        node = Condition(self.new_id())
        self.advance()
        self.expect("LParen")
        node.condition = self.parse_expression()
        self.expect("RParen")
        node.statement = self.parse_statement()
        if self.at_kw("else"):
            self.advance()
            node.else_statement = self.parse_statement()
        return node

    def parse_while(self) -> WhileLoop:
        node = WhileLoop(self.new_id())
        self.advance()
        self.expect("LParen")
        node.condition = self.parse_expression()
        self.expect("RParen")
        node.statement = self.parse_statement()
        return node

    def parse_label(self) -> JumpLabel:
        label = JumpLabel(self.new_id(), self.advance().text)
        self.advance()  # ':'
        self.labels.append(label)
        label.statement = self.parse_statement()
        self.labels.pop()
        return label

    def parse_jump(self):
        cls = Break if self.tok.text == "break" else Continue
        node = cls(self.new_id())
        self.advance()
        if self.at("Ident"):
            label = self.lookup_label(self.advance())
            node.target, node.decl = label.id, label
        self.expect("Semi")
        return node

    def parse_expression_statement(self) -> ExpressionStatement:
        start = self.tok
        node = ExpressionStatement(self.new_id())
        node.expression = self.parse_expression()
        if not isinstance(node.expression, (AssignmentExpr, SuffixUnaryModificationExpr)):
            raise ParseError(start.line, start.col, "assignment or increment/decrement statement",
                             start.text)
        self.expect("Semi")
        return node

    # -- expressions

    def parse_expression(self) -> Expression:
        return self.parse_assignment()

    def parse_assignment(self) -> Expression:
        start = self.tok
        node_id = self.new_id()
        lhs = self.parse_binary(0)
        if self.at("Assign") or self.at("AssignmentPlus"):
            if not isinstance(lhs, IdentifierReference):
                raise ParseError(start.line, start.col, "variable on left of assignment", start.text)
            op = Operator.Assignment if self.advance().kind == "Assign" else Operator.AssignmentPlus
            rhs = self.parse_assignment()
            return AssignmentExpr(node_id, lhs, op, rhs)
        return lhs

    def parse_binary(self, level) -> Expression:
        if level == len(_BINARY_LEVELS):
            return self.parse_unary()
        cls, ops = _BINARY_LEVELS[level]
        left = self.parse_binary(level + 1)
        while self.tok.kind in ops:
            op = ops[self.advance().kind]
            right = self.parse_binary(level + 1)
            left = cls(self.new_id(), left, op, right)
        return left

    def parse_unary(self) -> Expression:
        if self.at("Minus") or self.at("Plus"):
            node = UnaryExpr(self.new_id())
            while self.at("Minus") or self.at("Plus"):
                node.operators.append(
                    Operator.Subtraction if self.advance().kind == "Minus" else Operator.Addition)
            node.child = self.parse_suffix()
            return node
        return self.parse_suffix()

    def parse_suffix(self) -> Expression:
        start = self.tok
        node = self.parse_primary()
        if self.at("MinusMinus") or self.at("PlusPlus"):
            if not isinstance(node, IdentifierReference):
                raise ParseError(start.line, start.col, "variable before ++/--", start.text)
            op = Operator.MinusMinus if self.advance().kind == "MinusMinus" else Operator.PlusPlus
            return SuffixUnaryModificationExpr(self.new_id(), node, op)
        return node

    def parse_primary(self) -> Expression:
        t = self.tok
        if t.kind == "Ident":
            self.advance()
            if self.at("LParen"):
                raise ParseError(self.tok.line, self.tok.col, "operator (method calls are unsupported)", "(")
            decl = self.lookup(t)
            return IdentifierReference(self.new_id(), decl.id, decl)
        if t.kind == "IntLit":
            self.advance()
            if len(t.text) > 1 and t.text[0] == "0":
                raise ParseError(t.line, t.col, "decimal integer literal", t.text)
            return DecimalIntegerLiteral(self.new_id(), int(t.text))
        if t.kind == "LParen":
            self.advance()
            inner = self.parse_expression()
            self.expect("RParen")
            return inner
        self.error("expression")


def parse_unit(tokens: list[Token]) -> list[Method]:
    methods = Parser(tokens).parse_unit()
    check_unit(methods)
    return methods


def parse_source(source: str) -> list[Method]:
    return parse_unit(tokenize(source))


def parse_expression(source: str, scope=None) -> Expression:
    """Parse a standalone expression. Names resolve against *scope*
    (name -> declaration); unknown names get fresh ``int`` locals."""
    parser = _LenientParser(tokenize(source), scope or {})
    expr = parser.parse_expression()
    parser.expect("EOF", what="end of expression")
    return expr


class _LenientParser(Parser):
    def __init__(self, tokens, scope):
        super().__init__(tokens)
        self.scopes.append(dict(scope))
        self._ids = max((n.id for n in scope.values()), default=0)

    def lookup(self, tok):
        try:
            return super().lookup(tok)
        except UnresolvedName:
            var = LocalVariable(self.new_id(), tok.text, PrimitiveType(self.new_id(), "int"))
            self.declare(var)
            return var


# -- validation -------------------------------------------------------------

def check_unit(methods: list[Method]) -> None:
    """Post-parse/post-load checks: unique ids, references resolve lexically,
    binary operators match their node kind."""
    seen: set[int] = set()
    for m in methods:
        if not isinstance(m, Method):
            raise SchemaError("methods", f"{m.kind} is not a Method")
        for n in walk(m):
            if n.id in seen:
                raise SchemaError(f"node {n.id}", "duplicate node id")
            seen.add(n.id)
        _check_scopes(m)


def _check_scopes(method: Method) -> None:
    scopes = [{p.id for p in method.parameters}]
    labels: list[int] = []
    all_decls = {p.id: p.name for p in method.parameters}

    def visit(node):
        if isinstance(node, Block):
            scopes.append(set())
            for s in node.statements:
                visit(s)
            scopes.pop()
            return
        if isinstance(node, LocalVariableStatement):
            if node.variable.initial_value is not None:
                visit(node.variable.initial_value)
            scopes[-1].add(node.variable.id)
            all_decls[node.variable.id] = node.variable.name
            return
        if isinstance(node, IdentifierReference):
            if not any(node.target in s for s in scopes):
                name = node.decl.name if node.decl is not None else all_decls.get(node.target, node.target)
                raise UnresolvedName(str(name))
            return
        if isinstance(node, (Break, Continue)):
            if node.target is not None and node.target not in labels:
                raise UnresolvedLabel(node.decl.name if node.decl else str(node.target))
            return
        if isinstance(node, JumpLabel):
            labels.append(node.id)
            visit(node.statement)
            labels.pop()
            return
        if type(node) in BINARY_OPERATORS and node.operator not in BINARY_OPERATORS[type(node)]:
            raise SchemaError(f"node {node.id}", f"operator {node.operator.name} invalid for {node.kind}")
        for c in node.children():
            visit(c)

    for s in method.statements:
        visit(s)


# -- JSON AST ---------------------------------------------------------------

# python attribute -> JSON field
_JSON_NAMES = {
    "type_ref": "typeRef", "initial_value": "initialValue",
    "else_statement": "elseStatement", "return_value": "returnValue",
    "decimal_value": "decimalValue",
}
_PY_NAMES = {v: k for k, v in _JSON_NAMES.items()}

# per kind: (json field, role, required); roles: child, children, ref, op, ops, str, int
_SCHEMA = {
    "Method": [("name", "str", True), ("parameters", "children", True), ("statements", "children", True)],
    "Parameter": [("name", "str", True), ("typeRef", "child", True)],
    "LocalVariableStatement": [("variable", "child", True)],
    "LocalVariable": [("name", "str", True), ("typeRef", "child", True), ("initialValue", "child", False)],
    "ExpressionStatement": [("expression", "child", True)],
    "Condition": [("condition", "child", True), ("statement", "child", True), ("elseStatement", "child", False)],
    "WhileLoop": [("condition", "child", True), ("statement", "child", True)],
    "Block": [("statements", "children", True)],
    "JumpLabel": [("name", "str", True), ("statement", "child", True)],
    "Break": [("target", "ref", False)],
    "Continue": [("target", "ref", False)],
    "Return": [("returnValue", "child", False)],
    "AssignmentExpr": [("child", "child", True), ("operator", "op", True), ("value", "child", True)],
    "UnaryExpr": [("operators", "ops", True), ("child", "child", True)],
    "SuffixUnaryModificationExpr": [("child", "child", True), ("operator", "op", True)],
    "IdentifierReference": [("target", "ref", True)],
    "DecimalIntegerLiteral": [("decimalValue", "int", True)],
    "PrimitiveType": [("name", "str", True)],
}
for _k in ("AdditiveExpr", "MultiplicativeExpr", "EqualityExpr", "RelationExpr"):
    _SCHEMA[_k] = [("left", "child", True), ("operator", "op", True), ("right", "child", True)]


def dump_ast(methods: list[Method]) -> dict:
    nodes = []
    for m in methods:
        for n in walk(m):
            entry = {"id": n.id, "kind": n.kind}
            for name, role, _ in _SCHEMA[n.kind]:
                value = getattr(n, _PY_NAMES.get(name, name))
                if role == "child":
                    value = None if value is None else value.id
                elif role == "children":
                    value = [c.id for c in value]
                elif role == "op":
                    value = value.name
                elif role == "ops":
                    value = [op.name for op in value]
                if value is None:
                    continue
                entry[name] = value
            nodes.append(entry)
    return {"nodes": nodes, "methods": [m.id for m in methods]}


def dump_ast_json(methods: list[Method]) -> str:
    return json.dumps(dump_ast(methods), indent=1)


def load_ast(doc, where="$") -> list[Method]:
    """Build SourceNode trees from a decoded JSON AST document."""
    if not isinstance(doc, dict):
        raise SchemaError(where, "document must be an object")
    raw_nodes = doc.get("nodes")
    roots = doc.get("methods")
    if not isinstance(raw_nodes, list):
        raise SchemaError(f"{where}.nodes", "missing or not a list")
    if not isinstance(roots, list):
        raise SchemaError(f"{where}.methods", "missing or not a list")

    raw: dict[int, tuple[str, dict]] = {}
    for i, entry in enumerate(raw_nodes):
        path = f"{where}.nodes[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(path, "node must be an object")
        nid = entry.get("id")
        if not isinstance(nid, int) or isinstance(nid, bool):
            raise SchemaError(f"{path}.id", "missing or not an integer")
        if entry.get("kind") not in _SCHEMA:
            raise SchemaError(f"{path}.kind", f"unknown kind {entry.get('kind')!r}")
        if nid in raw:
            raise SchemaError(f"{path}.id", f"duplicate id {nid}")
        raw[nid] = (path, entry)

    built: dict[int, SourceNode] = {}
    refs: list[SourceNode] = []

    def build(nid):
        if not isinstance(nid, int) or isinstance(nid, bool):
            raise SchemaError(where, f"child link {nid!r} is not an id")
        if nid not in raw:
            raise DanglingReference(nid)
        if nid in built:
            raise SchemaError(raw[nid][0], "node contained more than once")
        path, entry = raw[nid]
        node = NODE_CLASSES[entry["kind"]](nid)
        built[nid] = node
        for name, role, required in _SCHEMA[node.kind]:
            fpath = f"{path}.{name}"
            value = entry.get(name)
            if value is None:
                if required:
                    raise SchemaError(fpath, "missing field")
                continue
            attr = _PY_NAMES.get(name, name)
            if role == "child":
                value = build(value)
            elif role == "children":
                if not isinstance(value, list):
                    raise SchemaError(fpath, "expected a list of ids")
                value = [build(c) for c in value]
            elif role == "op":
                value = _operator(value, fpath)
            elif role == "ops":
                if not isinstance(value, list):
                    raise SchemaError(fpath, "expected a list of operator tags")
                value = [_operator(v, f"{fpath}[{j}]") for j, v in enumerate(value)]
            elif role == "str":
                if not isinstance(value, str):
                    raise SchemaError(fpath, "expected a string")
            elif role in ("int", "ref"):
                if not isinstance(value, int) or isinstance(value, bool) or (role == "int" and value < 0):
                    raise SchemaError(fpath, "expected a non-negative integer" if role == "int" else "expected an id")
            setattr(node, attr, value)
        if isinstance(node, (IdentifierReference, Break, Continue)) and node.target is not None:
            refs.append(node)
        return node

    methods = []
    for i, mid in enumerate(roots):
        m = build(mid)
        if not isinstance(m, Method):
            raise SchemaError(f"{where}.methods[{i}]", f"{m.kind} is not a Method")
        methods.append(m)

    for node in refs:
        if node.target not in raw:
            raise DanglingReference(node.target)
        if node.target not in built:
            raise SchemaError(raw[node.id][0] + ".target", f"id {node.target} is outside the compilation unit")
        target = built[node.target]
        wanted = (LocalVariable, Parameter) if isinstance(node, IdentifierReference) else JumpLabel
        if not isinstance(target, wanted):
            raise SchemaError(raw[node.id][0] + ".target", f"cannot refer to a {target.kind}")
        node.decl = target
    _check_types(built, raw)
    check_unit(methods)
    return methods


def _check_types(built, raw):
    for nid, node in built.items():
        path = raw[nid][0]
        for name, role, _ in _SCHEMA[node.kind]:
            if role != "child":
                continue
            value = getattr(node, _PY_NAMES.get(name, name))
            if value is None:
                continue
            if name == "typeRef":
                ok = isinstance(value, PrimitiveType)
            elif name == "variable":
                ok = isinstance(value, LocalVariable)
            elif name == "statement" or name == "elseStatement":
                ok = isinstance(value, Statement)
            else:
                ok = isinstance(value, Expression)
            if not ok:
                raise SchemaError(f"{path}.{name}", f"unexpected {value.kind}")
        for name, role, _ in _SCHEMA[node.kind]:
            if role == "children":
                wanted = Parameter if name == "parameters" else Statement
                for c in getattr(node, name):
                    if not isinstance(c, wanted):
                        raise SchemaError(f"{path}.{name}", f"unexpected {c.kind}")


def _operator(tag, path) -> Operator:
    try:
        return Operator[tag]
    except (KeyError, TypeError):
        raise SchemaError(path, f"unknown operator {tag!r}") from None


def load_ast_json(path) -> list[Method]:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    return load_ast(doc)


def load_source_file(path) -> list[Method]:
    """Load a compilation unit from ``.json`` (AST) or Java source."""
    path = Path(path)
    if path.suffix == ".json":
        return load_ast_json(path)
    return parse_source(path.read_text(encoding="utf-8"))
