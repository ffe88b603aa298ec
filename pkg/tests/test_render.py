import re

import pytest

from flowgraphs.errors import UnsupportedKind
from flowgraphs.frontend import parse_expression, parse_source
from flowgraphs.render import operator_text, render
from flowgraphs.source import (Block, Break, DecimalIntegerLiteral, ExpressionStatement, Method,
                               Operator, SourceNode, Statement, SuffixUnaryModificationExpr,
                               walk)

from conftest import FIXTURES
from progen import generate


def stmt(body, decls="int a; int b; int c; int i;"):
    [m] = parse_source(f"void m() {{ {decls} {body} }}")
    return m.statements[-1]


def test_method_text():
    [m] = parse_source("void testMethod() { }")
    assert render(m) == "testMethod()"


@pytest.mark.parametrize("text", ["i = i - 10;", "return b * c;", "i--;", "int c = a + b;",
                                  "break;", "b += a;", "return;", "i++;", "a = b = c;",
                                  "a = -b;", "a = -+b;", "a = b < c == c > b;"])
def test_statement_texts(text):
    body = text if text != "break;" else "while (a > 0) break;"
    s = stmt(body)
    if text == "break;":
        s = s.statement
    assert render(s) == text


def test_labeled_break_and_label():
    [m] = parse_source("void m(int a) { L: while (a > 0) { break L; continue L; } }")
    label = m.statements[0]
    brk, cont = label.statement.statement.statements
    assert render(label) == "L:"
    assert (render(brk), render(cont)) == ("break L;", "continue L;")


def test_containers_render_placeholders():
    s = stmt("if (a > 0) { a = 1; } else a = 2;")
    assert render(s) == "if"
    assert render(s.statement) == "{...}"
    assert render(stmt("while (a > 0) a--;")) == "while"
    assert render(stmt("{ }")) == "{...}"


def test_variable_and_parameter_render_name():
    [m] = parse_source("void m(int x) { int y = x; }")
    assert render(m.parameters[0]) == "x"
    assert render(m.statements[0].variable) == "y"
    assert render(m.statements[0].variable.type_ref) == "int"


def test_parentheses_dropped():
    assert render(parse_expression("(a + b) * c")) == "a + b * c"


def test_literal_decimal():
    assert render(DecimalIntegerLiteral(1, 100)) == "100"


@pytest.mark.parametrize("op,text", [
    (Operator.Multiplication, "*"), (Operator.Subtraction, "-"), (Operator.Addition, "+"),
    (Operator.Division, "/"), (Operator.LessThan, "<"), (Operator.GreaterThan, ">"),
    (Operator.Assignment, "="), (Operator.MinusMinus, "--"), (Operator.PlusPlus, "++"),
    (Operator.AssignmentPlus, "+="), (Operator.Equal, "=="),
])
def test_operator_text(op, text):
    assert operator_text(op) == text


def normalize(text):
    text = re.sub(r"\s+", " ", text.strip())
    text = re.sub(r"\s*(\+\+|--)", r"\1", text)
    return re.sub(r"\s*;", ";", text)


def fixture_statements(name):
    # every ';'-terminated run of text not interrupted by braces or a closing paren
    return [normalize(t) for t in re.findall(r"[^;{})]+;", (FIXTURES / name).read_text())]


@pytest.mark.parametrize("name", ["Test0.java", "Test4.java"])
def test_fixture_statements_roundtrip(name):
    expected = fixture_statements(name)
    [m] = parse_source((FIXTURES / name).read_text())
    rendered = [render(n) for n in walk(m)
                if isinstance(n, Statement) and render(n).endswith(";")]
    assert rendered == expected


def test_whitespace_normalized():
    assert render(stmt("i   =i-  10 ;")) == "i = i - 10;"
    assert render(stmt("i --;")) == "i--;"


def test_render_is_pure():
    s = stmt("c = a * b + c;")
    assert render(s) == render(s) == "c = a * b + c;"


def test_every_parsed_kind_has_renderer():
    for seed in range(40):
        src, _, _ = generate(seed)
        for m in parse_source(src):
            for n in walk(m):
                assert isinstance(render(n), str)


def test_unsupported_kind():
    class Mystery(SourceNode):
        pass
    with pytest.raises(UnsupportedKind) as exc:
        render(Mystery(1))
    assert exc.value.kind == "Mystery"
