"""Random program generator for property tests.

Produces source text for one method with nested loops, ifs, labeled
blocks/loops and break/continue. Every block gets at least one statement so
no structural element is empty at a look-ahead position.
"""

import random

MAX_STMTS = 20
MAX_DEPTH = 4


class ProgramGenerator:
    def __init__(self, seed, max_stmts=MAX_STMTS, max_depth=MAX_DEPTH):
        self.rng = random.Random(seed)
        self.budget = max_stmts
        self.max_depth = max_depth
        self.count = 0
        self.n_vars = 0
        self.n_labels = 0
        self.deepest = 0

    def program(self) -> str:
        params = [f"p{i}" for i in range(self.rng.randint(0, 2))]
        scope = list(params)
        body = []
        for _ in range(self.rng.randint(1, 3)):
            body.append(self.decl(scope, indent=1))
        while self.budget > 0:
            body.append(self.statement(scope, depth=1, loops=[], labels=[], allow_decl=True, indent=1))
            if self.rng.random() < 0.1:
                break
        sig = ", ".join(f"int {p}" for p in params)
        return f"void testMethod({sig}) {{\n" + "\n".join(body) + "\n}\n"

    # -- pieces

    def _take(self):
        self.budget -= 1
        self.count += 1

    def expr(self, scope):
        r = self.rng.random()
        atom = lambda: (self.rng.choice(scope) if scope and self.rng.random() < 0.7
                        else str(self.rng.randint(0, 99)))
        if r < 0.4:
            return atom()
        op = self.rng.choice(["+", "-", "*", "/"])
        return f"{atom()} {op} {atom()}"

    def cond(self, scope):
        op = self.rng.choice(["<", ">", "=="])
        return f"{self.expr(scope)} {op} {self.expr(scope)}"

    def decl(self, scope, indent):
        self._take()
        name = f"v{self.n_vars}"
        self.n_vars += 1
        init = self.expr(scope)
        scope.append(name)
        return "    " * indent + f"int {name} = {init};"

    def simple(self, scope, indent):
        self._take()
        pad = "    " * indent
        if not scope:
            return pad + "return;"
        v = self.rng.choice(scope)
        r = self.rng.random()
        if r < 0.45:
            return pad + f"{v} = {self.expr(scope)};"
        if r < 0.6:
            return pad + f"{v} += {self.expr(scope)};"
        if r < 0.8:
            return pad + f"{v}{self.rng.choice(['++', '--'])};"
        if r < 0.85:
            return pad + f"return {self.expr(scope)};"
        return pad + f"{v} = {self.rng.choice(scope)} = {self.expr(scope)};"

    def jump(self, loops, labels, indent):
        self._take()
        pad = "    " * indent
        options = []
        if loops:
            options += ["break;", "continue;"]
        for name, is_loop in labels:
            options.append(f"break {name};")
            if is_loop:
                options.append(f"continue {name};")
        return pad + self.rng.choice(options)

    def statement(self, scope, depth, loops, labels, allow_decl, indent):
        self.deepest = max(self.deepest, depth)
        pad = "    " * indent
        can_nest = depth < self.max_depth and self.budget >= 2
        choices = ["simple"] * 4
        if allow_decl:
            choices.append("decl")
        if loops or labels:
            choices += ["jump"] * 2
        if can_nest:
            choices += ["if", "if", "while", "while", "label_while", "label_block", "block"]
            if self.budget >= 3:
                choices.append("ifelse")
        kind = self.rng.choice(choices)

        if kind == "simple":
            return self.simple(scope, indent)
        if kind == "decl":
            return self.decl(scope, indent)
        if kind == "jump":
            return self.jump(loops, labels, indent)

        self._take()
        if kind in ("if", "ifelse"):
            head = pad + f"if ({self.cond(scope)})"
            reserve = 1 if kind == "ifelse" else 0
            self.budget -= reserve
            then = self.branch(scope, depth, loops, labels, indent)
            self.budget += reserve
            if kind == "ifelse":
                other = self.branch(scope, depth, loops, labels, indent)
                return f"{head}\n{then}\n{pad}else\n{other}"
            return f"{head}\n{then}"
        if kind == "while":
            return pad + f"while ({self.cond(scope)})\n" + self.block(
                scope, depth + 1, loops + [True], labels, indent)
        if kind == "label_while":
            name = self.new_label()
            return pad + f"{name}: while ({self.cond(scope)})\n" + self.block(
                scope, depth + 1, loops + [True], labels + [(name, True)], indent)
        if kind == "label_block":
            name = self.new_label()
            return pad + f"{name}:\n" + self.block(scope, depth + 1, loops, labels + [(name, False)], indent)
        # plain nested block; budget already charged for the braces
        self.budget += 1
        self.count -= 1
        return self.block(scope, depth + 1, loops, labels, indent)

    def new_label(self):
        self.n_labels += 1
        return f"L{self.n_labels}"

    def branch(self, scope, depth, loops, labels, indent):
        if self.budget >= 2 and self.rng.random() < 0.5:
            return self.block(scope, depth + 1, loops, labels, indent)
        assert self.budget >= 1
        return self.statement(scope, depth + 1, loops, labels, allow_decl=False, indent=indent + 1)

    def block(self, scope, depth, loops, labels, indent):
        pad = "    " * indent
        inner = list(scope)
        lines = [pad + "{"]
        assert self.budget >= 1
        lines.append(self.statement(inner, depth, loops, labels, allow_decl=True, indent=indent + 1))
        while self.budget > 0 and self.rng.random() < 0.6:
            lines.append(self.statement(inner, depth, loops, labels, allow_decl=True, indent=indent + 1))
        lines.append(pad + "}")
        return "\n".join(lines)


def generate(seed, **kw):
    """Return (source, statement_count, deepest_nesting) for *seed*."""
    gen = ProgramGenerator(seed, **kw)
    return gen.program(), gen.count, gen.deepest
