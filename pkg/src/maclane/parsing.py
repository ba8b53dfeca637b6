"""Small arithmetic-expression parser shared by element and polynomial grammars.

Accepts the usual infix syntax with implicit multiplication by adjacency, so
"x^4+(2t+4)x^2+t^2", "3/4", "u^-2+u^-1" and "(t^2+1)/(t-1)" all parse.  The
parser evaluates directly into whatever algebra the caller supplies: a context
maps names to values, and values must support +, -, *, / and integer powers.
"""

from __future__ import annotations


class ParseError(ValueError):
    pass


_OPS = set("+-*/^()")


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
        elif ch in _OPS:
            tokens.append((ch, ch))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r} in {text!r}")
    return tokens


class _Parser:
    def __init__(self, tokens, names, from_int):
        self.tokens = tokens
        self.pos = 0
        self.names = names
        self.from_int = from_int

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op, _ = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while True:
            nxt = self.peek()
            if nxt in ("*", "/"):
                op, _ = self.take()
                rhs = self.unary()
                value = value * rhs if op == "*" else value / rhs
            elif nxt in ("int", "name", "("):
                value = value * self.unary()  # adjacency = multiplication
            else:
                return value

    def unary(self):
        sign = 1
        while self.peek() in ("+", "-"):
            op, _ = self.take()
            if op == "-":
                sign = -sign
        value = self.power()
        return value if sign == 1 else (self.from_int(0) - value)

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            while self.peek() == "-":
                self.take()
                neg = not neg
            kind, val = self.take() if self.peek() == "int" else (None, None)
            if kind != "int":
                raise ParseError("exponent must be an integer literal")
            return base ** (-val if neg else val)
        return base

    def atom(self):
        kind = self.peek()
        if kind == "int":
            _, val = self.take()
            return self.from_int(val)
        if kind == "name":
            _, name = self.take()
            if name not in self.names:
                allowed = ", ".join(sorted(self.names)) or "none"
                raise ParseError(f"unknown name {name!r} (allowed: {allowed})")
            return self.names[name]
        if kind == "(":
            self.take()
            value = self.expr()
            if self.peek() != ")":
                raise ParseError("missing closing parenthesis")
            self.take()
            return value
        raise ParseError(f"unexpected token {kind!r}")


def parse_expression(text: str, names: dict, from_int):
    """Evaluate ``text`` in the algebra given by ``names`` and ``from_int``."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    parser = _Parser(tokens, names, from_int)
    value = parser.expr()
    if parser.pos != len(tokens):
        raise ParseError(f"trailing input at token {parser.pos} in {text!r}")
    return value
