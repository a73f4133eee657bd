"""Boolean expressions in negation normal form.

Expressions are trees of binary AND/OR nodes over input literals.
Negation lives only on literals: the parser pushes every ``!`` through
sub-expressions with De Morgan's laws while reading the source text, so
any value of type :data:`BoolExpr` is already in negation normal form.
The rest of the package relies on this shape — dualizing an expression
is then a pure structural mirror, and truth evaluation doubles as the
functional oracle for every network construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

__all__ = [
    "Literal",
    "Lit",
    "And",
    "Or",
    "BoolExpr",
    "ParseError",
    "parse_expression",
    "complement",
    "eval_truth",
    "input_set",
    "iter_literals",
    "literal_count",
    "format_expression",
]

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")

# Constant functions have no differential realization; reject the usual
# spellings outright instead of treating them as ordinary input names.
_RESERVED = frozenset({"true", "false"})


@dataclass(frozen=True)
class Literal:
    """One rail of an input: the true rail, or the complemented rail."""

    input: str
    negated: bool = False

    @property
    def polarity(self) -> str:
        return "negative" if self.negated else "positive"

    def negate(self) -> "Literal":
        return Literal(self.input, not self.negated)

    def __str__(self) -> str:
        return ("!" if self.negated else "") + self.input


@dataclass(frozen=True)
class Lit:
    literal: Literal


@dataclass(frozen=True)
class And:
    left: "BoolExpr"
    right: "BoolExpr"


@dataclass(frozen=True)
class Or:
    left: "BoolExpr"
    right: "BoolExpr"


BoolExpr = Union[Lit, And, Or]


class ParseError(ValueError):
    """Syntax error in an expression string, with a 0-based position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_SPEC = [
    ("IDENT", IDENT_RE),
    ("AND", re.compile(r"&")),
    ("OR", re.compile(r"\|")),
    ("NOT", re.compile(r"!")),
    ("LPAR", re.compile(r"\(")),
    ("RPAR", re.compile(r"\)")),
]


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        for kind, pattern in _TOKEN_SPEC:
            m = pattern.match(text, pos)
            if m:
                tokens.append((kind, m.group(), pos))
                pos = m.end()
                break
        else:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
    tokens.append(("END", "", n))
    return tokens


class _Parser:
    """Recursive descent over: expr := term ('|' term)*,
    term := factor ('&' factor)*, factor := ['!'] atom,
    atom := IDENT | '(' expr ')'.  n-ary chains associate right."""

    def __init__(self, tokens: list[tuple[str, str, int]]):
        self.tokens = tokens
        self.index = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def advance(self) -> tuple[str, str, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expr(self) -> BoolExpr:
        terms = [self.term()]
        while self.peek()[0] == "OR":
            self.advance()
            terms.append(self.term())
        return _fold_right(Or, terms)

    def term(self) -> BoolExpr:
        factors = [self.factor()]
        while self.peek()[0] == "AND":
            self.advance()
            factors.append(self.factor())
        return _fold_right(And, factors)

    def factor(self) -> BoolExpr:
        if self.peek()[0] == "NOT":
            _, _, pos = self.advance()
            if self.peek()[0] not in ("IDENT", "LPAR"):
                raise ParseError("negation must be followed by a name or a parenthesized expression", pos)
            return complement(self.atom())
        return self.atom()

    def atom(self) -> BoolExpr:
        kind, text, pos = self.advance()
        if kind == "IDENT":
            if text.lower() in _RESERVED:
                raise ParseError(f"constant {text!r} is not a valid input", pos)
            return Lit(Literal(text))
        if kind == "LPAR":
            inner = self.expr()
            kind, _, pos = self.advance()
            if kind != "RPAR":
                raise ParseError("expected ')'", pos)
            return inner
        raise ParseError(f"expected a name or '(', got {text!r}" if text else "unexpected end of expression", pos)


def _fold_right(op, parts: list[BoolExpr]) -> BoolExpr:
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = op(part, result)
    return result


def parse_expression(text: str) -> BoolExpr:
    """Parse ``text`` into an NNF expression tree.

    ``&`` binds tighter than ``|``; ``!`` negates only the atom that
    follows it and is eliminated on the spot via De Morgan's laws.
    Raises :class:`ParseError` (with position) for malformed input.
    """
    tokens = _tokenize(text)
    if tokens[0][0] == "END":
        raise ParseError("empty expression", 0)
    parser = _Parser(tokens)
    result = parser.expr()
    kind, text_, pos = parser.peek()
    if kind != "END":
        raise ParseError(f"unexpected {text_!r}", pos)
    return result


def complement(e: BoolExpr) -> BoolExpr:
    """Return the NNF of the negation of ``e``.

    AND and OR swap, literal polarities flip; the tree shape mirrors
    ``e`` exactly, so ``complement`` is an involution.
    """
    if isinstance(e, Lit):
        return Lit(e.literal.negate())
    if isinstance(e, And):
        return Or(complement(e.left), complement(e.right))
    if isinstance(e, Or):
        return And(complement(e.left), complement(e.right))
    raise TypeError(f"not an expression node: {e!r}")


def eval_truth(e: BoolExpr, assignment: Mapping[str, object]) -> bool:
    """Evaluate ``e`` under a complete 0/1 assignment of its inputs."""
    if isinstance(e, Lit):
        name = e.literal.input
        if name not in assignment:
            raise ValueError(f"no value assigned to input {name!r}")
        value = assignment[name]
        if value not in (0, 1, True, False):
            raise ValueError(f"input {name!r} must be 0 or 1, got {value!r}")
        return bool(value) != e.literal.negated
    if isinstance(e, And):
        return eval_truth(e.left, assignment) and eval_truth(e.right, assignment)
    if isinstance(e, Or):
        return eval_truth(e.left, assignment) or eval_truth(e.right, assignment)
    raise TypeError(f"not an expression node: {e!r}")


def iter_literals(e: BoolExpr) -> Iterator[Literal]:
    """Yield every literal occurrence of ``e`` in preorder."""
    if isinstance(e, Lit):
        yield e.literal
    elif isinstance(e, (And, Or)):
        yield from iter_literals(e.left)
        yield from iter_literals(e.right)
    else:
        raise TypeError(f"not an expression node: {e!r}")


def input_set(e: BoolExpr) -> list[str]:
    """Distinct input names of ``e`` in first-appearance order."""
    seen: dict[str, None] = {}
    for lit in iter_literals(e):
        seen.setdefault(lit.input, None)
    return list(seen)


def literal_count(e: BoolExpr) -> int:
    return sum(1 for _ in iter_literals(e))


def format_expression(e: BoolExpr) -> str:
    """Render ``e`` in the input grammar; reparsing yields the same tree."""
    if isinstance(e, Lit):
        return str(e.literal)
    if isinstance(e, Or):
        left = format_expression(e.left)
        # the grammar is right-associative, so a left-nested OR needs parens
        if isinstance(e.left, Or):
            left = f"({left})"
        return f"{left} | {format_expression(e.right)}"
    if isinstance(e, And):
        left = format_expression(e.left)
        right = format_expression(e.right)
        if isinstance(e.left, (Or, And)):
            left = f"({left})"
        if isinstance(e.right, Or):
            right = f"({right})"
        return f"{left} & {right}"
    raise TypeError(f"not an expression node: {e!r}")
