"""Finitely presented groups: words, a relator parser, and the log-transform family.

Grammar::

    presentation = "<" names "|" [ word { "," word } ] ">"
    word         = term { ["*"] term }
    term         = name [ "^" int ] | "[" word "," word "]"

Commutators follow the convention ``[a, b] = a b a^-1 b^-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Union

__all__ = [
    "Commutator",
    "Power",
    "Presentation",
    "PresentationError",
    "Product",
    "Word",
    "parse_presentation",
    "t3qq",
    "t4qq",
]


class PresentationError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"{message}{where}")


@dataclass(frozen=True)
class Word:
    """A freely reduced word: a tuple of ``(generator index, exponent)`` letters."""

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        stack: list[list[int]] = []
        for g, e in self.letters:
            if e == 0:
                continue
            if stack and stack[-1][0] == g:
                stack[-1][1] += e
                if stack[-1][1] == 0:
                    stack.pop()
            else:
                stack.append([g, e])
        object.__setattr__(self, "letters", tuple((g, e) for g, e in stack))

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def inverse(self) -> Word:
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    @staticmethod
    def commutator(a: Word, b: Word) -> Word:
        return a * b * a.inverse() * b.inverse()

    def exponent_sums(self, ngens: int) -> list[int]:
        sums = [0] * ngens
        for g, e in self.letters:
            sums[g] += e
        return sums

    def __len__(self) -> int:
        return len(self.letters)


# Relator syntax trees, kept so that presentations print back verbatim.


@dataclass(frozen=True)
class Power:
    name: str
    exp: int = 1

    def __str__(self) -> str:
        return self.name if self.exp == 1 else f"{self.name}^{self.exp}"


@dataclass(frozen=True)
class Commutator:
    left: Product
    right: Product

    def __str__(self) -> str:
        return f"[{self.left},{self.right}]"


Term = Union[Power, Commutator]


@dataclass(frozen=True)
class Product:
    terms: tuple[Term, ...]

    def __str__(self) -> str:
        return " ".join(str(t) for t in self.terms)

    def names(self) -> set[str]:
        out: set[str] = set()
        for t in self.terms:
            if isinstance(t, Power):
                out.add(t.name)
            else:
                out |= t.left.names() | t.right.names()
        return out


def _to_word(expr: Product | Term, index: dict[str, int]) -> Word:
    if isinstance(expr, Power):
        return Word(((index[expr.name], expr.exp),))
    if isinstance(expr, Commutator):
        return Word.commutator(_to_word(expr.left, index), _to_word(expr.right, index))
    w = Word()
    for t in expr.terms:
        w = w * _to_word(t, index)
    return w


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Product, ...] = ()
    # family parameter of the log-transform builders; not part of the text form
    q: int | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError(f"duplicate generator names in {self.generators}")
        declared = set(self.generators)
        for r in self.relators:
            extra = r.names() - declared
            if extra:
                raise PresentationError(f"undeclared generator(s) {sorted(extra)} in relator {r}")

    # cached_property writes the instance dict directly, so it works on a frozen dataclass
    @cached_property
    def index(self) -> dict[str, int]:
        return {g: n for n, g in enumerate(self.generators)}

    @cached_property
    def words(self) -> tuple[Word, ...]:
        idx = self.index
        return tuple(_to_word(r, idx) for r in self.relators)

    def word(self, text: str) -> Word:
        """Parse a single word over this presentation's generators."""
        parser = _Parser(text)
        expr = parser.word()
        parser.expect_end()
        extra = expr.names() - set(self.generators)
        if extra:
            raise PresentationError(f"undeclared generator(s) {sorted(extra)} in word {text!r}")
        return _to_word(expr, self.index)

    def __str__(self) -> str:
        return f"<{','.join(self.generators)} | {', '.join(str(r) for r in self.relators)}>"


_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<sym>[<>|,\[\]^*]))")


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                rest = text[pos:]
                if rest.strip():
                    bad = pos + len(rest) - len(rest.lstrip())
                    raise PresentationError(f"unexpected character {text[bad]!r}", *self._loc(bad))
                break
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.pos = 0
        self.declared: set[str] | None = None

    def _loc(self, offset: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, offset) + 1
        col = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        return line, col

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def error(self, message: str) -> PresentationError:
        tok = self.peek()
        offset = tok[2] if tok else len(self.text)
        found = repr(tok[1]) if tok else "end of input"
        return PresentationError(f"{message}, found {found}", *self._loc(offset))

    def take(self, kind: str, value: str | None = None) -> str:
        tok = self.peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            raise self.error(f"expected {value or kind}")
        self.pos += 1
        return tok[1]

    def at(self, kind: str, value: str | None = None) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == kind and (value is None or tok[1] == value)

    def expect_end(self) -> None:
        if self.peek() is not None:
            raise self.error("expected end of input")

    def presentation(self) -> Presentation:
        self.take("sym", "<")
        names = [self.take("name")]
        while self.at("sym", ","):
            self.take("sym", ",")
            names.append(self.take("name"))
        self.take("sym", "|")
        self.declared = set(names)
        relators: list[Product] = []
        if not self.at("sym", ">"):
            relators.append(self.word())
            while self.at("sym", ","):
                self.take("sym", ",")
                relators.append(self.word())
        self.take("sym", ">")
        self.expect_end()
        return Presentation(tuple(names), tuple(relators))

    def word(self) -> Product:
        terms = [self.term()]
        while self.at("name") or self.at("sym", "[") or self.at("sym", "*"):
            if self.at("sym", "*"):
                self.take("sym", "*")
            terms.append(self.term())
        return Product(tuple(terms))

    def term(self) -> Term:
        if self.at("sym", "["):
            self.take("sym", "[")
            left = self.word()
            self.take("sym", ",")
            right = self.word()
            self.take("sym", "]")
            return Commutator(left, right)
        if not self.at("name"):
            raise self.error("expected a generator or '['")
        if self.declared is not None and self.peek()[1] not in self.declared:
            raise self.error("undeclared generator")
        name = self.take("name")
        exp = 1
        if self.at("sym", "^"):
            self.take("sym", "^")
            exp = int(self.take("int"))
        return Power(name, exp)


def parse_presentation(text: str) -> Presentation:
    return _Parser(text).presentation()


def _central(c: str, others) -> list[Product]:
    return [Product((Commutator(Product((Power(g),)), Product((Power(c),))),)) for g in others]


def _family_relators(q: int) -> list[Product]:
    return [
        Product((Power("a", q), Power("x"))),
        Product((Power("b", -q), Power("x"))),
        Product((Commutator(Product((Power("u"),)), Product((Power("v"),))), Power("a"), Power("b"))),
    ]


def _check_q(q: int) -> None:
    if q < 1 or q % 2 == 0:
        raise ValueError(f"q must be a positive odd integer, got {q}")


@lru_cache(maxsize=None)
def t3qq(q: int) -> Presentation:
    """pi_1 of the log-transformed 3-torus: x central, a^q x, b^-q x, [u,v] a b."""
    _check_q(q)
    rel = _central("x", "uvab") + _family_relators(q)
    return Presentation(("x", "u", "v", "a", "b"), tuple(rel), q=q)


@lru_cache(maxsize=None)
def t4qq(q: int) -> Presentation:
    """pi_1 of T^4(q,-q) = T^3(q,-q) x S^1, with the extra central generator y."""
    _check_q(q)
    rel = _central("x", "yuvab") + _central("y", "uvab") + _family_relators(q)
    return Presentation(("x", "y", "u", "v", "a", "b"), tuple(rel), q=q)
