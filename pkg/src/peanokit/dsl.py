"""Text syntax for recursive function programs (``.rf`` files).

Grammar::

    program := { def }
    def     := "def" ident "=" term ";"
    term    := "Z" "[" nat "]" | "S" | "P" "[" nat "," nat "]"
             | "C" "(" term ";" term { "," term } ")"
             | "R" "(" term "," term ")" | "M" "(" term ")" | ident

``#`` starts a comment running to the end of the line.  Identifiers match
``[a-z][a-z0-9_]*`` (``def`` is reserved).  A definition may only refer to
names defined above it, and every definition is arity-checked as soon as it
is parsed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

from .evaluator import Compiled, EvalOutcome, compile as compile_term
from .terms import (
    Compose, Mu, Name, PrimRec, Proj, RecTerm, Succ, TermError, Zero, arity_of,
)

__all__ = [
    "Program", "ParseDiagnostic", "DslError", "parse", "parse_term", "pretty",
    "pretty_term",
]

_IDENT = re.compile(r"[a-z][a-z0-9_]*\Z")
_WORD = re.compile(r"[A-Za-z0-9_]+")
_CONSTRUCTORS = frozenset("ZSPCRM")
_PUNCT = frozenset("=;[],()")


@dataclass(frozen=True)
class ParseDiagnostic:
    """First problem found in a source text.

    ``offset`` is a 0-based index of a real character of the source; ``line``
    and ``column`` are the same position, 1-based.  ``kind`` is ``"syntax"``,
    ``"name"`` or ``"arity"``; arity problems carry the offending subterm
    ``path`` inside definition ``definition``.
    """

    message: str
    line: int
    column: int
    expected: tuple[str, ...] = ()
    kind: str = "syntax"
    offset: int = 0
    definition: str | None = None
    path: tuple = ()

    def render(self, filename: str = "<source>") -> str:
        text = f"{filename}:{self.line}:{self.column}: {self.kind} error: {self.message}"
        if self.expected:
            text += f" (expected {', '.join(self.expected)})"
        return text


class DslError(Exception):
    def __init__(self, diagnostic: ParseDiagnostic):
        super().__init__(diagnostic.render())
        self.diagnostic = diagnostic


@dataclass(frozen=True)
class Program:
    """Ordered definitions.  Equality is structural and ignores source spans."""

    defs: tuple[tuple[str, RecTerm], ...] = ()
    spans: dict = field(default_factory=dict, compare=False, hash=False, repr=False)
    _compiled: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def env(self) -> dict[str, RecTerm]:
        return dict(self.defs)

    def names(self) -> list[str]:
        return [name for name, _ in self.defs]

    def __getitem__(self, name: str) -> RecTerm:
        for n, t in self.defs:
            if n == name:
                return t
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(n == name for n, _ in self.defs)

    def arity(self, name: str) -> int:
        return arity_of(self[name], self.env)

    def compiled(self, name: str) -> Compiled:
        if name not in self._compiled:
            self._compiled[name] = compile_term(Name(name), self.env)
        return self._compiled[name]

    def evaluate(self, name: str, args, fuel: int, *, jets: bool = True) -> EvalOutcome:
        return self.compiled(name).run(args, fuel, jets=jets)


@dataclass(frozen=True)
class _Token:
    kind: str   # "def", "ident", "nat", a constructor letter, a punctuation char, or "eof"
    text: str
    offset: int


def _position(source: str, offset: int) -> tuple[int, int]:
    line = source.count("\n", 0, offset) + 1
    start = source.rfind("\n", 0, offset) + 1
    return line, offset - start + 1


def _diagnostic(source, offset, message, expected=(), kind="syntax", **extra):
    # errors at end of input point at the last character
    offset = max(0, min(offset, len(source) - 1))
    line, col = _position(source, offset)
    return ParseDiagnostic(message, line, col, tuple(expected), kind, offset, **extra)


def _tokens(source: str) -> Iterator[_Token]:
    i, n = 0, len(source)
    while i < n:
        c = source[i]
        if c.isspace():
            i += 1
        elif c == "#":
            j = source.find("\n", i)
            i = n if j < 0 else j + 1
        elif c in _PUNCT:
            yield _Token(c, c, i)
            i += 1
        else:
            m = _WORD.match(source, i)
            if m is None:
                raise DslError(_diagnostic(source, i, f"unexpected character {c!r}"))
            word = m.group()
            if word == "def":
                kind = "def"
            elif word in _CONSTRUCTORS:
                kind = word
            elif word.isdigit():
                kind = "nat"
            elif _IDENT.match(word):
                kind = "ident"
            else:
                raise DslError(_diagnostic(source, i, f"invalid token {word!r}"))
            yield _Token(kind, word, i)
            i = m.end()
    yield _Token("eof", "", n)


_TERM_START = ("Z", "S", "P", "C", "R", "M", "identifier")


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.toks = list(_tokens(source))
        self.pos = 0
        self.defs: list[tuple[str, RecTerm]] = []
        self.env: dict[str, RecTerm] = {}
        self.spans: dict = {}
        self.current = None

    @property
    def tok(self) -> _Token:
        return self.toks[self.pos]

    def fail(self, message, expected=(), tok=None, kind="syntax", **extra):
        tok = tok or self.tok
        raise DslError(_diagnostic(self.source, tok.offset, message, expected, kind, **extra))

    def expect(self, kind: str, what: str | None = None) -> _Token:
        tok = self.tok
        if tok.kind != kind:
            shown = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.fail(f"unexpected {shown}", (what or repr(kind),))
        self.pos += 1
        return tok

    def program(self) -> Program:
        while self.tok.kind != "eof":
            if self.tok.kind != "def":
                self.fail(f"unexpected {self.tok.text!r}", ("'def'",))
            self.definition()
        return Program(tuple(self.defs), self.spans)

    def definition(self):
        self.expect("def")
        name_tok = self.expect("ident", "identifier")
        name = name_tok.text
        if name in self.env:
            self.fail(f"duplicate definition of {name!r}", tok=name_tok, kind="name")
        self.current = name
        self.expect("=", "'='")
        term = self.term(())
        self.expect(";", "';'")
        try:
            arity_of(term, self.env)
        except TermError as exc:
            offset = self.spans.get((name, exc.path), name_tok.offset)
            raise DslError(_diagnostic(
                self.source, offset, exc.message, kind="arity",
                definition=name, path=exc.path)) from None
        self.defs.append((name, term))
        self.env[name] = term

    def nat(self) -> int:
        return int(self.expect("nat", "natural number").text)

    def term(self, path) -> RecTerm:
        tok = self.tok
        self.spans[(self.current, path)] = tok.offset
        k = tok.kind
        if k == "ident":
            self.pos += 1
            if tok.text == self.current:
                self.fail(f"{tok.text!r} refers to itself", tok=tok, kind="name")
            if tok.text not in self.env:
                self.fail(f"undefined name {tok.text!r}", tok=tok, kind="name")
            return Name(tok.text)
        if k == "S":
            self.pos += 1
            return Succ()
        if k == "Z":
            self.pos += 1
            self.expect("[", "'['")
            n = self.nat()
            self.expect("]", "']'")
            return Zero(n)
        if k == "P":
            self.pos += 1
            self.expect("[", "'['")
            i = self.nat()
            self.expect(",", "','")
            n = self.nat()
            self.expect("]", "']'")
            if not 1 <= i <= n:
                self.fail(f"projection P[{i},{n}] needs 1 <= i <= n", tok=tok, kind="arity",
                          definition=self.current, path=path)
            return Proj(i, n)
        if k == "C":
            self.pos += 1
            self.expect("(", "'('")
            outer = self.term(path + (("outer",),))
            self.expect(";", "';'")
            inners = [self.term(path + (("inner", 0),))]
            while self.tok.kind == ",":
                self.pos += 1
                inners.append(self.term(path + (("inner", len(inners)),)))
            self.expect(")", "')' or ','")
            return Compose(outer, tuple(inners))
        if k == "R":
            self.pos += 1
            self.expect("(", "'('")
            base = self.term(path + (("base",),))
            self.expect(",", "','")
            step = self.term(path + (("step",),))
            self.expect(")", "')'")
            return PrimRec(base, step)
        if k == "M":
            self.pos += 1
            self.expect("(", "'('")
            body = self.term(path + (("body",),))
            self.expect(")", "')'")
            return Mu(body)
        shown = "end of input" if k == "eof" else repr(tok.text)
        self.fail(f"unexpected {shown}, expected a term", _TERM_START)


def parse(source: str) -> Program:
    """Parse and arity-check ``source``; raise :class:`DslError` on the first problem."""
    return _Parser(source).program()


def parse_term(text: str, env: dict[str, RecTerm] | None = None) -> RecTerm:
    """Parse a single term, with names resolved against ``env``."""
    p = _Parser(text)
    p.env = dict(env or {})
    p.current = None
    term = p.term(())
    if p.tok.kind != "eof":
        p.fail(f"unexpected {p.tok.text!r} after term", ("end of input",))
    return term


def pretty_term(term: RecTerm) -> str:
    if isinstance(term, Zero):
        return f"Z[{term.n}]"
    if isinstance(term, Succ):
        return "S"
    if isinstance(term, Proj):
        return f"P[{term.i},{term.n}]"
    if isinstance(term, Compose):
        inners = ", ".join(pretty_term(g) for g in term.inners)
        return f"C({pretty_term(term.outer)}; {inners})"
    if isinstance(term, PrimRec):
        return f"R({pretty_term(term.base)}, {pretty_term(term.step)})"
    if isinstance(term, Mu):
        return f"M({pretty_term(term.body)})"
    if isinstance(term, Name):
        return term.name
    raise TypeError(f"not a recursive function term: {term!r}")


def pretty(program: Program) -> str:
    """Canonical rendering: one definition per line, fixed spacing."""
    return "".join(f"def {name} = {pretty_term(t)};\n" for name, t in program.defs)
