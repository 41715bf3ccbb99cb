"""Abstract syntax of recursive function terms and static arity analysis.

Terms are immutable and compare structurally.  A term denotes a function
``N^n -> N`` where ``n`` is its arity:

=================  =======================================================
``Zero(n)``        constant 0 of arity ``n`` (``n = 0`` allowed)
``Succ()``         successor, arity 1
``Proj(i, n)``     ``i``-th of ``n`` arguments (1-based)
``Compose(f, gs)`` ``f(g1(xs), ..., gk(xs))``
``PrimRec(g, h)``  ``f(0, ys) = g(ys)``, ``f(x+1, ys) = h(x, f(x, ys), ys)``
``Mu(f)``          least ``y`` with ``f(xs, y) = 0``
``Name(s)``        reference to a definition in the environment
=================  =======================================================
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

__all__ = [
    "Zero", "Succ", "Proj", "Compose", "PrimRec", "Mu", "Name", "RecTerm",
    "TermError", "ArityError", "UnresolvedName",
    "arity_of", "term_depth", "subterm",
]


@dataclass(frozen=True)
class Zero:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"Zero arity must be a natural number, got {self.n!r}")


@dataclass(frozen=True)
class Succ:
    pass


@dataclass(frozen=True)
class Proj:
    i: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.i, int) and isinstance(self.n, int) and 1 <= self.i <= self.n):
            raise ValueError(f"projection needs 1 <= i <= n, got P[{self.i},{self.n}]")


@dataclass(frozen=True)
class Compose:
    outer: RecTerm
    inners: tuple[RecTerm, ...]

    def __post_init__(self):
        if not isinstance(self.inners, tuple):
            object.__setattr__(self, "inners", tuple(self.inners))
        if not self.inners:
            raise ValueError("composition needs at least one inner term")


@dataclass(frozen=True)
class PrimRec:
    base: RecTerm
    step: RecTerm


@dataclass(frozen=True)
class Mu:
    body: RecTerm


@dataclass(frozen=True)
class Name:
    name: str


RecTerm = Union[Zero, Succ, Proj, Compose, PrimRec, Mu, Name]

# Path steps into a term; a path is a tuple of these.
OUTER = ("outer",)
BASE = ("base",)
STEP = ("step",)
BODY = ("body",)


class TermError(Exception):
    """Static error in a term: bad arity or dangling reference."""

    def __init__(self, message: str, path: tuple = ()):
        super().__init__(message)
        self.message = message
        self.path = tuple(path)

    def __str__(self):
        if self.path:
            return f"{self.message} (at {format_path(self.path)})"
        return self.message


class ArityError(TermError):
    pass


class UnresolvedName(TermError):
    pass


def format_path(path) -> str:
    parts = []
    for step in path:
        if step[0] == "inner":
            parts.append(f"inner[{step[1]}]")
        else:
            parts.append(step[0])
    return "/".join(parts) or "<root>"


def subterm(term: RecTerm, path) -> RecTerm:
    """Follow ``path`` (as produced in :class:`TermError`) into ``term``."""
    for step in path:
        kind = step[0]
        if kind == "outer":
            term = term.outer
        elif kind == "inner":
            term = term.inners[step[1]]
        elif kind == "base":
            term = term.base
        elif kind == "step":
            term = term.step
        elif kind == "body":
            term = term.body
        else:
            raise KeyError(step)
    return term


def arity_of(term: RecTerm, env: Mapping[str, RecTerm] | None = None) -> int:
    """Derive the arity of ``term``, raising :class:`ArityError` on a violation.

    ``Name`` nodes are resolved through ``env``; definitions are analysed once
    per call, so shared references do not blow up.
    """
    env = env or {}
    cache: dict[str, int] = {}
    visiting: set[str] = set()

    def name_arity(name: str, path) -> int:
        if name in cache:
            return cache[name]
        if name not in env:
            raise UnresolvedName(f"unresolved name {name!r}", path)
        if name in visiting:
            raise UnresolvedName(f"cyclic reference through {name!r}", path)
        visiting.add(name)
        try:
            # errors inside a definition are reported relative to that definition
            a = go(env[name], ())
        finally:
            visiting.discard(name)
        cache[name] = a
        return a

    def go(t, path) -> int:
        if isinstance(t, Zero):
            return t.n
        if isinstance(t, Succ):
            return 1
        if isinstance(t, Proj):
            return t.n
        if isinstance(t, Name):
            return name_arity(t.name, path)
        if isinstance(t, Compose):
            k = len(t.inners)
            fa = go(t.outer, path + (OUTER,))
            if fa != k:
                raise ArityError(
                    f"outer function has arity {fa} but is given {k} inner term(s)",
                    path + (OUTER,),
                )
            arities = [go(g, path + (("inner", j),)) for j, g in enumerate(t.inners)]
            for j, a in enumerate(arities[1:], 1):
                if a != arities[0]:
                    raise ArityError(
                        f"inner term has arity {a}, expected {arities[0]} like inner[0]",
                        path + (("inner", j),),
                    )
            return arities[0]
        if isinstance(t, PrimRec):
            ga = go(t.base, path + (BASE,))
            ha = go(t.step, path + (STEP,))
            if ha != ga + 2:
                raise ArityError(
                    f"step function has arity {ha}, expected base arity + 2 = {ga + 2}",
                    path + (STEP,),
                )
            return ga + 1
        if isinstance(t, Mu):
            fa = go(t.body, path + (BODY,))
            if fa < 1:
                raise ArityError("search body must have arity >= 1", path + (BODY,))
            return fa - 1
        raise TypeError(f"not a recursive function term: {t!r}")

    return go(term, ())


def term_depth(term: RecTerm) -> int:
    """Height of the syntax tree (atoms and names have depth 1)."""
    if isinstance(term, Compose):
        return 1 + max(term_depth(t) for t in (term.outer, *term.inners))
    if isinstance(term, PrimRec):
        return 1 + max(term_depth(term.base), term_depth(term.step))
    if isinstance(term, Mu):
        return 1 + term_depth(term.body)
    return 1


def contains_mu(term: RecTerm, env: Mapping[str, RecTerm] | None = None) -> bool:
    env = env or {}
    if isinstance(term, Mu):
        return True
    if isinstance(term, Name):
        return term.name in env and contains_mu(env[term.name], env)
    if isinstance(term, Compose):
        return any(contains_mu(t, env) for t in (term.outer, *term.inners))
    if isinstance(term, PrimRec):
        return contains_mu(term.base, env) or contains_mu(term.step, env)
    return False
