"""Lowering of terms to a flat node table shared by both evaluation kernels.

Each distinct subterm becomes one node; ``Name`` references are resolved to
the root node of the referenced definition, so the table is a DAG and names
cost nothing at run time.

Jets
----
A handful of standard definitions (``pred``, ``add``, ``mul`` and the
reversed truncated subtraction) are recognised by *shape*, independently of
the names they were given.  When jets are enabled the kernels compute such a
node natively and charge exactly the fuel that plain interpretation of the
same node would consume, so outcomes, consumed counts and exhaustion points
do not depend on whether jets are on.  ``tests/test_jets.py`` checks this
against plain interpretation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .terms import (
    Compose, Mu, Name, PrimRec, Proj, RecTerm, Succ, UnresolvedName, Zero, arity_of,
)

ZERO, SUCC, PROJ, COMP, REC, MU = range(6)

JET_NONE = -1
JET_PRED, JET_ADD, JET_MUL, JET_MONUS_R = range(4)
JET_NAMES = ("pred", "add", "mul", "monus_r")

# Shapes are nested tuples; a recognised jet collapses to ("jet", name).
_P = lambda i, n: ("P", i, n)  # noqa: E731
_S = ("S",)
_JET_TEMPLATES = {
    # pred(x): R(Z[0], P[1,2])
    ("R", ("Z", 0), _P(1, 2)): JET_PRED,
    # add(x, y): R(P[1,1], C(S; P[2,3]))
    ("R", _P(1, 1), ("C", _S, (_P(2, 3),))): JET_ADD,
    # mul(x, y): R(Z[1], C(add; P[3,3], P[2,3]))
    ("R", ("Z", 1), ("C", ("jet", "add"), (_P(3, 3), _P(2, 3)))): JET_MUL,
    # monus_r(b, a) = a - b truncated: R(P[1,1], C(pred; P[2,3]))
    ("R", _P(1, 1), ("C", ("jet", "pred"), (_P(2, 3),))): JET_MONUS_R,
}


_MAX_SHAPE = 32


def jet_apply(jet: int, xs) -> tuple[int, int]:
    """Value and exact interpretation cost of a jetted node on ``xs``."""
    if jet == JET_PRED:
        x = xs[0]
        return (x - 1 if x else 0), 2 + x
    if jet == JET_ADD:
        x, y = xs
        return x + y, 2 + 3 * x
    if jet == JET_MUL:
        x, y = xs
        return x * y, 2 + x * (5 + 3 * y)
    if jet == JET_MONUS_R:
        b, a = xs
        if b <= a:
            tail = b * (2 * a - b + 1) // 2
        else:
            tail = a * (a + 1) // 2
        return (a - b if a > b else 0), 2 + 4 * b + tail
    raise ValueError(f"unknown jet {jet}")


@dataclass
class Code:
    """Flat node table.  Child references are node indices."""

    op: list[int] = field(default_factory=list)
    a: list[int] = field(default_factory=list)     # Z: n; P: i; C: outer; R: base; M: body
    b: list[int] = field(default_factory=list)     # P: n; R: step
    kids: list[tuple[int, ...]] = field(default_factory=list)  # C: inners
    arity: list[int] = field(default_factory=list)
    jet: list[int] = field(default_factory=list)
    root: int = -1

    def __len__(self):
        return len(self.op)

    def stack_need(self) -> int:
        """Scratch slots the compiled kernel needs for the deepest call chain."""
        memo: dict[int, int] = {}
        order = self._postorder()
        for i in order:
            o = self.op[i]
            if o == COMP:
                below = max([memo[k] for k in self.kids[i]] + [memo[self.a[i]]])
                memo[i] = len(self.kids[i]) + below
            elif o == REC:
                memo[i] = self.arity[i] + 1 + max(memo[self.a[i]], memo[self.b[i]])
            elif o == MU:
                memo[i] = self.arity[i] + 1 + memo[self.a[i]]
            else:
                memo[i] = 0
        return memo[self.root] + self.arity[self.root] + 1

    def _postorder(self) -> list[int]:
        # children are always created before parents
        return list(range(len(self.op)))


def compile_term(term: RecTerm, env: Mapping[str, RecTerm] | None = None) -> Code:
    """Lower ``term`` (with its ``env``) to a :class:`Code` table.

    Raises :class:`~peanokit.terms.ArityError` or
    :class:`~peanokit.terms.UnresolvedName` exactly as :func:`arity_of` does.
    """
    env = dict(env or {})
    arity_of(term, env)
    code = Code()
    interned: dict[tuple, int] = {}
    shapes: list[tuple] = []
    sizes: list[int] = []
    by_name: dict[str, int] = {}

    def add(key, op, a=0, b=0, kids=(), ar=0, shape=None):
        if key in interned:
            return interned[key]
        i = len(code.op)
        code.op.append(op)
        code.a.append(a)
        code.b.append(b)
        code.kids.append(tuple(kids))
        code.arity.append(ar)
        children = {COMP: (a, *kids), REC: (a, b), MU: (a,)}.get(op, ())
        size = 1 + sum(sizes[k] for k in children)
        # large shapes cannot match a template; keep them opaque so hashing stays cheap
        if size > _MAX_SHAPE:
            shape = ("node", i)
        jet = _JET_TEMPLATES.get(shape, JET_NONE)
        code.jet.append(jet)
        sizes.append(size)
        shapes.append(("jet", JET_NAMES[jet]) if jet != JET_NONE else shape)
        interned[key] = i
        return i

    def lower(t) -> int:
        if isinstance(t, Name):
            if t.name not in by_name:
                if t.name not in env:
                    raise UnresolvedName(f"unresolved name {t.name!r}")
                by_name[t.name] = lower(env[t.name])
            return by_name[t.name]
        if isinstance(t, Zero):
            return add(("Z", t.n), ZERO, a=t.n, ar=t.n, shape=("Z", t.n))
        if isinstance(t, Succ):
            return add(("S",), SUCC, ar=1, shape=_S)
        if isinstance(t, Proj):
            return add(("P", t.i, t.n), PROJ, a=t.i, b=t.n, ar=t.n, shape=_P(t.i, t.n))
        if isinstance(t, Compose):
            f = lower(t.outer)
            gs = tuple(lower(g) for g in t.inners)
            shape = ("C", shapes[f], tuple(shapes[g] for g in gs))
            return add(("C", f, gs), COMP, a=f, kids=gs, ar=code.arity[gs[0]], shape=shape)
        if isinstance(t, PrimRec):
            g = lower(t.base)
            h = lower(t.step)
            shape = ("R", shapes[g], shapes[h])
            return add(("R", g, h), REC, a=g, b=h, ar=code.arity[g] + 1, shape=shape)
        if isinstance(t, Mu):
            f = lower(t.body)
            return add(("M", f), MU, a=f, ar=code.arity[f] - 1, shape=("M", shapes[f]))
        raise TypeError(f"not a recursive function term: {t!r}")

    code.root = lower(term)
    return code
