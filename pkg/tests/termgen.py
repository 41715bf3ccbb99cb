"""Random well-arity terms and programs.

Generators take a ``draw(lo, hi)`` callable returning an int in ``[lo, hi]``,
so the same code serves ``random.Random.randint`` and hypothesis draws.
"""
from __future__ import annotations

import random

from hypothesis import strategies as st

from peanokit.terms import Compose, Mu, Name, PrimRec, Proj, Succ, Zero


def gen_term(draw, arity: int, depth: int, *, mu: bool = True, names=None):
    """A term of exactly ``arity`` with syntax-tree height at most ``depth``.

    ``names`` maps arity -> list of definition names usable as leaves.
    """
    names = names or {}
    leaves = [("zero",)]
    if arity >= 1:
        leaves.append(("proj",))
    if arity == 1:
        leaves.append(("succ",))
    if names.get(arity):
        leaves.append(("name",))
    nodes = []
    if depth > 1:
        nodes.append("comp")
        if arity >= 1:
            nodes.append("rec")
        if mu:
            nodes.append("mu")
    kinds = [k[0] for k in leaves] + nodes
    kind = kinds[draw(0, len(kinds) - 1)]
    if kind == "zero":
        return Zero(arity)
    if kind == "proj":
        return Proj(draw(1, arity), arity)
    if kind == "succ":
        return Succ()
    if kind == "name":
        pool = names[arity]
        return Name(pool[draw(0, len(pool) - 1)])
    sub = depth - 1
    if kind == "comp":
        m = draw(1, 3)
        outer = gen_term(draw, m, sub, mu=mu, names=names)
        inners = tuple(gen_term(draw, arity, sub, mu=mu, names=names) for _ in range(m))
        return Compose(outer, inners)
    if kind == "rec":
        return PrimRec(gen_term(draw, arity - 1, sub, mu=mu, names=names),
                       gen_term(draw, arity + 1, sub, mu=mu, names=names))
    return Mu(gen_term(draw, arity + 1, sub, mu=mu, names=names))


def gen_program(draw, max_defs: int, depth: int):
    """``[(name, term), ...]`` where later definitions may use earlier names."""
    defs = []
    names: dict[int, list[str]] = {}
    for k in range(draw(0, max_defs)):
        arity = draw(0, 3)
        term = gen_term(draw, arity, depth, names=names)
        name = f"f{k}"
        defs.append((name, term))
        names.setdefault(arity, []).append(name)
    return defs


def rng_draw(seed):
    r = random.Random(seed)
    return r.randint


@st.composite
def terms(draw, arity=None, depth=4, mu=True):
    n = draw(st.integers(0, 3)) if arity is None else arity
    return n, gen_term(lambda lo, hi: draw(st.integers(lo, hi)), n, depth, mu=mu)


@st.composite
def programs(draw, max_defs=4, depth=5):
    return gen_program(lambda lo, hi: draw(st.integers(lo, hi)), max_defs, depth)
