"""Pointed structures ``(X, 0, S)``, chains, axiom checks, the recursion
theorem as an iteration engine, and the isomorphism between models.

Infinite carriers are represented by finite fragments.  An element where the
successor table stops must be declared as *frontier*; frontier elements are
never reported as induction counterexamples.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from types import MappingProxyType
from typing import Any, Callable, Hashable, Iterable, Mapping

__all__ = [
    "PointedStructure", "RuleModel", "Chain", "AxiomReport", "IterationSpec", "ModelIso",
    "ModelError", "ModelFormatError", "IterationError", "AxiomsRefused",
    "chain_of", "check_axioms", "iterate", "iterate_indexed", "trajectory",
    "build_iso", "load_model", "dump_model", "UNARY", "BINARY", "DECIMAL",
    "builtin_model", "BUILTIN_MODELS", "FIXTURES",
]

Element = Hashable


class ModelError(ValueError):
    """Malformed structure or a request outside its domain."""


class ModelFormatError(ModelError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class IterationError(RuntimeError):
    """The step map failed; ``index`` is the stage ``x`` whose ``S(x)`` was being computed."""

    def __init__(self, index: int, cause: BaseException):
        super().__init__(f"step failed at index {index}: {cause!r}")
        self.index = index
        self.cause = cause


class AxiomsRefused(ModelError):
    def __init__(self, which: str, report: AxiomReport):
        super().__init__(f"model {which} fails the axioms: {report.summary()}")
        self.which = which
        self.report = report


@dataclass(frozen=True)
class PointedStructure:
    """A finite carrier with a zero and a successor table, undefined only at ``frontier``."""

    elements: tuple
    zero: Element
    succ: Mapping[Element, Element]
    frontier: frozenset = frozenset()

    def __post_init__(self):
        elements = tuple(self.elements)
        if len(set(elements)) != len(elements):
            raise ModelError("duplicate element ids")
        members = set(elements)
        succ = MappingProxyType(dict(self.succ))
        frontier = frozenset(self.frontier)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "succ", succ)
        object.__setattr__(self, "frontier", frontier)
        if self.zero not in members:
            raise ModelError(f"zero {self.zero!r} is not an element")
        for x, y in succ.items():
            if x not in members or y not in members:
                raise ModelError(f"successor edge {x!r} -> {y!r} leaves the carrier")
        for x in frontier:
            if x not in members:
                raise ModelError(f"frontier element {x!r} is not an element")
            if x in succ:
                raise ModelError(f"frontier element {x!r} has a successor")
        for x in elements:
            if x not in succ and x not in frontier:
                raise ModelError(f"successor of {x!r} is undefined but it is not declared frontier")

    def __hash__(self):
        return hash((self.elements, self.zero, tuple(sorted(self.succ.items(), key=repr)),
                     self.frontier))

    def __len__(self):
        return len(self.elements)

    def successor(self, x: Element) -> Element:
        if x not in self.succ:
            raise ModelError(f"successor undefined at {x!r}")
        return self.succ[x]


@dataclass(frozen=True)
class RuleModel:
    """An unbounded model given by a computable successor on canonical encodings."""

    name: str
    zero: Any
    step: Callable[[Any], Any] = field(compare=False)

    def successor(self, x):
        return self.step(x)

    def fragment(self, depth: int) -> PointedStructure:
        """The first ``depth`` elements from zero; the last one is the frontier."""
        if depth < 1:
            raise ModelError("a fragment needs at least one element")
        elems = [self.zero]
        for _ in range(depth - 1):
            elems.append(self.step(elems[-1]))
        succ = dict(zip(elems, elems[1:]))
        return PointedStructure(tuple(elems), self.zero, succ, frozenset([elems[-1]]))


def _binary_increment(s: str) -> str:
    digits = list(s)
    i = len(digits) - 1
    while i >= 0 and digits[i] == "1":
        digits[i] = "0"
        i -= 1
    if i < 0:
        return "1" + "".join(digits)
    digits[i] = "1"
    return "".join(digits)


def _decimal_increment(s: str) -> str:
    digits = list(s)
    i = len(digits) - 1
    while i >= 0 and digits[i] == "9":
        digits[i] = "0"
        i -= 1
    if i < 0:
        return "1" + "".join(digits)
    digits[i] = str(int(digits[i]) + 1)
    return "".join(digits)


UNARY = RuleModel("unary", "", lambda s: s + "|")
BINARY = RuleModel("binary", "0", _binary_increment)
DECIMAL = RuleModel("decimal", "0", _decimal_increment)
BUILTIN_MODELS = {m.name: m for m in (UNARY, BINARY, DECIMAL)}

FIXTURES = {
    "linear": PointedStructure(("0", "1", "2", "3"), "0",
                               {"0": "1", "1": "2", "2": "3"}, frozenset({"3"})),
    "cycle": PointedStructure(("0", "1", "2"), "0", {"0": "1", "1": "2", "2": "0"}),
    "nonstandard": PointedStructure(("0", "1", "2", "3", "a", "b"), "0",
                                    {"0": "1", "1": "2", "2": "3", "a": "b", "b": "a"},
                                    frozenset({"3"})),
}


def builtin_model(name: str):
    """A rule model (``unary``, ``binary``, ``decimal``) or a fixture structure."""
    if name in BUILTIN_MODELS:
        return BUILTIN_MODELS[name]
    if name in FIXTURES:
        return FIXTURES[name]
    raise ModelError(f"unknown builtin model {name!r}")


@dataclass(frozen=True)
class Chain:
    members: tuple

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in set(self.members)


def chain_of(struct: PointedStructure, seed: Element, max_depth: int) -> Chain:
    """Forward orbit of ``seed``: at most ``max_depth`` successor steps, stopping
    early at a frontier element or at the first repeat."""
    if max_depth < 0:
        raise ModelError("max_depth must be >= 0")
    if seed not in set(struct.elements):
        raise ModelError(f"unknown seed {seed!r}")
    members = [seed]
    seen = {seed}
    x = seed
    for _ in range(max_depth):
        if x not in struct.succ:
            break
        x = struct.succ[x]
        if x in seen:
            break
        seen.add(x)
        members.append(x)
    return Chain(tuple(members))


@dataclass(frozen=True)
class AxiomReport:
    d1_holds: bool
    d2_holds: bool
    d3_holds: bool
    fragment_depth: int
    d1_counterexample: Element | None = None
    d2_counterexample: tuple | None = None
    d3_counterexample: Element | None = None

    @property
    def ok(self) -> bool:
        return self.d1_holds and self.d2_holds and self.d3_holds

    def summary(self) -> str:
        marks = []
        for label, holds, cx in (("D1", self.d1_holds, self.d1_counterexample),
                                 ("D2", self.d2_holds, self.d2_counterexample),
                                 ("D3", self.d3_holds, self.d3_counterexample)):
            marks.append(f"{label} ok" if holds else f"{label} FAILS ({cx!r})")
        return ", ".join(marks)

    def to_dict(self) -> dict:
        return {
            "d1": self.d1_holds,
            "d2": self.d2_holds,
            "d3": self.d3_holds,
            "counterexamples": {
                "d1": self.d1_counterexample,
                "d2": list(self.d2_counterexample) if self.d2_counterexample else None,
                "d3": self.d3_counterexample,
            },
            "fragment_depth": self.fragment_depth,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


STRICT_LIMIT = 12


def _closed_subsets_with_zero(struct: PointedStructure) -> Iterable[frozenset]:
    others = [x for x in struct.elements if x != struct.zero]
    for r in range(len(others) + 1):
        for combo in combinations(others, r):
            m = frozenset((struct.zero, *combo))
            if all(struct.succ[x] in m for x in m if x in struct.succ):
                yield m


def check_axioms(struct: PointedStructure, *, strict: bool = False) -> AxiomReport:
    """Check zero-not-a-successor, injectivity and induction on a fragment.

    Induction is checked as "every non-frontier element lies in the chain of
    zero".  With ``strict=True`` it is instead checked by enumerating every
    subset that contains zero and is closed under the successor (fragments of
    at most 12 elements).
    """
    d1_cx = None
    for x in struct.elements:
        if x in struct.succ and struct.succ[x] == struct.zero:
            d1_cx = x
            break

    d2_cx = None
    first_preimage: dict = {}
    for x in struct.elements:
        if x not in struct.succ:
            continue
        y = struct.succ[x]
        if y in first_preimage:
            d2_cx = (first_preimage[y], x)
            break
        first_preimage[y] = x

    if strict:
        if len(struct) > STRICT_LIMIT:
            raise ModelError(f"strict induction check is limited to {STRICT_LIMIT} elements")
        needed = [x for x in struct.elements if x not in struct.frontier]
        d3_cx = None
        for m in _closed_subsets_with_zero(struct):
            missing = [x for x in needed if x not in m]
            if missing:
                d3_cx = missing[0]
                break
    else:
        reached = set(chain_of(struct, struct.zero, len(struct)).members)
        d3_cx = next((x for x in struct.elements
                      if x not in reached and x not in struct.frontier), None)

    return AxiomReport(
        d1_holds=d1_cx is None, d2_holds=d2_cx is None, d3_holds=d3_cx is None,
        fragment_depth=len(struct),
        d1_counterexample=d1_cx, d2_counterexample=d2_cx, d3_counterexample=d3_cx,
    )


@dataclass(frozen=True)
class IterationSpec:
    """Seed ``omega`` and step ``theta``; with ``indexed`` the step takes ``(x, value)``."""

    seed: Any
    step: Callable
    indexed: bool = False


def trajectory(spec: IterationSpec, n: int) -> list:
    """``[Psi(0), ..., Psi(n)]`` with ``Psi(0) = seed`` and ``Psi(x+1) = step(Psi(x))``
    (or ``step(x, Psi(x))`` for indexed specs)."""
    if n < 0:
        raise ValueError("n must be a natural number")
    values = [spec.seed]
    v = spec.seed
    step = spec.step
    for x in range(n):
        try:
            v = step(x, v) if spec.indexed else step(v)
        except Exception as exc:
            raise IterationError(x, exc) from exc
        values.append(v)
    return values


def iterate(spec: IterationSpec, n: int):
    """``Psi(n)`` for the unique ``Psi`` with ``Psi(0) = seed``, ``Psi(S(x)) = step(Psi(x))``."""
    if spec.indexed:
        raise ValueError("indexed step; use iterate_indexed")
    return _run(spec, n)


def iterate_indexed(spec: IterationSpec, n: int):
    """``Psi(n)`` for ``Psi(0) = seed``, ``Psi(S(x)) = step(x, Psi(x))``."""
    if not spec.indexed:
        raise ValueError("step takes a single argument; use iterate")
    return _run(spec, n)


def _run(spec, n):
    if n < 0:
        raise ValueError("n must be a natural number")
    v = spec.seed
    step = spec.step
    for x in range(n):
        try:
            v = step(x, v) if spec.indexed else step(v)
        except Exception as exc:
            raise IterationError(x, exc) from exc
    return v


@dataclass(frozen=True)
class ModelIso:
    """Prefix ``[(a_0, b_0), (a_1, b_1), ...]`` of the isomorphism, matched from the zeros."""

    pairs: tuple

    def __len__(self):
        return len(self.pairs)

    def forward(self) -> dict:
        return dict(self.pairs)

    def inverse(self) -> ModelIso:
        return ModelIso(tuple((b, a) for a, b in self.pairs))


def _as_fragment(model, depth: int) -> PointedStructure:
    if isinstance(model, RuleModel):
        return model.fragment(depth)
    return model


def build_iso(model_a, model_b, depth: int) -> ModelIso:
    """The first ``depth`` pairs of the unique zero-preserving, successor-commuting
    map from ``model_a`` to ``model_b``.

    The map is produced by iterating ``model_b``'s successor from its zero,
    so uniqueness is that of iteration.  Raises :class:`AxiomsRefused` when a
    fragment fails the axioms and :class:`ModelError` when a fragment is
    shorter than ``depth``.
    """
    if depth < 1:
        raise ModelError("depth must be >= 1")
    frag_a = _as_fragment(model_a, depth)
    frag_b = _as_fragment(model_b, depth)
    for which, frag in (("A", frag_a), ("B", frag_b)):
        report = check_axioms(frag)
        if not report.ok:
            raise AxiomsRefused(which, report)
    chain_a = chain_of(frag_a, frag_a.zero, depth - 1).members
    if len(chain_a) < depth:
        raise ModelError(f"model A reaches only {len(chain_a)} elements from zero")
    if len(chain_of(frag_b, frag_b.zero, depth - 1)) < depth:
        raise ModelError("model B is too short for the requested depth")
    psi = trajectory(IterationSpec(frag_b.zero, frag_b.successor), depth - 1)
    return ModelIso(tuple(zip(chain_a, psi)))


def load_model(text: str) -> PointedStructure:
    """Parse the line format::

        zero: <id>
        <id> -> <id>
        ...
        frontier: <id>,<id>,...

    Blank lines and ``#`` comments are ignored; the frontier line is optional.
    """
    zero = None
    order: list[str] = []
    seen: set[str] = set()
    succ: dict[str, str] = {}
    frontier: list[str] = []
    frontier_seen = False

    def note(x, lineno):
        if not x.isalnum() or not x.isascii():
            raise ModelFormatError(f"invalid element id {x!r}", lineno)
        if x not in seen:
            seen.add(x)
            order.append(x)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if zero is None:
            if not line.startswith("zero:"):
                raise ModelFormatError("expected 'zero: <id>' first", lineno)
            zero = line[len("zero:"):].strip()
            note(zero, lineno)
        elif line.startswith("frontier:"):
            if frontier_seen:
                raise ModelFormatError("more than one frontier line", lineno)
            frontier_seen = True
            rest = line[len("frontier:"):].strip()
            for x in (p.strip() for p in rest.split(",")) if rest else ():
                note(x, lineno)
                frontier.append(x)
        elif "->" in line:
            if frontier_seen:
                raise ModelFormatError("edges must come before the frontier line", lineno)
            left, _, right = line.partition("->")
            x, y = left.strip(), right.strip()
            note(x, lineno)
            note(y, lineno)
            if x in succ:
                raise ModelFormatError(f"{x!r} has two successors", lineno)
            succ[x] = y
        else:
            raise ModelFormatError(f"cannot parse {line!r}", lineno)
    if zero is None:
        raise ModelFormatError("missing 'zero:' line")
    try:
        return PointedStructure(tuple(order), zero, succ, frozenset(frontier))
    except ModelError as exc:
        raise ModelFormatError(str(exc)) from None


def dump_model(struct: PointedStructure) -> str:
    lines = [f"zero: {struct.zero}"]
    lines += [f"{x} -> {struct.succ[x]}" for x in struct.elements if x in struct.succ]
    if struct.frontier:
        lines.append("frontier: " + ",".join(x for x in struct.elements if x in struct.frontier))
    return "\n".join(lines) + "\n"
