"""Fuel-bounded, arity-checked evaluation of recursive function terms.

Cost model: one unit of fuel per constructor application, i.e. per visit of
a ``Z``, ``S``, ``P``, ``C``, ``R`` or ``M`` node.  ``R`` is evaluated eagerly
bottom-up (base once, then the step ``x`` times); ``M`` probes ``y = 0, 1, ...``
in order.  Names are free.

Two kernels implement this model: a compiled one (``peanokit._ckernel``) and
a pure-Python one.  The compiled kernel is used when it imported and the
numbers involved fit in 62 bits; otherwise the Python kernel runs.  Set
``PEANOKIT_KERNEL=python`` to force the Python kernel.
"""
from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from . import _pykernel
from .code import Code, compile_term
from .terms import ArityError, RecTerm

try:
    from . import _ckernel
except ImportError:  # pragma: no cover - depends on the build
    _ckernel = None

if os.environ.get("PEANOKIT_KERNEL", "").lower() == "python":
    _ckernel = None

BACKEND = "cython" if _ckernel is not None else "python"

_OK, _EXHAUSTED, _OVERFLOW = 0, 1, 2

__all__ = [
    "BACKEND", "EvalBudget", "Value", "FuelExhausted", "ArityMismatch", "EvalOutcome",
    "TraceEvent", "Compiled", "compile", "evaluate", "evaluate_trace",
]


@dataclass
class EvalBudget:
    """Fuel allowance plus a running count of what has been spent against it."""

    fuel: int
    consumed: int = 0

    def __post_init__(self):
        if self.fuel < 0 or self.consumed < 0 or self.consumed > self.fuel:
            raise ValueError(f"invalid budget: consumed {self.consumed} of {self.fuel}")

    @property
    def remaining(self) -> int:
        return self.fuel - self.consumed


@dataclass(frozen=True)
class Value:
    value: int
    consumed: int = 0


@dataclass(frozen=True)
class FuelExhausted:
    consumed: int


@dataclass(frozen=True)
class ArityMismatch:
    message: str
    path: tuple = ()


EvalOutcome = Union[Value, FuelExhausted, ArityMismatch]


@dataclass(frozen=True)
class TraceEvent:
    """``kind == "rec"``: a step-case unrolling producing ``f(*args) = value``.
    ``kind == "mu"``: a search probe; ``args`` ends with the probed ``y`` and
    ``value`` is the body's result there."""

    kind: str
    args: tuple
    value: int


class Compiled:
    """A term lowered once and evaluated many times."""

    def __init__(self, code: Code):
        self.code = code
        self.arity = code.arity[code.root]
        self._machine = None
        self._lock = threading.Lock()

    def _check_args(self, args) -> tuple | ArityMismatch:
        args = tuple(args)
        if len(args) != self.arity:
            return ArityMismatch(f"expected {self.arity} argument(s), got {len(args)}")
        for x in args:
            if isinstance(x, bool) or not isinstance(x, int) or x < 0:
                raise ValueError(f"arguments must be natural numbers, got {x!r}")
        return args

    def _run_compiled(self, args, fuel, jets):
        if self._machine is None:
            self._machine = _ckernel.Machine(self.code)
        # a machine holds per-run scratch state; concurrent callers get their own
        if self._lock.acquire(blocking=False):
            try:
                return self._machine.run(args, fuel, jets)
            finally:
                self._lock.release()
        return _ckernel.Machine(self.code).run(args, fuel, jets)

    def run(self, args: Sequence[int], fuel: int, *, jets: bool = True,
            backend: str | None = None) -> EvalOutcome:
        """Evaluate on ``args`` with ``fuel`` units; see module docs for the cost model."""
        args = self._check_args(args)
        if isinstance(args, ArityMismatch):
            return args
        backend = backend or BACKEND
        status = _OVERFLOW
        if backend == "cython":
            if _ckernel is None:
                raise RuntimeError("compiled kernel is not available")
            status, value, used = self._run_compiled(args, fuel, jets)
        elif backend != "python":
            raise ValueError(f"unknown backend {backend!r}")
        if status == _OVERFLOW:
            status, value, used = _pykernel.run(self.code, args, fuel, jets)
        if status == _EXHAUSTED:
            return FuelExhausted(used)
        return Value(value, used)

    def trace(self, args: Sequence[int], fuel: int) -> tuple[EvalOutcome, list[TraceEvent]]:
        args = self._check_args(args)
        if isinstance(args, ArityMismatch):
            return args, []
        log: list = []
        status, value, used = _pykernel.run(self.code, args, fuel, jets=False, log=log)
        events = [TraceEvent(*e) for e in log]
        if status == _EXHAUSTED:
            return FuelExhausted(used), events
        return Value(value, used), events


def compile(term: RecTerm, env: Mapping[str, RecTerm] | None = None) -> Compiled:
    """Arity-check and lower ``term``; raises on arity errors or dangling names."""
    return Compiled(compile_term(term, env))


def _prepare(term, env, budget, fuel):
    if budget is None:
        if fuel is None:
            raise TypeError("give either a budget or fuel")
        budget = EvalBudget(fuel)
    try:
        compiled = compile(term, env)
    except ArityError as exc:
        return None, budget, ArityMismatch(exc.message, exc.path)
    return compiled, budget, None


def evaluate(term: RecTerm, args: Sequence[int], budget: EvalBudget | None = None,
             env: Mapping[str, RecTerm] | None = None, *, fuel: int | None = None,
             jets: bool = True) -> EvalOutcome:
    """Evaluate ``term`` on ``args``, spending from ``budget`` (or a fresh ``fuel``).

    The budget's ``consumed`` count is advanced by what the run used.
    """
    compiled, budget, bad = _prepare(term, env, budget, fuel)
    if bad is not None:
        return bad
    out = compiled.run(args, budget.remaining, jets=jets)
    if not isinstance(out, ArityMismatch):
        budget.consumed += out.consumed
    return out


def evaluate_trace(term: RecTerm, args: Sequence[int], budget: EvalBudget | None = None,
                   env: Mapping[str, RecTerm] | None = None, *,
                   fuel: int | None = None) -> tuple[EvalOutcome, list[TraceEvent]]:
    """Like :func:`evaluate` but also return the log of unrollings and probes."""
    compiled, budget, bad = _prepare(term, env, budget, fuel)
    if bad is not None:
        return bad, []
    out, log = compiled.trace(args, budget.remaining)
    if not isinstance(out, ArityMismatch):
        budget.consumed += out.consumed
    return out, log
