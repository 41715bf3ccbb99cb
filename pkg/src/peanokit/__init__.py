"""peanokit: models of the natural numbers and what is built on them.

* :mod:`peanokit.models` -- pointed structures, axiom checks, iteration, isomorphisms
* :mod:`peanokit.terms`, :mod:`peanokit.evaluator` -- primitive/mu-recursive terms
* :mod:`peanokit.dsl` -- the ``.rf`` text syntax
* :mod:`peanokit.quotients` -- integers and rationals as classes of pairs
* :mod:`peanokit.cuts` -- Dedekind cuts with bracket refinement
"""
from .evaluator import (
    BACKEND, ArityMismatch, EvalBudget, FuelExhausted, Value, evaluate, evaluate_trace,
)
from .terms import Compose, Mu, Name, PrimRec, Proj, Succ, Zero, arity_of

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "ArityMismatch", "EvalBudget", "FuelExhausted", "Value", "evaluate",
    "evaluate_trace", "Compose", "Mu", "Name", "PrimRec", "Proj", "Succ", "Zero", "arity_of",
]
