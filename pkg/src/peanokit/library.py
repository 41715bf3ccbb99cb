"""The standard definitions shipped with the package (``data/stdlib.rf``)."""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .dsl import Program, parse


def stdlib_source() -> str:
    return resources.files("peanokit").joinpath("data/stdlib.rf").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def stdlib() -> Program:
    """``pred``, ``add``, ``mul``, ``monus_r``, ``monus``, ``sq``, ``isqrt_test``, ``isqrt``."""
    return parse(stdlib_source())
