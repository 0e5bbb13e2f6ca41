"""Unit systems.

Everything is computed in a :class:`Units` instance that carries the four
constants the formulas need. ``NATURAL`` sets all of them to one, which is
how the formulas are written internally; ``si()`` uses CODATA-2018 values
rounded to 10 significant digits.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace

CODATA_ENV = "VACMOTION_CODATA"


@dataclass(frozen=True)
class Units:
    name: str
    hbar: float
    c: float
    k_B: float
    G: float


NATURAL = Units("natural", 1.0, 1.0, 1.0, 1.0)

# CODATA 2018, 10 significant digits (G is only known to 6)
_CODATA_2018 = Units(
    "si",
    hbar=1.054571818e-34,
    c=299792458.0,
    k_B=1.380649e-23,
    G=6.67430e-11,
)

ELECTRON_MASS_SI = 9.109383702e-31


def si() -> Units:
    """SI constants, optionally overridden from a JSON file named by $VACMOTION_CODATA.

    The override exists for tests; keys are any of ``hbar``, ``c``, ``k_B``, ``G``.
    """
    path = os.environ.get(CODATA_ENV)
    if not path:
        return _CODATA_2018
    with open(path) as fh:
        overrides = json.load(fh)
    unknown = set(overrides) - {"hbar", "c", "k_B", "G"}
    if unknown:
        raise ValueError(f"unknown constants in {path}: {sorted(unknown)}")
    return replace(_CODATA_2018, **{k: float(v) for k, v in overrides.items()})


def get_units(name: str) -> Units:
    name = name.lower()
    if name == "natural":
        return NATURAL
    if name == "si":
        return si()
    raise ValueError(f"unknown unit system {name!r}")
