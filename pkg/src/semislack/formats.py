"""JSON encodings: matrices are arrays of arrays, non-integral rationals are
``"p/q"`` strings."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import exact_linalg as la


def encode_number(x):
    x = la.as_rational(x)
    return x if isinstance(x, int) else f"{x.numerator}/{x.denominator}"


def encode_vector(v: Sequence) -> list:
    return [encode_number(x) for x in v]


def encode_matrix(M: Sequence[Sequence]) -> list:
    return [encode_vector(r) for r in M]


def decode_matrix(data: Any) -> la.Mat:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ValueError("matrix must be a JSON array of arrays")
    for r in data:
        for x in r:
            if isinstance(x, float):
                raise ValueError(f"floating point entry {x!r}; write rationals as \"p/q\"")
    return la.mat(data)


def decode_generators(data: Any) -> la.Mat:
    """Accept ``{"generators": [...]}`` or a bare array of vectors."""
    if isinstance(data, dict):
        if "generators" not in data:
            raise ValueError('missing "generators" key')
        data = data["generators"]
    return decode_matrix(data)


def dumps(obj: Any, indent: Optional[int] = None) -> str:
    return json.dumps(obj, sort_keys=True, indent=indent, default=_fraction_default)


def _fraction_default(o):
    if isinstance(o, Fraction):
        return encode_number(o)
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"cannot encode {type(o).__name__}")
