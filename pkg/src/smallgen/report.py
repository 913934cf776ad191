"""JSON conversion of results: enclosures become decimal strings with error bounds."""

from __future__ import annotations

import dataclasses
import enum
import json
import math
from fractions import Fraction

import mpmath

from .exactalg.intervals import RealEnclosure
from .exactalg.polynomial import IntPolynomial
from .heights import LogHeight
from .numfield.field import NumberField


def _sci(x: Fraction, digits: int) -> str:
    if x == 0:
        return "0"
    with mpmath.workdps(digits + 10):
        return mpmath.nstr(mpmath.mpf(x.numerator) / x.denominator, digits)


def enclosure_json(e: RealEnclosure, digits: int) -> dict:
    err = e.error_bound()
    # round the error bound up to 3 significant digits so it still bounds
    if err:
        k = math.floor(math.log10(float(err))) - 2
        err_str = _sci(Fraction(math.ceil(err / Fraction(10) ** k)) * Fraction(10) ** k, 3)
    else:
        err_str = "0"
    return {"value": e.decimal(digits), "error_bound": err_str, "exact": e.is_exact()}


def height_json(h: LogHeight, digits: int) -> dict:
    return {
        "height": enclosure_json(h.height(max(256, 4 * digits)), digits),
        "log_height": enclosure_json(h.log_value, digits),
        "minimal_polynomial": str(h.minpoly),
        "coefficients": list(h.minpoly.coeffs[::-1]),
        "mahler_measure": enclosure_json(h.mahler, digits),
        "exact_one": h.exact_one,
    }


def to_jsonable(obj, digits: int = 20):
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, RealEnclosure):
        return enclosure_json(obj, digits)
    if isinstance(obj, LogHeight):
        return height_json(obj, digits)
    if isinstance(obj, IntPolynomial):
        return {"polynomial": str(obj), "coefficients": list(obj.coeffs[::-1])}
    if isinstance(obj, NumberField):
        return {"defining_polynomial": str(obj.defining_poly), "degree": obj.degree,
                "signature": list(obj.signature)}
    if isinstance(obj, (frozenset, set)):
        return sorted(to_jsonable(x, digits) for x in obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x, digits) for x in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name), digits) for f in dataclasses.fields(obj)}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
