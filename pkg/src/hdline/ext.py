"""Nonnegative exact rationals extended with +infinity.

Finite values are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator); the single infinite value is ``math.inf``.  No other
float ever enters the exact core, so ``x == INF`` is a reliable test.
"""

import math
from fractions import Fraction
from typing import Union

Ext = Union[Fraction, float]

INF = math.inf

_INF_TOKENS = {"inf", "+inf", "infinity", "∞"}


def is_inf(x: Ext) -> bool:
    return isinstance(x, float) and x == INF


def ext(value) -> Ext:
    """Coerce ``value`` into an extended rational.

    Accepts ints, Fractions, ``math.inf`` and strings such as ``"3/4"``,
    ``"2"`` or ``"inf"``.  Finite floats are rejected: rationalize them
    explicitly (see :func:`hdline.scheduler.rationalize_real`).
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not capacities")
    if isinstance(value, float):
        if value == INF:
            return INF
        raise TypeError(f"finite float {value!r} must be rationalized explicitly")
    if isinstance(value, str):
        token = value.strip().lower()
        if token in _INF_TOKENS:
            return INF
        try:
            out = Fraction(token)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
        if "." in token or "e" in token:
            raise ValueError(f"decimal notation not allowed, use p/q: {value!r}")
    else:
        out = Fraction(value)
    if out < 0:
        raise ValueError(f"negative value {value!r}")
    return out


def fmt(x: Ext) -> str:
    """Render as ``"p/q"``, ``"p"`` or ``"inf"``."""
    if is_inf(x):
        return "inf"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def hm(x: Ext, y: Ext) -> Ext:
    """Half the harmonic mean, ``x*y/(x+y)``, extended to infinity.

    ``hm(x, inf) = x``, ``hm(inf, inf) = inf`` and ``hm(x, 0) = 0``.
    """
    if is_inf(x):
        return y
    if is_inf(y):
        return x
    if x == 0 or y == 0:
        return Fraction(0)
    return Fraction(x) * y / (x + y)


def scale(weight: Fraction, cap: Ext) -> Ext:
    """Time fraction times capacity.

    An infinite link never limits a rate, whatever fraction of time it is
    active, so ``w * inf = inf`` for every ``w >= 0``, including zero.
    """
    if is_inf(cap):
        return INF
    return weight * cap
