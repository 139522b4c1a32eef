"""Exact scalars for parameter values and weights.

Everything in this package computes over ``fractions.Fraction``.  Floats are
rejected at every parsing boundary: breakpoint positions and tie decisions are
rationally defined, and a single rounded comparison could reorder two nearly
coincident crossing points.  Interval endpoints may additionally be +-infinity,
modelled by :class:`ExtendedRational`.

All types here are immutable values; they can be shared freely across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def rational(value: RationalLike) -> Fraction:
    """Coerce an int, a ``"p/q"`` string, or a Fraction to an exact Fraction.

    Only integer and ``p/q`` spellings are accepted; decimal strings and
    floats are refused so no rounding can sneak in.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise ValueError(f"not an exact rational literal: {value!r}")
        return Fraction(text)
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Render as ``p/q``, omitting the denominator when it is 1."""
    return str(value)


class ExtendedRational:
    """A rational extended with two infinities, under a total order.

    ``NEG_INF < every finite value < POS_INF``.  Instances are immutable and
    hashable; finite ones wrap a Fraction.
    """

    __slots__ = ("_sign", "_value")

    def __init__(self, sign: int, value: Fraction | None):
        if sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        if (sign == 0) != (value is not None):
            raise ValueError("finite iff a value is present")
        object.__setattr__(self, "_sign", sign)
        object.__setattr__(self, "_value", value)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("ExtendedRational is immutable")

    @classmethod
    def finite(cls, value: RationalLike) -> "ExtendedRational":
        return cls(0, rational(value))

    @property
    def is_finite(self) -> bool:
        return self._sign == 0

    @property
    def value(self) -> Fraction:
        if self._value is None:
            raise ValueError("infinite endpoint has no finite value")
        return self._value

    def _key(self):
        return (self._sign, self._value if self._value is not None else Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtendedRational):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other: "ExtendedRational") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "ExtendedRational") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "ExtendedRational") -> bool:
        return other < self

    def __ge__(self, other: "ExtendedRational") -> bool:
        return other <= self

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"ExtendedRational({self})"

    def __str__(self) -> str:
        if self._sign < 0:
            return "-inf"
        if self._sign > 0:
            return "inf"
        return str(self._value)


NEG_INF = ExtendedRational(-1, None)
POS_INF = ExtendedRational(1, None)

ExtendedLike = Union[ExtendedRational, RationalLike]


def extended(value: ExtendedLike) -> ExtendedRational:
    """Coerce to :class:`ExtendedRational`; strings may be ``inf``/``-inf``."""
    if isinstance(value, ExtendedRational):
        return value
    if isinstance(value, str):
        text = value.strip()
        if text == "inf":
            return POS_INF
        if text == "-inf":
            return NEG_INF
    return ExtendedRational.finite(value)


def format_extended(value: ExtendedRational) -> str:
    return str(value)


@dataclass(frozen=True)
class ParamInterval:
    """A closed parameter interval, with optionally infinite ends.

    Finite ends are always treated as closed; there is no open/half-open
    variant (half-open inputs are normalized to this form).
    """

    lo: ExtendedRational
    hi: ExtendedRational

    def __post_init__(self):
        if not (self.lo <= self.hi):
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    @classmethod
    def closed(cls, lo: ExtendedLike, hi: ExtendedLike) -> "ParamInterval":
        return cls(extended(lo), extended(hi))

    @property
    def is_proper(self) -> bool:
        return self.lo < self.hi

    @property
    def is_bounded(self) -> bool:
        return self.lo.is_finite and self.hi.is_finite

    def contains(self, lam: Fraction) -> bool:
        point = ExtendedRational.finite(lam)
        return self.lo <= point <= self.hi

    def strictly_inside(self, lam: Fraction) -> bool:
        point = ExtendedRational.finite(lam)
        return self.lo < point < self.hi

    def representative(self) -> Fraction:
        """A deterministic interior point of the interval."""
        return interior_point(self.lo, self.hi)

    def __str__(self) -> str:
        left = "(" if not self.lo.is_finite else "["
        right = ")" if not self.hi.is_finite else "]"
        return f"{left}{self.lo}, {self.hi}{right}"


def midpoint(a: Fraction, b: Fraction) -> Fraction:
    return (a + b) / 2


def interior_point(lo: ExtendedRational, hi: ExtendedRational) -> Fraction:
    """Canonical interior point of ``(lo, hi)``.

    Midpoint when both ends are finite, finite end -+1 when one side is open
    to infinity, and 0 for the whole line.  Used everywhere a solver needs a
    representative parameter value inside a window.
    """
    if not (lo < hi):
        raise ValueError(f"degenerate window: ({lo}, {hi})")
    if lo.is_finite and hi.is_finite:
        return midpoint(lo.value, hi.value)
    if lo.is_finite:
        return lo.value + 1
    if hi.is_finite:
        return hi.value - 1
    return Fraction(0)
