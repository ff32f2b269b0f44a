"""Value-type layer shared by the trees and the reference oracle.

Two interchangeable backends are supported:

* ``RATIONAL`` -- exact arithmetic.  Values are plain ``int`` where possible
  and :class:`fractions.Fraction` once a scaling step introduces a genuine
  fraction.  Results are never rounded; magnitudes beyond a signed 128-bit
  numerator or an unsigned 64-bit denominator raise ``OverflowError`` instead
  of growing without bound.
* ``FLOAT`` -- 64-bit binary floating point, for benchmarking.

Scaling by a ratio of segment widths is the one non-trivial operation: when a
range operation covers only part of a node's span, its constant is multiplied
by ``covered_width / node_width``.  :class:`Ratio` captures that factor in
lowest terms.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Scalar = Union[int, float, Fraction]

# Declared bounds of the exact representation.  Denominators are products of
# at most a couple dozen segment widths, so these are generous.
_MAX_NUMERATOR = 2**127 - 1
_MAX_DENOMINATOR = 2**64 - 1


class Ratio:
    """A normalized fraction of two segment widths, ``0 < num <= den``."""

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int):
        if den <= 0 or num <= 0:
            raise ValueError(f"ratio widths must be positive, got {num}/{den}")
        g = math.gcd(num, den)
        self.num = num // g
        self.den = den // g

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Ratio)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"Ratio({self.num}, {self.den})"


def ratio(part_width: int, whole_width: int) -> Ratio:
    """Scaling factor for a range operation covering ``part_width`` cells of a
    ``whole_width``-cell node span."""
    if part_width <= 0 or whole_width <= 0:
        raise ValueError(
            f"widths must be positive, got {part_width}/{whole_width}"
        )
    if part_width > whole_width:
        raise ValueError(
            f"covered width {part_width} exceeds node width {whole_width}"
        )
    return Ratio(part_width, whole_width)


def _checked(num: int, den: int) -> Scalar:
    """Reduce num/den, enforce representation bounds, prefer int."""
    if den < 0:
        num, den = -num, -den
    g = math.gcd(num, den)
    if g > 1:
        num //= g
        den //= g
    if den == 1:
        if num > _MAX_NUMERATOR or -num > _MAX_NUMERATOR:
            raise OverflowError(f"exact numerator out of range: {num}")
        return num
    if num > _MAX_NUMERATOR or -num > _MAX_NUMERATOR:
        raise OverflowError(f"exact numerator out of range: {num}")
    if den > _MAX_DENOMINATOR:
        raise OverflowError(f"exact denominator out of range: {den}")
    return Fraction(num, den)


def scale(v: Scalar, r: Ratio) -> Scalar:
    """Return ``v * (r.num / r.den)`` in the backend of ``v``.

    Exact for int/Fraction inputs; ordinary float multiplication for floats.
    """
    if isinstance(v, float):
        return v * (r.num / r.den)
    if isinstance(v, int):
        return _checked(v * r.num, r.den)
    if isinstance(v, Fraction):
        return _checked(v.numerator * r.num, v.denominator * r.den)
    raise TypeError(f"cannot scale value of type {type(v).__name__}")


class _RationalBackend:
    """Exact backend: ints, promoted to Fraction by fractional scalings."""

    name = "rational"
    zero: Scalar = 0
    exact = True

    @staticmethod
    def make_store(size: int) -> list:
        return [0] * size

    @staticmethod
    def coerce(c) -> Scalar:
        if isinstance(c, bool) or not isinstance(c, (int, Fraction)):
            raise TypeError(
                f"exact backend takes int or Fraction values, got {type(c).__name__}"
            )
        if isinstance(c, Fraction):
            return _checked(c.numerator, c.denominator)
        return _checked(c, 1)

    @staticmethod
    def mul_ratio(v: Scalar, num: int, den: int) -> Scalar:
        if isinstance(v, int):
            return _checked(v * num, den)
        return _checked(v.numerator * num, v.denominator * den)

    @staticmethod
    def allclose(a: Scalar, b: Scalar) -> bool:
        return a == b


class _FloatBackend:
    """64-bit float backend; scaling rounds like any float multiply."""

    name = "float"
    zero = 0.0
    exact = False

    @staticmethod
    def make_store(size: int):
        from array import array

        return array("d", bytes(8 * size))

    @staticmethod
    def coerce(c) -> float:
        return float(c)

    @staticmethod
    def mul_ratio(v: float, num: int, den: int) -> float:
        return v * (num / den)

    @staticmethod
    def allclose(a: float, b: float, abs_tol: float = 1e-6, rel_tol: float = 1e-9) -> bool:
        return abs(a - b) <= max(abs_tol, rel_tol * abs(b))


RATIONAL = _RationalBackend()
FLOAT = _FloatBackend()

_BACKENDS = {"rational": RATIONAL, "float": FLOAT}


def get_backend(name):
    """Resolve a backend by name; backend objects pass through unchanged."""
    if isinstance(name, str):
        try:
            return _BACKENDS[name]
        except KeyError:
            raise ValueError(f"unknown backend {name!r}") from None
    if name is RATIONAL or name is FLOAT:
        return name
    raise ValueError(f"unknown backend {name!r}")
