"""Exact scalars: rationals and Gaussian rationals.

Rationals are plain :class:`fractions.Fraction` values.  Gaussian rationals
are pairs ``re + im*i`` with rational parts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rat = Fraction
RatLike = Union[Fraction, int, str]


class InputError(ValueError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


def rat(x: RatLike) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: nothing in this package is allowed to pick up
    rounding error silently.
    """
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        try:
            if "/" in s:
                p, q = s.split("/")
                num, den = int(p), int(q)
                if den == 0:
                    raise InputError(f"zero denominator in {x!r}")
                return Fraction(num, den)
            return Fraction(int(s))
        except ValueError as exc:
            raise InputError(f"not an exact rational: {x!r}") from exc
    raise InputError(f"not an exact rational: {x!r}")


def format_rat(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_arith(a: RatLike, b: RatLike, op: str) -> Fraction:
    a, b = rat(a), rat(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise InputError("division by zero")
        return a / b
    raise InputError(f"unknown operation {op!r}")


def perfect_square(n: int) -> int | None:
    """Return ``s >= 0`` with ``s*s == n``, or None."""
    if n < 0:
        return None
    s = math.isqrt(n)
    return s if s * s == n else None


@dataclass(frozen=True)
class GaussRat:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", rat(self.re))
        object.__setattr__(self, "im", rat(self.im))

    def __add__(self, other: GaussRat) -> GaussRat:
        other = _as_gauss(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> GaussRat:
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other: GaussRat) -> GaussRat:
        return self + (-_as_gauss(other))

    def __rsub__(self, other) -> GaussRat:
        return _as_gauss(other) - self

    def __mul__(self, other) -> GaussRat:
        other = _as_gauss(other)
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> GaussRat:
        return GaussRat(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __str__(self) -> str:
        return f"{format_rat(self.re)} + {format_rat(self.im)}*i"

    def to_json(self) -> dict:
        return {"re": format_rat(self.re), "im": format_rat(self.im)}


I = GaussRat(0, 1)


def _as_gauss(x) -> GaussRat:
    if isinstance(x, GaussRat):
        return x
    return GaussRat(rat(x), 0)
