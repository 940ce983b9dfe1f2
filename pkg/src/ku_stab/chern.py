"""Chern characters on the quadric threefold Y and the quadric surface.

Characters on Y are stored in the basis ``1, h, h^2, h^3`` with ``h^3 = 2``.
On the quadric surface the basis is ``1, h1, h2, pt`` with ``h1^2 = h2^2 = 0``
and ``h1*h2 = pt``; a hyperplane class restricts as ``h = h1 + h2``.

The Clifford twist multiplies by ``1 - h^2/8``.  Degree-3 entries may be
``None`` when they are not known; any operation that would need them then
propagates ``None``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exact import InputError, format_rat, rat

H_CUBED = Fraction(2)
CLIFFORD_TWIST_H2 = Fraction(-1, 8)


def _opt(x):
    return None if x is None else rat(x)


def _add_opt(*terms):
    if any(t is None for t in terms):
        return None
    return sum(terms, Fraction(0))


@dataclass(frozen=True)
class ChernY:
    ch0: Fraction
    ch1: Fraction
    ch2: Fraction
    ch3: Optional[Fraction] = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "ch0", rat(self.ch0))
        object.__setattr__(self, "ch1", rat(self.ch1))
        object.__setattr__(self, "ch2", rat(self.ch2))
        object.__setattr__(self, "ch3", _opt(self.ch3))

    def __add__(self, other: ChernY) -> ChernY:
        return ChernY(self.ch0 + other.ch0, self.ch1 + other.ch1,
                      self.ch2 + other.ch2, _add_opt(self.ch3, other.ch3))

    def __neg__(self) -> ChernY:
        return self.scale(-1)

    def __sub__(self, other: ChernY) -> ChernY:
        return self + (-other)

    def scale(self, t) -> ChernY:
        t = rat(t)
        return ChernY(t * self.ch0, t * self.ch1, t * self.ch2,
                      None if self.ch3 is None else t * self.ch3)

    def __mul__(self, other: ChernY) -> ChernY:
        a, b = self, other
        ch3 = None
        if a.ch3 is not None and b.ch3 is not None:
            ch3 = a.ch0 * b.ch3 + a.ch1 * b.ch2 + a.ch2 * b.ch1 + a.ch3 * b.ch0
        return ChernY(
            a.ch0 * b.ch0,
            a.ch0 * b.ch1 + a.ch1 * b.ch0,
            a.ch0 * b.ch2 + a.ch1 * b.ch1 + a.ch2 * b.ch0,
            ch3,
        )

    def dual(self) -> ChernY:
        return ChernY(self.ch0, -self.ch1, self.ch2,
                      None if self.ch3 is None else -self.ch3)

    def truncated(self) -> ChernY:
        return ChernY(self.ch0, self.ch1, self.ch2, None)

    def degree(self) -> Fraction:
        """Integral over Y of the top-degree part."""
        if self.ch3 is None:
            raise InputError("degree-3 term unknown")
        return self.ch3 * H_CUBED

    def is_integral(self) -> bool:
        return self.ch0.denominator == 1 and self.ch1.denominator == 1

    def to_json(self) -> dict:
        return {
            "basis": "Y",
            "ch0": format_rat(self.ch0),
            "ch1": format_rat(self.ch1),
            "ch2": format_rat(self.ch2),
            "ch3": None if self.ch3 is None else format_rat(self.ch3),
        }


@dataclass(frozen=True)
class TwistedClass:
    """Image ``(h^3 ch0, h^2 ch1, h ch2)`` of a twisted character in Q^3."""

    v0: Fraction
    v1: Fraction
    v2: Fraction

    def __post_init__(self):
        for name in ("v0", "v1", "v2"):
            object.__setattr__(self, name, rat(getattr(self, name)))

    @classmethod
    def from_twisted(cls, e: ChernY) -> TwistedClass:
        return cls(H_CUBED * e.ch0, H_CUBED * e.ch1, H_CUBED * e.ch2)

    @classmethod
    def from_character(cls, e: ChernY) -> TwistedClass:
        """Twist an ordinary character, then project."""
        return cls.from_twisted(twist_cl0(e))

    def __add__(self, other: TwistedClass) -> TwistedClass:
        return TwistedClass(self.v0 + other.v0, self.v1 + other.v1, self.v2 + other.v2)

    def __neg__(self) -> TwistedClass:
        return self.scale(-1)

    def __sub__(self, other: TwistedClass) -> TwistedClass:
        return self + (-other)

    def scale(self, t) -> TwistedClass:
        t = rat(t)
        return TwistedClass(t * self.v0, t * self.v1, t * self.v2)

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.v0, self.v1, self.v2)


@dataclass(frozen=True)
class ChernSigma:
    rk: Fraction
    b1: Fraction
    b2: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("rk", "b1", "b2", "c"):
            object.__setattr__(self, name, rat(getattr(self, name)))

    def __add__(self, other: ChernSigma) -> ChernSigma:
        return ChernSigma(self.rk + other.rk, self.b1 + other.b1,
                          self.b2 + other.b2, self.c + other.c)

    def __neg__(self) -> ChernSigma:
        return self.scale(-1)

    def __sub__(self, other: ChernSigma) -> ChernSigma:
        return self + (-other)

    def scale(self, t) -> ChernSigma:
        t = rat(t)
        return ChernSigma(t * self.rk, t * self.b1, t * self.b2, t * self.c)

    def __mul__(self, other: ChernSigma) -> ChernSigma:
        a, b = self, other
        return ChernSigma(
            a.rk * b.rk,
            a.rk * b.b1 + a.b1 * b.rk,
            a.rk * b.b2 + a.b2 * b.rk,
            a.rk * b.c + a.c * b.rk + a.b1 * b.b2 + a.b2 * b.b1,
        )

    def dual(self) -> ChernSigma:
        return ChernSigma(self.rk, -self.b1, -self.b2, self.c)

    def ch1_squared(self) -> Fraction:
        return 2 * self.b1 * self.b2

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in (self.rk, self.b1, self.b2, self.c))

    def to_json(self) -> dict:
        return {
            "basis": "Sigma",
            "rk": format_rat(self.rk),
            "b1": format_rat(self.b1),
            "b2": format_rat(self.b2),
            "c": format_rat(self.c),
        }


def line_bundle_sigma(p: int, q: int) -> ChernSigma:
    """ch(O(p*h1 + q*h2)) = 1 + p h1 + q h2 + pq pt."""
    return ChernSigma(1, p, q, p * q)


def line_bundle_y(k) -> ChernY:
    k = rat(k)
    return ChernY(1, k, k * k / 2, k ** 3 / 6)


def twist_cl0(e: ChernY) -> ChernY:
    """Multiply by ``1 - h^2/8``."""
    return e * ChernY(1, 0, CLIFFORD_TWIST_H2, 0)


def untwist_cl0(e: ChernY) -> ChernY:
    return e * ChernY(1, 0, -CLIFFORD_TWIST_H2, 0)


def exp_minus_beta_h(beta) -> ChernY:
    b = rat(beta)
    return ChernY(1, -b, b * b / 2, -b ** 3 / 6)


def beta_twist(e: Union[ChernY, TwistedClass], beta) -> Union[ChernY, TwistedClass]:
    """Multiply by ``exp(-beta h)``, truncated at ``h^3``."""
    b = rat(beta)
    if isinstance(e, TwistedClass):
        # every coordinate carries the same factor h^3 = 2, so the series
        # acts on (v0, v1, v2) exactly as on (ch0, ch1, ch2)
        return TwistedClass(
            e.v0,
            e.v1 - b * e.v0,
            e.v2 - b * e.v1 + b * b / 2 * e.v0,
        )
    return e * exp_minus_beta_h(b)


def discriminant_y(e: ChernY, form: str = "raw") -> Fraction:
    """Bogomolov discriminant of a Clifford module character on Y.

    ``form="raw"`` evaluates ``h ch1^2 - 2 rk (h ch2 - rk/4)`` on the ordinary
    character; ``form="twisted"`` evaluates ``h (ch1^2 - 2 rk ch2)`` on the
    twisted one.  Both give the same number.
    """
    if form == "raw":
        return (H_CUBED * e.ch1 ** 2
                - 2 * e.ch0 * (H_CUBED * e.ch2 - e.ch0 / 4))
    if form == "twisted":
        t = twist_cl0(e)
        return H_CUBED * (t.ch1 ** 2 - 2 * t.ch0 * t.ch2)
    raise InputError(f"unknown discriminant form {form!r}")


def discriminant_twisted(v: TwistedClass) -> Fraction:
    """Same discriminant, read off a twisted class: ``(v1^2 - 2 v0 v2)/2``."""
    return (v.v1 ** 2 - 2 * v.v0 * v.v2) / H_CUBED


def discriminant_sigma(e: ChernSigma) -> Fraction:
    return e.ch1_squared() - 2 * e.rk * (e.c - e.rk / 4)


def restrict_to_sigma(e: ChernY) -> ChernSigma:
    # h|Sigma = h1 + h2 and h^2|Sigma = 2 pt
    return ChernSigma(e.ch0, e.ch1, e.ch1, 2 * e.ch2)


class _PosInf:
    """+infinity slope, ordered above every rational."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "inf"

    __str__ = __repr__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash(math.inf)

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _PosInf()


def format_slope(mu) -> str:
    return "inf" if mu is INF else format_rat(mu)


def slope_h(e: Union[ChernY, TwistedClass]):
    """``ch1 h^2 / (ch0 h^3)``; +infinity on rank zero."""
    if isinstance(e, TwistedClass):
        return INF if e.v0 == 0 else e.v1 / e.v0
    return INF if e.ch0 == 0 else e.ch1 / e.ch0


def chern_from_json(doc: dict) -> Union[ChernY, ChernSigma]:
    if not isinstance(doc, dict):
        raise InputError("Chern document must be a JSON object")
    basis = doc.get("basis", "Y")
    try:
        if basis == "Y":
            ch3 = doc.get("ch3", "0")
            return ChernY(doc["ch0"], doc["ch1"], doc["ch2"],
                          None if ch3 is None else ch3)
        if basis == "Sigma":
            return ChernSigma(doc["rk"], doc["b1"], doc["b2"], doc["c"])
    except KeyError as exc:
        raise InputError(f"Chern document missing key {exc.args[0]!r}") from exc
    raise InputError(f"unknown basis tag {basis!r}")
