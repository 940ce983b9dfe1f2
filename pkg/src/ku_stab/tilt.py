"""Numerical side of the double-tilt weak stability conditions on (Y, Cl0).

Everything here is exact.  The parameter alpha only ever enters through
alpha^2, so :class:`TiltParams` stores ``alpha_sq``.

Heart membership is certified only at the level of slopes and charge signs:
a torsion-free slope-stable sheaf E lies in the first tilt iff
``mu_h(E) > beta``, and F[1] lies there iff ``mu_h(F) <= beta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .chern import (
    INF,
    ChernY,
    TwistedClass,
    beta_twist,
    discriminant_twisted,
    format_slope,
    slope_h,
)
from .checks import Check, Report
from .exact import GaussRat, InputError, I, format_rat, rat

BETA_KU = Fraction(-5, 4)
ALPHA_SQ_WINDOW = (Fraction(0), Fraction(1, 16))
BETA_WINDOW = (Fraction(-3, 2), Fraction(-1))


@dataclass(frozen=True)
class TiltParams:
    alpha_sq: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha_sq", rat(self.alpha_sq))
        object.__setattr__(self, "beta", rat(self.beta))
        if self.alpha_sq <= 0:
            raise InputError("alpha_sq must be strictly positive")


@dataclass(frozen=True)
class ExceptionalClass:
    name: str
    twisted_ch: TwistedClass
    truncated: tuple[Fraction, Fraction, Fraction]


# Truncated twisted characters ch_{Cl0,<=2} = a + b h + c h^2.
_TABLE = [
    ("Cl0", (4, -4, 2)),
    ("Cl1", (4, -4, 2)),
    ("Ra", (4, -2, Fraction(1, 2))),
    ("Rb", (4, -2, Fraction(1, 2))),
    ("Cl1(-h)", (4, -8, 8)),
    ("Cl0(-h)", (4, -8, 8)),
    ("Ra*Cl1(-h)", (4, -6, Fraction(9, 2))),
    ("Rb*Cl1(-h)", (4, -6, Fraction(9, 2))),
]

# Serre dual shifted by [-2] of each first-listed object is the [1]-shift of
# one of the last four sheaves.
SERRE_PARTNER = {
    "Cl0": "Cl1(-h)",
    "Cl1": "Cl0(-h)",
    "Ra": "Ra*Cl1(-h)",
    "Rb": "Rb*Cl1(-h)",
}
FIRST_FOUR = ("Cl0", "Cl1", "Ra", "Rb")
LAST_FOUR = ("Cl1(-h)", "Cl0(-h)", "Ra*Cl1(-h)", "Rb*Cl1(-h)")


def exceptional_table() -> list[ExceptionalClass]:
    out = []
    for name, (a, b, c) in _TABLE:
        trunc = (rat(a), rat(b), rat(c))
        twisted = TwistedClass.from_twisted(ChernY(*trunc, None))
        out.append(ExceptionalClass(name, twisted, trunc))
    return out


def exceptional_class(name: str) -> TwistedClass:
    for e in exceptional_table():
        if e.name == name:
            return e.twisted_ch
    raise InputError(f"unknown exceptional object {name!r}")


def z_charge(alpha_sq, beta, v: TwistedClass) -> GaussRat:
    """``alpha^2/2 * h^3 ch0^b - h ch2^b + i h^2 ch1^b`` without validation."""
    a2 = rat(alpha_sq)
    tb = beta_twist(v, beta)
    return GaussRat(a2 / 2 * tb.v0 - tb.v2, tb.v1)


def z_first(p: TiltParams, v: TwistedClass) -> GaussRat:
    return z_charge(p.alpha_sq, p.beta, v)


def z_second(p: TiltParams, v: TwistedClass) -> GaussRat:
    return GaussRat(0, -1) * z_first(p, v)


def slope_of_charge(z: GaussRat):
    return INF if z.im == 0 else -z.re / z.im


def tilt_slope(p: TiltParams, v: TwistedClass, which: str = "first"):
    if which == "first":
        return slope_of_charge(z_first(p, v))
    if which == "second":
        return slope_of_charge(z_second(p, v))
    raise InputError(f"unknown tilt {which!r}")


def verify_heart_window(p: TiltParams) -> Report:
    """Slope and charge-sign conditions placing the exceptional objects.

    Part (a): first-tilt membership of the eight objects at ``p.beta``.
    Part (b): the double-tilt orderings and nonvanishing at ``p``.  Any
    ``beta`` is accepted; whether the window conclusions persist away
    from ``beta = -5/4`` is only reported, never assumed.
    """
    rep = Report(f"heart window at alpha^2={format_rat(p.alpha_sq)}, beta={format_rat(p.beta)}")
    lo, hi = BETA_WINDOW
    rep.notes.append(
        "beta in [-3/2, -1): " + ("yes" if lo <= p.beta < hi else "no"))
    a_lo, a_hi = ALPHA_SQ_WINDOW
    rep.notes.append(
        "beta = -5/4 and 0 < alpha^2 < 1/16: "
        + ("yes" if p.beta == BETA_KU and a_lo < p.alpha_sq < a_hi else "no"))

    cls = {e.name: e.twisted_ch for e in exceptional_table()}
    mu = {n: slope_h(v) for n, v in cls.items()}

    rep.add("mu_h chain -2 < -3/2",
            mu["Cl1(-h)"] == mu["Cl0(-h)"] == -2
            and mu["Ra*Cl1(-h)"] == mu["Rb*Cl1(-h)"] == Fraction(-3, 2),
            f"mu_h(Cl1(-h))={format_slope(mu['Cl1(-h)'])}, "
            f"mu_h(Ra*Cl1(-h))={format_slope(mu['Ra*Cl1(-h)'])}")
    rep.add("mu_h chain -1 < -1/2",
            mu["Cl0"] == mu["Cl1"] == -1 and mu["Ra"] == mu["Rb"] == Fraction(-1, 2),
            f"mu_h(Cl0)={format_slope(mu['Cl0'])}, mu_h(Ra)={format_slope(mu['Ra'])}")
    for n in FIRST_FOUR:
        rep.add(f"{n} in Coh^beta (mu_h > beta)", mu[n] > p.beta,
                f"mu_h={format_slope(mu[n])} vs beta={format_rat(p.beta)}")
    for n in LAST_FOUR:
        rep.add(f"{n}[1] in Coh^beta (mu_h <= beta)", mu[n] <= p.beta,
                f"mu_h={format_slope(mu[n])} vs beta={format_rat(p.beta)}")

    # Serre duals S(E)[-2] = F[1]: class is -[F]
    serre = {n: -cls[SERRE_PARTNER[n]] for n in FIRST_FOUR}
    m = {n: tilt_slope(p, cls[n]) for n in FIRST_FOUR}
    ms = {n: tilt_slope(p, serre[n]) for n in FIRST_FOUR}

    def fmt(d):
        return ", ".join(f"{k}={format_slope(v)}" for k, v in d.items())

    rep.add("mu(S Cl0[-2]) = mu(S Cl1[-2])", ms["Cl0"] == ms["Cl1"], fmt(ms))
    rep.add("mu(S Ra[-2]) = mu(S Rb[-2])", ms["Ra"] == ms["Rb"], fmt(ms))
    rep.add("mu(S Cl0[-2]) < mu(S Ra[-2])", ms["Cl0"] < ms["Ra"], fmt(ms))
    rep.add("mu(S Ra[-2]) < 0", ms["Ra"] < 0, fmt(ms))
    rep.add("0 < mu(Cl0)", 0 < m["Cl0"], fmt(m))
    rep.add("mu(Cl0) = mu(Cl1)", m["Cl0"] == m["Cl1"], fmt(m))
    rep.add("mu(Cl0) < mu(Ra)", m["Cl0"] < m["Ra"], fmt(m))
    rep.add("mu(Ra) = mu(Rb)", m["Ra"] == m["Rb"], fmt(m))
    for n in FIRST_FOUR:
        z0 = z_second(p, cls[n])
        rep.add(f"Z0({n}) != 0", not z0.is_zero(), str(z0))
    return rep


# ---------------------------------------------------------------------------
# Charge on the A1+A1 sublattice of the Kuznetsov component.

@dataclass(frozen=True)
class MukaiVector:
    a: int
    b: int

    def __post_init__(self):
        for name in ("a", "b"):
            x = getattr(self, name)
            if isinstance(x, bool) or not isinstance(x, int):
                raise InputError(f"Mukai coordinates must be integers, got {x!r}")

    @property
    def primitive(self) -> bool:
        return math.gcd(self.a, self.b) == 1

    def square(self) -> int:
        return 2 * self.a * self.a + 2 * self.b * self.b

    def __str__(self) -> str:
        return f"({self.a},{self.b})"

    @classmethod
    def parse(cls, s: str) -> MukaiVector:
        try:
            a, b = (int(t) for t in s.split(","))
        except ValueError as exc:
            raise InputError(f"expected 'a,b' integers, got {s!r}") from exc
        return cls(a, b)


# The printed truncated characters of Psi(lambda_1), Psi(lambda_2).  They only
# reproduce the printed charges when read as ordinary characters and passed
# through the Clifford twist first.
PSI_LAMBDA1 = ChernY(8, 2, Fraction(13, 6), None)
PSI_LAMBDA2 = ChernY(-8, -4, Fraction(-1, 6), None)


def psi_class(which: int) -> TwistedClass:
    ch = {1: PSI_LAMBDA1, 2: PSI_LAMBDA2}[which]
    return TwistedClass.from_character(ch)


def ku_charge_formula(alpha_sq, v: MukaiVector) -> GaussRat:
    a2 = rat(alpha_sq)
    z1 = GaussRat(24, -8 * a2 + Fraction(119, 6))
    z2 = GaussRat(-28, 8 * a2 - Fraction(125, 6))
    return v.a * z1 + v.b * z2


def ku_charge_pipeline(alpha_sq, v: MukaiVector) -> GaussRat:
    """Z0 at beta=-5/4 applied to the twisted Psi-images."""
    a2 = rat(alpha_sq)
    cls = psi_class(1).scale(v.a) + psi_class(2).scale(v.b)
    z = z_charge(a2, BETA_KU, cls)
    return GaussRat(0, -1) * z


def ku_charge(alpha_sq, v: MukaiVector) -> GaussRat:
    """``a Z(lambda_1) + b Z(lambda_2)``.

    ``alpha_sq = 0`` is accepted as a plain formula evaluation.
    """
    a2 = rat(alpha_sq)
    if a2 < 0:
        raise InputError("alpha_sq must be nonnegative")
    z = ku_charge_formula(a2, v)
    zp = ku_charge_pipeline(a2, v)
    if z != zp:
        raise AssertionError(f"charge mismatch: formula {z} vs pipeline {zp}")
    return z


def independence_determinant(alpha_sq) -> Fraction:
    """det [[Re Z1, Im Z1], [Re Z2, Im Z2]]."""
    z1 = ku_charge(alpha_sq, MukaiVector(1, 0))
    z2 = ku_charge(alpha_sq, MukaiVector(0, 1))
    return z1.re * z2.im - z1.im * z2.re


@dataclass(frozen=True)
class WallSolution:
    destabilizer: MukaiVector
    alpha_sq_root: Optional[Fraction]
    in_window: bool

    def to_json(self) -> dict:
        return {
            "destabilizer": [self.destabilizer.a, self.destabilizer.b],
            "alpha_sq_root": None if self.alpha_sq_root is None else format_rat(self.alpha_sq_root),
            "in_window": self.in_window,
        }


def parallel_coefficients(v: MukaiVector, w: MukaiVector) -> tuple[Fraction, Fraction]:
    """``(A, B)`` with ``Im(conj(Z(w)) Z(v)) = A + B alpha^2``."""
    def cross(a2):
        zv = ku_charge_formula(a2, v)
        zw = ku_charge_formula(a2, w)
        return (zw.conjugate() * zv).im
    c0 = cross(Fraction(0))
    c1 = cross(Fraction(1))
    return c0, c1 - c0


def wall_scan(v: MukaiVector, bound: int) -> list[WallSolution]:
    if not v.primitive:
        raise InputError(f"v = {v} is not primitive")
    if bound < 1:
        raise InputError("bound must be positive")
    lo, hi = ALPHA_SQ_WINDOW
    out = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if a * v.b - b * v.a == 0:
                continue  # proportional to v, or zero
            w = MukaiVector(a, b)
            c0, c1 = parallel_coefficients(v, w)
            root = None if c1 == 0 else -c0 / c1
            out.append(WallSolution(w, root, root is not None and lo < root < hi))
    out.sort(key=lambda s: (s.alpha_sq_root is None,
                            s.alpha_sq_root if s.alpha_sq_root is not None else 0,
                            s.destabilizer.a, s.destabilizer.b))
    return out


def discriminants_vanish() -> dict[str, Fraction]:
    return {e.name: discriminant_twisted(e.twisted_ch) for e in exceptional_table()}


__all__ = [
    "BETA_KU", "TiltParams", "ExceptionalClass", "exceptional_table",
    "exceptional_class", "z_first", "z_second", "z_charge", "tilt_slope",
    "verify_heart_window", "MukaiVector", "ku_charge", "ku_charge_formula",
    "ku_charge_pipeline", "independence_determinant", "wall_scan",
    "WallSolution", "Report", "Check", "I",
]
