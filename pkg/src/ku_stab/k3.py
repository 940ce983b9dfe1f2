"""Associated K3 criteria and period-divisor bookkeeping.

The criteria answer questions about whatever lattice they are handed.  When
that is only a finite-rank algebraic sublattice, a "yes" is a genuine witness
in the full lattice, but a negative answer says nothing beyond the sublattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import InputError, rat
from .lattice import (
    NO_CERTIFIED,
    NONE_FOUND,
    YES,
    EnumerationLimit,
    IntegralLattice,
    SearchResult,
    definiteness,
    enumerate_square,
    hyperbolic_plane_exists,
    integer_kernel,
    isotropic_exists,
)


@dataclass(frozen=True)
class PeriodDivisorLabel:
    d: int
    status: str
    components: tuple[str, ...]

    def to_json(self) -> dict:
        return {"d": self.d, "status": self.status, "components": list(self.components)}


def d_label(d: int) -> PeriodDivisorLabel:
    if d < 1:
        raise InputError("d must be a positive integer")
    r = d % 8
    if r in (0, 4):
        return PeriodDivisorLabel(d, "single", (f"D_{d}",))
    if r == 2:
        return PeriodDivisorLabel(d, "split", (f"D'_{d}", f"D''_{d}"))
    return PeriodDivisorLabel(d, "invalid", ())


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise InputError("can only factor positive integers")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def star_star_prime(d: int) -> tuple[bool, dict[int, int]]:
    """Every prime 3 mod 4 divides d to an even power."""
    f = factorize(d)
    ok = all(e % 2 == 0 for p, e in f.items() if p % 4 == 3)
    return ok, f


def twisted_k3_criterion(hodge: IntegralLattice, bound: int) -> SearchResult:
    """Nonzero isotropic class in the given algebraic lattice."""
    return isotropic_exists(hodge, bound)


def untwisted_k3_criterion(hodge: IntegralLattice, bound: int) -> SearchResult:
    """Copy of U inside the given algebraic lattice."""
    return hyperbolic_plane_exists(hodge, bound)


@dataclass(frozen=True)
class EtaVector:
    re: tuple[Fraction, ...]
    im: tuple[Fraction, ...]
    lattice: IntegralLattice

    def __post_init__(self):
        n = self.lattice.rank
        if len(self.re) != n or len(self.im) != n:
            raise InputError(f"eta components must have length {n}")
        object.__setattr__(self, "re", tuple(rat(x) for x in self.re))
        object.__setattr__(self, "im", tuple(rat(x) for x in self.im))


def _qpair(l: IntegralLattice, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    g = l.gram
    return sum((u[i] * g[i][j] * v[j] for i in range(len(u)) if u[i]
                for j in range(len(v)) if v[j]), Fraction(0))


def _gram2(eta: EtaVector) -> tuple[Fraction, Fraction, Fraction]:
    l = eta.lattice
    return (_qpair(l, eta.re, eta.re), _qpair(l, eta.re, eta.im), _qpair(l, eta.im, eta.im))


def in_P(eta: EtaVector) -> bool:
    a, b, c = _gram2(eta)
    # leading minors positive; this already forces re, im independent
    return a > 0 and a * c - b * b > 0


@dataclass(frozen=True)
class P0Answer:
    status: str  # "yes", "no", "inconclusive"
    certified: bool
    witness: tuple[int, ...] | None
    note: str

    def to_json(self) -> dict:
        return {"status": self.status, "certified": self.certified,
                "witness": None if self.witness is None else list(self.witness),
                "note": self.note}


def _integral_row(v: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in v:
        den = den * x.denominator // _gcd(den, x.denominator)
    return [int(x * den) for x in v]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def in_P0(eta: EtaVector, bound: int) -> P0Answer:
    """eta in P and no (-2)-class orthogonal to both re and im.

    The (-2)-classes orthogonal to eta live in the saturated complement of
    span(re, im).  Since span(re, im) is a positive 2-plane, a positive
    definite complement has no such classes at all, a negative definite one is
    enumerated exhaustively, and an indefinite one is searched in a box.
    """
    if not in_P(eta):
        return P0Answer("no", True, None, "eta not in P")
    l = eta.lattice
    rows = [l.apply(_integral_row(eta.re)), l.apply(_integral_row(eta.im))]
    basis = integer_kernel(rows, l.rank)
    if not basis:
        return P0Answer("yes", True, None, "orthogonal complement is zero")
    sub = l.restrict(basis)
    kind = definiteness(sub)
    if kind == "positive":
        return P0Answer("yes", True, None, "complement positive definite")
    if kind == "degenerate":
        # drop the radical: (-2)-vectors modulo the radical are what matter,
        # but we do not model that quotient here
        return P0Answer("inconclusive", False, None, "degenerate complement")
    try:
        en = enumerate_square(sub, -2, bound)
    except EnumerationLimit as exc:
        return P0Answer("inconclusive", False, None, str(exc))
    if en.vectors:
        coords = en.vectors[0]
        amb = tuple(sum(c * b[k] for c, b in zip(coords, basis)) for k in range(l.rank))
        return P0Answer("no", True, amb, "(-2)-class orthogonal to eta")
    if en.exhaustive:
        return P0Answer("yes", True, None, "complement definite, enumeration complete")
    return P0Answer("inconclusive", False, None, en.note)


STATUS_WORDS = (YES, NO_CERTIFIED, NONE_FOUND)
