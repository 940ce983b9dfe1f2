"""Euler form for Cl0-modules on the quadric surface and its obstructions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chern import ChernSigma, discriminant_sigma, line_bundle_sigma
from .exact import InputError, rat
from .checks import Report

# Underlying sheaf of Cl0 on Sigma: O + O(-1,-1) + O(-2,-1) + O(-1,-2)
CL0_SUMMANDS = ((0, 0), (-1, -1), (-2, -1), (-1, -2))

BASIS_LABELS = ("Cl0", "Cl0(-h1)", "Cl0(-h2)", "Cl0(-h)")
BASIS_TWISTS = ((0, 0), (-1, 0), (0, -1), (-1, -1))

HARDCODED_GRAM = (
    (1, 1, 1, 5),
    (1, 1, -3, 1),
    (1, -3, 1, 1),
    (5, 1, 1, 1),
)


def cl0_character() -> ChernSigma:
    total = ChernSigma(0, 0, 0, 0)
    for p, q in CL0_SUMMANDS:
        total = total + line_bundle_sigma(p, q)
    return total


def cl0_twist(p: int, q: int) -> ChernSigma:
    """ch(Cl0(p h1 + q h2))."""
    return cl0_character() * line_bundle_sigma(p, q)


def euler_pairing_sigma(e: ChernSigma, f: ChernSigma) -> Fraction:
    """Integral of ch(E)^dual * ch(F) * (1/4 - pt/16)."""
    x = e.dual() * f
    return x.c / 4 - x.rk / 16


def euler_self_pairing(e: ChernSigma) -> Fraction:
    # -rk^2/16 + (2 rk ch2 - ch1^2)/4
    return -e.rk ** 2 / 16 + (2 * e.rk * e.c - e.ch1_squared()) / 4


def sheaf_euler_characteristic(f: ChernSigma) -> Fraction:
    """Plain HRR on the quadric surface: td = 1 + h1 + h2 + pt."""
    return f.rk + f.b1 + f.b2 + f.c


def chi_by_adjunction(d1: tuple[int, int], d2: tuple[int, int]) -> Fraction:
    """chi(Cl0(D1), Cl0(D2)) as chi(Sigma, Cl0(D2 - D1)), summed over line bundles."""
    dp, dq = d2[0] - d1[0], d2[1] - d1[1]
    return sum((Fraction((p + dp + 1) * (q + dq + 1)) for p, q in CL0_SUMMANDS),
               Fraction(0))


@dataclass(frozen=True)
class EulerMatrix:
    entries: tuple[tuple[Fraction, ...], ...]
    basis_labels: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def determinant(self) -> Fraction:
        return det_exact([list(r) for r in self.entries])

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.entries[i][j] == self.entries[j][i]
                   for i in range(n) for j in range(n))

    def as_int_rows(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.entries]


def det_exact(m: list[list]) -> Fraction:
    """Fraction-valued Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    if any(len(r) != n for r in a):
        raise InputError("determinant of a non-square matrix")
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for k in range(col, n):
                    a[r][k] -= f * a[col][k]
    return det


def basis_gram() -> EulerMatrix:
    chars = [cl0_twist(p, q) for p, q in BASIS_TWISTS]
    rows = tuple(tuple(euler_pairing_sigma(e, f) for f in chars) for e in chars)
    hard = tuple(tuple(Fraction(x) for x in r) for r in HARDCODED_GRAM)
    if rows != hard:
        raise AssertionError("computed Gram disagrees with the stored table")
    return EulerMatrix(rows, BASIS_LABELS)


def rank_divisibility_check(e: ChernSigma) -> bool:
    if e.rk.denominator != 1:
        raise InputError(f"rank {e.rk} is not an integer")
    return e.rk.numerator % 4 == 0


def chi_bound_predicate(chi_self) -> bool:
    return rat(chi_self) <= 2


R_A_RESTRICTED = (4, -2, -2)  # rk, b1, b2 of R_a on Sigma; c' is left free


def pairing_with_ra(e: ChernSigma, c_prime) -> Fraction:
    return euler_pairing_sigma(e, ChernSigma(*R_A_RESTRICTED, rat(c_prime)))


def rank4_chi2_obstruction(search_bound: int) -> Report:
    """Every rank-4 integer class with chi(E,E) = 2 is ruled out by parity.

    chi(E, R_a|Sigma) = c + c' - 1 + (b1 + b2)/2, so the fractional part does
    not depend on c' and a single exact evaluation covers every integer c'.
    """
    if search_bound < 1:
        raise InputError("search bound must be positive")
    n = search_bound
    r = np.arange(-n, n + 1, dtype=np.int64)
    b1, b2, c = np.meshgrid(r, r, r, indexing="ij")
    hits = (8 * c - 2 * b1 * b2) == 12
    idx = np.argwhere(hits)
    rep = Report(f"rank 4, chi = 2 obstruction, |b1|,|b2|,|c| <= {n}")
    counter = []
    for i, j, k in idx:
        e = ChernSigma(4, int(r[i]), int(r[j]), int(r[k]))
        chi = euler_self_pairing(e)
        parity_ok = (int(e.b1) - int(e.b2)) % 2 == 1
        frac = [pairing_with_ra(e, cp) % 1 for cp in (0, 1)]
        half = all(f == Fraction(1, 2) for f in frac)
        if chi != 2 or not (parity_ok and half):
            counter.append((int(e.b1), int(e.b2), int(e.c)))
    rep.add("chi = 2 solutions found", True, f"{len(idx)} classes")
    rep.add("no counterexamples", not counter,
            "none" if not counter else f"e.g. {counter[:5]}")
    rep.notes.append(f"solutions={len(idx)}")
    return rep


def bogomolov_from_chi_bound(bound: int, rk: int = 4) -> Report:
    """Exhaustive check that the self-pairing bound forces Delta >= 0.

    Classes with non-integral chi(E,E) are skipped: genuine modules have an
    integral Euler form.  Everything is done on integers scaled by 16.
    """
    if rk <= 0 or rk % 4:
        raise InputError("rank must be a positive multiple of 4")
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    b1, b2, c = np.meshgrid(r, r, r, indexing="ij")
    chi16 = 8 * rk * c - 8 * b1 * b2 - rk * rk          # 16 chi
    delta4 = 8 * b1 * b2 - 8 * rk * c + 2 * rk * rk      # 4 Delta
    identity_ok = bool(np.all(delta4 == rk * rk - chi16))
    integral = chi16 % 16 == 0
    allowed = integral & (chi16 <= 32)
    if rk == 4:
        allowed &= chi16 != 32
    bad = allowed & (delta4 < 0)
    rep = Report(f"Bogomolov from chi bound, rk={rk}, bound={bound}")
    rep.add("1/4 Delta = rk^2/16 - chi(E,E) on every class", identity_ok,
            f"{b1.size} classes")
    rep.add("Delta >= 0 on admissible classes", not bad.any(),
            f"{int(allowed.sum())} admissible, {int(bad.sum())} violations")
    # cross-check the integer formulas with the exact pairing on a sample
    flat = [(int(x), int(y), int(z)) for x, y, z in
            zip(b1.ravel()[::997], b2.ravel()[::997], c.ravel()[::997])]
    sample_ok = True
    for x, y, z in flat:
        e = ChernSigma(rk, x, y, z)
        chi = euler_self_pairing(e)
        if chi != euler_pairing_sigma(e, e) or discriminant_sigma(e) / 4 != Fraction(rk * rk, 16) - chi:
            sample_ok = False
            break
    rep.add("integer formulas match exact pairing", sample_ok, f"{len(flat)} sampled")
    return rep
