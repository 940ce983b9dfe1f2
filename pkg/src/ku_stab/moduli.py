"""Numerical invariants of moduli spaces with Mukai vector a*lambda1 + b*lambda2."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .exact import InputError
from .lattice import (
    MUKAI_LAMBDA1,
    MUKAI_LAMBDA2,
    IntegralLattice,
    discriminant_order,
    divisibility_in_sublattice,
    mukai24_default,
    mukai_vector_coords,
    orthogonal_complement,
    quotient_by_isotropic,
)
from .tilt import MukaiVector

NONEXISTENT = None

EXAMPLE_LABELS = {
    1: "double EPW sextic",
    2: "EPW cube",
    5: "12-fold (point projections)",
}
UNKNOWN_LABEL = "new family (conjecturally unknown)"
# For a^2 + b^2 = 1 two period-compatible candidates remain; both are listed.
EPW_CANDIDATES = ("double EPW sextic Y~_A", "dual double EPW sextic Y~_(A-perp)")


def moduli_dimension(square: int) -> Optional[int]:
    """(v,v) + 2, or None when the moduli space is empty."""
    if square < -2:
        return NONEXISTENT
    return square + 2


def _require_coprime(v: MukaiVector) -> int:
    if not v.primitive:
        raise InputError(f"{v} is not primitive (gcd(a,b) != 1)")
    return v.a * v.a + v.b * v.b


@dataclass
class ModuliReport:
    v: MukaiVector
    dim: int
    degree: int
    divisibility: int
    polarization: MukaiVector
    involution_witness: Optional[int]
    example_label: Optional[str]
    candidates: tuple[str, ...] = ()
    lattice_data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "v": [self.v.a, self.v.b],
            "dim": self.dim,
            "degree": self.degree,
            "divisibility": self.divisibility,
            "polarization": [self.polarization.a, self.polarization.b],
            "involution_witness": self.involution_witness,
            "example_label": self.example_label,
            "candidates": list(self.candidates),
            "lattice_data": self.lattice_data,
            "ambient": "Mukai24-default (E8(-1)^2 + U^4, implementer convention)",
        }


def ambient_divisibility(v: MukaiVector) -> int:
    """Divisibility of h = b*lambda1 - a*lambda2 inside v^perp of Mukai24-default."""
    m = mukai24_default()
    comp = orthogonal_complement(m, [mukai_vector_coords(v.a, v.b)])
    h = mukai_vector_coords(v.b, -v.a)
    return divisibility_in_sublattice(m, h, comp.basis)


@lru_cache(maxsize=None)
def _primitive_part_order() -> int:
    m = mukai24_default()
    return discriminant_order(orthogonal_complement(m, [MUKAI_LAMBDA1, MUKAI_LAMBDA2]).lattice)


def family_invariants(v: MukaiVector, lattice_data: bool = True) -> ModuliReport:
    m = _require_coprime(v)
    amb = mukai24_default()
    h = mukai_vector_coords(v.b, -v.a)
    degree = amb.square(h)
    closed = m
    computed = ambient_divisibility(v)
    if closed != computed:
        raise AssertionError(
            f"divisibility mismatch for {v}: closed form {closed}, lattice {computed}"
            " (check the ambient embedding)")
    data = {}
    if lattice_data:
        vperp = orthogonal_complement(amb, [mukai_vector_coords(v.a, v.b)]).lattice
        prim = _primitive_part_order()
        disc_h = degree
        disc_h2 = discriminant_order(vperp)
        k_sq, rem = divmod(prim * disc_h, disc_h2)
        k = math.isqrt(k_sq)
        data = {
            "disc_order_primitive": prim,
            "disc_order_Zh": disc_h,
            "disc_order_H2": disc_h2,
            "index_k": k if rem == 0 and k * k == k_sq else None,
        }
    label = EXAMPLE_LABELS.get(m, UNKNOWN_LABEL)
    return ModuliReport(
        v=v,
        dim=moduli_dimension(2 * m),
        degree=degree,
        divisibility=computed,
        polarization=MukaiVector(v.b, -v.a),
        involution_witness=involution_exists(v),
        example_label=label,
        candidates=EPW_CANDIDATES if m == 1 else (),
        lattice_data=data,
    )


def involution_exists(v: MukaiVector) -> int:
    """t with t^2 = -1 mod a^2 + b^2, namely t = b / a."""
    m = _require_coprime(v)
    if m == 1:
        return 0
    t = (pow(v.a, -1, m) * v.b) % m
    if (t * t + 1) % m:
        raise AssertionError(f"witness {t} fails for {v}")
    return t


@dataclass(frozen=True)
class H2Structure:
    kind: str  # "perp" or "quotient"
    lattice: IntegralLattice
    basis: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "rank": self.lattice.rank,
                "gram": [list(r) for r in self.lattice.gram]}


def h2_structure_coords(ambient: IntegralLattice, v: Sequence[int]) -> H2Structure:
    sq = ambient.square(v)
    if sq < 0:
        raise InputError(f"(v,v) = {sq} < 0")
    comp = orthogonal_complement(ambient, [v])
    if sq > 0:
        return H2Structure("perp", comp.lattice, comp.basis)
    # express v in the complement basis; it is a primitive vector there
    sub = comp.lattice
    coords = _solve_in_basis(comp.basis, list(v))
    g = math.gcd(*coords)
    coords = [c // g for c in coords]
    q = quotient_by_isotropic(sub, coords)
    return H2Structure("quotient", q, comp.basis)


def _solve_in_basis(basis: Sequence[Sequence[int]], v: list[int]) -> list[int]:
    from fractions import Fraction
    n, k = len(v), len(basis)
    # least-effort exact solve: Gaussian elimination on the k unknowns
    a = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    row = 0
    pivots = []
    for col in range(k):
        p = next((r for r in range(row, n) if a[r][col] != 0), None)
        if p is None:
            continue
        a[row], a[p] = a[p], a[row]
        a[row] = [x / a[row][col] for x in a[row]]
        for r in range(n):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
    sol = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        sol[col] = a[r][k]
    if any(x.denominator != 1 for x in sol):
        raise InputError("vector is not in the sublattice")
    return [int(x) for x in sol]


def h2_structure(v: MukaiVector) -> H2Structure:
    return h2_structure_coords(mukai24_default(), mukai_vector_coords(v.a, v.b))


def grid(max_norm: int) -> list[ModuliReport]:
    """All primitive (a, b) with a >= 0 and a^2 + b^2 <= max_norm, up to sign."""
    out = []
    r = math.isqrt(max_norm)
    for a in range(0, r + 1):
        for b in range(-r, r + 1):
            if a == 0 and b <= 0:
                continue
            if a * a + b * b > max_norm or math.gcd(a, b) != 1:
                continue
            out.append(family_invariants(MukaiVector(a, b), lattice_data=False))
    return out
