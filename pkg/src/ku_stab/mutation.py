"""Mutations of exceptional collections on numerical K-theory.

Convention (standard, stated here because nothing else fixes it):

    L_E F = F - chi(E, F) E        R_E F = F - chi(F, E) E

A script token ``Lp`` replaces the adjacent pair (E_p, E_{p+1}) by
(L_{E_p} E_{p+1}, E_p); ``Rp`` replaces it by (E_{p+1}, R_{E_{p+1}} E_p).
A suffix ``[k]`` applies the shift [k] to the new class, i.e. multiplies
it by (-1)^k.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .chern import ChernY, line_bundle_y
from .exact import InputError, format_rat, rat
from .sigma import basis_gram, det_exact

Row = tuple[Fraction, ...]


@dataclass(frozen=True)
class EulerContext:
    euler: tuple[Row, ...]
    basis_labels: tuple[str, ...]

    def __post_init__(self):
        rows = tuple(tuple(rat(x) for x in r) for r in self.euler)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise InputError(f"Euler matrix row {i} has length {len(r)}, expected {n}")
        if len(self.basis_labels) != n:
            raise InputError(f"{len(self.basis_labels)} labels for a {n}x{n} matrix")
        object.__setattr__(self, "euler", rows)
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))

    @property
    def size(self) -> int:
        return len(self.euler)

    def basis_class(self, i: int) -> KClass:
        if not 0 <= i < self.size:
            raise InputError(f"basis index {i} out of range 0..{self.size - 1}")
        return KClass(tuple(Fraction(int(k == i)) for k in range(self.size)))

    def is_exceptional(self, i: int) -> bool:
        return self.euler[i][i] == 1

    def is_unit_upper_triangular(self) -> bool:
        n = self.size
        return all(self.euler[i][i] == 1 for i in range(n)) and all(
            self.euler[i][j] == 0 for i in range(n) for j in range(i))

    def determinant(self) -> Fraction:
        return det_exact([list(r) for r in self.euler])

    def to_json(self) -> dict:
        def cell(x):
            return x.numerator if x.denominator == 1 else format_rat(x)
        return {"basis": list(self.basis_labels),
                "euler": [[cell(x) for x in r] for r in self.euler]}


@dataclass(frozen=True)
class KClass:
    coords: Row

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(rat(x) for x in self.coords))

    def __add__(self, other: KClass) -> KClass:
        return KClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: KClass) -> KClass:
        return KClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, t) -> KClass:
        t = rat(t)
        return KClass(tuple(t * a for a in self.coords))


def chi(ctx: EulerContext, e: KClass, f: KClass) -> Fraction:
    n = ctx.size
    if len(e.coords) != n or len(f.coords) != n:
        raise InputError("class dimension does not match the context")
    m = ctx.euler
    return sum((e.coords[i] * m[i][j] * f.coords[j]
                for i in range(n) if e.coords[i]
                for j in range(n) if f.coords[j]), Fraction(0))


def _pivot(ctx: EulerContext, e_idx: int) -> KClass:
    e = ctx.basis_class(e_idx)
    if chi(ctx, e, e) != 1:
        raise InputError(f"basis class {e_idx} is not exceptional (chi(E,E) != 1)")
    return e


def left_mutate(ctx: EulerContext, e_idx: int, f: KClass) -> KClass:
    e = _pivot(ctx, e_idx)
    return f - e.scale(chi(ctx, e, f))


def right_mutate(ctx: EulerContext, e_idx: int, f: KClass) -> KClass:
    e = _pivot(ctx, e_idx)
    return f - e.scale(chi(ctx, f, e))


_TOKEN = re.compile(r"([LR])(\d+)(?:\[(-?\d+)\])?")


@dataclass(frozen=True)
class Step:
    kind: str
    position: int
    shift: int = 0


def parse_script(script: str | Sequence) -> list[Step]:
    if not isinstance(script, str):
        return [s if isinstance(s, Step) else Step(*s) for s in script]
    steps = []
    for pos, tok in _tokens(script):
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise InputError(f"bad mutation token {tok!r} at character {pos}")
        steps.append(Step(m.group(1), int(m.group(2)), int(m.group(3) or 0)))
    return steps


def _tokens(script: str):
    pos = 0
    for piece in script.split(","):
        stripped = piece.strip()
        if stripped:
            yield pos + piece.index(stripped[0]), stripped
        pos += len(piece) + 1


@dataclass(frozen=True)
class MutationResult:
    context: EulerContext
    classes: tuple[Row, ...]  # new classes in the original basis

    def to_json(self) -> dict:
        out = self.context.to_json()
        out["classes"] = [[format_rat(x) for x in r] for r in self.classes]
        return out


def mutate_collection(ctx: EulerContext, script) -> MutationResult:
    """Apply a sequence of adjacent mutations.

    When the input matrix is unit upper triangular the whole collection must
    be exceptional and each step keeps it so.  Otherwise (for instance the
    symmetric Gram of the built-in quadric-surface basis) only the pivot of
    each step is required to be exceptional.
    """
    steps = parse_script(script)
    n = ctx.size
    strict = ctx.is_unit_upper_triangular()
    classes = [ctx.basis_class(i) for i in range(n)]
    labels = list(ctx.basis_labels)
    for st in steps:
        p = st.position
        if not 0 <= p < n - 1:
            raise InputError(f"position {p} invalid for a collection of length {n}")
        a, b = classes[p], classes[p + 1]
        sign = -1 if st.shift % 2 else 1
        if st.kind == "L":
            if chi(ctx, a, a) != 1:
                raise InputError(f"pivot at position {p} is not exceptional")
            new = (b - a.scale(chi(ctx, a, b))).scale(sign)
            classes[p], classes[p + 1] = new, a
            labels[p], labels[p + 1] = _shift_label(f"L_{labels[p]}({labels[p + 1]})", st.shift), labels[p]
        else:
            if chi(ctx, b, b) != 1:
                raise InputError(f"pivot at position {p + 1} is not exceptional")
            new = (a - b.scale(chi(ctx, a, b))).scale(sign)
            classes[p], classes[p + 1] = b, new
            labels[p], labels[p + 1] = labels[p + 1], _shift_label(f"R_{labels[p + 1]}({labels[p]})", st.shift)
    rows = tuple(tuple(chi(ctx, x, y) for y in classes) for x in classes)
    out = EulerContext(rows, tuple(labels))
    if strict and not out.is_unit_upper_triangular():
        raise AssertionError("mutation broke exceptionality; this is a bug")
    return MutationResult(out, tuple(c.coords for c in classes))


def _shift_label(label: str, k: int) -> str:
    return label if k == 0 else f"{label}[{k}]"


def new_euler_by_base_change(ctx: EulerContext, classes: Sequence[Row]) -> tuple[Row, ...]:
    """B M B^T, used as an independent check of mutate_collection."""
    m = ctx.euler
    n = ctx.size
    bm = [[sum(b[k] * m[k][j] for k in range(n)) for j in range(n)] for b in classes]
    return tuple(tuple(sum(bm[i][k] * c[k] for k in range(n)) for c in classes)
                 for i in range(len(classes)))


# ---------------------------------------------------------------------------
# built-in contexts

def sigma_context() -> EulerContext:
    g = basis_gram()
    return EulerContext(g.entries, g.basis_labels)


# Todd class of the quadric threefold, h^3 = 2
TODD_Q3 = ChernY(1, Fraction(3, 2), Fraction(13, 12), Fraction(1, 2))
# dual spinor bundle: rank 2, c1 = h, c2 = line class
CH_SPINOR_DUAL = ChernY(2, 1, 0, Fraction(-1, 12))


def chi_q3(e: ChernY, f: ChernY) -> Fraction:
    return (e.dual() * f * TODD_Q3).degree()


def chi_line_q3(k: int) -> int:
    """Independent count: chi(O_Q(k)) = chi(O_P4(k)) - chi(O_P4(k-2))."""
    return comb(k + 4, 4) - comb(k + 2, 4) if k >= -1 else -chi_line_q3(-3 - k)


def quadric3_context() -> EulerContext:
    chars = [line_bundle_y(-1), line_bundle_y(0), CH_SPINOR_DUAL, line_bundle_y(1)]
    rows = tuple(tuple(chi_q3(e, f) for f in chars) for e in chars)
    return EulerContext(rows, ("O(-h)", "O", "S*", "O(h)"))


BUILTINS = {"sigma": sigma_context, "quadric3": quadric3_context}


def builtin_context(name: str) -> EulerContext:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise InputError(f"unknown built-in context {name!r}; known: {', '.join(BUILTINS)}") from None
