"""Integral quadratic forms.

Lattices are given by a symmetric integer Gram matrix in a fixed basis and
vectors by integer coordinates in that basis.  All linear algebra is exact:
integer unimodular operations for kernels and Smith forms, Fractions for
diagonalization.
"""

from __future__ import annotations

import itertools
import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .checks import Report
from .exact import InputError, perfect_square

Matrix = list[list[int]]

DEFAULT_MAX_ENUM = 10 ** 6


def max_enum() -> int:
    raw = os.environ.get("KU_STAB_MAX_ENUM")
    if raw is None:
        return DEFAULT_MAX_ENUM
    try:
        n = int(raw)
    except ValueError as exc:
        raise InputError(f"KU_STAB_MAX_ENUM must be an integer, got {raw!r}") from exc
    if n < 1:
        raise InputError("KU_STAB_MAX_ENUM must be positive")
    return n


class EnumerationLimit(InputError):
    """The requested search would exceed KU_STAB_MAX_ENUM candidates."""


# ---------------------------------------------------------------------------
# integer matrix helpers

def _check_int_matrix(rows) -> Matrix:
    out = []
    for i, row in enumerate(rows):
        r = []
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, int):
                raise InputError(f"entry ({i},{j}) is not an integer: {x!r}")
            r.append(x)
        out.append(r)
    return out


def det_bareiss(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_invariants(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    for k in range(t, cols):
                        a[i][k] -= q * a[t][k]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for r in range(t, rows):
                        a[r][j] -= q * a[r][t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # the pivot must also divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                i, _ = bad
                for k in range(t, cols):
                    a[t][k] += a[i][k]
                continue
            # move the smallest remainder into the pivot spot and repeat
            best = None
            for i in range(t, rows):
                if a[i][t] and (best is None or abs(a[i][t]) < abs(a[best][t])):
                    best = i
            a[t], a[best] = a[best], a[t]
            bestc = None
            for j in range(t, cols):
                if a[t][j] and (bestc is None or abs(a[t][j]) < abs(a[t][bestc])):
                    bestc = j
            for r in a:
                r[t], r[bestc] = r[bestc], r[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def integer_kernel(rows: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Basis of {x in Z^n : M x = 0}; always saturated in Z^n.

    Column-reduce the stacked matrix [M; I].  The identity block records a
    unimodular transform, so the columns whose top part vanishes span the
    kernel and form part of a basis of Z^n.
    """
    m = len(rows)
    # store columns: each column is (top part, bottom part)
    cols = [[rows[i][j] for i in range(m)] + [1 if k == j else 0 for k in range(n)]
            for j in range(n)]
    r = 0
    for i in range(m):
        while True:
            nz = [c for c in range(r, n) if cols[c][i] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda c: abs(cols[c][i]))
            cols[r], cols[piv] = cols[piv], cols[r]
            done = True
            for c in range(r + 1, n):
                if cols[c][i]:
                    q = cols[c][i] // cols[r][i]
                    cols[c] = [x - q * y for x, y in zip(cols[c], cols[r])]
                    if cols[c][i]:
                        done = False
            if done:
                r += 1
                break
    kernel = [col[m:] for col in cols[r:]]
    return [_normalize_sign(v) for v in kernel]


def _normalize_sign(v: list[int]) -> list[int]:
    for x in v:
        if x:
            return v if x > 0 else [-y for y in v]
    return v


def _gcd_all(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = math.gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> list[int]:
    g = _gcd_all(v)
    return list(v) if g in (0, 1) else [x // g for x in v]


def unimodular_with_first_column(c: Sequence[int]) -> Matrix:
    """Integer matrix of determinant +-1 whose first column is primitive ``c``."""
    n = len(c)
    if _gcd_all(c) != 1:
        raise InputError("vector is not primitive")
    # reduce c to e1 by row operations W, tracking W^{-1} via column ops
    v = list(c)
    winv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def add_row(i, j, q):  # row_i += q row_j  ==> W^{-1}: col_j -= q col_i
        v[i] += q * v[j]
        for r in winv:
            r[j] -= q * r[i]

    def swap(i, j):
        v[i], v[j] = v[j], v[i]
        for r in winv:
            r[i], r[j] = r[j], r[i]

    while True:
        nz = [i for i in range(n) if v[i]]
        piv = min(nz, key=lambda i: abs(v[i]))
        if len(nz) == 1:
            swap(0, piv)
            if v[0] < 0:
                v[0] = -v[0]
                for r in winv:
                    r[0] = -r[0]
            break
        for i in nz:
            if i != piv:
                add_row(i, piv, -(v[i] // v[piv]))
    return winv


# ---------------------------------------------------------------------------
# lattices

@dataclass(frozen=True)
class IntegralLattice:
    gram: tuple[tuple[int, ...], ...]
    name: Optional[str] = None
    allow_degenerate: bool = False

    def __post_init__(self):
        g = _check_int_matrix(self.gram)
        n = len(g)
        for i, row in enumerate(g):
            if len(row) != n:
                raise InputError(f"Gram row {i} has length {len(row)}, expected {n}")
        for i in range(n):
            for j in range(i + 1, n):
                if g[i][j] != g[j][i]:
                    raise InputError(
                        f"Gram matrix not symmetric at ({i},{j}): {g[i][j]} != {g[j][i]}")
        object.__setattr__(self, "gram", tuple(tuple(r) for r in g))
        if not self.allow_degenerate and n and self.det == 0:
            raise InputError("degenerate Gram matrix (determinant 0)")

    @classmethod
    def from_rows(cls, rows, name=None, allow_degenerate=False) -> IntegralLattice:
        return cls(tuple(tuple(r) for r in rows), name, allow_degenerate)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def det(self) -> int:
        return det_bareiss(self.gram)

    def vector(self, coords: Sequence[int]) -> LatticeVector:
        return LatticeVector(self, tuple(coords))

    def basis_vector(self, i: int) -> LatticeVector:
        return self.vector([1 if k == i else 0 for k in range(self.rank)])

    def pair_coords(self, u: Sequence[int], v: Sequence[int]) -> int:
        g = self.gram
        return sum(u[i] * g[i][j] * v[j]
                   for i in range(len(u)) if u[i]
                   for j in range(len(v)) if v[j])

    def apply(self, v: Sequence[int]) -> list[int]:
        """G v."""
        return [sum(row[j] * v[j] for j in range(len(v)) if v[j]) for row in self.gram]

    def square(self, v: Sequence[int]) -> int:
        return self.pair_coords(v, v)

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def restrict(self, basis: Sequence[Sequence[int]], name=None) -> IntegralLattice:
        rows = [[self.pair_coords(b, c) for c in basis] for b in basis]
        return IntegralLattice.from_rows(rows, name, allow_degenerate=True)

    def to_json(self) -> dict:
        return {"name": self.name, "gram": [list(r) for r in self.gram]}

    def __repr__(self) -> str:
        return f"IntegralLattice(name={self.name!r}, rank={self.rank})"


@dataclass(frozen=True)
class LatticeVector:
    lattice: IntegralLattice
    coords: tuple[int, ...]

    def __post_init__(self):
        c = tuple(self.coords)
        if len(c) != self.lattice.rank:
            raise InputError(f"vector of length {len(c)} in a rank {self.lattice.rank} lattice")
        for x in c:
            if isinstance(x, bool) or not isinstance(x, int):
                raise InputError(f"non-integer coordinate {x!r}")
        object.__setattr__(self, "coords", c)

    def __add__(self, other: LatticeVector) -> LatticeVector:
        _same(self, other)
        return LatticeVector(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: LatticeVector) -> LatticeVector:
        _same(self, other)
        return LatticeVector(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, k: int) -> LatticeVector:
        return LatticeVector(self.lattice, tuple(k * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def square(self) -> int:
        return pair(self, self)


def _same(u: LatticeVector, v: LatticeVector) -> None:
    if u.lattice.gram != v.lattice.gram:
        raise InputError("vectors live in different lattices")


def pair(u: LatticeVector, v: LatticeVector) -> int:
    _same(u, v)
    return u.lattice.pair_coords(u.coords, v.coords)


def direct_sum(*lats: IntegralLattice, name: Optional[str] = None) -> IntegralLattice:
    n = sum(l.rank for l in lats)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for l in lats:
        for i in range(l.rank):
            for j in range(l.rank):
                rows[off + i][off + j] = l.gram[i][j]
        off += l.rank
    degenerate = any(l.allow_degenerate for l in lats)
    return IntegralLattice.from_rows(rows, name, allow_degenerate=degenerate)


def scaled(l: IntegralLattice, k: int, name: Optional[str] = None) -> IntegralLattice:
    return IntegralLattice.from_rows([[k * x for x in r] for r in l.gram], name,
                                     l.allow_degenerate)


def discriminant_group(l: IntegralLattice) -> list[int]:
    """Invariant factors of coker(G), dropping the trivial ones."""
    if l.rank == 0:
        return []
    if l.det == 0:
        raise InputError("discriminant group of a degenerate lattice")
    return [d for d in smith_invariants(l.gram) if d != 1]


def discriminant_order(l: IntegralLattice) -> int:
    return math.prod(discriminant_group(l))


def divisibility(v: LatticeVector) -> int:
    if v.is_zero():
        raise InputError("divisibility of the zero vector")
    g = _gcd_all(v.lattice.apply(v.coords))
    if g == 0:
        raise InputError("vector lies in the radical; divisibility undefined")
    return g


def divisibility_in_sublattice(ambient: IntegralLattice, v: Sequence[int],
                               basis: Sequence[Sequence[int]]) -> int:
    """gcd of (v, b) over a basis of a sublattice containing or pairing with v."""
    gv = ambient.apply(v)
    g = _gcd_all(sum(a * b for a, b in zip(gv, bvec)) for bvec in basis)
    if g == 0:
        raise InputError("vector pairs to zero with the whole sublattice")
    return g


@dataclass(frozen=True)
class Complement:
    ambient: IntegralLattice
    basis: tuple[tuple[int, ...], ...]

    @property
    def lattice(self) -> IntegralLattice:
        return self.ambient.restrict(self.basis, name="complement")

    @property
    def rank(self) -> int:
        return len(self.basis)


def orthogonal_complement(l: IntegralLattice,
                          vs: Sequence[LatticeVector | Sequence[int]]) -> Complement:
    rows = []
    for v in vs:
        coords = v.coords if isinstance(v, LatticeVector) else tuple(v)
        if len(coords) != l.rank:
            raise InputError("vector length does not match lattice rank")
        rows.append(l.apply(coords))
    if not rows:
        basis = [[1 if i == j else 0 for j in range(l.rank)] for i in range(l.rank)]
    else:
        basis = integer_kernel(rows, l.rank)
    return Complement(l, tuple(tuple(b) for b in basis))


def quotient_by_isotropic(sub: IntegralLattice, v: Sequence[int]) -> IntegralLattice:
    """``sub / Zv`` for ``v`` in the radical of ``sub`` (coordinates of sub)."""
    v = list(v)
    if any(sub.apply(v)):
        raise InputError("vector is not in the radical; quotient form undefined")
    b = unimodular_with_first_column(primitive(v))
    rest = [[b[i][j] for i in range(sub.rank)] for j in range(1, sub.rank)]
    return sub.restrict(rest, name="quotient")


# ---------------------------------------------------------------------------
# signature and definiteness

def signature(l: IntegralLattice) -> tuple[int, int, int]:
    """(positive, negative, zero) via exact congruence diagonalization."""
    a = [[Fraction(x) for x in r] for r in l.gram]
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if a[i][i] != 0), None)
        if k is None:
            # zero diagonal: use an off-diagonal entry to create one
            pairf = next(((i, j) for i in active for j in active if i != j and a[i][j] != 0), None)
            if pairf is None:
                break
            i, j = pairf
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            k = i
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        for i in active:
            f = a[i][k] / d
            if f:
                for t in range(n):
                    a[i][t] -= f * a[k][t]
                for t in range(n):
                    a[t][i] -= f * a[t][k]
    return pos, neg, n - pos - neg


def definiteness(l: IntegralLattice) -> str:
    p, n, z = signature(l)
    if z:
        return "degenerate"
    if n == 0:
        return "positive"
    if p == 0:
        return "negative"
    return "indefinite"


def _inverse_diag(l: IntegralLattice) -> list[Fraction]:
    # diagonal of G^{-1} via Gauss-Jordan over Q
    n = l.rank
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(l.gram)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[i][n + i] for i in range(n)]


def certified_box(l: IntegralLattice, s: int) -> list[int]:
    """Coordinate bounds containing every x with x^T G x = s, G definite.

    For positive definite G and x^T G x <= s, Cauchy-Schwarz in the G-metric
    gives x_i^2 <= s (G^{-1})_{ii}.
    """
    kind = definiteness(l)
    if kind == "negative":
        l, s = scaled(l, -1), -s
    elif kind != "positive":
        raise InputError("certified bounds need a definite lattice")
    if s < 0:
        return [-1] * l.rank  # empty
    inv = _inverse_diag(l)
    return [math.isqrt(int(s * q)) for q in inv]


def _fincke_pohst(l: IntegralLattice, s: int) -> Iterator[tuple[int, ...]]:
    """All x with x^T G x <= s for positive definite G, exact."""
    n = l.rank
    # LDL^T: Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2
    g = [[Fraction(x) for x in r] for r in l.gram]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = g[i][i] - sum(mu[i][k] ** 2 * d[k] for k in range(i))
        for j in range(i + 1, n):
            mu[j][i] = (g[j][i] - sum(mu[j][k] * mu[i][k] * d[k] for k in range(i))) / d[i]
    # with x = L^T-coordinates the recursion runs from the last index down
    x = [0] * n

    def rec(i: int, remaining: Fraction):
        if i < 0:
            yield tuple(x)
            return
        c = -sum(mu[j][i] * x[j] for j in range(i + 1, n))
        r2 = remaining / d[i]
        # |x_i - c| <= sqrt(r2)
        lo = math.ceil(c - _sqrt_upper(r2))
        hi = math.floor(c + _sqrt_upper(r2))
        for xi in range(lo, hi + 1):
            t = d[i] * (xi - c) ** 2
            if t <= remaining:
                x[i] = xi
                yield from rec(i - 1, remaining - t)
        x[i] = 0

    yield from rec(n - 1, Fraction(s))


def _sqrt_upper(q: Fraction) -> Fraction:
    # rational upper bound for sqrt(q), q >= 0
    if q <= 0:
        return Fraction(0)
    num = math.isqrt(q.numerator * q.denominator) + 1
    return Fraction(num, q.denominator)


@dataclass(frozen=True)
class Enumeration:
    vectors: tuple[tuple[int, ...], ...]
    exhaustive: bool
    coord_bounds: Optional[tuple[int, ...]]
    note: str


def enumerate_square(l: IntegralLattice, s: int, bound: int) -> Enumeration:
    """Nonzero vectors with x^2 = s.

    Definite lattices are enumerated completely (``bound`` is ignored);
    otherwise every coordinate is limited to ``|x_i| <= bound``.
    """
    kind = definiteness(l)
    if kind in ("positive", "negative"):
        ll, ss = (l, s) if kind == "positive" else (scaled(l, -1), -s)
        if ss <= 0:
            return Enumeration((), True, tuple([0] * l.rank), f"{kind} definite")
        box = certified_box(l, s)
        hits = sorted(v for v in _fincke_pohst(ll, ss) if any(v) and ll.square(v) == ss)
        return Enumeration(tuple(hits), True, tuple(box), f"{kind} definite, complete")
    if bound < 1:
        raise InputError("bound must be positive")
    n = l.rank
    total = (2 * bound + 1) ** n
    if total > max_enum():
        raise EnumerationLimit(
            f"box search of {total} candidates exceeds KU_STAB_MAX_ENUM={max_enum()}")
    rng = range(-bound, bound + 1)
    hits = [v for v in itertools.product(rng, repeat=n) if any(v) and l.square(v) == s]
    return Enumeration(tuple(sorted(hits)), False, None, f"{kind}, box |x_i| <= {bound}")


# ---------------------------------------------------------------------------
# isotropy and hyperbolic planes

YES, NO_CERTIFIED, NONE_FOUND = "yes", "no_certified", "none_found_within_bound"


@dataclass(frozen=True)
class SearchResult:
    status: str
    witness: Optional[tuple] = None
    note: str = ""

    def to_json(self) -> dict:
        w = self.witness
        if w is not None and w and isinstance(w[0], tuple):
            w = [list(x) for x in w]
        elif w is not None:
            w = list(w)
        return {"status": self.status, "witness": w, "note": self.note}


def _isotropic_rank2(a: int, b: int, c: int) -> Optional[tuple[int, int]]:
    """Nonzero isotropic vector of a x^2 + 2 b x y + c y^2, if any."""
    if a == 0:
        return (1, 0)
    s = perfect_square(b * b - a * c)
    if s is None:
        return None
    # a x^2 + 2bxy + cy^2 = 0 at (x, y) = (-b + s, a)
    x, y = -b + s, a
    if x == 0 and y == 0:
        x = -b - s
    g = math.gcd(x, y)
    return (x // g, y // g)


def _shell_prefixes(n: int, r: int) -> Iterator[tuple[int, ...]]:
    """Integer vectors of length n with max-norm exactly r."""
    if n == 0:
        if r == 0:
            yield ()
        return
    for v in itertools.product(range(-r, r + 1), repeat=n):
        if max((abs(x) for x in v), default=0) == r:
            yield v


def _isotropic_candidates(l: IntegralLattice, bound: int) -> Iterator[tuple[int, ...]]:
    """Primitive isotropic vectors, solving for the last coordinate exactly.

    Prefixes range over |x_i| <= bound (i < n); raises EnumerationLimit when
    the budget runs out, after yielding everything found so far.
    """
    n = l.rank
    g = l.gram
    gnn = g[n - 1][n - 1]
    budget = max_enum()
    seen = 0
    found = set()
    for r in range(0, bound + 1):
        for pre in _shell_prefixes(n - 1, r):
            seen += 1
            if seen > budget:
                raise EnumerationLimit(f"searched prefixes up to radius {r - 1}")
            bcoef = sum(g[n - 1][i] * pre[i] for i in range(n - 1))
            cval = sum(pre[i] * g[i][j] * pre[j] for i in range(n - 1) if pre[i]
                       for j in range(n - 1) if pre[j])
            ts = []
            if gnn == 0:
                if bcoef == 0:
                    if cval == 0:
                        ts = [0, 1]
                elif cval % (2 * bcoef) == 0:
                    ts = [-cval // (2 * bcoef)]
            else:
                s = perfect_square(bcoef * bcoef - gnn * cval)
                if s is not None:
                    for num in {-bcoef + s, -bcoef - s}:
                        if num % gnn == 0:
                            ts.append(num // gnn)
            for t in sorted(ts):
                v = tuple(pre) + (t,)
                if any(v):
                    p = tuple(_normalize_sign(primitive(v)))
                    if p not in found:
                        found.add(p)
                        yield p


def isotropic_exists(l: IntegralLattice, bound: int) -> SearchResult:
    n = l.rank
    if n == 0:
        return SearchResult(NO_CERTIFIED, None, "rank 0")
    if l.det == 0:
        ker = integer_kernel(l.gram, n)
        return SearchResult(YES, tuple(ker[0]), "radical vector of a degenerate form")
    kind = definiteness(l)
    if kind in ("positive", "negative"):
        return SearchResult(NO_CERTIFIED, None, f"{kind} definite")
    if n == 2:
        (a, b), (_, c) = l.gram
        w = _isotropic_rank2(a, b, c)
        if w is None:
            return SearchResult(NO_CERTIFIED, None, f"b^2 - ac = {b * b - a * c} is not a square")
        return SearchResult(YES, w, "rank 2 closed form")
    try:
        for v in _isotropic_candidates(l, bound):
            return SearchResult(YES, v, "search")
    except EnumerationLimit as exc:
        return SearchResult(NONE_FOUND, None, str(exc))
    return SearchResult(NONE_FOUND, None, f"prefix coordinates |x_i| <= {bound}")


def _solve_unit_pairing(l: IntegralLattice, u: Sequence[int]) -> Optional[list[int]]:
    """Some w0 with (u, w0) = 1, or None when div(u) != 1."""
    gu = l.apply(u)
    if _gcd_all(gu) != 1:
        return None
    # extended gcd across coordinates
    coeffs = [0] * len(gu)
    g = 0
    for i, x in enumerate(gu):
        if x == 0:
            continue
        if g == 0:
            g, coeffs[i] = abs(x), (1 if x > 0 else -1)
            continue
        d, p, q = _egcd(g, x)
        coeffs = [p * c for c in coeffs]
        coeffs[i] = q
        g = d
    return coeffs


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _hyperbolic_partner(l: IntegralLattice, u: Sequence[int]) -> Optional[tuple[int, ...]]:
    w0 = _solve_unit_pairing(l, u)
    if w0 is None:
        return None
    if l.square(w0) % 2:
        perp = orthogonal_complement(l, [u]).basis
        odd = next((y for y in perp if l.square(y) % 2), None)
        if odd is None:
            return None
        w0 = [a + b for a, b in zip(w0, odd)]
    k = l.square(w0) // 2
    w = tuple(a - k * b for a, b in zip(w0, u))
    assert l.square(w) == 0 and l.pair_coords(u, w) == 1
    return w


def hyperbolic_plane_exists(l: IntegralLattice, bound: int) -> SearchResult:
    n = l.rank
    if n < 2:
        return SearchResult(NO_CERTIFIED, None, "rank < 2")
    kind = definiteness(l)
    if kind in ("positive", "negative"):
        return SearchResult(NO_CERTIFIED, None, f"{kind} definite")
    if n == 2:
        # a copy of U splits off, so a rank-2 lattice contains U iff it is U
        if l.det != -1 or not l.is_even():
            return SearchResult(NO_CERTIFIED, None, "rank 2 and not even unimodular")
        iso = isotropic_exists(l, bound)
        w = _hyperbolic_partner(l, iso.witness)
        return SearchResult(YES, (tuple(iso.witness), w), "rank 2 closed form")
    try:
        for u in _isotropic_candidates(l, bound):
            w = _hyperbolic_partner(l, u)
            if w is not None:
                return SearchResult(YES, (u, w), "search")
    except EnumerationLimit as exc:
        return SearchResult(NONE_FOUND, None, str(exc))
    return SearchResult(NONE_FOUND, None, f"prefix coordinates |x_i| <= {bound}")


# ---------------------------------------------------------------------------
# named lattices

A1 = IntegralLattice(((2,),), "A1")
U = IntegralLattice(((0, 1), (1, 0)), "U")

_E8_EDGES = ((0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7))


def e8(sign: int = -1) -> IntegralLattice:
    rows = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        rows[i][j] = rows[j][i] = -1
    return IntegralLattice.from_rows([[sign * x for x in r] for r in rows],
                                     "E8" if sign > 0 else "E8(-1)")


def ls_lattice(s: int) -> IntegralLattice:
    if s < 1:
        raise InputError("Ls needs s >= 1")
    return IntegralLattice.from_rows(
        [[2, 0, 0, 0], [0, 2, 0, 1], [0, 0, -8 * s, 0], [0, 1, 0, -2]], f"Ls({s})")


def mukai24_default() -> IntegralLattice:
    """E8(-1)^2 + U^4; an implementer convention, not read off any geometry."""
    return direct_sum(e8(), e8(), U, U, U, U, name="Mukai24-default")


# lambda_1 = e + f in the first U summand, lambda_2 = e' + f' in the second
MUKAI_LAMBDA1 = tuple(1 if i in (16, 17) else 0 for i in range(24))
MUKAI_LAMBDA2 = tuple(1 if i in (18, 19) else 0 for i in range(24))


def mukai_vector_coords(a: int, b: int) -> tuple[int, ...]:
    return tuple(a * x + b * y for x, y in zip(MUKAI_LAMBDA1, MUKAI_LAMBDA2))


def lambda22() -> IntegralLattice:
    return direct_sum(e8(), e8(), U, U, scaled(A1, -1), scaled(A1, -1), name="Lambda22")


NAMED = ("A1", "A1(2)", "A1(-1)", "A1+A1", "U", "E8(-1)", "Ls(s)", "Lambda22",
         "Mukai24-default")


def build_named(name: str) -> IntegralLattice:
    key = name.strip()
    m = re.fullmatch(r"Ls\((\d+)\)", key)
    if m:
        return ls_lattice(int(m.group(1)))
    if key in ("A1", "A1(2)"):
        return A1
    if key == "A1(-1)":
        return scaled(A1, -1, "A1(-1)")
    if key in ("A1+A1", "A1(2)+A1(2)", "A1^2"):
        return direct_sum(A1, A1, name="A1+A1")
    if key == "U":
        return U
    if key == "E8(-1)":
        return e8()
    if key == "Lambda22":
        return lambda22()
    if key == "Mukai24-default":
        return mukai24_default()
    raise InputError(f"unknown lattice name {name!r}; known: {', '.join(NAMED)}")


# ---------------------------------------------------------------------------

def neg_two_obstruction(s: int, bound: int) -> Report:
    """No vector of square -2 in A1 + A1 + <-8s>.

    Writing the vector as (x, y, k): 2(x^2 + y^2) - 8 s k^2 = -2, i.e.
    x^2 + y^2 = 4 s k^2 - 1, which is 3 mod 4.
    """
    if s < 1 or bound < 1:
        raise InputError("s and bound must be positive")
    rep = Report(f"no (-2)-vectors in A1+A1+<-{8 * s}>")
    squares_mod4 = {(x * x) % 4 for x in range(4)}
    sums_mod4 = {(a + b) % 4 for a in squares_mod4 for b in squares_mod4}
    target = (4 * s * 0 - 1) % 4  # same residue for every k
    symbolic = target not in sums_mod4
    rep.add("symbolic: x^2 + y^2 never 3 mod 4", symbolic,
            f"squares mod 4 = {sorted(squares_mod4)}, sums = {sorted(sums_mod4)}")
    sq = {x * x + y * y for x in range(bound + 1) for y in range(bound + 1)}
    found = [(k, 4 * s * k * k - 1) for k in range(bound + 1) if 4 * s * k * k - 1 in sq]
    rep.add(f"exhaustive: |x|,|y|,|k| <= {bound}", not found,
            "none" if not found else f"k, x^2+y^2 = {found[:3]}")
    rep.add("certificates agree", symbolic == (not found), "")
    return rep
