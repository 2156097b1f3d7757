"""Exact integer matrix algebra: Smith/Hermite forms, kernels, saturation.

Matrices are plain lists of rows of Python ints, so entries never overflow.
Torsion points of tori are :class:`FiniteOrderTorusElement` values: exponent
vectors in (Q/Z)^n.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def transpose(a: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(r) for r in zip(*a)]


def det(a: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in a]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D``, ``U``/``V`` unimodular.

    ``D`` is diagonal with non-negative entries ``d1 | d2 | ...``.  The pivot is
    always the entry of smallest absolute value in the remaining block, ties
    broken by lowest row then lowest column, so results are reproducible.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    d = [list(r) for r in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i: int, j: int) -> None:
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src: int, dst: int, q: int) -> None:  # row_dst += q * row_src
        d[dst] = [a + q * b for a, b in zip(d[dst], d[src])]
        u[dst] = [a + q * b for a, b in zip(u[dst], u[src])]

    def add_col(src: int, dst: int, q: int) -> None:
        for r in d:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = abs(d[i][j])
                    if x and (best is None or x < best[0]):
                        best = (x, i, j)
            if best is None:
                return u, d, v
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = d[t][t]
            clean = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    clean = clean and d[i][t] == 0
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    clean = clean and d[t][j] == 0
            if not clean:
                continue
            # divisibility: fold an offending row into row t and retry
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith form."""
    _, d, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def hermite_normal_form(vectors: Iterable[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Pivots are positive, entries above a pivot are reduced into
    ``[0, pivot)``; zero rows are dropped.  Two spanning sets give the same
    output iff they span the same lattice.
    """
    a = [list(r) for r in vectors]
    if not a:
        return []
    cols = len(a[0])
    r = 0
    for c in range(cols):
        # gcd-reduce column c among rows r..
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(a[i][c]), i))
            a[r], a[i0] = a[i0], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    done = done and a[i][c] == 0
            if done:
                break
        if r < len(a) and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    return [row for row in a[:r] if any(row)]


def kernel_basis(m: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    """Basis (Hermite form) of the integer kernel ``{v : M v = 0}``.

    ``cols`` gives the ambient dimension when ``m`` has no rows.
    """
    n = len(m[0]) if m else (cols or 0)
    if not m:
        return identity(n)
    _, d, v = smith_normal_form(m)
    rank = sum(1 for i in range(min(len(d), n)) if d[i][i])
    basis = [[v[i][j] for i in range(n)] for j in range(rank, n)]
    return hermite_normal_form(basis)


def saturation(rows: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    """Hermite basis of ``(row space tensor Q) intersect Z^n``."""
    n = len(rows[0]) if rows else (cols or 0)
    if not rows:
        return []
    perp = kernel_basis(rows)
    if not perp:
        return identity(n)
    return kernel_basis(perp)


def is_saturated(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff the lattice spanned by ``vectors`` is primitive in Z^n."""
    return all(f == 1 for f in invariant_factors(vectors)) if vectors else True


# --- torsion --------------------------------------------------------------


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class FiniteOrderTorusElement:
    """The torus point prod_i h_i(omega^(order * exponents[i])).

    ``omega`` is a fixed primitive ``order``-th root of unity and the
    exponents live in [0, 1).
    """

    exponents: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponents", tuple(_mod1(Fraction(x)) for x in self.exponents))

    @classmethod
    def from_vector(cls, numerators: Sequence[int], denominator: int) -> FiniteOrderTorusElement:
        return cls(tuple(Fraction(a, denominator) for a in numerators))

    @property
    def order(self) -> int:
        return lcm(1, *(x.denominator for x in self.exponents))

    def __len__(self) -> int:
        return len(self.exponents)

    def __mul__(self, other: FiniteOrderTorusElement) -> FiniteOrderTorusElement:
        return FiniteOrderTorusElement(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, k: int) -> FiniteOrderTorusElement:
        return FiniteOrderTorusElement(tuple(k * a for a in self.exponents))

    def inverse(self) -> FiniteOrderTorusElement:
        return self ** -1

    def is_identity(self) -> bool:
        return all(x == 0 for x in self.exponents)

    def embed(self, support: Sequence[int], ambient: int) -> FiniteOrderTorusElement:
        """Place coordinates at 1-based positions ``support`` of an ambient vector."""
        out = [Fraction(0)] * ambient
        for pos, x in zip(support, self.exponents):
            out[pos - 1] = x
        return FiniteOrderTorusElement(tuple(out))

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.exponents) + ")"


def canonical_generator(z: FiniteOrderTorusElement) -> FiniteOrderTorusElement:
    """Lexicographically smallest generator of the cyclic group <z>."""
    n = z.order
    return min((z ** k for k in range(1, n + 1) if gcd(k, n) == 1), key=lambda e: e.exponents)


def torsion_solutions(m: Sequence[Sequence[int]], cols: int | None = None) -> list[FiniteOrderTorusElement]:
    """Generators of ``{e in (Q/Z)^n : M e = 0 mod Z}`` modulo the connected part.

    With ``U M V = D`` the substitution ``e = V f`` decouples the system, so
    the columns ``V[:, i] / d_i`` for ``d_i > 1`` generate the finite
    quotient; each has order exactly ``d_i``.  Every generator is replaced by
    the smallest generator of its cyclic group and the list is sorted by
    decreasing order, then exponents.
    """
    n = len(m[0]) if m else (cols or 0)
    if not m:
        return []
    _, d, v = smith_normal_form(m)
    gens = []
    for i in range(min(len(d), n)):
        di = d[i][i]
        if di > 1:
            z = FiniteOrderTorusElement.from_vector([v[r][i] for r in range(n)], di)
            gens.append(canonical_generator(z))
    gens.sort(key=lambda z: (-z.order, z.exponents))
    return gens


def pairs_to_integers(chars: Sequence[Sequence[int]], e: FiniteOrderTorusElement) -> bool:
    """True iff ``chi . e`` is an integer for every row ``chi``."""
    return all(
        sum((c * x for c, x in zip(chi, e.exponents)), Fraction(0)).denominator == 1
        for chi in chars
    )
