"""Cartan data, positive roots and Dynkin subdiagram recognition.

Vertices use Bourbaki numbering 1..rank throughout.  The Cartan matrix is
stored with ``cartan[i][j] = <alpha_j, alpha_i^vee>`` (0-based indices), so
row ``i`` holds the pairings of every simple root with the coroot of
``alpha_{i+1}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

TYPES = "ABCDEFG"

Perm = tuple[int, ...]  # perm[v - 1] is the image of vertex v


class RootSystemError(ValueError):
    """Invalid (type, rank) combination or malformed vertex data."""


class Edge(NamedTuple):
    i: int
    j: int
    multiplicity: int
    short: int | None  # the vertex the arrow points to, for multiple bonds


# Off-diagonal Cartan entries (i, j, cartan[i][j], cartan[j][i]) in 1-based labels.
def _bonds(base_type: str, rank: int) -> list[tuple[int, int, int, int]]:
    n = rank
    chain = [(i, i + 1, -1, -1) for i in range(1, n)]
    if base_type == "A":
        return chain
    if base_type == "B":
        return chain[:-1] + [(n - 1, n, -1, -2)]
    if base_type == "C":
        return chain[:-1] + [(n - 1, n, -2, -1)]
    if base_type == "D":
        return [(i, i + 1, -1, -1) for i in range(1, n - 1)] + [(n - 2, n, -1, -1)]
    if base_type == "E":
        return [(1, 3, -1, -1), (2, 4, -1, -1)] + [
            (i, i + 1, -1, -1) for i in range(3, n)
        ]
    if base_type == "F":
        return [(1, 2, -1, -1), (2, 3, -1, -2), (3, 4, -1, -1)]
    if base_type == "G":
        return [(1, 2, -3, -1)]
    raise RootSystemError(f"unknown type {base_type!r}")


def check_type(base_type: str, rank: int) -> None:
    if base_type not in TYPES or len(base_type) != 1:
        raise RootSystemError(f"unknown type {base_type!r}")
    if not isinstance(rank, int) or rank < 1:
        raise RootSystemError(f"rank must be a positive integer, got {rank!r}")
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[base_type]
    if not ok:
        raise RootSystemError(f"no simple type {base_type}{rank}")


def normalize_type(base_type: str, rank: int) -> tuple[str, int]:
    """Validate and normalize; D3 is returned as A3."""
    check_type(base_type, rank)
    if base_type == "D" and rank == 3:
        return "A", 3
    return base_type, rank


def cartan_matrix(base_type: str, rank: int) -> list[list[int]]:
    """Cartan matrix with ``C[i][j] = <alpha_j, alpha_i^vee>`` in Bourbaki order.

    >>> cartan_matrix("A", 2)
    [[2, -1], [-1, 2]]
    """
    base_type, rank = normalize_type(base_type, rank)
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j, cij, cji in _bonds(base_type, rank):
        c[i - 1][j - 1] = cij
        c[j - 1][i - 1] = cji
    return c


def _canonical_automorphisms(base_type: str, rank: int) -> tuple[Perm, ...]:
    n = rank
    ident = tuple(range(1, n + 1))
    if base_type == "A" and n >= 2:
        return (tuple(n + 1 - i for i in ident),)
    if base_type == "D" and n == 4:
        # S3 on the three outer vertices {1, 3, 4}
        return ((3, 2, 1, 4), (3, 2, 4, 1))
    if base_type == "D":
        return (ident[: n - 2] + (n, n - 1),)
    if base_type == "E" and n == 6:
        return ((6, 2, 5, 4, 3, 1),)
    return (ident,)


@dataclass(frozen=True)
class CartanDatum:
    """A simple Cartan type with its matrix and diagram in Bourbaki labels."""

    base_type: str
    rank: int
    cartan: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    edges: tuple[Edge, ...] = field(repr=False, compare=False)

    @classmethod
    def of(cls, base_type: str, rank: int) -> CartanDatum:
        return _datum(*normalize_type(base_type, rank))

    @property
    def name(self) -> str:
        return f"{self.base_type}{self.rank}"

    @property
    def vertex_labels(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    def neighbors(self, v: int) -> list[int]:
        row = self.cartan[v - 1]
        return [u for u in self.vertex_labels if u != v and row[u - 1] != 0]

    def entry(self, i: int, j: int) -> int:
        """``<alpha_j, alpha_i^vee>`` for 1-based vertex labels."""
        return self.cartan[i - 1][j - 1]


@lru_cache(maxsize=None)
def _datum(base_type: str, rank: int) -> CartanDatum:
    c = cartan_matrix(base_type, rank)
    edges = []
    for i, j, cij, cji in _bonds(base_type, rank):
        mult = cij * cji
        short = None
        if mult > 1:
            # |cartan[i][j]| > 1 means alpha_i is the short root
            short = i if cij < cji else j
        edges.append(Edge(i, j, mult, short))
    return CartanDatum(base_type, rank, tuple(map(tuple, c)), tuple(edges))


def positive_roots(datum: CartanDatum) -> list[tuple[int, ...]]:
    """All positive roots in simple-root coordinates, ordered by height then coefficients.

    Built by root strings: for a root ``b`` and simple root ``a_i`` with
    ``b - p a_i`` the bottom of the string through ``b``, ``b + a_i`` is a
    root iff ``p - <b, a_i^vee> > 0``.
    """
    return list(_positive_roots(datum.base_type, datum.rank))


@lru_cache(maxsize=None)
def _positive_roots(base_type: str, rank: int) -> tuple[tuple[int, ...], ...]:
    c = cartan_matrix(base_type, rank)
    n = rank
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = set()
        for b in layer:
            for i in range(n):
                pairing = sum(b[j] * c[i][j] for j in range(n))
                p = 0
                lower = list(b)
                while True:
                    lower[i] -= 1
                    if tuple(lower) not in roots:
                        break
                    p += 1
                if p - pairing > 0:
                    up = list(b)
                    up[i] += 1
                    nxt.add(tuple(up))
        nxt -= roots
        roots |= nxt
        layer = sorted(nxt)
    return tuple(sorted(roots, key=lambda r: (sum(r), r)))


def diagram_automorphisms(datum: CartanDatum) -> tuple[Perm, ...]:
    """Canonical generators of the diagram automorphism group.

    Only the identity is returned for diagrams without symmetry.
    """
    return _canonical_automorphisms(datum.base_type, datum.rank)


def compose(p: Perm, q: Perm) -> Perm:
    """``p`` after ``q``."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def generated_group(gens: Sequence[Perm], degree: int) -> frozenset[Perm]:
    ident = tuple(range(1, degree + 1))
    group = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for h in frontier:
            for g in gens:
                x = compose(g, h)
                if x not in group:
                    group.add(x)
                    new.append(x)
        frontier = new
    return frozenset(group)


def is_automorphism(datum: CartanDatum, perm: Perm) -> bool:
    n = datum.rank
    if sorted(perm) != list(range(1, n + 1)):
        return False
    return all(
        datum.entry(perm[i - 1], perm[j - 1]) == datum.entry(i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    )


# --- subdiagram recognition -------------------------------------------------


class Component(NamedTuple):
    base_type: str
    rank: int
    vertices: tuple[int, ...]  # vertices[k] is the ambient label of canonical vertex k+1

    def __str__(self) -> str:
        return f"{self.base_type}{self.rank} on {{{','.join(map(str, sorted(self.vertices)))}}}"


def _catalog(rank: int) -> list[CartanDatum]:
    out = []
    for t in TYPES:
        if t == "C" and rank == 2:
            continue  # C2 is B2 up to relabeling
        if t == "D" and rank == 3:
            continue
        try:
            check_type(t, rank)
        except RootSystemError:
            continue
        out.append(CartanDatum.of(t, rank))
    return out


def _signature(mat: Sequence[Sequence[int]]) -> tuple:
    k = len(mat)
    rows = []
    for i in range(k):
        rows.append(tuple(sorted(mat[i][j] for j in range(k) if j != i and mat[i][j])))
    return tuple(sorted(rows))


def isomorphisms(
    datum: CartanDatum, vertices: Sequence[int], target: CartanDatum
) -> Iterator[tuple[int, ...]]:
    """Yield label maps ``m`` with ``m[k]`` the source vertex sent to target vertex ``k+1``.

    Maps preserve Cartan entries.  Yielded in lexicographic order of the
    source-to-target assignment (sorted source vertices first), so the first
    map is the lexicographically smallest relabeling.
    """
    src = sorted(vertices)
    members = set(src)
    k = len(src)
    if k != target.rank:
        return
    assign: dict[int, int] = {}  # source -> target
    used: set[int] = set()

    def extend(pos: int) -> Iterator[tuple[int, ...]]:
        if pos == k:
            inv = {t: s for s, t in assign.items()}
            yield tuple(inv[t] for t in range(1, k + 1))
            return
        s = src[pos]
        for t in range(1, k + 1):
            if t in used:
                continue
            if any(
                datum.entry(s, s2) != target.entry(t, t2)
                or datum.entry(s2, s) != target.entry(t2, t)
                for s2, t2 in assign.items()
            ):
                continue
            # degrees must agree for the map to extend
            if len(target.neighbors(t)) != sum(1 for u in datum.neighbors(s) if u in members):
                continue
            assign[s] = t
            used.add(t)
            yield from extend(pos + 1)
            del assign[s]
            used.discard(t)

    yield from extend(0)


def identify(datum: CartanDatum, vertices: Sequence[int]) -> Component:
    """Identify a connected vertex subset as a simple type."""
    verts = sorted(vertices)
    sub = [[datum.entry(i, j) for j in verts] for i in verts]
    sig = _signature(sub)
    for cand in _catalog(len(verts)):
        if _signature(cand.cartan) != sig:
            continue
        for m in isomorphisms(datum, verts, cand):
            return Component(cand.base_type, cand.rank, m)
    raise RuntimeError(f"subdiagram on {verts} of {datum.name} matches no simple type")


def connected_parts(datum: CartanDatum, vertex_subset) -> list[list[int]]:
    remaining = set(vertex_subset)
    bad = remaining - set(datum.vertex_labels)
    if bad:
        raise RootSystemError(f"vertices {sorted(bad)} not in {datum.name}")
    parts = []
    while remaining:
        start = min(remaining)
        stack, seen = [start], {start}
        while stack:
            v = stack.pop()
            for u in datum.neighbors(v):
                if u in remaining and u not in seen:
                    seen.add(u)
                    stack.append(u)
        remaining -= seen
        parts.append(sorted(seen))
    return parts


def components(datum: CartanDatum, vertex_subset) -> list[Component]:
    """Connected components of the subdiagram induced on ``vertex_subset``.

    Components are ordered by their smallest vertex.
    """
    return [identify(datum, part) for part in connected_parts(datum, vertex_subset)]
