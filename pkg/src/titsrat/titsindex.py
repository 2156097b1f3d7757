"""Tits indices: data model, text notation, validation and invariants.

Notation (whitespace-free canonical form)::

    INDEX    := '^' G TYPE RANK DEG? ':' '[' VERTICES? ']' (':' PERM)?
    G        := '1' | '2' | '3' | '6'
    DEG      := '(' integer ')'
    VERTICES := comma-separated Bourbaki vertex numbers
    PERM     := GEN (',' GEN)*      GEN := one or more cycles, e.g. (1 3 4)

Examples: ``^1A8(3):[3,6]``, ``^2E6:[2,4]``, ``^3D4:[2]:(1 3 4)``.

The *-action is determined by the type and ``g``: the canonical diagram
automorphism for ``g = 2`` and the rotation/full S3 on {1, 3, 4} for
trialitarian D4.  A ``PERM`` suffix is accepted only for D4 with
``g in {3, 6}`` and must generate that same group.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

from .rootsys import (
    CartanDatum,
    Component,
    Perm,
    RootSystemError,
    components,
    diagram_automorphisms,
    generated_group,
    is_automorphism,
    normalize_type,
    positive_roots,
)


class IndexSyntaxError(ValueError):
    def __init__(self, message: str, position: int, expected: str):
        super().__init__(f"position {position}: {message} (expected {expected})")
        self.position = position
        self.expected = expected


class IndexValidationError(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


class IsogenyTag(str, enum.Enum):
    SIMPLY_CONNECTED = "simply_connected"
    ADJOINT = "adjoint"
    OTHER = "other"

    @classmethod
    def parse(cls, text: str) -> IsogenyTag:
        return cls(text.strip().lower())

    @classmethod
    def _missing_(cls, value):
        return {"sc": cls.SIMPLY_CONNECTED, "ad": cls.ADJOINT}.get(value)


class FieldContext(str, enum.Enum):
    GENERAL = "general"
    PADIC = "padic"
    REAL = "real"


def action_generators(datum: CartanDatum, g: int) -> tuple[Perm, ...]:
    """Canonical generators of the *-action image of order ``g``.

    Raises ``ValueError`` when no such action exists on ``datum``.
    """
    ident = datum.vertex_labels
    t, n = datum.base_type, datum.rank
    if g == 1:
        return ()
    if g == 2 and (t == "A" and n >= 2 or t == "D" or t == "E" and n == 6):
        if t == "D" and n == 4:
            return (ident[:2] + (4, 3),)
        return diagram_automorphisms(datum)[:1]
    if t == "D" and n == 4 and g == 3:
        return ((3, 2, 4, 1),)
    if t == "D" and n == 4 and g == 6:
        return ((3, 2, 4, 1), (1, 2, 4, 3))
    raise ValueError(f"no *-action of order {g} on {datum.name}")


def _cycles_to_perm(cycles: list[list[int]], n: int) -> Perm:
    perm = list(range(1, n + 1))
    # rightmost cycle acts first
    for cyc in reversed(cycles):
        step = list(range(1, n + 1))
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            step[a - 1] = b
        perm = [step[perm[i] - 1] for i in range(n)]
    return tuple(perm)


def perm_cycles(perm: Perm) -> str:
    seen: set[int] = set()
    out = []
    for start in range(1, len(perm) + 1):
        if start in seen or perm[start - 1] == start:
            continue
        cyc = [start]
        seen.add(start)
        v = perm[start - 1]
        while v != start:
            cyc.append(v)
            seen.add(v)
            v = perm[v - 1]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out)


@dataclass(frozen=True)
class TitsIndex:
    """A Tits index: diagram, *-action order, circled vertices, optional degree.

    Construct through :func:`make_index` or :func:`parse_index`; both
    validate.  Instances compare by (type, rank, g, distinguished, degree).
    """

    datum: CartanDatum
    g: int
    distinguished: frozenset[int]
    degree: int | None = None
    name: str | None = field(default=None, compare=False)

    @property
    def base_type(self) -> str:
        return self.datum.base_type

    @property
    def rank(self) -> int:
        return self.datum.rank

    @cached_property
    def generators(self) -> tuple[Perm, ...]:
        return action_generators(self.datum, self.g)

    @property
    def action(self) -> Perm:
        """The first action generator (identity for inner forms)."""
        return self.generators[0] if self.generators else self.datum.vertex_labels

    @cached_property
    def group(self) -> frozenset[Perm]:
        return generated_group(self.generators, self.rank)

    def orbit(self, v: int) -> frozenset[int]:
        return frozenset(p[v - 1] for p in self.group)

    def orbits(self, vertices=None) -> list[frozenset[int]]:
        """Orbits of the action on ``vertices`` (default: all), ordered by least vertex."""
        vs = sorted(self.datum.vertex_labels if vertices is None else vertices)
        out: list[frozenset[int]] = []
        for v in vs:
            if not any(v in o for o in out):
                out.append(self.orbit(v))
        return out

    @property
    def anisotropic_vertices(self) -> frozenset[int]:
        return frozenset(self.datum.vertex_labels) - self.distinguished

    @property
    def is_inner(self) -> bool:
        return self.g == 1

    def __str__(self) -> str:
        return format_index(self)


def make_index(
    base_type: str,
    rank: int,
    g: int,
    distinguished,
    degree: int | None = None,
    name: str | None = None,
) -> TitsIndex:
    """Build and validate an index; raises :class:`IndexValidationError`."""
    try:
        base_type, rank = normalize_type(base_type, rank)
    except RootSystemError as exc:
        raise IndexValidationError([str(exc)]) from None
    idx = TitsIndex(CartanDatum.of(base_type, rank), g, frozenset(distinguished), degree, name)
    problems = validate(idx)
    if problems:
        raise IndexValidationError(problems)
    return idx


# --- validation -------------------------------------------------------------


def validate(index: TitsIndex) -> list[str]:
    """All violated index invariants; the empty list means valid."""
    out: list[str] = []
    datum = index.datum
    n, t = datum.rank, datum.base_type
    bad = sorted(v for v in index.distinguished if not 1 <= v <= n)
    if bad:
        out.append(f"vertices {bad} outside 1..{n}")
    if index.g not in (1, 2, 3, 6):
        out.append(f"g={index.g} is not one of 1, 2, 3, 6")
        return out
    try:
        gens = action_generators(datum, index.g)
    except ValueError:
        out.append(f"g={index.g} invalid for {datum.name}")
        return out
    for p in gens:
        if not is_automorphism(datum, p):  # pragma: no cover - canonical generators
            out.append(f"{perm_cycles(p)} is not a diagram automorphism")
    if len(generated_group(gens, n)) != index.g:  # pragma: no cover
        out.append(f"action image has order {len(generated_group(gens, n))}, not {index.g}")
    if bad:
        return out
    group = generated_group(gens, n)
    broken = sorted(
        {v for v in index.distinguished for p in group if p[v - 1] not in index.distinguished}
    )
    if broken:
        out.append(f"distinguished set not closed under the *-action (orbit of {broken} broken)")
    if index.degree is not None:
        out.extend(_degree_violations(index))
    return out


def _degree_violations(index: TitsIndex) -> list[str]:
    d = index.degree
    t, n = index.base_type, index.rank
    if not isinstance(d, int) or d < 1:
        return [f"degree must be a positive integer, got {d!r}"]
    if t not in "ACD":
        return [f"degree is only meaningful for types A, C, D, not {t}"]
    if t == "A" and index.is_inner:
        if (n + 1) % d:
            return [f"degree {d} does not divide n+1 = {n + 1}"]
        r = (n + 1) // d - 1
        want = frozenset(d * i for i in range(1, r + 1))
        if index.distinguished != want:
            return [f"degree {d} requires distinguished vertices {sorted(want)}"]
        return []
    inferred = _infer_degree(index)
    if inferred is not None and inferred != d:
        return [f"declared degree {d} disagrees with circle pattern (degree {inferred})"]
    if inferred is None and index.distinguished:
        return [f"degree {d} inconsistent with distinguished vertices {sorted(index.distinguished)}"]
    return []


# --- parsing and formatting -------------------------------------------------


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while self.peek().isspace():
            self.pos += 1

    def fail(self, expected: str):
        found = self.peek() or "end of input"
        raise IndexSyntaxError(f"unexpected {found!r}", self.pos, expected)

    def expect(self, ch: str) -> None:
        self.skip_ws()
        if self.peek() != ch:
            self.fail(repr(ch))
        self.pos += 1

    def accept(self, ch: str) -> bool:
        self.skip_ws()
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def integer(self, what: str = "integer") -> int:
        self.skip_ws()
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail(what)
        return int(self.text[start:self.pos])


def _parse(text: str) -> tuple[str, int, int, list[int], int | None, list[list[list[int]]]]:
    s = _Scanner(text.strip())
    s.expect("^")
    s.skip_ws()
    if s.peek() not in ("1", "2", "3", "6") or s.peek() == "":
        s.fail("one of 1, 2, 3, 6")
    g = int(s.peek())
    s.pos += 1
    s.skip_ws()
    t = s.peek()
    if t == "" or t not in "ABCDEFG":
        s.fail("type letter A-G")
    s.pos += 1
    rank = s.integer("rank")
    degree = None
    if s.accept("("):
        degree = s.integer("degree")
        s.expect(")")
    s.expect(":")
    s.expect("[")
    verts: list[int] = []
    if not s.accept("]"):
        verts.append(s.integer("vertex number"))
        while not s.accept("]"):
            s.expect(",")
            verts.append(s.integer("vertex number"))
    gens: list[list[list[int]]] = []
    if s.accept(":"):
        while True:
            gen: list[list[int]] = []
            s.skip_ws()
            while s.peek() == "(":
                s.pos += 1
                cyc = [s.integer("vertex number")]
                while not s.accept(")"):
                    s.accept(",")
                    cyc.append(s.integer("vertex number"))
                gen.append(cyc)
                s.skip_ws()
            if not gen:
                s.fail("'(' starting a cycle")
            gens.append(gen)
            if not s.accept(","):
                break
    s.skip_ws()
    if s.peek():
        s.fail("end of input")
    return t, rank, g, verts, degree, gens


def parse_index(text: str) -> TitsIndex:
    """Parse and validate index notation.

    >>> str(parse_index("^1A8(3):[6,3]"))
    '^1A8(3):[3,6]'
    """
    t, rank, g, verts, degree, gens = _parse(text)
    try:
        t, rank = normalize_type(t, rank)
    except RootSystemError as exc:
        raise IndexValidationError([str(exc)]) from None
    idx = TitsIndex(CartanDatum.of(t, rank), g, frozenset(verts), degree)
    problems = validate(idx)
    if gens and not problems:
        problems = _perm_violations(idx, gens)
    if problems:
        raise IndexValidationError(problems)
    return idx


def _perm_violations(index: TitsIndex, gens: list[list[list[int]]]) -> list[str]:
    n = index.rank
    if not (index.base_type == "D" and n == 4 and index.g in (3, 6)):
        return ["an explicit permutation is only allowed for D4 with g in {3, 6}"]
    perms = []
    for gen in gens:
        flat = [v for cyc in gen for v in cyc]
        if any(not 1 <= v <= n for v in flat):
            return [f"permutation moves vertices outside 1..{n}"]
        if any(len(set(c)) != len(c) for c in gen):
            return ["a cycle repeats a vertex"]
        perms.append(_cycles_to_perm(gen, n))
    if any(not is_automorphism(index.datum, p) for p in perms):
        return ["permutation is not a diagram automorphism"]
    if generated_group(perms, n) != index.group:
        return [f"permutation does not generate a *-action of order {index.g}"]
    return []


def format_index(index: TitsIndex) -> str:
    """Canonical notation for ``index``."""
    deg = f"({index.degree})" if index.degree is not None else ""
    verts = ",".join(map(str, sorted(index.distinguished)))
    out = f"^{index.g}{index.base_type}{index.rank}{deg}:[{verts}]"
    if index.base_type == "D" and index.rank == 4 and index.g in (3, 6):
        out += ":" + ",".join(perm_cycles(p) for p in index.generators)
    return out


def canonical(text: str) -> str:
    return format_index(parse_index(text))


# --- invariants -------------------------------------------------------------


def anisotropic_kernel(index: TitsIndex) -> list[Component]:
    """Components of the diagram left after deleting the circled vertices."""
    return components(index.datum, index.anisotropic_vertices)


def m_of_G(index: TitsIndex) -> int:
    """Largest number of vertices in a component of the anisotropic kernel."""
    return max((c.rank for c in anisotropic_kernel(index)), default=0)


def k_rank(index: TitsIndex) -> int:
    return len(index.orbits(index.distinguished))


def is_quasi_split(index: TitsIndex) -> bool:
    return not index.anisotropic_vertices


def kernel_permuted(index: TitsIndex) -> bool:
    """True when the *-action exchanges two distinct kernel components."""
    comps = [frozenset(c.vertices) for c in anisotropic_kernel(index)]
    for p in index.generators:
        for c in comps:
            if frozenset(p[v - 1] for v in c) != c:
                return True
    return False


def _infer_degree(index: TitsIndex) -> int | None:
    t, n, g = index.base_type, index.rank, index.g
    dist = index.distinguished
    r = k_rank(index)
    if t == "A" and g == 1:
        if (n + 1) % (r + 1):
            return None
        d = (n + 1) // (r + 1)
        return d if dist == frozenset(d * i for i in range(1, r + 1)) else None
    if t == "A":
        if r == 0:
            return None
        d = min(dist)
        want = {d * i for i in range(1, r + 1)} | {n + 1 - d * i for i in range(1, r + 1)}
        if (n + 1) % d or 2 * r * d > n + 1 or dist != want:
            return None
        return d
    if t == "C":
        if r == 0:
            return None
        d = min(dist)
        if (2 * n) % d or dist != frozenset(d * i for i in range(1, r + 1)):
            return None
        return d
    if t == "D" and g in (1, 2):
        if r == 0:
            return None
        d = min(dist)
        pos = sorted(v for v in dist if v <= n - 2)
        fork = dist & {n - 1, n}
        if len(fork) == 1:
            pos.append(n)
        elif len(fork) == 2:
            pos += [n - 1] if g == 2 else [n - 1, n]
        if (2 * n) % d or pos != [d * i for i in range(1, len(pos) + 1)]:
            return None
        return d
    return None


def division_degree(index: TitsIndex) -> int | None:
    """Declared degree, else the degree read off the circle pattern (A, C, D)."""
    if index.degree is not None:
        return index.degree
    return _infer_degree(index)


# Exceptional indices, keyed by (type, rank, g, circled vertices).
_EXCEPTIONAL = {
    ("G", 2, 1, ()): "G^{14}_{2,0}",
    ("G", 2, 1, (1, 2)): "G^{0}_{2,2}",
    ("F", 4, 1, ()): "F^{52}_{4,0}",
    ("F", 4, 1, (4,)): "F^{21}_{4,1}",
    ("F", 4, 1, (1, 2, 3, 4)): "F^{0}_{4,4}",
    ("E", 6, 1, ()): "^1E^{78}_{6,0}",
    ("E", 6, 1, (1, 6)): "^1E^{28}_{6,2}",
    ("E", 6, 1, (2, 4)): "^1E^{16}_{6,2}",
    ("E", 6, 1, (1, 2, 3, 4, 5, 6)): "^1E^{0}_{6,6}",
    ("E", 6, 2, ()): "^2E^{78}_{6,0}",
    ("E", 6, 2, (2,)): "^2E^{35}_{6,1}",
    ("E", 6, 2, (1, 6)): "^2E^{29}_{6,1}",
    ("E", 6, 2, (1, 2, 6)): "^2E^{16'}_{6,2}",
    ("E", 6, 2, (2, 4)): "^2E^{16''}_{6,2}",
    ("E", 6, 2, (1, 2, 3, 4, 5, 6)): "^2E^{2}_{6,4}",
    ("E", 7, 1, ()): "E^{133}_{7,0}",
    ("E", 7, 1, (7,)): "E^{78}_{7,1}",
    ("E", 7, 1, (1,)): "E^{66}_{7,1}",
    ("E", 7, 1, (6,)): "E^{48}_{7,1}",
    ("E", 7, 1, (1, 6)): "E^{31}_{7,2}",
    ("E", 7, 1, (1, 6, 7)): "E^{28}_{7,3}",
    ("E", 7, 1, (1, 3, 4, 6)): "E^{9}_{7,4}",
    ("E", 7, 1, (1, 2, 3, 4, 5, 6, 7)): "E^{0}_{7,7}",
    ("E", 8, 1, ()): "E^{248}_{8,0}",
    ("E", 8, 1, (8,)): "E^{133}_{8,1}",
    ("E", 8, 1, (1,)): "E^{91}_{8,1}",
    ("E", 8, 1, (7, 8)): "E^{78}_{8,2}",
    ("E", 8, 1, (1, 8)): "E^{66}_{8,2}",
    ("E", 8, 1, (1, 6, 7, 8)): "E^{28}_{8,4}",
    ("E", 8, 1, (1, 2, 3, 4, 5, 6, 7, 8)): "E^{0}_{8,8}",
    ("D", 4, 3, ()): "^3D^{28}_{4,0}",
    ("D", 4, 3, (2,)): "^3D^{9}_{4,1}",
    ("D", 4, 3, (1, 2, 3, 4)): "^3D^{2}_{4,2}",
    ("D", 4, 6, ()): "^6D^{28}_{4,0}",
    ("D", 4, 6, (2,)): "^6D^{9}_{4,1}",
    ("D", 4, 6, (1, 2, 3, 4)): "^6D^{2}_{4,2}",
}


def anisotropic_dimension(index: TitsIndex) -> int:
    """Dimension of the anisotropic kernel including its central torus.

    This is the superscript in the exceptional names: ``2N + n - r`` with
    ``N`` the number of positive kernel roots.
    """
    kernel_roots = sum(
        len(positive_roots(CartanDatum.of(c.base_type, c.rank))) for c in anisotropic_kernel(index)
    )
    return 2 * kernel_roots + index.rank - k_rank(index)


def tits_name(index: TitsIndex) -> str | None:
    """Tits's name for the index when its shape is recognized, else None."""
    t, n, g = index.base_type, index.rank, index.g
    key = (t, n, g, tuple(sorted(index.distinguished)))
    if key in _EXCEPTIONAL:
        return _EXCEPTIONAL[key]
    if t in "EFG" or (t == "D" and g in (3, 6)):
        return None
    r = k_rank(index)
    if t == "B":
        if index.distinguished != frozenset(range(1, r + 1)):
            return None
        return f"B_{{{n},{r}}}"
    d = division_degree(index)
    if d is None:
        return None
    prefix = "" if t == "C" else f"^{g}"
    return f"{prefix}{t}^{{({d})}}_{{{n},{r}}}"
