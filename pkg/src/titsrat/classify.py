"""Rule table mapping (index, isogeny, field) to a rationality verdict.

Each verdict reports the strongest class guaranteed by a fired rule; where
only "rational or stably rational" is known the engine says
``stably_rational`` and never upgrades.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .titsindex import (
    FieldContext,
    IsogenyTag,
    TitsIndex,
    anisotropic_kernel,
    division_degree,
    k_rank,
    kernel_permuted,
    m_of_G,
    tits_name,
)

RATIONAL = "rational"
STABLY_RATIONAL = "stably_rational"
NOT_STABLY_RATIONAL = "not_stably_rational"
UNKNOWN = "unknown"

_STRENGTH = {RATIONAL: 3, STABLY_RATIONAL: 2, NOT_STABLY_RATIONAL: 1, UNKNOWN: 0}

SC = IsogenyTag.SIMPLY_CONNECTED
AD = IsogenyTag.ADJOINT


@dataclass(frozen=True)
class Facts:
    """Everything a rule may look at, derived from the index alone."""

    index: TitsIndex
    isogeny: IsogenyTag
    field: FieldContext
    base_type: str
    n: int
    g: int
    r: int
    m: int
    d: int | None
    kernel: tuple[tuple[str, int], ...]
    name: str | None

    @classmethod
    def of(cls, index: TitsIndex, isogeny, field) -> Facts:
        return cls(
            index,
            IsogenyTag(isogeny),
            FieldContext(field),
            index.base_type,
            index.rank,
            index.g,
            k_rank(index),
            m_of_G(index),
            division_degree(index),
            tuple((c.base_type, c.rank) for c in anisotropic_kernel(index)),
            tits_name(index),
        )

    @property
    def inner_a(self) -> bool:
        return self.base_type == "A" and self.g == 1

    @property
    def outer_a(self) -> bool:
        return self.base_type == "A" and self.g == 2

    @property
    def isotropic(self) -> bool:
        return self.r > 0

    def circles(self, *vs: int) -> bool:
        return self.index.distinguished == frozenset(vs)


@dataclass(frozen=True)
class Rule:
    id: str
    predicate: str
    klass: str | None  # None for isogeny-invariance notes
    citation: str
    fires: Callable[[Facts], str | None] = field(repr=False, compare=False)


def _when(klass: str, test: Callable[[Facts], bool]) -> Callable[[Facts], str | None]:
    return lambda f: klass if test(f) else None


def _r7(f: Facts) -> str | None:
    if not f.isotropic:
        return None
    t, n = f.base_type, f.n
    if t == "E" and n == 6 and f.g == 1:
        return STABLY_RATIONAL
    if t == "E" and n == 6 and f.g == 2 and f.r >= 2:
        if f.circles(2, 4) and f.isogeny is not AD:  # ^2E^{16''}_{6,2}
            return None
        return STABLY_RATIONAL
    if t == "E" and n == 7 and f.r == 1 and f.circles(1):  # E^{66}_{7,1}
        return RATIONAL if f.isogeny is SC else None
    if t == "E" and n == 7 and f.r >= 2:
        if f.circles(1, 6) and f.isogeny is not SC:  # E^{31}_{7,2}
            return None
        return STABLY_RATIONAL
    if t == "E" and n == 8 and f.r >= 3:
        return STABLY_RATIONAL
    return None


def _thm41(f: Facts) -> bool:
    if not f.isotropic:
        return False
    t, n, d, r = f.base_type, f.n, f.d, f.r
    if f.inner_a:
        return d is not None and d <= 3
    if t == "B":
        return True
    if t == "C":
        return d is not None and d <= 2 and n - d * r <= 2
    if t == "D" and f.g in (1, 2):
        return (d == 1 and n <= r + 2) or (d == 2 and n <= 2 * r + 1)
    return False


def padic_excluded(f: Facts) -> bool:
    """The families left open over p-adic fields (matched literally)."""
    if f.inner_a and (f.d is None or f.d >= 4):
        return True
    if f.isogeny is SC and f.base_type == "D" and f.d == 2:
        if f.g == 1 and f.n == 2 * f.r + 3:
            return True
        if f.g == 2 and f.n == 2 * f.r + 2 and f.r % 2 == 1:
            return True
    return False


def not_real(f: Facts) -> bool:
    """Indices that cannot occur over R (division algebras there have degree <= 2)."""
    return (f.d is not None and f.d > 2) or (f.inner_a and f.d is None)


RULES: tuple[Rule, ...] = (
    Rule(
        "R1", "quasi-split (m(G) = 0), any field and isogeny", RATIONAL,
        "Introduction: \"trivial cases of split and quasi-split groups\"",
        _when(RATIONAL, lambda f: f.m == 0),
    ),
    Rule(
        "R2", "m(G) <= 2 over a general field", STABLY_RATIONAL,
        "Thm 4.4a: \"If $m(G) \\le 2$ then G is either rational or stably rational over k\"",
        _when(STABLY_RATIONAL, lambda f: f.m <= 2 and f.field is FieldContext.GENERAL),
    ),
    Rule(
        "R3", "adjoint inner A, isotropic, degree 2 or 3", RATIONAL,
        "Remark 2.5a: \"rational over k if it is adjoint\"",
        _when(RATIONAL, lambda f: f.inner_a and f.isogeny is AD and f.d in (2, 3) and f.isotropic),
    ),
    Rule(
        "R4", "isotropic outer A with degree 1 and n even, simply connected or adjoint", RATIONAL,
        "Prop 2.3b: \"If G is above and n is even then G is k-rational\"",
        _when(
            RATIONAL,
            lambda f: f.outer_a and f.d == 1 and f.n % 2 == 0 and f.isotropic
            and f.isogeny in (SC, AD),
        ),
    ),
    Rule(
        "R5",
        "isotropic of type 1A^(d) d<=3; B; C^(d)_{n,r} n-dr<=2 d<=2; "
        "D^(d)_{n,r} d<=2 with n<=r+2 (d=1), n<=2r+1 (d=2); general field",
        STABLY_RATIONAL,
        "Thm 4.1: \"Then G is either rational or stably rational over k\"",
        _when(STABLY_RATIONAL, lambda f: f.field is FieldContext.GENERAL and _thm41(f)),
    ),
    Rule(
        "R6", "isotropic of type D4 (any g), F4 or G2", RATIONAL,
        "Thm 4.2a: \"of type ${\\rm D}_4, {\\rm F}, {\\rm G}$ then G is k-rational\"",
        _when(
            RATIONAL,
            lambda f: f.isotropic and ((f.base_type == "D" and f.n == 4) or f.base_type in "FG"),
        ),
    ),
    Rule(
        "R7",
        "isotropic 1E6; 2E6 r>=2 (adjoint for 2E^{16''}_{6,2}); E^{66}_{7,1} simply connected "
        "(rational); E7 r>=2 (simply connected for E^{31}_{7,2}); E8 r>=3",
        STABLY_RATIONAL,
        "Thm 4.2b: \"Then G is either k-rational or stably rational over k\"; "
        "proof: \"simply connected of type ${\\rm E}^{66}_{7,1}$ then G is rational\"",
        _r7,
    ),
    Rule(
        "R8", "adjoint over a p-adic field", RATIONAL,
        "Thm 3.2a: \"If G is adjoint then G is k-rational\"",
        _when(RATIONAL, lambda f: f.field is FieldContext.PADIC and f.isogeny is AD),
    ),
    Rule(
        "R9",
        "p-adic field, not inner A with d>=4, not simply connected 1D^(2)_{2r+3,r}, "
        "not simply connected 2D^(2)_{2r+2,r} with r odd",
        STABLY_RATIONAL,
        "Thm 3.2b: \"then G is rational or stably rational over k\"",
        _when(STABLY_RATIONAL, lambda f: f.field is FieldContext.PADIC and not padic_excluded(f)),
    ),
    Rule(
        "R10", "real field, not anisotropic of type E6/E7/E8", STABLY_RATIONAL,
        "Prop 3.5: \"no anisotropic factors of types ${\\rm E}_i$\"",
        _when(
            STABLY_RATIONAL,
            lambda f: f.field is FieldContext.REAL
            and not (f.base_type == "E" and not f.isotropic)
            and not not_real(f),
        ),
    ),
    Rule(
        "R11", "simply connected inner A with degree divisible by 4", NOT_STABLY_RATIONAL,
        "Thm 4.4b: \"non stably rational groups G\"; Remark 2.5c: "
        "\"divisible by 4 then $G$ is not stably rational\"",
        _when(
            NOT_STABLY_RATIONAL,
            lambda f: f.inner_a and f.isogeny is SC and f.d is not None and f.d % 4 == 0,
        ),
    ),
    Rule(
        "N1", "isotropic outer A with degree 1 and n odd: isogenous groups are birational", None,
        "Prop 2.3c: \"also k-birationally isomorphic\"",
        lambda f: "note" if f.outer_a and f.d == 1 and f.n % 2 == 1 and f.isotropic else None,
    ),
    Rule(
        "N2", "E^{78}_{7,1}: isogenous groups are birational", None,
        "Thm 4.2c: \"the case ${\\rm E}_{7,1}^{78}$\"",
        lambda f: "note" if f.base_type == "E" and f.n == 7 and f.circles(7) else None,
    ),
)


def rule_table() -> list[Rule]:
    return list(RULES)


@dataclass(frozen=True)
class Verdict:
    klass: str
    rules: tuple[tuple[str, str], ...] = ()  # (rule id, citation) of every fired rule
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "class": self.klass,
            "rules": [{"id": i, "cite": c} for i, c in self.rules],
            "notes": list(self.notes),
        }


def fired_rules(index: TitsIndex, isogeny, field) -> list[tuple[Rule, str]]:
    f = Facts.of(index, isogeny, field)
    return [(rule, out) for rule in RULES if (out := rule.fires(f)) is not None]


def classify(
    index: TitsIndex,
    isogeny: IsogenyTag | str = IsogenyTag.OTHER,
    field: FieldContext | str = FieldContext.GENERAL,
) -> Verdict:
    """Evaluate the rule table; unmatched shapes are ``unknown``."""
    f = Facts.of(index, isogeny, field)
    fired = fired_rules(index, isogeny, field)
    classes = [out for rule, out in fired if rule.klass is not None]
    positive = [c for c in classes if c in (RATIONAL, STABLY_RATIONAL)]
    if positive:
        klass = max(positive, key=_STRENGTH.__getitem__)
    elif NOT_STABLY_RATIONAL in classes:
        klass = NOT_STABLY_RATIONAL
    else:
        klass = UNKNOWN
    notes = [f"{rule.id}: {rule.predicate}" for rule, _ in fired if rule.klass is None]
    if f.inner_a and f.isogeny is AD and f.d is not None and f.d % 4 == 0:
        notes.append("adjoint groups of this shape that are not stably rational exist over some fields")
    rules = tuple((rule.id, rule.citation) for rule, _ in fired)
    return Verdict(klass, rules, tuple(notes))


def warnings(index: TitsIndex, field: FieldContext | str = FieldContext.GENERAL) -> list[str]:
    """Caveats about the input that do not change the verdict."""
    f = Facts.of(index, IsogenyTag.SIMPLY_CONNECTED, field)
    out = []
    if kernel_permuted(index):
        out.append(
            "the *-action permutes anisotropic kernel components; m(G) counts "
            "diagram components, not k-defined segments"
        )
    if f.base_type == "D" and f.g == 1 and f.d == 2 and f.n == 2 * f.r + 3:
        out.append(
            "matches the p-adic exclusion 1D^(2)_{2r+3,r} as printed, although that "
            "family has odd rank; it is excluded literally"
        )
    if f.field is FieldContext.REAL and not_real(f):
        out.append("index cannot occur over the reals: no division algebra of this degree")
    if f.inner_a and f.d is None:
        out.append("inner type A circle pattern does not determine a division degree")
    return out
