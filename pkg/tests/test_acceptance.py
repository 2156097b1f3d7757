"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python3 -m tests.test_acceptance``.
"""
from __future__ import annotations

import time
from fractions import Fraction as Q

from titsrat.centralizer import center_contained, center_of_sc, centralizer_index, commuting_torus
from titsrat.classify import RATIONAL, STABLY_RATIONAL, UNKNOWN, classify, rule_table
from titsrat.intlat import FiniteOrderTorusElement, invariant_factors, torsion_solutions
from titsrat.rootsys import CartanDatum, cartan_matrix, positive_roots
from titsrat.titsindex import canonical, format_index, m_of_G, make_index, parse_index, tits_name

from .fuzz import fuzz_cases
from .golden import GOLDEN
from .oracles import torsion_points

CRITERIA = {
    1: "root counts match closed forms, rank <= 8",
    2: "fundamental groups via SNF, brute-force cross-check rank <= 4",
    3: "A_n middle block: rank-2 torus, center of order n-1, containment (4 <= n <= 12)",
    4: "centralizer worked examples and inner A blocks",
    5: "classifier golden corpus",
    6: "disjointness fuzz, 1000 seeded indices",
    7: "parser round-trip, 50-index corpus",
}


def _types(max_rank: int = 8):
    yield from (("A", n) for n in range(1, max_rank + 1))
    yield from (("B", n) for n in range(2, max_rank + 1))
    yield from (("C", n) for n in range(3, max_rank + 1))
    yield from (("D", n) for n in range(4, max_rank + 1))
    yield from (("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2))


def _closed_form(t: str, n: int) -> int:
    return {
        "A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n), "F": 24, "G": 6,
    }[t]


def test_criterion_1_root_counts():
    for t, n in _types():
        assert len(positive_roots(CartanDatum.of(t, n))) == _closed_form(t, n), (t, n)


def _expected_center(t: str, n: int) -> list[int]:
    if t == "A":
        return [n + 1]
    if t in "BC":
        return [2]
    if t == "D":
        return [2, 2] if n % 2 == 0 else [4]
    return {("E", 6): [3], ("E", 7): [2]}.get((t, n), [])


def test_criterion_2_fundamental_groups():
    for t, n in _types():
        m = cartan_matrix(t, n)
        assert [d for d in invariant_factors(m) if d > 1] == _expected_center(t, n), (t, n)
        gens = torsion_solutions(m)
        assert sorted(z.order for z in gens) == sorted(_expected_center(t, n))
        if n <= 4:
            exponent = max((z.order for z in gens), default=1)
            brute = {tuple(p) for p in torsion_points(m, exponent)}
            group = {FiniteOrderTorusElement((Q(0),) * n)}
            for z in gens:
                group = {a * (z ** k) for a in group for k in range(z.order)}
            assert {g.exponents for g in group} == brute, (t, n)


def test_criterion_3_middle_block():
    for n in range(4, 13):
        datum = CartanDatum.of("A", n)
        J = list(range(2, n))
        torus = commuting_torus(datum, J)
        assert torus.connected_rank == 2 and torus.is_connected
        for b in torus.cocharacter_basis:
            assert all(2 * b[j - 1] == b[j - 2] + b[j] for j in J)
            # t_i = t_2^(i-1) / t_1^(i-2)
            assert all(b[i - 1] == (i - 1) * b[1] - (i - 2) * b[0] for i in range(1, n + 1))
        (z,) = center_of_sc(datum, J)
        assert z.order == n - 1
        assert z.exponents == tuple(Q(i - 1, n - 1) % 1 if i in J else Q(0) for i in range(1, n + 1))
        assert center_contained(datum, J)


def test_criterion_4_centralizer_examples():
    e6 = centralizer_index(parse_index("^1E6:[2,4]"), [4])
    assert [str(c.index) for c in e6.components] == ["^1A5:[3]"]
    assert e6.components[0].labels == (1, 3, 4, 5, 6)
    assert tits_name(e6.components[0].index) == "^1A^{(3)}_{5,1}"

    e7 = centralizer_index(parse_index("^1E7:[1,6]"), [1])
    assert sorted(str(c.index) for c in e7.components) == ["^1A1:[]", "^1D5:[1]"]
    d5 = next(c for c in e7.components if c.index.base_type == "D")
    assert set(d5.labels) == {1, 2, 3, 4, 5} and d5.labels[0] == 1
    assert next(c for c in e7.components if c.index.base_type == "A").labels == (7,)

    for d in (2, 3, 4):
        for r in (1, 2, 3):
            n = d * (r + 1) - 1
            idx = make_index("A", n, 1, {d * i for i in range(1, r + 1)}, d)
            sub = centralizer_index(idx, [])
            assert [(c.index.base_type, c.index.rank, c.index.distinguished) for c in sub.components] == [
                ("A", d - 1, frozenset())
            ] * (r + 1)
            assert [tuple(sorted(c.labels)) for c in sub.components] == [
                tuple(range(i * d + 1, (i + 1) * d)) for i in range(r + 1)
            ]
            assert m_of_G(idx) == d - 1


def test_criterion_5_golden_corpus():
    assert len(GOLDEN) >= 25
    for text, iso, fld, klass, rules in GOLDEN:
        v = classify(parse_index(text), iso, fld)
        assert (v.klass, [rid for rid, _ in v.rules]) == (klass, rules), text
    # m(G) = 4k - 1 for the degree-4k inner A examples
    for text, m in (("^1A7(4):[4]", 3), ("^1A15(8):[8]", 7)):
        idx = parse_index(text)
        assert m_of_G(idx) == m and classify(idx, "simply_connected").klass == "not_stably_rational"


def test_criterion_6_disjointness_fuzz():
    positive = {r.id for r in rule_table() if r.klass in (RATIONAL, STABLY_RATIONAL)}
    for idx, iso, fld in fuzz_cases(1000, seed=20240601):
        v = classify(idx, iso, fld)
        fired = {rid for rid, _ in v.rules}
        assert not ("R11" in fired and fired & positive), (str(idx), iso, fld)
        assert v.klass == UNKNOWN or v.rules, (str(idx), iso, fld)


ROUND_TRIP = [
    ("^1A1:[1]", "^1A1:[1]"),
    ("^1A1:[]", "^1A1:[]"),
    ("^1A8(3):[3,6]", "^1A8(3):[3,6]"),
    ("^1A8(3):[6,3]", "^1A8(3):[3,6]"),
    ("^1A8:[3,6]", "^1A8:[3,6]"),
    ("^1A7(4):[4]", "^1A7(4):[4]"),
    ("^1A15(8):[8]", "^1A15(8):[8]"),
    ("^1A3(4):[]", "^1A3(4):[]"),
    ("^1A5:[2,4]", "^1A5:[2,4]"),
    ("^1A5:[4,2,4]", "^1A5:[2,4]"),
    ("^2A4:[1,4]", "^2A4:[1,4]"),
    ("^2A4:[4,1]", "^2A4:[1,4]"),
    ("^2A5:[1,5]", "^2A5:[1,5]"),
    ("^2A7:[2,6]", "^2A7:[2,6]"),
    ("^2A7(2):[2,4,6]", "^2A7(2):[2,4,6]"),
    ("^2A9:[2,8]", "^2A9:[2,8]"),
    ("^2A6:[1,2,5,6]", "^2A6:[1,2,5,6]"),
    ("^1B2:[1]", "^1B2:[1]"),
    ("^1B5:[1,2]", "^1B5:[1,2]"),
    ("^1B8:[1,2,3,4,5,6,7,8]", "^1B8:[1,2,3,4,5,6,7,8]"),
    ("^1C4:[2,4]", "^1C4:[2,4]"),
    ("^1C4(2):[2,4]", "^1C4(2):[2,4]"),
    ("^1C6:[2,4,6]", "^1C6:[2,4,6]"),
    ("^1D4:[2,4]", "^1D4:[2,4]"),
    ("^1D5:[2]", "^1D5:[2]"),
    ("^1D6:[2,4,6]", "^1D6:[2,4,6]"),
    ("^2D5:[1,2,3]", "^2D5:[1,2,3]"),
    ("^2D6:[1,2]", "^2D6:[1,2]"),
    ("^2D8:[2,4,6]", "^2D8:[2,4,6]"),
    ("^1D3:[1,3]", "^1A3:[1,3]"),
    ("^3D4:[2]", "^3D4:[2]:(1 3 4)"),
    ("^3D4:[2]:(1 3 4)", "^3D4:[2]:(1 3 4)"),
    ("^3D4:[2]:(1 4 3)", "^3D4:[2]:(1 3 4)"),
    ("^3D4:[1,2,3,4]", "^3D4:[1,2,3,4]:(1 3 4)"),
    ("^6D4:[2]", "^6D4:[2]:(1 3 4),(3 4)"),
    ("^6D4:[2]:(3 4),(1 3 4)", "^6D4:[2]:(1 3 4),(3 4)"),
    ("^6D4:[1,2,3,4]:(1 3 4),(3 4)", "^6D4:[1,2,3,4]:(1 3 4),(3 4)"),
    ("^1E6:[2,4]", "^1E6:[2,4]"),
    ("^1E6:[1,2,3,4,5,6]", "^1E6:[1,2,3,4,5,6]"),
    ("^2E6:[2,4]", "^2E6:[2,4]"),
    ("^2E6:[1,6,2]", "^2E6:[1,2,6]"),
    ("^2E6:[]", "^2E6:[]"),
    ("^1E7:[1]", "^1E7:[1]"),
    ("^1E7:[6,1]", "^1E7:[1,6]"),
    ("^1E7:[7]", "^1E7:[7]"),
    ("^1E8:[1,6,7,8]", "^1E8:[1,6,7,8]"),
    ("^1E8:[]", "^1E8:[]"),
    ("^1F4:[4]", "^1F4:[4]"),
    ("^1G2:[1,2]", "^1G2:[1,2]"),
    (" ^1 G2 : [ 2 , 1 ] ", "^1G2:[1,2]"),
]


def test_criterion_7_parser_round_trip():
    assert len(ROUND_TRIP) == 50
    for text, canon in ROUND_TRIP:
        idx = parse_index(text)
        assert format_index(idx) == canon == canonical(text), text
        assert parse_index(format_index(idx)) == idx


TESTS = {
    1: test_criterion_1_root_counts,
    2: test_criterion_2_fundamental_groups,
    3: test_criterion_3_middle_block,
    4: test_criterion_4_centralizer_examples,
    5: test_criterion_5_golden_corpus,
    6: test_criterion_6_disjointness_fuzz,
    7: test_criterion_7_parser_round_trip,
}


def main() -> int:
    failed = 0
    for k, fn in TESTS.items():
        start = time.perf_counter()
        try:
            fn()
            status = "PASS"
        except AssertionError as exc:
            status, failed = f"FAIL ({exc})", failed + 1
        print(f"criterion {k}: {status}  {CRITERIA[k]}  [{time.perf_counter() - start:.2f}s]")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
