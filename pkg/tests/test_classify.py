from __future__ import annotations

import json
from collections import Counter
from fractions import Fraction

import pytest

from hyperloci import classify as cl
from hyperloci import grouptheory as gt


def test_genus_two_matches_classical_list():
    # automorphism groups of genus-2 curves: Z2, V4, D8, D12, Z10, Z3 x| D8 (order 24), GL2(3)
    rows = cl.enumerate_loci(2)
    assert sorted(r.order for r in rows) == [2, 4, 8, 10, 12, 24, 48]
    by_order = {r.order: r.group() for r in rows}
    assert gt.is_isomorphic(by_order[4], gt.construct("Z2xZ", 2))
    assert gt.is_isomorphic(by_order[8], gt.construct("D", 8))
    assert gt.is_isomorphic(by_order[12], gt.construct("D", 12))
    assert gt.is_isomorphic(by_order[10], gt.cyclic(10))
    assert gt.is_isomorphic(by_order[48], gt.construct("GL2(3)"))
    # Z3 x| D8 built from permutations: the rotation of the square inverts Z3, reflections fix it
    comp = lambda p, q: tuple(p[i] for i in q)
    c3, rot, ref = (1, 2, 0, 3, 4, 5, 6), (0, 2, 1, 4, 5, 6, 3), (0, 1, 2, 3, 6, 5, 4)
    semi = gt.from_elements(tuple(range(7)), [c3, rot, ref], comp)
    assert semi.order == 24 and gt.is_isomorphic(by_order[24], semi)


def test_genus_four_rows():
    rows = cl.enumerate_loci(4)
    assert len(rows) == 12
    assert Counter(r.delta for r in rows) == {7: 1, 4: 1, 3: 1, 2: 2, 1: 3, 0: 4}
    names = [r.display for r in rows]
    assert names == ["Z2", "Z2xZ2", "Z4", "Z6", "D[8]", "G2", "D[16]", "Z2xD[10]", "Z18", "SL2(3)", "U8", "V10"]


@pytest.mark.parametrize("g", range(2, 31))
def test_riemann_hurwitz_all_rows(g):
    for r in cl.enumerate_loci(g):
        total = sum(k * (e - 1) for e, k in r.signature)
        assert 2 * g - 2 == -2 * r.order + total
        assert r.delta == r.r - 3
        if r.case:
            assert cl.derived_dimension(r.case, r.reduced_n, g) == cl.dimension(r.case, r.reduced_n, g)


def test_signature_row_one_genus_two():
    row = cl.signature(1, 2, 2)
    assert row.family == "Z2xZ" and row.order == 4 and row.delta == 2
    assert sorted(row.signature) == [(2, 2)] * 5


def test_admissibility_reasons():
    assert cl.admissibility_failure(13, None, 4) == "delta not integral"
    assert cl.admissibility_failure(15, None, 6) == "constraint delta != 0 violated"
    assert cl.admissibility_failure(1, 5, 4) == "constraint n < g+1 violated"
    assert cl.admissibility_failure(8, 2, 2) is not None
    assert cl.admissibility_failure(7, 3, 5) == "parity rule (n even) violated"
    assert cl.admissibility_failure(99, None, 4) == "unknown case 99"
    assert cl.admissibility_failure(2, None, 4) == "parameter n required"
    assert cl.admissibility_failure(10, None, 5) is None


def test_strict_parity_drops_odd_dihedral_products():
    loose = {(r.case, r.reduced_n) for r in cl.enumerate_loci(6, dedupe=False)}
    strict = {(r.case, r.reduced_n) for r in cl.enumerate_loci(6, strict_parity=True, dedupe=False)}
    assert strict < loose
    assert all(case != 4 or n % 2 == 0 for case, n in strict)


def test_dimension_formulas_exact():
    assert cl.dimension(5, 4, 5) == Fraction(1)
    assert cl.dimension(8, 4, 6) == Fraction(1)
    assert cl.dimension(13, None, 4) == Fraction(1, 3)
    with pytest.raises(ValueError):
        cl.dimension(2, None, 4)


def test_root_row():
    r = cl.root_row(3)
    assert r.order == 2 and r.delta == 5 and r.signature == [(2, 1)] * 8
    assert cl.rh_verify(r)


def test_count_formulas_genus_four():
    rep = cl.count_formulas(4)
    assert rep.formulas["n1"] == 8 and rep.formulas["n2"] == 5
    assert rep.enumerated["Z"] == 5 and rep.enumerated["D"] == 6
    assert rep.notes  # discrepancy reported, not asserted away


def test_divisor_counts():
    assert [cl.div(n) for n in (1, 6, 12)] == [1, 4, 6]
    assert [cl.ddiv(n) for n in (1, 6, 12)] == [0, 2, 4]


def test_rows_to_json_round_trip():
    doc = json.loads(cl.rows_to_json(cl.enumerate_loci(3)))
    assert all(d["r"] == len(d["signature"]) for d in doc)
    assert doc[0]["group"]["display"] == "Z2"
