from __future__ import annotations

import pytest

from hyperloci import grouptheory as gt
from hyperloci.exactnum import CycNum, zeta

# group orders from an independent coset enumerator (frozen), n = 2..10
ORACLE_ORDERS = {
    "V": [8, 6, 16, 10, 24, 14, 32, 18, 40],
    "H": [8, 12, 16, 20, 24, 28, 32, 36, 40],
    "G": [8, 12, 16, 20, 24, 28, 32, 36, 40],
    "U": [8, 6, 16, 10, 24, 14, 32, 18, 40],
    "U_printed": [4, 6, 8, 10, 12, 14, 16, 18, 20],
}


def matrix_quaternion(n: int) -> gt.FiniteGroup:
    """Generalized quaternion group of order 4n as 2x2 matrices, built without any presentation."""
    z = zeta(2 * n)
    zero, one = CycNum.rational(0), CycNum.rational(1)
    a = (z, zero, zero, z.inverse())
    b = (zero, -one, one, zero)
    ident = (one, zero, zero, one)

    def mul(p, q):
        return (p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3],
                p[2] * q[0] + p[3] * q[2], p[2] * q[1] + p[3] * q[3])

    return gt.from_elements(ident, [a, b], mul)


def test_parse_word():
    assert gt.parse_word("x^2*y^-1") == [1, 1, -2]
    assert gt.parse_word("(x*y)^2") == [1, 2, 1, 2]
    assert gt.parse_word("(x^-1*y)^-1") == [-2, 1]


@pytest.mark.parametrize("family", ["V", "H", "G", "U"])
def test_presentation_orders_match_oracle(family):
    got = [gt.construct(family, n).order for n in range(2, 11)]
    assert got == ORACLE_ORDERS[family]


def test_printed_presentation_orders():
    got = [gt.coset_enumerate(gt.presentation("U", n, printed=True)).order for n in range(2, 11)]
    assert got == ORACLE_ORDERS["U_printed"]
    assert gt.coset_enumerate(gt.presentation("W3", printed=True)).order == 24


@pytest.mark.parametrize("family,order", [("W2", 48), ("W3", 48), ("SL2(3)", 24), ("GL2(3)", 48),
                                          ("SL2(5)", 120), ("Z2xA4", 24), ("Z2xS4", 48), ("Z2xA5", 120)])
def test_fixed_orders(family, order):
    assert gt.construct(family).order == order


def test_cayley_table_is_a_group():
    G = gt.construct("W2")
    n = G.order
    for a in range(0, n, 5):
        for b in range(0, n, 7):
            for c in range(0, n, 11):
                assert G.prod(G.prod(a, b), c) == G.prod(a, G.prod(b, c))
    assert all(G.prod(0, g) == g == G.prod(g, 0) for g in range(n))
    inv = G.inverses
    assert all(G.prod(g, inv[g]) == 0 for g in range(n))


def test_coset_overflow():
    with pytest.raises(gt.kernels.CosetOverflow):
        gt.coset_enumerate(gt.Presentation.parse("x^2, y^3"), cap=500)


def test_invariants_and_centers():
    Z2xZ4 = gt.construct("H", 2)
    assert Z2xZ4.abelian_invariants() == (2, 4)
    assert gt.construct("SL2(3)").center_order() == 2
    assert gt.construct("D", 8).center_order() == 2
    assert gt.cyclic(12).abelian_invariants() == (4, 3) or gt.cyclic(12).abelian_invariants() == (12,)
    assert sorted(gt.construct("Q", 2).element_orders) == [1, 2, 4, 4, 4, 4, 4, 4]


@pytest.mark.parametrize("a,b", [(("H", 2), ("Z2xZ", 4)), (("U", 2), ("Z2xZ", 4)), (("V", 2), ("D", 8)),
                                 (("Z2xD", 5), ("Z2xD", 5))])
def test_isomorphic_pairs(a, b):
    assert gt.is_isomorphic(gt.construct(*a), gt.construct(*b)) is True


@pytest.mark.parametrize("n", [2, 4, 8])
def test_G_against_matrix_quaternions(n):
    Q = matrix_quaternion(n)
    assert Q.order == 4 * n
    assert gt.is_isomorphic(gt.construct("G", n), Q) is True
    assert gt.is_isomorphic(gt.construct("Q", n), Q) is True


def test_H_G_isomorphic_exactly_for_odd_n():
    for n in range(2, 9):
        same = gt.is_isomorphic(gt.construct("H", n), gt.construct("G", n))
        assert same is (n % 2 == 1), n


def test_non_isomorphic_same_order():
    assert gt.is_isomorphic(gt.construct("Q", 2), gt.construct("D", 8)) is False
    assert gt.is_isomorphic(gt.construct("SL2(3)"), gt.construct("Z2xA4")) is False


def test_explicit_dihedral_subgroup_of_V10():
    # r of order 4 and an involution s outside <r> with s r s = r^-1 generate a copy of D[8]
    V = gt.construct("V", 10)
    orders, inv = V.element_orders, V.inverses
    found = None
    for r in range(V.order):
        if orders[r] != 4:
            continue
        cyc_r = V.subgroup_closure([r])
        for s in range(V.order):
            if orders[s] == 2 and s not in cyc_r and V.prod(V.prod(s, r), s) == inv[r]:
                found = (r, s)
                break
        if found:
            break
    assert found is not None
    assert len(V.subgroup_closure(list(found))) == 8
    assert gt.find_monomorphism(gt.construct("D", 8), V) is not None


@pytest.mark.parametrize("small", [("Q", 2), ("Z2xZ", 4), ("Z", 8)])
def test_no_embedding_into_V10(small):
    assert gt.find_monomorphism(gt.construct(*small), gt.construct("V", 10)) is None


def test_monomorphism_is_injective_homomorphism():
    H, G = gt.construct("D", 8), gt.construct("GL2(3)")
    images = gt.find_monomorphism(H, G)
    assert images is not None
    phi = gt.kernels.extend_hom(H.right_tables(H.gens), G.mul, list(images), H.order, G.order)
    assert phi is not None and len(set(phi)) == H.order
    for a in range(H.order):
        for b in range(H.order):
            assert phi[H.prod(a, b)] == G.prod(phi[a], phi[b])


def test_budget_exhaustion_is_undetermined():
    H5, G5 = gt.construct("H", 5), gt.construct("G", 5)
    res = gt.is_isomorphic(H5, G5, budget=1)
    assert res is gt.UNDETERMINED and not res
    assert gt.is_isomorphic(H5, G5) is True
    # different fingerprints are decided without any search
    assert gt.is_isomorphic(gt.construct("H", 8), gt.construct("G", 8), budget=1) is False


def test_display_names():
    assert gt.display_name("D", 16, 16) == "D[16]"
    assert gt.display_name("Z2xD", 5, 20) == "Z2xD[10]"
    assert gt.display_name("Q", 4, 16) == "Q16"
