from __future__ import annotations

import cmath
import random
from fractions import Fraction

import mpmath
import pytest

from hyperloci.exactnum import (
    I, OMEGA, SQRT3, SQRT5, ConductorError, CycNum, ParseError, conductor_lcm, cyc, cyc_approx,
    find_in_span, parse_cyc, render, totient, zeta,
)


def rand_cyc(rng: random.Random, m: int) -> CycNum:
    return CycNum(m, [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(totient(m))])


def close(a: CycNum, z: complex) -> bool:
    return abs(complex(cyc_approx(a, 40)) - z) < 1e-12


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 8, 12, 15, 20, 24, 60])
def test_zeta_is_primitive_root(m):
    z = zeta(m)
    assert z ** m == 1
    for k in range(1, m):
        if m % k == 0:
            assert z ** k != 1
    assert close(z, cmath.exp(2j * cmath.pi / m))


def test_named_constants_numeric():
    # oracle: floating point values of the constants
    assert close(I, 1j)
    assert close(SQRT3, 3 ** 0.5)
    assert close(SQRT5, 5 ** 0.5)
    assert close(OMEGA, (5 ** 0.5 - 1) / 2)
    assert SQRT3 * SQRT3 == 3 and SQRT5 * SQRT5 == 5 and I * I == -1
    assert OMEGA * OMEGA + OMEGA - 1 == 0


@pytest.mark.parametrize("m", [3, 4, 5, 12, 20, 60])
def test_field_axioms_random(m):
    rng = random.Random(m)
    for _ in range(20):
        a, b, c = rand_cyc(rng, m), rand_cyc(rng, m), rand_cyc(rng, m)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a - a == 0
        if a:
            assert a * a.inverse() == 1
            assert (b / a) * a == b


def test_mixed_conductors_agree_numerically():
    rng = random.Random(7)
    for _ in range(30):
        a, b = rand_cyc(rng, 12), rand_cyc(rng, 20)
        s, p = a + b, a * b
        assert s.m in (60, 1) or 60 % s.m == 0
        za, zb = complex(a.approx(30)), complex(b.approx(30))
        assert close(s, za + zb) and close(p, za * zb)


def test_canonical_restricts_conductor():
    assert (zeta(12) ** 4).canonical().m == 3
    assert (SQRT3 * SQRT3).canonical().m == 1
    assert cyc(Fraction(3, 7)).to_fraction() == Fraction(3, 7)
    with pytest.raises(ValueError):
        I.to_fraction()


def test_equality_and_hash_across_embeddings():
    a = zeta(4)
    b = a.embed(12)
    assert a == b and hash(a) == hash(b)
    assert len({a, b, I}) == 1


def test_galois_conjugation():
    # sqrt5 = 1 + 2*(z5 + z5^4); the automorphism z5 -> z5^2 negates it
    assert SQRT5.embed(5).galois(2) == -SQRT5
    assert I.galois(3) == -I
    assert (SQRT3 * I).conjugate() == -SQRT3 * I


@pytest.mark.parametrize("text", ["2*I*sqrt3", "-6*I*sqrt3", "1728", "3/7 - sqrt5", "(1 + sqrt5)/2", "z5^3"])
def test_render_parse_round_trip(text):
    a = parse_cyc(text)
    assert parse_cyc(render(a)) == a


def test_render_known_forms():
    assert render(parse_cyc("-6*I*sqrt3")) == "-6*I*sqrt3"
    assert render(Fraction(-1, 2)) == "-1/2"
    assert render(0) == "0"


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_cyc("2 + ")
    with pytest.raises(ParseError):
        parse_cyc("2 $ 3")
    with pytest.raises(ZeroDivisionError):
        parse_cyc("1/0")


def test_bad_conductor():
    with pytest.raises(ConductorError):
        CycNum(5, [1, 2])
    with pytest.raises(ConductorError):
        zeta(0)


def test_find_in_span():
    coords = find_in_span(3 + 2 * SQRT3 * I, [cyc(1), SQRT3 * I])
    assert coords == [3, 2]
    assert find_in_span(SQRT5, [cyc(1), I]) is None


def test_conductor_lcm_and_approx_digits():
    assert conductor_lcm([I, SQRT3, 2]) == 12
    with mpmath.workdps(50):
        assert abs(cyc_approx(SQRT5, 50).real - mpmath.sqrt(5)) < mpmath.mpf(10) ** -45
