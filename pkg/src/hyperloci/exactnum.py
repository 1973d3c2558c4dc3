"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored densely as integer numerators over a common positive
denominator, modulo the m-th cyclotomic polynomial.  Rationals are the
conductor-1 case.  Mixed-conductor operands are embedded into the lcm
conductor before combining.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import mpmath

from . import kernels

Rat = Fraction

DIGITS_CAP = 60


class ExactArithmeticError(ArithmeticError):
    pass


class ConductorError(ValueError):
    pass


# ---------------------------------------------------------------------------
# cyclotomic polynomial tables


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_factors(n: int) -> list[int]:
    return sorted(_factorize(n))


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result = n
    for p in _factorize(n):
        result -= result // p
    return result


def _poly_divexact_int(a: list[int], b: list[int]) -> list[int]:
    # exact division of integer polynomials, b monic, lowest degree first
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] -= c * b[j]
    if any(a[:db]):
        raise ExactArithmeticError("non-exact cyclotomic division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ConductorError(f"conductor must be positive, got {m}")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _poly_divexact_int(num, list(cyclotomic_poly(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def _monomial_table(m: int) -> tuple[tuple[int, ...], ...]:
    # x^e mod Phi_m for e in [0, m), as integer vectors
    phi = totient(m)
    cp = cyclotomic_poly(m)
    rows = []
    vec = [0] * phi
    vec[0] = 1
    for _ in range(m):
        rows.append(tuple(vec))
        # multiply by x and reduce
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            for j in range(phi):
                vec[j] -= top * cp[j]
    return tuple(rows)


def _normalize(num: Sequence[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = den
    for c in num:
        if g == 1:
            break
        if c:
            g = math.gcd(g, c)
    if g != 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


Scalar = Union[int, Fraction, "CycNum"]


class CycNum:
    """Immutable element of Q(zeta_m) in the power basis modulo Phi_m."""

    __slots__ = ("m", "num", "den", "_hash")

    def __init__(self, m: int, coeffs: Iterable[Union[int, Fraction]]) -> None:
        coeffs = [Fraction(c) for c in coeffs]
        phi = totient(m)
        if len(coeffs) != phi:
            raise ConductorError(f"conductor {m} needs {phi} coefficients, got {len(coeffs)}")
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = [int(c * den) for c in coeffs]
        self.m = m
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, m: int, num: Sequence[int], den: int = 1) -> CycNum:
        obj = object.__new__(cls)
        obj.m = m
        obj.num, obj.den = _normalize(num, den)
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def rational(cls, q: Union[int, Fraction]) -> CycNum:
        q = Fraction(q)
        return cls._raw(1, (q.numerator,), q.denominator)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> CycNum:
        """zeta_m^k with zeta_m = exp(2*pi*i/m)."""
        if m < 1:
            raise ConductorError(f"conductor must be positive, got {m}")
        return cls._raw(m, _monomial_table(m)[k % m], 1)

    @classmethod
    def coerce(cls, x: Scalar) -> CycNum:
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycNum")

    # -- basic properties -------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        c = self.canonical()
        if c.m != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(c.num[0], c.den)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- embeddings -------------------------------------------------------

    def embed(self, m2: int) -> CycNum:
        if m2 == self.m:
            return self
        if m2 % self.m:
            raise ConductorError(f"conductor {self.m} does not divide {m2}")
        k = m2 // self.m
        table = _monomial_table(m2)
        out = [0] * totient(m2)
        for j, c in enumerate(self.num):
            if c:
                row = table[(j * k) % m2]
                for t, r in enumerate(row):
                    if r:
                        out[t] += c * r
        return CycNum._raw(m2, out, self.den)

    def restrict(self, m2: int) -> CycNum | None:
        """Same element in conductor ``m2`` (a divisor), or None if it is not in that subfield."""
        if m2 == self.m:
            return self
        if self.m % m2:
            raise ConductorError(f"{m2} does not divide conductor {self.m}")
        rows, inv = _restriction_data(m2, self.m)
        vec = [self.num[r] for r in rows]
        sol = [sum(inv[i][j] * vec[j] for j in range(len(vec))) for i in range(len(vec))]
        cand = CycNum(m2, [s / self.den for s in sol])
        if cand.embed(self.m).num != self.num or cand.den != self.den:
            return None
        return cand

    def canonical(self) -> CycNum:
        """The same element in its smallest conductor."""
        cur = self
        if cur.is_rational():
            return CycNum._raw(1, (cur.num[0],), cur.den)
        changed = True
        while changed and cur.m > 1:
            changed = False
            for p in prime_factors(cur.m):
                sub = cur.restrict(cur.m // p)
                if sub is not None:
                    cur = sub
                    changed = True
                    break
        return cur

    def galois(self, k: int) -> CycNum:
        """Image under zeta_m -> zeta_m^k (k coprime to m)."""
        m = self.m
        if math.gcd(k, m) != 1:
            raise ValueError(f"{k} is not a unit mod {m}")
        table = _monomial_table(m)
        out = [0] * len(self.num)
        for j, c in enumerate(self.num):
            if c:
                row = table[(j * k) % m]
                for t, r in enumerate(row):
                    if r:
                        out[t] += c * r
        return CycNum._raw(m, out, self.den)

    def conjugate(self) -> CycNum:
        return self.galois(-1 % self.m if self.m > 1 else 1)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _align(a: CycNum, b: CycNum) -> tuple[CycNum, CycNum]:
        if a.m == b.m:
            return a, b
        if a.m == 1:
            return a.embed(b.m), b
        if b.m == 1:
            return a, b.embed(a.m)
        m = a.m * b.m // math.gcd(a.m, b.m)
        return a.embed(m), b.embed(m)

    def __add__(self, other: Scalar) -> CycNum:
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = CycNum._align(self, other)
        if a.den == b.den:
            return CycNum._raw(a.m, [x + y for x, y in zip(a.num, b.num)], a.den)
        return CycNum._raw(a.m, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        obj = object.__new__(CycNum)
        obj.m = self.m
        obj.num = tuple(-c for c in self.num)
        obj.den = self.den
        obj._hash = None
        return obj

    def __sub__(self, other: Scalar) -> CycNum:
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> CycNum:
        return CycNum.coerce(other) - self

    def __mul__(self, other: Scalar) -> CycNum:
        if isinstance(other, int):
            return CycNum._raw(self.m, [c * other for c in self.num], self.den)
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = CycNum._align(self, other)
        if a.m == 1:
            return CycNum._raw(1, (a.num[0] * b.num[0],), a.den * b.den)
        if b.is_rational():
            c = b.num[0]
            return CycNum._raw(a.m, [x * c for x in a.num], a.den * b.den)
        if a.is_rational():
            c = a.num[0]
            return CycNum._raw(a.m, [x * c for x in b.num], a.den * b.den)
        prod = kernels.cyc_mul(a.num, b.num, cyclotomic_poly(a.m))
        return CycNum._raw(a.m, prod, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> CycNum:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        m = self.m
        if self.is_rational():
            n = self.num[0]
            return CycNum._raw(m, [self.den] + [0] * (len(self.num) - 1), n)
        # product of the other Galois conjugates; a * rest is the (rational) norm
        rest = CycNum.rational(1)
        for k in range(2, m):
            if math.gcd(k, m) == 1:
                rest = rest * self.galois(k)
        norm = self * rest
        if not norm.is_rational():
            raise ExactArithmeticError("norm computation failed")
        q = Fraction(norm.num[0], norm.den)
        return rest * (1 / q)

    def __truediv__(self, other: Scalar) -> CycNum:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            q = Fraction(other)
            return CycNum._raw(self.m, [c * q.denominator for c in self.num], self.den * q.numerator)
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> CycNum:
        return CycNum.coerce(other) * self.inverse()

    def __pow__(self, e: int) -> CycNum:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = CycNum._raw(self.m, _monomial_table(self.m)[0], 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- comparison -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            if not self.is_rational():
                return False
            return Fraction(self.num[0], self.den) == other
        if not isinstance(other, CycNum):
            return NotImplemented
        if self.m == other.m:
            return self.den == other.den and self.num == other.num
        a, b = CycNum._align(self, other)
        return a.den == b.den and a.num == b.num

    def __hash__(self) -> int:
        if self._hash is None:
            c = self.canonical()
            if c.m == 1:
                self._hash = hash(Fraction(c.num[0], c.den))
            else:
                self._hash = hash((c.m, c.num, c.den))
        return self._hash

    # -- numerics and text ------------------------------------------------

    def approx(self, digits: int = 30) -> mpmath.mpc:
        return cyc_approx(self, digits)

    def __repr__(self) -> str:
        return f"CycNum({render(self)!r})"

    def __str__(self) -> str:
        return render(self)


@lru_cache(maxsize=None)
def _restriction_data(m_small: int, m_big: int) -> tuple[tuple[int, ...], tuple[tuple[Fraction, ...], ...]]:
    # rows of the embedding matrix forming an invertible square block, and its inverse
    k = m_big // m_small
    table = _monomial_table(m_big)
    phi_s, phi_b = totient(m_small), totient(m_big)
    cols = [table[(j * k) % m_big] for j in range(phi_s)]
    mat = [[Fraction(cols[j][r]) for j in range(phi_s)] for r in range(phi_b)]
    rows: list[int] = []
    basis: list[list[Fraction]] = []
    for r in range(phi_b):
        cand = list(mat[r])
        for b in basis:
            piv = next(i for i, v in enumerate(b) if v)
            if cand[piv]:
                f = cand[piv] / b[piv]
                cand = [x - f * y for x, y in zip(cand, b)]
        if any(cand):
            basis.append(cand)
            rows.append(r)
        if len(rows) == phi_s:
            break
    square = [mat[r] for r in rows]
    inv = _invert(square)
    return tuple(rows), tuple(tuple(row) for row in inv)


def _invert(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# named constants

ZERO = CycNum.rational(0)
ONE = CycNum.rational(1)
I = CycNum.zeta(4)
ZETA3 = CycNum.zeta(3)
ZETA5 = CycNum.zeta(5)
# fixed sign conventions: positive real square roots
SQRT3 = -I * (ZETA3 - ZETA3 * ZETA3)
SQRT5 = 1 + 2 * (ZETA5 + ZETA5 ** 4)
OMEGA = (SQRT5 - 1) / 2


def _check_constants() -> None:
    if SQRT3 * SQRT3 != 3 or SQRT5 * SQRT5 != 5 or OMEGA * OMEGA + OMEGA != 1:
        raise ExactArithmeticError("square-root conventions failed to verify")
    if cyc_approx(SQRT3, 15).real < 0 or cyc_approx(SQRT5, 15).real < 0:
        raise ExactArithmeticError("square roots must be positive reals")


def zeta(m: int, k: int = 1) -> CycNum:
    return CycNum.zeta(m, k)


def cyc(x: Scalar) -> CycNum:
    return CycNum.coerce(x)


def cyc_arith(a: Scalar, b: Scalar, op: str) -> CycNum:
    a, b = cyc(a), cyc(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def cyc_embed(a: Scalar, m2: int) -> CycNum:
    return cyc(a).embed(m2)


def cyc_approx(a: Scalar, digits: int = 30) -> mpmath.mpc:
    """Complex approximation with absolute error below 10**-digits."""
    if digits < 1 or digits > DIGITS_CAP:
        raise ValueError(f"digits must be in 1..{DIGITS_CAP}")
    a = cyc(a)
    size = max(len(str(abs(c))) for c in a.num)
    with mpmath.workdps(digits + 10 + size):
        root = mpmath.expjpi(mpmath.mpf(2) / a.m)
        acc = mpmath.mpc(0)
        p = mpmath.mpc(1)
        for c in a.num:
            if c:
                acc += c * p
            p *= root
        acc /= a.den
    return acc


def conductor_lcm(values: Iterable[Scalar]) -> int:
    m = 1
    for v in values:
        if isinstance(v, CycNum):
            m = m * v.m // math.gcd(m, v.m)
    return m


def find_in_span(target: CycNum, basis: Sequence[CycNum]) -> list[Fraction] | None:
    """Rational coordinates of ``target`` in the Q-span of ``basis``, or None."""
    m = conductor_lcm([target, *basis])
    vecs = [b.embed(m) for b in basis]
    t = target.embed(m)
    phi = totient(m)
    rows = [[Fraction(v.num[r], v.den) for v in vecs] + [Fraction(t.num[r], t.den)] for r in range(phi)]
    ncol = len(basis)
    piv_cols = []
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, phi) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(phi):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][ncol] for i in range(r, phi)):
        return None
    sol = [Fraction(0)] * ncol
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][ncol]
    return sol


# ---------------------------------------------------------------------------
# text rendering and parsing

_NAMED_BASES: list[tuple[tuple[str, ...], tuple[CycNum, ...]]] = [
    (("", "I"), (ONE, I)),
    (("", "I*sqrt3"), (ONE, I * SQRT3)),
    (("", "sqrt5"), (ONE, SQRT5)),
    (("", "sqrt3"), (ONE, SQRT3)),
    (("", "I", "sqrt3", "I*sqrt3"), (ONE, I, SQRT3, I * SQRT3)),
    (("", "I", "sqrt5", "I*sqrt5"), (ONE, I, SQRT5, I * SQRT5)),
    (("", "sqrt3", "sqrt5", "sqrt3*sqrt5"), (ONE, SQRT3, SQRT5, SQRT3 * SQRT5)),
]


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _join_terms(terms: list[tuple[Fraction, str]]) -> str:
    parts: list[str] = []
    for coef, atom in terms:
        if coef == 0:
            continue
        if not atom:
            body = _format_rational(abs(coef))
        elif abs(coef) == 1:
            body = atom
        else:
            body = f"{_format_rational(abs(coef))}*{atom}"
        sign = "-" if coef < 0 else "+"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts) if parts else "0"


def render(a: Scalar) -> str:
    """Text form using integers, a/b, I, sqrt3, sqrt5 and z<m>^<k>."""
    c = cyc(a).canonical()
    if c.m == 1:
        return _format_rational(Fraction(c.num[0], c.den))
    for names, basis in _NAMED_BASES:
        if 60 % c.m:
            break
        coords = find_in_span(c, basis)
        if coords is not None:
            return _join_terms(list(zip(coords, names)))
    terms = []
    for k, q in enumerate(c.coeffs):
        atom = "" if k == 0 else (f"z{c.m}" if k == 1 else f"z{c.m}^{k}")
        terms.append((q, atom))
    return _join_terms(terms)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(z\d+)|(sqrt3|sqrt5)|(I)|(l\d+)|(x|t)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


def tokenize(text: str) -> list[str]:
    pos = 0
    out: list[str] = []
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN_RE.match(text, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        tok = mt.group(mt.lastindex)
        out.append("^" if tok == "**" else tok)
        pos = mt.end()
    return out


class ExprParser:
    """Recursive-descent parser over a ring supplied by callbacks.

    ``atom`` maps a non-numeric token to a ring element; numbers become
    rationals through ``const``.
    """

    def __init__(self, tokens: list[str], const, atom) -> None:
        self.toks = tokens
        self.i = 0
        self.const = const
        self.atom = atom

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.i += 1
        return tok

    def parse(self):
        val = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing token {self.peek()!r}")
        return val

    def expr(self):
        if self.peek() in ("+", "-"):
            neg = self.take() == "-"
            val = self.term()
            val = -val if neg else val
        else:
            val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            val = val * rhs if op == "*" else val / rhs
        return val

    def factor(self):
        base = self.primary()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            tok = self.take()
            if not tok.isdigit():
                raise ParseError(f"exponent must be an integer, got {tok!r}")
            e = int(tok)
            return base ** (-e if neg else e)
        return base

    def primary(self):
        tok = self.take()
        if tok == "(":
            val = self.expr()
            if self.take() != ")":
                raise ParseError("missing ')'")
            return val
        if tok == "-":
            return -self.factor()
        if tok.isdigit():
            return self.const(int(tok))
        return self.atom(tok)


def _cyc_atom(tok: str) -> CycNum:
    if tok == "I":
        return I
    if tok == "sqrt3":
        return SQRT3
    if tok == "sqrt5":
        return SQRT5
    if tok.startswith("z"):
        return CycNum.zeta(int(tok[1:]))
    raise ParseError(f"unknown constant {tok!r}")


def parse_cyc(text: str) -> CycNum:
    return ExprParser(tokenize(text), CycNum.rational, _cyc_atom).parse()


_check_constants()
