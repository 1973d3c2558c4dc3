"""Univariate polynomials and rational functions over cyclotomic fields."""
from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import mpmath

from .exactnum import (
    ExprParser,
    CycNum,
    ParseError,
    Scalar,
    _cyc_atom,
    conductor_lcm,
    cyc,
    cyc_approx,
    render,
    tokenize,
    totient,
)


class _Infinity:
    """The point at infinity of the projective line."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "infinity"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

ZERO_C = CycNum.rational(0)
ONE_C = CycNum.rational(1)


class Poly:
    """Dense univariate polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()) -> None:
        cs = [cyc(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: tuple[CycNum, ...] = tuple(cs)

    @classmethod
    def _raw(cls, cs: list[CycNum]) -> Poly:
        while cs and cs[-1].is_zero():
            cs.pop()
        obj = object.__new__(cls)
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def x(cls) -> Poly:
        return cls._raw([ZERO_C, ONE_C])

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> Poly:
        return cls._raw([ZERO_C] * k + [cyc(c)])

    @classmethod
    def const(cls, c: Scalar) -> Poly:
        return cls._raw([cyc(c)])

    @classmethod
    def from_exponents(cls, terms: dict[int, Scalar]) -> Poly:
        if not terms:
            return cls()
        cs = [ZERO_C] * (max(terms) + 1)
        for k, c in terms.items():
            cs[k] = cs[k] + cyc(c)
        return cls._raw(cs)

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> CycNum:
        return self.coeffs[-1] if self.coeffs else ZERO_C

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, k: int) -> CycNum:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO_C

    @property
    def conductor(self) -> int:
        return conductor_lcm(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- ring operations --------------------------------------------------

    def __add__(self, other: Union[Poly, Scalar]) -> Poly:
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw([-c for c in self.coeffs])

    def __sub__(self, other: Union[Poly, Scalar]) -> Poly:
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> Poly:
        return Poly.const(other) - self

    def __mul__(self, other: Union[Poly, Scalar]) -> Poly:
        if not isinstance(other, Poly):
            c = cyc(other)
            if c.is_zero():
                return Poly()
            return Poly._raw([x * c for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [ZERO_C] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai.is_zero():
                continue
            for j, bj in enumerate(b):
                if not bj.is_zero():
                    out[i + j] = out[i + j] + ai * bj
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Poly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divrem(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return Poly(), Poly._raw(r)
        inv = other.lc.inverse()
        bc = other.coeffs
        q = [ZERO_C] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c.is_zero():
                continue
            f = c * inv
            q[k - db] = f
            for j in range(db):
                if not bc[j].is_zero():
                    r[k - db + j] = r[k - db + j] - f * bc[j]
            r[k] = ZERO_C
        return Poly._raw(q), Poly._raw(r[:db] if db > 0 else [])

    def __floordiv__(self, other: Poly) -> Poly:
        return self.divrem(other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return self.divrem(other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = self.divrem(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        lc = self.lc
        if lc == 1:
            return self
        inv = lc.inverse()
        return Poly._raw([c * inv for c in self.coeffs])

    def derivative(self) -> Poly:
        return Poly._raw([c * k for k, c in enumerate(self.coeffs)][1:])

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, CycNum)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x):
        """Horner evaluation at a scalar or composition with a polynomial."""
        if isinstance(x, Poly):
            acc = Poly()
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        x = cyc(x)
        acc = ZERO_C
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def scale_var(self, c: Scalar) -> Poly:
        """p(c*x)."""
        c = cyc(c)
        out, p = [], ONE_C
        for a in self.coeffs:
            out.append(a * p)
            p = p * c
        return Poly._raw(out)

    def homogeneous_substitute(self, num: Poly, den: Poly, n: int | None = None) -> Poly:
        """sum_k a_k num^k den^(n-k), with n defaulting to the degree."""
        d = self.degree
        if n is None:
            n = d
        if d < 0:
            return Poly()
        acc = Poly.const(self.coeffs[d])
        den_pow = Poly.const(1)
        for k in range(d - 1, -1, -1):
            den_pow = den_pow * den
            acc = acc * num + den_pow * self.coeffs[k]
        for _ in range(n - d):
            acc = acc * den
        return acc

    def galois(self, k: int, m: int) -> Poly:
        return Poly._raw([c.embed(m).galois(k) for c in self.coeffs])

    # -- text -------------------------------------------------------------

    def render(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        parts: list[str] = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            cs = render(c)
            neg = False
            if " " not in cs.lstrip("-") and cs.startswith("-"):
                neg, cs = True, cs[1:]
            elif " " in cs:
                cs = f"({cs})"
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Poly({self.render()!r})"


def parse_poly(text: str, var: str = "x") -> Poly:
    def atom(tok: str):
        if tok == var:
            return Poly.x()
        return Poly.const(_cyc_atom(tok))

    tokens = tokenize(text)
    val = _PolyParser(tokens, lambda n: Poly.const(n), atom).parse()
    return val


class _PolyParser(ExprParser):
    def term(self):
        val = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op == "*":
                val = val * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ParseError("can only divide by nonzero constants")
                val = val * rhs.coeff(0).inverse()
        return val


X = Poly.x()


# ---------------------------------------------------------------------------
# modular images, used as fast certificates


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _primes_for(m: int, count: int = 4) -> tuple[tuple[int, int], ...]:
    # primes p = 1 mod m near 2**61 with a primitive m-th root of unity mod p
    out = []
    k = (1 << 61) // m
    while len(out) < count:
        p = k * m + 1
        k -= 1
        if not _is_prime(p):
            continue
        for g in range(2, 200):
            root = pow(g, (p - 1) // m, p)
            if all(pow(root, m // q, p) != 1 for q in _prime_divisors(m)):
                out.append((p, root))
                break
    return tuple(out)


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _modp_coeff(c: CycNum, m: int, p: int, root: int) -> int | None:
    c = c.embed(m)
    if c.den % p == 0:
        return None
    acc, pw = 0, 1
    for a in c.num:
        acc = (acc + a * pw) % p
        pw = pw * root % p
    return acc * pow(c.den, -1, p) % p


def _modp_poly(a: Poly, m: int, p: int, root: int) -> list[int] | None:
    out = []
    for c in a.coeffs:
        v = _modp_coeff(c, m, p, root)
        if v is None:
            return None
        out.append(v)
    return out


def _gcd_degree_modp(a: list[int], b: list[int], p: int) -> int:
    def strip(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = strip(list(a)), strip(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        db = len(b) - 1
        while len(a) - 1 >= db and a:
            f = a[-1] * inv % p
            shift = len(a) - 1 - db
            for j in range(db + 1):
                a[shift + j] = (a[shift + j] - f * b[j]) % p
            strip(a)
        a, b = b, a
    return len(a) - 1


def coprime_certificate(a: Poly, b: Poly) -> bool:
    """True only if a and b are certainly coprime (modular test, sound but not complete)."""
    if a.is_zero() or b.is_zero():
        return False
    m = conductor_lcm(a.coeffs + b.coeffs)
    for p, root in _primes_for(m):
        am, bm = _modp_poly(a, m, p, root), _modp_poly(b, m, p, root)
        if am is None or bm is None or am[-1] == 0 or bm[-1] == 0:
            continue
        return _gcd_degree_modp(am, bm, p) == 0
    return False


# ---------------------------------------------------------------------------
# gcd, resultants, discriminants


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero only when both inputs are zero)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if coprime_certificate(a, b):
        return Poly.const(1)
    a, b = a.monic(), b.monic()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a


def poly_arith(a: Poly, b: Poly, op: str):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divrem":
        return a.divrem(b)
    if op == "gcd":
        return poly_gcd(a, b)
    raise ValueError(f"unknown operation {op!r}")


def resultant(a: Poly, b: Poly) -> CycNum:
    """Resultant by the Euclidean algorithm over the coefficient field."""
    if a.is_zero() or b.is_zero():
        return ZERO_C
    res = ONE_C
    while True:
        da, db = a.degree, b.degree
        if da == 0:
            return res * a.lc ** db
        if db == 0:
            return res * b.lc ** da
        r = a % b
        if r.is_zero():
            return ZERO_C
        dr = r.degree
        if (da * db) % 2:
            res = -res
        res = res * b.lc ** (da - dr)
        a, b = b, r


def discriminant(a: Poly) -> CycNum:
    n = a.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return ONE_C
    r = resultant(a, a.derivative()) / a.lc
    return -r if (n * (n - 1) // 2) % 2 else r


def interpolate(xs: Sequence[Scalar], ys: Sequence[Scalar]) -> Poly:
    """Newton interpolation through the points (xs[i], ys[i])."""
    xs = [cyc(v) for v in xs]
    coef = [cyc(v) for v in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    acc = Poly.const(coef[-1])
    for i in range(n - 2, -1, -1):
        acc = acc * Poly([-xs[i], 1]) + coef[i]
    return acc


class RationalMap:
    """A rational function nf/df with coprime parts and monic denominator."""

    __slots__ = ("nf", "df")

    def __init__(self, nf: Poly, df: Poly, check: bool = True) -> None:
        if df.is_zero():
            raise ZeroDivisionError("rational map with zero denominator")
        if check and not (df.is_constant() or nf.is_zero() or coprime_certificate(nf, df)):
            g = poly_gcd(nf, df)
            if g.degree > 0:
                nf, df = nf.exact_div(g), df.exact_div(g)
        if nf.is_zero():
            df = Poly.const(1)
        inv = df.lc.inverse()
        self.nf = nf * inv
        self.df = df * inv

    @classmethod
    def from_poly(cls, p: Poly) -> RationalMap:
        return cls(p, Poly.const(1), check=False)

    @property
    def degree(self) -> int:
        return max(self.nf.degree, self.df.degree)

    def is_constant(self) -> bool:
        return self.degree <= 0

    def __call__(self, x):
        if x is INFINITY:
            dn, dd = self.nf.degree, self.df.degree
            if dn > dd:
                return INFINITY
            if dn < dd:
                return ZERO_C
            return self.nf.lc / self.df.lc
        d = self.df(x)
        if d.is_zero():
            return INFINITY
        return self.nf(x) / d

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMap):
            return NotImplemented
        return self.nf * other.df == other.nf * self.df

    def __hash__(self) -> int:
        return hash((self.nf, self.df))

    def fiber_numerator(self, t) -> Poly:
        """nf - t*df, or df for t = infinity."""
        if t is INFINITY:
            return self.df
        return self.nf - self.df * t

    def compose_moebius(self, a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> RationalMap:
        """self((a x + b)/(c x + d))."""
        n = self.degree
        num, den = Poly([b, a]), Poly([d, c])
        return RationalMap(
            self.nf.homogeneous_substitute(num, den, n),
            self.df.homogeneous_substitute(num, den, n),
        )

    def wronskian(self) -> Poly:
        return self.nf.derivative() * self.df - self.nf * self.df.derivative()

    def render(self, var: str = "x") -> str:
        if self.df == Poly.const(1):
            return self.nf.render(var)
        return f"({self.nf.render(var)})/({self.df.render(var)})"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"RationalMap({self.render()!r})"


def parse_rational_map(text: str) -> RationalMap:
    """Parse ``(num)/(den)`` or a bare polynomial."""
    depth, split = 0, None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0 and text[:i].rstrip().endswith(")") and text[i + 1:].lstrip().startswith("("):
            split = i
    if split is None:
        return RationalMap.from_poly(parse_poly(text))
    return RationalMap(parse_poly(text[:split]), parse_poly(text[split + 1:]))


def discriminant_in_t(m: RationalMap) -> Poly:
    """disc_x(nf - t*df) as a polynomial in t.

    The x-degree is generically deg(m); the t-degree is at most 2*deg(m) - 2.
    Exact values at that many + 1 sample points are interpolated.
    """
    n = m.degree
    if n < 2:
        raise ValueError("map degree must be at least 2")
    bad = m.nf.lc / m.df.lc if m.nf.degree == m.df.degree else None
    xs, ys = [], []
    t = 0
    while len(xs) < 2 * n - 1:
        tc = CycNum.rational(t)
        if bad is None or tc != bad:
            p = m.fiber_numerator(tc)
            xs.append(tc)
            ys.append(discriminant(p))
        t = -t if t > 0 else -t + 1
    return interpolate(xs, ys)


# ---------------------------------------------------------------------------
# decompositions


def power_decompose(m: RationalMap) -> tuple[int, RationalMap]:
    """Largest s with m = g(x^s), and g."""
    exps = [k for k, c in enumerate(m.nf.coeffs) if not c.is_zero()]
    exps += [k for k, c in enumerate(m.df.coeffs) if not c.is_zero()]
    s = 0
    for e in exps:
        s = math.gcd(s, e)
    if s == 0:
        return 1, m

    def squeeze(p: Poly) -> Poly:
        return Poly._raw([p.coeffs[k] for k in range(0, len(p.coeffs), s)])

    g = RationalMap(squeeze(m.nf), squeeze(m.df), check=False)
    xs = X ** s
    if RationalMap(g.nf(xs), g.df(xs), check=False) != m:
        raise ArithmeticError("power decomposition failed to reconstruct the map")
    return s, g


def squarefree_decomposition(a: Poly) -> list[tuple[int, Poly]]:
    """Yun's algorithm: [(multiplicity, monic factor)] with a = c * prod factor^mult."""
    if a.is_zero():
        raise ValueError("square-free decomposition of zero")
    if a.degree == 0:
        return []
    da = a.derivative()
    g = poly_gcd(a, da)
    b = a.exact_div(g)
    c = da.exact_div(g)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        f = poly_gcd(b, d)
        b = b.exact_div(f)
        c = d.exact_div(f)
        d = c - b.derivative()
        if f.degree > 0:
            out.append((i, f.monic()))
        i += 1
    return out


def squarefree_part(a: Poly) -> tuple[Poly, list[tuple[int, int]]]:
    """Monic square-free part and [(multiplicity, degree)] profile, highest multiplicity first."""
    parts = squarefree_decomposition(a)
    sqf = Poly.const(1)
    for _, f in parts:
        sqf = sqf * f
    profile = sorted(((k, f.degree) for k, f in parts), reverse=True)
    return sqf, profile


def is_squarefree(a: Poly) -> bool:
    if a.degree <= 1:
        return not a.is_zero()
    da = a.derivative()
    if coprime_certificate(a, da):
        return True
    return poly_gcd(a, da).degree == 0


def random_rational_poly(degree: int, rng: random.Random, bound: int = 10) -> Poly:
    return Poly([rng.randint(-bound, bound) for _ in range(degree)] + [rng.choice([i for i in range(-bound, bound + 1) if i])])


# ---------------------------------------------------------------------------
# recognition of roots inside a cyclotomic field


class RootNotInField(ArithmeticError):
    """A root could not be identified in any tried cyclotomic field."""

    def __init__(self, approx, poly: Poly | None = None) -> None:
        self.approx = approx
        self.poly = poly
        super().__init__(f"root not in working field: approximately {mpmath.nstr(approx, 20)}")


_RECOGNIZE_DPS = 50
_CANDIDATE_CONDUCTORS = (1, 4, 3, 8, 5, 12, 10, 20, 15, 24, 60)
_MAX_ASSIGNMENTS = 20000


def _numeric_roots(p: Poly, m: int, k: int = 1) -> list:
    cs = [c.embed(m).galois(k) if k != 1 else c for c in p.coeffs]
    approx = [cyc_approx_raw(c) for c in reversed(cs)]
    return mpmath.polyroots(approx, maxsteps=400, extraprec=400)


def cyc_approx_raw(c: CycNum):
    return cyc_approx(c, 45)


def _rationalize(v) -> Fraction:
    return Fraction(mpmath.nstr(v, 40, strip_zeros=False)).limit_denominator(10**15)


@lru_cache(maxsize=None)
def _embedding_inverse(m: int, ks: tuple[int, ...], dps: int):
    # real system sending power-basis coordinates to Re/Im of the embeddings sigma_k
    phi = totient(m)
    rows = []
    for k in ks:
        z = mpmath.expjpi(mpmath.mpf(2 * k) / m)
        powers = [z ** j for j in range(phi)]
        rows.append([mpmath.re(w) for w in powers])
        if 2 * k % m != 0:
            rows.append([mpmath.im(w) for w in powers])
    try:
        return mpmath.inverse(mpmath.matrix(rows))
    except ZeroDivisionError:
        return None


def _solve_embedding_system(m: int, ks: list[int], values: list) -> CycNum | None:
    # find r in Q(zeta_m) with sigma_k(r) = values[k] for k in ks (conjugates implied)
    inv = _embedding_inverse(m, tuple(ks), mpmath.mp.dps)
    if inv is None:
        return None
    rhs = []
    for k, v in zip(ks, values):
        rhs.append(mpmath.re(v))
        if 2 * k % m != 0:
            rhs.append(mpmath.im(v))
    sol = inv * mpmath.matrix(rhs)
    return CycNum(m, [_rationalize(sol[j]) for j in range(totient(m))])


def _near_rational(v) -> bool:
    # denominators up to 1e15 approximate a generic real only to about 1e-30
    q = _rationalize(v)
    return abs(v - mpmath.mpf(q.numerator) / q.denominator) < mpmath.mpf(10) ** (10 - _RECOGNIZE_DPS)


def _recognize(root, p: Poly) -> CycNum | None:
    mp = p.conductor
    for m in _CANDIDATE_CONDUCTORS:
        if totient(m) <= 2:
            cand = _solve_embedding_system(m, [1], [root]) if m > 1 else CycNum.rational(_rationalize(mpmath.re(root)))
            if cand is not None and p(cand).is_zero():
                return cand
            continue
        big = math.lcm(m, mp)
        # one representative k per pair {k, -k}; k = 1 is pinned to the given root
        ks = [k for k in range(1, m // 2 + 1) if math.gcd(k, m) == 1]
        lifts = []
        for k in ks:
            lift = next(j for j in range(k, big * m + 1, m) if math.gcd(j, big) == 1)
            lifts.append(lift)
        choices = [[root]] + [list(_numeric_roots(p, big, lift)) for lift in lifts[1:]]
        total = 1
        for c in choices:
            total *= len(c)
        if total > _MAX_ASSIGNMENTS:
            continue
        for combo in itertools.product(*choices):
            # the trace of a genuine conjugate set is rational
            if not _near_rational(2 * mpmath.re(mpmath.fsum(combo))):
                continue
            cand = _solve_embedding_system(m, ks, list(combo))
            if cand is not None and p(cand).is_zero():
                return cand
    return None


def roots_in_field(p: Poly) -> list[CycNum]:
    """Distinct roots of p, each identified exactly in a cyclotomic field.

    Raises RootNotInField carrying the numeric value of the first root that
    cannot be identified.
    """
    if p.degree < 1:
        return []
    sqf, _ = squarefree_part(p)
    found: list[CycNum] = []
    rest = sqf
    with mpmath.workdps(_RECOGNIZE_DPS):
        while rest.degree > 0:
            if rest.degree == 1:
                found.append(-rest.coeff(0) / rest.lc)
                break
            root = _numeric_roots(rest, rest.conductor)[0]
            cand = _recognize(root, rest)
            if cand is None:
                raise RootNotInField(root, p)
            found.append(cand)
            rest = rest.exact_div(Poly([-cand, 1]))
    return found
