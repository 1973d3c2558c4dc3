"""Finite subgroups of PGL2, their invariant maps, branch points and fibers."""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .exactnum import I, OMEGA, SQRT3, CycNum, cyc
from .polyalg import (
    INFINITY,
    Poly,
    RationalMap,
    coprime_certificate,
    discriminant_in_t,
    poly_gcd,
    roots_in_field,
    squarefree_decomposition,
    X,
)

Point = Union[CycNum, type(INFINITY)]


class ConsistencyError(ValueError):
    """A map and a group, or a map and a claimed branch point, do not match."""


class ClosureError(RuntimeError):
    pass


_ONE = CycNum.rational(1)
_ZERO = CycNum.rational(0)


class MoebiusElt:
    """x -> (a x + b)/(c x + d), scaled so the first nonzero entry is 1."""

    __slots__ = ("a", "b", "c", "d", "_key")

    def __init__(self, a, b, c, d) -> None:
        a, b, c, d = cyc(a), cyc(b), cyc(c), cyc(d)
        if (a * d - b * c).is_zero():
            raise ValueError("singular matrix")
        lead = next(v for v in (a, b, c, d) if not v.is_zero())
        if lead != 1:
            inv = lead.inverse()
            a, b, c, d = a * inv, b * inv, c * inv, d * inv
        self.a, self.b, self.c, self.d = a, b, c, d
        self._key = None

    @property
    def entries(self) -> tuple[CycNum, CycNum, CycNum, CycNum]:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: MoebiusElt) -> MoebiusElt:
        """Composition: (self @ other)(x) = self(other(x))."""
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return MoebiusElt(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> MoebiusElt:
        return MoebiusElt(self.d, -self.b, -self.c, self.a)

    def is_identity(self) -> bool:
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d

    def order(self, cap: int = 1000) -> int:
        k, g = 1, self
        while not g.is_identity():
            g = g @ self
            k += 1
            if k > cap:
                raise ClosureError("element of infinite or very large order")
        return k

    def __call__(self, x):
        if x is INFINITY:
            return INFINITY if self.c.is_zero() else self.a / self.c
        den = self.c * x + self.d
        if den.is_zero():
            return INFINITY
        return (self.a * x + self.b) / den

    def _hkey(self):
        if self._key is None:
            self._key = tuple(v.canonical() for v in self.entries)
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MoebiusElt):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self._hkey())

    def __repr__(self) -> str:
        a, b, c, d = (str(v) for v in self.entries)
        return f"MoebiusElt(({a})x + ({b}) / ({c})x + ({d}))"


@dataclass
class MoebiusGroup:
    name: str
    n: Optional[int]
    generators: list[MoebiusElt]
    elements: list[MoebiusElt] = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.elements)

    def order_profile(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for g in self.elements:
            k = g.order()
            out[k] = out.get(k, 0) + 1
        return dict(sorted(out.items()))


@dataclass
class CoverData:
    map: RationalMap
    branch_points: list
    fiber_polys: list  # (Poly, index, infinity in fiber)

    def branching(self) -> list[tuple[int, int]]:
        """(index, number of points) for each branch point."""
        out = []
        for poly, e, inf in self.fiber_polys:
            out.append((e, poly.degree + (1 if inf else 0)))
        return out


def reduced_order(name: str, n: Optional[int] = None) -> int:
    return {"Z": n, "D": 2 * n if n else None, "A4": 12, "S4": 24, "A5": 60}[_label(name)]


def _label(name: str) -> str:
    key = name.replace("_", "").replace("₄", "4").replace("₅", "5").upper()
    if key.startswith("Z"):
        return "Z"
    if key.startswith("D"):
        return "D"
    if key in ("A4", "S4", "A5"):
        return key
    raise ValueError(f"unknown reduced group {name!r}")


def generators(name: str, n: Optional[int] = None) -> list[MoebiusElt]:
    label = _label(name)
    if label in ("Z", "D"):
        if n is None or n < 2:
            raise ValueError("cyclic and dihedral groups need n >= 2")
        rot = MoebiusElt(CycNum.zeta(n), 0, 0, 1)
        if label == "Z":
            return [rot]
        return [MoebiusElt(0, 1, 1, 0), rot]
    if label == "A4":
        return [MoebiusElt(-1, 0, 0, 1), MoebiusElt(1, I, 1, -I)]
    if label == "S4":
        # printed [[-1,-1],[1,1]] is singular, and with -x and -1/x no third
        # element can generate S4 (S4/V4 is not cyclic); two entries changed
        return [MoebiusElt(-1, 0, 0, 1), MoebiusElt(0, -1, I, 0), MoebiusElt(-1, -1, 1, -1)]
    eps4 = CycNum.zeta(5, 4)
    return [MoebiusElt(OMEGA, 1, 1, -OMEGA), MoebiusElt(OMEGA, eps4, 1, -eps4 * OMEGA)]


def close_group(gens: Sequence[MoebiusElt], cap: int) -> list[MoebiusElt]:
    identity = MoebiusElt(1, 0, 0, 1)
    elems = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = g @ s
                if h not in seen:
                    seen.add(h)
                    elems.append(h)
                    nxt.append(h)
                    if len(elems) > cap:
                        raise ClosureError(f"closure exceeded {cap} elements")
        frontier = nxt
    return elems


def standard_embedding(name: str, n: Optional[int] = None) -> MoebiusGroup:
    label = _label(name)
    gens = generators(label, n)
    cap = 200 if label in ("Z", "D") else 60
    cap = max(cap, reduced_order(label, n))
    elems = close_group(gens, cap)
    if len(elems) != reduced_order(label, n):
        raise ClosureError(f"{label} closed to {len(elems)} elements")
    return MoebiusGroup(label, n if label in ("Z", "D") else None, gens, elems)


# ---------------------------------------------------------------------------
# invariant maps


def fixed_field_generator(H: MoebiusGroup) -> RationalMap:
    """First non-constant elementary symmetric function of the images A(x)."""
    # coefficients of prod_A ((c x + d) T - (a x + b)), indexed by T-degree
    coeffs = [Poly.const(1)]
    for g in H.elements:
        lin_t = Poly([g.d, g.c])
        lin_0 = Poly([-g.b, -g.a])
        new = [Poly() for _ in range(len(coeffs) + 1)]
        for k, ck in enumerate(coeffs):
            new[k + 1] = new[k + 1] + ck * lin_t
            new[k] = new[k] + ck * lin_0
        coeffs = new
    N = len(H.elements)
    D = coeffs[N]
    for i in range(1, N + 1):
        C = coeffs[N - i]
        if C.is_zero():
            continue
        # constant ratio C/D means s_i is constant
        ratio = C.lc / D.lc
        if C.degree == D.degree and C == D * ratio:
            continue
        num = C if i % 2 == 0 else -C
        m = RationalMap(num, D)
        if m.degree != N:
            raise ConsistencyError(f"symmetric function has degree {m.degree}, expected {N}")
        return m
    raise ConsistencyError("all symmetric functions are constant")


def _subst_proportional(p: Poly, g: MoebiusElt, n: int, target: Poly):
    """Return lambda with p(g x) homogenized to degree n equal to lambda * target, else None."""
    img = p.homogeneous_substitute(Poly([g.b, g.a]), Poly([g.d, g.c]), n)
    if img.degree != target.degree:
        return None
    if img.is_zero():
        return _ZERO if target.is_zero() else None
    lam = img.lc / target.lc
    return lam if img == target * lam else None


def verify_invariant(m: RationalMap, H: MoebiusGroup, exhaustive: bool = False) -> bool:
    """Exact check that m(A x) = m(x); generators suffice unless exhaustive is set."""
    n = m.degree
    for g in H.elements if exhaustive else H.generators:
        lam = _subst_proportional(m.nf, g, n, m.nf)
        if lam is None:
            return False
        if _subst_proportional(m.df, g, n, m.df * lam) != 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def lemma_map(name: str, n: Optional[int] = None) -> RationalMap:
    """Normal-form generator of the fixed field of the standard embedding."""
    label = _label(name)
    if label == "Z":
        return RationalMap.from_poly(X ** n)
    if label == "D":
        return RationalMap(X ** (2 * n) + 1, X ** n)
    if label == "A4":
        q4 = X ** 4
        return RationalMap(q4 ** 3 - 33 * q4 ** 2 - 33 * q4 + 1, X ** 2 * (q4 - 1) ** 2)
    if label == "S4":
        q4 = X ** 4
        return RationalMap((q4 ** 2 + 14 * q4 + 1) ** 3, 108 * (X * (q4 - 1)) ** 4)
    return _icosahedral_map(1)


def _icosahedral_map(scale: int) -> RationalMap:
    q5 = X ** 5
    phi = -(q5 ** 4) + 228 * q5 ** 3 - 494 * q5 ** 2 - 228 * q5 - 1
    return RationalMap(phi ** 3, scale * (X * (q5 ** 2 + 11 * q5 - 1)) ** 5)


def printed_lemma_map(name: str, n: Optional[int] = None) -> RationalMap:
    """The formulas exactly as printed.

    Only the icosahedral one differs from lemma_map: it carries an extra
    factor 1728 in the denominator, which moves the branch points to
    {0, 1, infinity}.  lemma_map drops it so that the branch points are
    {0, 1728, infinity} and the fiber over 1728 is a square.
    """
    if _label(name) == "A5":
        return _icosahedral_map(1728)
    return lemma_map(name, n)


# ---------------------------------------------------------------------------
# branch points


def _poly_inverse_mod(a: Poly, P: Poly) -> Poly:
    r0, r1 = P, a % P
    s0, s1 = Poly(), Poly.const(1)
    while r1.degree > 0:
        q, r = r0.divrem(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r1.is_zero():
        raise ArithmeticError("not invertible modulo P")
    return (s1 * r1.coeff(0).inverse()) % P


def _minimal_polynomial_mod(u: Poly, P: Poly) -> Poly:
    """Minimal polynomial of u in K[x]/P by Krylov iteration."""
    d = P.degree
    basis: list[tuple[list, list]] = []  # reduced vector, combination of powers
    power = Poly.const(1)
    for k in range(d + 1):
        vec = [power.coeff(j) for j in range(d)]
        comb = [_ZERO] * (d + 1)
        comb[k] = _ONE
        for bvec, bcomb, piv in basis:
            f = vec[piv]
            if not f.is_zero():
                vec = [x - f * y for x, y in zip(vec, bvec)]
                comb = [x - f * y for x, y in zip(comb, bcomb)]
        piv = next((j for j, v in enumerate(vec) if not v.is_zero()), None)
        if piv is None:
            return Poly(comb).monic()
        inv = vec[piv].inverse()
        basis.append(([v * inv for v in vec], [c * inv for c in comb], piv))
        power = (power * u) % P
    raise ArithmeticError("Krylov iteration did not terminate")


def value_at_infinity(m: RationalMap):
    return m(INFINITY)


def critical_values(m: RationalMap) -> list:
    """Critical values from the square-free parts of the Wronskian."""
    N = m.degree
    W = m.wronskian()
    values: list = []

    def add(v):
        if v not in values:
            values.append(v)

    for _, P in squarefree_decomposition(W):
        nr, dr = m.nf % P, m.df % P
        if dr.is_zero():
            add(INFINITY)
            continue
        if nr.is_zero():
            add(_ZERO)
            continue
        if nr.degree == dr.degree:
            t0 = nr.lc / dr.lc
            if nr == dr * t0:
                add(t0)
                continue
        if coprime_certificate(P, m.df) or poly_gcd(P, m.df).degree == 0:
            u = (nr * _poly_inverse_mod(dr, P)) % P
            for v in roots_in_field(_minimal_polynomial_mod(u, P)):
                add(v)
        else:
            # part of P lies over infinity; split it off first
            g = poly_gcd(P, m.df)
            add(INFINITY)
            rest = P.exact_div(g)
            u = ((m.nf % rest) * _poly_inverse_mod(m.df % rest, rest)) % rest
            for v in roots_in_field(_minimal_polynomial_mod(u, rest)):
                add(v)
    if W.degree < 2 * N - 2:
        add(value_at_infinity(m))
    return values


def branch_points(m: RationalMap) -> list:
    """Branch points of m; finite ones first in order of discovery, infinity last."""
    if m.degree < 2:
        raise ValueError("map degree must be at least 2")
    vals = critical_values(m)
    finite = [v for v in vals if v is not INFINITY]
    return finite + ([INFINITY] if INFINITY in vals else [])


def branch_points_by_discriminant(m: RationalMap) -> list:
    """Independent route: roots of disc_x(nf - t df), plus the infinity rule."""
    D = discriminant_in_t(m)
    pts: list = list(roots_in_field(D)) if D.degree > 0 else []
    N = m.degree
    # infinity is a branch point iff df has a repeated root or its degree drops by 2 or more
    inf = m.df.degree < N - 1 or (m.df.degree >= 2 and not coprime_certificate(m.df, m.df.derivative())
                                  and poly_gcd(m.df, m.df.derivative()).degree > 0)
    if inf:
        pts.append(INFINITY)
    return pts


def same_point_set(a: Sequence, b: Sequence) -> bool:
    return len(a) == len(b) and all(x in b for x in a) and all(y in a for y in b)


def fiber_poly(m: RationalMap, q) -> tuple[Poly, int, bool]:
    """Square-free fiber polynomial over q, its uniform ramification index, and whether infinity lies in the fiber."""
    N = m.degree
    if q is INFINITY:
        p = m.df
    else:
        p = m.nf - m.df * cyc(q)
    if p.is_zero():
        raise ConsistencyError("constant map")
    inf_index = N - p.degree
    parts = squarefree_decomposition(p)
    mults = {k for k, _ in parts}
    if inf_index > 0:
        mults.add(inf_index)
    if len(mults) != 1:
        raise ConsistencyError(f"non-uniform multiplicities {sorted(mults)} over {q}")
    sqf = Poly.const(1)
    for _, f in parts:
        sqf = sqf * f
    return sqf, mults.pop(), inf_index > 0


def is_moebius_equivalent(m1: RationalMap, m2: RationalMap) -> Optional[MoebiusElt]:
    """M with M(m1) = m2, found by solving a linear system, or None."""
    if m1.degree != m2.degree:
        return None
    cols = [m1.nf * m2.df, m1.df * m2.df, -(m1.nf * m2.nf), -(m1.df * m2.nf)]
    rows_n = max(c.degree for c in cols) + 1
    rows = [[c.coeff(r) for c in cols] for r in range(rows_n)]
    # reduced row echelon over the coefficient field
    piv_cols, r = [], 0
    for col in range(4):
        piv = next((i for i in range(r, rows_n) if not rows[i][col].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(rows_n):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    free = [c for c in range(4) if c not in piv_cols]
    if len(free) != 1:
        return None
    sol = [_ZERO] * 4
    sol[free[0]] = _ONE
    for i, col in enumerate(piv_cols):
        sol[col] = -rows[i][free[0]]
    try:
        return MoebiusElt(*sol)
    except ValueError:
        return None


# ---------------------------------------------------------------------------
# cover data


# Branch points in the order used by the classification cases.
def ordered_branch_points(name: str, n: Optional[int] = None) -> list:
    label = _label(name)
    if label == "Z":
        return [_ZERO, INFINITY]
    if label == "D":
        return [CycNum.rational(2), CycNum.rational(-2), INFINITY]
    if label == "A4":
        # -6i*sqrt3 first: its fiber is x^4 + 2i*sqrt3*x^2 + 1
        q = 6 * I * SQRT3
        return [INFINITY, -q, q]
    if label == "S4":
        return [_ONE, _ZERO, INFINITY]
    return [CycNum.rational(1728), _ZERO, INFINITY]


_TABLE_BRANCHING = {
    "A4": [(2, 6), (3, 4), (3, 4)],
    "S4": [(2, 12), (3, 8), (4, 6)],
    "A5": [(2, 30), (3, 20), (5, 12)],
}


def expected_branching(name: str, n: Optional[int] = None) -> list[tuple[int, int]]:
    """Reduced branching as (index, number of points), in cover_data order."""
    label = _label(name)
    if label == "Z":
        return [(n, 1), (n, 1)]
    if label == "D":
        return [(2, n), (2, n), (n, 2)]
    return _TABLE_BRANCHING[label]


def cover_data(name: str, n: Optional[int] = None, check_points: bool = True) -> CoverData:
    label = _label(name)
    m = lemma_map(label, n)
    pts = ordered_branch_points(label, n)
    if check_points:
        found = branch_points(m)
        if not same_point_set(found, pts):
            raise ConsistencyError(f"branch points {found} differ from {pts}")
    fibers = [fiber_poly(m, q) for q in pts]
    data = CoverData(m, pts, fibers)
    N = m.degree
    if sum((e - 1) * k for e, k in data.branching()) != 2 * N - 2:
        raise ConsistencyError("Riemann-Hurwitz fails for the reduced cover")
    if sorted(data.branching()) != sorted(expected_branching(label, n)):
        raise ConsistencyError(f"branching {data.branching()} differs from the reduced signature")
    return data
