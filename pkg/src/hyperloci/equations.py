"""Generic equations y^2 = f(x) for each locus and checks of their symmetry."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import moebius as mb
from .classify import LocusRow
from .exactnum import CycNum, cyc, render
from .polyalg import Poly, X, is_squarefree


class DegenerateMember(ValueError):
    """A specialization with a repeated root, i.e. a singular curve."""


class FamilyError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Template:
    """The generic fiber nf - l*df, linear in the parameter l."""

    nf: Poly
    df: Poly

    @property
    def degree(self) -> int:
        return max(self.nf.degree, self.df.degree)

    def at(self, value) -> Poly:
        return self.nf - self.df * cyc(value)

    def render(self, param: str, var: str = "x") -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            a, b = self.nf.coeff(k), -self.df.coeff(k)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if b.is_zero():
                if a.is_zero():
                    continue
                coef = render(a)
            elif a.is_zero():
                coef = param if b == 1 else ("-" + param if b == -1 else f"{_paren(render(b))}*{param}")
            else:
                bs = param if b == 1 else ("-" + param if b == -1 else f"{_paren(render(b))}*{param}")
                coef = f"({render(a)} + {bs})".replace("+ -", "- ")
            terms.append((coef, mono))
        return _join(terms)


def _paren(s: str) -> str:
    return f"({s})" if (" " in s) else s


def _join(terms: list[tuple[str, str]]) -> str:
    out = ""
    for coef, mono in terms:
        if mono:
            body = mono if coef == "1" else ("-" + mono if coef == "-1" else f"{coef}*{mono}")
        else:
            body = coef
        if not out:
            out = body
        elif body.startswith("-"):
            out += " - " + body[1:]
        else:
            out += " + " + body
    return out or "0"


def generic_fiber_poly(reduced: str, n: Optional[int] = None) -> Template:
    """nf - l*df for the normalized invariant map; the octahedral one is scaled by 108."""
    m = mb.lemma_map(reduced, n)
    if mb._label(reduced) == "S4":
        return Template(m.nf * 108, m.df * 108)
    return Template(m.nf, m.df)


@dataclass
class CurveFamily:
    row: LocusRow
    fixed_factors: list[Poly]
    template: Optional[Template]
    delta: int
    includes_infinity: bool
    reduced_generators: list = field(default_factory=list)

    @property
    def degree(self) -> int:
        d = sum(p.degree for p in self.fixed_factors)
        if self.template is not None:
            d += self.delta * self.template.degree
        else:
            d += self.delta
        return d

    def render(self) -> str:
        parts = []
        for p in self.fixed_factors:
            if p.degree == 1 and p == X:
                parts.append("x")
            elif p.degree > 0:
                parts.append(f"({p.render()})")
        for i in range(1, self.delta + 1):
            if self.template is None:
                parts.append(f"(x - l{i})")
            else:
                parts.append(f"({self.template.render(f'l{i}')})")
        return "y^2 = " + ("*".join(parts) if parts else "1")

    def render_unnormalized(self) -> str:
        """For cyclic reduced groups: the normalized fiber x^n - 1 shown as one more free parameter."""
        if self.row.reduced != "Z" or self.row.case == 0 or self.template is None:
            return self.render()
        fixed = self.fixed_factors[:-1]
        parts = ["x" if p == X else f"({p.render()})" for p in fixed if p.degree > 0]
        parts += [f"({self.template.render(f'l{i}')})" for i in range(1, self.delta + 2)]
        return "y^2 = " + "*".join(parts)

    def to_json(self) -> dict:
        return {
            "case": self.row.case,
            "genus": self.row.genus,
            "group": self.row.display,
            "delta": self.delta,
            "degree": self.degree,
            "infinity_is_weierstrass": self.includes_infinity,
            "fixed_factors": [p.render() for p in self.fixed_factors],
            "template": None if self.template is None else self.template.render("l"),
            "equation": self.render(),
        }


def build_family(row: LocusRow) -> CurveFamily:
    """Fixed factors are the fibers over branch points in W; the rest are generic fibers."""
    g = row.genus
    if row.case == 0:
        # normalize three Weierstrass points to 0, 1, infinity
        fam = CurveFamily(row, [X, X - 1], None, row.delta, True, [])
    else:
        cover = mb.cover_data(row.reduced, row.reduced_n, check_points=False)
        fixed: list[Poly] = []
        inf = False
        for i in row.in_w:
            poly, _, has_inf = cover.fiber_polys[i]
            if poly.degree > 0:
                fixed.append(poly)
            inf = inf or has_inf
        template = generic_fiber_poly(row.reduced, row.reduced_n)
        if row.reduced == "Z":
            # one generic fiber normalized to x^n - 1
            fixed.append(template.at(1))
        gens = mb.standard_embedding(row.reduced, row.reduced_n).generators
        fam = CurveFamily(row, fixed, template, row.delta, inf, gens)
    expected = 2 * g + 1 if fam.includes_infinity else 2 * g + 2
    if fam.degree != expected:
        raise FamilyError(f"case {row.case}: degree {fam.degree}, expected {expected}")
    return fam


def specialize(fam: CurveFamily, values: Sequence) -> Poly:
    if len(values) != fam.delta:
        raise ValueError(f"need {fam.delta} values, got {len(values)}")
    f = Poly.const(1)
    for p in fam.fixed_factors:
        f = f * p
    for v in values:
        f = f * (X - cyc(v) if fam.template is None else fam.template.at(v))
    if not is_squarefree(f):
        raise DegenerateMember("specialization has a repeated root (degenerate member)")
    return f


def _binary_form_invariant(f: Poly, g: int, A: mb.MoebiusElt) -> bool:
    """F(aX + bZ, cX + dZ) = c_A * F(X, Z) for the degree 2g+2 binary form of f."""
    img = f.homogeneous_substitute(Poly([A.b, A.a]), Poly([A.d, A.c]), 2 * g + 2)
    if img.degree != f.degree:
        return False
    lam = img.lc / f.lc
    return img == f * lam


def verify_family(fam: CurveFamily, trials: int = 100, seed: int = 0, bound: int = 1000) -> bool:
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    g = fam.row.genus
    done = attempts = 0
    while done < trials:
        attempts += 1
        if attempts > 20 * trials:
            raise FamilyError("could not draw non-degenerate members")
        values = [rng.randint(-bound, bound) for _ in range(fam.delta)]
        try:
            f = specialize(fam, values)
        except DegenerateMember:
            continue
        if f.degree not in (2 * g + 1, 2 * g + 2):
            return False
        for A in fam.reduced_generators:
            if not _binary_form_invariant(f, g, A):
                return False
        done += 1
    return True


def expand(fam: CurveFamily) -> dict[tuple[int, tuple[int, ...]], CycNum]:
    """Expanded f as {(x exponent, parameter exponents): coefficient}."""
    terms: dict[tuple[int, tuple[int, ...]], CycNum] = {}
    base = Poly.const(1)
    for p in fam.fixed_factors:
        base = base * p
    zero = (0,) * fam.delta
    for k, c in enumerate(base.coeffs):
        if not c.is_zero():
            terms[(k, zero)] = c
    for i in range(fam.delta):
        if fam.template is None:
            nf, df = X, Poly.const(1)
        else:
            nf, df = fam.template.nf, fam.template.df
        bump = tuple(1 if j == i else 0 for j in range(fam.delta))
        new: dict = {}
        for (k, ls), c in terms.items():
            for j, a in enumerate(nf.coeffs):
                if not a.is_zero():
                    key = (k + j, ls)
                    new[key] = new.get(key, CycNum.rational(0)) + c * a
            for j, b in enumerate(df.coeffs):
                if not b.is_zero():
                    key = (k + j, tuple(x + y for x, y in zip(ls, bump)))
                    new[key] = new.get(key, CycNum.rational(0)) - c * b
        terms = {k: v for k, v in new.items() if not v.is_zero()}
    return terms


def render_expanded(fam: CurveFamily) -> str:
    terms = expand(fam)
    parts = []
    for (k, ls) in sorted(terms, key=lambda t: (-t[0], sum(t[1]), tuple(-e for e in t[1]))):
        c = terms[(k, ls)]
        atoms = [f"l{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(ls) if e]
        if k:
            atoms.append("x" if k == 1 else f"x^{k}")
        cs = render(c)
        if " " in cs:
            cs = f"({cs})"
        if not atoms:
            parts.append((cs, ""))
        elif cs in ("1", "-1"):
            parts.append((cs, "*".join(atoms)))
        else:
            parts.append((cs, "*".join(atoms)))
    return "y^2 = " + _join(parts)


# Fixed factors as printed in the paper's equation table, for a side-by-side degree report.
_R = "x^12 - 33*x^8 - 33*x^4 + 1"
_S = "x^8 + 14*x^4 + 1"
_T = "x^5 - x"
_PHI = "x^20 - 228*x^15 + 494*x^10 + 228*x^5 + 1"
_CHI = "x^11 + 11*x^6 - x"
_PSI = "x^30 + 522*x^25 - 10005*x^20 - 10005*x^10 - 522*x^5 + 1"
PRINTED_FIXED = {
    10: [], 11: ["x^4 + 2*I*sqrt3*x^2 + 1"], 12: [_S], 13: [_T], 14: [_T, "x^4 + 2*I*sqrt3*x^2 + 1"],
    15: [_T, _S],
    16: [], 17: [_S], 18: [_T], 19: [_S, _T], 20: [_R], 21: [_R, _S], 22: [_R, _T], 23: [_R, _S, _T],
    24: [], 25: [_PHI], 26: [_CHI], 27: [_PSI], 28: [_PHI, _CHI], 29: [_CHI, _PSI], 30: [_PHI, _PSI],
    31: [_PHI, _CHI, _PSI],
}
