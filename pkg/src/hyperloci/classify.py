"""Loci of hyperelliptic curves with extra automorphisms, genus by genus.

Each case pairs a reduced group with the set W of its branch points whose
fibers consist of Weierstrass points.  Signature entries follow from W: a
reduced branch point of index e contributes (2e)^(|G|/2e) when in W and
e^(|G|/e) otherwise; each of the delta generic Weierstrass fibers
contributes 2^(|G|/2).
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from . import grouptheory as gt

F = Fraction


@dataclass(frozen=True)
class CaseSpec:
    case: int
    reduced: str
    family: str
    in_w: tuple[int, ...]  # indices into the ordered reduced branch points
    printed_delta: Callable[[int, Optional[int]], Fraction]
    constraint: str = ""


def _group_param(family: str, n: Optional[int]) -> Optional[int]:
    if family == "Z":
        return 2 * n
    if family == "D":
        return 4 * n
    return n


# reduced branch points: Z (0, inf), D (2, -2, inf), A4 (inf, -6i*sqrt3, 6i*sqrt3),
# S4 (1, 0, inf), A5 (1728, 0, inf)
CASES: dict[int, CaseSpec] = {c.case: c for c in [
    CaseSpec(1, "Z", "Z2xZ", (), lambda g, n: F(2 * g + 2, n) - 1, "n<g+1"),
    CaseSpec(2, "Z", "Z", (1,), lambda g, n: F(2 * g + 1, n) - 1),
    CaseSpec(3, "Z", "Z", (0, 1), lambda g, n: F(2 * g, n) - 1, "n<g"),
    CaseSpec(4, "D", "Z2xD", (), lambda g, n: F(g + 1, n)),
    CaseSpec(5, "D", "V", (0,), lambda g, n: F(g + 1, n) - F(1, 2), "even"),
    CaseSpec(6, "D", "D", (2,), lambda g, n: F(g, n)),
    CaseSpec(7, "D", "H", (0, 1), lambda g, n: F(g + 1, n) - 1, "n<g+1,even"),
    CaseSpec(8, "D", "U", (0, 2), lambda g, n: F(g, n) - F(1, 2), "g!=2,even"),
    CaseSpec(9, "D", "G", (0, 1, 2), lambda g, n: F(g, n) - 1, "n<g,even"),
    CaseSpec(10, "A4", "Z2xA4", (), lambda g, n: F(g + 1, 6)),
    CaseSpec(11, "A4", "Z2xA4", (1,), lambda g, n: F(g - 1, 6)),
    CaseSpec(12, "A4", "Z2xA4", (1, 2), lambda g, n: F(g - 3, 6), "delta!=0"),
    CaseSpec(13, "A4", "SL2(3)", (0,), lambda g, n: F(g - 2, 6), "delta!=0"),
    CaseSpec(14, "A4", "SL2(3)", (0, 1), lambda g, n: F(g - 4, 6)),
    CaseSpec(15, "A4", "SL2(3)", (0, 1, 2), lambda g, n: F(g - 6, 6), "delta!=0"),
    CaseSpec(16, "S4", "Z2xS4", (), lambda g, n: F(g + 1, 12)),
    CaseSpec(17, "S4", "Z2xS4", (1,), lambda g, n: F(g - 3, 12)),
    CaseSpec(18, "S4", "GL2(3)", (2,), lambda g, n: F(g - 2, 12)),
    CaseSpec(19, "S4", "GL2(3)", (1, 2), lambda g, n: F(g - 6, 12)),
    CaseSpec(20, "S4", "W2", (0,), lambda g, n: F(g - 5, 12)),
    CaseSpec(21, "S4", "W2", (0, 1), lambda g, n: F(g - 9, 12)),
    CaseSpec(22, "S4", "W3", (0, 2), lambda g, n: F(g - 8, 12)),
    CaseSpec(23, "S4", "W3", (0, 1, 2), lambda g, n: F(g - 12, 12)),
    CaseSpec(24, "A5", "Z2xA5", (), lambda g, n: F(g + 1, 30)),
    CaseSpec(25, "A5", "Z2xA5", (2,), lambda g, n: F(g - 5, 30)),
    CaseSpec(26, "A5", "Z2xA5", (1, 2), lambda g, n: F(g - 15, 30)),
    CaseSpec(27, "A5", "Z2xA5", (1,), lambda g, n: F(g - 9, 30)),
    CaseSpec(28, "A5", "SL2(5)", (0,), lambda g, n: F(g - 14, 30)),
    CaseSpec(29, "A5", "SL2(5)", (0, 2), lambda g, n: F(g - 20, 30)),
    CaseSpec(30, "A5", "SL2(5)", (0, 1), lambda g, n: F(g - 24, 30)),
    CaseSpec(31, "A5", "SL2(5)", (0, 1, 2), lambda g, n: F(g - 30, 30)),
]}

PARAMETRIC = {"Z", "D"}


def reduced_order(reduced: str, n: Optional[int]) -> int:
    return {"Z": n, "D": 2 * n if n else 0, "A4": 12, "S4": 24, "A5": 60}[reduced]


def reduced_indices(reduced: str, n: Optional[int]) -> tuple[int, ...]:
    """Ramification indices of the ordered reduced branch points."""
    return {"Z": (n, n), "D": (2, 2, n), "A4": (2, 3, 3), "S4": (2, 3, 4), "A5": (2, 3, 5)}[reduced]


def fiber_sizes(reduced: str, n: Optional[int]) -> tuple[int, ...]:
    N = reduced_order(reduced, n)
    return tuple(N // e for e in reduced_indices(reduced, n))


def generic_count(case: int, n: Optional[int], g: int) -> Fraction:
    """Number of generic Weierstrass fibers forced by 2g+2 Weierstrass points."""
    spec = CASES[case]
    sizes = fiber_sizes(spec.reduced, n)
    fixed = sum(sizes[i] for i in spec.in_w)
    return F(2 * g + 2 - fixed, reduced_order(spec.reduced, n))


def dimension(case: int, n: Optional[int], g: int) -> Fraction:
    """The printed delta formula, evaluated exactly."""
    spec = CASES[case]
    if spec.reduced in PARAMETRIC and n is None:
        raise ValueError(f"case {case} needs n")
    return spec.printed_delta(g, n)


def derived_dimension(case: int, n: Optional[int], g: int) -> Fraction:
    """delta from Weierstrass-point bookkeeping: generic fibers, minus one normalization for cyclic groups."""
    k = generic_count(case, n, g)
    return k - 1 if CASES[case].reduced == "Z" else k


# ---------------------------------------------------------------------------
# rows


@dataclass
class LocusRow:
    case: int
    reduced: str
    reduced_n: Optional[int]
    family: str
    group_n: Optional[int]
    order: int
    genus: int
    delta: int
    prefix: list[tuple[int, int]]
    tail: tuple[int, int]
    tail_count: int
    in_w: tuple[int, ...] = ()
    g0: int = 0

    @property
    def r(self) -> int:
        return len(self.prefix) + self.tail_count

    @property
    def signature(self) -> list[tuple[int, int]]:
        return list(self.prefix) + [self.tail] * self.tail_count

    def signature_key(self) -> tuple:
        return tuple(sorted(self.signature))

    @property
    def display(self) -> str:
        return gt.display_name(self.family, self.group_n, self.order)

    def group(self) -> gt.FiniteGroup:
        return gt.construct(self.family, self.group_n)

    def to_json(self) -> dict:
        reduced = {"name": self.reduced}
        if self.reduced in PARAMETRIC:
            reduced["n"] = self.reduced_n
        group = {"family": self.family, "order": self.order, "display": self.display}
        if self.group_n is not None:
            group["n"] = self.group_n
        return {
            "case": self.case,
            "reduced": reduced,
            "group": group,
            "delta": self.delta,
            "signature": [[a, b] for a, b in self.signature],
            "r": self.r,
        }


def signature(case: int, n: Optional[int], g: int) -> LocusRow:
    """Materialize the signature of an admissible row; raises if Riemann-Hurwitz fails."""
    spec = CASES[case]
    delta = dimension(case, n, g)
    if delta.denominator != 1 or delta < 0:
        raise ValueError(f"case {case} is not admissible at n={n}, g={g}")
    N = reduced_order(spec.reduced, n)
    order = 2 * N
    tail = (2, N)
    prefix = []
    tail_count = int(generic_count(case, n, g))
    for i, e in enumerate(reduced_indices(spec.reduced, n)):
        cls = (2 * e, N // e) if i in spec.in_w else (e, 2 * N // e)
        if cls == tail:
            tail_count += 1
        else:
            prefix.append(cls)
    row = LocusRow(case, spec.reduced, n if spec.reduced in PARAMETRIC else None, spec.family,
                   _group_param(spec.family, n), order, g, int(delta), prefix, tail, tail_count, spec.in_w)
    if not rh_verify(row):
        raise ArithmeticError(f"Riemann-Hurwitz fails for case {case}, n={n}, g={g}")
    return row


def root_row(g: int) -> LocusRow:
    """The generic locus: full group Z2, all 2g+2 Weierstrass points branch."""
    return LocusRow(0, "Z", 1, "Z", 2, 2, g, 2 * g - 1, [], (2, 1), 2 * g + 2)


def rh_verify(row: LocusRow) -> bool:
    total = sum(count * (length - 1) for length, count in row.signature)
    if 2 * row.genus - 2 != -2 * row.order + total:
        return False
    if any(length * count != row.order for length, count in row.signature):
        return False
    return row.delta == row.r - 3 and row.delta >= 0


def admissibility_failure(case: int, n: Optional[int], g: int, strict_parity: bool = False) -> Optional[str]:
    """The violated condition, or None when the row is admissible."""
    if case not in CASES:
        return f"unknown case {case}"
    spec = CASES[case]
    if spec.reduced in PARAMETRIC:
        if n is None:
            return "parameter n required"
        if n < 2:
            return "n must be at least 2"
    delta = dimension(case, n, g)
    if delta.denominator != 1:
        return "delta not integral"
    if delta < 0:
        return "delta negative"
    rules = spec.constraint.split(",") if spec.constraint else []
    if strict_parity and case == 4:
        rules.append("even")
    for rule in rules:
        if rule == "n<g+1" and not n < g + 1:
            return "constraint n < g+1 violated"
        if rule == "n<g" and not n < g:
            return "constraint n < g violated"
        if rule == "g!=2" and g == 2:
            return "constraint g != 2 violated"
        if rule == "delta!=0" and delta == 0:
            return "constraint delta != 0 violated"
        if rule == "even" and n % 2:
            return "parity rule (n even) violated"
    return None


def admissible(case: int, n: Optional[int], g: int, strict_parity: bool = False) -> bool:
    return admissibility_failure(case, n, g, strict_parity) is None


def candidate_parameters(case: int, g: int) -> list[Optional[int]]:
    spec = CASES[case]
    if spec.reduced not in PARAMETRIC:
        return [None]
    # a generic fiber count k >= 0 bounds n by 2g+2
    return list(range(2, 2 * g + 3))


# families listed first are kept when two rows describe the same locus
FAMILY_PREFERENCE = ("Z", "Z2xZ", "Z2xD", "D", "V", "H", "G", "U")


def _preference(row: LocusRow) -> tuple:
    fam = FAMILY_PREFERENCE.index(row.family) if row.family in FAMILY_PREFERENCE else len(FAMILY_PREFERENCE)
    return (fam, row.case, row.group_n or 0)


def enumerate_loci(g: int, strict_parity: bool = False, dedupe: bool = True) -> list[LocusRow]:
    if g < 2:
        raise ValueError("genus must be at least 2")
    rows = [root_row(g)]
    for case in CASES:
        for n in candidate_parameters(case, g):
            if admissible(case, n, g, strict_parity):
                rows.append(signature(case, n, g))
    if dedupe:
        rows = _dedupe(rows)
    rows.sort(key=lambda r: (-r.delta, r.order, _preference(r)))
    return rows


def _dedupe(rows: list[LocusRow]) -> list[LocusRow]:
    kept: list[LocusRow] = []
    for row in sorted(rows, key=_preference):
        dup = False
        for other in kept:
            if other.order != row.order or other.signature_key() != row.signature_key():
                continue
            if same_group(other, row):
                dup = True
                break
        if not dup:
            kept.append(row)
    return kept


def same_group(a: LocusRow, b: LocusRow) -> bool:
    if (a.family, a.group_n) == (b.family, b.group_n):
        return True
    return bool(_iso_cached(a.family, a.group_n, b.family, b.group_n))


@lru_cache(maxsize=None)
def _iso_cached(f1, n1, f2, n2):
    return gt.is_isomorphic(gt.construct(f1, n1), gt.construct(f2, n2))


# ---------------------------------------------------------------------------
# counting lemma


def div(n: int) -> int:
    """Number of positive divisors."""
    return sum(1 for d in range(1, n + 1) if n % d == 0)


def ddiv(n: int) -> int:
    """Number of even positive divisors."""
    return sum(1 for d in range(2, n + 1, 2) if n % d == 0)


@dataclass
class CountReport:
    genus: int
    formulas: dict[str, object]
    enumerated: dict[str, int]
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"genus": self.genus, "formulas": self.formulas, "enumerated": self.enumerated, "notes": self.notes}


def count_formulas(g: int) -> CountReport:
    if g < 2:
        raise ValueError("genus must be at least 2")
    formulas: dict[str, object] = {
        "n1": div(g + 1) + div(2 * g + 1) + div(2 * g) - 1,
        "n2": 3 * ddiv(g + 1) + 2 * ddiv(g) + div(g) - 2,
        "n3": 1 if g > 6 else None,
        "n4": "0 or 1",
        "n5": "0 or 1",
    }
    rows = enumerate_loci(g)
    counts = Counter(r.reduced for r in rows)
    enumerated = {k: counts.get(k, 0) for k in ("Z", "D", "A4", "S4", "A5")}
    notes = []
    for key, red in (("n1", "Z"), ("n2", "D")):
        diff = formulas[key] - enumerated[red]
        if diff:
            notes.append(f"{key}={formulas[key]} vs {enumerated[red]} enumerated rows with reduced group {red} "
                         f"(difference {diff}); the lemma does not say what it counts")
    return CountReport(g, formulas, enumerated, notes)


def rows_to_json(rows: list[LocusRow]) -> str:
    return json.dumps([r.to_json() for r in rows], indent=2)
