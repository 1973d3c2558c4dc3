"""Finite groups from presentations and standard families; isomorphism and embedding search.

Groups are stored as Cayley tables over elements 0..order-1 with 0 the
identity.  The product ``mul[a * order + b]`` means "a then b" in the
right-regular sense: it is the coset reached from a by reading b's word.
"""
from __future__ import annotations

import itertools
import math
import os
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Hashable, Optional, Sequence

from . import kernels
from .kernels import CosetOverflow

DEFAULT_CAP = 4096
DEFAULT_BUDGET = 200_000


class UnknownFamily(ValueError):
    pass


class _Undetermined:
    def __repr__(self) -> str:
        return "UNDETERMINED"

    def __bool__(self) -> bool:
        return False


UNDETERMINED = _Undetermined()


def default_budget() -> int:
    try:
        return int(os.environ.get("HYPERLOCI_BUDGET", DEFAULT_BUDGET))
    except ValueError:
        return DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    """Generators 1..ngens; a relator letter k > 0 is generator k, -k its inverse."""

    ngens: int
    relators: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = ("x", "y", "z")

    @classmethod
    def parse(cls, text: str, names: Sequence[str] = ("x", "y")) -> Presentation:
        """Relators separated by commas, e.g. ``"x^4, y^n, (x*y)^2"`` with n substituted."""
        rels = tuple(tuple(parse_word(r, names)) for r in _split_top(text))
        return cls(len(names), rels, tuple(names))

    def columns(self) -> list[list[int]]:
        return [[2 * (abs(a) - 1) + (1 if a < 0 else 0) for a in r] for r in self.relators]


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts if p.strip()]


_WORD_TOKEN = re.compile(r"\s*(\(|\)|\^-?\d+|[A-Za-z]|\*)")


def parse_word(text: str, names: Sequence[str] = ("x", "y")) -> list[int]:
    """Word like ``x^-1*y*(x*y)^3`` to signed generator indices."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _WORD_TOKEN.match(text, pos)
        if not mt:
            raise ValueError(f"bad word {text!r} at {pos}")
        tokens.append(mt.group(1))
        pos = mt.end()
    stack: list[list[int]] = [[]]
    last: list[int] = []
    for tok in tokens:
        if tok == "*":
            continue
        if tok == "(":
            stack.append([])
        elif tok == ")":
            last = stack.pop()
            stack[-1].extend(last)
        elif tok.startswith("^"):
            e = int(tok[1:])
            base = last
            del stack[-1][len(stack[-1]) - len(base):]
            if e < 0:
                base = [-a for a in reversed(base)]
                e = -e
            last = base * e
            stack[-1].extend(last)
        else:
            last = [names.index(tok) + 1]
            stack[-1].extend(last)
    if len(stack) != 1:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    return stack[0]


# ---------------------------------------------------------------------------
# the group type


@dataclass
class FiniteGroup:
    order: int
    mul: list[int]
    gens: list[int]
    family: str = ""
    n: Optional[int] = None
    _orders: Optional[list[int]] = field(default=None, repr=False)
    _inv: Optional[list[int]] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if len(self.mul) != self.order * self.order:
            raise ValueError("Cayley table has the wrong size")

    def prod(self, a: int, b: int) -> int:
        return self.mul[a * self.order + b]

    @property
    def element_orders(self) -> list[int]:
        if self._orders is None:
            self._orders = list(kernels.element_orders(self.mul, self.order))
        return self._orders

    @property
    def inverses(self) -> list[int]:
        if self._inv is None:
            n = self.order
            inv = [0] * n
            for a in range(n):
                row = a * n
                for b in range(n):
                    if self.mul[row + b] == 0:
                        inv[a] = b
                        break
            self._inv = inv
        return self._inv

    def permutation(self, g: int) -> list[int]:
        """Right-regular permutation u -> u*g."""
        n = self.order
        return [self.mul[u * n + g] for u in range(n)]

    def right_tables(self, gens: Sequence[int]) -> list[list[int]]:
        return [self.permutation(g) for g in gens]

    def is_abelian(self) -> bool:
        return all(self.prod(a, b) == self.prod(b, a) for a, b in itertools.combinations(self.gens, 2))

    def center_order(self) -> int:
        return sum(1 for z in range(self.order) if all(self.prod(z, g) == self.prod(g, z) for g in self.gens))

    def subgroup_closure(self, elems: Sequence[int]) -> list[int]:
        seen = {0}
        frontier = [0]
        gens = [e for e in set(elems) if e != 0]
        while frontier:
            nxt = []
            for u in frontier:
                for g in gens:
                    v = self.prod(u, g)
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        return sorted(seen)

    def generates(self, elems: Sequence[int]) -> bool:
        return len(self.subgroup_closure(elems)) == self.order

    def conjugacy_classes(self) -> list[list[int]]:
        inv = self.inverses
        seen: set[int] = set()
        classes = []
        for a in range(self.order):
            if a in seen:
                continue
            cls = sorted({self.prod(self.prod(inv[g], a), g) for g in range(self.order)})
            seen.update(cls)
            classes.append(cls)
        return classes

    def derived_subgroup(self) -> list[int]:
        inv = self.inverses
        comms = set()
        for a in range(self.order):
            for b in self.gens:
                comms.add(self.prod(self.prod(inv[a], inv[b]), self.prod(a, b)))
        # normal closure of generator commutators equals the derived subgroup
        conj = {self.prod(self.prod(inv[g], c), g) for c in comms for g in range(self.order)}
        return self.subgroup_closure(sorted(conj))

    def abelian_invariants(self) -> tuple[int, ...]:
        """Invariant factors of the abelianization, e.g. (2, 4)."""
        D = set(self.derived_subgroup())
        # cosets of D; orders of elements in G/D
        coset_of = {}
        reps = []
        for a in range(self.order):
            if a in coset_of:
                continue
            idx = len(reps)
            reps.append(a)
            for d in D:
                coset_of[self.prod(a, d)] = idx
        q_orders = []
        for a in reps:
            k, x = 1, a
            while coset_of[x] != 0:
                x = self.prod(x, a)
                k += 1
            q_orders.append(k)
        return _invariants_from_orders(q_orders)

    def fingerprint(self) -> Fingerprint:
        return Fingerprint(
            self.order,
            self.abelian_invariants(),
            tuple(sorted(Counter(self.element_orders).items())),
            self.center_order(),
        )

    @property
    def display(self) -> str:
        return display_name(self.family, self.n, self.order)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.display}, order={self.order})"


@dataclass(frozen=True)
class Fingerprint:
    order: int
    abelian_invariants: tuple[int, ...]
    element_orders: tuple[tuple[int, int], ...]
    center_order: int


def _invariants_from_orders(orders: Sequence[int]) -> tuple[int, ...]:
    n = len(orders)
    if n == 1:
        return ()
    factors: list[list[int]] = []
    for p in _primes_of(n):
        # number of elements of order dividing p^k determines the p-primary part
        k, counts = 0, []
        while True:
            c = sum(1 for o in orders if (p ** k) % o == 0)
            counts.append(c)
            if c == n or k > 64:
                break
            k += 1
        # counts[k] = prod_i p^{min(k, e_i)}; recover exponents e_i
        logs = [round(math.log(c, p)) for c in counts]
        exps = []
        for k in range(1, len(logs)):
            exps.append(logs[k] - logs[k - 1])  # number of e_i >= k
        parts = []
        for k in range(len(exps)):
            nxt = exps[k + 1] if k + 1 < len(exps) else 0
            parts += [p ** (k + 1)] * (exps[k] - nxt)
        factors.append(sorted(parts, reverse=True))
    width = max((len(f) for f in factors), default=0)
    out = []
    for i in range(width):
        v = 1
        for f in factors:
            if i < len(f):
                v *= f[i]
        out.append(v)
    return tuple(sorted(out))


def _primes_of(n: int) -> list[int]:
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


# ---------------------------------------------------------------------------
# construction


def coset_enumerate(p: Presentation, cap: int = DEFAULT_CAP, family: str = "", n: Optional[int] = None) -> FiniteGroup:
    """Regular representation of the presented group by coset enumeration."""
    table = kernels.coset_enumerate(p.ngens, p.columns(), cap)
    order = len(table)
    # word for each coset by breadth-first search, then right multiplication by words
    words: list[Optional[list[int]]] = [None] * order
    words[0] = []
    queue = [0]
    for c in queue:
        for col in range(2 * p.ngens):
            d = table[c][col]
            if words[d] is None:
                words[d] = words[c] + [col]
                queue.append(d)
    mul = [0] * (order * order)
    for a in range(order):
        row = a * order
        for b in range(order):
            c = a
            for col in words[b]:
                c = table[c][col]
            mul[row + b] = c
    gens = [table[0][2 * k] for k in range(p.ngens)]
    return FiniteGroup(order, mul, gens, family, n)


def from_elements(identity: Hashable, gens: Sequence[Hashable], op: Callable, family: str = "",
                  n: Optional[int] = None, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Close ``gens`` under ``op`` and index the elements, identity first."""
    elems = [identity]
    index = {identity: 0}
    i = 0
    while i < len(elems):
        for g in gens:
            h = op(elems[i], g)
            if h not in index:
                index[h] = len(elems)
                elems.append(h)
                if len(elems) > cap:
                    raise CosetOverflow("group exceeds the cap")
        i += 1
    order = len(elems)
    mul = [index[op(a, b)] for a in elems for b in elems]
    return FiniteGroup(order, mul, [index[g] for g in gens], family, n)


def direct_product(A: FiniteGroup, B: FiniteGroup, family: str = "", n: Optional[int] = None) -> FiniteGroup:
    na, nb = A.order, B.order
    order = na * nb
    mul = [0] * (order * order)
    for a1 in range(na):
        for b1 in range(nb):
            row = (a1 * nb + b1) * order
            for a2 in range(na):
                pa = A.mul[a1 * na + a2] * nb
                for b2 in range(nb):
                    mul[row + a2 * nb + b2] = pa + B.mul[b1 * nb + b2]
    gens = [g * nb for g in A.gens] + list(B.gens)
    return FiniteGroup(order, mul, gens, family, n)


def cyclic(m: int) -> FiniteGroup:
    mul = [(a + b) % m for a in range(m) for b in range(m)]
    return FiniteGroup(m, mul, [1 % m] if m > 1 else [0], "Z", m)


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group with ``order`` elements (r^i s^j)."""
    k = order // 2

    def op(u, v):
        (i, j), (a, b) = u, v
        return ((i + (a if j == 0 else -a)) % k, (j + b) % 2)

    return from_elements((0, 0), [(1 % k, 0), (0, 1)], op, "D", order)


def _perm_op(p, q):
    # apply p then q
    return tuple(q[i] for i in p)


def symmetric4() -> FiniteGroup:
    return from_elements(tuple(range(4)), [(1, 2, 3, 0), (1, 0, 2, 3)], _perm_op, "S4")


def alternating4() -> FiniteGroup:
    return from_elements(tuple(range(4)), [(1, 2, 0, 3), (1, 0, 3, 2)], _perm_op, "A4")


def alternating5() -> FiniteGroup:
    return from_elements(tuple(range(5)), [(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)], _perm_op, "A5")


def matrix_group(p: int, det_one: bool) -> FiniteGroup:
    """SL2 or GL2 over the integers mod a prime p."""

    def op(u, v):
        a, b, c, d = u
        e, f, g, h = v
        return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)

    ident = (1, 0, 0, 1)
    elems = [m for m in itertools.product(range(p), repeat=4)
             if ((m[0] * m[3] - m[1] * m[2]) % p == 1 if det_one else (m[0] * m[3] - m[1] * m[2]) % p != 0)]
    elems.remove(ident)
    elems = [ident] + elems
    index = {m: i for i, m in enumerate(elems)}
    mul = [index[op(a, b)] for a in elems for b in elems]
    G = FiniteGroup(len(elems), mul, [], "SL2" if det_one else "GL2", p)
    G.gens = small_generating_set(G)
    return G


def small_generating_set(G: FiniteGroup) -> list[int]:
    """A generating set of at most three elements, chosen greedily by element order."""
    by_order = sorted(range(1, G.order), key=lambda a: (-G.element_orders[a], a))
    for a in by_order:
        if G.generates([a]):
            return [a]
    for a in by_order:
        for b in by_order:
            if b > a and G.generates([a, b]):
                return [a, b]
    for a, b, c in itertools.combinations(by_order, 3):
        if G.generates([a, b, c]):
            return [a, b, c]
    return by_order


# presentations of the central extensions of D_n and S4; U_n uses y^(2n), W3 uses x^4
PRESENTATIONS = {
    "V": "x^4, y^{n}, (x*y)^2, (x^-1*y)^2",
    "H": "x^4, y^2*x^2, (x*y)^{n}",
    "G": "x^2*y^{n}, y^{2*n}, x^-1*y*x*y",
    "U": "x^2, y^{2*n}, x*y*x*y^{n+1}",
    "W2": "x^4, y^3, y*x^2*y^-1*x^2, (x*y)^4",
    "W3": "x^4, y^3, x^2*(x*y)^4, (x*y)^8",
    "Q": "x^{2*n}, y^2*x^-{n}, y^-1*x*y*x",
}

# verbatim forms, kept for the record of the two corrections above
PRINTED_PRESENTATIONS = {
    "U": "x^2, y^{n}, x*y*x*y^{n+1}",
    "W3": "x^2, y^3, x^2*(x*y)^4, (x*y)^8",
}


def presentation(family: str, n: Optional[int] = None, printed: bool = False) -> Presentation:
    src = PRINTED_PRESENTATIONS if printed and family in PRINTED_PRESENTATIONS else PRESENTATIONS
    text = src[family]
    if n is not None:
        text = re.sub(r"\{([^}]*)\}", lambda mt: str(eval(mt.group(1), {"n": n})), text)
    return Presentation.parse(text)


FAMILIES = ("Z", "Z2xZ", "D", "Z2xD", "V", "H", "G", "U", "Z2xA4", "SL2(3)", "Z2xS4", "GL2(3)",
            "W2", "W3", "Z2xA5", "SL2(5)", "Q")


@lru_cache(maxsize=256)
def construct(family: str, n: Optional[int] = None, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Concrete group for a family name.

    Parameters: Z and D take the group order; Z2xZ, Z2xD, V, H, G, U take
    the n of the presentations (order 2n, 4n, 4n, ...); Q takes n with
    order 4n (generalized quaternion).
    """
    if family == "Z":
        return cyclic(n)
    if family == "D":
        return dihedral(n)
    if family == "Z2xZ":
        G = direct_product(cyclic(2), cyclic(n))
    elif family == "Z2xD":
        G = direct_product(cyclic(2), dihedral(2 * n))
    elif family in ("V", "H", "G", "U", "Q"):
        if n is None or n < 1:
            raise UnknownFamily(f"{family} needs a parameter n")
        G = coset_enumerate(presentation(family, n), cap)
    elif family in ("W2", "W3"):
        G = coset_enumerate(presentation(family), cap)
        n = None
    elif family == "Z2xA4":
        G, n = direct_product(cyclic(2), alternating4()), None
    elif family == "Z2xS4":
        G, n = direct_product(cyclic(2), symmetric4()), None
    elif family == "Z2xA5":
        G, n = direct_product(cyclic(2), alternating5()), None
    elif family == "SL2(3)":
        G, n = matrix_group(3, True), None
    elif family == "GL2(3)":
        G, n = matrix_group(3, False), None
    elif family == "SL2(5)":
        G, n = matrix_group(5, True), None
    else:
        raise UnknownFamily(f"unknown family {family!r}")
    G.family, G.n = family, n
    return G


def display_name(family: str, n: Optional[int], order: int) -> str:
    if family == "Z":
        return f"Z{n}"
    if family == "D":
        return f"D[{n}]"
    if family == "Z2xZ":
        return f"Z2xZ{n}"
    if family == "Z2xD":
        return f"Z2xD[{2 * n}]"
    if family in ("V", "H", "G", "U"):
        return f"{family}{n}"
    if family == "Q":
        return f"Q{order}"
    return family or f"group of order {order}"


# ---------------------------------------------------------------------------
# isomorphism and embedding search


def _order_counts(G: FiniteGroup) -> Counter:
    return Counter(G.element_orders)


def find_monomorphism(H: FiniteGroup, G: FiniteGroup, budget: Optional[int] = None, bijective: bool = False):
    """Generator images of an injective homomorphism H -> G, None, or UNDETERMINED.

    Images of H's generators are assigned in turn, the first only up to
    conjugacy in G; candidates must have the generator's order and every
    product of assigned images must keep the order it has in H.
    """
    if budget is None:
        budget = default_budget()
    if G.order % H.order:
        return None
    if bijective and H.order != G.order:
        return None
    hc, gc = _order_counts(H), _order_counts(G)
    if any(gc[k] < c for k, c in hc.items()):
        return None
    if bijective and hc != gc:
        return None
    hgens = list(H.gens) or [0]
    if H.order == 1:
        return [0]
    right = H.right_tables(hgens)
    ho, go = H.element_orders, G.element_orders
    classes = G.conjugacy_classes()
    cls_reps = {c[0] for c in classes}
    cands = []
    for k, h in enumerate(hgens):
        pool = [g for g in range(G.order) if go[g] == ho[h]]
        if k == 0:
            pool = [g for g in pool if g in cls_reps]
        cands.append(pool)
    # products of generator pairs in H, with their orders
    pair_orders = {(i, j): ho[H.prod(hgens[i], hgens[j])] for i in range(len(hgens)) for j in range(i)}
    steps = 0
    images: list[int] = []

    def rec(k: int):
        nonlocal steps
        if k == len(hgens):
            steps += 1
            if steps > budget:
                return UNDETERMINED
            phi = kernels.extend_hom(right, G.mul, images, H.order, G.order)
            if phi is None or len(set(phi)) != H.order:
                return None
            return list(images)
        for g in cands[k]:
            ok = all(go[G.prod(g, images[j])] == pair_orders[(k, j)] for j in range(k))
            if not ok:
                continue
            steps += 1
            if steps > budget:
                return UNDETERMINED
            images.append(g)
            res = rec(k + 1)
            images.pop()
            if res is UNDETERMINED or res is not None:
                return res
        return None

    return rec(0)


def is_isomorphic(G: FiniteGroup, H: FiniteGroup, budget: Optional[int] = None):
    """True, False, or UNDETERMINED when the search budget runs out."""
    if G.order != H.order:
        return False
    if G.fingerprint() != H.fingerprint():
        return False
    res = find_monomorphism(G, H, budget, bijective=True)
    if res is UNDETERMINED:
        return UNDETERMINED
    return res is not None
