"""Inclusion lattice of the automorphism groups occurring in a fixed genus."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Optional

from . import grouptheory as gt
from .classify import LocusRow, enumerate_loci

UNKNOWN = None  # incidence entry for an undetermined pair


@dataclass
class GroupLattice:
    genus: int
    nodes: list[LocusRow]
    incidence: list[list[Optional[int]]]
    hasse_edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def undetermined(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.incidence) for j, v in enumerate(row) if v is UNKNOWN]

    def edge_names(self) -> list[tuple[str, str]]:
        return [(self.nodes[i].display, self.nodes[j].display) for i, j in self.hasse_edges]

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "nodes": [{"display": r.display, "order": r.order, "delta": r.delta, "case": r.case} for r in self.nodes],
            "incidence": self.incidence,
            "hasse_edges": [list(e) for e in self.edge_names()],
        }


def node_key(row: LocusRow) -> tuple:
    return (row.order, row.family, row.group_n or 0, row.case)


def build_lattice(g: int, budget: Optional[int] = None, max_genus: int = 30, strict_parity: bool = False) -> GroupLattice:
    if not 2 <= g <= max_genus:
        raise ValueError(f"genus must be in 2..{max_genus}")
    nodes = sorted(enumerate_loci(g, strict_parity), key=node_key)
    N = len(nodes)
    groups = [r.group() for r in nodes]
    inc: list[list[Optional[int]]] = [[0] * N for _ in range(N)]
    for i in range(N):
        inc[i][i] = 1
        for j in range(i + 1, N):
            if nodes[j].order % nodes[i].order:
                continue
            res = gt.find_monomorphism(groups[i], groups[j], budget)
            if res is gt.UNDETERMINED:
                inc[i][j] = UNKNOWN
            else:
                inc[i][j] = 1 if res is not None else 0
    lat = GroupLattice(g, nodes, inc)
    lat.hasse_edges = transitive_reduction(inc)
    return lat


def transitive_reduction(inc: list[list[Optional[int]]]) -> list[tuple[int, int]]:
    N = len(inc)
    edges = []
    for i in range(N):
        for j in range(i + 1, N):
            if inc[i][j] != 1:
                continue
            if any(inc[i][k] == 1 and inc[k][j] == 1 for k in range(i + 1, j)):
                continue
            edges.append((i, j))
    return edges


def check_lattice(lat: GroupLattice) -> list[str]:
    """Violations of upper triangularity, transitivity and Lagrange (empty when consistent)."""
    problems = []
    inc, N = lat.incidence, len(lat.nodes)
    for i in range(N):
        if inc[i][i] != 1:
            problems.append(f"diagonal entry {i} is not 1")
        for j in range(N):
            if i > j and inc[i][j]:
                problems.append(f"entry ({i},{j}) below the diagonal")
            if inc[i][j] == 1 and lat.nodes[j].order % lat.nodes[i].order:
                problems.append(f"Lagrange fails for ({i},{j})")
            for k in range(N):
                if inc[i][j] == 1 and inc[j][k] == 1 and inc[i][k] == 0:
                    problems.append(f"transitivity fails for ({i},{j},{k})")
    return problems


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def emit_dot(lat: GroupLattice) -> str:
    lines = ["digraph lattice {", "  rankdir=TB;", "  node [shape=box];"]
    for i, r in enumerate(lat.nodes):
        lines.append(f'  n{i} [label="{_dot_escape(r.display)}\\nδ={r.delta}"];')
    for d in sorted({r.delta for r in lat.nodes}, reverse=True):
        members = "; ".join(f"n{i}" for i, r in enumerate(lat.nodes) if r.delta == d)
        lines.append(f"  {{ rank=same; {members}; }}")
    for i, j in lat.hasse_edges:
        lines.append(f"  n{i} -> n{j};")
    for i, j in lat.undetermined:
        lines.append(f"  n{i} -> n{j} [style=dashed, label=\"?\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def incidence_csv(lat: GroupLattice) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    names = [r.display for r in lat.nodes]
    w.writerow([""] + names)
    for name, row in zip(names, lat.incidence):
        w.writerow([name] + ["?" if v is UNKNOWN else v for v in row])
    return buf.getvalue()
