"""Command-line driver: ``hyperloci {classify,equation,lattice,fixedfield,count}``.

Exit codes: 0 ok, 2 usage, 3 inadmissible row, 4 undetermined lattice pair under --strict.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import classify as cl
from . import equations as eq
from . import grouptheory as gt
from . import lattice as lt
from . import moebius as mb
from .exactnum import ParseError, parse_cyc, render
from .polyalg import INFINITY

EXIT_OK, EXIT_USAGE, EXIT_INADMISSIBLE, EXIT_UNDETERMINED = 0, 2, 3, 4
LATTICE_GENUS_CAP = 30


@dataclass
class Config:
    genus: Optional[int] = None
    fmt: str = "json"
    strict_parity: bool = False
    budget: Optional[int] = None
    seed: int = 0


def _point(p) -> str:
    return "infinity" if p is INFINITY else render(p)


def _signature_text(sig: Sequence[tuple[int, int]]) -> str:
    return "(" + ", ".join(f"{a}^{b}" for a, b in sig) + ")"


def markdown_table(rows: list[cl.LocusRow]) -> str:
    # column order follows the printed classification table
    out = ["| # | G | Γ | δ | n | C | Γ indices |", "|---|---|---|---|---|---|---|"]
    for r in rows:
        red = r.reduced if r.reduced not in cl.PARAMETRIC else f"{r.reduced}{r.reduced_n}"
        if r.case == 0:
            red, idx = "1", "()"
        else:
            idx = "(" + ", ".join(str(e) for e in cl.reduced_indices(r.reduced, r.reduced_n)) + ")"
        n = "" if r.reduced_n is None or r.case == 0 else str(r.reduced_n)
        out.append(f"| {r.case} | {r.display} | {red} | {r.delta} | {n} | {_signature_text(r.signature)} | {idx} |")
    return "\n".join(out) + "\n"


def cmd_classify(cfg: Config, out) -> int:
    rows = cl.enumerate_loci(cfg.genus, cfg.strict_parity)
    bad = [r.case for r in rows if not cl.rh_verify(r)]
    if bad:
        raise ArithmeticError(f"Riemann-Hurwitz failed for cases {bad}")
    if cfg.fmt == "markdown":
        out.write(markdown_table(rows))
    else:
        doc = {"genus": cfg.genus, "strict_parity": cfg.strict_parity, "rows": [r.to_json() for r in rows]}
        out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    return EXIT_OK


def _row_for(case: int, n: Optional[int], g: int, strict_parity: bool) -> cl.LocusRow:
    if case == 0:
        return cl.root_row(g)
    spec = cl.CASES[case]
    return cl.signature(case, n if spec.reduced in cl.PARAMETRIC else None, g)


def cmd_equation(cfg: Config, args, out, err) -> int:
    g, case, n = cfg.genus, args.case, args.n
    if case != 0:
        if case not in cl.CASES:
            err.write(f"error: unknown case {case}\n")
            return EXIT_USAGE
        if cl.CASES[case].reduced not in cl.PARAMETRIC:
            n = None
        reason = cl.admissibility_failure(case, n, g, cfg.strict_parity)
        if reason is not None:
            err.write(f"inadmissible: case {case}, n={n}, g={g}: {reason}\n")
            return EXIT_INADMISSIBLE
    row = _row_for(case, n, g, cfg.strict_parity)
    fam = eq.build_family(row)
    if args.specialize is not None:
        try:
            values = [parse_cyc(v) for v in args.specialize]
        except ParseError as exc:
            err.write(f"error: {exc}\n")
            return EXIT_USAGE
        if len(values) != fam.delta:
            err.write(f"error: case {case} has {fam.delta} parameters, got {len(values)} values\n")
            return EXIT_USAGE
        try:
            f = eq.specialize(fam, values)
        except eq.DegenerateMember as exc:
            err.write(f"inadmissible: {exc}\n")
            return EXIT_INADMISSIBLE
        out.write(f"y^2 = {f.render()}\n")
        out.write(f"# degree {f.degree}, squarefree\n")
        return EXIT_OK
    if cfg.fmt == "json":
        doc = fam.to_json()
        if args.verify:
            doc["verified_trials"] = args.verify if eq.verify_family(fam, args.verify, cfg.seed) else 0
        out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
        return EXIT_OK
    unnorm = fam.render_unnormalized()
    if unnorm != fam.render():
        out.write(unnorm + "\n")
        out.write(f"# normalized: {fam.render()}\n")
    else:
        out.write(fam.render() + "\n")
    if args.expand:
        out.write(eq.render_expanded(fam) + "\n")
    out.write(f"# group {row.display}, delta {fam.delta}, degree {fam.degree}\n")
    if args.verify:
        ok = eq.verify_family(fam, args.verify, cfg.seed)
        out.write(f"# verify_family: {args.verify} trials (seed {cfg.seed}) {'passed' if ok else 'FAILED'}\n")
        if not ok:
            return 1
    return EXIT_OK


def cmd_lattice(cfg: Config, strict: bool, out, err) -> int:
    lat = lt.build_lattice(cfg.genus, cfg.budget, LATTICE_GENUS_CAP, cfg.strict_parity)
    if cfg.fmt == "csv":
        out.write(lt.incidence_csv(lat))
    elif cfg.fmt == "json":
        out.write(json.dumps(lat.to_json(), indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(lt.emit_dot(lat))
    if lat.undetermined:
        err.write(f"warning: {len(lat.undetermined)} undetermined pairs\n")
        if strict:
            return EXIT_UNDETERMINED
    return EXIT_OK


def cmd_fixedfield(group: str, n: Optional[int], fmt: str, out) -> int:
    H = mb.standard_embedding(group, n)
    computed = mb.fixed_field_generator(H)
    normal = mb.lemma_map(group, n)
    points = mb.branch_points(normal)
    if fmt == "json":
        doc = {
            "group": group, "n": n, "order": len(H.elements),
            "generators": [[render(c) for c in (A.a, A.b, A.c, A.d)] for A in H.generators],
            "fixed_field_generator": computed.render(),
            "normal_form": normal.render(),
            "branch_points": [_point(p) for p in points],
        }
        out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
        return EXIT_OK
    out.write(f"group {group}{'' if n is None else n} of order {len(H.elements)}\n")
    out.write(f"z = {normal.render()}\n")
    out.write(f"# computed generator: {computed.render()}\n")
    out.write("branch points: {" + ", ".join(_point(p) for p in points) + "}\n")
    return EXIT_OK


def cmd_count(cfg: Config, out) -> int:
    rep = cl.count_formulas(cfg.genus)
    if cfg.fmt == "json":
        out.write(json.dumps(rep.to_json(), indent=2, ensure_ascii=False) + "\n")
        return EXIT_OK
    for k, v in rep.formulas.items():
        out.write(f"{k} = {v}\n")
    out.write("enumerated: " + ", ".join(f"{k}={v}" for k, v in rep.enumerated.items()) + "\n")
    for note in rep.notes:
        out.write(f"note: {note}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperloci", description=__doc__.splitlines()[0])
    p.add_argument("--budget", type=int, default=None, help="isomorphism search budget (default: $HYPERLOCI_BUDGET)")
    p.add_argument("--seed", type=int, default=0, help="seed for random verification trials")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="loci and signatures for one genus")
    c.add_argument("--genus", type=int, required=True)
    c.add_argument("--format", dest="fmt", choices=("json", "markdown"), default="json")
    c.add_argument("--strict-parity", action="store_true")

    e = sub.add_parser("equation", help="generic equation of a locus")
    e.add_argument("--genus", type=int, required=True)
    e.add_argument("--case", type=int, required=True, help="row number, 0 for the generic locus")
    e.add_argument("--n", type=int, default=None)
    e.add_argument("--specialize", nargs="+", metavar="VALUE", help="exact parameter values")
    e.add_argument("--expand", action="store_true")
    e.add_argument("--verify", type=int, default=0, metavar="TRIALS")
    e.add_argument("--seed", type=int, default=None, dest="sub_seed", help="overrides the global --seed")
    e.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    e.add_argument("--strict-parity", action="store_true")

    la = sub.add_parser("lattice", help="inclusion lattice of the groups in one genus")
    la.add_argument("--genus", type=int, required=True)
    la.add_argument("--format", dest="fmt", choices=("dot", "csv", "json"), default="dot")
    la.add_argument("--strict", action="store_true", help="exit 4 if some pair is undetermined")
    la.add_argument("--strict-parity", action="store_true")

    f = sub.add_parser("fixedfield", help="invariant map and branch points of a reduced group")
    f.add_argument("--group", choices=("Z", "D", "A4", "S4", "A5"), required=True)
    f.add_argument("--n", type=int, default=None)
    f.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")

    k = sub.add_parser("count", help="counting formulas against the enumeration")
    k.add_argument("--genus", type=int, required=True)
    k.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    return p


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    budget = args.budget if args.budget is not None else gt.default_budget()
    cfg = Config(getattr(args, "genus", None), getattr(args, "fmt", "json"),
                 getattr(args, "strict_parity", False), budget,
                 args.seed if getattr(args, "sub_seed", None) is None else args.sub_seed)
    if cfg.genus is not None and cfg.genus < 2:
        parser.error("genus must be at least 2")
    if args.command == "classify":
        return cmd_classify(cfg, out)
    if args.command == "equation":
        return cmd_equation(cfg, args, out, err)
    if args.command == "lattice":
        if cfg.genus > LATTICE_GENUS_CAP:
            parser.error(f"lattice genus cap is {LATTICE_GENUS_CAP}")
        return cmd_lattice(cfg, args.strict, out, err)
    if args.command == "fixedfield":
        if args.group in ("Z", "D"):
            if args.n is None or args.n < 2:
                parser.error(f"--group {args.group} needs --n >= 2")
        elif args.n is not None:
            parser.error(f"--group {args.group} takes no --n")
        return cmd_fixedfield(args.group, args.n, args.fmt, out)
    return cmd_count(cfg, out)


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
