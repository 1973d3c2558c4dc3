"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel is run on the same inputs by both backends; results must agree.
"""
from __future__ import annotations

import argparse
import random
import timeit

from hyperloci import _kernels_py as pure
from hyperloci import grouptheory as gt
from hyperloci.exactnum import cyclotomic_poly

try:
    from hyperloci import _kernels as compiled
except ImportError:  # extension not built
    compiled = None


def cases():
    rng = random.Random(0)
    phi = list(cyclotomic_poly(60))
    n = len(phi) - 1
    a = [rng.randint(-10**6, 10**6) for _ in range(n)]
    b = [rng.randint(-10**6, 10**6) for _ in range(n)]
    yield "cyc_mul (conductor 60)", "cyc_mul", (a, b, phi)

    for label, p in (("V12", gt.presentation("V", 12)), ("W3", gt.presentation("W3")),
                     ("<x,y | x^2=y^3=(xy)^5>", gt.Presentation.parse("x^2*y^-3, y^3*(x*y)^-5"))):
        yield f"coset_enumerate ({label})", "coset_enumerate", (p.ngens, p.columns(), 4096)

    G = gt.construct("V", 10)
    src = gt.construct("D", 8)
    right = src.right_tables(src.gens)
    images = list(gt.find_monomorphism(src, G))
    yield "extend_hom (D[8] -> V10)", "extend_hom", (right, G.mul, images, src.order, G.order)

    for H in (gt.construct("SL2(5)"), gt.construct("V", 60)):
        yield f"element_orders (order {H.order})", "element_orders", (H.mul, H.order)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':32s} {'python (ms)':>12s} {'compiled (ms)':>14s} {'speedup':>8s}")
    for label, name, inputs in cases():
        f_py = getattr(pure, name)
        t_py = min(timeit.repeat(lambda: f_py(*inputs), number=1, repeat=args.repeat)) * 1e3
        if compiled is None:
            print(f"{label:32s} {t_py:12.3f} {'n/a':>14s} {'':>8s}")
            continue
        f_c = getattr(compiled, name)
        if f_c(*inputs) != f_py(*inputs):
            raise SystemExit(f"backends disagree on {label}")
        t_c = min(timeit.repeat(lambda: f_c(*inputs), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:32s} {t_py:12.3f} {t_c:14.3f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
