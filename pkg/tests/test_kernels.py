from __future__ import annotations

import random
import subprocess
import sys

import pytest

from hyperloci import _kernels_py as pure
from hyperloci import grouptheory as gt
from hyperloci import kernels
from hyperloci.exactnum import cyclotomic_poly

compiled = pytest.importorskip("hyperloci._kernels")


def test_backend_selected():
    assert kernels.BACKEND in ("compiled", "python")


def test_pure_fallback_can_be_forced():
    code = "import hyperloci.kernels as k; print(k.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env={"HYPERLOCI_PURE": "1", "PATH": ""},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_cyc_mul_agrees():
    rng = random.Random(0)
    for m in (3, 5, 12, 60):
        phi = list(cyclotomic_poly(m))
        n = len(phi) - 1
        for _ in range(20):
            a = [rng.randint(-10 ** 20, 10 ** 20) for _ in range(n)]
            b = tuple(rng.randint(-50, 50) for _ in range(n))
            assert compiled.cyc_mul(a, b, phi) == pure.cyc_mul(a, b, phi)


@pytest.mark.parametrize("family,n", [("V", 6), ("H", 5), ("G", 8), ("U", 7), ("W2", None), ("W3", None)])
def test_coset_enumerate_agrees(family, n):
    p = gt.presentation(family, n)
    assert compiled.coset_enumerate(p.ngens, p.columns(), 4096) == pure.coset_enumerate(p.ngens, p.columns(), 4096)


def test_coset_overflow_both():
    p = gt.Presentation.parse("x^2, y^3")
    for mod in (compiled, pure):
        with pytest.raises(kernels.CosetOverflow):
            mod.coset_enumerate(p.ngens, p.columns(), 300)


def test_extend_hom_and_orders_agree():
    H, G = gt.construct("D", 8), gt.construct("V", 10)
    right = H.right_tables(H.gens)
    rng = random.Random(2)
    for _ in range(200):
        images = [rng.randrange(G.order) for _ in H.gens]
        assert compiled.extend_hom(right, G.mul, images, H.order, G.order) == \
            pure.extend_hom(right, G.mul, images, H.order, G.order)
    assert compiled.element_orders(G.mul, G.order) == pure.element_orders(G.mul, G.order)
