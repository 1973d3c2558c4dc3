"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``HYPERLOCI_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os

from ._kernels_py import CosetOverflow

BACKEND = "python"

if os.environ.get("HYPERLOCI_PURE", "") not in ("1", "true", "yes"):
    try:
        from ._kernels import cyc_mul, coset_enumerate, extend_hom, element_orders  # type: ignore

        BACKEND = "compiled"
    except ImportError:
        pass

if BACKEND == "python":
    from ._kernels_py import cyc_mul, coset_enumerate, extend_hom, element_orders

__all__ = ["BACKEND", "CosetOverflow", "cyc_mul", "coset_enumerate", "extend_hom", "element_orders"]
