"""Kernel selection: the compiled extension when built, else pure Python.

Set ``TWTHICK_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

BACKEND = "python"
if os.environ.get("TWTHICK_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        from . import _kernels_py as _impl
else:
    from . import _kernels_py as _impl

orient = _impl.orient
seg_cross = _impl.seg_cross
crossing_pairs = _impl.crossing_pairs
collinear_triples = _impl.collinear_triples
point_on_pair_line = _impl.point_on_pair_line
book_conflicts = _impl.book_conflicts
greedy_clique = _impl.greedy_clique
colour_graph = _impl.colour_graph
min_line_dist2 = _impl.min_line_dist2

__all__ = [
    "BACKEND",
    "orient",
    "seg_cross",
    "crossing_pairs",
    "collinear_triples",
    "point_on_pair_line",
    "book_conflicts",
    "greedy_clique",
    "colour_graph",
    "min_line_dist2",
]
