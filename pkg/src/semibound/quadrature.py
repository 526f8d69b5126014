"""Gauss-Legendre quadrature tuned for turning-point integrands.

Integrands over a classical region (a, b) either vanish like sqrt(x - a) or
diverge like 1/sqrt(x - a) at the endpoints (smooth kinetic laws). The
substitution x = a + u^2 makes both smooth, after which composite
Gauss-Legendre with panel doubling converges rapidly. Integrals are split at
interior break points (e.g. a potential kink) so each piece is smooth.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

#: default relative agreement between successive panel doublings
REL_TOL = 1e-11
#: node budget cap for one integral
MAX_NODES = 2**20
#: Gauss-Legendre order per panel
PANEL_ORDER = 16


@lru_cache(maxsize=None)
def _gl_nodes(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def composite_gauss(f: Callable, lo: float, hi: float, panels: int,
                    order: int = PANEL_ORDER) -> float:
    """Composite Gauss-Legendre with `panels` equal panels of the given order."""
    if hi == lo:
        return 0.0
    xg, wg = _gl_nodes(order)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    # nodes for all panels in one evaluation: shape (panels, order)
    x = mid[:, None] + half[:, None] * xg[None, :]
    y = np.asarray(f(x.ravel()), dtype=float).reshape(panels, order)
    return float(np.sum(y * wg[None, :] * half[:, None]))


def adaptive_gauss(f: Callable, lo: float, hi: float, rel_tol: float = REL_TOL,
                   max_nodes: int = MAX_NODES) -> float:
    """Double the panel count until successive estimates agree to rel_tol."""
    if hi == lo:
        return 0.0
    panels = 2
    prev = composite_gauss(f, lo, hi, panels)
    while True:
        panels *= 2
        cur = composite_gauss(f, lo, hi, panels)
        if abs(cur - prev) <= rel_tol * max(abs(cur), abs(prev)) or panels * 2 * PANEL_ORDER > max_nodes:
            return cur
        prev = cur


def sqrt_substituted(f: Callable, endpoint: float, inward: float) -> Callable:
    """Transform f for x = endpoint + sign*u^2 with sign toward the interior.

    Returns h(u) = 2u * f(endpoint + sign*u^2); integrating h over
    [0, sqrt(|segment|)] equals integrating f over the segment.
    """
    sign = 1.0 if inward > endpoint else -1.0

    def h(u):
        u = np.asarray(u, dtype=float)
        return 2.0 * u * np.asarray(f(endpoint + sign * u * u), dtype=float)

    return h


def well_integral(f: Callable, a: float, b: float,
                  splits: Sequence[float] = (),
                  sqrt_left: bool = True, sqrt_right: bool = True,
                  rel_tol: float = REL_TOL) -> float:
    """Integrate f over (a, b) with endpoint substitutions and interior splits.

    splits: interior break points (points of reduced smoothness, such as a
    potential kink); values outside (a, b) are ignored.
    """
    pts = sorted(x for x in splits if a < x < b)
    if not pts and (sqrt_left or sqrt_right):
        pts = [0.5 * (a + b)]
    edges = [a] + pts + [b]

    total = 0.0
    for i in range(len(edges) - 1):
        lo, hi = edges[i], edges[i + 1]
        if i == 0 and sqrt_left:
            total += adaptive_gauss(sqrt_substituted(f, a, b), 0.0, np.sqrt(hi - lo), rel_tol)
        elif i == len(edges) - 2 and sqrt_right:
            total += adaptive_gauss(sqrt_substituted(f, b, a), 0.0, np.sqrt(hi - lo), rel_tol)
        else:
            total += adaptive_gauss(f, lo, hi, rel_tol)
    return total
