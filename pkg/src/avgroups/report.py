"""Newton-versus-Hodge figures for one isogeny class.

One PNG per prime ell dividing f(1): the Newton polygon of f(1 - t) at ell
against the Hodge polygon of every admissible group's ell-part.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .abgroups import factor, local_exponents  # noqa: E402
from .polygons import hodge_polygon, newton_polygon_at_one  # noqa: E402


def _xy(poly):
    return [x for x, _ in poly.vertices], [float(y) for _, y in poly.vertices]


def render(W, yes, unknown, out_dir):
    """Write newton_hodge_l<ell>.png files into out_dir; return their paths."""
    os.makedirs(out_dir, exist_ok=True)
    n = W.f.degree
    paths = []
    for ell in factor(W.order):
        fig, ax = plt.subplots(figsize=(5, 3.6))
        xs, ys = _xy(newton_polygon_at_one(W.f, ell))
        ax.plot(xs, ys, "-o", color="0.75", lw=5, label="Np f(1-t)", zorder=1)
        seen = set()
        for style, groups in (("-", yes), (":", unknown)):
            for G in groups:
                e = local_exponents(G, ell, n)
                if (style, e) in seen:
                    continue
                seen.add((style, e))
                hx, hy = _xy(hodge_polygon(e))
                ax.plot(hx, hy, style, lw=1.2, zorder=2, label="Hp " + ",".join(map(str, e)))
        ax.set_xlabel("i")
        ax.set_ylabel(f"v_{ell}")
        ax.set_title(f"{W.f.pretty()}, q={W.q}, ell={ell}", fontsize=9)
        ax.legend(fontsize=7, frameon=False)
        fig.tight_layout()
        path = os.path.join(out_dir, f"newton_hodge_l{ell}.png")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        paths.append(path)
    return paths
