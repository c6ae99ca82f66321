"""Newton polygons of integer polynomials and Hodge polygons of finite l-groups.

Both are lower convex chains with integer abscissas starting at x = 0 and
exact rational ordinates.  Polygons are stored in minimal-vertex form, so
consecutive slopes are strictly increasing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactpoly import IntPolynomial, reflect_at_one


def valuation(n, ell):
    """l-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    n = abs(n)
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _minimal(points):
    """Drop vertices that are collinear with their neighbours."""
    out = []
    for p in points:
        while len(out) >= 2 and _cross(out[-2], out[-1], p) == 0:
            out.pop()
        out.append(p)
    return out


@dataclass(frozen=True)
class ConvexPolygon:
    vertices: tuple

    def __post_init__(self):
        verts = tuple((int(x), Fraction(y)) for x, y in self.vertices)
        if not verts or verts[0][0] != 0:
            raise ValueError("polygon must start at x = 0")
        for (x0, _), (x1, _) in zip(verts, verts[1:]):
            if x1 <= x0:
                raise ValueError("abscissas must be strictly increasing")
        object.__setattr__(self, "vertices", tuple(_minimal(list(verts))))
        slopes = self.segment_slopes()
        if any(b <= a for a, b in zip(slopes, slopes[1:])):
            raise ValueError("polygon is not lower convex")

    @property
    def width(self):
        return self.vertices[-1][0]

    @property
    def left(self):
        return self.vertices[0][1]

    @property
    def right(self):
        return self.vertices[-1][1]

    def segment_slopes(self):
        return [
            Fraction(y1 - y0, x1 - x0)
            for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:])
        ]

    def __call__(self, x):
        """Ordinate at abscissa x (linear interpolation between vertices)."""
        x = Fraction(x)
        verts = self.vertices
        if x < 0 or x > verts[-1][0]:
            raise ValueError(f"x={x} outside [0, {self.width}]")
        for (x0, y0), (x1, y1) in zip(verts, verts[1:]):
            if x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        return verts[-1][1]

    def to_json(self):
        return [[x, f"{y.numerator}/{y.denominator}"] for x, y in self.vertices]

    @classmethod
    def from_json(cls, data):
        return cls(tuple((x, Fraction(y)) for x, y in data))


def newton_polygon(Q, ell):
    """Lower convex hull of the points (i, v_ell(Q_i)) over nonzero coefficients."""
    if Q.is_zero():
        raise ValueError("Newton polygon of the zero polynomial")
    if Q[0] == 0:
        raise ValueError("Newton polygon needs Q(0) != 0")
    pts = [(i, Fraction(valuation(c, ell))) for i, c in enumerate(Q.coeffs) if c]
    hull = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return ConvexPolygon(tuple(hull))


def hodge_polygon(exponents):
    """Polygon with vertices (i, m_1 + ... + m_{r-i}) for ascending exponents m."""
    e = sorted(exponents)
    r = len(e)
    verts = [(i, Fraction(sum(e[: r - i]))) for i in range(r + 1)]
    if r == 0:
        verts = [(0, Fraction(0))]
    return ConvexPolygon(tuple(verts))


def lies_on_or_above(upper, lower):
    """True iff upper(x) >= lower(x) on the whole common interval."""
    if upper.width != lower.width:
        raise ValueError(
            f"width mismatch: {upper.width} vs {lower.width}"
        )
    xs = sorted({x for x, _ in upper.vertices} | {x for x, _ in lower.vertices})
    return all(upper(x) >= lower(x) for x in xs)


def polygon_slopes(p):
    """Ascending multiset of root valuations: a segment of width w and drop D gives w copies of D/w."""
    out = []
    for (x0, y0), (x1, y1) in zip(p.vertices, p.vertices[1:]):
        w = x1 - x0
        out.extend([Fraction(y0 - y1, w)] * w)
    return sorted(out)


def dual_exponents(exponents, m):
    """Ascending (m - m_r, ..., m - m_1)."""
    if any(x > m for x in exponents):
        raise ValueError(f"exponent exceeds {m}: {tuple(exponents)}")
    if any(x < 0 for x in exponents):
        raise ValueError("negative exponent")
    return tuple(sorted(m - x for x in exponents))


def newton_polygon_at_one(f: IntPolynomial, ell):
    """Newton polygon of f(1 - t)."""
    return newton_polygon(reflect_at_one(f), ell)
