"""Groups of rational points of abelian varieties over finite fields."""

from .abgroups import GroupShape, enumerate_groups
from .classify import NO, UNKNOWN, YES, Verdict, classify_group, enumerate_admissible
from .exactpoly import IntPolynomial
from .polygons import ConvexPolygon, hodge_polygon, lies_on_or_above, newton_polygon
from .weil import WeilError, WeilPolynomial, detect_shape, validate_weil

__version__ = "0.1.0"
