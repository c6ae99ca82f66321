"""Exact validation of q-Weil polynomials and detection of the isogeny-class shape.

A monic integer polynomial is a q-Weil polynomial when every complex root
has absolute value sqrt(q).  The decision here is exact: after removing the
real factors t^2 - q (and t -+ sqrt(q) for square q), the remaining factor
is written as t^(d/2) h(t + q/t) and the roots of h are located with Sturm
sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from sympy import factorint

from .exactpoly import IntPolynomial, gcd, product, squarefree_decomposition

ONE = IntPolynomial.constant(1)


class WeilError(ValueError):
    """Validation failure; ``step`` names the failed check."""

    def __init__(self, step, message):
        super().__init__(f"{step}: {message}")
        self.step = step
        self.reason = step


def prime_power(q):
    """Return (p, a) with q = p**a, or None if q is not a prime power."""
    if q < 2:
        return None
    fac = factorint(q)
    if len(fac) != 1:
        return None
    (p, a), = fac.items()
    return p, a


def exact_sqrt(n):
    """Integer square root of n when n is a perfect square, else None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


# -- rational polynomial helpers for Sturm sequences ----------------------
# ascending lists of Fractions, trailing entry nonzero

def _rtrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _rrem(a, b):
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1] / lb
        shift = len(a) - 1 - db
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        a.pop()
        _rtrim(a)
    return a


def _reval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def sturm_sequence(f):
    """Sturm chain of an integer polynomial (as Fraction lists)."""
    p0 = [Fraction(c) for c in f.coeffs]
    p1 = [Fraction(c) for c in f.derivative().coeffs]
    seq = [p0]
    if p1:
        seq.append(p1)
    while len(seq) >= 2 and len(seq[-1]) > 1:
        r = _rrem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def _variations(values):
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at_infinity(seq, positive):
    out = []
    for p in seq:
        lead = p[-1]
        deg = len(p) - 1
        if not positive and deg % 2:
            lead = -lead
        out.append(lead)
    return out


def count_real_roots(f, lo=None):
    """Number of distinct real roots of f in (lo, +inf); lo=None means all of R.

    ``f(lo)`` must be nonzero when ``lo`` is given.
    """
    seq = sturm_sequence(f)
    v_hi = _variations(_sign_at_infinity(seq, True))
    if lo is None:
        v_lo = _variations(_sign_at_infinity(seq, False))
    else:
        if _reval(seq[0], Fraction(lo)) == 0:
            raise ValueError("lower bound is a root")
        v_lo = _variations([_reval(p, Fraction(lo)) for p in seq])
    return v_lo - v_hi


def squarefree_part(f):
    g = gcd(f, f.derivative())
    return f.primitive_part().exact_div(g.primitive_part()).primitive_part()


def trace_polynomial(f1, q):
    """h with f1(t) = t^n h(t + q/t), n = deg(f1)/2, for self-inversive f1."""
    n = f1.degree // 2
    s = IntPolynomial.monomial(1)
    # D_k(s) = t^k + (q/t)^k as a polynomial in s = t + q/t
    D = [IntPolynomial.constant(2), s]
    for k in range(2, n + 1):
        D.append(s * D[k - 1] - D[k - 2].scale(q))
    h = IntPolynomial.constant(f1[n])
    for k in range(1, n + 1):
        h = h + D[k].scale(f1[n + k])
    return h


def _square_root_polynomial(h):
    """k(u) whose roots are the squares of the roots of h."""
    even = IntPolynomial(h.coeffs[0::2])
    odd = IntPolynomial(h.coeffs[1::2])
    u = IntPolynomial.monomial(1)
    return even * even - u * odd * odd


@dataclass(frozen=True)
class WeilPolynomial:
    f: IntPolynomial
    q: int
    g: int
    p: int

    def __str__(self):
        return f"{self.f.pretty()} (q={self.q})"

    @property
    def order(self):
        """f(1), the common group order of the isogeny class."""
        return self.f(1)

    @property
    def sqrt_q(self):
        return exact_sqrt(self.q)


def validate_weil(f, q):
    """Return the WeilPolynomial for (f, q) or raise WeilError naming the failed step."""
    pp = prime_power(q)
    if pp is None:
        raise WeilError("q not a prime power", f"q={q}")
    if not f.is_monic():
        raise WeilError("not monic", f.pretty())
    if f.degree < 2 or f.degree % 2:
        raise WeilError("odd degree", f"degree {f.degree}")

    f1 = f
    s = exact_sqrt(q)
    strip = [IntPolynomial((-q, 0, 1))]
    if s is not None:
        strip = [IntPolynomial.linear_root(s), IntPolynomial.linear_root(-s)]
    for g in strip:
        while f1.degree >= g.degree and g.divides(f1):
            f1 = f1.exact_div(g)

    d = f1.degree
    if d % 2:
        raise WeilError("functional equation", "odd-degree residual factor")
    n = d // 2
    qn = q ** n
    for i in range(d + 1):
        if f1[i] * q ** i != qn * f1[d - i]:
            raise WeilError("functional equation", f"coefficient {i} breaks t^d f(q/t) = q^(d/2) f(t)")
    if d == 0:
        return WeilPolynomial(f, q, f.degree // 2, pp[0])

    h = trace_polynomial(f1, q)
    hs = squarefree_part(h)
    if count_real_roots(hs) != hs.degree:
        raise WeilError("root off circle", "trace polynomial has non-real roots")
    k = squarefree_part(_square_root_polynomial(h))
    bound = IntPolynomial.linear_root(4 * q)
    if k(4 * q) == 0:
        k = k.exact_div(bound)
    if k.degree > 0 and count_real_roots(k, 4 * q) != 0:
        raise WeilError("root off circle", "a root has |t + q/t| > 2 sqrt(q)")
    return WeilPolynomial(f, q, f.degree // 2, pp[0])


# -- isogeny shapes ----------------------------------------------------------

@dataclass(frozen=True)
class Separable:
    f: IntPolynomial
    case = "separable"

    def parts(self):
        return [(self.f, 1)]


@dataclass(frozen=True)
class PowerPair:
    """f = P^r Q^s with deg P <= 2, P separable, Q | P (Q = 1 when s = 0)."""
    P: IntPolynomial
    Q: IntPolynomial
    r: int
    s: int
    case = "power-pair"

    def parts(self):
        out = [(self.P, self.r)]
        if self.s:
            out.append((self.Q, self.s))
        return out


@dataclass(frozen=True)
class MixedSupersingular:
    """f = P L^r, deg P = 2, L = t -+ sqrt(q)."""
    P: IntPolynomial
    L: IntPolynomial
    r: int
    case = "mixed-supersingular"

    def parts(self):
        return [(self.P, 1), (self.L, self.r)]


@dataclass(frozen=True)
class ThreefoldRepeated:
    P: IntPolynomial
    case = "threefold-repeated"

    def parts(self):
        return [(self.P, 2)]


@dataclass(frozen=True)
class ThreefoldMixed2x2:
    """f = P^2 Q with deg P = deg Q = 2."""
    P: IntPolynomial
    Q: IntPolynomial
    case = "threefold-mixed-2x2"

    def parts(self):
        return [(self.P, 2), (self.Q, 1)]


@dataclass(frozen=True)
class ThreefoldQuartic:
    """f = P L^2 with deg P = 4."""
    P: IntPolynomial
    L: IntPolynomial
    case = "threefold-quartic"

    def parts(self):
        return [(self.P, 1), (self.L, 2)]


@dataclass(frozen=True)
class Unsupported:
    f: IntPolynomial
    factors: tuple = ()
    case = "unsupported"

    def parts(self):
        return list(self.factors) or [(self.f, 1)]


def reconstruct(shape):
    return product(shape.parts())


def _is_supersingular_linear(L, sqrt_q):
    return (
        sqrt_q is not None
        and L.degree == 1
        and L.is_monic()
        and abs(L[0]) == sqrt_q
    )


def match_shape(factors, sqrt_q, g=None):
    """Dispatch a squarefree decomposition onto a shape.

    Order: Separable, PowerPair, MixedSupersingular, ThreefoldRepeated,
    ThreefoldMixed2x2, ThreefoldQuartic, Unsupported.  With ``g >= 4`` only
    Separable is recognised.
    """
    factors = sorted(factors, key=lambda ge: ge[1])
    f = product(factors)
    if len(factors) == 1 and factors[0][1] == 1:
        return Separable(f)
    unsupported = Unsupported(f, tuple(factors))
    if g is not None and g >= 4:
        return unsupported

    if len(factors) == 1:
        P, e = factors[0]
        if P.degree <= 2:
            return PowerPair(P, ONE, e, 0)
    if len(factors) == 2:
        (g1, e1), (g2, e2) = factors
        if g1.degree == 1 and g2.degree == 1:
            return PowerPair(g1 * g2, g2, e1, e2 - e1)
        if (e1 == 1 and e2 >= 2 and g1.degree == 2
                and _is_supersingular_linear(g2, sqrt_q)):
            return MixedSupersingular(g1, g2, e2)
    if len(factors) == 1:
        P, e = factors[0]
        if e == 2 and P.degree == 3:
            return ThreefoldRepeated(P)
    if len(factors) == 2:
        (g1, e1), (g2, e2) = factors
        if (e1, e2) == (1, 2) and g1.degree == 2 and g2.degree == 2:
            return ThreefoldMixed2x2(g2, g1)
        if (e1, e2) == (1, 2) and g1.degree == 4 and _is_supersingular_linear(g2, sqrt_q):
            return ThreefoldQuartic(g1, g2)
    return unsupported


def detect_shape(W):
    """Shape of the Weil polynomial, from its squarefree decomposition."""
    factors = squarefree_decomposition(W.f)
    return match_shape(factors, W.sqrt_q, W.g)
