"""Ground truth from actual curves over small finite fields.

Elliptic curves in general Weierstrass form over F_q (q <= 9) and genus-2
curves y^2 = f(x) over F_q (q odd prime) are counted exhaustively; the
group structure comes from element orders under the chord-tangent law or
Cantor's algorithm.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from sympy import factorint

from .abgroups import GroupShape
from .exactpoly import IntPolynomial
from .weil import prime_power, validate_weil

EC_FIELDS = (2, 3, 4, 5, 7, 9)
GENUS2_FIELDS = (3, 5, 7)


class UnsupportedCurve(ValueError):
    pass


class SingularCurve(ValueError):
    pass


# -- finite fields ---------------------------------------------------------------

class FiniteField:
    """F_p or F_{p^2}; elements are ints c0 + c1*p in [0, q).

    F_{p^2} = F_p[x]/(x^2 + a x + b) with (a, b) the lexicographically
    smallest pair giving an irreducible quadratic.
    """

    def __init__(self, p, k=1):
        if k not in (1, 2):
            raise ValueError("only prime fields and quadratic extensions")
        if len(factorint(p)) != 1 or factorint(p).get(p) != 1:
            raise ValueError(f"{p} is not prime")
        self.p, self.k = p, k
        self.q = q = p ** k
        if k == 2:
            self.modulus = next(
                (a, b) for a in range(p) for b in range(p)
                if all((x * x + a * x + b) % p for x in range(p))
            )
        else:
            self.modulus = None
        self.add = [[self._add(x, y) for y in range(q)] for x in range(q)]
        self.mul = [[self._mul(x, y) for y in range(q)] for x in range(q)]
        self.neg = [self.add[x].index(0) for x in range(q)]
        self.inv = [None] + [self.mul[x].index(1) for x in range(1, q)]
        self.sub = [[self.add[x][self.neg[y]] for y in range(q)] for x in range(q)]
        squares = Counter(self.mul[x][x] for x in range(q))
        # number of square roots of each element
        self.nroots = [squares.get(x, 0) for x in range(q)]
        self.sqrts = {}
        for x in range(q):
            self.sqrts.setdefault(self.mul[x][x], []).append(x)

    def _split(self, x):
        return x % self.p, x // self.p

    def _add(self, x, y):
        p = self.p
        if self.k == 1:
            return (x + y) % p
        a0, a1 = self._split(x)
        b0, b1 = self._split(y)
        return (a0 + b0) % p + p * ((a1 + b1) % p)

    def _mul(self, x, y):
        p = self.p
        if self.k == 1:
            return (x * y) % p
        a0, a1 = self._split(x)
        b0, b1 = self._split(y)
        ma, mb = self.modulus
        # x^2 = -a x - b
        c0 = a0 * b0 - a1 * b1 * mb
        c1 = a0 * b1 + a1 * b0 - a1 * b1 * ma
        return c0 % p + p * (c1 % p)

    def from_int(self, n):
        return n % self.p

    def elements(self):
        return range(self.q)

    def pow(self, x, n):
        r = 1
        for _ in range(n):
            r = self.mul[r][x]
        return r

    def is_square(self, x):
        return self.nroots[x] > 0

    def __repr__(self):
        return f"FiniteField({self.p}, {self.k})"


@lru_cache(maxsize=None)
def field(q):
    pp = prime_power(q)
    if pp is None or pp[1] > 2:
        raise ValueError(f"unsupported field size {q}")
    return FiniteField(*pp)


# -- group structure from element orders ------------------------------------------

def element_order(x, n, mul, identity):
    """Order of x given that n kills it; ``mul(x, k)`` is scalar multiplication."""
    order = n
    for ell in factorint(n):
        while order % ell == 0 and mul(x, order // ell) == identity:
            order //= ell
    return order


def group_from_orders(orders):
    """Structure of a finite abelian group from the multiset of its element orders."""
    N = len(orders)
    local = {}
    for ell, k in factorint(N).items():
        # c_j = #{x : ell^j x = 0} = ell^(sum_i min(m_i, j))
        sums = []
        for j in range(k + 1):
            cnt = sum(1 for o in orders if (ell ** j) % o == 0)
            s = 0
            while cnt % ell == 0 and cnt > 1:
                cnt //= ell
                s += 1
            if cnt != 1:
                raise ValueError("element orders do not come from an abelian group")
            sums.append(s)
        # number of exponents >= j is sums[j] - sums[j-1]
        ge = [sums[j] - sums[j - 1] for j in range(1, k + 1)]
        exps = []
        for j in range(1, k + 1):
            nxt = ge[j] if j < k else 0
            exps.extend([j] * (ge[j - 1] - nxt))
        local[ell] = exps
    G = GroupShape.from_local(local)
    if G.order != N:
        raise ValueError("inconsistent element orders")
    return G


# -- elliptic curves -------------------------------------------------------------

@dataclass(frozen=True)
class EllipticCurveModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_q."""
    q: int
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    @property
    def F(self):
        return field(self.q)

    def discriminant(self):
        F = self.F
        M, A, S = F.mul, F.add, F.sub
        c = F.from_int
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = A[M[a1][a1]][M[c(4)][a2]]
        b4 = A[M[c(2)][a4]][M[a1][a3]]
        b6 = A[M[a3][a3]][M[c(4)][a6]]
        b8 = S[A[A[M[M[a1][a1]][a6]][M[c(4)][M[a2][a6]]]][M[a2][M[a3][a3]]]][
            A[M[a1][M[a3][a4]]][M[a4][a4]]]
        t1 = M[M[b2][b2]][b8]
        t2 = M[c(8)][M[b4][M[b4][b4]]]
        t3 = M[c(27)][M[b6][b6]]
        t4 = M[c(9)][M[b2][M[b4][b6]]]
        return A[S[S[F.neg[t1]][t2]][t3]][t4]

    def is_nonsingular(self):
        return self.discriminant() != 0

    def singular_points(self):
        """Affine points where the equation and both partials vanish (base-field scan)."""
        F = self.F
        M, A, S = F.mul, F.add, F.sub
        c = F.from_int
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        out = []
        for x in F.elements():
            for y in F.elements():
                if self._eq(x, y) != 0:
                    continue
                # d/dx: a1 y - 3x^2 - 2 a2 x - a4 ; d/dy: 2y + a1 x + a3
                fx = S[M[a1][y]][A[A[M[c(3)][M[x][x]]][M[c(2)][M[a2][x]]]][a4]]
                fy = A[A[M[c(2)][y]][M[a1][x]]][a3]
                if fx == 0 and fy == 0:
                    out.append((x, y))
        return out

    def _eq(self, x, y):
        F = self.F
        M, A, S = F.mul, F.add, F.sub
        lhs = A[A[M[y][y]][M[self.a1][M[x][y]]]][M[self.a3][y]]
        x2 = M[x][x]
        rhs = A[A[A[M[x2][x]][M[self.a2][x2]]][M[self.a4][x]]][self.a6]
        return S[lhs][rhs]

    def points(self):
        """Affine points; the point at infinity is None."""
        F = self.F
        return [(x, y) for x in F.elements() for y in F.elements() if self._eq(x, y) == 0]

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        F = self.F
        M, A, S, inv = F.mul, F.add, F.sub, F.inv
        c = F.from_int
        a1, a2, a3, a4 = self.a1, self.a2, self.a3, self.a4
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2 and A[A[y1][y2]][A[M[a1][x2]][a3]] == 0:
            return None
        if x1 != x2:
            lam = M[S[y2][y1]][inv[S[x2][x1]]]
        else:
            num = S[A[A[M[c(3)][M[x1][x1]]][M[c(2)][M[a2][x1]]]][a4]][M[a1][y1]]
            den = A[A[M[c(2)][y1]][M[a1][x1]]][a3]
            lam = M[num][inv[den]]
        nu = S[y1][M[lam][x1]]
        x3 = S[S[S[A[M[lam][lam]][M[a1][lam]]][a2]][x1]][x2]
        y3 = S[F.neg[M[A[lam][a1]][x3]]][A[nu][a3]]
        return (x3, y3)

    def multiply(self, P, n):
        R = None
        while n:
            if n & 1:
                R = self.add(R, P)
            P = self.add(P, P)
            n >>= 1
        return R

    def count(self):
        return len(self.points()) + 1

    def group(self):
        pts = [None] + self.points()
        N = len(pts)
        orders = [element_order(P, N, self.multiply, None) for P in pts]
        return group_from_orders(orders)


def ec_scan(q):
    """All nonsingular Weierstrass models over F_q, aggregated by (Weil polynomial, group)."""
    if q not in EC_FIELDS:
        raise ValueError(f"unsupported q={q}; choose from {EC_FIELDS}")
    F = field(q)
    tally = Counter()
    bound = 4 * q
    for coeffs in itertools.product(F.elements(), repeat=5):
        E = EllipticCurveModel(q, *coeffs)
        if not E.is_nonsingular():
            continue
        G = E.group()
        trace = q + 1 - G.order
        assert trace * trace <= bound, (E, trace)
        tally[(trace, G.invariant_factors)] += 1
    out = []
    for (trace, inv), count in sorted(tally.items()):
        W = validate_weil(IntPolynomial((q, -trace, 1)), q)
        out.append((W, GroupShape(inv), count))
    return out


# -- polynomials over a finite field (ascending int lists, no trailing zeros) -----

class FqPoly:
    def __init__(self, F):
        self.F = F

    @staticmethod
    def trim(a):
        a = list(a)
        while a and a[-1] == 0:
            a.pop()
        return tuple(a)

    def add(self, a, b):
        A = self.F.add
        n = max(len(a), len(b))
        return self.trim(A[a[i] if i < len(a) else 0][b[i] if i < len(b) else 0] for i in range(n))

    def neg(self, a):
        return tuple(self.F.neg[x] for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        M, A = self.F.mul, self.F.add
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                row = M[x]
                for j, y in enumerate(b):
                    out[i + j] = A[out[i + j]][row[y]]
        return self.trim(out)

    def scale(self, a, c):
        return self.trim(self.F.mul[c][x] for x in a)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError
        F = self.F
        M, S = F.mul, F.sub
        inv = F.inv[b[-1]]
        r = list(a)
        db = len(b) - 1
        if len(r) - 1 < db:
            return (), self.trim(r)
        qt = [0] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = M[r[k]][inv]
            qt[k - db] = c
            if c:
                for j, y in enumerate(b):
                    r[k - db + j] = S[r[k - db + j]][M[c][y]]
        return self.trim(qt), self.trim(r[:db])

    def mod(self, a, b):
        return self.divmod(a, b)[1]

    def monic(self, a):
        if not a:
            return a
        return self.scale(a, self.F.inv[a[-1]])

    def xgcd(self, a, b):
        """(d, s, t) with d = s a + t b, d monic (or zero)."""
        r0, r1 = a, b
        s0, s1 = (1,), ()
        t0, t1 = (), (1,)
        while r1:
            qt, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.mul(qt, s1))
            t0, t1 = t1, self.sub(t0, self.mul(qt, t1))
        if r0:
            c = self.F.inv[r0[-1]]
            return self.scale(r0, c), self.scale(s0, c), self.scale(t0, c)
        return r0, s0, t0

    def evaluate(self, a, x):
        M, A = self.F.mul, self.F.add
        acc = 0
        for c in reversed(a):
            acc = A[M[acc][x]][c]
        return acc

    def derivative(self, a):
        F = self.F
        return self.trim(F.mul[F.from_int(i)][c] for i, c in enumerate(a) if i)


# -- genus 2 ---------------------------------------------------------------------

@dataclass(frozen=True)
class Genus2Curve:
    """y^2 = f(x) over F_q (q odd prime), f of degree 5 or 6 with ascending coefficients."""
    q: int
    f: tuple

    def __post_init__(self):
        if self.q not in GENUS2_FIELDS:
            raise UnsupportedCurve(f"genus-2 curves need q in {GENUS2_FIELDS}")
        f = FqPoly(field(self.q)).trim(x % self.q for x in self.f)
        object.__setattr__(self, "f", f)
        if len(f) - 1 not in (5, 6):
            raise UnsupportedCurve("f must have degree 5 or 6")

    @property
    def F(self):
        return field(self.q)

    def is_squarefree(self):
        R = FqPoly(self.F)
        d, _, _ = R.xgcd(self.f, R.derivative(self.f))
        return len(d) == 1

    def count_points(self, k):
        """#C(F_{q^k}) for k in {1, 2} on the smooth model."""
        F = self.F if k == 1 else FiniteField(self.q, 2)
        R = FqPoly(F)
        f = self.f  # F_q elements embed as ints < p
        affine = sum(F.nroots[R.evaluate(f, x)] for x in F.elements())
        if len(f) - 1 == 5:
            infinity = 1
        else:
            infinity = 2 if F.is_square(f[-1]) else 0
        return affine + infinity


def weil_from_counts(q, N1, N2):
    """Genus-2 Weil polynomial from #C(F_q) and #C(F_{q^2})."""
    s1 = q + 1 - N1
    p2 = q * q + 1 - N2
    if (s1 * s1 - p2) % 2:
        raise ValueError("parity violation: point counts are inconsistent")
    s2 = (s1 * s1 - p2) // 2
    return IntPolynomial((q * q, -q * s1, s2, -s1, 1))


class Jacobian:
    """Mumford representation (u, v) on y^2 = f(x), deg f = 5; identity is ((1,), ())."""

    def __init__(self, F, f):
        self.F = F
        self.R = FqPoly(F)
        self.f = f
        self.identity = ((1,), ())

    def reduce(self, u, v):
        R = self.R
        while len(u) - 1 > 2:
            u = R.divmod(R.sub(self.f, R.mul(v, v)), u)[0]
            v = R.mod(R.neg(v), u)
        u = R.monic(u)
        return u, R.mod(v, u)

    def add(self, D1, D2):
        R = self.R
        u1, v1 = D1
        u2, v2 = D2
        d1, e1, e2 = R.xgcd(u1, u2)
        d, c1, c2 = R.xgcd(d1, R.add(v1, v2))
        s1, s2, s3 = R.mul(c1, e1), R.mul(c1, e2), c2
        u = R.divmod(R.mul(u1, u2), R.mul(d, d))[0]
        w = R.add(R.add(R.mul(R.mul(s1, u1), v2), R.mul(R.mul(s2, u2), v1)),
                  R.mul(s3, R.add(R.mul(v1, v2), self.f)))
        v = R.mod(R.divmod(w, d)[0], u)
        return self.reduce(u, v)

    def negate(self, D):
        u, v = D
        return u, self.R.mod(self.R.neg(v), u)

    def multiply(self, D, n):
        acc = self.identity
        while n:
            if n & 1:
                acc = self.add(acc, D)
            D = self.add(D, D)
            n >>= 1
        return acc

    def is_valid(self, D):
        u, v = D
        R = self.R
        return (u and u[-1] == 1 and len(v) < len(u) and len(u) - 1 <= 2
                and not R.mod(R.sub(R.mul(v, v), self.f), u))

    def elements(self):
        R, F = self.R, self.F
        out = [self.identity]
        els = list(F.elements())
        for a in els:
            u = (F.neg[a], 1)
            fa = R.evaluate(self.f, a)
            for b in F.sqrts.get(fa, []):
                out.append((u, R.trim((b,))))
        for u0 in els:
            for u1 in els:
                u = (u0, u1, 1)
                for v0 in els:
                    for v1 in els:
                        v = R.trim((v0, v1))
                        if not R.mod(R.sub(R.mul(v, v), self.f), u):
                            out.append((u, v))
        return out


def _quintic_model(curve):
    """An odd-degree model of the curve (moving a rational Weierstrass point to infinity)."""
    F = curve.F
    R = FqPoly(F)
    f = curve.f
    if len(f) - 1 == 5:
        return f
    root = next((a for a in F.elements() if R.evaluate(f, a) == 0), None)
    if root is None:
        raise UnsupportedCurve("sextic model without a rational Weierstrass point")
    # g(z) = z^6 f(root + 1/z)
    shifted = [0] * 7
    # f(root + w) coefficients via Taylor shift
    poly = list(f)
    for i in range(7):
        # repeated synthetic division by (x - root)
        qt, r = R.divmod(tuple(poly), (F.neg[root], 1))
        shifted[i] = r[0] if r else 0
        poly = list(qt)
    # f(root + w) = sum shifted[i] w^i ; z^6 f(root + 1/z) = sum shifted[i] z^(6-i)
    return R.trim(shifted[6 - j] for j in range(7))


def jacobian_group(curve):
    """(Weil polynomial, group of F_q-points of the Jacobian)."""
    if not curve.is_squarefree():
        raise SingularCurve("f is not squarefree")
    q = curve.q
    N1, N2 = curve.count_points(1), curve.count_points(2)
    W = validate_weil(weil_from_counts(q, N1, N2), q)
    J = Jacobian(curve.F, _quintic_model(curve))
    els = J.elements()
    N = len(els)
    if N != W.order:
        raise AssertionError(f"|J| = {N} but f_J(1) = {W.order}")
    orders = [element_order(D, N, J.multiply, J.identity) for D in els]
    return W, group_from_orders(orders)


def monic_quintics(q):
    """All monic quintics over F_q (ascending coefficient tuples)."""
    for low in itertools.product(range(q), repeat=5):
        yield tuple(low) + (1,)


def genus2_scan(q, models=None):
    """Aggregate (Weil polynomial, group) over squarefree curves y^2 = f(x)."""
    tally = Counter()
    for f in models if models is not None else monic_quintics(q):
        C = Genus2Curve(q, f)
        if not C.is_squarefree():
            continue
        W, G = jacobian_group(C)
        tally[(W.f.coeffs, G.invariant_factors)] += 1
    out = []
    for (coeffs, inv), count in sorted(tally.items()):
        out.append((validate_weil(IntPolynomial(coeffs), q), GroupShape(inv), count))
    return out
