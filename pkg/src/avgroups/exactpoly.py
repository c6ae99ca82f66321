"""Exact univariate polynomials with integer coefficients.

Coefficients are stored in ascending order, ``coeffs[i]`` being the
coefficient of ``t**i``.  The zero polynomial has no coefficients and its
degree is ``ZERO_DEGREE`` (negative infinity), so it compares below every
genuine degree without any ``-1`` bookkeeping.

Text form (used by the CLI): comma separated ascending coefficients, e.g.
``"2,-1,1"`` is ``t^2 - t + 2``.
"""

from __future__ import annotations

import math
from functools import reduce
from math import comb

ZERO_DEGREE = -math.inf


class PolynomialParseError(ValueError):
    """Malformed polynomial text; ``position`` is the 0-based character offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = _trim(coeffs)
        for c in coeffs:
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"integer coefficients required, got {c!r}")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    # -- constructors --------------------------------------------------
    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def monomial(cls, n, c=1):
        return cls((0,) * n + (c,))

    @classmethod
    def linear_root(cls, a):
        """The monic polynomial ``t - a``."""
        return cls((-a, 1))

    @classmethod
    def parse(cls, text):
        """Parse the comma separated ascending-coefficient format."""
        if text is None:
            raise PolynomialParseError("empty polynomial", 0)
        coeffs = []
        pos = 0
        for field in text.split(","):
            token = "".join(field.split())
            if not token:
                raise PolynomialParseError("empty coefficient", pos)
            body = token[1:] if token[0] in "+-" else token
            if not body.isdigit():
                offset = pos + (len(field) - len(field.lstrip()))
                raise PolynomialParseError(f"bad coefficient {token!r}", offset)
            coeffs.append(int(token))
            pos += len(field) + 1
        return cls(coeffs)

    # -- basic properties ----------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self):
        return not self.coeffs

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        return self.pretty()

    def to_text(self):
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    def pretty(self, var="t"):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative exponent")
        result = IntPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        return IntPolynomial(c * a for a in self.coeffs)

    def derivative(self):
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self):
        return reduce(math.gcd, self.coeffs, 0)

    def primitive_part(self):
        """Divide by the content; the leading coefficient is made positive."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return IntPolynomial(a // c for a in self.coeffs)

    def pseudo_divmod(self, divisor):
        """Return (Q, R) with lc(divisor)^k * self = Q*divisor + R, k = deg self - deg divisor + 1."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        db = divisor.degree
        lc = divisor.leading
        if self.degree < db:
            return IntPolynomial(), self
        rem = list(self.coeffs)
        k = len(rem) - 1 - db + 1
        quo = [0] * k
        for step in range(len(rem) - 1, db - 1, -1):
            # multiply everything so far by lc and eliminate the top term
            c = rem[step]
            quo = [lc * a for a in quo]
            rem = [lc * a for a in rem]
            quo[step - db] += c
            for j, b in enumerate(divisor.coeffs):
                rem[step - db + j] -= c * b
        return IntPolynomial(quo), IntPolynomial(rem[:db])

    def divmod_exact_monic(self, divisor):
        """Division by a monic polynomial; both quotient and remainder are integral."""
        if not divisor.is_monic():
            raise ValueError("divisor must be monic")
        db = divisor.degree
        rem = list(self.coeffs)
        if len(rem) - 1 < db:
            return IntPolynomial(), self
        quo = [0] * (len(rem) - db)
        for step in range(len(rem) - 1, db - 1, -1):
            c = rem[step]
            if c:
                quo[step - db] = c
                for j, b in enumerate(divisor.coeffs):
                    rem[step - db + j] -= c * b
        return IntPolynomial(quo), IntPolynomial(rem[:db])

    def exact_div(self, divisor):
        """Exact division in Z[t]; raises ArithmeticError if it is not exact."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lc = divisor.leading
        db = divisor.degree
        rem = list(self.coeffs)
        if not rem:
            return IntPolynomial()
        if len(rem) - 1 < db:
            raise ArithmeticError("not divisible")
        quo = [0] * (len(rem) - db)
        for step in range(len(rem) - 1, db - 1, -1):
            c = rem[step]
            if c:
                if c % lc:
                    raise ArithmeticError("not divisible")
                a = c // lc
                quo[step - db] = a
                for j, b in enumerate(divisor.coeffs):
                    rem[step - db + j] -= a * b
        if any(rem[:db]):
            raise ArithmeticError("not divisible")
        return IntPolynomial(quo)

    def divides(self, other):
        """True if self divides other in Z[t]."""
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    def __call__(self, a):
        return evaluate(self, a)


def evaluate(f, a):
    """Horner evaluation; exact for int or Fraction arguments."""
    acc = 0
    for c in reversed(f.coeffs):
        acc = acc * a + c
    return acc


def reflect_at_one(f):
    """The polynomial g with g(t) = f(1 - t)."""
    n = len(f.coeffs)
    out = [0] * n
    for i, c in enumerate(f.coeffs):
        if not c:
            continue
        # (1 - t)^i = sum_k C(i, k) (-t)^k
        for k in range(i + 1):
            term = c * comb(i, k)
            out[k] += -term if k & 1 else term
    return IntPolynomial(out)


def gcd(a, b):
    """Greatest common divisor in Z[t] via the primitive remainder sequence.

    The result is primitive times the gcd of the contents, with positive
    leading coefficient.
    """
    if a.is_zero():
        return b.primitive_part().scale(b.content()) if not b.is_zero() else b
    if b.is_zero():
        return a.primitive_part().scale(a.content())
    c = math.gcd(a.content(), b.content())
    a, b = a.primitive_part(), b.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        _, r = a.pseudo_divmod(b)
        a, b = b, r.primitive_part()
    return a.primitive_part().scale(c)


def monic_gcd(a, b):
    """gcd normalised to be monic; requires the result to have unit leading coefficient."""
    g = gcd(a, b).primitive_part()
    if g.leading != 1:
        raise ArithmeticError(f"gcd {g} is not monic over Z")
    return g


def squarefree_decomposition(f):
    """Yun's algorithm: pairs (g_i, e_i) with f = prod g_i**e_i, g_i monic squarefree.

    Only nontrivial factors are returned, ordered by multiplicity.
    """
    if f.is_zero() or not f.is_monic():
        raise ValueError("squarefree decomposition needs a monic polynomial")
    if f.degree == 0:
        return []
    df = f.derivative()
    a = monic_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = monic_gcd(b, d)
        b_next = b.exact_div(a)
        c = d.exact_div(a)
        if a.degree > 0:
            out.append((a, i))
        b = b_next
        d = c - b.derivative()
        i += 1
    return out


def product(factors):
    """Multiply out [(g, e), ...]."""
    out = IntPolynomial.constant(1)
    for g, e in factors:
        out = out * g ** e
    return out


def is_squarefree(f):
    return gcd(f, f.derivative()).degree <= 0
