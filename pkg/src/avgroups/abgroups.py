"""Finite abelian groups stored by invariant factors.

Text form: comma separated invariant factors in ascending order, e.g.
``"2,6"`` for Z/2 + Z/6; the empty string is the trivial group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, prod

from sympy import factorint
from sympy.utilities.iterables import partitions


class GroupParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True, order=True)
class GroupShape:
    invariant_factors: tuple = ()

    def __post_init__(self):
        d = tuple(int(x) for x in self.invariant_factors)
        if any(x < 2 for x in d):
            raise ValueError(f"invariant factors must be >= 2: {d}")
        if any(b % a for a, b in zip(d, d[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain: {d}")
        object.__setattr__(self, "invariant_factors", d)

    @classmethod
    def parse(cls, text):
        text = text.strip() if text is not None else ""
        if not text:
            return cls(())
        factors = []
        pos = 0
        for field in text.split(","):
            token = field.strip()
            if not token.isdigit():
                raise GroupParseError(f"bad invariant factor {token!r}", pos)
            factors.append(int(token))
            pos += len(field) + 1
        # accept any cyclic decomposition and normalise it
        return cls.from_cyclic(factors)

    @classmethod
    def from_cyclic(cls, orders):
        """Normalise a direct sum of cyclic groups Z/n_i."""
        local = {}
        for n in orders:
            if n < 1:
                raise ValueError("cyclic orders must be positive")
            for ell, k in factorint(n).items():
                local.setdefault(ell, []).append(k)
        return cls.from_local(local)

    @classmethod
    def from_local(cls, local):
        """Build from {ell: exponents} (any order, zeros ignored)."""
        cols = {ell: sorted((k for k in ks if k), reverse=True) for ell, ks in local.items()}
        width = max((len(ks) for ks in cols.values()), default=0)
        factors = []
        for i in range(width):
            d = 1
            for ell, ks in cols.items():
                if i < len(ks):
                    d *= ell ** ks[i]
            factors.append(d)
        return cls(tuple(reversed(factors)))

    @property
    def order(self):
        return prod(self.invariant_factors)

    @property
    def rank(self):
        """Minimal number of generators."""
        return len(self.invariant_factors)

    def primes(self):
        return sorted(factorint(self.order))

    def exponents(self, ell):
        """Ascending nonzero exponents of the ell-primary part."""
        out = []
        for d in self.invariant_factors:
            k = 0
            while d % ell == 0:
                d //= ell
                k += 1
            if k:
                out.append(k)
        return tuple(out)

    def local(self):
        return {ell: self.exponents(ell) for ell in self.primes()}

    def to_text(self):
        return ",".join(map(str, self.invariant_factors))

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)


def factor(n):
    return dict(sorted(factorint(n).items()))


def _partitions_desc(k):
    for p in partitions(k):
        parts = []
        for size, mult in sorted(p.items(), reverse=True):
            parts.extend([size] * mult)
        yield tuple(parts)


def enumerate_groups(n):
    """All abelian groups of order n, sorted by (generator count, invariant factors)."""
    if n < 1:
        raise ValueError("group order must be positive")
    fac = factor(n)
    per_prime = [[(ell, p) for p in _partitions_desc(k)] for ell, k in fac.items()]
    out = []
    for combo in itertools.product(*per_prime):
        out.append(GroupShape.from_local(dict(combo)))
    out.sort(key=lambda G: (G.rank, G.invariant_factors))
    return out


def partition_count(k):
    return sum(1 for _ in partitions(k))


def local_exponents(G, ell, rank):
    """Ascending exponents of G_ell left-padded with zeros to length ``rank``."""
    e = G.exponents(ell)
    if len(e) > rank:
        raise ValueError(f"G_{ell} needs {len(e)} generators, more than rank {rank}")
    return (0,) * (rank - len(e)) + e


def ring_quotient_shape(d, lam):
    """Exponents of O/alpha O for a degree-d extension and valuation lam = floor + e/d."""
    lam = Fraction(lam)
    if lam < 0 or d < 1:
        raise ValueError("need d >= 1 and lam >= 0")
    e = d * (lam - floor(lam))
    if e.denominator != 1:
        raise ValueError(f"d*lam must be integral: d={d}, lam={lam}")
    e = int(e)
    return (floor(lam),) * (d - e) + (ceil(lam),) * e


def check_subquotient_bounds(H, G, s):
    """m_i <= n_i for i <= s, with G = (m_1..m_r), H = (n_1..n_s) ascending."""
    H = tuple(sorted(H))
    G = tuple(sorted(G))
    if len(H) != s or s > len(G):
        raise ValueError(f"need len(H) = s <= len(G); got {len(H)}, {s}, {len(G)}")
    return all(G[i] <= H[i] for i in range(s))


def check_quotient_bounds(Gq, G, s):
    """Dual form: m_i >= n'_i for s < i <= r, with G/H = (n'_1..n'_{r-s})."""
    Gq = tuple(sorted(Gq))
    G = tuple(sorted(G))
    r = len(G)
    if len(Gq) != r - s:
        raise ValueError("quotient vector must have length r - s")
    return all(G[s + i] >= Gq[i] for i in range(r - s))
