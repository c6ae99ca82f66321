"""Decide which finite abelian groups occur in an isogeny class.

Every test is local at a prime ell dividing f(1) and compares a Newton
polygon built from f(1 - t) (or from one of its factors) with a Hodge
polygon built from the exponents of G_ell.  Verdicts are three valued:
NO needs a violated necessary condition, YES needs a proven sufficient one,
and the threefold ranges without a known answer give UNKNOWN.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor

from .abgroups import GroupShape, enumerate_groups, factor, local_exponents
from .exactpoly import IntPolynomial, evaluate, reflect_at_one, squarefree_decomposition
from .polygons import (
    dual_exponents,
    hodge_polygon,
    lies_on_or_above,
    newton_polygon,
    polygon_slopes,
    valuation,
)
from .weil import (
    MixedSupersingular,
    PowerPair,
    Separable,
    ThreefoldMixed2x2,
    ThreefoldQuartic,
    ThreefoldRepeated,
    WeilPolynomial,
    detect_shape,
    match_shape,
)

YES, NO, UNKNOWN = "yes", "no", "unknown"

DEFAULT_MAX_ENUM = 10 ** 8


class ResourceCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class PrimeRecord:
    ell: int
    case: str
    ok: str
    detail: str


@dataclass(frozen=True)
class Verdict:
    outcome: str
    per_prime: tuple = field(default_factory=tuple)

    @classmethod
    def aggregate(cls, records):
        records = tuple(records)
        oks = {r.ok for r in records}
        if NO in oks:
            outcome = NO
        elif UNKNOWN in oks:
            outcome = UNKNOWN
        else:
            outcome = YES
        return cls(outcome, records)


def _poly(W):
    return W.f if isinstance(W, WeilPolynomial) else W


def _nu(n, ell):
    return valuation(n, ell)


def _np_at_one(f, ell):
    return newton_polygon(reflect_at_one(f), ell)


def _smallest_slope(P, ell):
    return polygon_slopes(_np_at_one(P, ell))[0]


# -- elementary predicates -----------------------------------------------------

def check_separable(W, ell, e):
    """Np_ell(f(1-t)) lies on or above Hp(e); e padded to deg f."""
    f = _poly(W)
    e = tuple(sorted(e))
    if len(e) != f.degree:
        raise ValueError(f"exponent vector must have length {f.degree}")
    if sum(e) != _nu(evaluate(f, 1), ell):
        raise ValueError("order mismatch: sum of exponents != v_ell(f(1))")
    return lies_on_or_above(_np_at_one(f, ell), hodge_polygon(e))


@dataclass(frozen=True)
class SlopeBounds:
    r: int
    s: int
    lam: Fraction
    s_prime: int
    # (1-based index, "<=" or ">=", value)
    bounds: tuple

    def holds(self, e):
        e = sorted(e)
        if len(e) != self.r:
            raise ValueError(f"need {self.r} exponents")
        for i, op, v in self.bounds:
            x = e[i - 1]
            if op == "<=" and not x <= v:
                return False
            if op == ">=" and not x >= v:
                return False
        return True


def slope_bounds(r, s, d, lam):
    """Index bounds forced by a root of f(1-t) of multiplicity s and valuation lam."""
    lam = Fraction(lam)
    if not 1 <= s <= r or d < 1:
        raise ValueError("need 1 <= s <= r and d >= 1")
    e = d * (lam - floor(lam))
    if e.denominator != 1:
        raise ValueError("d*lam must be integral")
    e = int(e)
    lo, hi = floor(lam), ceil(lam)
    s_prime = ceil(Fraction((d - e) * s, d))
    bounds = []
    if s_prime >= 1:
        bounds.append((s_prime, "<=", lo))
    bounds.append((s, "<=", hi))
    if s_prime >= 1:
        bounds.append((r - s_prime + 1, ">=", hi))
    bounds.append((r - s + 1, ">=", lo))
    return SlopeBounds(r, s, lam, s_prime, tuple(bounds))


def _pairings(values, m, lam1):
    """Can the sorted multiset ``values`` be split into pairs (a, m - a) with min <= lam1?"""
    if not values:
        return True
    a = values[0]
    if a > lam1:
        return False
    b = m - a
    rest = list(values[1:])
    if b in rest:
        rest.remove(b)
        return _pairings(rest, m, lam1)
    return False


def check_power_pair(P, Q, r, s, ell, e):
    """Decide the decomposition G_ell = sum of r groups G^(j) plus (Z_ell/Q(1))^s."""
    if P.degree > 2 or P.degree < 1:
        raise ValueError("P must have degree 1 or 2")
    if s and not Q.divides(P):
        raise ValueError("Q must divide P")
    dq = Q.degree if s else 0
    e = sorted(e)
    if len(e) != r * P.degree + s * dq:
        raise ValueError("exponent vector has the wrong length")
    m = _nu(evaluate(P, 1), ell)
    c = _nu(evaluate(Q, 1), ell) if s else 0
    if sum(e) != r * m + s * c:
        raise ValueError("order mismatch")
    rest = list(e)
    # the H part: s cyclic pieces Z/ell^c, each padded to rank deg Q
    for _ in range(s):
        if c not in rest:
            return False
        rest.remove(c)
        for _ in range(dq - 1):
            if 0 not in rest:
                return False
            rest.remove(0)
    if P.degree == 1:
        return all(x == m for x in rest)
    # pairs (a, m - a) with min(a, m - a) <= lambda_1; smallest-first greedy is exhaustive
    # because the smallest remaining entry must be the min of its pair
    lam1 = _smallest_slope(P, ell)
    return _pairings(rest, m, lam1)


def check_mixed(P, L, r, ell, e, f):
    """The four conditions for f = P L^r with deg P = 2 and L = t -+ sqrt(q)."""
    if P.degree != 2 or L.degree != 1:
        raise ValueError("need deg P = 2 and deg L = 1")
    if r < 2:
        raise ValueError("the linear factor must be repeated (r >= 2)")
    if P * L ** r != f:
        raise ValueError("f != P L^r")
    if evaluate(P, -L[0]) == 0:
        raise ValueError("P vanishes at the root of L")
    e = sorted(e)
    if len(e) != r + 2:
        raise ValueError(f"need {r + 2} exponents")
    if sum(e) != _nu(evaluate(f, 1), ell):
        raise ValueError("order mismatch")
    lam_q = _nu(evaluate(L, 1), ell)
    lam1 = _smallest_slope(P, ell)
    m = [None] + e  # 1-based
    return (
        lies_on_or_above(_np_at_one(f, ell), hodge_polygon(e))
        and m[r] <= lam_q
        and m[3] >= lam_q
        and m[1] + m[r + 1] <= lam_q + lam1
    )


# -- per-prime dispatch ----------------------------------------------------------

def _padded(exps, rank):
    return (0,) * (rank - len(exps)) + tuple(exps)


def _rank_guard(exps, rank):
    if len(exps) > rank:
        return f"G_ell needs {len(exps)} generators but the Tate module has rank {rank}"
    return None


def _decide_separable(f, ell, exps):
    bad = _rank_guard(exps, f.degree)
    if bad:
        return NO, bad
    ok = check_separable(f, ell, _padded(exps, f.degree))
    return (YES, "Np(f(1-t)) on or above Hp") if ok else (NO, "Np(f(1-t)) below Hp")


def _decide_power_pair(shape, ell, exps):
    rank = shape.r * shape.P.degree + shape.s * (shape.Q.degree if shape.s else 0)
    bad = _rank_guard(exps, rank)
    if bad:
        return NO, bad
    ok = check_power_pair(shape.P, shape.Q, shape.r, shape.s, ell, _padded(exps, rank))
    if ok:
        return YES, "splits into admissible rank-2 blocks"
    return NO, "no admissible block decomposition"


def _decide_mixed(shape, ell, exps):
    rank = shape.r + 2
    bad = _rank_guard(exps, rank)
    if bad:
        return NO, bad
    f = shape.P * shape.L ** shape.r
    ok = check_mixed(shape.P, shape.L, shape.r, ell, _padded(exps, rank), f)
    return (YES, "all four slope conditions hold") if ok else (NO, "a slope condition fails")


def _dual_test(Np, exps, m, pad_to):
    """Np on or above the Hodge polygon of the dual exponents (padded to pad_to)."""
    dual = _padded(dual_exponents(exps, m), pad_to)
    Hp = hodge_polygon(dual)
    # endpoint consistency: both polygons start at the same height
    assert Hp.left == Np.left, (Hp, Np)
    return lies_on_or_above(Np, Hp)


def _decide_threefold_repeated(shape, ell, exps):
    P = shape.P
    m = _nu(evaluate(P, 1), ell)
    r = len(exps)
    if r < 2:
        return NO, "G_ell must need at least 2 generators"
    if r > 6:
        return NO, _rank_guard(exps, 6)
    if max(exps) > m:
        return NO, f"G_ell is not annihilated by ell^{m}"
    if r == 2:
        if tuple(exps) == (m, m):
            return YES, f"G_ell = (Z/ell^{m})^2"
        return NO, f"two generators force (Z/ell^{m})^2"
    if r == 3:
        ok = _dual_test(_np_at_one(P, ell), exps, m, 3)
        return (YES, "dual Hodge polygon under Np(P(1-t))") if ok else (
            NO, "dual Hodge polygon above Np(P(1-t))")
    return UNKNOWN, f"{r} generators: classification not known for r > 3"


def _decide_threefold_mixed(shape, ell, exps):
    P, Q = shape.P, shape.Q
    m = _nu(evaluate(P, 1) * evaluate(Q, 1), ell)
    r = len(exps)
    if r < 2:
        return NO, "G_ell must need at least 2 generators"
    if r > 6:
        return NO, _rank_guard(exps, 6)
    if max(exps) > m:
        return NO, f"G_ell is not annihilated by ell^{m}"
    if r == 2:
        ok = _dual_test(_np_at_one(Q, ell), exps, m, 2)
        return (YES, "dual Hodge polygon under Np(Q(1-t))") if ok else (
            NO, "dual Hodge polygon above Np(Q(1-t))")
    return UNKNOWN, f"{r} generators: classification not known for r > 2"


def _decide_threefold_quartic(shape, ell, exps):
    P, L = shape.P, shape.L
    m = _nu(evaluate(P, 1) * evaluate(L, 1), ell)
    r = len(exps)
    if r < 2:
        return NO, "G_ell must need at least 2 generators"
    if r > 6:
        return NO, _rank_guard(exps, 6)
    if max(exps) > m:
        return NO, f"G_ell is not annihilated by ell^{m}"
    if r == 2:
        ok = _dual_test(_np_at_one(P, ell), exps, m, 4)
        return (YES, "dual Hodge polygon under Np(P(1-t))") if ok else (
            NO, "dual Hodge polygon above Np(P(1-t))")
    return UNKNOWN, f"{r} generators: classification not known for r > 2"


def decide_shape(shape, ell, exps):
    """(ok, detail) for one shape at one prime; exps are the nonzero exponents of G_ell."""
    exps = tuple(sorted(exps))
    if isinstance(shape, Separable):
        return _decide_separable(shape.f, ell, exps)
    if isinstance(shape, PowerPair):
        return _decide_power_pair(shape, ell, exps)
    if isinstance(shape, MixedSupersingular):
        return _decide_mixed(shape, ell, exps)
    if isinstance(shape, ThreefoldRepeated):
        return _decide_threefold_repeated(shape, ell, exps)
    if isinstance(shape, ThreefoldMixed2x2):
        return _decide_threefold_mixed(shape, ell, exps)
    if isinstance(shape, ThreefoldQuartic):
        return _decide_threefold_quartic(shape, ell, exps)
    return UNKNOWN, "shape outside the known classification"


@lru_cache(maxsize=None)
def _shapes(W):
    factors = tuple(squarefree_decomposition(W.f))
    return detect_shape(W), factors


@lru_cache(maxsize=None)
def local_shape(W, ell):
    """Shape used at ell.

    Squarefree factors g with ell not dividing g(1) have no Frobenius
    eigenvalue congruent to 1 mod ell and do not affect G_ell, so for
    g <= 3 they are dropped before dispatch.  Returns (shape, reduced).
    """
    shape, factors = _shapes(W)
    if W.g >= 4:
        return shape, False
    kept = [(g, e) for g, e in factors if evaluate(g, 1) % ell == 0]
    if len(kept) == len(factors):
        return shape, False
    return match_shape(kept, W.sqrt_q), True


@lru_cache(maxsize=None)
def _prime_record(W, ell, exps):
    shape, reduced = local_shape(W, ell)
    ok, detail = decide_shape(shape, ell, exps)
    case = shape.case + ("@local" if reduced else "")
    if ok == YES:
        # global necessary condition: Np(f(1-t)) on or above Hp(G_ell, 2g)
        n = W.f.degree
        assert len(exps) <= n and lies_on_or_above(
            _np_at_one(W.f, ell), hodge_polygon(_padded(exps, n))
        ), f"YES verdict violates the global polygon bound at ell={ell}: {exps}"
    return PrimeRecord(ell, case, ok, detail)


def classify_group(W, G):
    """Three-valued verdict: is G the group of points of a variety in the class of W?"""
    order = W.order
    if G.order != order:
        return Verdict(NO, (PrimeRecord(0, "order", NO, f"|G| = {G.order} != f(1) = {order}"),))
    records = [_prime_record(W, ell, G.exponents(ell)) for ell in factor(order)]
    return Verdict.aggregate(records)


def max_enum_cap():
    env = os.environ.get("AVG_MAX_ENUM")
    return int(env) if env else DEFAULT_MAX_ENUM


def enumerate_admissible(W, cap=None):
    """Split the abelian groups of order f(1) into (yes, unknown); NO groups are dropped."""
    cap = max_enum_cap() if cap is None else cap
    order = W.order
    if order > cap:
        raise ResourceCapExceeded(f"f(1) = {order} exceeds the enumeration cap {cap}")
    yes, unknown = [], []
    for G in enumerate_groups(order):
        v = classify_group(W, G)
        if v.outcome == YES:
            yes.append(G)
        elif v.outcome == UNKNOWN:
            unknown.append(G)
    return yes, unknown


def admissible_local(W, ell, cap=None):
    """ell-local projection of the yes-set: padded exponent vectors of length 2g."""
    yes, _ = enumerate_admissible(W, cap)
    return sorted({local_exponents(G, ell, W.f.degree) for G in yes})
