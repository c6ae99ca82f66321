"""Shared constructions for the test suites."""

import random
from functools import lru_cache

from avgroups import intmat
from avgroups.abgroups import GroupShape
from avgroups.exactpoly import IntPolynomial, product
from avgroups.polygons import valuation
from avgroups.tatemod import frobenius_matrix, stable_subspaces


def P(*coeffs):
    return IntPolynomial(coeffs)


# -- subgroups of finite abelian l-groups ---------------------------------------

def subgroup_pair(rng, ell, max_total=8):
    """Random G = sum Z/l^m_i and a subgroup H spanned by random elements.

    Returns (G, H, Gq) as ascending exponent tuples of nonzero entries.
    """
    r = rng.randint(1, 4)
    G = sorted(rng.randint(0, 3) for _ in range(r))
    while sum(G) > max_total:
        G[G.index(max(G))] -= 1
    D = [ell ** m for m in G]
    k = rng.randint(0, 4)
    A = [[rng.randrange(d) for _ in range(k)] for d in D]  # columns are generators
    # G/H = coker [diag(D) | A]
    rel = [[D[i] if i == j else 0 for j in range(r)] + A[i] for i in range(r)]
    Gq = _exps(intmat.smith_diagonal(rel), ell)
    # H = Z^k / {x : A x in D Z^r}
    if k == 0:
        H = ()
    else:
        ker = intmat.kernel([A[i] + [-D[i] if i == j else 0 for j in range(r)] for i in range(r)])
        K = [row[:k] for row in ker]
        H = _exps(intmat.smith_diagonal(K), ell)
    return tuple(x for x in G if x), H, Gq


def _exps(diag, ell):
    return tuple(sorted(valuation(d, ell) for d in diag if d and valuation(d, ell)))


# -- random stable lattices ------------------------------------------------------

def random_stable_lattice(rng, f, ell, steps):
    """Walk down from Z^n through random C-stable sublattices; return (Bc, M)."""
    C = frobenius_matrix(f)
    n = len(C)
    Bc = intmat.identity(n)
    M = C
    for _ in range(steps):
        subs = [W for W in _subspaces(tuple(map(tuple, M)), ell) if len(W) < n]
        W = rng.choice(subs)
        gens = [list(w) for w in W] + [[ell * int(i == j) for j in range(n)] for i in range(n)]
        K = [r for r in intmat.hnf_rows(gens) if any(r)]
        Bc = intmat.matmul(Bc, intmat.transpose(K))
        M = intmat.conjugate_by_basis(Bc, C)
    return Bc, M


@lru_cache(maxsize=None)
def _subspaces(M, ell):
    return stable_subspaces([list(r) for r in M], ell)


def krylov_saturation(M, v):
    """Coordinates (rows) of the saturation of the M-cyclic span of v."""
    n = len(M)
    cols = [list(v)]
    for _ in range(n - 1):
        cols.append(intmat.matvec(M, cols[-1]))
    K = intmat.transpose(cols)  # n x n, columns v, Mv, ...
    left = intmat.kernel(intmat.transpose(K))  # rows y with y K = 0
    if not left:
        return intmat.identity(n)
    return intmat.kernel(left)


# -- Weil polynomial generator ---------------------------------------------------

def random_weil_candidate(rng, q):
    """A monic polynomial of degree <= 6 that is a Weil polynomial about half the time."""
    s = int(round(q ** 0.5))
    pieces = []
    deg = 0
    target = rng.choice((2, 4, 6))
    while deg < target:
        kind = rng.random()
        if target - deg >= 2 and kind < 0.7:
            bound = int(2 * q ** 0.5)
            a = rng.randint(-bound, bound)
            pieces.append(P(q, -a, 1))
            deg += 2
        elif s * s == q:
            pieces.append(P(rng.choice((s, -s)), 1))
            deg += 1
        else:
            pieces.append(P(-q, 0, 1))
            deg += 2
    f = product([(g, 1) for g in pieces])
    if f.degree % 2:
        f = f * P(-q, 0, 1) if f.degree + 2 <= 7 else f
    mode = rng.random()
    if mode < 0.35:
        c = list(f.coeffs)
        i = rng.randrange(len(c) - 1)
        c[i] += rng.choice((-2, -1, 1, 2))
        f = IntPolynomial(c)
    elif mode < 0.45:
        d = rng.choice((2, 4, 6))
        f = IntPolynomial([rng.randint(-3 * q, 3 * q) for _ in range(d)] + [1])
    return f
