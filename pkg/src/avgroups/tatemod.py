"""Integer-matrix models of Tate modules.

A Tate module with Frobenius characteristic polynomial f is modelled by a
Frobenius-stable lattice L in Q^(deg f), with Frobenius acting through a
fixed semisimple integer matrix C.  The l-part of the group of points is
coker(1 - C) on L, read off from a Smith normal form.

The lattice oracle walks down from Z^n through C-stable sublattices L' with
lL <= L' < L and records every cokernel shape it meets.  It shares no code
with the polygon classifier, so agreement between the two is evidence for
both.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from . import intmat
from .exactpoly import IntPolynomial, evaluate, squarefree_decomposition
from .intmat import cokernel_exponents
from .polygons import valuation

MAX_DEPTH = 16
MAX_LATTICES = 200_000

__all__ = [
    "companion_matrix",
    "frobenius_matrix",
    "cokernel_exponents",
    "PolyMatrix",
    "verify_matrix_factorization",
    "StableLattice",
    "enumerate_stable_lattices",
    "stable_subspaces",
]


class OracleCapExceeded(RuntimeError):
    pass


def companion_matrix(f):
    """Companion matrix with characteristic polynomial f (monic)."""
    if not f.is_monic() or f.degree < 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    n = f.degree
    C = [[0] * n for _ in range(n)]
    for i in range(1, n):
        C[i][i - 1] = 1
    for i in range(n):
        C[i][n - 1] = -f[i]
    return C


def block_diagonal(blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            out[off + i][off:off + k] = b[i]
        off += k
    return out


def frobenius_matrix(f):
    """Semisimple integer matrix with characteristic polynomial f.

    One companion block per squarefree factor and per unit of multiplicity,
    so that repeated factors act semisimply (as Frobenius does).
    """
    blocks = []
    for g, e in squarefree_decomposition(f):
        blocks.extend([companion_matrix(g)] * e)
    return block_diagonal(blocks)


# -- polynomial matrices ----------------------------------------------------------

class PolyMatrix:
    """Square matrix with IntPolynomial entries."""

    def __init__(self, rows):
        rows = [[e if isinstance(e, IntPolynomial) else IntPolynomial.constant(e) for e in row]
                for row in rows]
        if any(len(row) != len(rows) for row in rows):
            raise ValueError("PolyMatrix must be square")
        self.rows = rows

    @classmethod
    def diagonal(cls, entries):
        n = len(entries)
        zero = IntPolynomial()
        return cls([[entries[i] if i == j else zero for j in range(n)] for i in range(n)])

    @property
    def dim(self):
        return len(self.rows)

    def __matmul__(self, other):
        n = self.dim
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = IntPolynomial()
                for k in range(n):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def det(self):
        return _poly_det(self.rows)

    def at(self, a):
        return [[evaluate(e, a) for e in row] for row in self.rows]


def _poly_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = IntPolynomial()
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = rows[0][j] * _poly_det(minor)
        acc = acc - term if j % 2 else acc + term
    return acc


def verify_matrix_factorization(X, Y, f, fsep, ell, e):
    """det X = +-f, Y X = fsep I, and X(1) has l-adic Smith exponents e."""
    r = X.dim
    if Y.dim != r or len(e) != r:
        raise ValueError("dimension mismatch")
    d = X.det()
    if d != f and d != -f:
        return False
    if (Y @ X) != PolyMatrix.diagonal([fsep] * r):
        return False
    X1 = X.at(1)
    if intmat.det(X1) == 0:
        return False
    return cokernel_exponents(X1, ell) == tuple(sorted(e))


# -- stable subspaces over F_l ----------------------------------------------------

def _rref_mod(rows, ell):
    """Reduced row echelon basis of the span of rows over F_ell, as a tuple key."""
    M = [[x % ell for x in r] for r in rows]
    out = []
    n = len(M[0]) if M else 0
    piv_row = 0
    for col in range(n):
        piv = next((i for i in range(piv_row, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[piv_row], M[piv] = M[piv], M[piv_row]
        inv = pow(M[piv_row][col], -1, ell)
        M[piv_row] = [(x * inv) % ell for x in M[piv_row]]
        for i in range(len(M)):
            if i != piv_row and M[i][col]:
                c = M[i][col]
                M[i] = [(a - c * b) % ell for a, b in zip(M[i], M[piv_row])]
        piv_row += 1
    for r in M[:piv_row]:
        out.append(tuple(r))
    return tuple(out)


def _vectors(n, ell):
    if n == 0:
        yield ()
        return
    for head in range(ell):
        for tail in _vectors(n - 1, ell):
            yield (head,) + tail


def stable_subspaces(A, ell):
    """All A-stable subspaces of F_ell^n, as RREF row tuples (the zero space is ())."""
    n = len(A)
    A = [[x % ell for x in row] for row in A]
    cyclic = set()
    for v in _vectors(n, ell):
        if not any(v):
            continue
        span = [list(v)]
        key = _rref_mod(span, ell)
        while True:
            w = [sum(a * b for a, b in zip(row, span[-1])) % ell for row in A]
            span.append(w)
            new = _rref_mod(span, ell)
            if len(new) == len(key):
                break
            key = new
        cyclic.add(key)
    found = {()}
    frontier = [()]
    while frontier:
        nxt = []
        for W in frontier:
            for Z in cyclic:
                S = _rref_mod(list(W) + list(Z), ell) if W else Z
                if S not in found:
                    found.add(S)
                    nxt.append(S)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), s))


# -- lattices ---------------------------------------------------------------------

@dataclass(frozen=True)
class StableLattice:
    """Finite-index C-stable sublattice of Z^n; ``basis`` columns span it (HNF)."""
    basis: tuple
    index: int
    exponents: tuple

    def columns(self):
        return [list(r) for r in self.basis]


def _signature(M, ell, factors):
    """Isomorphism invariants of the Z_ell[C]-lattice on which C acts by M.

    l-adic Smith exponents of p(M) for a family of polynomials p.  Singular
    p(M) contribute their rank deficiency as a marker.
    """
    n = len(M)
    I = intmat.identity(n)
    polys = []
    span = ell ** 2
    for a in range(span):
        polys.append([[M[i][j] - a * I[i][j] for j in range(n)] for i in range(n)])
    for a in range(ell):
        Ma = [[M[i][j] - a * I[i][j] for j in range(n)] for i in range(n)]
        for b in range(a, span):
            Mb = [[M[i][j] - b * I[i][j] for j in range(n)] for i in range(n)]
            polys.append(intmat.matmul(Ma, Mb))
    for g, _ in factors:
        G = _matrix_poly(g, M)
        polys.append(G)
        for a in range(ell):
            Ma = [[M[i][j] - a * I[i][j] for j in range(n)] for i in range(n)]
            polys.append(intmat.matmul(G, Ma))
    sig = []
    for A in polys:
        diag = intmat.smith_diagonal(A)
        sig.append(tuple(sorted(valuation(d, ell) if d else -1 for d in diag)))
    return tuple(sig)


def _matrix_poly(g, M):
    n = len(M)
    acc = [[0] * n for _ in range(n)]
    for c in reversed(g.coeffs):
        acc = intmat.matmul(acc, M)
        for i in range(n):
            acc[i][i] += c
    return acc


def default_depth(f, ell):
    return valuation(evaluate(f, 1), ell) + 2


def enumerate_stable_lattices(f, ell, depth=None, dedupe="iso", max_lattices=MAX_LATTICES):
    """Map each realised exponent vector to a witness C-stable lattice.

    Lattices are explored in order of increasing index, up to index
    ell**depth.  With ``dedupe="iso"`` a lattice is expanded only if no
    already expanded lattice has the same isomorphism signature; with
    ``dedupe="hnf"`` every distinct lattice is expanded.
    """
    if evaluate(f, 1) == 0:
        raise ValueError("f(1) must be nonzero")
    if depth is None:
        depth = default_depth(f, ell)
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if depth > MAX_DEPTH:
        raise OracleCapExceeded(f"depth {depth} exceeds the cap {MAX_DEPTH}")
    C = frobenius_matrix(f)
    n = len(C)
    factors = squarefree_decomposition(f)
    bound = ell ** depth
    I = intmat.identity(n)

    def record(Bc):
        M = intmat.conjugate_by_basis(Bc, C)
        E = intmat.sub(I, M)
        return M, cokernel_exponents(E, ell)

    start = intmat.identity(n)
    start_key = intmat.lattice_key(intmat.transpose(start))
    heap = [(1, start_key, start)]
    seen = {start_key}
    expanded_sigs = set()
    shapes = {}
    subspace_cache = {}
    visited = 0
    while heap:
        index, key, Bc = heapq.heappop(heap)
        visited += 1
        if visited > max_lattices:
            raise OracleCapExceeded(f"more than {max_lattices} lattices visited")
        M, exps = record(Bc)
        if exps not in shapes:
            shapes[exps] = StableLattice(tuple(tuple(r) for r in Bc), index, exps)
        if dedupe == "iso":
            sig = _signature(M, ell, factors)
            if sig in expanded_sigs:
                continue
            expanded_sigs.add(sig)
        if index * ell > bound:
            continue
        Mmod = tuple(tuple(x % ell for x in row) for row in M)
        subs = subspace_cache.get(Mmod)
        if subs is None:
            subs = stable_subspaces(M, ell)
            subspace_cache[Mmod] = subs
        for W in subs:
            if len(W) == n:
                continue
            child_index = index * ell ** (n - len(W))
            if child_index > bound:
                continue
            gens = [list(w) for w in W] + [[ell * int(i == j) for j in range(n)] for i in range(n)]
            K = [r for r in intmat.hnf_rows(gens) if any(r)]
            child = intmat.matmul(Bc, intmat.transpose(K))
            child_key = intmat.lattice_key(intmat.transpose(child))
            if child_key in seen:
                continue
            seen.add(child_key)
            Hc = intmat.transpose([list(r) for r in child_key])
            heapq.heappush(heap, (child_index, child_key, Hc))
    return dict(sorted(shapes.items()))


def saturated_intersection(Bc, K):
    """L intersect ker(K) for L spanned by the columns of Bc.

    Returns (columns, coords): an ambient basis as columns and the same
    basis as coordinate rows in L.  Both are empty for the zero module.
    """
    KB = intmat.matmul(K, Bc)
    coords = intmat.kernel(KB)
    if not coords:
        return [], []
    return intmat.matmul(Bc, intmat.transpose(coords)), coords


def split_action(M, coords):
    """Actions of M on a saturated submodule (given by coordinate rows) and on the quotient.

    Returns (A, D): matrices of M on the submodule and on the torsion-free quotient.
    """
    n = len(M)
    s = len(coords)
    K = intmat.transpose(coords)  # n x s
    H, Wt = intmat.hnf_rows(K, transform=True)
    # saturation means W K = [I_s; 0]
    for i in range(n):
        for j in range(s):
            if H[i][j] != int(i == j):
                raise ValueError("submodule is not saturated")
    Winv = intmat.inverse_fraction(Wt)
    Winv = [[int(x) for x in row] for row in Winv]
    N = intmat.matmul(intmat.matmul(Wt, M), Winv)
    for i in range(s, n):
        for j in range(s):
            if N[i][j]:
                raise ValueError("submodule is not stable")
    A = [row[:s] for row in N[:s]]
    D = [row[s:] for row in N[s:]]
    return A, D
