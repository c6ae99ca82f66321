"""Dense integer matrices as lists of row lists.

Everything is exact.  Sizes in this package are tiny (at most 6x6), so the
algorithms favour clarity over asymptotics.
"""

from __future__ import annotations

from fractions import Fraction

from .polygons import valuation


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy(A):
    return [list(row) for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scalar(A, c):
    return [[c * a for a in row] for row in A]


def det(A):
    """Bareiss fraction-free determinant."""
    n = len(A)
    if n == 0:
        return 1
    M = copy(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inverse_fraction(A):
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [row[n:] for row in M]


def adjugate(A):
    """adj(A) with A adj(A) = det(A) I; exact integers."""
    d = det(A)
    if d == 0:
        # cofactor expansion for singular input
        n = len(A)
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [row[:j] + row[j + 1:] for k, row in enumerate(A) if k != i]
                out[j][i] = (-1) ** (i + j) * det(minor)
        return out
    inv = inverse_fraction(A)
    out = []
    for row in inv:
        new = []
        for x in row:
            y = x * d
            assert y.denominator == 1
            new.append(int(y))
        out.append(new)
    return out


def conjugate_by_basis(B, M):
    """Matrix of M acting on the lattice with basis columns B: B^-1 M B.

    Computed as adj(B) M B / det(B) with exact division; the lattice must be
    M-stable for the result to be integral.
    """
    d = det(B)
    if d == 0:
        raise ValueError("singular basis")
    N = matmul(matmul(adjugate(B), M), B)
    out = []
    for row in N:
        new = []
        for x in row:
            if x % d:
                raise ValueError("lattice is not stable under the operator")
            new.append(x // d)
        out.append(new)
    return out


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf_rows(A, transform=False):
    """Row Hermite normal form.

    Returns H (and unimodular W with W A = H when ``transform``).  Pivots are
    positive, entries above a pivot are reduced into [0, pivot), zero rows
    are kept at the bottom.
    """
    H = copy(A)
    m = len(H)
    n = len(H[0]) if m else 0
    W = identity(m) if transform else None
    row = 0
    for col in range(n):
        if row >= m:
            break
        # gcd-combine all entries below into the pivot row
        for i in range(row + 1, m):
            if H[i][col] == 0:
                continue
            a, b = H[row][col], H[i][col]
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            r1 = [x * u + y * v for u, v in zip(H[row], H[i])]
            r2 = [-bg * u + ag * v for u, v in zip(H[row], H[i])]
            H[row], H[i] = r1, r2
            if transform:
                w1 = [x * u + y * v for u, v in zip(W[row], W[i])]
                w2 = [-bg * u + ag * v for u, v in zip(W[row], W[i])]
                W[row], W[i] = w1, w2
        if H[row][col] == 0:
            continue
        if H[row][col] < 0:
            H[row] = [-u for u in H[row]]
            if transform:
                W[row] = [-u for u in W[row]]
        p = H[row][col]
        for i in range(row):
            q = H[i][col] // p
            if q:
                H[i] = [u - q * v for u, v in zip(H[i], H[row])]
                if transform:
                    W[i] = [u - q * v for u, v in zip(W[i], W[row])]
        row += 1
    return (H, W) if transform else H


def lattice_key(rows):
    """Canonical key of the lattice spanned by the given row vectors."""
    H = hnf_rows(rows)
    return tuple(tuple(r) for r in H if any(r))


def smith_diagonal(A):
    """Smith normal form diagonal d_1 | d_2 | ... (length min(m, n), zeros last)."""
    M = copy(A)
    m = len(M)
    n = len(M[0]) if m else 0
    k = min(m, n)
    for t in range(k):
        # find a nonzero entry of minimal absolute value in the trailing block
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return [abs(M[i][i]) for i in range(t)] + [0] * (k - t)
            i, j = best
            M[t], M[i] = M[i], M[t]
            for row in M:
                row[t], row[j] = row[j], row[t]
            p = M[t][t]
            done = True
            for i in range(t + 1, m):
                q = M[i][t] // p
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
                if M[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = M[t][j] // p
                if q:
                    for row in M:
                        row[j] -= q * row[t]
                if M[t][j]:
                    done = False
            if not done:
                continue
            # enforce divisibility of the remaining block
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p),
                None,
            )
            if bad is None:
                break
            M[t] = [a + b for a, b in zip(M[t], M[bad])]
    return [abs(M[i][i]) for i in range(k)]


def cokernel_exponents(M, ell):
    """Ascending ell-adic valuations of the Smith invariants of a nonsingular M."""
    diag = smith_diagonal(M)
    if any(d == 0 for d in diag) or len(diag) < len(M):
        raise ValueError("singular matrix has infinite cokernel")
    return tuple(sorted(valuation(d, ell) for d in diag))


def kernel(A):
    """Integer basis (rows) of {x : A x = 0}."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return identity(n)
    At = transpose(A)
    H, W = hnf_rows(At, transform=True)
    return [W[i] for i in range(n) if not any(H[i])]
