import random

import pytest

from avgroups import intmat
from avgroups.exactpoly import IntPolynomial, evaluate
from avgroups.polygons import valuation
from avgroups.tatemod import (
    OracleCapExceeded,
    PolyMatrix,
    cokernel_exponents,
    companion_matrix,
    default_depth,
    enumerate_stable_lattices,
    frobenius_matrix,
    saturated_intersection,
    split_action,
    stable_subspaces,
    verify_matrix_factorization,
)

from _support import P


def char_poly(C):
    n = len(C)
    t = P(0, 1)
    rows = [[(t if i == j else IntPolynomial()) - IntPolynomial.constant(C[i][j]) for j in range(n)]
            for i in range(n)]
    return PolyMatrix(rows).det()


def test_companion_examples():
    assert companion_matrix(P(2, -1, 1)) == [[0, -2], [1, 1]]
    assert companion_matrix(P(-3, 1)) == [[3]]
    assert char_poly(companion_matrix(P(9, 0, 0, 0, 1))) == P(9, 0, 0, 0, 1)
    with pytest.raises(ValueError):
        companion_matrix(P(1, 2))


def test_frobenius_matrix_is_semisimple_block_form():
    f = P(4, -1, 1) * P(-2, 1) ** 2
    C = frobenius_matrix(f)
    assert char_poly(C) == f
    # minimal polynomial is the separable part
    A = intmat.matmul(intmat.sub(intmat.matmul(C, C), intmat.sub(C, intmat.scalar(intmat.identity(4), 4))),
                      intmat.sub(C, intmat.scalar(intmat.identity(4), 2)))
    assert all(x == 0 for row in A for x in row)


def test_cokernel_examples():
    C = companion_matrix(P(2, -1, 1))
    assert cokernel_exponents(intmat.sub(intmat.identity(2), C), 2) == (0, 1)
    assert cokernel_exponents(intmat.identity(3), 5) == (0, 0, 0)
    assert cokernel_exponents([[4, 0], [0, 6]], 2) == (1, 2)
    with pytest.raises(ValueError):
        cokernel_exponents([[1, 2], [2, 4]], 2)


def test_verify_matrix_factorization_examples():
    f = P(2, -1, 1)
    assert verify_matrix_factorization(PolyMatrix([[f]]), PolyMatrix([[1]]), f, f, 2, (1,))
    assert not verify_matrix_factorization(PolyMatrix([[f]]), PolyMatrix([[P(0, 1)]]), f, f, 2, (1,))
    p = P(4, -1, 1)
    X = PolyMatrix.diagonal([p, p])
    Y = PolyMatrix.diagonal([P(1), P(1)])
    m = valuation(evaluate(p, 1), 2)
    assert verify_matrix_factorization(X, Y, p * p, p, 2, (m, m))
    with pytest.raises(ValueError):
        verify_matrix_factorization(X, Y, p * p, p, 2, (m,))


def test_swapped_factorization_dualizes():
    # (X, Y) -> (Y, X) sends exponents m_i to m - m_i
    p = P(4, -1, 1)
    X = PolyMatrix([[p, IntPolynomial()], [IntPolynomial(), P(1)]])
    Y = PolyMatrix([[P(1), IntPolynomial()], [IntPolynomial(), p]])
    assert verify_matrix_factorization(X, Y, p, p, 2, (0, 2))
    assert verify_matrix_factorization(Y, X, p, p, 2, (0, 2))


def test_oracle_examples():
    assert set(enumerate_stable_lattices(P(4, -1, 1), 2, depth=4)) == {(0, 2)}
    assert set(enumerate_stable_lattices(P(2, -1, 1), 2, depth=3)) == {(0, 1)}
    shapes = set(enumerate_stable_lattices(P(4, -1, 1) ** 2, 2, depth=6))
    assert (0, 0, 2, 2) in shapes and (0, 1, 1, 2) not in shapes


def test_oracle_witnesses_are_stable_and_consistent():
    for f, ell in ((P(4, -1, 1) ** 2, 2), (P(2, 1) ** 4, 3), (P(9, 0, 0, 0, 1), 2)):
        C = frobenius_matrix(f)
        n = len(C)
        for exps, lat in enumerate_stable_lattices(f, ell).items():
            Bc = lat.columns()
            M = intmat.conjugate_by_basis(Bc, C)
            assert abs(intmat.det(Bc)) == lat.index
            assert sum(exps) == valuation(evaluate(f, 1), ell)
            assert abs(intmat.det(intmat.sub(intmat.identity(n), M))) == abs(evaluate(f, 1))
            assert tuple(tuple(r) for r in intmat.hnf_rows(intmat.transpose(Bc))) == intmat.lattice_key(
                intmat.transpose(Bc))


@pytest.mark.parametrize("f,ell,depth", [
    (P(4, -1, 1) ** 2, 2, 5),
    (P(2, 1, 1) ** 2, 2, 4),
    (P(2, 1) ** 4, 3, 3),
    (P(4, -1, 1) * P(-2, 1) ** 2, 2, 4),
    (P(5, -2, 1) ** 2, 2, 5),
])
def test_isomorphism_pruning_matches_exhaustive(f, ell, depth):
    iso = set(enumerate_stable_lattices(f, ell, depth=depth, dedupe="iso"))
    full = set(enumerate_stable_lattices(f, ell, depth=depth, dedupe="hnf"))
    assert iso == full


def test_oracle_caps():
    with pytest.raises(OracleCapExceeded):
        enumerate_stable_lattices(P(4, -1, 1), 2, depth=99)
    with pytest.raises(OracleCapExceeded):
        enumerate_stable_lattices(P(2, 1) ** 4, 3, depth=6, dedupe="hnf", max_lattices=50)
    with pytest.raises(ValueError):
        enumerate_stable_lattices(P(-1, 1), 2)
    assert default_depth(P(4, -1, 1) ** 2, 2) == 6


def test_stable_subspaces_scalar_action():
    # every subspace of F_2^2 is stable under the identity: 0, three lines, whole space
    subs = stable_subspaces(intmat.identity(2), 2)
    assert len(subs) == 5
    # an irreducible action has only the trivial subspaces
    assert len(stable_subspaces(companion_matrix(P(1, 1, 1)), 2)) == 2


def test_saturated_intersection_and_split():
    f = P(4, -1, 1) * P(-2, 1) ** 2
    C = frobenius_matrix(f)
    # kernel of C - 2 inside Z^4
    K = intmat.sub(C, intmat.scalar(intmat.identity(4), 2))
    cols, coords = saturated_intersection(intmat.identity(4), K)
    assert len(coords) == 2
    A, D = split_action(C, coords)
    assert A == [[2, 0], [0, 2]]
    assert char_poly(D) == P(4, -1, 1)
    assert saturated_intersection(intmat.identity(2), intmat.identity(2)) == ([], [])
    with pytest.raises(ValueError):
        split_action(C, [[2, 0, 0, 0]])


def test_hnf_and_kernel():
    rng = random.Random(2)
    for _ in range(200):
        A = [[rng.randint(-6, 6) for _ in range(4)] for _ in range(3)]
        H, Wt = intmat.hnf_rows(A, transform=True)
        assert intmat.matmul(Wt, A) == H
        assert abs(intmat.det(Wt)) == 1
        for row in intmat.kernel(A):
            assert intmat.matvec(A, row) == [0, 0, 0]


def test_smith_divisibility_chain():
    rng = random.Random(4)
    for _ in range(300):
        A = [[rng.randint(-20, 20) for _ in range(3)] for _ in range(3)]
        d = intmat.smith_diagonal(A)
        nz = [x for x in d if x]
        assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
        assert abs(intmat.det(A)) == (0 if 0 in d else abs(d[0] * d[1] * d[2]))
