import itertools
import random
from math import gcd

import pytest

from avgroups.abgroups import GroupShape
from avgroups.curves import (
    EllipticCurveModel,
    FiniteField,
    Genus2Curve,
    Jacobian,
    SingularCurve,
    UnsupportedCurve,
    ec_scan,
    field,
    group_from_orders,
    jacobian_group,
    weil_from_counts,
)

from _support import P


@pytest.mark.parametrize("p,modulus", [(2, (1, 1)), (3, (0, 1)), (5, (0, 2)), (7, (0, 1))])
def test_quadratic_modulus(p, modulus):
    F = FiniteField(p, 2)
    assert F.modulus == modulus
    a, b = modulus
    assert all((x * x + a * x + b) % p for x in range(p))


@pytest.mark.parametrize("q", [4, 9, 25])
def test_field_axioms(q):
    F = field(q)
    rng = random.Random(q)
    for _ in range(300):
        x, y, z = (rng.randrange(q) for _ in range(3))
        assert F.mul[x][F.mul[y][z]] == F.mul[F.mul[x][y]][z]
        assert F.mul[x][F.add[y][z]] == F.add[F.mul[x][y]][F.mul[x][z]]
    for x in range(1, q):
        assert F.mul[x][F.inv[x]] == 1
    assert sum(F.nroots) == q
    # Frobenius has order 2 on F_{p^2} and fixes exactly F_p
    fixed = [x for x in range(q) if F.pow(x, F.p) == x]
    assert fixed == list(range(F.p))


def test_field_rejects_bad_sizes():
    with pytest.raises(ValueError):
        field(8)
    with pytest.raises(ValueError):
        FiniteField(6)


def test_elliptic_examples():
    E = EllipticCurveModel(2, 1, 1, 0, 0, 1)
    assert E.count() == 2 and E.group() == GroupShape((2,))
    E = EllipticCurveModel(2, 0, 0, 1, 0, 0)
    assert E.count() == 3 and E.group() == GroupShape((3,))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_discriminant_matches_singular_point_scan(q):
    F = field(q)
    for coeffs in itertools.product(range(q), repeat=5):
        E = EllipticCurveModel(q, *coeffs)
        assert E.is_nonsingular() == (not E.singular_points()), coeffs


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_ec_scan_invariants(q):
    out = ec_scan(q)
    assert sum(c for *_, c in out) == q ** 4 * (q - 1)
    for W, G, _ in out:
        assert W.g == 1 and W.q == q
        a = -W.f[1]
        assert a * a <= 4 * q
        assert G.order == W.order


def test_ec_scan_rejects_unsupported_q():
    with pytest.raises(ValueError):
        ec_scan(11)


def test_group_from_orders():
    # Z/2 + Z/4
    orders = [1, 2, 2, 2, 4, 4, 4, 4]
    assert group_from_orders(orders) == GroupShape((2, 4))
    assert group_from_orders([1, 2, 2, 2]) == GroupShape((2, 2))
    cyc = [12 // gcd(12, k) for k in range(12)]
    assert group_from_orders(cyc) == GroupShape((12,))
    with pytest.raises(ValueError):
        group_from_orders([1, 2, 3])


def test_genus2_example():
    C = Genus2Curve(3, (1, 0, 0, 0, 0, 1))
    assert (C.count_points(1), C.count_points(2)) == (4, 10)
    W, G = jacobian_group(C)
    assert W.f == P(9, 0, 0, 0, 1)
    assert G == GroupShape((10,))


def test_weil_from_counts_examples():
    assert weil_from_counts(3, 4, 10) == P(9, 0, 0, 0, 1)
    assert weil_from_counts(3, 5, 9) == P(9, 3, 0, 1, 1)
    assert weil_from_counts(3, 4, 10) == weil_from_counts(3, 3 + 1, 9 + 1)
    with pytest.raises(ValueError):
        weil_from_counts(3, 4, 11)


def test_genus2_errors():
    with pytest.raises(SingularCurve):
        jacobian_group(Genus2Curve(3, (0, 0, 0, 0, 0, 1)))
    with pytest.raises(UnsupportedCurve):
        Genus2Curve(9, (1, 0, 0, 0, 0, 1))
    with pytest.raises(UnsupportedCurve):
        Genus2Curve(3, (1, 0, 0, 1))


def test_sextic_models():
    # (x^2 + 1)(x^2 + x + 2)(x^2 + 2x + 2) over F_3 has no rational root
    C = Genus2Curve(3, (1, 0, 1, 0, 1, 0, 1))
    assert C.is_squarefree()
    with pytest.raises(UnsupportedCurve):
        jacobian_group(C)
    # x(x^5 + 2x + 1): a rational Weierstrass point at 0
    C = Genus2Curve(5, (0, 1, 2, 0, 0, 0, 1))
    W, G = jacobian_group(C)
    assert G.order == W.order


@pytest.mark.parametrize("lc,infinity", [(1, 2), (4, 2), (2, 0), (3, 0)])
def test_sextic_points_at_infinity(lc, infinity):
    q = 5
    f = (1, 1, 0, 0, 0, 0, lc)
    affine = sum(1 for x in range(q) for y in range(q)
                 if (y * y - sum(c * x ** i for i, c in enumerate(f))) % q == 0)
    assert Genus2Curve(q, f).count_points(1) == affine + infinity


def _sample_jacobians():
    out = []
    rng = random.Random(8)
    for q in (3, 5, 7):
        while len([c for c in out if c.q == q]) < 3:
            f = tuple(rng.randrange(q) for _ in range(5)) + (1,)
            C = Genus2Curve(q, f)
            if C.is_squarefree():
                out.append(C)
    return out


@pytest.mark.parametrize("C", _sample_jacobians(), ids=lambda C: f"q{C.q}-{C.f}")
def test_cantor_group_laws(C):
    J = Jacobian(C.F, C.f)
    els = J.elements()
    assert all(J.is_valid(D) for D in els)
    W, G = jacobian_group(C)
    assert len(els) == W.order
    rng = random.Random(len(els))
    O = J.identity
    for _ in range(200):
        a, b, c = (rng.choice(els) for _ in range(3))
        assert J.add(a, b) == J.add(b, a)
        assert J.add(J.add(a, b), c) == J.add(a, J.add(b, c))
    for D in els:
        assert J.add(D, O) == D
        assert J.add(D, J.negate(D)) == O
        # Frobenius annihilation: f_J(1) kills every point
        assert J.multiply(D, W.order) == O
