import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from twistcube.errors import NotInvertibleError, ValidationError
from twistcube.etale import CubicAlgebra, check_curious_identity
from twistcube.field import GF, QQ, QuadExt

from conftest import ALGEBRAS, algebra_id


# independent models ---------------------------------------------------------


def quad_pair_model(E, x):
    """(x0, y + z sqrt d) in F x F(sqrt d) for quad_pair coordinates (x0, y, z)."""
    K = QuadExt(E.field, E.shape[1])
    c = x.coords
    return c[0], K(c[1], c[2])


def cubic_norm_by_resultant(E, x):
    t = sympy.Symbol("t")
    _, c0, c1, c2 = E.shape
    f = t**3 + sympy.Rational(c2) * t**2 + sympy.Rational(c1) * t + sympy.Rational(c0)
    g = sum(sympy.Rational(c) * t**i for i, c in enumerate(x.coords))
    return Fraction(str(sympy.resultant(f, g, t)))


def rat_coords(rng, height=20):
    return [Fraction(rng.randint(-height, height), rng.randint(1, 5)) for _ in range(3)]


# worked examples ---------------------------------------------------------------


def test_split_invariants(split_q):
    x = split_q(2, 3, 5)
    assert x.char_invariants() == (10, 31, 30)
    assert (x.trace(), x.norm()) == (10, 30)
    assert x.sharp() == split_q(15, 10, 6)


def test_unit_invariants():
    for E in ALGEBRAS:
        assert E.one.char_invariants() == (3, 3, 1)
        assert E.one.sharp() == E.one


def test_cube_root_of_two():
    E = CubicAlgebra.cubic_poly(QQ, -2, 0, 0)
    theta = E(0, 1, 0)
    assert theta.char_invariants() == (0, 0, 2)
    assert theta.sharp() == theta * theta
    assert theta * theta * theta == E.scalar(2)


def test_split_cross(split_q):
    assert split_q(1, 0, 0).cross(split_q(0, 1, 0)) == split_q(0, 0, 1)


@pytest.mark.parametrize("f, y", [((1, 2, 3), (4, 5, 6)), ((1, 2, 3), (0, 0, 0)), ((7, -1, 2), (1, 1, 1))])
def test_curious_identity_examples(split_q, f, y):
    assert check_curious_identity(split_q(f), split_q(y))


def test_curious_identity_cube_root_of_two():
    E = CubicAlgebra.cubic_poly(QQ, -2, 0, 0)
    theta = E(0, 1, 0)
    assert check_curious_identity(theta, theta * theta)
    assert check_curious_identity(theta * theta, theta)


# oracles ------------------------------------------------------------------------


def test_split_matches_componentwise(split_q, rng):
    for _ in range(100):
        a, b = rat_coords(rng), rat_coords(rng)
        x, y = split_q(a), split_q(b)
        assert (x * y).coords == tuple(p * q for p, q in zip(a, b))
        assert x.norm() == a[0] * a[1] * a[2]
        assert x.trace() == sum(a)
        assert x.sharp().coords == (a[1] * a[2], a[2] * a[0], a[0] * a[1])


@pytest.mark.parametrize("F, d", [(QQ, 5), (QQ, -1), (GF(7), 3), (GF(11), 2)])
def test_quad_pair_matches_product_model(F, d, rng):
    E = CubicAlgebra.quad_pair(F, d)
    for _ in range(100):
        x, y = E.random(rng, 20), E.random(rng, 20)
        (x0, xk), (y0, yk) = quad_pair_model(E, x), quad_pair_model(E, y)
        p0, pk = quad_pair_model(E, x * y)
        assert p0 == x0 * y0 and pk == xk * yk
        assert x.trace() == x0 + xk.trace()
        assert x.norm() == x0 * xk.norm()
        s0, sk = quad_pair_model(E, x.sharp())
        assert s0 == xk.norm() and sk == x0 * xk.conj()


@pytest.mark.parametrize("coeffs", [(-2, 0, 0), (-1, -1, 0), (1, 2, 3), (5, 0, -7)])
def test_cubic_poly_norm_is_resultant(coeffs, rng):
    E = CubicAlgebra.cubic_poly(QQ, *coeffs)
    for _ in range(30):
        x = E(rat_coords(rng))
        assert x.norm() == cubic_norm_by_resultant(E, x)
        assert x.char_invariants()[2] == x.norm()


@pytest.mark.parametrize("E", ALGEBRAS, ids=algebra_id)
def test_trace_norm_sharp_agree_with_multiplication_matrix(E, rng):
    for _ in range(50):
        x = E.random(rng, 30)
        t, s, n = x.char_invariants()
        assert (x.trace(), x.norm()) == (t, n)
        # Cayley-Hamilton: x^3 - T x^2 + S x - N = 0, and x# = x^2 - T x + S
        assert x * x * x - x * x * t + x * s - E.scalar(n) == E.zero
        assert x.sharp() == x * x - x * t + E.scalar(s)


# properties ---------------------------------------------------------------------


@pytest.mark.parametrize("E", ALGEBRAS, ids=algebra_id)
def test_algebra_axioms(E, rng):
    for _ in range(40):
        x, y, z = E.random(rng), E.random(rng), E.random(rng)
        c = E.field.random(rng)
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert x * E.one == x
        assert (x * y).norm() == x.norm() * y.norm()
        assert (x + y * c).trace() == x.trace() + y.trace() * c
        assert x.cross(y) == (x + y).sharp() - x.sharp() - y.sharp()
        assert x * x.sharp() == E.scalar(x.norm())
        assert x.sharp().sharp() == x * x.norm()
        assert check_curious_identity(x, y)


@pytest.mark.parametrize("E", ALGEBRAS, ids=algebra_id)
def test_inverse(E, rng):
    for _ in range(30):
        x = E.random(rng)
        if x.norm() == 0:
            with pytest.raises(NotInvertibleError):
                x.inverse()
        else:
            assert x * x.inverse() == E.one


@pytest.mark.parametrize(
    "E, rep",
    [
        (CubicAlgebra.split(QQ), 1),
        (CubicAlgebra.quad_pair(QQ, 5), 5),
        (CubicAlgebra.quad_pair(QQ, 20), 5),
        (CubicAlgebra.cubic_poly(QQ, -2, 0, 0), -3),
        (CubicAlgebra.cubic_poly(QQ, -1, -1, 0), -23),
        (CubicAlgebra.split(GF(7)), 1),
    ],
    ids=algebra_id,
)
def test_discriminant_classes(E, rep):
    assert E.discriminant_algebra().rep == rep


@pytest.mark.parametrize("p", [5, 7, 11])
def test_discriminant_of_cubic_over_fp(p):
    """Irreducible cubics over F_p are cyclic, so the discriminant is a square."""
    for c0, c1 in itertools.product(range(p), repeat=2):
        if all((t**3 + c1 * t + c0) % p for t in range(p)):
            E = CubicAlgebra.cubic_poly(GF(p), c0, c1, 0)
            assert E.discriminant_algebra().rep == 1
            assert len(E.automorphisms()) == 3


@pytest.mark.parametrize(
    "E, count",
    [
        (CubicAlgebra.split(QQ), 6),
        (CubicAlgebra.quad_pair(QQ, 5), 2),
        (CubicAlgebra.cubic_poly(QQ, -1, -1, 0), 1),
        (CubicAlgebra.split(GF(5)), 6),
        (CubicAlgebra.quad_pair(GF(7), 3), 2),
    ],
    ids=algebra_id,
)
def test_automorphism_counts(E, count, rng):
    auts = E.automorphisms()
    assert len(auts) == count
    for m in auts:
        assert E.is_automorphism(m)
        for _ in range(10):
            x, y = E.random(rng), E.random(rng)
            assert E.apply_matrix(m, x * y) == E.apply_matrix(m, x) * E.apply_matrix(m, y)
            assert E.apply_matrix(m, x).norm() == x.norm()


def test_non_automorphism_rejected(split_q):
    m = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    assert not split_q.is_automorphism(m)


def test_reducible_separable_cubic_accepted():
    E = CubicAlgebra.cubic_poly(QQ, -1, 0, 0)  # t^3 - 1 = (t - 1)(t^2 + t + 1)
    assert E.discriminant_algebra().rep == -3


@pytest.mark.parametrize("F, coeffs", [(QQ, (0, 0, 0)), (GF(7), (0, 0, 0)), (QQ, (0, 0, -1))])
def test_inseparable_cubic_rejected(F, coeffs):
    with pytest.raises(ValidationError):
        CubicAlgebra.cubic_poly(F, *coeffs)


def test_quad_pair_zero_rejected():
    with pytest.raises(ValidationError):
        CubicAlgebra.quad_pair(QQ, 0)


def test_wrong_length_rejected(split_q):
    with pytest.raises(ValidationError):
        split_q(1, 2)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=3, max_size=3), st.lists(st.integers(-30, 30), min_size=3, max_size=3))
def test_norm_class_unchanged_by_square_factor(xs, ys):
    E = CubicAlgebra.cubic_poly(QQ, -2, 0, 0)
    x, y = E(xs), E(ys)
    if x.norm() == 0 or y.norm() == 0:
        return
    assert QQ.square_class((x * y * y).norm()) == QQ.square_class(x.norm())
