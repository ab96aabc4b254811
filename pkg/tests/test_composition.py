import random

import pytest

from twistcube.composition import (
    TwistedPair,
    apply_algebra_automorphism,
    beta_identities,
    change_basis,
    check_axioms,
    cube_of,
    delta_C,
    find_reduced_vector,
    k_c,
    norm_form,
    phi,
    reduced_transition,
    same_tensors,
    split_algebra,
    transport,
)
from twistcube.cube import AlgAut, Cube, Mat2, Weyl, delta_E
from twistcube.errors import AxiomViolation, NotAGoodBasisError, ValidationError
from twistcube.etale import CubicAlgebra
from twistcube.field import GF, QQ
from twistcube.verify import random_generator

from conftest import ALGEBRAS, SMALL_ALGEBRAS, algebra_id


def nondegenerate(E, rng, height=10):
    while True:
        v = Cube.random(E, rng, height)
        if delta_E(v) != 0:
            return v


def gen_matrix(g, E):
    return g.matrix(E) if isinstance(g, Weyl) else g.matrix()


def mutated(C):
    """C with the sign of the first beta component flipped."""
    return TwistedPair(C.E, C.Q, lambda v: (-C.beta(v)[0], C.beta(v)[1]))


# closed forms ---------------------------------------------------------------------


@pytest.mark.parametrize("E", ALGEBRAS, ids=algebra_id)
def test_split_algebra_closed_form(E, rng):
    C = split_algebra(E)
    for _ in range(20):
        x, y = E.random(rng), E.random(rng)
        assert C.Q((x, y)) == x * y
        assert C.beta((x, y)) == (y.sharp(), x.sharp())
        assert C.norm_form((x, y)) == x.norm() + y.norm()
        assert C.delta_C((x, y)) == (x.norm() - y.norm()) ** 2


def test_norm_form_example(split_q):
    C = split_algebra(split_q)
    assert norm_form(C, (split_q(1, 2, 3), split_q(1, 1, 1))) == 7
    assert norm_form(C, (split_q.zero, split_q.zero)) == 0


@pytest.mark.parametrize("E", ALGEBRAS, ids=algebra_id)
def test_reduced_closed_form(E, rng):
    for _ in range(20):
        f, b = E.random(rng), E.field.random(rng)
        C = phi(Cube(E.field.one, E.zero, f, b))
        x, y = E.random(rng), E.random(rng)
        assert C.Q((x, y)) == -(f * x * x) - x * y * b + f.sharp() * y * y
        assert C.beta((x, y)) == (-(y.sharp() * b) - (f * x).cross(y), x.sharp() + f * y.sharp())


@pytest.mark.parametrize("E", ALGEBRAS, ids=algebra_id)
def test_beta_on_standard_basis(E, rng):
    for _ in range(20):
        v = Cube.random(E, rng)
        C = phi(v)
        assert C.beta((E.one, E.zero)) == (-v.e, E.scalar(v.a))
        assert C.beta((E.zero, E.one)) == (E.scalar(-v.b), v.f)


@pytest.mark.parametrize("E", ALGEBRAS, ids=algebra_id)
def test_phi_cube_of_round_trip(E, rng):
    for _ in range(30):
        v = Cube.random(E, rng)
        assert cube_of(phi(v)) == v
        generic = TwistedPair(E, phi(v).Q, phi(v).beta)
        assert cube_of(generic) == v


def test_distinguished_cube_gives_split_algebra(split_q):
    assert cube_of(split_algebra(split_q)) == Cube.distinguished(split_q)


@pytest.mark.parametrize("E", SMALL_ALGEBRAS, ids=algebra_id)
def test_direct_polarization_matches_generic(E, rng):
    for _ in range(20):
        C = phi(nondegenerate(E, rng))
        generic = TwistedPair(E, C.Q, C.beta)
        v, w = C.random_vector(rng), C.random_vector(rng)
        assert C.bQ(v, w) == generic.bQ(v, w)
        assert C.norm_form(v) == generic.norm_form(v)


def test_middle_coefficient_need_not_be_scalar(split_q):
    # a valid algebra whose xy-coefficient -ab - 2ef + Tr(ef) is not in F
    v = Cube.make(split_q, 0, (1, 0, 0), (1, 0, 0), 0)
    C = phi(v)
    assert delta_E(v) == 1
    assert C.q_coeffs()[1] == split_q(-1, 1, 1)
    assert not C.middle_is_scalar()
    assert check_axioms(C, 50, random.Random(0)).ok


# axioms ----------------------------------------------------------------------------


@pytest.mark.parametrize("E", SMALL_ALGEBRAS, ids=algebra_id)
def test_axioms_hold_for_nondegenerate_cubes(E, rng):
    for _ in range(10):
        assert check_axioms(phi(nondegenerate(E, rng)), 20, rng).ok


def test_axiom_example(split_q):
    C = split_algebra(split_q)
    lam = split_q(2, 3, 5)
    v = (split_q.one, split_q.zero)
    assert C.beta((lam * v[0], lam * v[1])) == (lam.sharp() * C.beta(v)[0], lam.sharp() * C.beta(v)[1])


@pytest.mark.parametrize("E", SMALL_ALGEBRAS, ids=algebra_id)
def test_mutated_beta_fails_with_witness(E, rng):
    report = check_axioms(mutated(phi(nondegenerate(E, rng))), 20, rng)
    assert not report.ok
    assert report.axiom is not None
    assert set(report.witness) == {"v", "lambda"}


def test_norm_form_rejects_nonscalar(split_q):
    C = split_algebra(split_q)
    broken = TwistedPair(split_q, C.Q, lambda v: (v[0], v[1]))
    with pytest.raises(AxiomViolation):
        broken.norm_form((split_q(1, 2, 3), split_q(0, 1, 0)))


# identities, reduced vectors -----------------------------------------------------------


def test_beta_identities_example(split_q):
    C = split_algebra(split_q)
    v = (split_q.one, split_q.one)
    assert beta_identities(C, v, split_q(1, 2, 3), split_q(4, 5, 6))


@pytest.mark.parametrize("E", SMALL_ALGEBRAS, ids=algebra_id)
def test_beta_identities_random(E, rng):
    for _ in range(20):
        C = phi(nondegenerate(E, rng))
        v = C.random_vector(rng)
        if C.delta_C(v) == 0:
            continue
        assert beta_identities(C, v, E.random(rng), E.random(rng))


def test_split_delta_c_example(split_q):
    C = split_algebra(split_q)
    v = (split_q.one, split_q.zero)
    assert C.Q(v) == split_q.zero
    assert C.norm_form(v) == 1
    assert delta_C(C, v) == 1
    assert k_c(C).rep == 1


@pytest.mark.parametrize("E", SMALL_ALGEBRAS, ids=algebra_id)
def test_k_c_is_delta_class(E, rng):
    for _ in range(10):
        v = nondegenerate(E, rng)
        C = phi(v)
        w = find_reduced_vector(C)
        assert delta_C(C, w) != 0
        assert k_c(C) == E.field.square_class(delta_E(v))


@pytest.mark.parametrize("E", SMALL_ALGEBRAS, ids=algebra_id)
def test_k_c_independent_of_witness(E, rng):
    C = phi(nondegenerate(E, rng))
    classes = set()
    for _ in range(40):
        v = C.random_vector(rng)
        d = C.delta_C(v)
        if d != 0:
            classes.add(E.field.square_class(d))
    assert len(classes) == 1


# basis changes --------------------------------------------------------------------------


@pytest.mark.parametrize("E", ALGEBRAS, ids=algebra_id)
def test_equivariance_under_generators(E, rng):
    for _ in range(15):
        v = Cube.random(E, rng)
        g = random_generator(E, rng)
        h = gen_matrix(g, E).transpose().inverse()
        assert same_tensors(phi(g.apply(v)), transport(phi(v), h))
        assert change_basis(phi(v), h) == phi(g.apply(v))


@pytest.mark.parametrize("E", [CubicAlgebra.split(GF(7)), CubicAlgebra.split(QQ), CubicAlgebra.quad_pair(GF(7), 3)], ids=algebra_id)
def test_equivariance_under_automorphisms(E, rng):
    for sigma in E.automorphisms():
        v = Cube.random(E, rng)
        moved = apply_algebra_automorphism(phi(v), sigma)
        assert same_tensors(phi(AlgAut(tuple(map(tuple, sigma))).apply(v)), moved)


def test_change_basis_identity(split_q, rng):
    C = phi(nondegenerate(split_q, rng))
    assert change_basis(C, Mat2.identity(split_q)) == C


def test_weyl_on_split_algebra(split_q):
    C = split_algebra(split_q)
    assert change_basis(C, Weyl().matrix(split_q)) == C


def test_change_basis_rejects_singular(split_q):
    C = split_algebra(split_q)
    with pytest.raises(ValidationError):
        change_basis(C, Mat2(split_q(1, 0, 1), split_q.zero, split_q.zero, split_q.one))


def test_change_basis_rejects_bad_shape(split_q):
    # a basis change outside GL2(E)^0: det is not a scalar
    C = split_algebra(split_q)
    g = Mat2(split_q(1, 2, 3), split_q.zero, split_q.zero, split_q.one)
    with pytest.raises(NotAGoodBasisError):
        change_basis(C, g)


def test_reduced_transition_det_is_scalar_over_f5():
    rng = random.Random(11)
    E = CubicAlgebra.split(GF(5))
    checked = 0
    while checked < 30:
        C = phi(nondegenerate(E, rng))
        v, v2 = C.random_vector(rng), C.random_vector(rng)
        if C.delta_C(v) == 0 or C.delta_C(v2) == 0:
            continue
        t = reduced_transition(C, v, v2)
        assert t.det_is_scalar
        assert t.det == E.scalar(t.det_formula)
        checked += 1


@pytest.mark.parametrize("E", SMALL_ALGEBRAS, ids=algebra_id)
def test_reduced_basis_gives_reduced_cube(E, rng):
    for _ in range(5):
        v = nondegenerate(E, rng)
        C = phi(v)
        w = find_reduced_vector(C)
        bw = C.beta(w)
        # in the basis {w, beta(w)} the algebra is the reduced cube (1, 0, -Q(w), -N_C(w))
        h = Mat2(w[0], bw[0], w[1], bw[1]).inverse()
        moved = change_basis(C, h)
        assert moved.params == (E.field.one, E.zero, -C.Q(w), -C.norm_form(w))
        assert delta_E(cube_of(moved)) == C.delta_C(w)
