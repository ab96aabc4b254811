"""Rank-2 twisted composition algebras on C = E + E.

An algebra is a pair (Q, beta): Q is an E-valued quadratic form and beta a
quadratic map on C.  :class:`TwistedPair` holds arbitrary callables;
:class:`CompAlg2` is the closed form attached to a cube (a, e, f, b), which is
the canonical representation (every algebra has a basis putting it in this
form).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

from .cube import Cube, Mat2
from .errors import AxiomViolation, NotAGoodBasisError, NotInvertibleError, SearchExhausted, ValidationError
from .etale import CubicAlgebra, CubicElem, solve_linear
from .field import QuadElem, QuadExt


def vadd(v, w):
    return (v[0] + w[0], v[1] + w[1])


def vsub(v, w):
    return (v[0] - w[0], v[1] - w[1])


def vscale(lam, v):
    return (lam * v[0], lam * v[1])


class TwistedPair:
    """(Q, beta) on E^2 given by callables."""

    def __init__(self, E: CubicAlgebra, Q: Callable, beta: Callable):
        self.E = E
        self._Q = Q
        self._beta = beta

    def Q(self, v) -> CubicElem:
        return self._Q(v)

    def beta(self, v):
        return self._beta(v)

    def bQ(self, v, w) -> CubicElem:
        return self.Q(vadd(v, w)) - self.Q(v) - self.Q(w)

    def norm_form(self, v, bv=None):
        """N_C(v) = b_Q(v, beta(v)) as an F-scalar; ``bv`` may pass a precomputed beta(v)."""
        n = self.bQ(v, self.beta(v) if bv is None else bv)
        c = self.E.scalar_part(n)
        if c is None:
            raise AxiomViolation(f"b_Q(v, beta(v)) = {n} is not a scalar for v = {v}")
        return c

    def delta_C(self, v):
        n = self.norm_form(v)
        return n * n - 4 * self.Q(v).norm()

    def random_vector(self, rng, height: int = 10):
        return (self.E.random(rng, height), self.E.random(rng, height))

    @property
    def field(self):
        return self.E.field


class CompAlg2(TwistedPair):
    """The algebra attached to the cube (a, e, f, b) in its standard basis."""

    def __init__(self, E: CubicAlgebra, a, e: CubicElem, f: CubicElem, b):
        self.E = E
        self.a = E.field(a)
        self.e = e
        self.f = f
        self.b = E.field(b)
        self._q = None

    @property
    def params(self):
        return (self.a, self.e, self.f, self.b)

    def q_coeffs(self):
        """(A, B, C) with Q(x, y) = A x^2 + B xy + C y^2."""
        if self._q is None:
            a, e, f, b = self.params
            A = e.sharp() - f * a
            B = self.E.scalar(-a * b + (e * f).trace()) - e * f * 2
            C = f.sharp() - e * b
            self._q = (A, B, C)
        return self._q

    def bQ(self, v, w) -> CubicElem:
        A, B, C = self.q_coeffs()
        (x, y), (x2, y2) = v, w
        return A * x * x2 * 2 + B * (x * y2 + x2 * y) + C * y * y2 * 2

    def middle_is_scalar(self) -> bool:
        return self.E.scalar_part(self.q_coeffs()[1]) is not None

    def Q(self, v) -> CubicElem:
        x, y = v
        A, B, C = self.q_coeffs()
        return A * x * x + B * x * y + C * y * y

    def beta(self, v):
        x, y = v
        a, e, f, b = self.params
        xs, ys = x.sharp(), y.sharp()
        return (
            -(e * xs) - ys * b - (f * x).cross(y),
            xs * a + f * ys + (e * y).cross(x),
        )

    def __eq__(self, other):
        return isinstance(other, CompAlg2) and self.E == other.E and self.params == other.params

    def __hash__(self):
        return hash((self.E, self.a, self.e, self.f, self.b))

    def __repr__(self):
        return f"CompAlg2(a={self.a}, e={self.e}, f={self.f}, b={self.b})"


def phi(v: Cube) -> CompAlg2:
    return CompAlg2(v.E, v.a, v.e, v.f, v.b)


def split_algebra(E: CubicAlgebra) -> CompAlg2:
    """C_E: Q(x, y) = xy, beta(x, y) = (y#, x#)."""
    return phi(Cube.distinguished(E))


def cube_of(C: TwistedPair) -> Cube:
    """Read the cube from beta(1, 0) = (-e, a) and beta(0, 1) = (-b, f)."""
    if isinstance(C, CompAlg2):
        return Cube(C.a, C.e, C.f, C.b)
    E = C.E
    u0, u1 = C.beta((E.one, E.zero))
    w0, w1 = C.beta((E.zero, E.one))
    a, b = E.scalar_part(u1), E.scalar_part(-w0)
    if a is None or b is None:
        raise NotAGoodBasisError("beta(1,0) or beta(0,1) has a non-scalar entry")
    return Cube(a, -u0, w1, b)


# axioms -----------------------------------------------------------------------


@dataclass
class AxiomReport:
    ok: bool
    samples: int
    axiom: Optional[str] = None
    witness: Optional[dict] = None

    def __bool__(self):
        return self.ok


def axiom_failure(C: TwistedPair, v, lam: CubicElem) -> Optional[str]:
    """Name of the first axiom failing at (v, lambda), or None."""
    bv = C.beta(v)
    if C.Q(bv) != C.Q(v).sharp():
        return "Q(beta(v)) = Q(v)#"
    if C.beta(vscale(lam, v)) != vscale(lam.sharp(), bv):
        return "beta(lambda v) = lambda# beta(v)"
    if C.E.scalar_part(C.bQ(v, bv)) is None:
        return "b_Q(v, beta(v)) in F"
    return None


def check_axioms(C: TwistedPair, samples: int, rng, height: int = 10) -> AxiomReport:
    """Evaluate the three axioms on random v and lambda; stop at the first failure."""
    for _ in range(samples):
        v = C.random_vector(rng, height)
        lam = C.E.random(rng, height)
        bad = axiom_failure(C, v, lam)
        if bad:
            return AxiomReport(False, samples, bad, {"v": v, "lambda": lam})
    return AxiomReport(True, samples)


def norm_form(C: TwistedPair, v):
    return C.norm_form(v)


def delta_C(C: TwistedPair, v):
    return C.delta_C(v)


def _f_basis(E: CubicAlgebra):
    out = []
    for i in range(3):
        out.append((E.basis[i], E.zero))
    for i in range(3):
        out.append((E.zero, E.basis[i]))
    return out


def candidate_vectors(E: CubicAlgebra, max_height: int = 3):
    """Standard basis first, then x e1 + y e2 by increasing height (exhaustive over F_p)."""
    yield (E.one, E.zero)
    yield (E.zero, E.one)
    F = E.field
    if F.characteristic:
        vals = range(F.characteristic)
        for c in sorted(itertools.product(vals, repeat=6), key=lambda c: (sum(1 for t in c if t), c)):
            if any(c):
                yield (E(c[:3]), E(c[3:]))
        return
    seen = set()
    for h in range(1, max_height + 1):
        vals = sorted(range(-h, h + 1), key=lambda t: (abs(t), t < 0))
        for c in itertools.product(vals, repeat=6):
            if max(abs(t) for t in c) != h or c in seen:
                continue
            seen.add(c)
            yield (E(c[:3]), E(c[3:]))


def find_reduced_vector(C: TwistedPair, max_height: int = 3):
    """A vector v with Delta_C(v) != 0, i.e. {v, beta(v)} is a basis."""
    for v in candidate_vectors(C.E, max_height):
        if C.delta_C(v) != 0:
            return v
    raise SearchExhausted(f"no reduced vector with coordinates of height <= {max_height}", max_height)


def k_c(C: TwistedPair, max_height: int = 3):
    """Square class of Delta_C(v) at a reduced witness v."""
    v = find_reduced_vector(C, max_height)
    return C.field.square_class(C.delta_C(v))


def beta_identities(C: TwistedPair, v, x: CubicElem, y: CubicElem) -> bool:
    """beta^2 identity at v, and the beta(xv + y beta(v)) expansion."""
    bv = C.beta(v)
    n = C.norm_form(v, bv)
    q = C.Q(v)
    ok1 = C.beta(bv) == vsub(vscale(C.E.scalar(n), v), vscale(q, bv))
    lhs = C.beta(vadd(vscale(x, v), vscale(y, bv)))
    ys = y.sharp()
    c_v = ys * n - (-(q * x)).cross(y)
    c_bv = x.sharp() - q * ys
    ok2 = lhs == vadd(vscale(c_v, v), vscale(c_bv, bv))
    return ok1 and ok2


# basis changes ------------------------------------------------------------------


def transport(C: TwistedPair, h: Mat2) -> TwistedPair:
    """(Q o h^-1, h o beta o h^-1)."""
    hi = h.inverse()
    return TwistedPair(C.E, lambda v: C.Q(hi.apply(v)), lambda v: h.apply(C.beta(hi.apply(v))))


def apply_algebra_automorphism(C: TwistedPair, sigma) -> TwistedPair:
    """(sigma o Q o sigma^-1, sigma o beta o sigma^-1), sigma acting coordinatewise."""
    E = C.E
    inv = _inverse3(E, sigma)

    def s(m, v):
        return (E.apply_matrix(m, v[0]), E.apply_matrix(m, v[1]))

    return TwistedPair(
        E,
        lambda v: E.apply_matrix(sigma, C.Q(s(inv, v))),
        lambda v: s(sigma, C.beta(s(inv, v))),
    )


def _inverse3(E, m):
    F = E.field
    cols = []
    for j in range(3):
        rhs = [F.one if i == j else F.zero for i in range(3)]
        cols.append(solve_linear(F, m, rhs))
    return [[cols[c][r] for c in range(3)] for r in range(3)]


def same_tensors(C1: TwistedPair, C2: TwistedPair) -> bool:
    """Exact equality of (Q, beta) as quadratic maps over F.

    A quadratic map on a 6-dimensional F-space is fixed by its values on the
    basis vectors and their pairwise sums (char F != 2).
    """
    pts = _f_basis(C1.E)
    probes = list(pts) + [vadd(p, q) for p, q in itertools.combinations(pts, 2)]
    for v in probes:
        if C1.Q(v) != C2.Q(v) or C1.beta(v) != C2.beta(v):
            return False
    return True


def change_basis(C: TwistedPair, g: Mat2) -> CompAlg2:
    """Transport C along g and return it in closed form.

    Raises :class:`NotAGoodBasisError` when the transported tensors are not
    of the closed form attached to a cube.
    """
    if g.det().norm() == 0:
        raise ValidationError("change_basis needs an invertible matrix")
    moved = transport(C, g)
    new = phi(cube_of(moved))
    if not same_tensors(new, moved):
        raise NotAGoodBasisError("transported tensors are not of the good-basis shape")
    return new


def coordinates(C: TwistedPair, v, target):
    """(x, y) in E with target = x v + y beta(v)."""
    w = C.beta(v)
    D = v[0] * w[1] - w[0] * v[1]
    try:
        Di = D.inverse()
    except NotInvertibleError as exc:
        raise ValidationError("{v, beta(v)} is not a basis") from exc
    x = (target[0] * w[1] - w[0] * target[1]) * Di
    y = (v[0] * target[1] - target[0] * v[1]) * Di
    return x, y


@dataclass
class ReducedTransition:
    matrix: Mat2
    det: CubicElem
    det_formula: object

    @property
    def det_is_scalar(self) -> bool:
        return self.det.alg.scalar_part(self.det) is not None


def reduced_transition(C: TwistedPair, v, v2) -> ReducedTransition:
    """Matrix g with g v = v2, g beta(v) = beta(v2), in the basis {v, beta(v)}."""
    x, y = coordinates(C, v, v2)
    xb, yb = coordinates(C, v, C.beta(v2))
    g = Mat2(x, xb, y, yb)
    n = C.norm_form(v)
    q = C.Q(v)
    formula = x.norm() - y.norm() * n - (q * x * y.sharp()).trace()
    return ReducedTransition(g, g.det(), formula)


# Tits construction --------------------------------------------------------------


@dataclass(frozen=True)
class TitsPair:
    """(e, nu) with e in E^x, nu in K and N_E(e) = N_K(nu)."""

    e: CubicElem
    nu: QuadElem

    def __post_init__(self):
        if not self.e.is_invertible():
            raise ValidationError("Tits pair needs e invertible")
        if self.nu.norm() == 0:
            raise ValidationError("Tits pair needs nu invertible")
        if self.e.norm() != self.nu.norm():
            raise ValidationError(f"norm condition fails: N_E(e) = {self.e.norm()} but N_K(nu) = {self.nu.norm()}")


def to_tits(C: CompAlg2, root: Optional[QuadElem] = None) -> TitsPair:
    """e = -f, nu = -(b + sqrt(Delta)) / 2 for a reduced algebra (1, 0, f, b).

    ``root`` is the square root of Delta to use; by default the generator of
    F(sqrt Delta).
    """
    if not (C.a == 1 and not C.e):
        raise ValidationError("to_tits needs a reduced algebra (1, 0, f, b)")
    if not C.f.is_invertible():
        raise ValidationError("to_tits needs f invertible")
    F = C.E.field
    delta = C.b * C.b + 4 * C.f.norm()
    if delta == 0:
        raise ValidationError("to_tits needs Delta != 0")
    if root is None:
        root = QuadExt(F, delta).sqrt_d
    elif root * root != delta:
        raise ValidationError("root does not square to Delta")
    nu = (root + C.b) * (-1 / F(2))
    return TitsPair(-C.f, nu)


def from_tits(pair: TitsPair) -> Cube:
    E = pair.e.alg
    F = E.field
    if pair.e.norm() != pair.nu.norm():
        raise ValidationError("norm condition N_E(e) = N_K(nu) fails")
    return Cube(F.one, E.zero, -pair.e, -pair.nu.trace())


class TitsAlgebra:
    """Q(x) = e N_{L/E}(x), beta(x) = conj(x)# e^-1 conj(nu) on L = E (x) K.

    Elements of L are pairs (p, q) meaning p + q sqrt(d).
    """

    def __init__(self, pair: TitsPair):
        self.pair = pair
        self.E = pair.e.alg
        self.d = pair.nu.K.d

    def mul(self, s, t):
        return (s[0] * t[0] + s[1] * t[1] * self.d, s[0] * t[1] + s[1] * t[0])

    def conj(self, s):
        return (s[0], -s[1])

    def sharp(self, s):
        p, q = s
        return (p.sharp() + q.sharp() * self.d, p.cross(q))

    def norm_to_E(self, s):
        p, q = s
        return p * p - q * q * self.d

    def Q(self, s):
        return self.pair.e * self.norm_to_E(s)

    def beta(self, s):
        E = self.E
        nu = self.pair.nu
        nubar = (E.scalar(nu.x), E.scalar(-nu.y))
        return self.mul(self.mul(self.sharp(self.conj(s)), (self.pair.e.inverse(), E.zero)), nubar)


def tits_identification(C: CompAlg2):
    """(x, y) -> x + y (b - sqrt Delta) / (2f) into E (x) F(sqrt Delta), as (p, q) pairs."""
    inv2f = (C.f * 2).inverse()
    return lambda v: (v[0] + v[1] * inv2f * C.b, -(v[1] * inv2f))
