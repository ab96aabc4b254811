"""Integral theory over Z: oriented modules in Q(sqrt D) and the cube -> triple map.

Quadratic-field elements are :class:`QuadElem` over Q with d = D (the
discriminant itself, not its squarefree part), so a lattice is described by
its generators' coordinates in {1, sqrt D}.  The order R has the positively
oriented basis {1, (D + sqrt D)/2}.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

from .errors import ValidationError
from .field import QQ, QuadElem, QuadExt


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


@dataclass(frozen=True)
class QuadOrder:
    D: int

    def __post_init__(self):
        if self.D % 4 not in (0, 1):
            raise ValidationError(f"discriminant {self.D} is not 0 or 1 mod 4")
        if _is_square(self.D):
            raise ValidationError(f"discriminant {self.D} is a square")

    @property
    def K(self) -> QuadExt:
        return QuadExt(QQ, self.D)

    @property
    def omega(self) -> QuadElem:
        return self.K(Fraction(self.D, 2), Fraction(1, 2))

    def basis(self):
        return (self.K(1), self.omega)

    def omega_relation_holds(self) -> bool:
        """omega^2 = D omega - D(D - 1)/4, so the basis spans a ring."""
        w = self.omega
        return w * w == w * self.D - Fraction(self.D * (self.D - 1), 4)

    @property
    def det(self) -> Fraction:
        return _det(self.basis())

    def unit_module(self) -> QuadModule:
        return QuadModule(self, self.basis())

    def principal(self, delta: QuadElem) -> QuadModule:
        """(delta) = delta R with the basis {delta, delta omega}."""
        return QuadModule(self, (delta, delta * self.omega))


def _det(basis) -> Fraction:
    u, v = basis
    return u.x * v.y - u.y * v.x


@dataclass(frozen=True)
class QuadModule:
    """A full lattice with an ordered basis; the ordering fixes the orientation."""

    order: QuadOrder
    basis: tuple

    def __post_init__(self):
        if _det(self.basis) == 0:
            raise ValidationError("module basis is degenerate")

    @property
    def orientation(self) -> int:
        return 1 if _det(self.basis) / self.order.det > 0 else -1

    def norm(self) -> Fraction:
        """N(M) = orientation * [R : M]."""
        return _det(self.basis) / self.order.det

    def hnf(self):
        return lattice_hnf(self.basis)

    def same_lattice(self, other: QuadModule) -> bool:
        return self.hnf() == other.hnf()

    def contains(self, z: QuadElem) -> bool:
        return self.coordinates(z) is not None

    def coordinates(self, z: QuadElem):
        """Integer (x, y) with z = x u + y v, or None."""
        u, v = self.basis
        d = _det(self.basis)
        x = (z.x * v.y - z.y * v.x) / d
        y = (u.x * z.y - u.y * z.x) / d
        if Fraction(x).denominator != 1 or Fraction(y).denominator != 1:
            return None
        return int(x), int(y)

    def element(self, x, y) -> QuadElem:
        u, v = self.basis
        return u * x + v * y


def lattice_hnf(gens):
    """Canonical basis of the Z-span of ``gens`` (QuadElems), as a tuple of Fractions.

    Coordinates are scaled by the lcm of the denominators, put in column
    Hermite normal form, and scaled back.
    """
    cols = [(Fraction(g.x), Fraction(g.y)) for g in gens]
    L = 1
    for c in cols:
        for t in c:
            L = L * t.denominator // math.gcd(L, t.denominator)
    M = Matrix([[int(c[0] * L) for c in cols], [int(c[1] * L) for c in cols]])
    H = hermite_normal_form(M)
    if H.shape != (2, 2):
        raise ValidationError("generators do not span a full lattice")
    return tuple(Fraction(int(H[i, j]), L) for i in range(2) for j in range(2))


def module_product(M: QuadModule, N: QuadModule) -> QuadModule:
    """Lattice spanned by the four products; the orientation is the product of orientations."""
    if M.order != N.order:
        raise ValidationError("modules live in different orders")
    prods = [u * v for u in M.basis for v in N.basis]
    h = lattice_hnf(prods)
    K = M.order.K
    basis = (K(h[0], h[2]), K(h[1], h[3]))
    out = QuadModule(M.order, basis)
    if out.orientation != M.orientation * N.orientation:
        out = QuadModule(M.order, (basis[1], basis[0]))
    return out


# cubes and triples -------------------------------------------------------------


def binary_forms(f, b):
    """The three forms Q_i = -f_i x^2 - b xy + f_j f_k y^2 of the reduced cube (1, 0, f, b)."""
    f1, f2, f3 = f
    return ((-f1, -b, f2 * f3), (-f2, -b, f3 * f1), (-f3, -b, f1 * f2))


def is_primitive(form) -> bool:
    return math.gcd(*form) == 1


@dataclass
class Triple:
    order: QuadOrder
    f: tuple
    b: int
    modules: tuple
    delta: QuadElem
    forms: tuple

    @property
    def projective(self) -> bool:
        return all(is_primitive(q) for q in self.forms)

    def norm_identities(self) -> dict:
        f1, f2, f3 = self.f
        return {
            "module_norms": all(M.norm() == Fraction(-1, fi) for M, fi in zip(self.modules, self.f)),
            "delta_norm": self.delta.norm() == Fraction(-1, f1 * f2 * f3),
            "multiplicative": math.prod(M.norm() for M in self.modules) == self.delta.norm(),
        }

    def product_module(self) -> QuadModule:
        M1, M2, M3 = self.modules
        return module_product(module_product(M1, M2), M3)

    def colinear(self) -> bool:
        P = self.product_module()
        return P.same_lattice(self.order.principal(self.delta)) and P.norm() == self.delta.norm()


def cube_to_triple(f, b) -> Triple:
    """M_i = {1, (b - sqrt D)/(2 f_i)}, delta = -2/(b + sqrt D), D = b^2 + 4 f1 f2 f3."""
    f = tuple(int(x) for x in f)
    b = int(b)
    if any(x == 0 for x in f):
        raise ValidationError("cube_to_triple needs every f_i nonzero")
    D = b * b + 4 * f[0] * f[1] * f[2]
    R = QuadOrder(D)
    K = R.K
    root = K.sqrt_d
    modules = tuple(QuadModule(R, (K(1), (root * -1 + b) / (2 * fi))) for fi in f)
    delta = K(-2) / (root + b)
    return Triple(R, f, b, modules, delta, binary_forms(f, b))


class IntegralCompAlg:
    """Q, beta and N_C on M1 x M2 x M3."""

    def __init__(self, triple: Triple):
        self.t = triple

    def check_membership(self, z):
        for i, (zi, M) in enumerate(zip(z, self.t.modules)):
            if not M.contains(zi):
                raise ValidationError(f"z_{i + 1} = {zi} is not in M_{i + 1}")

    def Q(self, z):
        self.check_membership(z)
        return tuple(-fi * zi.norm() for fi, zi in zip(self.t.f, z))

    def beta(self, z):
        self.check_membership(z)
        f1, f2, f3 = self.t.f
        z1, z2, z3 = (w.conj() for w in z)
        d = self.t.delta
        return (d * (f2 * f3) * z2 * z3, d * (f3 * f1) * z3 * z1, d * (f1 * f2) * z1 * z2)

    def norm_form(self, z):
        self.check_membership(z)
        z1, z2, z3 = z
        return (z1 * z2 * z3 / self.t.delta).trace()

    def bQ(self, z, w):
        return tuple(-fi * (zi * wi.conj()).trace() for fi, zi, wi in zip(self.t.f, z, w))

    def coordinates(self, z):
        return tuple(M.coordinates(zi) for M, zi in zip(self.t.modules, z))

    def from_coordinates(self, xy):
        return tuple(M.element(x, y) for M, (x, y) in zip(self.t.modules, xy))

    def coordinate_beta(self, xy):
        """beta in module coordinates via the face matrices of the cube."""
        f1, f2, f3 = self.t.f
        b = self.t.b
        (x1, y1), (x2, y2), (x3, y3) = xy
        fs = {1: f1, 2: f2, 3: f3}
        xs = {1: (x1, y1), 2: (x2, y2), 3: (x3, y3)}
        out = []
        for i, j, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
            (xj, yj), (xk, yk) = xs[j], xs[k]
            # -(x_k, y_k) [[0, f_k], [f_j, b]] (x_j, y_j)^T and (x_k, y_k) diag(1, f_i) (x_j, y_j)^T
            xp = -(xk * fs[k] * yj + yk * (fs[j] * xj + b * yj))
            yp = xk * xj + fs[i] * yk * yj
            out.append((xp, yp))
        return tuple(out)

    def random_element(self, rng, height: int = 10):
        xy = tuple((rng.randint(-height, height), rng.randint(-height, height)) for _ in range(3))
        return self.from_coordinates(xy)


def random_projective_cube(rng, bound: int = 10):
    """(f, b) with |b|, |f_i| <= bound, f_i != 0, D nonsquare and all Q_i primitive."""
    while True:
        f = tuple(rng.choice([x for x in range(-bound, bound + 1) if x]) for _ in range(3))
        b = rng.randint(-bound, bound)
        D = b * b + 4 * f[0] * f[1] * f[2]
        if _is_square(D):
            continue
        if all(is_primitive(q) for q in binary_forms(f, b)):
            return f, b


def small_projective_cubes(bound: int = 2):
    for f in itertools.product([x for x in range(-bound, bound + 1) if x], repeat=3):
        for b in range(-bound, bound + 1):
            D = b * b + 4 * f[0] * f[1] * f[2]
            if not _is_square(D) and all(is_primitive(q) for q in binary_forms(f, b)):
                yield f, b
