"""The twisted cube space V_E = F + E + E + F and its group action.

Group elements are words in generators of GL2(E)^0 x| S_E.  As 2x2 matrices
over E, ``UnipotentUpper(u) = [[1, u], [0, 1]]``, ``UnipotentLower(u) =
[[1, 0], [u, 1]]``, ``Torus(alpha, beta) = diag(alpha, beta)`` and ``Weyl =
[[0, 1], [1, 0]]``.  A :class:`GroupWord` lists generators in the order they
are applied.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from . import tensor
from .errors import DegenerateCubeError, SearchExhausted, ValidationError
from .etale import CubicAlgebra, CubicElem, require_split


@dataclass(frozen=True)
class Cube:
    a: object
    e: CubicElem
    f: CubicElem
    b: object

    @property
    def E(self) -> CubicAlgebra:
        return self.e.alg

    @classmethod
    def make(cls, E: CubicAlgebra, a, e, f, b) -> Cube:
        F = E.field
        return cls(F(a), E(e), E(f), F(b))

    @classmethod
    def distinguished(cls, E: CubicAlgebra) -> Cube:
        return cls(E.field.one, E.zero, E.zero, -E.field.one)

    @classmethod
    def random(cls, E: CubicAlgebra, rng, height: int = 10) -> Cube:
        F = E.field
        return cls(F.random(rng, height), E.random(rng, height), E.random(rng, height), F.random(rng, height))

    def is_reduced(self) -> bool:
        return self.a == 1 and not self.e

    def delta(self):
        return delta_E(self)

    def __repr__(self):
        return f"Cube({self.a}, {self.e}, {self.f}, {self.b})"


def delta_E(v: Cube):
    """Quartic invariant of a cube."""
    a, e, f, b = v.a, v.e, v.f, v.b
    ef = e * f
    return (
        a * a * b * b
        - 2 * a * b * ef.trace()
        + (ef * ef).trace()
        + 4 * a * f.norm()
        + 4 * b * e.norm()
        - 2 * (e.sharp() * f.sharp()).trace()
    )


# generators -------------------------------------------------------------


@dataclass(frozen=True)
class UnipotentLower:
    u: CubicElem

    def det(self, F):
        return F.one

    def apply(self, v: Cube) -> Cube:
        u, a, e, f, b = self.u, v.a, v.e, v.f, v.b
        us = u.sharp()
        return Cube(
            a,
            e + u * a,
            f + e.cross(u) + us * a,
            b + (f * u).trace() + (e * us).trace() + a * u.norm(),
        )

    def matrix(self):
        E = self.u.alg
        return Mat2(E.one, E.zero, self.u, E.one)

    def inverse(self):
        return UnipotentLower(-self.u)


@dataclass(frozen=True)
class UnipotentUpper:
    u: CubicElem

    def det(self, F):
        return F.one

    def apply(self, v: Cube) -> Cube:
        u, a, e, f, b = self.u, v.a, v.e, v.f, v.b
        us = u.sharp()
        return Cube(
            a + (e * u).trace() + (f * us).trace() + b * u.norm(),
            e + f.cross(u) + us * b,
            f + u * b,
            b,
        )

    def matrix(self):
        E = self.u.alg
        return Mat2(E.one, self.u, E.zero, E.one)

    def inverse(self):
        return UnipotentUpper(-self.u)


@dataclass(frozen=True)
class Torus:
    """diag(alpha, beta) with alpha*beta a nonzero scalar."""

    alpha: CubicElem
    beta: CubicElem

    def __post_init__(self):
        E = self.alpha.alg
        c = E.scalar_part(self.alpha * self.beta)
        if c is None or c == 0:
            raise ValidationError("torus element needs alpha*beta in F^x")
        if not self.alpha.is_invertible() or not self.beta.is_invertible():
            raise ValidationError("torus entries must be invertible")

    @classmethod
    def of(cls, E: CubicAlgebra, alpha, beta) -> Torus:
        def lift(x):
            return x if isinstance(x, CubicElem) else E.scalar(x) if E.field.is_scalar(x) else E(x)

        return cls(lift(alpha), lift(beta))

    def det(self, F):
        return self.alpha.alg.scalar_part(self.alpha * self.beta)

    def apply(self, v: Cube) -> Cube:
        al, be = self.alpha, self.beta
        E = al.alg
        ai, bi = al.inverse(), be.inverse()
        als, bes = al.sharp(), be.sharp()
        return Cube(
            E.scalar_part(als * bi) * v.a,
            als * ai * v.e,
            bes * bi * v.f,
            E.scalar_part(bes * ai) * v.b,
        )

    def matrix(self):
        E = self.alpha.alg
        return Mat2(self.alpha, E.zero, E.zero, self.beta)

    def inverse(self):
        return Torus(self.alpha.inverse(), self.beta.inverse())


@dataclass(frozen=True)
class Weyl:
    def det(self, F):
        return -F.one

    def apply(self, v: Cube) -> Cube:
        return Cube(-v.b, -v.f, -v.e, -v.a)

    def matrix(self, E=None):
        if E is None:
            raise ValueError("Weyl.matrix needs the algebra")
        return Mat2(E.zero, E.one, E.one, E.zero)

    def inverse(self):
        return self


@dataclass(frozen=True)
class AlgAut:
    """An automorphism of E, given as a 3x3 matrix (columns = basis images)."""

    sigma: tuple

    def det(self, F):
        return F.one

    def apply(self, v: Cube) -> Cube:
        E = v.E
        return Cube(v.a, E.apply_matrix(self.sigma, v.e), E.apply_matrix(self.sigma, v.f), v.b)

    def matrix(self, E=None):
        return None

    def inverse(self):
        raise NotImplementedError("inverse of an algebra automorphism word")


@dataclass(frozen=True)
class GroupWord:
    gens: tuple = ()

    def act(self, v: Cube) -> Cube:
        for g in self.gens:
            v = g.apply(v)
        return v

    def det(self, F):
        d = F.one
        for g in self.gens:
            d = d * g.det(F)
        return d

    def __mul__(self, other: GroupWord) -> GroupWord:
        """Group product: ``(self * other).act(v) == self.act(other.act(v))``."""
        return GroupWord(other.gens + self.gens)

    def __len__(self):
        return len(self.gens)

    def inverse(self) -> GroupWord:
        return GroupWord(tuple(g.inverse() for g in reversed(self.gens)))

    def matrix(self, E: CubicAlgebra) -> Mat2:
        """The 2x2 E-matrix of the word (no algebra automorphisms allowed)."""
        m = Mat2.identity(E)
        for g in self.gens:
            gm = g.matrix(E) if isinstance(g, Weyl) else g.matrix()
            if gm is None:
                raise ValidationError("word contains an algebra automorphism")
            m = gm @ m
        return m


def act(g, v: Cube) -> Cube:
    if isinstance(g, GroupWord):
        return g.act(v)
    return g.apply(v)


# 2x2 matrices over E ---------------------------------------------------------


@dataclass(frozen=True)
class Mat2:
    """[[p, q], [r, s]] with entries in E."""

    p: CubicElem
    q: CubicElem
    r: CubicElem
    s: CubicElem

    @classmethod
    def identity(cls, E):
        return cls(E.one, E.zero, E.zero, E.one)

    def __matmul__(self, o: Mat2) -> Mat2:
        return Mat2(
            self.p * o.p + self.q * o.r,
            self.p * o.q + self.q * o.s,
            self.r * o.p + self.s * o.r,
            self.r * o.q + self.s * o.s,
        )

    def det(self) -> CubicElem:
        return self.p * self.s - self.q * self.r

    def transpose(self) -> Mat2:
        return Mat2(self.p, self.r, self.q, self.s)

    def inverse(self) -> Mat2:
        di = self.det().inverse()
        return Mat2(self.s * di, -self.q * di, -self.r * di, self.p * di)

    def apply(self, v):
        x, y = v
        return (self.p * x + self.q * y, self.r * x + self.s * y)


# slicing ----------------------------------------------------------------------


def slice(v: Cube):
    """Three (A_i, B_i) pairs of 2x2 F-matrices of a split cube."""
    require_split(v.E, "slice")
    T = tensor.cube_to_tensor(v.a, v.e.coords, v.f.coords, v.b)
    return tensor.slices(T)


def slice_forms(v: Cube):
    """Coefficients (p, q, r) of Q_i = -det(A_i x + B_i y) for i = 1, 2, 3."""
    return [tensor.slice_form(A, B) for A, B in slice(v)]


# reduction --------------------------------------------------------------------


def _small_elements(E: CubicAlgebra, bound: int):
    F = E.field
    if F.characteristic:
        rng = range(F.characteristic)
    else:
        rng = sorted(range(-bound, bound + 1), key=lambda t: (abs(t), t < 0))
    for c in itertools.product(rng, repeat=3):
        if any(c):
            yield E(c)


def reduce(v: Cube, max_bound: int = 16):
    """Return (word, reduced) with ``word.act(v) == reduced == (1, 0, f, b)``."""
    F = v.E.field
    E = v.E
    if delta_E(v) == 0:
        raise DegenerateCubeError("cannot reduce a cube with Delta_E = 0")
    gens = []
    cur = v

    def push(g):
        nonlocal cur
        gens.append(g)
        cur = g.apply(cur)

    if cur.a == 0 and cur.b != 0:
        push(Weyl())
    if cur.a == 0:
        # a = b = 0: find u with n+(u) making a nonzero
        bound = 2
        found: Optional[CubicElem] = None
        while found is None:
            for u in _small_elements(E, bound):
                if (cur.e * u).trace() + (cur.f * u.sharp()).trace() != 0:
                    found = u
                    break
            if found is None:
                if F.characteristic or bound >= max_bound:
                    raise SearchExhausted(f"no u found with coordinates bounded by {bound}", bound)
                bound *= 2
        push(UnipotentUpper(found))
    if cur.e:
        push(UnipotentLower(cur.e * (-1 / cur.a)))
    if cur.a != 1:
        push(Torus(E.one, E.scalar(cur.a)))
    return GroupWord(tuple(gens)), cur
