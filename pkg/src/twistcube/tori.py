"""Split model of the torus T_{E,K} and the Hilbert-90 isomorphism.

Over a field splitting E and K, a point of E (x) K is a pair of 3-vectors
(a, b).  T_{E,K} is cut out by a_i b_i = 1 and a1 a2 a3 = 1; the bigger group
T~' by a1 b1 = a2 b2 = a3 b3.  The map (a; b) -> (a2/a3, a3/a1, a1/a2;
b2/b3, b3/b1, b1/b2) is x -> sigma(x)/sigma^2(x) for the 3-cycle sigma.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cube import Cube, GroupWord, Torus, Weyl
from .errors import ValidationError
from .etale import CubicAlgebra
from .field import Field, PrimeField


@dataclass(frozen=True)
class SplitTorusPoint:
    a: tuple
    b: tuple

    def __post_init__(self):
        if any(x == 0 for x in self.a + self.b):
            raise ValidationError("torus coordinates must be nonzero")

    def __mul__(self, other: SplitTorusPoint) -> SplitTorusPoint:
        return SplitTorusPoint(
            tuple(x * y for x, y in zip(self.a, other.a)),
            tuple(x * y for x, y in zip(self.b, other.b)),
        )

    def in_T(self) -> bool:
        a1, a2, a3 = self.a
        return all(x * y == 1 for x, y in zip(self.a, self.b)) and a1 * a2 * a3 == 1

    def in_T_tilde(self) -> bool:
        p = [x * y for x, y in zip(self.a, self.b)]
        return p[0] == p[1] == p[2]

    def is_scalar(self) -> bool:
        return self.a[0] == self.a[1] == self.a[2] and self.b[0] == self.b[1] == self.b[2]


def point(F: Field, a, b) -> SplitTorusPoint:
    return SplitTorusPoint(tuple(F(x) for x in a), tuple(F(x) for x in b))


def h90_map(x: SplitTorusPoint) -> SplitTorusPoint:
    if not x.in_T_tilde():
        raise ValidationError("h90_map expects a point with a1 b1 = a2 b2 = a3 b3")
    a1, a2, a3 = x.a
    b1, b2, b3 = x.b
    return SplitTorusPoint((a2 / a3, a3 / a1, a1 / a2), (b2 / b3, b3 / b1, b1 / b2))


def t_tilde_points(F: PrimeField):
    """All points of T~'(F_p): a arbitrary, b_i = c / a_i."""
    units = [F(x) for x in range(1, F.p)]
    for a in itertools.product(units, repeat=3):
        for c in units:
            yield SplitTorusPoint(a, tuple(c / x for x in a))


def t_points(F: PrimeField):
    units = [F(x) for x in range(1, F.p)]
    for a1, a2 in itertools.product(units, repeat=2):
        a = (a1, a2, 1 / (a1 * a2))
        yield SplitTorusPoint(a, tuple(1 / x for x in a))


@dataclass
class H90Census:
    domain: int
    kernel: int
    kernel_is_scalars: bool
    image: int
    target: int
    image_in_T: bool

    @property
    def surjective(self) -> bool:
        return self.image == self.target and self.domain == self.kernel * self.image


def h90_census(p: int) -> H90Census:
    F = PrimeField(p)
    dom = list(t_tilde_points(F))
    images = set()
    kernel = 0
    kernel_scalar = True
    in_T = True
    for x in dom:
        y = h90_map(x)
        in_T &= y.in_T()
        images.add((y.a, y.b))
        if all(t == 1 for t in y.a + y.b):
            kernel += 1
            kernel_scalar &= x.is_scalar()
    n_scalar = (p - 1) ** 2
    return H90Census(len(dom), kernel, kernel_scalar and kernel == n_scalar, len(images), len(list(t_points(F))), in_T)


# stabilizer of the distinguished cube -------------------------------------------


def norm_one_split(F: PrimeField):
    units = [F(x) for x in range(1, F.p)]
    for a1, a2 in itertools.product(units, repeat=2):
        yield (a1, a2, 1 / (a1 * a2))


def stabilizer_model(E: CubicAlgebra):
    """E^1 x| Z/2: Torus(alpha, alpha^-1) with N(alpha) = 1, and Weyl times those."""
    out = []
    for al in norm_one_split(E.field):
        t = Torus(E(al), E(al).inverse())
        out.append(GroupWord((t,)))
        out.append(GroupWord((t, Weyl())))
    return out


@dataclass
class StabilizerReport:
    p: int
    model_size: int
    model_fixes: bool
    monomial_fixers: int
    fixers_in_model: bool
    expected: int

    @property
    def ok(self) -> bool:
        return self.model_fixes and self.fixers_in_model and self.model_size == self.monomial_fixers == self.expected


def stabilizer_check(p: int) -> StabilizerReport:
    """Brute force over the monomial words Torus(alpha, c/alpha) and Weyl . Torus(alpha, c/alpha)."""
    if p not in (5, 7):
        raise ValidationError("stabilizer_check supports p in (5, 7)")
    F = PrimeField(p)
    E = CubicAlgebra.split(F)
    v0 = Cube.distinguished(E)
    model = stabilizer_model(E)
    model_fixes = all(g.act(v0) == v0 for g in model)
    model_keys = {_monomial_key(g, E) for g in model}
    units = [F(x) for x in range(1, p)]
    fixers = 0
    inside = True
    for al in itertools.product(units, repeat=3):
        alpha = E(al)
        for c in units:
            t = Torus(alpha, alpha.inverse() * c)
            for w in (GroupWord((t,)), GroupWord((t, Weyl()))):
                if w.act(v0) == v0:
                    fixers += 1
                    inside &= _monomial_key(w, E) in model_keys
    return StabilizerReport(p, len(model), model_fixes, fixers, inside, 2 * (p - 1) ** 2)


def _monomial_key(w: GroupWord, E: CubicAlgebra):
    m = w.matrix(E)
    return (m.p, m.q, m.r, m.s)
