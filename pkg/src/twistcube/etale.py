"""Etale cubic algebras given by structure constants.

Three presentations are supported:

* ``split``: F x F x F with idempotent basis;
* ``quad_pair(d)``: F x F(sqrt d) with basis (1,0), (0,1), (0,sqrt d);
* ``cubic_poly(c0, c1, c2)``: F[t]/(t^3 + c2 t^2 + c1 t + c0), basis 1, t, t^2.

Everything downstream (trace, norm, adjoint, cross product) is computed from
the multiplication table, so cube and composition-algebra code never looks at
the shape tag.
"""

from __future__ import annotations

import itertools
from functools import cached_property

from .errors import NotInvertibleError, UnsupportedShapeError, ValidationError
from .field import Field, Fp, SquareClass


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def solve_linear(field: Field, rows, rhs):
    """Solve the square system ``rows @ x = rhs`` exactly; None if singular."""
    n = len(rows)
    m = [[field(v) for v in row] + [field(r)] for row, r in zip(rows, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                c = m[i][col]
                m[i] = [a - c * b for a, b in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]


class CubicAlgebra:
    """A three-dimensional etale F-algebra.

    ``constants[i][j]`` is the coordinate vector of ``b_i * b_j``.
    """

    def __init__(self, field: Field, shape, constants, unit):
        self.field = field
        self.shape = shape
        self.constants = tuple(tuple(tuple(field(c) for c in v) for v in row) for row in constants)
        self.unit_coords = tuple(field(c) for c in unit)
        self._terms = [
            (i, j, k, c)
            for i in range(3)
            for j in range(3)
            for k, c in enumerate(self.constants[i][j])
            if c != 0
        ]
        if self.trace_gram_det == 0:
            raise ValidationError(f"{shape} does not define an etale algebra (trace form degenerate)")

    # construction -------------------------------------------------------

    @classmethod
    def split(cls, field: Field) -> CubicAlgebra:
        c = [[[0, 0, 0] for _ in range(3)] for _ in range(3)]
        for i in range(3):
            c[i][i][i] = 1
        return cls(field, ("split",), c, (1, 1, 1))

    @classmethod
    def quad_pair(cls, field: Field, d) -> CubicAlgebra:
        d = field(d)
        if d == 0:
            raise ValidationError("quad_pair needs d != 0")
        z = [0, 0, 0]
        c = [[list(z) for _ in range(3)] for _ in range(3)]
        c[0][0] = [1, 0, 0]
        c[1][1] = [0, 1, 0]
        c[1][2] = c[2][1] = [0, 0, 1]
        c[2][2] = [0, d, 0]
        return cls(field, ("quad_pair", d), c, (1, 1, 0))

    @classmethod
    def cubic_poly(cls, field: Field, c0, c1, c2) -> CubicAlgebra:
        c0, c1, c2 = field(c0), field(c1), field(c2)
        # t^3 = -c0 - c1 t - c2 t^2 ; t^4 = t * t^3
        t3 = [-c0, -c1, -c2]
        t4 = [-c2 * t3[0], t3[0] - c2 * t3[1], t3[1] - c2 * t3[2]]
        powers = {0: [1, 0, 0], 1: [0, 1, 0], 2: [0, 0, 1], 3: t3, 4: t4}
        c = [[powers[i + j] for j in range(3)] for i in range(3)]
        return cls(field, ("cubic_poly", c0, c1, c2), c, (1, 0, 0))

    # structure ----------------------------------------------------------

    @property
    def kind(self) -> str:
        return self.shape[0]

    @property
    def is_split(self) -> bool:
        return self.kind == "split"

    def __eq__(self, other):
        return isinstance(other, CubicAlgebra) and self.field == other.field and self.shape == other.shape

    def __hash__(self):
        return hash((self.field, self.shape))

    def __repr__(self):
        args = ", ".join(str(s) for s in self.shape[1:])
        return f"CubicAlgebra({self.field!r}, {self.kind}{'(' + args + ')' if args else ''})"

    def __call__(self, *coords) -> CubicElem:
        if len(coords) == 1 and isinstance(coords[0], CubicElem):
            return coords[0]
        if len(coords) == 1 and isinstance(coords[0], (list, tuple)):
            coords = coords[0]
        elif len(coords) == 1:
            return self.scalar(coords[0])
        if len(coords) != 3:
            raise ValidationError("cubic algebra elements have 3 coordinates")
        return CubicElem(self, tuple(self.field(c) for c in coords))

    def scalar(self, c) -> CubicElem:
        c = self.field(c)
        return CubicElem(self, tuple(c * u for u in self.unit_coords))

    @cached_property
    def one(self) -> CubicElem:
        return CubicElem(self, self.unit_coords)

    @cached_property
    def zero(self) -> CubicElem:
        z = self.field.zero
        return CubicElem(self, (z, z, z))

    @cached_property
    def basis(self):
        f = self.field
        return [CubicElem(self, tuple(f.one if i == j else f.zero for j in range(3))) for i in range(3)]

    def random(self, rng, height: int = 10) -> CubicElem:
        return CubicElem(self, tuple(self.field.random(rng, height) for _ in range(3)))

    def elements(self):
        """All p^3 elements (prime fields only)."""
        els = self.field.elements()
        return [CubicElem(self, c) for c in itertools.product(els, repeat=3)]

    @cached_property
    def basis_traces(self):
        out = []
        for b in self.basis:
            m = b.mult_matrix()
            out.append(m[0][0] + m[1][1] + m[2][2])
        return tuple(out)

    @cached_property
    def trace_gram(self):
        return [[(b1 * b2).trace() for b2 in self.basis] for b1 in self.basis]

    @cached_property
    def trace_gram_det(self):
        return _det3(self.trace_gram)

    @cached_property
    def _pairs(self):
        # (i, j, [(k, c or None when c == 1)]) grouped for mul_coords
        grouped = {}
        for i, j, k, c in self._terms:
            grouped.setdefault((i, j), []).append((k, None if c == 1 else c))
        return tuple((i, j, tuple(kcs)) for (i, j), kcs in grouped.items())

    @cached_property
    def _half(self):
        return 1 / self.field(2)

    @cached_property
    def _third(self):
        return 1 / self.field(3)

    @cached_property
    def _modulus(self):
        return getattr(self.field, "p", None)

    def _mul_ints(self, x, y):
        """Unreduced integer product of two F_p coordinate vectors given as ints."""
        acc = [0, 0, 0]
        for i, j, kcs in self._pairs:
            prod = x[i] * y[j]
            if prod:
                for k, c in kcs:
                    acc[k] += prod if c is None else c.v * prod
        return acc

    @cached_property
    def _int_data(self):
        # (traces, unit, 1/2) as plain ints, for the F_p fast paths
        return (
            tuple(t.v for t in self.basis_traces),
            tuple(u.v for u in self.unit_coords),
            self._half.v,
        )

    def mul_coords(self, x, y):
        p = self._modulus
        if p is not None:
            # integer fast path over F_p
            acc = self._mul_ints([c.v for c in x], [c.v for c in y])
            return (Fp(acc[0], p), Fp(acc[1], p), Fp(acc[2], p))
        out = [self.field.zero] * 3
        for i, j, kcs in self._pairs:
            xi = x[i]
            if not xi:
                continue
            yj = y[j]
            if not yj:
                continue
            prod = xi * yj
            for k, c in kcs:
                out[k] = out[k] + (prod if c is None else c * prod)
        return tuple(out)

    def scalar_part(self, x: CubicElem):
        """Return c if x = c*1, else None."""
        piv = next(i for i, u in enumerate(self.unit_coords) if u != 0)
        c = x.coords[piv] / self.unit_coords[piv]
        if all(xc == c * u for xc, u in zip(x.coords, self.unit_coords)):
            return c
        return None

    def discriminant_algebra(self) -> SquareClass:
        return self.field.square_class(self.trace_gram_det)

    def is_automorphism(self, m) -> bool:
        """``m`` is a 3x3 matrix whose columns are images of basis vectors."""
        f = self.field
        if _det3(m) == 0:
            return False
        img = [CubicElem(self, tuple(f(m[r][c]) for r in range(3))) for c in range(3)]
        if self.apply_matrix(m, self.one) != self.one:
            return False
        for i in range(3):
            for j in range(3):
                prod = self.basis[i] * self.basis[j]
                if self.apply_matrix(m, prod) != img[i] * img[j]:
                    return False
        return True

    def apply_matrix(self, m, x: CubicElem) -> CubicElem:
        return CubicElem(self, tuple(sum((m[r][c] * x.coords[c] for c in range(3)), self.field.zero) for r in range(3)))

    def automorphisms(self):
        """F-algebra automorphisms as 3x3 matrices (columns = images of basis)."""
        f = self.field
        kind = self.kind
        if kind == "split":
            mats = []
            for perm in itertools.permutations(range(3)):
                mats.append([[f.one if perm[c] == r else f.zero for c in range(3)] for r in range(3)])
            return mats
        if kind == "quad_pair":
            ident = [[f.one if r == c else f.zero for c in range(3)] for r in range(3)]
            conj = [row[:] for row in ident]
            conj[2][2] = -f.one
            return [ident, conj]
        # cubic_poly: look for roots of the defining cubic inside E
        ident = [[f.one if r == c else f.zero for c in range(3)] for r in range(3)]
        if f.characteristic == 0:
            return [ident]
        _, c0, c1, c2 = self.shape
        t = self.basis[1]
        found = []
        for u in self.elements():
            val = u * u * u + u * u * c2 + u * c1 + self.scalar(c0)
            if val != self.zero:
                continue
            cols = [self.one, u, u * u]
            m = [[cols[c].coords[r] for c in range(3)] for r in range(3)]
            if _det3(m) != 0 and self.is_automorphism(m):
                found.append(m)
        # identity first
        found.sort(key=lambda m: (self.apply_matrix(m, t) != t,))
        return found


class CubicElem:
    """Coordinate vector in a :class:`CubicAlgebra`."""

    __slots__ = ("alg", "coords")

    def __init__(self, alg: CubicAlgebra, coords):
        self.alg = alg
        self.coords = coords

    def _other(self, other):
        if isinstance(other, CubicElem):
            return other
        if self.alg.field.is_scalar(other):
            return self.alg.scalar(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CubicElem(self.alg, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CubicElem(self.alg, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return CubicElem(self.alg, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, CubicElem):
            return CubicElem(self.alg, self.alg.mul_coords(self.coords, other.coords))
        if self.alg.field.is_scalar(other):
            c = self.alg.field(other)
            return CubicElem(self.alg, tuple(c * a for a in self.coords))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, CubicElem):
            return self.coords == other.coords
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(c != 0 for c in self.coords)

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    # invariants ---------------------------------------------------------

    def mult_matrix(self):
        """Matrix of y -> self*y; column j is self * b_j."""
        cols = [self.alg.mul_coords(self.coords, b.coords) for b in self.alg.basis]
        return [[cols[c][r] for c in range(3)] for r in range(3)]

    def char_invariants(self):
        """(T, S, N) with char poly x^3 - T x^2 + S x - N of multiplication."""
        m = self.mult_matrix()
        t = m[0][0] + m[1][1] + m[2][2]
        s = (
            m[0][0] * m[1][1] - m[0][1] * m[1][0]
            + m[1][1] * m[2][2] - m[1][2] * m[2][1]
            + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        )
        return t, s, _det3(m)

    def trace(self):
        (x0, x1, x2), (t0, t1, t2) = self.coords, self.alg.basis_traces
        p = self.alg._modulus
        if p is not None:
            return Fp(x0.v * t0.v + x1.v * t1.v + x2.v * t2.v, p)
        return x0 * t0 + x1 * t1 + x2 * t2

    def norm(self):
        # N(x) = T(x x#) / 3, valid since char F is not 3
        return (self * self.sharp()).trace() * self.alg._third

    def sharp(self) -> CubicElem:
        # x# = x^2 - T(x) x + S(x) with S(x) = (T(x)^2 - T(x^2)) / 2
        A = self.alg
        p = A._modulus
        if p is not None:
            tr, u, half = A._int_data
            x = [c.v for c in self.coords]
            x2 = A._mul_ints(x, x)
            t = sum(a * b for a, b in zip(x, tr)) % p
            s = (t * t - sum(a * b for a, b in zip(x2, tr))) * half % p
            return CubicElem(A, tuple(Fp(a - t * b + s * c, p) for a, b, c in zip(x2, x, u)))
        x2 = self * self
        t = self.trace()
        s = (t * t - x2.trace()) * self.alg._half
        u = self.alg.unit_coords
        return CubicElem(self.alg, tuple(a - t * b + s * c for a, b, c in zip(x2.coords, self.coords, u)))

    def cross(self, other: CubicElem) -> CubicElem:
        # polarization of #: 2xy - T(x) y - T(y) x + (T(x) T(y) - T(xy))
        A = self.alg
        p = A._modulus
        if p is not None and other.alg is A:
            tr, u, _ = A._int_data
            x, y = [c.v for c in self.coords], [c.v for c in other.coords]
            xy = A._mul_ints(x, y)
            tx = sum(a * b for a, b in zip(x, tr)) % p
            ty = sum(a * b for a, b in zip(y, tr)) % p
            s = (tx * ty - sum(a * b for a, b in zip(xy, tr))) % p
            return CubicElem(A, tuple(Fp(2 * a - tx * b - ty * c + s * d, p) for a, b, c, d in zip(xy, y, x, u)))
        xy = self * other
        tx, ty = self.trace(), other.trace()
        s = tx * ty - xy.trace()
        u = self.alg.unit_coords
        return CubicElem(
            self.alg,
            tuple(2 * a - tx * b - ty * c + s * d for a, b, c, d in zip(xy.coords, other.coords, self.coords, u)),
        )

    def inverse(self) -> CubicElem:
        n = self.norm()
        if n == 0:
            raise NotInvertibleError(f"{self} is not invertible (norm 0)")
        return self.sharp() * (1 / n)

    def __truediv__(self, other):
        if isinstance(other, CubicElem):
            return self * other.inverse()
        if self.alg.field.is_scalar(other):
            return self * (1 / self.alg.field(other))
        return NotImplemented

    def is_invertible(self) -> bool:
        return self.norm() != 0

    def scalar_value(self):
        return self.alg.scalar_part(self)


def char_invariants(a: CubicElem):
    return a.char_invariants()


def sharp(a: CubicElem) -> CubicElem:
    return a.sharp()


def cross(a: CubicElem, b: CubicElem) -> CubicElem:
    return a.cross(b)


def check_curious_identity(f: CubicElem, y: CubicElem) -> bool:
    """(f x y) y + f y# == Tr(f y#) * 1."""
    ys = y.sharp()
    lhs = f.cross(y) * y + f * ys
    return lhs == f.alg.scalar((f * ys).trace())


def discriminant_algebra(E: CubicAlgebra) -> SquareClass:
    return E.discriminant_algebra()


def automorphisms(E: CubicAlgebra):
    return E.automorphisms()


def require_split(E: CubicAlgebra, what: str):
    if not E.is_split:
        raise UnsupportedShapeError(f"{what} needs the split algebra, got {E!r}")
