"""Nine-dimensional Freudenthal-Jordan algebras and Springer's decomposition.

Two matrix models are provided: all 3x3 matrices over F, and 3x3 Hermitian
matrices over K = F(sqrt d).  In both, the diagonal matrices form a split
cubic subalgebra E and its trace-orthogonal complement C (the off-diagonal
part) becomes an E-twisted composition algebra through

    e . v = -e x v,     v# = (-Q(v), beta(v)) in E + C.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .composition import CompAlg2, phi
from .cube import Cube
from .errors import AxiomViolation, SearchExhausted, UnsupportedShapeError
from .etale import CubicAlgebra, CubicElem
from .field import Field, QuadExt, SquareClass

# matrices are tuples of 3 row tuples


def mat_mul(A, B):
    return tuple(tuple(A[i][0] * B[0][j] + A[i][1] * B[1][j] + A[i][2] * B[2][j] for j in range(3)) for i in range(3))


def mat_add(A, B):
    return tuple(tuple(A[i][j] + B[i][j] for j in range(3)) for i in range(3))


def mat_sub(A, B):
    return tuple(tuple(A[i][j] - B[i][j] for j in range(3)) for i in range(3))


def mat_scale(c, A):
    return tuple(tuple(c * A[i][j] for j in range(3)) for i in range(3))


class JordanAlg:
    """Base class; subclasses define the scalar ring of entries and an F-basis."""

    kind = "abstract"

    def __init__(self, field: Field):
        self.field = field

    # entries --------------------------------------------------------------
    def entry(self, x):
        raise NotImplementedError

    def conj(self, x):
        return x

    def entry_scalar(self, x):
        return x

    @property
    def zero(self):
        z = self.entry(0)
        return tuple(tuple(z for _ in range(3)) for _ in range(3))

    @property
    def one(self):
        return self.diag(1, 1, 1)

    def diag(self, a, b, c):
        z = self.entry(0)
        d = [self.entry(a), self.entry(b), self.entry(c)]
        return tuple(tuple(d[i] if i == j else z for j in range(3)) for i in range(3))

    def basis(self):
        raise NotImplementedError

    def from_coords(self, coords):
        out = self.zero
        for c, m in zip(coords, self.basis()):
            if c:
                out = mat_add(out, mat_scale(self.field(c), m))
        return out

    def random(self, rng, height: int = 10):
        return self.from_coords([self.field.random(rng, height) for _ in range(9)])

    def contains(self, a) -> bool:
        return True

    # operations -----------------------------------------------------------
    def product(self, a, b):
        """Jordan product (ab + ba) / 2."""
        half = 1 / self.field(2)
        return mat_scale(half, mat_add(mat_mul(a, b), mat_mul(b, a)))

    def invariants(self, a):
        return jordan_invariants(self, a)

    def sharp(self, a):
        return jordan_sharp(self, a)

    def cross(self, a, b):
        return mat_sub(mat_sub(self.sharp(mat_add(a, b)), self.sharp(a)), self.sharp(b))

    def trace_form(self, a, b):
        return self.entry_scalar(_trace(mat_mul(a, b)))

    def discriminant_class(self) -> SquareClass:
        """Square class of the quadratic algebra K_J."""
        raise NotImplementedError


class FullMatrix(JordanAlg):
    kind = "full"

    def entry(self, x):
        return self.field(x)

    def basis(self):
        out = []
        for i, j in itertools.product(range(3), repeat=2):
            out.append(tuple(tuple(self.field.one if (r, c) == (i, j) else self.field.zero for c in range(3)) for r in range(3)))
        return out

    def discriminant_class(self):
        return self.field.square_class(1)

    def __repr__(self):
        return f"FullMatrix({self.field!r})"


class Hermitian(JordanAlg):
    """3x3 matrices over K = F(sqrt d) with a_ji = conj(a_ij)."""

    kind = "hermitian"

    def __init__(self, field: Field, d):
        super().__init__(field)
        self.K = QuadExt(field, d)
        self.d = self.K.d

    def entry(self, x):
        return self.K(x)

    def conj(self, x):
        return x.conj()

    def entry_scalar(self, x):
        if not x.is_scalar():
            raise AxiomViolation(f"expected an element of F, got {x}")
        return x.x

    def basis(self):
        z, one, s = self.K(0), self.K(1), self.K.sqrt_d
        out = []

        def mk(entries):
            m = [[z] * 3 for _ in range(3)]
            for (i, j), v in entries.items():
                m[i][j] = v
            return tuple(tuple(r) for r in m)

        for i in range(3):
            out.append(mk({(i, i): one}))
        for i, j in ((1, 2), (2, 0), (0, 1)):
            out.append(mk({(i, j): one, (j, i): one}))
            out.append(mk({(i, j): s, (j, i): -s}))
        return out

    def contains(self, a) -> bool:
        return all(a[j][i] == a[i][j].conj() for i in range(3) for j in range(3))

    def discriminant_class(self):
        return self.field.square_class(self.d)

    def __repr__(self):
        return f"Hermitian({self.field!r}, d={self.d})"


def _trace(a):
    return a[0][0] + a[1][1] + a[2][2]


def jordan_invariants(J: JordanAlg, a):
    """(T_J, S_J, N_J) as elements of F."""
    t = _trace(a)
    s = (
        a[0][0] * a[1][1] - a[0][1] * a[1][0]
        + a[1][1] * a[2][2] - a[1][2] * a[2][1]
        + a[0][0] * a[2][2] - a[0][2] * a[2][0]
    )
    n = (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )
    return J.entry_scalar(t), J.entry_scalar(s), J.entry_scalar(n)


def jordan_sharp(J: JordanAlg, a):
    """a# = a^2 - T(a) a + S(a) 1."""
    t, s, _ = jordan_invariants(J, a)
    return mat_add(mat_sub(mat_mul(a, a), mat_scale(t, a)), mat_scale(s, J.one))


def characteristic_identity(J: JordanAlg, a) -> bool:
    t, s, n = jordan_invariants(J, a)
    a2 = mat_mul(a, a)
    lhs = mat_add(mat_sub(mat_mul(a2, a), mat_scale(t, a2)), mat_sub(mat_scale(s, a), mat_scale(n, J.one)))
    return lhs == J.zero


def jordan_identity(J: JordanAlg, a, b) -> bool:
    """(a o b) o (a o a) = a o (b o (a o a))."""
    a2 = J.product(a, a)
    return J.product(J.product(a, b), a2) == J.product(a, J.product(b, a2))


# Springer decomposition -------------------------------------------------------


@dataclass
class SpringerData:
    J: JordanAlg
    E: CubicAlgebra
    E_basis: list
    C_basis: list
    orthogonality_ok: bool
    reduced_vector: tuple = None
    cube: Cube = None
    algebra: CompAlg2 = None

    # structure on C (elements are 3x3 matrices with zero diagonal)
    def embed(self, x: CubicElem):
        return self.J.diag(*x.coords)

    def is_in_C(self, v) -> bool:
        return all(self.J.trace_form(v, e) == 0 for e in self.E_basis)

    def act(self, x: CubicElem, v):
        """x . v = -x x v."""
        return mat_scale(-1, self.J.cross(self.embed(x), v))

    def split_sharp(self, v):
        """v# = (E-part, C-part)."""
        s = self.J.sharp(v)
        e_part = self.E([self.J.entry_scalar(s[i][i]) for i in range(3)])
        c_part = tuple(tuple(s[i][j] if i != j else self.J.entry(0) for j in range(3)) for i in range(3))
        return e_part, c_part

    def Q(self, v) -> CubicElem:
        return -self.split_sharp(v)[0]

    def beta(self, v):
        return self.split_sharp(v)[1]

    def bQ(self, v, w) -> CubicElem:
        return self.Q(mat_add(v, w)) - self.Q(v) - self.Q(w)

    def norm_form(self, v):
        n = self.bQ(v, self.beta(v))
        c = self.E.scalar_part(n)
        if c is None:
            raise AxiomViolation(f"b_Q(v, beta(v)) = {n} is not a scalar")
        return c

    def delta_C(self, v):
        n = self.norm_form(v)
        return n * n - 4 * self.Q(v).norm()

    def random_vector(self, rng, height: int = 10):
        return _from_C(self, rng, height)

    def module_map(self):
        """(x, y) in E^2 -> x.v + y.beta(v) for the reduced vector v."""
        v = self.reduced_vector
        bv = self.beta(v)
        return lambda w: mat_add(self.act(w[0], v), self.act(w[1], bv))


def _from_C(S: SpringerData, rng, height):
    out = S.J.zero
    for m in S.C_basis:
        out = mat_add(out, mat_scale(S.J.field.random(rng, height), m))
    return out


def _c_candidates(S: SpringerData, max_height: int):
    """C-basis vectors, then combinations by increasing height and support size."""
    yield from S.C_basis
    F = S.J.field
    top = (F.characteristic - 1) // 2 if F.characteristic else max_height
    n = len(S.C_basis)
    for h in range(1, top + 1):
        vals = [t for t in range(-h, h + 1) if t]
        for size in range(2, n + 1):
            for support in itertools.combinations(range(n), size):
                for c in itertools.product(vals, repeat=size):
                    if max(abs(t) for t in c) != h:
                        continue
                    out = S.J.zero
                    for ci, i in zip(c, support):
                        out = mat_add(out, mat_scale(F(ci), S.C_basis[i]))
                    yield out


def springer_decompose(J: JordanAlg, embedding: str = "diagonal", max_height: int = 1) -> SpringerData:
    """Split J = E + C along the diagonal E and read off a cube from a reduced basis of C."""
    if embedding != "diagonal":
        raise UnsupportedShapeError("only the diagonal embedding of split E is implemented")
    F = J.field
    E = CubicAlgebra.split(F)
    basis = J.basis()
    E_basis = basis[:3] if isinstance(J, Hermitian) else [basis[0], basis[4], basis[8]]
    C_basis = [m for m in basis if not any(m is e for e in E_basis)]
    ortho = all(J.trace_form(e, c) == 0 for e in E_basis for c in C_basis)
    S = SpringerData(J, E, E_basis, C_basis, ortho)
    for v in _c_candidates(S, max_height):
        if S.delta_C(v) != 0:
            S.reduced_vector = v
            break
    else:
        raise SearchExhausted(f"no reduced vector in C with coordinates of height <= {max_height}", max_height)
    cube = Cube(F.one, E.zero, -S.Q(S.reduced_vector), -S.norm_form(S.reduced_vector))
    S.cube = cube
    S.algebra = phi(cube)
    if not springer_matches_cube(S):
        raise AxiomViolation("Springer tensors do not match the cube read off the reduced basis")
    return S


def springer_matches_cube(S: SpringerData) -> bool:
    """Check Q and beta against phi(cube) under (x, y) -> x.v + y.beta(v) on 21 probe points."""
    E = S.E
    iota = S.module_map()
    pts = [(b, E.zero) for b in E.basis] + [(E.zero, b) for b in E.basis]
    probes = pts + [(p[0] + q[0], p[1] + q[1]) for p, q in itertools.combinations(pts, 2)]
    C = S.algebra
    for w in probes:
        if S.Q(iota(w)) != C.Q(w) or S.beta(iota(w)) != iota(C.beta(w)):
            return False
    return True


def module_axioms_hold(S: SpringerData, samples: int, rng, height: int = 5) -> bool:
    """e.v stays in C and C is a unital E-module, on random samples."""
    E = S.E
    for _ in range(samples):
        v = _from_C(S, rng, height)
        x, y = E.random(rng, height), E.random(rng, height)
        xv = S.act(x, v)
        if not S.is_in_C(xv):
            return False
        if S.act(x * y, v) != S.act(x, S.act(y, v)) or S.act(E.one, v) != v:
            return False
    return True


def check_springer_axioms(S: SpringerData, samples: int, rng, height: int = 5) -> bool:
    E = S.E
    for _ in range(samples):
        v = _from_C(S, rng, height)
        lam = E.random(rng, height)
        bv = S.beta(v)
        if S.Q(bv) != S.Q(v).sharp():
            return False
        if S.beta(S.act(lam, v)) != S.act(lam.sharp(), bv):
            return False
        if E.scalar_part(S.bQ(v, bv)) is None:
            return False
    return True


def hermitian_vector(J: Hermitian, z1, z2, z3):
    """The off-diagonal Hermitian matrix with coordinates (z1, z2, z3) in K^3."""
    z = J.K(0)
    z1, z2, z3 = J.K(z1), J.K(z2), J.K(z3)
    return (
        (z, z3.conj(), z2),
        (z3, z, z1.conj()),
        (z2.conj(), z1, z),
    )


def hermitian_coords(v):
    return v[2][1], v[2][0].conj(), v[1][0]


def hermitian_formulas(J: Hermitian, z):
    """Q(z) = (N z_i), beta(z) = (conj(z2 z3), conj(z3 z1), conj(z1 z2))."""
    z1, z2, z3 = z
    E = CubicAlgebra.split(J.field)
    Q = E([z1.norm(), z2.norm(), z3.norm()])
    beta = ((z2 * z3).conj(), (z3 * z1).conj(), (z1 * z2).conj())
    return Q, beta


def kc_ke_kj_check(J: JordanAlg, S: SpringerData) -> bool:
    """[K_C][K_E][K_J] is trivial."""
    F = J.field
    kc = F.square_class(S.delta_C(S.reduced_vector))
    ke = S.E.discriminant_algebra()
    kj = J.discriminant_class()
    return (kc * ke * kj).is_trivial


def k_classes(J: JordanAlg, S: SpringerData):
    F = J.field
    return (
        F.square_class(S.delta_C(S.reduced_vector)),
        S.E.discriminant_algebra(),
        J.discriminant_class(),
    )
