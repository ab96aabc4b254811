"""Brute-force orbit census of M_E(F_p) on the generic cubes of V_E(F_p).

Cubes are packed into integers ``sum(c_i * p**i)`` over the coordinate
order (a, e0, e1, e2, f0, f1, f2, b).  Each generator is applied to a whole
BFS frontier at once with numpy.  The group is generated by n+(b_i), n-(b_i)
for the basis b_i of E (these generate SL2(E)) together with diag(1, g) for a
generator g of F_p^x.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .cube import Cube
from .errors import ValidationError
from .etale import CubicAlgebra
from .field import PrimeField

SUPPORTED_PRIMES = (5, 7)


class VecAlgebra:
    """Arithmetic on arrays of E-elements (shape (n, 3)) modulo p."""

    def __init__(self, E: CubicAlgebra):
        p = E.field.p
        self.p = p
        self.C = np.array([[[int(c) for c in v] for v in row] for row in E.constants], dtype=np.int64)
        self.unit = np.array([int(c) for c in E.unit_coords], dtype=np.int64)
        self.traces = np.array([int(t) for t in E.basis_traces], dtype=np.int64)
        self.half = pow(2, -1, p)

    def mul(self, x, y):
        return np.einsum("ni,nj,ijk->nk", x, y, self.C) % self.p

    def mul_const(self, x, u):
        # right multiplication by a fixed element u
        L = np.einsum("j,ijk->ik", u, self.C)
        return (x @ L) % self.p

    def trace(self, x):
        return (x @ self.traces) % self.p

    def sharp(self, x):
        x2 = self.mul(x, x)
        t = self.trace(x)
        s = ((t * t - self.trace(x2)) * self.half) % self.p
        return (x2 - t[:, None] * x + s[:, None] * self.unit) % self.p

    def norm(self, x):
        return self.trace(self.mul(x, self.sharp(x))) * pow(3, -1, self.p) % self.p

    def cross(self, x, y):
        return (self.sharp((x + y) % self.p) - self.sharp(x) - self.sharp(y)) % self.p


def unpack(idx, p):
    idx = np.asarray(idx, dtype=np.int64)
    coords = np.empty((idx.shape[0], 8), dtype=np.int64)
    rest = idx.copy()
    for i in range(8):
        coords[:, i] = rest % p
        rest //= p
    return coords


def pack(coords, p):
    weights = p ** np.arange(8, dtype=np.int64)
    return coords @ weights


def vec_delta(V: VecAlgebra, coords):
    p = V.p
    a, e, f, b = coords[:, 0], coords[:, 1:4], coords[:, 4:7], coords[:, 7]
    ef = V.mul(e, f)
    out = a * a % p * b % p * b
    out -= 2 * a * b % p * V.trace(ef)
    out += V.trace(V.mul(ef, ef))
    out += 4 * a * V.norm(f)
    out += 4 * b * V.norm(e)
    out -= 2 * V.trace(V.mul(V.sharp(e), V.sharp(f)))
    return out % p


def _apply_lower(V, coords, u):
    p = V.p
    a, e, f, b = coords[:, 0], coords[:, 1:4], coords[:, 4:7], coords[:, 7]
    U = np.broadcast_to(u, e.shape)
    us = V.sharp(U[:1])[0]
    nu = int(V.norm(U[:1])[0])
    out = np.empty_like(coords)
    out[:, 0] = a
    out[:, 1:4] = (e + a[:, None] * u) % p
    out[:, 4:7] = (f + V.cross(e, U) + a[:, None] * us) % p
    out[:, 7] = (b + V.trace(V.mul_const(f, u)) + V.trace(V.mul_const(e, us)) + a * nu) % p
    return out


def _apply_upper(V, coords, u):
    p = V.p
    a, e, f, b = coords[:, 0], coords[:, 1:4], coords[:, 4:7], coords[:, 7]
    U = np.broadcast_to(u, e.shape)
    us = V.sharp(U[:1])[0]
    nu = int(V.norm(U[:1])[0])
    out = np.empty_like(coords)
    out[:, 0] = (a + V.trace(V.mul_const(e, u)) + V.trace(V.mul_const(f, us)) + b * nu) % p
    out[:, 1:4] = (e + V.cross(f, U) + b[:, None] * us) % p
    out[:, 4:7] = (f + b[:, None] * u) % p
    out[:, 7] = b
    return out


def _apply_scalar_torus(V, coords, c):
    # diag(1, c): (a, e, f, b) -> (a/c, e, c f, c^2 b)
    p = V.p
    ci = pow(c, -1, p)
    out = coords.copy()
    out[:, 0] = coords[:, 0] * ci % p
    out[:, 4:7] = coords[:, 4:7] * c % p
    out[:, 7] = coords[:, 7] * c * c % p
    return out


def _primitive_root(p):
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in range(2, p) if (p - 1) % q == 0 and all(q % r for r in range(2, q))):
            return g
    raise ValueError(p)


def factor_degrees(E: CubicAlgebra):
    """Degrees of the residue fields of E over F_p, e.g. (1, 1, 1) when split."""
    F = E.field
    kind = E.kind
    if kind == "split":
        return (1, 1, 1)
    if kind == "quad_pair":
        return (1, 1, 1) if F.is_square(E.shape[1]) else (1, 2)
    _, c0, c1, c2 = E.shape
    roots = sum(1 for t in F.elements() if t * t * t + c2 * t * t + c1 * t + c0 == 0)
    return {0: (3,), 1: (1, 2), 3: (1, 1, 1)}[roots]


def group_order(E: CubicAlgebra) -> int:
    """|M_E(F_p)| = |SL2(E)| * (p - 1)."""
    p = E.field.p
    n = p - 1
    for deg in factor_degrees(E):
        q = p**deg
        n *= q * (q * q - 1)
    return n


def norm_one_order(E: CubicAlgebra) -> int:
    """|E^1|; the norm E^x -> F_p^x is onto, so this is |E^x| / (p - 1)."""
    p = E.field.p
    units = 1
    for deg in factor_degrees(E):
        units *= p**deg - 1
    return units // (p - 1)


@dataclass
class Orbit:
    orbit_id: int
    size: int
    delta_class: int
    representative: int
    delta_classes_seen: set = field(default_factory=set)

    @property
    def constant_delta_class(self) -> bool:
        return self.delta_classes_seen == {self.delta_class}


@dataclass
class OrbitTable:
    p: int
    algebra: CubicAlgebra
    generic_count: int
    orbits: list
    group_order: int
    distinguished_orbit_id: int
    distinguished_stabilizer: int

    def representative_cube(self, orbit: Orbit) -> Cube:
        c = [int(x) for x in unpack([orbit.representative], self.p)[0]]
        return Cube.make(self.algebra, c[0], c[1:4], c[4:7], c[7])

    @property
    def distinguished(self) -> Orbit:
        return self.orbits[self.distinguished_orbit_id]

    def orbit_stabilizer_ok(self) -> bool:
        return self.distinguished.size * self.distinguished_stabilizer == self.group_order

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["orbit_id", "size", "delta_class", "representative"])
        for o in self.orbits:
            c = self.representative_cube(o)
            rep = [int(c.a), [int(x) for x in c.e.coords], [int(x) for x in c.f.coords], int(c.b)]
            w.writerow([o.orbit_id, o.size, o.delta_class, json.dumps(rep, separators=(",", ":"))])
        return buf.getvalue()


def enumerate_orbits(p: int, E: CubicAlgebra) -> OrbitTable:
    if p not in SUPPORTED_PRIMES:
        raise ValidationError(f"orbit census supports p in {SUPPORTED_PRIMES}, got {p}")
    if not isinstance(E.field, PrimeField) or E.field.p != p:
        raise ValidationError("algebra must be defined over F_p")
    F = E.field
    V = VecAlgebra(E)
    total = p**8
    all_coords = unpack(np.arange(total, dtype=np.int64), p)
    delta = vec_delta(V, all_coords)
    del all_coords
    nonres = F.nonresidue
    qr = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        qr[x] = 1 if pow(x, (p - 1) // 2, p) == 1 else nonres
    cls = qr[delta]  # 0 for degenerate

    basis = [np.array([int(c) for c in b.coords], dtype=np.int64) for b in E.basis]
    g = _primitive_root(p)
    moves = [lambda c, u=u: _apply_lower(V, c, u) for u in basis]
    moves += [lambda c, u=u: _apply_upper(V, c, u) for u in basis]
    moves.append(lambda c: _apply_scalar_torus(V, c, g))

    label = np.full(total, -1, dtype=np.int32)
    label[cls == 0] = -2
    orbits = []
    cursor = 0
    while True:
        rest = np.flatnonzero(label[cursor:] == -1)
        if rest.size == 0:
            break
        start = cursor + int(rest[0])
        cursor = start
        oid = len(orbits)
        label[start] = oid
        frontier = np.array([start], dtype=np.int64)
        size = 1
        while frontier.size:
            coords = unpack(frontier, p)
            found = []
            for move in moves:
                img = pack(move(coords), p)
                img = np.unique(img)
                new = img[label[img] == -1]
                if new.size:
                    label[new] = oid
                    found.append(new)
            frontier = np.unique(np.concatenate(found)) if found else np.empty(0, dtype=np.int64)
            size += frontier.size
        members = label == oid
        seen = set(int(x) for x in np.unique(cls[members]))
        orbits.append(Orbit(oid, size, int(cls[start]), start, seen))

    v0 = np.zeros((1, 8), dtype=np.int64)
    v0[0, 0] = 1
    v0[0, 7] = p - 1
    d_id = int(label[int(pack(v0, p)[0])])
    return OrbitTable(
        p=p,
        algebra=E,
        generic_count=int((cls != 0).sum()),
        orbits=orbits,
        group_order=group_order(E),
        distinguished_orbit_id=d_id,
        distinguished_stabilizer=2 * norm_one_order(E),
    )
