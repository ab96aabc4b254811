"""Split cubes as 2x2x2 tensors.

A split cube (a, e, f, b) is the tensor ``T[i][j][k]`` with

    a = T000, b = T111,
    e1 = T100, e3 = T010, e2 = T001,
    f1 = T011, f3 = T101, f2 = T110,

so component r of E = F^3 lives on tensor axis ``AXIS[r]``.  The group
(GL2^3)^0 acts by the tensor action twisted by det^-1, g_r acting on axis
``AXIS[r]``.  This module is the slicing machinery and also the independent
reference for the closed-form unipotent formulas.
"""

from __future__ import annotations

AXIS = (0, 2, 1)


def cube_to_tensor(a, e, f, b):
    T = [[[None] * 2 for _ in range(2)] for _ in range(2)]
    T[0][0][0] = a
    T[1][1][1] = b
    for r in range(3):
        idx = [0, 0, 0]
        idx[AXIS[r]] = 1
        T[idx[0]][idx[1]][idx[2]] = e[r]
        idx = [1, 1, 1]
        idx[AXIS[r]] = 0
        T[idx[0]][idx[1]][idx[2]] = f[r]
    return T


def tensor_to_cube(T):
    e, f = [], []
    for r in range(3):
        idx = [0, 0, 0]
        idx[AXIS[r]] = 1
        e.append(T[idx[0]][idx[1]][idx[2]])
        idx = [1, 1, 1]
        idx[AXIS[r]] = 0
        f.append(T[idx[0]][idx[1]][idx[2]])
    return T[0][0][0], tuple(e), tuple(f), T[1][1][1]


def _det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def act_tensor(gs, T, one):
    """Apply (g1, g2, g3) (2x2 matrices, equal determinants) with det^-1 twist.

    ``gs[r]`` acts on axis ``AXIS[r]``.
    """
    mats = [None, None, None]
    for r in range(3):
        mats[AXIS[r]] = gs[r]
    d = _det2(gs[0])
    for g in gs[1:]:
        if _det2(g) != d:
            raise ValueError("components must share a determinant")
    inv = one / d
    out = [[[None] * 2 for _ in range(2)] for _ in range(2)]
    for i in range(2):
        for j in range(2):
            for k in range(2):
                s = one * 0
                for i2 in range(2):
                    for j2 in range(2):
                        for k2 in range(2):
                            c = mats[0][i][i2] * mats[1][j][j2] * mats[2][k][k2]
                            if c:
                                s = s + c * T[i2][j2][k2]
                out[i][j][k] = s * inv
    return out


def slices(T):
    """The three (A_i, B_i) face pairs, each a pair of 2x2 matrices."""
    A1 = [[T[0][0][0], T[0][0][1]], [T[0][1][0], T[0][1][1]]]
    B1 = [[T[1][0][0], T[1][0][1]], [T[1][1][0], T[1][1][1]]]
    A2 = [[T[0][0][0], T[0][1][0]], [T[1][0][0], T[1][1][0]]]
    B2 = [[T[0][0][1], T[0][1][1]], [T[1][0][1], T[1][1][1]]]
    A3 = [[T[0][0][0], T[1][0][0]], [T[0][0][1], T[1][0][1]]]
    B3 = [[T[0][1][0], T[1][1][0]], [T[0][1][1], T[1][1][1]]]
    return [(A1, B1), (A2, B2), (A3, B3)]


def slice_form(A, B):
    """Coefficients (p, q, r) of -det(A x + B y) = p x^2 + q xy + r y^2."""
    p = -_det2(A)
    r = -_det2(B)
    q = -(A[0][0] * B[1][1] + B[0][0] * A[1][1] - A[0][1] * B[1][0] - B[0][1] * A[1][0])
    return p, q, r
