"""Exterior algebra of a rank-4 free module.

Vectors are 4-tuples, bivectors 6-tuples in the basis order
e12, e13, e14, e23, e24, e34, and elements of the third exterior power are
stored as covectors under

    e2^e3^e4 -> +e1*,  e1^e3^e4 -> -e2*,  e1^e2^e4 -> +e3*,  e1^e2^e3 -> -e4*,

so that ``wedge3(u, v, x)`` paired with a vector y equals det(u, v, x, y)
and the top power is identified with the ring through e1^e2^e3^e4 -> 1.
Entries may come from any commutative ring (rationals or polynomials).
"""

from __future__ import annotations

from typing import Sequence

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PAIR_INDEX = {p: k for k, p in enumerate(PAIRS)}
LABELS = ("p12", "p13", "p14", "p23", "p24", "p34")


class ExteriorError(ValueError):
    pass


def _is_zero(x) -> bool:
    return not x


def wedge2(u: Sequence, v: Sequence) -> tuple:
    if len(u) != 4 or len(v) != 4:
        raise ExteriorError("wedge2 needs two 4-vectors")
    return tuple(u[i] * v[j] - u[j] * v[i] for i, j in PAIRS)


def plucker_form(w1: Sequence, w2: Sequence):
    """Symmetric pairing with w ^ w' = plucker_form(w, w') e1^e2^e3^e4."""
    return (w1[0] * w2[5] + w1[5] * w2[0]
            - w1[1] * w2[4] - w1[4] * w2[1]
            + w1[2] * w2[3] + w1[3] * w2[2])


def plucker_quadric(w: Sequence):
    """p12 p34 - p13 p24 + p14 p23 (half the self-pairing)."""
    return w[0] * w[5] - w[1] * w[4] + w[2] * w[3]


def is_decomposable(w: Sequence) -> bool:
    if all(_is_zero(c) for c in w):
        raise ExteriorError("zero bivector")
    return _is_zero(plucker_form(w, w))


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def wedge3(u: Sequence, v: Sequence, x: Sequence) -> tuple:
    """Covector c with c . y = det[y; u; v; x] for every vector y."""
    rows = (u, v, x)
    out = []
    for i in range(4):
        cols = [j for j in range(4) if j != i]
        minor = _det3([[r[j] for j in cols] for r in rows])
        out.append(minor if i % 2 == 0 else -minor)
    return tuple(out)


def bivector_wedge_vector(w: Sequence, v: Sequence) -> tuple:
    """w ^ v as a covector; equals wedge3(a, b, v) when w = a ^ b."""
    if len(v) != 4:
        raise ExteriorError("need a 4-vector")
    out = [0, 0, 0, 0]
    for (i, j), p in zip(PAIRS, w):
        for k in range(4):
            if k == i or k == j:
                continue
            # e_i ^ e_j ^ e_k maps to +-e_m* for the missing index m
            m = 6 - i - j - k
            sign = _perm_sign((m, i, j, k))
            out[m] = out[m] + (p * v[k] if sign > 0 else -(p * v[k]))
    return tuple(out)


def _perm_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


def pair_covector(c: Sequence, v: Sequence):
    return c[0] * v[0] + c[1] * v[1] + c[2] * v[2] + c[3] * v[3]


def dual_map(w: Sequence) -> tuple:
    """f(e12)=e34*, f(e13)=-e24*, f(e14)=e23*, f(e23)=e14*, f(e24)=-e13*, f(e34)=e12*."""
    p12, p13, p14, p23, p24, p34 = w
    return (p34, -p24, p23, p14, -p13, p12)


def contract(w: Sequence, c: Sequence) -> tuple:
    """Interior product of a bivector with a covector: a vector on the line w."""
    out = [0, 0, 0, 0]
    for (i, j), p in zip(PAIRS, w):
        # (e_i ^ e_j) -| c = c_i e_j - c_j e_i
        out[j] = out[j] + c[i] * p
        out[i] = out[i] - c[j] * p
    return tuple(out)
