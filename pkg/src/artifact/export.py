"""String-model meshes: sampled ruling lines written as OBJ line elements.

Lines are sampled from the exact data of a catalog entry. Genus-0 entries use
the homogenized line curve w(s0 : s1) with (s0, s1) = (cos th, sin th) on the
half-step grid th = (k + 1/2) pi / N. Infinity is an ordinary point of this
grid's circle; the half step keeps the samples off t = 0 and t = infinity,
where the normal forms place their coordinate lines. Genus-one entries walk the real
part of the double cover over the directrix, one closed loop per real branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .catalog import CatalogEntry, entry_equation, instantiate
from .ruled_family import plucker_curve
from .scalar_poly import UNI, homog_degree, uni_coeffs

CHART_NAMES = ("t1", "t2", "t3", "t4")
FALLBACK = (3, 2, 1, 0)
RESIDUAL_TOL = 1e-9


class ExportError(ValueError):
    pass


@dataclass(frozen=True)
class RulingMesh:
    entry_id: str
    segments: tuple  # ((x, y, z), (x, y, z)) pairs
    samples: int
    chart: int
    clip: float
    max_residual: float

    @property
    def chart_name(self) -> str:
        return CHART_NAMES[self.chart]


# ---------------------------------------------------------------- lines

def _pairs():
    return ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def _line_from_bivector(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    M = np.zeros((4, 4))
    for (i, j), p in zip(_pairs(), w):
        M[i, j] = p
        M[j, i] = -p
    U, _, _ = np.linalg.svd(M)
    return U[:, 0], U[:, 1]


def _genus0_lines(entry: CatalogEntry, samples: int) -> list:
    curve = plucker_curve(entry.family)
    d = curve.degree
    coeffs = []
    for p in curve.w:
        c = [float(x) for x in uni_coeffs(p)]
        coeffs.append(c + [0.0] * (d + 1 - len(c)))
    lines = []
    for k in range(samples):
        th = math.pi * (k + 0.5) / samples
        s0, s1 = math.cos(th), math.sin(th)
        w = np.array([sum(c[j] * s1**j * s0 ** (d - j) for j in range(d + 1)) for c in coeffs])
        lines.append(_line_from_bivector(w))
    return lines


def _binary_eval(coeffs, s0, s1) -> float:
    n = len(coeffs) - 1
    return sum(c * s0 ** (n - k) * s1**k for k, c in enumerate(coeffs))


def _positive_arcs(disc) -> list[tuple[float, float]]:
    """Arcs of [0, pi) where the binary quartic disc(cos th, sin th) is >= 0."""
    d = [float(x) for x in disc]
    roots = []
    if abs(d[-1]) < 1e-300:
        roots.append(math.pi / 2)
    poly = np.trim_zeros(np.array(d[::-1]), "f")  # numpy wants highest degree first in tan
    if len(poly) > 1:
        for r in np.roots(poly):
            if abs(r.imag) < 1e-10:
                roots.append(math.atan(r.real) % math.pi)
    roots = sorted(set(round(r, 14) for r in roots))
    if not roots:
        return [(0.0, math.pi)] if _binary_eval(d, 1.0, 0.0) >= 0 else []
    arcs = []
    for i, a in enumerate(roots):
        b = roots[i + 1] if i + 1 < len(roots) else roots[0] + math.pi
        mid = 0.5 * (a + b)
        if _binary_eval(d, math.cos(mid), math.sin(mid)) > 0:
            arcs.append((a, b))
    return arcs


def _loop_params(disc, samples: int) -> list[tuple[float, int]]:
    """(theta, branch) pairs evenly spaced along the real loops of y^2 = disc."""
    arcs = _positive_arcs(disc)
    if not arcs:
        raise ExportError("the surface has no real lines")
    full = len(arcs) == 1 and abs(arcs[0][1] - arcs[0][0] - math.pi) < 1e-12
    lengths = [2 * (b - a) for a, b in arcs]
    total = sum(lengths)
    out = []
    for k in range(samples):
        pos = (k + 0.5) * total / samples
        for (a, b), ell in zip(arcs, lengths):
            if pos <= ell or (a, b) == arcs[-1]:
                half = ell / 2
                if full:
                    out.append((a + (pos % half), 1 if pos < half else -1))
                elif pos < half:
                    out.append((a + pos, 1))
                else:
                    out.append((b - (pos - half), -1))
                break
            pos -= ell
    return out


def _n15_lines(entry: CatalogEntry, samples: int) -> list:
    h = [float(x) for x in entry.data["H_coeffs"]]
    disc = [-x for x in h]
    lines = []
    for th, sgn in _loop_params(disc, samples):
        s0, s1 = math.cos(th), math.sin(th)
        r = sgn * math.sqrt(max(0.0, -_binary_eval(h, s0, s1)))
        P = np.array([s0, s1, 0.0, 0.0])
        Q = np.array([r * s1, -r * s0, s0, s1])
        lines.append((P, Q))
    return lines


def _n16_abc(c, s0, s1):
    return tuple(sum(float(c[i][j]) * s0 ** (2 - i) * s1**i for i in range(3)) for j in range(3))


def _n16_lines(entry: CatalogEntry, samples: int) -> list:
    c = entry.data["biform"].c
    disc = _n16_disc_coeffs(c)
    lines = []
    for th, sgn in _loop_params(disc, samples):
        s0, s1 = math.cos(th), math.sin(th)
        A, B, C = _n16_abc(c, s0, s1)
        r = sgn * math.sqrt(max(0.0, B * B - 4 * A * C))
        if abs(C) >= abs(A):
            y = (2 * C, -B + r)
        else:
            y = (-B - r, 2 * A)
        lines.append((np.array([s0, s1, 0.0, 0.0]), np.array([0.0, 0.0, y[0], y[1]])))
    return lines


def _n16_disc_coeffs(c) -> list:
    """B^2 - 4AC as a binary quartic in (s0, s1), ascending in s1."""
    t = UNI.gens[0]
    A, B, C = (sum((c[i][j] * t**i for i in range(3)), UNI.zero) for j in range(3))
    D = B * B - 4 * A * C
    cs = uni_coeffs(D) if D else []
    return list(cs) + [0] * (5 - len(cs))


def real_lines(entry: CatalogEntry, samples: int) -> list:
    if entry.family is not None:
        return _genus0_lines(entry, samples)
    kind = entry.data.get("ruling")
    if kind == "n15":
        return _n15_lines(entry, samples)
    if kind == "n16":
        return _n16_lines(entry, samples)
    raise ExportError(f"{entry.id} has no family or ruling parametrization to sample")


# ---------------------------------------------------------------- meshes

def _float_form(F):
    terms = [(float(c), m) for m, c in F.terms()]
    norm = math.sqrt(sum(c * c for c, _ in terms))
    return terms, norm


def _eval_form(terms, x) -> float:
    return sum(c * x[0] ** m[0] * x[1] ** m[1] * x[2] ** m[2] * x[3] ** m[3] for c, m in terms)


def _pick_chart(lines, chart) -> int:
    def ok(c):
        return all(max(abs(P[c]), abs(Q[c])) > 1e-12 * max(np.abs(P).max(), np.abs(Q).max())
                   for P, Q in lines)
    if chart is not None:
        if not ok(chart):
            raise ExportError(f"a sampled line lies in {CHART_NAMES[chart]} = 0")
        return chart
    for c in FALLBACK:
        if ok(c):
            return c
    raise ExportError("no affine chart contains all sampled lines")


def _segment(P, Q, c: int, clip: float):
    pc, qc = P[c], Q[c]
    X0 = (pc * P + qc * Q) / (pc * pc + qc * qc)
    D = qc * P - pc * Q
    keep = [i for i in range(4) if i != c]
    x0 = X0[keep]
    d = D[keep]
    d = d / np.linalg.norm(d)
    foot = x0 - np.dot(x0, d) * d
    return foot - clip * d, foot + clip * d


def _lift(x, c: int) -> np.ndarray:
    return np.insert(np.asarray(x, dtype=float), c, 1.0)


def build_mesh(entry_id: str, params: dict | None = None, samples: int = 64,
               chart: int | None = None, clip: float = 2.0) -> RulingMesh:
    if not isinstance(samples, int) or samples < 2:
        raise ExportError("samples must be an integer >= 2")
    if clip <= 0:
        raise ExportError("clip must be positive")
    entry = instantiate(entry_id, params)
    if entry.status == "recorded":
        raise ExportError(f"{entry_id} is recorded only and has no family")
    lines = real_lines(entry, samples)
    c = _pick_chart(lines, chart)
    F = entry_equation(entry)
    terms, norm = _float_form(F)
    deg = homog_degree(F)
    segs = []
    worst = 0.0
    for P, Q in lines:
        a, b = _segment(P, Q, c, clip)
        for e in (a, b):
            h = _lift(e, c)
            res = abs(_eval_form(terms, h)) / (norm * np.linalg.norm(h) ** deg)
            worst = max(worst, res)
        segs.append((tuple(float(v) for v in a), tuple(float(v) for v in b)))
    if worst > RESIDUAL_TOL:
        raise ExportError(f"endpoint residual {worst:.3e} exceeds {RESIDUAL_TOL}")
    return RulingMesh(entry.id, tuple(segs), samples, c, float(clip), worst)


def mesh_to_obj(mesh: RulingMesh) -> str:
    out = [f"# ruling mesh for {mesh.entry_id}",
           f"# samples {mesh.samples} chart {mesh.chart_name}=1 clip {mesh.clip:.17g}"]
    for a, b in mesh.segments:
        for p in (a, b):
            out.append("v " + " ".join(f"{x:.17g}" for x in p))
    for k in range(len(mesh.segments)):
        out.append(f"l {2 * k + 1} {2 * k + 2}")
    return "\n".join(out) + "\n"


def export_obj(entry_id: str, params: dict | None = None, samples: int = 64,
               chart: int | None = None, clip: float = 2.0, out: str | None = None) -> RulingMesh:
    """Build the ruling mesh and write it as OBJ (to `out` when given)."""
    mesh = build_mesh(entry_id, params, samples, chart, clip)
    if out is not None:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(mesh_to_obj(mesh))
    return mesh


def segment_distance(s1, s2) -> float:
    """Minimum distance between two 3D segments."""
    p, q = np.asarray(s1[0]), np.asarray(s1[1])
    r, s = np.asarray(s2[0]), np.asarray(s2[1])
    d1, d2, w = q - p, s - r, p - r
    a, b, c = d1 @ d1, d1 @ d2, d2 @ d2
    d, e = d1 @ w, d2 @ w
    den = a * c - b * b
    cands = []
    if den > 1e-15:
        sc = np.clip((b * e - c * d) / den, 0, 1)
        tc = np.clip((a * e - b * d) / den, 0, 1)
        cands.append((sc, tc))
    for sc in (0.0, 1.0):
        cands.append((sc, np.clip((e + b * sc) / c, 0, 1)))
    for tc in (0.0, 1.0):
        cands.append((np.clip((b * tc - d) / a, 0, 1), tc))
    return min(float(np.linalg.norm(w + sc * d1 - tc * d2)) for sc, tc in cands)
