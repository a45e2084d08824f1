import itertools
import math

import numpy as np
import pytest

from artifact.catalog import entry_equation, instantiate, list_entries
from artifact.export import ExportError, build_mesh, export_obj, mesh_to_obj, segment_distance

EXPORTABLE = [e for e in list_entries()
              if instantiate(e).status == "verified" and e != "steiner"]


def endpoint_residual(F, point, chart):
    """|F(x)| / (||coeffs|| ||x||^4) at the lifted endpoint, from sympy's own evaluation."""
    x = list(point)
    x.insert(chart, 1.0)
    val = float(F.as_expr().subs(dict(zip(F.ring.symbols, x))).evalf(30))
    norm = math.sqrt(sum(float(c) ** 2 for c in F.coeffs()))
    return abs(val) / (norm * np.linalg.norm(x) ** 4)


def parse_obj(text):
    verts, lines = [], []
    for row in text.splitlines():
        if row.startswith("v "):
            verts.append(tuple(float(v) for v in row.split()[1:]))
        elif row.startswith("l "):
            lines.append(tuple(int(v) for v in row.split()[1:]))
        else:
            assert row.startswith("#")
    return verts, lines


def test_xiii5_segments_lie_on_the_surface():
    mesh = build_mesh("xiii-5", samples=64)
    assert len(mesh.segments) == 64 and mesh.chart_name == "t4"
    F = entry_equation(instantiate("xiii-5"))
    for seg in mesh.segments:
        for p in seg:
            assert endpoint_residual(F, p, mesh.chart) <= 1e-9


def test_tangent_developable_lines_do_not_meet():
    mesh = build_mesh("tc-tangent", samples=32)
    assert len(mesh.segments) == 32
    d = min(segment_distance(a, b) for a, b in itertools.combinations(mesh.segments, 2))
    assert d > 0


def test_segment_distance():
    assert segment_distance(((0, 0, 0), (1, 0, 0)), ((0, 1, 0), (1, 1, 0))) == pytest.approx(1)
    assert segment_distance(((0, 0, 0), (2, 0, 0)), ((1, -1, 0), (1, 1, 0))) == pytest.approx(0)
    assert segment_distance(((0, 0, 0), (1, 0, 0)), ((2, 0, 1), (3, 0, 1))) == pytest.approx(math.sqrt(2))


@pytest.mark.parametrize("samples", [0, 1, -4])
def test_bad_sample_counts(samples):
    with pytest.raises(ExportError):
        build_mesh("N10a", samples=samples)


def test_entries_without_ruling_are_refused():
    with pytest.raises(ExportError):
        build_mesh("xiii-4", samples=8)
    with pytest.raises(ExportError):
        build_mesh("steiner", samples=8)


def test_bad_clip():
    with pytest.raises(ExportError):
        build_mesh("N10a", samples=8, clip=0)


@pytest.mark.parametrize("eid", EXPORTABLE)
def test_every_entry_exports(eid):
    mesh = build_mesh(eid, samples=12)
    assert len(mesh.segments) >= 12 and mesh.max_residual <= 1e-9
    for a, b in mesh.segments:
        assert np.linalg.norm(np.subtract(b, a)) == pytest.approx(2 * mesh.clip)


def test_obj_is_deterministic(tmp_path):
    one, two = tmp_path / "a.obj", tmp_path / "b.obj"
    export_obj("N16", samples=40, out=str(one))
    export_obj("N16", samples=40, out=str(two))
    assert one.read_bytes() == two.read_bytes()


def test_obj_records():
    mesh = build_mesh("N1a", samples=10)
    verts, lines = parse_obj(mesh_to_obj(mesh))
    assert len(verts) == 20 and lines == [(2 * k + 1, 2 * k + 2) for k in range(10)]
    assert verts[0] == mesh.segments[0][0]


def test_chart_choice():
    mesh = build_mesh("N10a", samples=16, chart=2)
    assert mesh.chart_name == "t3" and mesh.max_residual <= 1e-9
    assert build_mesh("N10a", samples=16).chart_name == "t4"
