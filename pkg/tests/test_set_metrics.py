import numpy as np
import pytest

from hullmaps import (
    CapFocus,
    EmptyProbeError,
    EmptySetError,
    RequiresDegenerateError,
    SamplePlan,
    arctan_family,
    build_configuration,
    build_hull,
    concave_turn_indices,
    count_concave_runs,
    degenerate_limit_probe,
    directed_hausdorff,
    face_limit_probe,
    graph_limit_demo,
    nonconvexity_probe,
    symmetric_hausdorff,
    theorem_sweep,
)
from hullmaps.errors import DimensionUnsupportedError


def test_directed_single_pair():
    assert directed_hausdorff([[0.0, 0.0]], [[3.0, 4.0]]) == pytest.approx(5.0)


def test_directed_containment_is_zero(square_hull):
    from hullmaps import sample_boundary

    pts, _ = sample_boundary(square_hull, 10, seed=0)
    assert directed_hausdorff(pts, square_hull) < 1e-12


def test_directed_per_point_projection():
    a = [[0.0, 0.0], [1.0, 0.0]]
    seg = np.column_stack([np.linspace(0, 1, 1001), np.ones(1001)])
    assert directed_hausdorff(a, seg) == pytest.approx(1.0, abs=1e-9)


def test_directed_empty_raises():
    with pytest.raises(EmptySetError):
        directed_hausdorff(np.empty((0, 2)), [[0.0, 0.0]])
    with pytest.raises(EmptySetError):
        directed_hausdorff([[0.0, 0.0]], np.empty((0, 2)))


def test_symmetric_identical_sets():
    a = np.random.default_rng(0).standard_normal((20, 3))
    assert symmetric_hausdorff(a, a) == 0.0


def test_symmetric_asymmetry_made_symmetric():
    assert symmetric_hausdorff([[0.0]], [[0.0], [10.0]]) == pytest.approx(10.0)


def test_symmetric_matches_brute_force():
    rng = np.random.default_rng(2)
    a = rng.standard_normal((50, 2))
    b = rng.standard_normal((50, 2))
    d_ab = max(min(np.linalg.norm(x - y) for y in b) for x in a)
    d_ba = max(min(np.linalg.norm(x - y) for y in a) for x in b)
    assert symmetric_hausdorff(a, b) == pytest.approx(max(d_ab, d_ba), abs=1e-12)


def test_hausdorff_metric_axioms():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = rng.standard_normal((8, 2))
        b = rng.standard_normal((9, 2))
        c = rng.standard_normal((7, 2))
        dab = symmetric_hausdorff(a, b)
        dba = symmetric_hausdorff(b, a)
        assert dab == pytest.approx(dba, abs=1e-12)
        assert symmetric_hausdorff(a, a) <= 1e-12
        dac = symmetric_hausdorff(a, c)
        dcb = symmetric_hausdorff(c, b)
        assert dab <= dac + dcb + 1e-12


def test_sweep_epsilon_validation(triangle, triangle_hull):
    plan = SamplePlan(dim=2, strategy="uniform_grid_2d", count=64)
    with pytest.raises(ValueError):
        theorem_sweep(triangle, triangle_hull, [1e-2, 1e-1], plan, 10)
    with pytest.raises(ValueError):
        theorem_sweep(triangle, triangle_hull, [0.0], plan, 10)


def test_triangle_sweep(triangle, triangle_hull):
    plan = SamplePlan(dim=2, strategy="uniform_grid_2d", count=4000, seed=3)
    rep = theorem_sweep(triangle, triangle_hull, [1e-1, 1e-2, 1e-3, 1e-4], plan,
                        boundary_per_facet=100, cap_count_per_facet=1000,
                        ladder_cap_count=500)
    outs = rep.outer_dists
    assert all(o > 0 for o in outs)  # images are strictly interior
    assert all(b < a for a, b in zip(outs, outs[1:]))
    assert 0.8 <= rep.slope <= 1.2
    assert rep.records[-1].inner_dist < 0.05 * rep.diameter


def test_tetrahedron_inner_at_moderate_eps(tetrahedron, tetrahedron_hull):
    plan = SamplePlan(dim=3, strategy="fibonacci_3d", count=3000, seed=5)
    rep = theorem_sweep(tetrahedron, tetrahedron_hull, [1e-1, 1e-2], plan,
                        boundary_per_facet=100, cap_count_per_facet=1000,
                        ladder_cap_count=500)
    assert rep.records[-1].inner_dist < 0.1 * rep.diameter


def test_face_limit_probe_triangle_edge(triangle, triangle_hull):
    edge = [f for f in triangle_hull.faces
            if f.dim == 1 and set(f.vertex_indices) == {1, 2}][0]
    plan = SamplePlan(dim=2, strategy="uniform_grid_2d", count=2000, seed=5,
                      focus=CapFocus(0.4))
    rep = face_limit_probe(triangle, triangle_hull, edge.face_id,
                           [1e-1, 1e-2, 1e-3, 1e-4], plan)
    img2face = [r.image_to_face for r in rep.records]
    face2img = [r.face_to_image for r in rep.records]
    assert all(b < a for a, b in zip(img2face, img2face[1:]))
    assert img2face[-1] < 0.05 * triangle_hull.diameter
    assert face2img[-1] < 0.05 * triangle_hull.diameter


def test_face_limit_probe_negative_control(triangle, triangle_hull):
    """Probe confined to one vertex cell: the edge is not approached as a set."""
    edge = [f for f in triangle_hull.faces
            if f.dim == 1 and set(f.vertex_indices) == {1, 2}][0]
    vertex = [f for f in triangle_hull.faces if f.vertex_indices == (1,)][0]
    plan = SamplePlan(dim=2, strategy="uniform_grid_2d", count=2000, seed=5,
                      focus=CapFocus(0.2, face_id=vertex.face_id))
    rep = face_limit_probe(triangle, triangle_hull, edge.face_id, [1e-4], plan)
    edge_len = np.sqrt(2.0)
    assert rep.records[0].face_to_image > 0.2 * edge_len
    assert rep.records[0].image_to_face < 0.01


def test_face_limit_probe_empty(triangle, triangle_hull):
    """Focusing on a vertex outside the probed face leaves no usable samples."""
    edge = [f for f in triangle_hull.faces
            if f.dim == 1 and set(f.vertex_indices) == {1, 2}][0]
    outside_vertex = [f for f in triangle_hull.faces if f.vertex_indices == (0,)][0]
    plan = SamplePlan(dim=2, strategy="uniform_grid_2d", count=100, seed=1,
                      focus=CapFocus(0.1, face_id=outside_vertex.face_id))
    with pytest.raises(EmptyProbeError):
        face_limit_probe(triangle, triangle_hull, edge.face_id, [1e-3], plan)


def test_face_limit_probe_guards(triangle, triangle_hull):
    vertex = [f for f in triangle_hull.faces if f.dim == 0][0]
    plan = SamplePlan(dim=2, strategy="uniform_grid_2d", count=10, focus=CapFocus(0.1))
    with pytest.raises(ValueError):
        face_limit_probe(triangle, triangle_hull, vertex.face_id, [1e-2], plan)
    edge = [f for f in triangle_hull.faces if f.dim == 1][0]
    no_focus = SamplePlan(dim=2, strategy="uniform_grid_2d", count=10)
    with pytest.raises(ValueError):
        face_limit_probe(triangle, triangle_hull, edge.face_id, [1e-2], no_focus)


def test_degenerate_probe_collinear():
    cfg = build_configuration([[0.0, 0.0], [0.5, 0.0], [1.0, 0.0]])
    plan = SamplePlan(dim=2, strategy="uniform_grid_2d", count=2000, seed=2)
    rep = degenerate_limit_probe(cfg, [1e-1, 1e-2, 1e-3, 1e-4], plan)
    assert rep.span_dim == 1
    assert rep.records[-1].sym_dist < 0.02 * rep.extent


def test_degenerate_probe_coplanar():
    cfg = build_configuration([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]])
    plan = SamplePlan(dim=3, strategy="fibonacci_3d", count=2000, seed=2)
    rep = degenerate_limit_probe(cfg, [1e-1, 1e-2, 1e-3], plan)
    assert rep.span_dim == 2
    assert rep.records[-1].sym_dist < 0.05 * rep.extent


def test_degenerate_probe_guard(triangle):
    plan = SamplePlan(dim=2, strategy="uniform_grid_2d", count=100)
    with pytest.raises(RequiresDegenerateError):
        degenerate_limit_probe(triangle, [1e-2], plan)


def test_graph_demo_hand_value():
    assert float(arctan_family(0.1, 0.1)) == pytest.approx(0.45, abs=1e-12)
    assert float(arctan_family(0.0, 0.37)) == 0.0


def test_graph_demo_sweep():
    recs = graph_limit_demo([0.1, 0.01, 0.001], np.linspace(-10, 10, 10001))
    dists = [r.sym_dist for r in recs]
    assert all(b < a for a, b in zip(dists, dists[1:]))
    for r in recs:
        assert r.range_hi == pytest.approx(1.0 - r.epsilon, abs=0.01)
        assert r.range_lo == pytest.approx(-(1.0 - r.epsilon), abs=0.01)
        assert r.range_hi < 1.0 - r.epsilon  # open range, never attained


def test_graph_demo_grid_validation():
    with pytest.raises(ValueError):
        graph_limit_demo([1e-1], np.linspace(-0.5, 0.5, 100))


def test_nonconvexity_triangle(triangle):
    plan = SamplePlan(dim=2, strategy="uniform_grid_2d", count=2000)
    idx = nonconvexity_probe(triangle, 0.1, plan)
    assert len(idx) > 0
    # one concave dip opposite each edge normal
    assert count_concave_runs(idx, 2000) >= 3


def test_nonconvexity_regular_12gon():
    t = np.linspace(0.0, 2.0 * np.pi, 13)[:-1]
    cfg = build_configuration(np.column_stack([np.cos(t), np.sin(t)]))
    plan = SamplePlan(dim=2, strategy="uniform_grid_2d", count=2000)
    idx = nonconvexity_probe(cfg, 0.1, plan)
    # indentations may be small at this scale; just report-style sanity
    assert isinstance(idx, list)


def test_turning_helper_convex_polyline():
    t = np.linspace(0.0, 2.0 * np.pi, 101)[:-1]
    circle = np.column_stack([np.cos(t), np.sin(t)])
    assert concave_turn_indices(circle) == []


def test_turning_helper_detects_dent():
    square_dent = np.array(
        [[0, 0], [1, 0], [1, 1], [0.5, 0.5], [0, 1]], dtype=float
    )
    idx = concave_turn_indices(square_dent)
    assert idx == [3]


def test_nonconvexity_guards(triangle, tetrahedron):
    plan3 = SamplePlan(dim=3, strategy="fibonacci_3d", count=100)
    with pytest.raises(DimensionUnsupportedError):
        nonconvexity_probe(tetrahedron, 0.1, plan3)
    gauss_plan = SamplePlan(dim=2, strategy="gaussian_random", count=100)
    with pytest.raises(ValueError):
        nonconvexity_probe(triangle, 0.1, gauss_plan)
