"""Set-distance machinery and the convergence measurement laboratory.

The sweeps verify, at desk scale, that the sphere images approach the hull
boundary from inside at rate O(eps), that boundary coverage holds once
sampling is augmented around the facet normals, that face probes converge to
their faces, and that degenerate configurations fill their lower-dimensional
hull.  Uniform sphere samples alone under-resolve faces because almost every
direction's image collapses to a vertex; the harness therefore adds, per
facet, a coarse cap plus a dyadic ladder of eps-scale caps, and thin tubes
along the spherical-dual arcs where edge blends live.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .boundary_map import evaluate_batch_array
from .errors import EmptyProbeError, EmptySetError, RequiresDegenerateError
from .geom_core import PointConfiguration, build_configuration, is_nondegenerate
from .hull_oracle import (
    HullDescription,
    build_hull,
    classify_directions_bulk,
    distances_to_boundary,
    distances_to_face,
    sample_boundary,
    sample_face_points,
)
from .sphere_sampling import CapFocus, SamplePlan, sample, sample_near

DEFAULT_EPSILONS = (1e-1, 1e-2, 1e-3, 1e-4)
LADDER_BASE_FACTOR = 0.5  # innermost cap radius in units of eps
LADDER_LEVELS = 9
# fit over the last three decade values: large-eps points saturate at the
# hull inradius and would bias the asymptotic rate
SLOPE_FIT_DECADES = 2.0


@dataclass(frozen=True)
class SweepRecord:
    epsilon: float
    outer_dist: float
    inner_dist: float
    n_samples: int
    wall_ms: float


@dataclass(frozen=True)
class ConvergenceReport:
    """Per-epsilon outer/inner boundary distances plus the fitted decay slope."""

    config_id: str
    diameter: float
    records: tuple
    slope: float
    slope_residual: float

    @property
    def epsilons(self):
        return [r.epsilon for r in self.records]

    @property
    def outer_dists(self):
        return [r.outer_dist for r in self.records]

    @property
    def inner_dists(self):
        return [r.inner_dist for r in self.records]


@dataclass(frozen=True)
class FaceLimitRecord:
    epsilon: float
    image_to_face: float
    face_to_image: float
    n_probe: int


@dataclass(frozen=True)
class FaceLimitReport:
    face_id: int
    records: tuple


@dataclass(frozen=True)
class DegenerateRecord:
    epsilon: float
    sym_dist: float
    n_samples: int
    wall_ms: float


@dataclass(frozen=True)
class DegenerateReport:
    config_id: str
    span_dim: int
    extent: float
    records: tuple


@dataclass(frozen=True)
class GraphLimitRecord:
    epsilon: float
    sym_dist: float
    range_lo: float
    range_hi: float


def arctan_family(x, eps: float):
    """Scaled arctan profile whose graphs converge, as sets, to a step with riser."""
    return (2.0 / np.pi) * (1.0 - eps) * np.arctan(np.asarray(x, dtype=float) / eps)


def _min_dists(pts: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Per-point exact distance to the nearest target point."""
    pts = np.atleast_2d(pts)
    targets = np.atleast_2d(targets)
    dists, _ = cKDTree(targets).query(pts, k=1)
    return np.asarray(dists, dtype=float)


def directed_hausdorff(a, target) -> float:
    """max over points of A of the distance to the target set.

    ``target`` may be a finite point set, a HullDescription (distance to its
    boundary), or a callable mapping a point batch to distances.
    """
    pts = np.atleast_2d(np.asarray(a, dtype=float))
    if pts.size == 0:
        raise EmptySetError("directed distance from an empty set")
    if isinstance(target, HullDescription):
        return float(distances_to_boundary(target, pts).max())
    if callable(target):
        return float(np.max(target(pts)))
    tgt = np.atleast_2d(np.asarray(target, dtype=float))
    if tgt.size == 0:
        raise EmptySetError("directed distance to an empty set")
    return float(_min_dists(pts, tgt).max())


def symmetric_hausdorff(a, b) -> float:
    """max of the two directed distances between finite point sets."""
    return max(directed_hausdorff(a, b), directed_hausdorff(b, a))


def _validate_epsilons(epsilons) -> list:
    eps = [float(e) for e in epsilons]
    if not eps:
        raise ValueError("need at least one epsilon")
    for e in eps:
        if not (0.0 < e <= 1.0):
            raise ValueError(f"epsilon must lie in (0, 1], got {e!r}")
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("epsilons must be strictly decreasing")
    return eps


def _fit_loglog_slope(epsilons, values):
    """Least-squares slope of log(value) vs log(eps) over the last decades."""
    eps = np.asarray(epsilons, dtype=float)
    vals = np.asarray(values, dtype=float)
    lo = eps.min()
    mask = eps <= lo * 10.0 ** SLOPE_FIT_DECADES * (1.0 + 1e-9)
    x = np.log10(eps[mask])
    y = np.log10(np.maximum(vals[mask], 1e-300))
    if x.size < 2:
        return float("nan"), float("nan")
    coef = np.polyfit(x, y, 1)
    fit = np.polyval(coef, x)
    res = float(np.sqrt(np.mean((fit - y) ** 2)))
    return float(coef[0]), res


def _cap_plan(dim: int, count: int, radius: float, seed: int) -> SamplePlan:
    strategy = {2: "uniform_grid_2d", 3: "fibonacci_3d"}.get(dim, "gaussian_random")
    return SamplePlan(dim=dim, strategy=strategy, count=count, seed=seed,
                      focus=CapFocus(cap_radius=radius))


def _ladder_radii(eps: float, max_radius: float,
                  base_factor: float = LADDER_BASE_FACTOR,
                  levels: int = LADDER_LEVELS) -> list:
    """Dyadic cap radii from ~eps scale up to the coarse cap radius.

    The image of a cap around a facet normal stretches like 1/angle^2 toward
    the facet boundary, so doubling radii give roughly uniform coverage of
    the facet at every scale.
    """
    radii = []
    for m in range(levels):
        r = min(max_radius, base_factor * (2.0 ** m) * eps)
        if not radii or r > radii[-1] * 1.0000001:
            radii.append(r)
    return radii


def cap_directions(dim: int, center: np.ndarray, eps: float, cap_radius: float,
                   coarse_count: int, ladder_count: int, seed: int) -> np.ndarray:
    """Coarse cap plus the dyadic fine-cap ladder around one direction."""
    chunks = [sample_near(_cap_plan(dim, coarse_count, cap_radius, seed), center)]
    for m, r in enumerate(_ladder_radii(eps, cap_radius)):
        chunks.append(sample_near(_cap_plan(dim, ladder_count, r, seed + 1 + m), center))
    return np.vstack(chunks)


def _slerp(a: np.ndarray, b: np.ndarray, angle: float, t: float) -> np.ndarray:
    return (np.sin((1.0 - t) * angle) * a + np.sin(t * angle) * b) / np.sin(angle)


def _geometric_tau_offsets(eps: float, base_factor: float, max_factor: float,
                           ratio: float) -> list:
    taus = [0.0]
    t = base_factor * eps
    while t <= min(0.5, max_factor * eps):
        taus.extend([t, -t])
        t *= ratio
    return taus


def _dyadic_sigmas(eps: float, half_angle: float, base_factor: float,
                   ratio: float) -> list:
    sigmas = []
    s = base_factor * eps
    while s < half_angle:
        sigmas.append(s)
        s *= ratio
    sigmas.append(half_angle)
    return sigmas


def arc_tube_directions(hull: HullDescription, eps: float, face_ids=None,
                        allowed_points=None,
                        tau_base_factor: float = 0.125,
                        tau_max_factor: float = 4096.0,
                        tau_ratio: float = 1.4,
                        sigma_base_factor: float = 0.5,
                        sigma_ratio: float = 1.5) -> np.ndarray:
    """Directions in thin tubes around the spherical-dual arcs of edges (d = 3).

    Blends between the two vertices of an edge happen within an O(eps)-thick
    band transverse to the edge's normal arc, while the blend against points
    off the edge is controlled by the position along the arc.  Dyadic arc
    positions with geometrically spaced transverse offsets therefore cover
    edge and facet interiors that isotropic caps miss.

    ``allowed_points`` (a set of configuration indices) restricts arc
    positions near an endpoint to endpoints whose facet lies inside that
    point set: at finite eps, directions eps-close to a facet normal map
    near that facet, so a face-limit probe must not approach the normals of
    outside facets.
    """
    if hull.dim != 3:
        return np.empty((0, hull.dim))
    facet_by_id = {f.face_id: f for f in hull.facets}
    edges = [f for f in hull.faces if f.dim == 1]
    if face_ids is not None:
        wanted = set(face_ids)
        edges = [e for e in edges if e.face_id in wanted]

    taus = _geometric_tau_offsets(eps, tau_base_factor, tau_max_factor, tau_ratio)
    out = []
    for edge in edges:
        if len(edge.incident_facets) != 2:
            continue
        fa = facet_by_id[edge.incident_facets[0]]
        fb = facet_by_id[edge.incident_facets[1]]
        na, nb = fa.outward_normal, fb.outward_normal
        angle = float(np.arccos(np.clip(np.dot(na, nb), -1.0, 1.0)))
        if angle < 1e-9:
            continue
        if allowed_points is None:
            ok_a = ok_b = True
        else:
            ok_a = frozenset(fa.vertex_indices) <= allowed_points
            ok_b = frozenset(fb.vertex_indices) <= allowed_points
        sigmas = _dyadic_sigmas(eps, angle / 2.0, sigma_base_factor, sigma_ratio)
        positions = set()
        if ok_a:
            positions |= {sig for sig in sigmas}
        if ok_b:
            positions |= {angle - sig for sig in sigmas}
        if not positions:
            # neither endpoint usable: keep to the middle of the arc
            positions = {angle * f for f in (0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875)}
        for sig in sorted(positions):
            p = _slerp(na, nb, angle, sig / angle)
            tangent = nb - np.dot(nb, p) * p
            tn = np.linalg.norm(tangent)
            if tn < 1e-12:
                continue
            tangent /= tn
            trans = np.cross(p, tangent)
            for tau in taus:
                out.append(np.cos(tau) * p + np.sin(tau) * trans)
    if not out:
        return np.empty((0, hull.dim))
    return np.asarray(out)


def theorem_sweep(config: PointConfiguration, hull: HullDescription, epsilons,
                  global_plan: SamplePlan, boundary_per_facet: int,
                  cap_radius: float = 0.5, cap_count_per_facet: int = 3000,
                  ladder_cap_count: int = 1500,
                  boundary_seed: int = 1234, config_id: str = "config") -> ConvergenceReport:
    """Epsilon sweep of the directed boundary distances.

    The image set combines the global samples with, per facet, a coarse cap
    and a dyadic ladder of eps-scale caps around the facet normal, plus thin
    tube samples along the dual arcs (d = 3).  Outer distance: max distance
    from that image set to the hull boundary.  Inner distance: max distance
    from boundary samples to the nearest image.
    """
    eps_list = _validate_epsilons(epsilons)
    dirs_global = sample(global_plan)
    boundary_pts, _ = sample_boundary(hull, boundary_per_facet, seed=boundary_seed)

    records = []
    for eps in eps_list:
        t0 = time.perf_counter()
        cap_dirs = np.vstack([
            cap_directions(config.dim, facet.outward_normal, eps, cap_radius,
                           cap_count_per_facet, ladder_cap_count,
                           global_plan.seed + 1 + 97 * k)
            for k, facet in enumerate(hull.facets)
        ] + [arc_tube_directions(hull, eps)])
        dirs = np.vstack([dirs_global, cap_dirs])
        images_all = evaluate_batch_array(config, eps, dirs)
        outer = float(distances_to_boundary(hull, images_all).max())
        inner = float(_min_dists(boundary_pts, images_all).max())

        wall_ms = (time.perf_counter() - t0) * 1e3
        records.append(SweepRecord(epsilon=eps, outer_dist=outer, inner_dist=inner,
                                   n_samples=dirs.shape[0], wall_ms=wall_ms))

    slope, resid = _fit_loglog_slope(eps_list, [r.outer_dist for r in records])
    return ConvergenceReport(config_id=config_id, diameter=hull.diameter,
                             records=tuple(records), slope=slope, slope_residual=resid)


def _face_center_direction(hull: HullDescription, face_id: int) -> np.ndarray:
    from .normal_fan_dual import _incident_normals  # local import avoids a cycle

    gens = _incident_normals(hull, hull.faces[face_id])
    axis = gens.sum(axis=0)
    nrm = np.linalg.norm(axis)
    if nrm < 1e-12:
        raise ValueError("degenerate cap center for face probe")
    return axis / nrm


def face_limit_probe(config: PointConfiguration, hull: HullDescription, face_id: int,
                     epsilons, probe_plan: SamplePlan,
                     face_sample_count: int = 400, face_seed: int = 99) -> FaceLimitReport:
    """Directed distances between probe-cap images and one face polytope.

    The probe cap is centered on the plan's focus face (defaulting to the
    probed face itself) and augmented with the dyadic eps-scale ladder;
    only directions classified inside the face's open neighborhood on the
    sphere are kept.
    """
    face = hull.faces[face_id]
    if face.dim < 1:
        raise ValueError("face probes need a face of dimension >= 1")
    if probe_plan.focus is None:
        raise ValueError("probe_plan.focus with a cap_radius is required")
    eps_list = _validate_epsilons(epsilons)

    center_fid = probe_plan.focus.face_id if probe_plan.focus.face_id is not None else face_id
    center = _face_center_direction(hull, center_fid)
    base_dirs = sample_near(probe_plan, center)
    focus_set = frozenset(hull.faces[center_fid].vertex_indices)
    tube_edges = [f.face_id for f in hull.faces
                  if f.dim == 1 and frozenset(f.vertex_indices) <= focus_set]

    allowed = {
        f.face_id for f in hull.faces
        if frozenset(f.vertex_indices) <= frozenset(face.vertex_indices)
    }
    face_pts = sample_face_points(hull, face_id, face_sample_count, face_seed)

    records = []
    for eps in eps_list:
        ladder = [
            sample_near(_cap_plan(config.dim, probe_plan.count, r, probe_plan.seed + 1 + m),
                        center)
            for m, r in enumerate(_ladder_radii(eps, probe_plan.focus.cap_radius))
        ]
        tubes = arc_tube_directions(hull, eps, face_ids=tube_edges,
                                    allowed_points=focus_set)
        dirs = np.vstack([base_dirs] + ladder + ([tubes] if tubes.size else []))
        ids = classify_directions_bulk(hull, dirs)
        keep = np.isin(ids, list(allowed))
        if not np.any(keep):
            raise EmptyProbeError(f"no probe directions landed in the open set of face {face_id}")
        images = evaluate_batch_array(config, eps, dirs[keep])
        d_img = float(distances_to_face(hull, face_id, images).max())
        d_face = float(_min_dists(face_pts, images).max())
        records.append(FaceLimitRecord(epsilon=eps, image_to_face=d_img,
                                       face_to_image=d_face, n_probe=int(keep.sum())))
    return FaceLimitReport(face_id=face_id, records=tuple(records))


class _SpanHull:
    """Hull of a degenerate configuration inside its affine span."""

    def __init__(self, config: PointConfiguration):
        pts = config.points
        mean = pts.mean(axis=0)
        centered = pts - mean
        _, sv, vh = np.linalg.svd(centered, full_matrices=True)
        rank = int(np.sum(sv > 1e-9 * sv[0]))
        self.mean = mean
        self.span = vh[:rank]          # (k, d)
        self.normal_basis = vh[rank:]  # (d-k, d)
        self.k = rank
        self.local = centered @ self.span.T
        if rank == 1:
            t = self.local[:, 0]
            self.lo, self.hi = float(t.min()), float(t.max())
            self.local_hull = None
            self.extent = self.hi - self.lo
        else:
            local_config = build_configuration(self.local)
            self.local_hull = build_hull(local_config)
            self.extent = local_config.diameter

    def distances_to_body(self, pts_ambient: np.ndarray) -> np.ndarray:
        rel = pts_ambient - self.mean
        local = rel @ self.span.T
        off = rel - local @ self.span
        off_dist = np.linalg.norm(off, axis=1)
        if self.k == 1:
            t = local[:, 0]
            inplane = np.maximum(0.0, np.maximum(self.lo - t, t - self.hi))
        else:
            inplane = distances_to_boundary(self.local_hull, local)
            facets = self.local_hull.facets
            inside = np.ones(local.shape[0], dtype=bool)
            for f in facets:
                inside &= local @ f.outward_normal <= f.offset + self.local_hull.coplanarity_tol
            inplane[inside] = 0.0
        return np.sqrt(off_dist ** 2 + inplane ** 2)

    def sample_body(self, count: int, seed: int) -> np.ndarray:
        rng = np.random.default_rng(seed)
        if self.k == 1:
            t = self.lo + (self.hi - self.lo) * rng.random(count)
            local = t[:, None]
        elif self.k == 2:
            verts = self.local_hull.config.points[list(self.local_hull.vertices)]
            center = verts.mean(axis=0)
            ang = np.arctan2(verts[:, 1] - center[1], verts[:, 0] - center[0])
            verts = verts[np.argsort(ang)]
            m = verts.shape[0]
            tris = [(verts[0], verts[e], verts[e + 1]) for e in range(1, m - 1)]
            areas = np.asarray([
                abs((t1[0] - t0[0]) * (t2[1] - t0[1])
                    - (t1[1] - t0[1]) * (t2[0] - t0[0])) / 2.0
                for t0, t1, t2 in tris
            ])
            choice = rng.choice(len(tris), size=count, p=areas / areas.sum())
            r1 = np.sqrt(rng.random(count))
            r2 = rng.random(count)
            local = np.empty((count, 2))
            for idx, (t0, t1, t2) in enumerate(tris):
                sel = choice == idx
                u, v = r1[sel], r2[sel]
                local[sel] = ((1 - u)[:, None] * t0 + (u * (1 - v))[:, None] * t1
                              + (u * v)[:, None] * t2)
        else:
            lo = self.local.min(axis=0)
            hi = self.local.max(axis=0)
            out = []
            while len(out) < count:
                cand = lo + (hi - lo) * rng.random(self.k)
                if self.distances_to_body((self.mean + cand @ self.span)[None, :])[0] < 1e-9:
                    out.append(cand)
            local = np.asarray(out)
        return self.mean + local @ self.span


def degenerate_limit_probe(config: PointConfiguration, epsilons, plan: SamplePlan,
                           body_samples: int = 400, seed: int = 7,
                           config_id: str = "config") -> DegenerateReport:
    """Symmetric Hausdorff between sphere images and the full degenerate hull.

    Images of a degenerate configuration stay inside the lower-dimensional
    hull; coverage of its interior comes from directions nearly orthogonal to
    the affine span, so cap ladders around the span's normal directions are
    added.
    """
    if is_nondegenerate(config):
        raise RequiresDegenerateError("configuration spans R^d; use theorem_sweep instead")
    eps_list = _validate_epsilons(epsilons)
    span = _SpanHull(config)
    body = span.sample_body(body_samples, seed)
    dirs_global = sample(plan)

    records = []
    for eps in eps_list:
        t0 = time.perf_counter()
        caps = []
        for j, w in enumerate(span.normal_basis):
            for sgn, shift in ((1.0, 0), (-1.0, 1)):
                caps.append(cap_directions(config.dim, sgn * w, eps, 0.5,
                                           plan.count, plan.count,
                                           plan.seed + 11 + 2 * j + shift))
        dirs = np.vstack([dirs_global] + caps)
        images = evaluate_batch_array(config, eps, dirs)
        d_img = float(span.distances_to_body(images).max())
        d_body = float(_min_dists(body, images).max())
        wall_ms = (time.perf_counter() - t0) * 1e3
        records.append(DegenerateRecord(epsilon=eps, sym_dist=max(d_img, d_body),
                                        n_samples=dirs.shape[0], wall_ms=wall_ms))
    return DegenerateReport(config_id=config_id, span_dim=span.k,
                            extent=span.extent, records=tuple(records))


def _dist_to_limit_curve(pts: np.ndarray, half_width: float) -> np.ndarray:
    """Exact distance to the three-segment limit curve of the arctan family."""
    x, y = pts[:, 0], pts[:, 1]
    qx = np.clip(x, -half_width, 0.0)
    d1 = np.hypot(x - qx, y + 1.0)
    qy = np.clip(y, -1.0, 1.0)
    d2 = np.hypot(x, y - qy)
    qx = np.clip(x, 0.0, half_width)
    d3 = np.hypot(x - qx, y - 1.0)
    return np.minimum(d1, np.minimum(d2, d3))


def _min_dists_to_polyline(pts: np.ndarray, verts: np.ndarray,
                           chunk: int = 512) -> np.ndarray:
    """Per-point distance to an open polyline given by consecutive vertices."""
    a = verts[:-1]
    ab = verts[1:] - a
    denom = np.einsum("ij,ij->i", ab, ab)
    denom = np.where(denom > 0, denom, 1.0)
    best = np.full(pts.shape[0], np.inf)
    for start in range(0, a.shape[0], chunk):
        asub = a[start:start + chunk]
        absub = ab[start:start + chunk]
        dsub = denom[start:start + chunk]
        t = np.clip(
            np.einsum("pk,sk->ps", pts, absub) - np.einsum("sk,sk->s", asub, absub),
            0.0, None,
        )
        t = np.minimum(t / dsub, 1.0)
        proj = asub[None, :, :] + t[:, :, None] * absub[None, :, :]
        diff = pts[:, None, :] - proj
        d2 = np.einsum("psk,psk->ps", diff, diff)
        best = np.minimum(best, d2.min(axis=1))
    return np.sqrt(best)


def graph_limit_demo(epsilons, x_grid) -> list:
    """Hausdorff distance between the arctan-family graphs and their limit curve."""
    eps_list = _validate_epsilons(epsilons)
    x = np.asarray(x_grid, dtype=float)
    half_width = float(np.abs(x).max())
    if half_width < 1.0 or x.min() > -1.0 or x.max() < 1.0:
        raise ValueError("x_grid must span a symmetric interval [-L, L] with L >= 1")

    m = max(1000, x.size // 2)
    curve = np.vstack([
        np.column_stack([np.linspace(-half_width, 0.0, m), np.full(m, -1.0)]),
        np.column_stack([np.zeros(2001), np.linspace(-1.0, 1.0, 2001)]),
        np.column_stack([np.linspace(0.0, half_width, m), np.full(m, 1.0)]),
    ])

    order = np.argsort(x)
    records = []
    for eps in eps_list:
        f = arctan_family(x, eps)
        graph = np.column_stack([x, f])
        d_graph = float(_dist_to_limit_curve(graph, half_width).max())
        # the graph is a curve: measure against the polyline through the samples
        d_curve = float(_min_dists_to_polyline(curve, graph[order]).max())
        records.append(GraphLimitRecord(epsilon=eps, sym_dist=max(d_graph, d_curve),
                                        range_lo=float(f.min()), range_hi=float(f.max())))
    return records


def concave_turn_indices(polyline: np.ndarray, scale: float | None = None) -> list:
    """Indices of concave turns of a closed planar polyline.

    A turn is concave when its cross product opposes the polyline's overall
    orientation by more than a noise floor.
    """
    pts = np.atleast_2d(np.asarray(polyline, dtype=float))
    if pts.shape[1] != 2:
        raise ValueError("turning test needs planar points")
    if scale is None:
        span = pts.max(axis=0) - pts.min(axis=0)
        scale = float(max(span.max(), 1e-300))
    keep = [0]
    tol_len = 1e-12 * scale
    for k in range(1, pts.shape[0]):
        if np.linalg.norm(pts[k] - pts[keep[-1]]) > tol_len:
            keep.append(k)
    if len(keep) > 1 and np.linalg.norm(pts[keep[-1]] - pts[keep[0]]) <= tol_len:
        keep.pop()
    p = pts[keep]
    m = p.shape[0]
    if m < 4:
        return []
    nxt = np.roll(p, -1, axis=0)
    nxt2 = np.roll(p, -2, axis=0)
    e1 = nxt - p
    e2 = nxt2 - nxt
    cross = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]
    x, y = p[:, 0], p[:, 1]
    area2 = float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
    orient = 1.0 if area2 >= 0 else -1.0
    thresh = 1e-12 * scale * scale
    bad = np.flatnonzero(cross * orient < -thresh)
    return [keep[(int(k) + 1) % m] for k in bad]


def count_concave_runs(indices, n_points: int) -> int:
    """Number of cyclically contiguous groups among concave turn indices."""
    if not indices:
        return 0
    marks = sorted(set(int(i) % n_points for i in indices))
    runs = 0
    for prev, cur in zip([marks[-1] - n_points] + marks[:-1], marks):
        if cur - prev > 1:
            runs += 1
    if runs == 0:
        runs = 1  # every index adjacent: single cyclic run
    return runs


def nonconvexity_probe(config: PointConfiguration, eps: float, plan: SamplePlan) -> list:
    """Concave-turn indices of the closed planar image polyline.

    Requires d = 2 and an ordered angular sampling plan so the image points
    trace the curve in order.
    """
    from .errors import DimensionUnsupportedError

    if config.dim != 2:
        raise DimensionUnsupportedError("the turning probe is planar only")
    if plan.strategy != "uniform_grid_2d":
        raise ValueError("nonconvexity_probe needs the ordered uniform_grid_2d strategy")
    dirs = sample(plan)
    images = evaluate_batch_array(config, eps, dirs)
    return concave_turn_indices(images, scale=config.diameter)
