"""Desk-scale exact convex hull: facets, face lattice, and boundary queries.

Facets are found by brute-force enumeration of supporting hyperplanes through
d-subsets; the face lattice is the closure of facet point-sets under
intersection.  This favors a transparent correctness oracle over hull
algorithmics, and size limits keep it honest.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import nnls

from .errors import (
    AmbiguousTieError,
    DegenerateConfigurationError,
    IndexOutOfRangeError,
    TooManyPointsError,
)
from .geom_core import PointConfiguration, is_nondegenerate, unit_vector

DEFAULT_TOL_REL = 1e-9

# per-dimension point limits for the brute-force enumeration
BRUTE_FORCE_LIMITS = {1: 400, 2: 60, 3: 30, 4: 24, 5: 18, 6: 14}


@dataclass(frozen=True)
class Facet:
    """A (d-1)-face: the configuration points on it, outward normal, offset."""

    face_id: int
    vertex_indices: tuple
    outward_normal: np.ndarray
    offset: float


@dataclass(frozen=True)
class Face:
    """A face of any dimension, identified by its configuration point set."""

    face_id: int
    dim: int
    vertex_indices: tuple
    incident_facets: tuple


class HullDescription:
    """Immutable hull data: facets, full face lattice, per-point classification."""

    def __init__(self, config, facets, faces, children, vertex_flags,
                 containing_face, coplanarity_tol):
        self.config = config
        self.facets = facets
        self.faces = faces
        self.children = children  # face_id -> tuple of covered face_ids
        self.vertex_flags = tuple(vertex_flags)
        self.containing_face = tuple(containing_face)
        self.coplanarity_tol = float(coplanarity_tol)
        self.diameter = config.diameter
        self._face_by_points = {frozenset(f.vertex_indices): f.face_id for f in faces}
        self._face_basis_cache = {}
        self._facet_geometry_cache = None

    @property
    def dim(self) -> int:
        return self.config.dim

    @property
    def vertices(self) -> tuple:
        return tuple(i for i, f in enumerate(self.vertex_flags) if f == "vertex")

    def face_by_points(self, indices):
        fid = self._face_by_points.get(frozenset(indices))
        return None if fid is None else self.faces[fid]

    def face_points(self, face_id: int) -> np.ndarray:
        return self.config.points[list(self.faces[face_id].vertex_indices)]

    def face_extreme_points(self, face_id: int) -> np.ndarray:
        """Coordinates of the face's points that are hull vertices."""
        idx = [i for i in self.faces[face_id].vertex_indices
               if self.vertex_flags[i] == "vertex"]
        return self.config.points[idx]

    def faces_of_dim(self, m: int):
        return [f for f in self.faces if f.dim == m]

    def _face_basis(self, face_id: int):
        """(origin, orthonormal basis of the face's direction space)."""
        cached = self._face_basis_cache.get(face_id)
        if cached is not None:
            return cached
        pts = self.face_points(face_id)
        origin = pts[0]
        m = self.faces[face_id].dim
        if m == 0:
            basis = np.zeros((0, self.dim))
        else:
            diffs = pts[1:] - origin
            _, sv, vh = np.linalg.svd(diffs, full_matrices=False)
            basis = vh[:m]
        self._face_basis_cache[face_id] = (origin, basis)
        return origin, basis


def _affine_rank(pts: np.ndarray, tol_rel: float = 1e-9) -> int:
    if pts.shape[0] < 2:
        return 0
    diffs = pts[1:] - pts[0]
    sv = np.linalg.svd(diffs, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol_rel * sv[0]))


def _fit_hyperplane(pts: np.ndarray):
    """Best-fit unit normal and offset through a point set of affine rank d-1."""
    center = pts.mean(axis=0)
    _, _, vh = np.linalg.svd(pts - center, full_matrices=True)
    normal = vh[-1]
    offset = float(np.dot(normal, center))
    return normal, offset


def build_hull(config: PointConfiguration, coplanarity_tol: float | None = None) -> HullDescription:
    """Enumerate facets and build the full face lattice.

    Raises DegenerateConfigurationError if the points do not span R^d and
    TooManyPointsError beyond the brute-force limits.
    """
    if not is_nondegenerate(config):
        raise DegenerateConfigurationError(
            "points lie on a proper affine subspace; no full-dimensional hull"
        )
    d, n = config.dim, config.n_points
    limit = BRUTE_FORCE_LIMITS.get(d)
    if limit is None:
        raise TooManyPointsError(f"hull construction supports d <= {max(BRUTE_FORCE_LIMITS)}")
    if n > limit:
        raise TooManyPointsError(f"brute-force hull limited to n <= {limit} for d = {d}")

    pts = config.points
    tol = coplanarity_tol if coplanarity_tol is not None else DEFAULT_TOL_REL * config.diameter

    candidate_sets = set()
    for combo in itertools.combinations(range(n), d):
        sub = pts[list(combo)]
        if _affine_rank(sub) != d - 1:
            continue
        normal, offset = _fit_hyperplane(sub)
        s = pts @ normal - offset
        hi, lo = float(s.max()), float(s.min())
        if hi <= tol:
            pass
        elif lo >= -tol:
            normal, offset, s = -normal, -offset, -s
        else:
            continue
        candidate_sets.add(frozenset(np.flatnonzero(np.abs(s) <= tol).tolist()))

    # refit each candidate over its full equality set, then re-extract the set
    facet_data = {}
    for cand in candidate_sets:
        sub = pts[sorted(cand)]
        normal, offset = _fit_hyperplane(sub)
        s = pts @ normal - offset
        if float(s.max()) > tol:
            if float(s.min()) < -tol:
                continue
            normal, offset, s = -normal, -offset, -s
        members = frozenset(np.flatnonzero(np.abs(s) <= tol).tolist())
        if _affine_rank(pts[sorted(members)]) != d - 1:
            continue
        facet_data[members] = (normal, offset)

    if not facet_data:
        raise DegenerateConfigurationError("no supporting facets found")

    facet_sets = sorted(facet_data, key=lambda s: tuple(sorted(s)))

    # face lattice: closure of facet point-sets under intersection
    face_sets = set(facet_sets)
    frontier = list(facet_sets)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in face_sets:
                inter = a & b
                if inter and inter not in face_sets and inter not in fresh:
                    fresh.add(inter)
        face_sets |= fresh
        frontier = list(fresh)

    ordered = sorted(face_sets, key=lambda s: (_affine_rank(pts[sorted(s)]), tuple(sorted(s))))
    dims = {s: _affine_rank(pts[sorted(s)]) for s in ordered}
    id_of = {s: k for k, s in enumerate(ordered)}

    facets = []
    for s in facet_sets:
        normal, offset = facet_data[s]
        facets.append(Facet(face_id=id_of[s], vertex_indices=tuple(sorted(s)),
                            outward_normal=normal, offset=offset))
    facets.sort(key=lambda f: f.face_id)

    faces = []
    for s in ordered:
        fid = id_of[s]
        inc = tuple(sorted(id_of[fs] for fs in facet_sets if s <= fs))
        faces.append(Face(face_id=fid, dim=dims[s],
                          vertex_indices=tuple(sorted(s)), incident_facets=inc))

    children = {}
    for s in ordered:
        kids = [id_of[t] for t in ordered if t < s and dims[t] == dims[s] - 1]
        children[id_of[s]] = tuple(sorted(kids))

    vertex_flags = []
    containing_face = []
    facet_set_by_id = {id_of[s]: s for s in facet_sets}
    for p in range(n):
        inc = [fid for fid in sorted(facet_set_by_id) if p in facet_set_by_id[fid]]
        if not inc:
            vertex_flags.append("interior")
            containing_face.append(None)
            continue
        minimal = frozenset.intersection(*[facet_set_by_id[fid] for fid in inc])
        containing_face.append(id_of[minimal])
        normals = np.asarray([facet_data[facet_set_by_id[fid]][0] for fid in inc])
        rank = int(np.linalg.matrix_rank(normals, tol=1e-9))
        vertex_flags.append("vertex" if rank == d else "boundary_nonvertex")

    return HullDescription(config, facets, faces, children, vertex_flags,
                           containing_face, tol)


def classify_direction(hull: HullDescription, n, tie_tol: float | None = None) -> Face:
    """The unique face whose normal spherical polytope interior contains n.

    Computed as the face spanned by the support-function argmax within
    tie_tol.  Raises AmbiguousTieError if the maximizing set is not the
    point set of a face.
    """
    d = unit_vector(n)
    if tie_tol is None:
        tie_tol = DEFAULT_TOL_REL * hull.diameter
    s = hull.config.points @ d
    top = float(s.max())
    arg = np.flatnonzero(s >= top - tie_tol)
    face = hull.face_by_points(arg.tolist())
    if face is None:
        raise AmbiguousTieError(
            f"maximizing set {sorted(arg.tolist())} is not a face (tie_tol={tie_tol:g})",
            candidates=sorted(arg.tolist()),
        )
    return face


def support_margin(hull: HullDescription, n) -> float:
    """Gap between the two largest support values for a direction."""
    s = np.sort(hull.config.points @ unit_vector(n))
    return float(s[-1] - s[-2])


def classify_directions_bulk(hull: HullDescription, dirs, tie_tol: float | None = None) -> np.ndarray:
    """Vectorized classify_direction over direction rows.

    Returns the face id per direction, or -1 where the maximizing set is not
    a face (the ambiguous-tie case surfaced as an error by the scalar path).
    """
    arr = np.atleast_2d(np.asarray(dirs, dtype=float))
    if tie_tol is None:
        tie_tol = DEFAULT_TOL_REL * hull.diameter
    s = arr @ hull.config.points.T
    top = s.max(axis=1)
    mask = s >= (top[:, None] - tie_tol)
    out = np.empty(arr.shape[0], dtype=int)
    cache = {}
    for k in range(arr.shape[0]):
        key = mask[k].tobytes()
        fid = cache.get(key)
        if fid is None:
            face = hull.face_by_points(np.flatnonzero(mask[k]).tolist())
            fid = -1 if face is None else face.face_id
            cache[key] = fid
        out[k] = fid
    return out


def in_normal_spherical_polytope(config: PointConfiguration, i: int, n, strict: bool = False) -> bool:
    """Direct inequality test: <n, n_ij> <= 0 (strict: < 0) for all j != i.

    Independent of any hull construction; serves as the cross-validation
    oracle for classify_direction.
    """
    if not (0 <= i < config.n_points):
        raise IndexOutOfRangeError(f"index {i} outside 0..{config.n_points - 1}")
    d = unit_vector(n)
    dots = config.pairwise_dirs[i] @ d
    dots[i] = -1.0  # self entry is a zero vector; exclude it
    if strict:
        return bool(np.all(dots < 0.0))
    return bool(np.all(dots <= 0.0))


def _contains_in_affine_hull(hull: HullDescription, face_id: int, q: np.ndarray) -> bool:
    """Convex-combination membership test for a point already in the face's span."""
    pts = hull.face_points(face_id)
    scale = 1.0 + float(np.abs(pts).max()) + hull.diameter
    a = np.vstack([pts.T, np.ones(pts.shape[0])])
    b = np.concatenate([q, [1.0]])
    _, resid = nnls(a, b)
    return resid <= 1e-8 * scale


def distance_to_face(hull: HullDescription, face_id: int, p) -> float:
    """Euclidean distance from p to a face polytope.

    Projects onto the face's affine hull and clamps into the face by
    recursing over its subfaces when the projection lands outside.
    """
    p = np.asarray(p, dtype=float)
    face = hull.faces[face_id]
    if face.dim == 0:
        return float(np.linalg.norm(p - hull.face_points(face_id)[0]))
    origin, basis = hull._face_basis(face_id)
    q = origin + basis.T @ (basis @ (p - origin))
    if _contains_in_affine_hull(hull, face_id, q):
        return float(np.linalg.norm(p - q))
    return min(distance_to_face(hull, kid, p) for kid in hull.children[face_id])


def boundary_distance(hull: HullDescription, p):
    """(distance to the hull boundary, face id of the nearest facet)."""
    p = np.asarray(p, dtype=float)
    best = np.inf
    best_id = hull.facets[0].face_id
    for facet in hull.facets:
        dist = distance_to_face(hull, facet.face_id, p)
        if dist < best:
            best, best_id = dist, facet.face_id
    return float(best), best_id


def _ordered_polygon(hull: HullDescription, face_id: int):
    """Vertices of a 2-d face cyclically ordered, with inward edge normals."""
    verts = hull.face_extreme_points(face_id)
    origin, basis = hull._face_basis(face_id)
    local = (verts - origin) @ basis.T
    center = local.mean(axis=0)
    ang = np.arctan2(local[:, 1] - center[1], local[:, 0] - center[0])
    order = np.argsort(ang)
    verts = verts[order]
    local = local[order]
    k = verts.shape[0]
    inward = np.empty((k, 2))
    for e in range(k):
        a, b = local[e], local[(e + 1) % k]
        edge = b - a
        nvec = np.array([-edge[1], edge[0]])
        if np.dot(center - a, nvec) < 0:
            nvec = -nvec
        inward[e] = nvec / np.linalg.norm(nvec)
    return verts, local, inward, (origin, basis)


def _facet_geometry(hull: HullDescription):
    if hull._facet_geometry_cache is not None:
        return hull._facet_geometry_cache
    geo = []
    for facet in hull.facets:
        face = hull.faces[facet.face_id]
        if face.dim == 0:
            geo.append(("point", hull.face_points(facet.face_id)[0]))
        elif face.dim == 1:
            pts = hull.face_points(facet.face_id)
            axis = pts[-1] - pts[0]
            t = pts @ axis
            a = pts[int(np.argmin(t))]
            b = pts[int(np.argmax(t))]
            geo.append(("segment", (a, b)))
        elif face.dim == 2:
            verts, local, inward, frame = _ordered_polygon(hull, facet.face_id)
            geo.append(("polygon", (facet.outward_normal, facet.offset,
                                    verts, local, inward, frame)))
        else:
            geo.append(("general", facet.face_id))
    hull._facet_geometry_cache = geo
    return geo


def _segment_distances(a: np.ndarray, b: np.ndarray, pts: np.ndarray) -> np.ndarray:
    ab = b - a
    denom = float(np.dot(ab, ab))
    t = np.clip(((pts - a) @ ab) / denom, 0.0, 1.0)
    proj = a + t[:, None] * ab
    return np.linalg.norm(pts - proj, axis=1)


def distances_to_boundary(hull: HullDescription, points) -> np.ndarray:
    """Vectorized boundary distances for a batch of points.

    Uses closed-form segment/polygon projections for facet dimensions up to
    2 and falls back to the recursive scalar path otherwise.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    best = np.full(pts.shape[0], np.inf)
    tol = hull.coplanarity_tol
    for kind, data in _facet_geometry(hull):
        if kind == "point":
            dist = np.linalg.norm(pts - data[None, :], axis=1)
        elif kind == "segment":
            dist = _segment_distances(data[0], data[1], pts)
        elif kind == "polygon":
            normal, offset, verts, local, inward, (origin, basis) = data
            h = pts @ normal - offset
            plocal = (pts - origin) @ basis.T
            inside = np.ones(pts.shape[0], dtype=bool)
            for e in range(local.shape[0]):
                inside &= (plocal - local[e]) @ inward[e] >= -tol
            dist = np.full(pts.shape[0], np.inf)
            dist[inside] = np.abs(h[inside])
            out = ~inside
            if np.any(out):
                sub = pts[out]
                dmin = np.full(sub.shape[0], np.inf)
                k = verts.shape[0]
                for e in range(k):
                    dmin = np.minimum(dmin, _segment_distances(verts[e], verts[(e + 1) % k], sub))
                dist[out] = dmin
        else:
            dist = np.asarray([distance_to_face(hull, data, p) for p in pts])
        best = np.minimum(best, dist)
    return best


def distances_to_face(hull: HullDescription, face_id: int, points) -> np.ndarray:
    """Vectorized distances from a batch of points to one face polytope."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    face = hull.faces[face_id]
    if face.dim == 0:
        return np.linalg.norm(pts - hull.face_points(face_id)[0][None, :], axis=1)
    if face.dim == 1:
        fp = hull.face_points(face_id)
        axis = fp[-1] - fp[0]
        t = fp @ axis
        a, b = fp[int(np.argmin(t))], fp[int(np.argmax(t))]
        return _segment_distances(a, b, pts)
    if face.dim == 2:
        verts, local, inward, (origin, basis) = _ordered_polygon(hull, face_id)
        normal_dists = np.linalg.norm(
            pts - (origin + ((pts - origin) @ basis.T) @ basis), axis=1
        )
        plocal = (pts - origin) @ basis.T
        inside = np.ones(pts.shape[0], dtype=bool)
        for e in range(local.shape[0]):
            inside &= (plocal - local[e]) @ inward[e] >= -hull.coplanarity_tol
        dist = np.empty(pts.shape[0])
        dist[inside] = normal_dists[inside]
        out = ~inside
        if np.any(out):
            sub = pts[out]
            dmin = np.full(sub.shape[0], np.inf)
            k = verts.shape[0]
            for e in range(k):
                dmin = np.minimum(dmin, _segment_distances(verts[e], verts[(e + 1) % k], sub))
            dist[out] = dmin
        return dist
    return np.asarray([distance_to_face(hull, face_id, p) for p in pts])


def minimal_face_containing(hull: HullDescription, x, tol: float | None = None):
    """The smallest face whose polytope contains x, or None if x is off-boundary."""
    x = np.asarray(x, dtype=float)
    if tol is None:
        tol = 1e-7 * (1.0 + hull.diameter)
    member = [f for f in hull.facets if distance_to_face(hull, f.face_id, x) <= tol]
    if not member:
        return None
    inter = frozenset(member[0].vertex_indices)
    for f in member[1:]:
        inter &= frozenset(f.vertex_indices)
    return hull.face_by_points(inter)


def _sample_on_face(hull: HullDescription, face_id: int, count: int, rng) -> np.ndarray:
    """Uniform samples on one face polytope (deterministic given the rng state)."""
    face = hull.faces[face_id]
    pts = hull.face_points(face_id)
    if face.dim == 0:
        return np.repeat(pts[:1], count, axis=0)
    if face.dim == 1:
        axis = pts[-1] - pts[0]
        t = pts @ axis
        a, b = pts[int(np.argmin(t))], pts[int(np.argmax(t))]
        u = rng.random(count)
        return a[None, :] + u[:, None] * (b - a)[None, :]
    if face.dim == 2:
        verts, _, _, _ = _ordered_polygon(hull, face_id)
        k = verts.shape[0]
        tris = [(verts[0], verts[e], verts[e + 1]) for e in range(1, k - 1)]
        areas = np.asarray([
            0.5 * np.linalg.norm(np.cross(t1 - t0, t2 - t0)) for t0, t1, t2 in tris
        ])
        choice = rng.choice(len(tris), size=count, p=areas / areas.sum())
        r1 = np.sqrt(rng.random(count))
        r2 = rng.random(count)
        out = np.empty((count, hull.dim))
        for m, (t0, t1, t2) in enumerate(tris):
            sel = choice == m
            if not np.any(sel):
                continue
            u, v = r1[sel], r2[sel]
            out[sel] = (1 - u)[:, None] * t0 + (u * (1 - v))[:, None] * t1 + (u * v)[:, None] * t2
        return out
    # higher dimension: Dirichlet for simplicial faces, bounding-box rejection otherwise
    verts = hull.face_extreme_points(face_id)
    if verts.shape[0] == face.dim + 1:
        w = rng.dirichlet(np.ones(verts.shape[0]), size=count)
        return w @ verts
    origin, basis = hull._face_basis(face_id)
    local = (verts - origin) @ basis.T
    lo, hi = local.min(axis=0), local.max(axis=0)
    out = np.empty((count, hull.dim))
    filled = 0
    while filled < count:
        cand = lo + (hi - lo) * rng.random(face.dim)
        q = origin + basis.T @ cand
        if _contains_in_affine_hull(hull, face_id, q):
            out[filled] = q
            filled += 1
    return out


def sample_boundary(hull: HullDescription, per_facet: int, seed: int = 0):
    """per_facet uniform samples on every facet; returns (points, facet ids)."""
    if per_facet < 1:
        raise ValueError("per_facet must be >= 1")
    rng = np.random.default_rng(seed)
    chunks = []
    ids = []
    for facet in hull.facets:
        chunks.append(_sample_on_face(hull, facet.face_id, per_facet, rng))
        ids.extend([facet.face_id] * per_facet)
    return np.vstack(chunks), ids


def sample_face_points(hull: HullDescription, face_id: int, count: int, seed: int = 0) -> np.ndarray:
    """Uniform samples on an arbitrary face polytope."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    return _sample_on_face(hull, face_id, count, rng)
