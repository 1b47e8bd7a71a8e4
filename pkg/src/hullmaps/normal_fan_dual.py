"""Normal fans, spherical duals, the polytope Gauss map, and duality checks.

The normal cone of a face is generated by the outward normals of its incident
facets; intersecting with the unit sphere gives the normal spherical polytope.
The collection of those cells tiles the sphere and is combinatorially the dual
polytope.  Flattening each cell to the convex hull of its vertex directions
yields a piecewise-linear surface whose convexity decides whether the hull of
the facet normals is combinatorially equivalent to the dual.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionUnsupportedError, NotOnBoundaryError
from .geom_core import build_configuration, unit_vector
from .hull_oracle import (
    Face,
    HullDescription,
    boundary_distance,
    build_hull,
    classify_direction,
    minimal_face_containing,
)

FLATTEN_PLANARITY_TOL = 1e-7


@dataclass(frozen=True)
class NormalCone:
    """Normal cone of one face: generated by its incident facet normals."""

    face_id: int
    dim: int
    generators: np.ndarray  # (k, d) outward normals of incident facets


@dataclass(frozen=True)
class GaussValue:
    """Set value of the polytope Gauss map at a boundary point.

    ``cell_dirs`` are the vertex directions of the normal spherical polytope
    of the minimal face containing the point; a facet-interior point yields
    the singleton facet normal.
    """

    face_id: int
    face_dim: int
    cell_dirs: np.ndarray

    @property
    def is_singleton(self) -> bool:
        return self.cell_dirs.shape[0] == 1


@dataclass(frozen=True)
class DualCell:
    """One spherical cell: the dual of a face of the hull boundary."""

    face_id: int
    face_dim: int
    cell_dim: int
    vertex_dirs: np.ndarray


@dataclass(frozen=True)
class SphericalDualComplex:
    """All spherical cells plus the containment-reversing incidence relation."""

    cells: tuple
    incidence: tuple  # pairs (face_id of F, face_id of G) with F subset of G
    cell_counts: tuple  # number of cells by cell dimension 0..d-1


@dataclass(frozen=True)
class DualCheckResult:
    equivalent: bool
    flattened_convex: bool


def _incident_normals(hull: HullDescription, face: Face) -> np.ndarray:
    by_id = {f.face_id: f for f in hull.facets}
    return np.asarray([by_id[fid].outward_normal for fid in face.incident_facets])


def normal_fan(hull: HullDescription) -> list[NormalCone]:
    """One cone per face of the boundary; facet cones are single rays."""
    d = hull.dim
    return [
        NormalCone(face_id=f.face_id, dim=d - f.dim, generators=_incident_normals(hull, f))
        for f in hull.faces
    ]


def spherical_dual(hull: HullDescription) -> SphericalDualComplex:
    """The spherical cell complex dual to the hull boundary."""
    d = hull.dim
    cells = tuple(
        DualCell(
            face_id=f.face_id,
            face_dim=f.dim,
            cell_dim=d - f.dim - 1,
            vertex_dirs=_incident_normals(hull, f),
        )
        for f in hull.faces
    )
    pairs = []
    sets = {f.face_id: frozenset(f.vertex_indices) for f in hull.faces}
    for a in hull.faces:
        for b in hull.faces:
            if a.face_id != b.face_id and sets[a.face_id] < sets[b.face_id]:
                pairs.append((a.face_id, b.face_id))
    counts = [0] * d
    for c in cells:
        counts[c.cell_dim] += 1
    return SphericalDualComplex(cells=cells, incidence=tuple(sorted(pairs)),
                                cell_counts=tuple(counts))


def gauss_map(hull: HullDescription, x, tol: float | None = None) -> GaussValue:
    """Normal spherical polytope of the minimal face containing a boundary point."""
    x = np.asarray(x, dtype=float)
    if tol is None:
        tol = 1e-7 * (1.0 + hull.diameter)
    dist, _ = boundary_distance(hull, x)
    if dist > tol:
        raise NotOnBoundaryError(f"point is {dist:g} away from the boundary")
    face = minimal_face_containing(hull, x, tol)
    return GaussValue(face_id=face.face_id, face_dim=face.dim,
                      cell_dirs=_incident_normals(hull, face))


def inverse_gauss(hull: HullDescription, n, tie_tol: float | None = None) -> Face:
    """Set-valued inverse of the Gauss map: delegates to classify_direction."""
    return classify_direction(hull, n, tie_tol)


def w_set_contains(hull: HullDescription, face_id: int, n, tie_tol: float | None = None) -> bool:
    """Membership in the relatively open union of cell interiors below a face."""
    face = hull.faces[face_id]
    if face.dim < 1:
        raise ValueError("the open set is defined for faces of dimension >= 1")
    g = classify_direction(hull, n, tie_tol)
    return frozenset(g.vertex_indices) <= frozenset(face.vertex_indices)


def _cyclic_cell_dirs(hull: HullDescription, face: Face) -> np.ndarray:
    """Incident facet normals ordered by angle around the cone axis."""
    gens = _incident_normals(hull, face)
    axis = gens.sum(axis=0)
    nrm = np.linalg.norm(axis)
    if nrm < 1e-12:
        axis = np.cross(gens[0], gens[1])
        nrm = np.linalg.norm(axis)
    axis = axis / nrm
    ref = gens[0] - np.dot(gens[0], axis) * axis
    ref = ref / np.linalg.norm(ref)
    perp = np.cross(axis, ref)
    ang = np.arctan2(gens @ perp, gens @ ref)
    return gens[np.argsort(ang)]


def flattened_spherical_dual(hull: HullDescription) -> list:
    """PL cells replacing each vertex's spherical cell by its flat polygon.

    Returns one (vertex point index, cyclically ordered (k, 3) directions)
    pair per hull vertex; all cell vertices lie on the unit sphere.
    """
    if hull.dim != 3:
        raise DimensionUnsupportedError("flattened dual is defined for d = 3")
    cells = []
    for face in hull.faces_of_dim(0):
        point_index = face.vertex_indices[0]
        cells.append((point_index, _cyclic_cell_dirs(hull, face)))
    return cells


def outer_normal_transform(hull: HullDescription) -> HullDescription:
    """Hull of the facet normal directions."""
    normals = [f.outward_normal for f in hull.facets]
    config = build_configuration(normals)
    return build_hull(config)


def _hasse(levels: dict, order_pairs: set):
    """Cover relation of a graded poset given ranks and the full order."""
    covers = {e: [] for e in levels}
    for a, b in order_pairs:
        if levels[b] == levels[a] + 1:
            covers[b].append(a)
    return {e: tuple(sorted(v)) for e, v in covers.items()}


def _poset_signature(elems, rank, children, parents):
    """Iterated partition refinement; labels are isomorphism invariants."""
    label = {e: rank[e] for e in elems}
    n_classes = len(set(label.values()))
    while True:
        fresh = {
            e: (
                label[e],
                tuple(sorted(label[c] for c in children[e])),
                tuple(sorted(label[p] for p in parents[e])),
            )
            for e in elems
        }
        canon = {}
        for e in sorted(elems, key=lambda x: fresh[x]):
            label[e] = canon.setdefault(fresh[e], len(canon))
        if len(canon) == n_classes:
            return label
        n_classes = len(canon)


def _lattices_isomorphic(rank_a, covers_a, rank_b, covers_b) -> bool:
    """Backtracking isomorphism test on two graded posets given cover relations."""
    elems_a = sorted(rank_a)
    elems_b = sorted(rank_b)
    if len(elems_a) != len(elems_b):
        return False
    parents_a = {e: [] for e in elems_a}
    parents_b = {e: [] for e in elems_b}
    for e, kids in covers_a.items():
        for k in kids:
            parents_a[k].append(e)
    for e, kids in covers_b.items():
        for k in kids:
            parents_b[k].append(e)
    sig_a = _poset_signature(elems_a, rank_a, covers_a, parents_a)
    sig_b = _poset_signature(elems_b, rank_b, covers_b, parents_b)
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return False

    candidates = {}
    for e in elems_a:
        candidates[e] = [f for f in elems_b if sig_b[f] == sig_a[e]]
        if not candidates[e]:
            return False
    order = sorted(elems_a, key=lambda e: len(candidates[e]))
    mapping = {}
    used = set()

    def consistent(e, f):
        # a bijection preserving cover adjacency both ways preserves the order
        for other, img in mapping.items():
            a_rel = e in covers_a[other] or other in covers_a[e]
            b_rel = f in covers_b[img] or img in covers_b[f]
            if a_rel != b_rel:
                return False
        return True

    def backtrack(k):
        if k == len(order):
            return True
        e = order[k]
        for f in candidates[e]:
            if f in used or not consistent(e, f):
                continue
            mapping[e] = f
            used.add(f)
            if backtrack(k + 1):
                return True
            del mapping[e]
            used.discard(f)
        return False

    return backtrack(0)


def _face_poset(hull: HullDescription, reverse: bool = False):
    """(rank, covers) of the hull's proper-face lattice, optionally dualized."""
    d = hull.dim
    rank = {}
    for f in hull.faces:
        rank[f.face_id] = (d - 1 - f.dim) if reverse else f.dim
    sets = {f.face_id: frozenset(f.vertex_indices) for f in hull.faces}
    pairs = set()
    for a in hull.faces:
        for b in hull.faces:
            if a.face_id == b.face_id:
                continue
            if sets[a.face_id] < sets[b.face_id]:
                if reverse:
                    pairs.add((b.face_id, a.face_id))
                else:
                    pairs.add((a.face_id, b.face_id))
    covers = _hasse(rank, pairs)
    return rank, covers


def dual_combinatorics_check(hull: HullDescription,
                             planarity_tol: float = FLATTEN_PLANARITY_TOL) -> DualCheckResult:
    """Convexity of the flattened dual vs combinatorial equivalence of the transform.

    ``flattened_convex`` holds iff every flattened cell is planar and its
    supporting plane keeps all other cell vertices strictly on the origin
    side.  ``equivalent`` holds iff the face lattice of the hull of the facet
    normals is isomorphic to the hull's dual lattice.  The two booleans agree
    on every valid input.
    """
    if hull.dim != 3:
        raise DimensionUnsupportedError("duality check is defined for d = 3")

    cells = flattened_spherical_dual(hull)
    all_dirs = np.asarray([f.outward_normal for f in hull.facets])
    flattened_convex = True
    for _, dirs in cells:
        center = dirs.mean(axis=0)
        _, sv, vh = np.linalg.svd(dirs - center, full_matrices=True)
        normal = vh[-1]
        offset = float(np.mean(dirs @ normal))
        if offset < 0:
            normal, offset = -normal, -offset
        planar = float(np.abs(dirs @ normal - offset).max()) <= planarity_tol
        if not planar:
            flattened_convex = False
            break
        member = {tuple(np.round(v, 12)) for v in dirs}
        strict = True
        for w in all_dirs:
            if tuple(np.round(w, 12)) in member:
                continue
            if float(np.dot(w, normal)) > offset - planarity_tol:
                strict = False
                break
        if not strict:
            flattened_convex = False
            break

    transform = outer_normal_transform(hull)
    rank_t, covers_t = _face_poset(transform, reverse=False)
    rank_d, covers_d = _face_poset(hull, reverse=True)
    equivalent = _lattices_isomorphic(rank_t, covers_t, rank_d, covers_d)
    return DualCheckResult(equivalent=equivalent, flattened_convex=flattened_convex)
