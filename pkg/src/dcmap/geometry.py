"""Circle pattern extraction and the immersion / embeddedness predicates.

Circles sit at even vertices; neighboring circles (labels differing by 1
or i) intersect orthogonally and half-neighboring ones (labels differing
by 1+i or 1-i) are tangent.  The overlap predicates test open interiors
of the elementary quadrilaterals: polygon interiors are shrunk toward
their centroid by the absolute tolerance before testing, so shared edges
and vertices never count as overlap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field

from .lattice import ConformalLattice, LatticeIndex, LatticeKind
from .numerics import DEFAULT_TOL, ExtendedComplex, ToleranceConfig
from .radii import RadiusField, SublatticeLabel, extract_radii

__all__ = [
    "QuadCell",
    "CirclePattern",
    "IncidenceReport",
    "OverlapReport",
    "circles",
    "incidence_check",
    "is_immersed",
    "is_embedded",
]

_NEIGHBOR_OFFSETS = ((1, 0), (-1, 0), (0, 1), (0, -1))
_HALF_NEIGHBOR_OFFSETS = ((1, 1), (-1, -1), (1, -1), (-1, 1))


@dataclass(frozen=True)
class QuadCell:
    """Elementary quadrilateral with lower-left lattice index."""

    index: LatticeIndex
    vertices: tuple  # four complex numbers, counterclockwise lattice order

    def bbox(self):
        xs = [v.real for v in self.vertices]
        ys = [v.imag for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def centroid(self) -> complex:
        return sum(self.vertices) / 4.0

    def is_degenerate(self, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        vs = self.vertices
        scale = max(1.0, *(abs(v) for v in vs))
        for i in range(4):
            for j in range(i + 1, 4):
                if abs(vs[i] - vs[j]) <= tol.degenerate_tol * scale:
                    return True
        return False

    def is_self_intersecting(self) -> bool:
        vs = self.vertices
        return (_segments_cross(vs[0], vs[1], vs[2], vs[3])
                or _segments_cross(vs[1], vs[2], vs[3], vs[0]))


@dataclass
class CircleEntry:
    center: ExtendedComplex
    radius: float  # math.inf marks the line circle

    @property
    def is_line(self) -> bool:
        return math.isinf(self.radius)


@dataclass
class CirclePattern:
    entries: dict  # SublatticeLabel -> CircleEntry
    neighbors: list  # (label, label) orthogonal pairs
    half_neighbors: list  # (label, label) tangent pairs
    radii: RadiusField


@dataclass
class IncidenceReport:
    orthogonal_checked: int = 0
    tangent_checked: int = 0
    violations: list = dataclass_field(default_factory=list)
    excluded: list = dataclass_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass
class OverlapReport:
    ok: bool
    witness: tuple | None = None  # pair of LatticeIndex
    pairs_checked: int = 0
    degenerate: list = dataclass_field(default_factory=list)
    excluded: list = dataclass_field(default_factory=list)


# ---------------------------------------------------------------------------
# exact-ish planar predicates


def _orient(a: complex, b: complex, c: complex) -> float:
    return (b.real - a.real) * (c.imag - a.imag) - (b.imag - a.imag) * (c.real - a.real)


def _orient_band(a: complex, b: complex, c: complex) -> float:
    """Magnitude below which an orientation value is floating-point noise."""
    return 64.0 * 2.2e-16 * max(abs(a), abs(b), abs(c), 1.0) ** 2


def _segments_cross(a: complex, b: complex, c: complex, d: complex) -> bool:
    """Proper transversal crossing, resolved beyond the noise band.

    Contacts whose orientation values sit inside the band are treated as
    non-crossings; after the interior shrink that is exactly the
    shared-boundary case, which must not count as overlap.
    """
    band = max(_orient_band(c, d, a), _orient_band(a, b, c))
    d1 = _orient(c, d, a)
    d2 = _orient(c, d, b)
    d3 = _orient(a, b, c)
    d4 = _orient(a, b, d)
    if min(abs(d1), abs(d2), abs(d3), abs(d4)) <= band:
        return False
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0))


def _point_in_polygon(p: complex, poly) -> bool:
    """Ray-cast containment for a simple polygon (half-open edge rule);
    reliable for points beyond the noise band from the boundary."""
    inside = False
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if (a.imag > p.imag) != (b.imag > p.imag):
            t = (p.imag - a.imag) / (b.imag - a.imag)
            x = a.real + t * (b.real - a.real)
            if p.real < x:
                inside = not inside
    return inside


def _shrunk(vertices, amount: float):
    """Homothety toward the centroid that offsets the boundary inward by
    roughly `amount`; collapses to the centroid when the cell is thinner
    than the offset."""
    g = sum(vertices) / len(vertices)
    r_min = math.inf
    n = len(vertices)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        r_min = min(r_min, _point_segment_distance(g, a, b))
    if r_min <= amount:
        return (g, g, g, g)
    t = 1.0 - amount / r_min
    return tuple(g + t * (v - g) for v in vertices)


def _point_segment_distance(p: complex, a: complex, b: complex) -> float:
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return abs(p - a)
    t = ((p.real - a.real) * ab.real + (p.imag - a.imag) * ab.imag) / denom
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * ab))


def _quads_overlap(p, q) -> bool:
    """Open-interior intersection of two shrunk simple quads: a proper
    edge crossing, or containment witnessed by a vertex or the centroid
    landing inside the other quad."""
    pb = (min(v.real for v in p), min(v.imag for v in p),
          max(v.real for v in p), max(v.imag for v in p))
    qb = (min(v.real for v in q), min(v.imag for v in q),
          max(v.real for v in q), max(v.imag for v in q))
    if pb[2] < qb[0] or qb[2] < pb[0] or pb[3] < qb[1] or qb[3] < pb[1]:
        return False
    for i in range(4):
        a, b = p[i], p[(i + 1) % 4]
        for j in range(4):
            c, d = q[j], q[(j + 1) % 4]
            if _segments_cross(a, b, c, d):
                return True
    for v in (*p, sum(p) / 4.0):
        if _point_in_polygon(v, q):
            return True
    for v in (*q, sum(q) / 4.0):
        if _point_in_polygon(v, p):
            return True
    return False


# ---------------------------------------------------------------------------
# circle pattern


def circles(lat: ConformalLattice, tol: ToleranceConfig = DEFAULT_TOL) -> CirclePattern:
    """One circle per even vertex, with orthogonal/tangent adjacency."""
    fld = extract_radii(lat, tol)
    entries = {}
    for label, r in fld.values.items():
        n, m = label.to_index()
        entries[label] = CircleEntry(center=lat.at(n, m), radius=r)
    neighbors = []
    half_neighbors = []
    for label in entries:
        N, M = label
        for dN, dM in _NEIGHBOR_OFFSETS:
            other = SublatticeLabel(N + dN, M + dM)
            if other in entries and (N, M) < (other.N, other.M):
                neighbors.append((label, other))
        for dN, dM in _HALF_NEIGHBOR_OFFSETS:
            other = SublatticeLabel(N + dN, M + dM)
            if other in entries and (N, M) < (other.N, other.M):
                half_neighbors.append((label, other))
    return CirclePattern(entries=entries, neighbors=neighbors,
                         half_neighbors=half_neighbors, radii=fld)


def incidence_check(pat: CirclePattern, tol: ToleranceConfig = DEFAULT_TOL) -> IncidenceReport:
    """Orthogonality of neighbors, tangency of half-neighbors."""
    report = IncidenceReport()

    def finite_pair(z1, z2):
        e1, e2 = pat.entries[z1], pat.entries[z2]
        if e1.is_line or e2.is_line or not (e1.center.is_finite and e2.center.is_finite):
            report.excluded.append((z1, z2))
            return None
        return e1, e2

    for z1, z2 in pat.neighbors:
        pair = finite_pair(z1, z2)
        if pair is None:
            continue
        e1, e2 = pair
        d2 = abs(e1.center.value - e2.center.value) ** 2
        rr = e1.radius ** 2 + e2.radius ** 2
        report.orthogonal_checked += 1
        defect = abs(d2 - rr) / max(rr, 1e-300)
        if defect > tol.rel_tol:
            report.violations.append(("orthogonal", z1, z2, defect))

    for z1, z2 in pat.half_neighbors:
        pair = finite_pair(z1, z2)
        if pair is None:
            continue
        e1, e2 = pair
        d = abs(e1.center.value - e2.center.value)
        rs = e1.radius + e2.radius
        report.tangent_checked += 1
        defect = abs(d - rs) / max(rs, 1e-300)
        if defect > tol.rel_tol:
            report.violations.append(("tangent", z1, z2, defect))

    return report


# ---------------------------------------------------------------------------
# overlap predicates


def _collect_cells(lat: ConformalLattice, tol: ToleranceConfig):
    """Cells, pre-classified: usable cells, excluded indices (infinite
    vertex or exempt seed), degenerate violations."""
    G = lat.size
    grid = lat.complex_grid()
    seed_exempt = {LatticeIndex(0, 0)} if lat.kind in (LatticeKind.Z2, LatticeKind.LOG) else set()
    cells = []
    excluded = []
    degenerate = []
    for n in range(G):
        for m in range(G):
            idx = LatticeIndex(n, m)
            vs = (grid[n][m], grid[n + 1][m], grid[n + 1][m + 1], grid[n][m + 1])
            if any(v is None for v in vs):
                excluded.append(idx)
                continue
            cell = QuadCell(index=idx, vertices=vs)
            if cell.is_degenerate(tol):
                if idx in seed_exempt:
                    excluded.append(idx)
                else:
                    degenerate.append(idx)
                continue
            cells.append(cell)
    return cells, excluded, degenerate


def _overlap_scan(cells, pairs, tol: ToleranceConfig):
    """Test candidate pairs in deterministic order; returns the first
    violating pair (by index order) and the number tested."""
    shrunk = {}

    def sh(cell):
        got = shrunk.get(cell.index)
        if got is None:
            got = _shrunk(cell.vertices, tol.abs_tol)
            shrunk[cell.index] = got
        return got

    by_index = {c.index: c for c in cells}
    checked = 0
    for i1, i2 in pairs:
        c1, c2 = by_index[i1], by_index[i2]
        checked += 1
        if _quads_overlap(sh(c1), sh(c2)):
            return (i1, i2), checked
    return None, checked


def _prepared_report(lat, tol):
    """Common preamble: cell collection plus the immediate violations."""
    cells, excluded, degenerate = _collect_cells(lat, tol)
    report = OverlapReport(ok=True, degenerate=degenerate, excluded=excluded)
    if degenerate:
        report.ok = False
        report.witness = (degenerate[0], degenerate[0])
        return cells, report
    for cell in cells:
        if cell.is_self_intersecting():
            report.ok = False
            report.witness = (cell.index, cell.index)
            return cells, report
    return cells, report


def is_immersed(lat: ConformalLattice, tol: ToleranceConfig = DEFAULT_TOL) -> OverlapReport:
    """Open interiors of edge- or vertex-adjacent cells are disjoint.

    Degenerate cells (outside the exempt seed corner of the z2/log maps)
    and self-intersecting cells count as immediate violations.
    """
    cells, report = _prepared_report(lat, tol)
    if not report.ok:
        return report
    have = {c.index for c in cells}
    pairs = []
    for c in cells:
        n, m = c.index
        for dn, dm in ((1, 0), (0, 1), (1, 1), (-1, 1)):
            other = LatticeIndex(n + dn, m + dm)
            if other in have:
                pairs.append((min(c.index, other), max(c.index, other)))
    pairs.sort()
    witness, checked = _overlap_scan(cells, pairs, tol)
    report.pairs_checked = checked
    if witness is not None:
        report.ok = False
        report.witness = witness
    return report


def is_embedded(lat: ConformalLattice, tol: ToleranceConfig = DEFAULT_TOL) -> OverlapReport:
    """Open interiors of ALL pairs of cells are disjoint.

    Candidate pairs come from a uniform grid hash over bounding boxes;
    a plain quadratic scan takes over if the hash degenerates (cells of
    wildly mixed scale), so correctness never depends on the index.
    """
    cells, report = _prepared_report(lat, tol)
    if not report.ok:
        return report

    q = len(cells)
    pairs = set()
    use_hash = q > 1
    if use_hash:
        dims = sorted(max(c.bbox()[2] - c.bbox()[0], c.bbox()[3] - c.bbox()[1])
                      for c in cells)
        cell_size = max(dims[len(dims) // 2], 1e-12) * 1.5
        buckets: dict = {}
        insertions = 0
        for c in cells:
            x0, y0, x1, y1 = c.bbox()
            cx0, cy0 = int(x0 // cell_size), int(y0 // cell_size)
            cx1, cy1 = int(x1 // cell_size), int(y1 // cell_size)
            insertions += (cx1 - cx0 + 1) * (cy1 - cy0 + 1)
            if insertions > 64 * q:
                use_hash = False
                break
            for cx in range(cx0, cx1 + 1):
                for cy in range(cy0, cy1 + 1):
                    buckets.setdefault((cx, cy), []).append(c.index)
        if use_hash:
            for members in buckets.values():
                members.sort()
                for i in range(len(members)):
                    for j in range(i + 1, len(members)):
                        pairs.add((members[i], members[j]))

    if not use_hash:
        idxs = sorted(c.index for c in cells)
        pairs = {(idxs[i], idxs[j]) for i in range(len(idxs))
                 for j in range(i + 1, len(idxs))}

    witness, checked = _overlap_scan(cells, sorted(pairs), tol)
    report.pairs_checked = checked
    if witness is not None:
        report.ok = False
        report.witness = witness
    return report
