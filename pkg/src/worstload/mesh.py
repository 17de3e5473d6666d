"""Triangle/quad meshes of the cross-section with region and boundary tags.

A mesh carries two kinds of tags:

* per element: material region (``MATRIX`` or ``INCLUSION``) and whether the
  element belongs to the subdomain of interest (omega);
* per boundary edge: ``OUTER`` (the loaded boundary) or ``INNER`` (a clamped
  hole boundary).

Generators produce triangle meshes through the ``triangle`` package with
every circle (hole, omega rim, inclusion) inserted as a constrained polygon,
so region integrals are plain sums over tagged elements.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path

import numpy as np
import triangle
from scipy.spatial import cKDTree

from .errors import (GeometryError, MeshParseError, MeshValidationError,
                     ParameterError, ResolutionError, TopologyError)

MATRIX = 0
INCLUSION = 1
OUTER = "OUTER"
INNER = "INNER"

MIN_CIRCLE_SEGMENTS = 16

# triangle segment markers
_M_OUTER, _M_INNER, _M_OMEGA, _M_INCL = 2, 3, 4, 5


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Mesh:
    nodes: np.ndarray
    tris: np.ndarray
    quads: np.ndarray
    element_region: np.ndarray
    element_in_omega: np.ndarray
    boundary_edges: np.ndarray
    boundary_tags: np.ndarray
    anchor: int | None = None
    # (cx, cy, r_in, r_out) rims known to bound omega; only used by validate
    omega_annuli: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "nodes", _frozen(self.nodes, float).reshape(-1, 2))
        object.__setattr__(self, "tris", _frozen(self.tris, np.int64).reshape(-1, 3))
        object.__setattr__(self, "quads", _frozen(self.quads, np.int64).reshape(-1, 4))
        object.__setattr__(self, "element_region", _frozen(self.element_region, np.int8))
        object.__setattr__(self, "element_in_omega", _frozen(self.element_in_omega, bool))
        object.__setattr__(self, "boundary_edges",
                           _frozen(self.boundary_edges, np.int64).reshape(-1, 2))
        object.__setattr__(self, "boundary_tags", _frozen(self.boundary_tags, object))
        object.__setattr__(self, "omega_annuli",
                           tuple(tuple(float(v) for v in ann) for ann in self.omega_annuli))

    @property
    def n_nodes(self):
        return len(self.nodes)

    @property
    def n_elements(self):
        return len(self.tris) + len(self.quads)

    def element_connectivity(self, e):
        nt = len(self.tris)
        return self.tris[e] if e < nt else self.quads[e - nt]

    @cached_property
    def element_areas(self):
        """Signed areas, triangles first then quads."""
        return np.concatenate([_shoelace(self.nodes[self.tris]),
                               _shoelace(self.nodes[self.quads])])

    @cached_property
    def element_centroids(self):
        parts = [self.nodes[self.tris].mean(axis=1), self.nodes[self.quads].mean(axis=1)]
        return np.concatenate(parts).reshape(-1, 2)

    @property
    def outer_edges(self):
        return self.boundary_edges[self.boundary_tags == OUTER]

    @property
    def inner_edges(self):
        return self.boundary_edges[self.boundary_tags == INNER]

    @cached_property
    def parametrization(self) -> "BoundaryParametrization":
        return boundary_parametrization(self)

    @property
    def outer_nodes(self):
        """OUTER nodes in counterclockwise order starting at the anchor."""
        return self.parametrization.nodes

    @cached_property
    def clamped_nodes(self):
        return np.unique(self.inner_edges.ravel())

    @property
    def diameter(self):
        return float(np.linalg.norm(self.nodes.max(axis=0) - self.nodes.min(axis=0)))

    def with_omega(self, mask, omega_annuli=()):
        """Copy of the mesh with a different omega tagging."""
        mask = np.broadcast_to(np.asarray(mask, bool), (self.n_elements,))
        return replace(self, element_in_omega=mask, omega_annuli=omega_annuli)

    def region_area(self, mask):
        return float(self.element_areas[np.asarray(mask, bool)].sum())


def _shoelace(pts):
    """Signed polygon area for a stack of polygons, shape (k, m, 2)."""
    if pts.size == 0:
        return np.zeros(0)
    x, y = pts[..., 0], pts[..., 1]
    return 0.5 * (x * np.roll(y, -1, axis=-1) - np.roll(x, -1, axis=-1) * y).sum(axis=-1)


@dataclass(frozen=True, eq=False)
class BoundaryParametrization:
    a: float
    nodes: np.ndarray           # OUTER loop, counterclockwise, nodes[0] is the anchor
    s: np.ndarray               # arc length coordinate in [-a, a)
    edge_lengths: np.ndarray    # edge k joins nodes[k] and nodes[(k + 1) % n]

    def __len__(self):
        return len(self.nodes)


def _loops(edges):
    """Split an edge list into closed loops. Returns (loops, problems)."""
    adj = {}
    for p, q in edges:
        adj.setdefault(int(p), []).append(int(q))
        adj.setdefault(int(q), []).append(int(p))
    problems = [f"boundary node {n} has {len(v)} incident edges (expected 2)"
                for n, v in adj.items() if len(v) != 2]
    if problems:
        return [], problems
    seen = set()
    loops = []
    for start in sorted(adj):
        if start in seen:
            continue
        loop = [start]
        seen.add(start)
        prev, cur = start, adj[start][0]
        while cur != start:
            loop.append(cur)
            seen.add(cur)
            a, b = adj[cur]
            prev, cur = cur, (b if a == prev else a)
        loops.append(loop)
    return loops, []


def _default_anchor(nodes, loop):
    pts = nodes[loop]
    order = np.lexsort((pts[:, 0], pts[:, 1]))
    return int(loop[order[0]])


def boundary_parametrization(mesh: Mesh) -> BoundaryParametrization:
    """Counterclockwise arc-length coordinate on the OUTER loop, starting at -a."""
    loops, problems = _loops(mesh.outer_edges)
    if problems:
        raise TopologyError(problems[0])
    if len(loops) != 1:
        raise TopologyError(f"expected exactly one OUTER loop, found {len(loops)}")
    loop = np.asarray(loops[0])
    if _shoelace(mesh.nodes[loop][None])[0] < 0:
        loop = loop[::-1]
    anchor = mesh.anchor if mesh.anchor is not None else _default_anchor(mesh.nodes, loop)
    where = np.flatnonzero(loop == anchor)
    if len(where) == 0:
        raise TopologyError(f"anchor node {anchor} is not on the OUTER boundary")
    loop = np.roll(loop, -int(where[0]))
    pts = mesh.nodes[loop]
    lengths = np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1)
    a = 0.5 * lengths.sum()
    s = -a + np.concatenate([[0.0], np.cumsum(lengths[:-1])])
    return BoundaryParametrization(a=float(a), nodes=_frozen(loop, np.int64),
                                   s=_frozen(s, float), edge_lengths=_frozen(lengths, float))


def validate(mesh: Mesh) -> list[str]:
    """Return one diagnostic string per violated mesh invariant."""
    diags = []
    n = mesh.n_nodes
    ne = mesh.n_elements
    for name, conn in (("tri", mesh.tris), ("quad", mesh.quads)):
        if conn.size and (conn.min() < 0 or conn.max() >= n):
            diags.append(f"bad-index: a {name} references a node outside 0..{n - 1}")
    if mesh.boundary_edges.size and (mesh.boundary_edges.min() < 0
                                     or mesh.boundary_edges.max() >= n):
        diags.append("bad-index: a boundary edge references a missing node")
    if len(mesh.element_region) != ne or len(mesh.element_in_omega) != ne:
        diags.append(f"tag-count: region tags do not match {ne} elements")
    if diags:
        return diags

    for e in np.flatnonzero(mesh.element_areas <= 0):
        diags.append(f"negative-area: element {e} has signed area "
                     f"{mesh.element_areas[e]:.3e} (clockwise or degenerate)")

    used = np.zeros(n, bool)
    used[mesh.tris.ravel()] = True
    used[mesh.quads.ravel()] = True
    for i in np.flatnonzero(~used):
        diags.append(f"orphan-node: node {i} belongs to no element")
    tol = 1e-12 * max(mesh.diameter, 1e-300)
    for i, j in sorted(cKDTree(mesh.nodes).query_pairs(tol)):
        diags.append(f"duplicate-node: nodes {i} and {j} coincide")

    # tagged edges must be exactly the topological boundary
    sides = np.concatenate(
        [np.stack([conn, np.roll(conn, -1, axis=1)], axis=-1).reshape(-1, 2)
         for conn in (mesh.tris, mesh.quads)])
    sides, counts = np.unique(np.sort(sides, axis=1), axis=0, return_counts=True)
    topo = set(map(tuple, sides[counts == 1].tolist()))
    tagged = {(min(p, q), max(p, q)) for p, q in mesh.boundary_edges}
    for key in sorted(topo - tagged):
        diags.append(f"untagged-boundary: edge {key} lies on the mesh boundary but has no tag")
    for key in sorted(tagged - topo):
        diags.append(f"interior-tagged: edge {key} is tagged but is not a boundary edge")
    bad_tags = set(mesh.boundary_tags) - {OUTER, INNER}
    if bad_tags:
        diags.append(f"bad-tag: unknown boundary tags {sorted(bad_tags)}")

    outer_loops, problems = _loops(mesh.outer_edges)
    diags += [f"outer-loop: {p}" for p in problems]
    if not problems and len(outer_loops) != 1:
        diags.append(f"outer-loop: expected one closed OUTER loop, found {len(outer_loops)}")
    _, problems = _loops(mesh.inner_edges)
    diags += [f"inner-loop: {p}" for p in problems]
    shared = set(mesh.outer_edges.ravel()) & set(mesh.inner_edges.ravel())
    if shared:
        diags.append(f"loop-overlap: nodes {sorted(shared)[:5]} are on both OUTER and INNER loops")
    if mesh.anchor is not None and mesh.anchor not in set(mesh.outer_edges.ravel()):
        diags.append(f"anchor: node {mesh.anchor} is not an OUTER node")

    # omega conformity against known rims
    if mesh.omega_annuli:
        rtol = 1e-9 * mesh.diameter
        for e in range(ne):
            pts = mesh.nodes[mesh.element_connectivity(e)]
            inside_closed = np.zeros(len(pts), bool)
            inside_open = np.zeros(len(pts), bool)
            for cx, cy, r_in, r_out in mesh.omega_annuli:
                d = np.hypot(pts[:, 0] - cx, pts[:, 1] - cy)
                inside_closed |= (d >= r_in - rtol) & (d <= r_out + rtol)
                inside_open |= (d > r_in + rtol) & (d < r_out - rtol)
            if mesh.element_in_omega[e] and not inside_closed.all():
                diags.append(f"nonconforming-omega: element {e} is tagged in omega "
                             "but has vertices outside it")
            elif not mesh.element_in_omega[e] and inside_open.any():
                diags.append(f"nonconforming-omega: element {e} is outside omega "
                             "but has vertices strictly inside it")
    return diags


def check(mesh: Mesh) -> Mesh:
    diags = validate(mesh)
    if diags:
        raise MeshValidationError(diags[0])
    return mesh


# ---------------------------------------------------------------------------
# generators

def _circle_points(center, radius, h):
    m = max(MIN_CIRCLE_SEGMENTS, math.ceil(2 * math.pi * radius / h))
    t = 2 * math.pi * np.arange(m) / m
    return np.column_stack([center[0] + radius * np.cos(t), center[1] + radius * np.sin(t)])


def _subdivide(vertices, h):
    """Closed polygon with every edge split into pieces no longer than h."""
    vertices = np.asarray(vertices, float)
    out = []
    for p, q in zip(vertices, np.roll(vertices, -1, axis=0)):
        k = max(1, math.ceil(np.linalg.norm(q - p) / h - 1e-12))
        out.extend(p + (q - p) * t for t in np.arange(k) / k)
    return np.asarray(out)


def points_in_polygon(pts, poly):
    """Even-odd rule, vectorized over points."""
    pts = np.asarray(pts, float)
    x, y = pts[:, 0], pts[:, 1]
    inside = np.zeros(len(pts), bool)
    for (x1, y1), (x2, y2) in zip(poly, np.roll(poly, -1, axis=0)):
        crosses = (y1 > y) != (y2 > y)
        with np.errstate(divide="ignore", invalid="ignore"):
            xint = (x2 - x1) * (y - y1) / (y2 - y1) + x1
        inside ^= crosses & (x < xint)
    return inside


def generate_polygon_mesh(outline, target_h, holes=(), omega=None, inclusions=(),
                          anchor_point=None) -> Mesh:
    """Triangulate a polygon with clamped circular holes, an omega annulus and
    circular inclusions.

    ``holes`` and ``inclusions`` are ``((cx, cy), r)`` pairs. ``omega`` is
    ``((cx, cy), r_in, r_out)``; ``r_in`` may be 0 (a disk) or coincide with a
    hole radius, in which case the hole rim doubles as the inner omega rim.
    ``omega="all"`` tags every element. ``anchor_point`` selects the OUTER
    node nearest to it as the seam of the arc-length coordinate.
    """
    if target_h <= 0:
        raise ParameterError("target_h must be positive")
    loops = []  # (points, marker)
    loops.append((_subdivide(outline, target_h), _M_OUTER))
    for c, r in holes:
        loops.append((_circle_points(c, r, target_h), _M_INNER))
    omega_polys = None
    annuli = ()
    if omega is not None and omega != "all":
        c, r_in, r_out = omega
        outer_rim = _circle_points(c, r_out, target_h)
        loops.append((outer_rim, _M_OMEGA))
        inner_rim = None
        if r_in > 0:
            shared = [i for i, (hc, hr) in enumerate(holes)
                      if np.allclose(hc, c) and math.isclose(hr, r_in)]
            inner_rim = _circle_points(c, r_in, target_h)
            if not shared:
                loops.append((inner_rim, _M_OMEGA))
        omega_polys = (outer_rim, inner_rim)
        annuli = ((c[0], c[1], r_in, r_out),)
    for c, r in inclusions:
        loops.append((_circle_points(c, r, target_h), _M_INCL))

    verts, segs, marks = [], [], []
    for pts, marker in loops:
        start = len(verts)
        m = len(pts)
        verts.extend(pts)
        segs.extend((start + i, start + (i + 1) % m) for i in range(m))
        marks.extend([marker] * m)
    pslg = {"vertices": np.asarray(verts), "segments": np.asarray(segs),
            "segment_markers": np.asarray(marks)[:, None]}
    if holes:
        pslg["holes"] = np.asarray([c for c, _ in holes], float)
    max_area = math.sqrt(3) / 4 * target_h ** 2
    out = triangle.triangulate(pslg, f"pq30a{max_area:.15f}YYQ")

    nodes = out["vertices"]
    tris = out["triangles"]
    neg = _shoelace(nodes[tris]) < 0
    tris[neg] = tris[neg][:, ::-1]
    smark = out["segment_markers"].ravel()
    keep = (smark == _M_OUTER) | (smark == _M_INNER)
    edges = out["segments"][keep]
    tags = np.where(smark[keep] == _M_OUTER, OUTER, INNER).astype(object)

    # drop vertices triangle left unused (none expected, but keep indices tight)
    used = np.unique(tris)
    if len(used) != len(nodes):
        remap = -np.ones(len(nodes), np.int64)
        remap[used] = np.arange(len(used))
        nodes, tris, edges = nodes[used], remap[tris], remap[edges]

    cent = nodes[tris].mean(axis=1)
    region = np.full(len(tris), MATRIX, np.int8)
    for c, r in inclusions:
        region[points_in_polygon(cent, _circle_points(c, r, target_h))] = INCLUSION
    if omega == "all":
        in_omega = np.ones(len(tris), bool)
    elif omega_polys is None:
        in_omega = np.zeros(len(tris), bool)
    else:
        outer_rim, inner_rim = omega_polys
        in_omega = points_in_polygon(cent, outer_rim)
        if inner_rim is not None:
            in_omega &= ~points_in_polygon(cent, inner_rim)

    anchor = None
    if anchor_point is not None:
        outer_ids = np.unique(edges[tags == OUTER])
        d = np.linalg.norm(nodes[outer_ids] - np.asarray(anchor_point, float), axis=1)
        anchor = int(outer_ids[np.argmin(d)])
    return Mesh(nodes=nodes, tris=tris, quads=np.zeros((0, 4), np.int64),
                element_region=region, element_in_omega=in_omega,
                boundary_edges=edges, boundary_tags=tags, anchor=anchor,
                omega_annuli=annuli)


def generate_disk_mesh(outer_radius, omega_radius, target_h) -> Mesh:
    """Homogeneous disk centered at the origin with a concentric omega disk."""
    if not 0 < omega_radius < outer_radius:
        raise ParameterError("need 0 < omega_radius < outer_radius")
    if not 0 < target_h < omega_radius:
        raise ParameterError("need 0 < target_h < omega_radius")
    if math.ceil(2 * math.pi * outer_radius / target_h) < MIN_CIRCLE_SEGMENTS:
        raise ResolutionError(f"target_h={target_h} gives fewer than "
                              f"{MIN_CIRCLE_SEGMENTS} boundary segments")
    outline = _circle_points((0.0, 0.0), outer_radius, target_h)
    return generate_polygon_mesh(outline, target_h,
                                 omega=((0.0, 0.0), 0.0, omega_radius))


def generate_square_hole_mesh(side, hole_radius, omega_radius, inclusions, target_h) -> Mesh:
    """Square centered at the origin with a clamped central hole, an omega
    annulus around it and circular inclusions given as ``(center, radius, tag)``."""
    if not 0 < hole_radius < omega_radius < side / 2:
        raise ParameterError("need 0 < hole_radius < omega_radius < side/2")
    if not 0 < target_h < hole_radius:
        raise ParameterError("need 0 < target_h < hole_radius")
    half = side / 2
    circles = []
    for inc in inclusions:
        (cx, cy), r = inc[0], inc[1]
        if r <= 0:
            raise ParameterError("inclusion radius must be positive")
        if abs(cx) + r >= half or abs(cy) + r >= half:
            raise GeometryError(f"inclusion at ({cx}, {cy}) touches the outer boundary")
        d = math.hypot(cx, cy)
        if d - r <= hole_radius:
            raise GeometryError(f"inclusion at ({cx}, {cy}) overlaps the hole")
        if abs(d - omega_radius) < r:
            raise GeometryError(f"inclusion at ({cx}, {cy}) crosses the omega rim")
        for (ox, oy), orad in circles:
            if math.hypot(cx - ox, cy - oy) < r + orad:
                raise GeometryError(f"inclusions at ({cx}, {cy}) and ({ox}, {oy}) overlap")
        circles.append(((float(cx), float(cy)), float(r)))
    outline = [(-half, -half), (half, -half), (half, half), (-half, half)]
    return generate_polygon_mesh(outline, target_h,
                                 holes=[((0.0, 0.0), hole_radius)],
                                 omega=((0.0, 0.0), hole_radius, omega_radius),
                                 inclusions=circles)


# ---------------------------------------------------------------------------
# file format

def write_mesh(mesh: Mesh, path, comment=None):
    lines = ["meshv1"]
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines.append(f"nodes {mesh.n_nodes}")
    lines += [f"{x!r} {y!r}" for x, y in mesh.nodes.tolist()]
    if len(mesh.tris):
        lines.append(f"tris {len(mesh.tris)}")
        lines += [" ".join(map(str, t)) for t in mesh.tris.tolist()]
    if len(mesh.quads):
        lines.append(f"quads {len(mesh.quads)}")
        lines += [" ".join(map(str, q)) for q in mesh.quads.tolist()]
    lines.append("regions")
    for reg, w in zip(mesh.element_region, mesh.element_in_omega):
        lines.append(("I" if reg == INCLUSION else "M") + ("+w" if w else ""))
    lines.append(f"boundary {len(mesh.boundary_edges)}")
    lines += [f"{p} {q} {t}" for (p, q), t in zip(mesh.boundary_edges.tolist(),
                                                   mesh.boundary_tags)]
    if mesh.anchor is not None:
        lines.append(f"anchor {mesh.anchor}")
    for ann in mesh.omega_annuli:
        lines.append("omega-annulus " + " ".join(repr(v) for v in ann))
    Path(path).write_text("\n".join(lines) + "\n")


def _numbered_tokens(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if toks:
            yield lineno, toks


def _ints(toks, lineno, what):
    try:
        return [int(t) for t in toks]
    except ValueError:
        raise MeshParseError(f"expected integers in {what}, got {' '.join(toks)!r}", lineno)


def parse_mesh(text) -> Mesh:
    lines = list(_numbered_tokens(text))
    if not lines or lines[0][1] != ["meshv1"]:
        raise MeshParseError("missing 'meshv1' header", lines[0][0] if lines else 1)
    nodes = tris = None
    quads = []
    regions = None
    edges, tags = [], []
    anchor = None
    annuli = []
    i = 1

    def take(count, lineno):
        nonlocal i
        block = lines[i:i + count]
        if len(block) < count:
            raise MeshParseError(f"expected {count} entries, file ended early", lineno)
        i += count
        return block

    def count_of(toks, lineno):
        if len(toks) != 2:
            raise MeshParseError(f"expected '{toks[0]} <count>'", lineno)
        return _ints(toks[1:], lineno, toks[0])[0]

    while i < len(lines):
        lineno, toks = lines[i]
        i += 1
        key = toks[0]
        if key == "nodes":
            nodes = []
            for ln, t in take(count_of(toks, lineno), lineno):
                if len(t) != 2:
                    raise MeshParseError("node line needs 'x y'", ln)
                try:
                    nodes.append((float(t[0]), float(t[1])))
                except ValueError:
                    raise MeshParseError(f"bad coordinate {' '.join(t)!r}", ln)
        elif key in ("tris", "quads"):
            k = 3 if key == "tris" else 4
            block = []
            for ln, t in take(count_of(toks, lineno), lineno):
                if len(t) != k:
                    raise MeshParseError(f"{key} line needs {k} node indices", ln)
                block.append((ln, _ints(t, ln, key)))
            if key == "tris":
                tris = block
            else:
                quads = block
        elif key == "regions":
            if tris is None and not quads:
                raise MeshParseError("'regions' must follow the element blocks", lineno)
            ne = len(tris or []) + len(quads)
            regions = []
            for ln, t in take(ne, lineno):
                tag = t[0]
                base, _, w = tag.partition("+")
                if base not in ("M", "I") or w not in ("", "w") or len(t) != 1:
                    raise MeshParseError(f"bad region tag {' '.join(t)!r}", ln)
                regions.append((INCLUSION if base == "I" else MATRIX, w == "w"))
        elif key == "boundary":
            for ln, t in take(count_of(toks, lineno), lineno):
                if len(t) != 3 or t[2] not in (OUTER, INNER):
                    raise MeshParseError("boundary line needs 'n1 n2 OUTER|INNER'", ln)
                edges.append(_ints(t[:2], ln, "boundary"))
                tags.append(t[2])
        elif key == "anchor":
            anchor = count_of(toks, lineno)
        elif key == "omega-annulus":
            if len(toks) != 5:
                raise MeshParseError("omega-annulus needs 'cx cy r_in r_out'", lineno)
            try:
                annuli.append(tuple(float(v) for v in toks[1:]))
            except ValueError:
                raise MeshParseError("bad omega-annulus values", lineno)
        else:
            raise MeshParseError(f"unknown section {key!r}", lineno)

    if nodes is None:
        raise MeshParseError("no 'nodes' section", lines[-1][0])
    tris = tris or []
    if not tris and not quads:
        raise MeshParseError("no elements", lines[-1][0])
    n = len(nodes)
    for e, (ln, conn) in enumerate(tris + quads):
        for v in conn:
            if not 0 <= v < n:
                raise MeshParseError(f"element {e} references missing node {v}", ln)
    if regions is None:
        raise MeshParseError("no 'regions' section", lines[-1][0])
    for p, q in edges:
        if not (0 <= p < n and 0 <= q < n):
            raise MeshParseError(f"boundary edge ({p}, {q}) references a missing node")
    if anchor is not None and not 0 <= anchor < n:
        raise MeshParseError(f"anchor {anchor} is not a node")
    return Mesh(nodes=nodes,
                tris=[c for _, c in tris] or np.zeros((0, 3)),
                quads=[c for _, c in quads] or np.zeros((0, 4)),
                element_region=[r for r, _ in regions],
                element_in_omega=[w for _, w in regions],
                boundary_edges=edges or np.zeros((0, 2)),
                boundary_tags=tags, anchor=anchor, omega_annuli=tuple(annuli))


def load_mesh(path) -> Mesh:
    """Read a ``meshv1`` file and validate it."""
    mesh = parse_mesh(Path(path).read_text())
    return check(mesh)
