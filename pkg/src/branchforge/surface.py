"""Flag-no-square surface triangulations containing a given graph as a
full subgraph.

The chain: a rotation system gives a cellular embedding into an orientable
surface by face tracing; faces are triangulated with a ring of fresh
vertices plus a cone point (stays simplicial even when a face walk repeats
vertices); a relative subdivision then replaces every triangle by one of
two fixed patterns, keeping the distinguished subcomplex L untouched, and
the result is flag with no induced 4-cycle and L still full.  Checkers
re-verify every claimed property; nothing is assumed from the construction.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .bounds import confdim_lower_branching
from .graph import Graph, girth

Triangle = tuple[str, str, str]
Edge = frozenset


class BadInput(ValueError):
    """Raised when an embedding is requested for an unusable graph."""


class DegenerateFace(ValueError):
    """A traced face walk is shorter than 3 darts."""


class NotSimplicial(ValueError):
    """Raised when a constructed complex fails the simplicial checks."""


class PatternMismatch(ValueError):
    """A triangle meets the distinguished subcomplex in two or more edges."""


# -- complexes ------------------------------------------------------------------


@dataclass
class Complex2D:
    """Pure 2-dimensional simplicial complex over string vertex labels,
    carrying a marked subcomplex L (vertices, edges and triangles)."""

    vertices: tuple[str, ...]
    triangles: frozenset[frozenset]
    L_vertices: frozenset = frozenset()
    L_edges: frozenset = frozenset()
    L_triangles: frozenset = frozenset()
    _edges: frozenset = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise NotSimplicial("duplicate vertex labels")
        edges = set()
        for t in self.triangles:
            if len(t) != 3 or not t <= vset:
                raise NotSimplicial(f"bad triangle {set(t)}")
            a, b, c = sorted(t)
            edges |= {frozenset((a, b)), frozenset((b, c)), frozenset((a, c))}
        object.__setattr__(self, "_edges", frozenset(edges))
        if not self.L_vertices <= vset:
            raise NotSimplicial("L vertices not in the complex")
        for e in self.L_edges:
            if not (e in self._edges and e <= self.L_vertices):
                raise NotSimplicial(f"L edge {set(e)} not an edge of the complex")
        for t in self.L_triangles:
            if t not in self.triangles:
                raise NotSimplicial("L triangle not in the complex")
            for e in _tri_edges(t):
                if e not in self.L_edges:
                    raise NotSimplicial("L is not closed under faces")

    @property
    def edges(self) -> frozenset:
        return self._edges

    def counts(self) -> tuple[int, int, int]:
        return (len(self.vertices), len(self._edges), len(self.triangles))

    def euler(self) -> int:
        v, e, f = self.counts()
        return v - e + f

    def one_skeleton(self) -> Graph:
        index = {v: i for i, v in enumerate(self.vertices)}
        return Graph(
            self.vertices,
            [tuple(sorted(index[x] for x in e)) for e in self._edges],
        )


def _tri_edges(t: frozenset) -> list[frozenset]:
    a, b, c = sorted(t)
    return [frozenset((a, b)), frozenset((b, c)), frozenset((a, c))]


def make_complex(
    triangles: Iterable[Sequence[str]],
    L_vertices: Iterable[str] = (),
    L_edges: Iterable[Sequence[str]] = (),
    L_triangles: Iterable[Sequence[str]] = (),
    extra_vertices: Iterable[str] = (),
) -> Complex2D:
    tris = frozenset(frozenset(t) for t in triangles)
    verts: list[str] = []
    seen = set()
    for t in sorted(tuple(sorted(t)) for t in tris):
        for v in t:
            if v not in seen:
                seen.add(v)
                verts.append(v)
    for v in extra_vertices:
        if v not in seen:
            seen.add(v)
            verts.append(v)
    return Complex2D(
        vertices=tuple(sorted(verts)),
        triangles=tris,
        L_vertices=frozenset(L_vertices),
        L_edges=frozenset(frozenset(e) for e in L_edges),
        L_triangles=frozenset(frozenset(t) for t in L_triangles),
    )


# -- rotation systems and face tracing ----------------------------------------------


RotationSystem = dict[int, tuple[int, ...]]


def _is_two_edge_connected(g: Graph) -> bool:
    if g.V < 2:
        return False
    from .graph import is_connected

    if not is_connected(g):
        return False
    # bridge detection by DFS low-links
    disc = [-1] * g.V
    low = [0] * g.V
    timer = 0
    stack = [(0, -1, iter(g.neighbors(0)))]
    disc[0] = low[0] = timer
    timer += 1
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, v, iter(g.neighbors(w))))
                advanced = True
                break
            elif w != parent:
                low[v] = min(low[v], disc[w])
        if not advanced:
            stack.pop()
            if stack:
                pv = stack[-1][0]
                low[pv] = min(low[pv], low[v])
                if low[v] > disc[pv]:
                    return False  # bridge pv-v
    return True


def rotation_system(g: Graph, strategy: str = "index") -> RotationSystem:
    """Cyclic neighbor orders: `index` uses ascending index order at every
    vertex; `twisted` reverses the rotation at the first vertex of degree
    at least 3, which perturbs a genus-0 embedding off the sphere."""
    if not _is_two_edge_connected(g):
        raise BadInput("embedding requires a 2-edge-connected graph")
    if min(g.degree(v) for v in range(g.V)) < 2:
        raise BadInput("embedding requires minimum valence 2")
    rot = {v: tuple(g.neighbors(v)) for v in range(g.V)}
    if strategy == "twisted":
        pick = next((v for v in range(g.V) if g.degree(v) >= 3), None)
        if pick is not None:
            rot[pick] = tuple(reversed(rot[pick]))
    elif strategy != "index":
        raise BadInput(f"unknown rotation strategy {strategy!r}")
    return rot


FaceWalk = tuple[tuple[int, int], ...]


def face_walks(g: Graph, rot: RotationSystem) -> tuple[list[FaceWalk], int]:
    """Trace dart orbits of the embedding; returns the face walks and the
    genus from the Euler formula."""
    succ = {}
    for v, order in rot.items():
        for i, w in enumerate(order):
            succ[(v, w)] = order[(i + 1) % len(order)]
    darts = {(u, v) for u in range(g.V) for v in g.neighbors(u)}
    walks: list[FaceWalk] = []
    while darts:
        start = min(darts)
        walk = []
        cur = start
        while True:
            walk.append(cur)
            darts.discard(cur)
            u, v = cur
            cur = (v, succ[(v, u)])
            if cur == start:
                break
        if len(walk) < 3:
            raise DegenerateFace(f"face walk of length {len(walk)}")
        walks.append(tuple(walk))
    chi = g.V - g.E + len(walks)
    if chi % 2 != 0 or chi > 2:
        raise BadInput(f"euler characteristic {chi} is not of a closed surface")
    return walks, (2 - chi) // 2


def triangulate_faces(g: Graph, rot: RotationSystem) -> Complex2D:
    """Close each traced face with a ring of fresh vertices and a cone
    point: per walk position i, triangles (v_i, v_{i+1}, r_i),
    (v_{i+1}, r_i, r_{i+1}) and (r_i, r_{i+1}, c).

    The input graph sits inside the result as a full subcomplex with no
    edge subdivided; verified before returning.
    """
    walks, _ = face_walks(g, rot)
    names = g.names
    triangles: list[tuple[str, str, str]] = []
    for f, walk in enumerate(walks):
        k = len(walk)
        ring = [f"f{f}.r{i}" for i in range(k)]
        center = f"f{f}.c"
        for i in range(k):
            vi = names[walk[i][0]]
            vj = names[walk[i][1]]
            triangles.append((vi, vj, ring[i]))
            triangles.append((vj, ring[i], ring[(i + 1) % k]))
            triangles.append((ring[i], ring[(i + 1) % k], center))
    complex2d = make_complex(
        triangles,
        L_vertices=names,
        L_edges=[(names[u], names[v]) for u, v in g.edges()],
    )
    if len(complex2d.triangles) != sum(3 * len(w) for w in walks):
        raise NotSimplicial("face triangulation produced coincident triangles")
    problems = _fullness_problems(complex2d)
    if problems:
        raise NotSimplicial(f"graph not full in the triangulation: {problems[0]}")
    return complex2d


# -- subdivisions --------------------------------------------------------------------


def pattern_absolute(
    corners: Sequence[str] = ("A", "B", "C"),
    mids: Sequence[str] | None = None,
    inner: Sequence[str] | None = None,
) -> list[Triangle]:
    """Replacement for a triangle with no L-edge: subdivided boundary,
    subdivided medial triangle, three spokes.  9 vertices, 18 edges, 10
    triangles; the corners end up pairwise non-adjacent."""
    a, b, c = corners
    mab, mbc, mca = mids if mids else (f"m({a}|{b})", f"m({b}|{c})", f"m({c}|{a})")
    i1, i2, i3 = inner if inner else ("i1", "i2", "i3")
    return [
        (a, mab, i1),
        (a, i1, mca),
        (b, mbc, i2),
        (b, i2, mab),
        (c, mca, i3),
        (c, i3, mbc),
        (i1, mab, i2),
        (i2, mbc, i3),
        (i3, mca, i1),
        (i1, i2, i3),
    ]


def pattern_relative(
    apex: str = "x",
    base: Sequence[str] = ("y", "z"),
    mids: Sequence[str] | None = None,
    inner: Sequence[str] | None = None,
) -> list[Triangle]:
    """Replacement for a triangle whose edge base[0]-base[1] lies in L: the
    L-edge is kept whole, the two other sides get midpoints, and a seven-
    vertex interior fills the disc.  12 vertices, 28 edges, 17 triangles;
    no new edge joins the L-edge endpoints."""
    x = apex
    y, z = base
    mxy, mxz = mids if mids else (f"m({x}|{y})", f"m({x}|{z})")
    w, a, b, c, ab, bc, ca = inner if inner else ("w", "a", "b", "c", "ab", "bc", "ca")
    return [
        (x, mxy, a),
        (x, a, mxz),
        (mxy, y, b),
        (y, w, b),
        (y, z, w),
        (z, w, c),
        (z, mxz, c),
        (a, mxy, ab),
        (mxy, b, ab),
        (b, w, bc),
        (w, c, bc),
        (c, mxz, ca),
        (mxz, a, ca),
        (a, ab, ca),
        (b, bc, ab),
        (c, ca, bc),
        (ab, bc, ca),
    ]


def pattern_absolute_complex() -> Complex2D:
    return make_complex(pattern_absolute())


def pattern_relative_complex() -> Complex2D:
    tris = pattern_relative()
    return make_complex(tris, L_vertices=("y", "z"), L_edges=[("y", "z")])


def partial_barycentric(k: Complex2D) -> Complex2D:
    """Stellar subdivision of every triangle outside L, with edge
    barycenters only on non-L edges; the result is flag with L full, and
    both properties are verified."""
    tri_new: list[tuple[str, ...]] = []
    kept: list[frozenset] = []

    def mid(e: frozenset) -> str:
        a, b = sorted(e)
        return f"m({a}|{b})"

    for t in k.triangles:
        if t in k.L_triangles:
            kept.append(t)
            continue
        a, b, c = sorted(t)
        center = f"b({a}|{b}|{c})"
        ring: list[str] = []
        for x, y in ((a, b), (b, c), (c, a)):
            ring.append(x)
            e = frozenset((x, y))
            if e not in k.L_edges:
                ring.append(mid(e))
        for i in range(len(ring)):
            tri_new.append((ring[i], ring[(i + 1) % len(ring)], center))
    out = make_complex(
        [tuple(sorted(t)) for t in kept] + tri_new,
        L_vertices=k.L_vertices,
        L_edges=[tuple(sorted(e)) for e in k.L_edges],
        L_triangles=[tuple(sorted(t)) for t in k.L_triangles],
        extra_vertices=k.vertices,
    )
    flag_problems = _flag_problems(out)
    full_problems = _fullness_problems(out)
    if flag_problems or full_problems:
        raise NotSimplicial(
            f"barycentric pass failed: {(flag_problems + full_problems)[0]}"
        )
    return out


def fns_subdivide(k: Complex2D) -> Complex2D:
    """Flag-no-square subdivision relative to L: keep triangles wholly in
    L, replace the rest by the absolute or relative pattern, sharing
    midpoints on non-L edges so adjacent replacements agree."""
    for t in k.triangles:
        if t in k.L_triangles:
            continue
        l_count = sum(1 for e in _tri_edges(t) if e in k.L_edges)
        if l_count >= 2:
            raise PatternMismatch(
                f"triangle {sorted(t)} meets L in {l_count} edges"
            )

    def mid(e: frozenset) -> str:
        a, b = sorted(e)
        return f"m({a}|{b})"

    triangles: list[tuple[str, ...]] = []
    for t in sorted(tuple(sorted(t)) for t in k.triangles):
        ft = frozenset(t)
        if ft in k.L_triangles:
            triangles.append(t)
            continue
        l_edges = [e for e in _tri_edges(ft) if e in k.L_edges]
        tid = "|".join(t)
        if not l_edges:
            a, b, c = t
            triangles.extend(
                pattern_absolute(
                    (a, b, c),
                    mids=(
                        mid(frozenset((a, b))),
                        mid(frozenset((b, c))),
                        mid(frozenset((c, a))),
                    ),
                    inner=(f"t({tid}).1", f"t({tid}).2", f"t({tid}).3"),
                )
            )
        else:
            y, z = sorted(l_edges[0])
            x = next(v for v in t if v not in l_edges[0])
            triangles.extend(
                pattern_relative(
                    x,
                    (y, z),
                    mids=(mid(frozenset((x, y))), mid(frozenset((x, z)))),
                    inner=tuple(f"t({tid}).{name}" for name in
                                ("w", "a", "b", "c", "ab", "bc", "ca")),
                )
            )
    out = make_complex(
        triangles,
        L_vertices=k.L_vertices,
        L_edges=[tuple(sorted(e)) for e in k.L_edges],
        L_triangles=[tuple(sorted(t)) for t in k.L_triangles],
        extra_vertices=k.vertices,
    )
    problems = _flag_problems(out) + _fullness_problems(out)
    sq, _ = _induced_square(out)
    if sq:
        problems.append("induced 4-cycle survived the subdivision")
    new_edges = out.edges - k.edges
    for e in new_edges:
        if e <= k.L_vertices:
            problems.append(f"new edge {sorted(e)} joins two L vertices")
    if problems:
        raise NotSimplicial(f"relative subdivision failed: {problems[0]}")
    return out


# -- checkers -------------------------------------------------------------------------


def _edge_triangles(k: Complex2D) -> dict[frozenset, list[frozenset]]:
    out: dict[frozenset, list[frozenset]] = defaultdict(list)
    for t in k.triangles:
        for e in _tri_edges(t):
            out[e].append(t)
    return out


def _is_closed_surface(k: Complex2D) -> bool:
    et = _edge_triangles(k)
    if any(len(ts) != 2 for ts in et.values()):
        return False
    # vertex links must be single cycles
    at_vertex: dict[str, list[frozenset]] = defaultdict(list)
    for t in k.triangles:
        for v in t:
            at_vertex[v].append(t)
    for v in k.vertices:
        tris = at_vertex.get(v, [])
        if not tris:
            return False
        link: dict[str, set[str]] = defaultdict(set)
        for t in tris:
            a, b = sorted(t - {v})
            link[a].add(b)
            link[b].add(a)
        if any(len(nb) != 2 for nb in link.values()):
            return False
        start = next(iter(link))
        seen = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for y in link[x]:
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        if len(seen) != len(link):
            return False
    return True


def _is_orientable(k: Complex2D) -> bool | None:
    """Propagate orientations across shared edges; None when the complex is
    not a closed surface."""
    if not _is_closed_surface(k):
        return None
    et = _edge_triangles(k)
    orient: dict[frozenset, tuple[str, str, str]] = {}
    tris = sorted(tuple(sorted(t)) for t in k.triangles)
    for seed in tris:
        fs = frozenset(seed)
        if fs in orient:
            continue
        orient[fs] = seed
        stack = [fs]
        while stack:
            t = stack.pop()
            cyc = orient[t]
            directed = {
                (cyc[0], cyc[1]), (cyc[1], cyc[2]), (cyc[2], cyc[0])
            }
            for e in _tri_edges(t):
                for s in et[e]:
                    if s == t:
                        continue
                    a, b = sorted(e)
                    need = (a, b) if (b, a) in directed else (b, a)
                    c = next(iter(s - e))
                    want = (need[0], need[1], c)
                    if s in orient:
                        scyc = orient[s]
                        sdir = {
                            (scyc[0], scyc[1]), (scyc[1], scyc[2]), (scyc[2], scyc[0])
                        }
                        if need not in sdir:
                            return False
                    else:
                        orient[s] = want
                        stack.append(s)
    return True


def _flag_problems(k: Complex2D) -> list[str]:
    g = k.one_skeleton()
    index = {v: i for i, v in enumerate(k.vertices)}
    problems = []
    for e in sorted(tuple(sorted(e)) for e in k.edges):
        a, b = e
        common = g.adj[index[a]] & g.adj[index[b]]
        mask = common
        while mask:
            low = mask & -mask
            c = low.bit_length() - 1
            mask ^= low
            cv = k.vertices[c]
            if frozenset((a, b, cv)) not in k.triangles:
                problems.append(f"3-clique {a},{b},{cv} spans no triangle")
            m2 = mask
            while m2:
                l2 = m2 & -m2
                d = l2.bit_length() - 1
                m2 ^= l2
                if g.adj[c] >> d & 1:
                    problems.append(
                        f"4-clique {a},{b},{cv},{k.vertices[d]}"
                    )
            if problems:
                return problems
    return problems


def _induced_square(k: Complex2D) -> tuple[bool, tuple[str, ...] | None]:
    from .graph import has_induced_square

    g = k.one_skeleton()
    found, witness = has_induced_square(g)
    if found:
        return True, tuple(k.vertices[i] for i in witness)
    return False, None


def _fullness_problems(k: Complex2D) -> list[str]:
    problems = []
    for e in k.edges:
        if e <= k.L_vertices and e not in k.L_edges:
            problems.append(f"edge {sorted(e)} joins L vertices outside L")
    for t in k.triangles:
        if t <= k.L_vertices and t not in k.L_triangles:
            problems.append(f"triangle {sorted(t)} spans L vertices outside L")
    return problems


def surface_checks(k: Complex2D) -> dict:
    """Full property report: closed surface, orientability, genus, flag,
    induced squares, and fullness of the marked subcomplex."""
    closed = _is_closed_surface(k)
    orientable = _is_orientable(k)
    v, e, f = k.counts()
    genus = (2 - (v - e + f)) // 2 if closed else None
    has_square, square = _induced_square(k)
    flag_problems = _flag_problems(k)
    full_problems = _fullness_problems(k)
    return {
        "vertices": v,
        "edges": e,
        "triangles": f,
        "euler": v - e + f,
        "is_closed_surface": closed,
        "is_orientable": orientable,
        "genus": genus,
        "is_flag": not flag_problems,
        "has_induced_square": has_square,
        "square_witness": list(square) if square else None,
        "is_L_full": not full_problems,
    }


# -- pipeline -------------------------------------------------------------------------


@dataclass
class PipelineResult:
    complex: Complex2D
    genus: int
    report: dict
    confdim_bound: float | None
    certificate_ref: dict | None


def pontryagin_pipeline(g: Graph, cert=None) -> PipelineResult:
    """Embed a girth->=5 graph as a full subgraph of a flag-no-square
    triangulated orientable surface of positive genus.

    Runs: rotation system (twisted when the index rotation lands on the
    sphere), face tracing, ring triangulation, a barycentric pass only if
    the flag/fullness precondition fails, then the relative subdivision.
    When a branching certificate is supplied its conformal-dimension bound
    is attached to the result.
    """
    gr = girth(g)
    if gr == float("inf") or gr < 5:
        raise BadInput(f"pipeline requires girth >= 5, got {gr}")
    rot = rotation_system(g, "index")
    _, genus = face_walks(g, rot)
    if genus == 0:
        rot = rotation_system(g, "twisted")
        _, genus = face_walks(g, rot)
        if genus == 0:
            raise BadInput("could not reach a positive-genus embedding")
    triangulated = triangulate_faces(g, rot)
    if _flag_problems(triangulated) or _fullness_problems(triangulated):
        triangulated = partial_barycentric(triangulated)
    final = fns_subdivide(triangulated)
    report = surface_checks(final)
    required = (
        report["is_closed_surface"]
        and report["is_orientable"]
        and report["genus"] >= 1
        and report["is_flag"]
        and not report["has_induced_square"]
        and report["is_L_full"]
    )
    if not required:
        raise NotSimplicial(f"pipeline output failed verification: {report}")
    bound = None
    ref = None
    if cert is not None:
        bound = confdim_lower_branching(cert.n, cert.m)
        ref = {"n": cert.n, "m": cert.m, "graph_sha256": cert.graph_sha256}
    return PipelineResult(
        complex=final,
        genus=report["genus"],
        report=report,
        confdim_bound=bound,
        certificate_ref=ref,
    )


# -- serialization --------------------------------------------------------------------


def complex_to_json(k: Complex2D) -> str:
    return json.dumps(
        {
            "vertices": list(k.vertices),
            "triangles": sorted(sorted(t) for t in k.triangles),
            "L_vertices": sorted(k.L_vertices),
        },
        indent=1,
        sort_keys=True,
    ) + "\n"


def complex_from_json(text: str) -> Complex2D:
    """Rebuild a serialized complex; L edges and triangles are recovered as
    the cells spanned by L vertices (faithful for subdivision outputs,
    where L is full)."""
    data = json.loads(text)
    verts = tuple(data["vertices"])
    tris = frozenset(frozenset(t) for t in data["triangles"])
    lv = frozenset(data["L_vertices"])
    edges = set()
    for t in tris:
        edges |= set(_tri_edges(t))
    return Complex2D(
        vertices=verts,
        triangles=tris,
        L_vertices=lv,
        L_edges=frozenset(e for e in edges if e <= lv),
        L_triangles=frozenset(t for t in tris if t <= lv),
    )


def complex_to_off(k: Complex2D) -> str:
    index = {v: i for i, v in enumerate(k.vertices)}
    v, e, f = k.counts()
    lines = ["OFF", f"{v} {f} {e}"]
    for i in range(v):
        lines.append(f"0.0 0.0 {float(i)}")
    for t in sorted(tuple(sorted(t)) for t in k.triangles):
        lines.append("3 " + " ".join(str(index[x]) for x in t))
    return "\n".join(lines) + "\n"
