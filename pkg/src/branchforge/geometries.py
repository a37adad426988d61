"""Deterministic generators for the concrete incidence-graph families:
projective, affine and biaffine planes over GF(q), transversal designs from
the field family of mutually orthogonal Latin squares, and the symplectic
generalized quadrangle.

Vertex labels are canonical (normalized homogeneous coordinates, dual
coordinates for lines, reduced row echelon bases for quadrangle lines), so
generator output is byte-identical across runs.  Field elements appear in
labels as their position in the field's lexicographic element order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .ff import FiniteField, NotPrimePower, field_new
from .graph import Graph, diameter, girth, valence_range


class BadParams(ValueError):
    """Raised for parameter combinations outside a generator's domain."""


@dataclass
class LeviGraph:
    """A bipartite incidence graph with its side tags and provenance."""

    graph: Graph
    side_labels: tuple[str, ...]
    family: str
    params: dict = dc_field(default_factory=dict)

    def side(self, tag: str) -> list[int]:
        return [v for v, s in enumerate(self.side_labels) if s == tag]


def _mk_levi(
    family: str,
    params: dict,
    point_labels: list[str],
    block_labels: list[str],
    incidences: list[tuple[int, int]],
    sides: tuple[str, str] = ("point", "line"),
) -> LeviGraph:
    names = point_labels + block_labels
    np = len(point_labels)
    edges = [(p, np + b) for p, b in incidences]
    g = Graph(names, edges)
    tags = (sides[0],) * np + (sides[1],) * len(block_labels)
    levi = LeviGraph(graph=g, side_labels=tags, family=family, params=dict(params))
    _check_pair_axiom(levi)
    return levi


def _check_pair_axiom(levi: LeviGraph) -> None:
    """At most one block through any two points (and dually); with
    bipartiteness this forces girth >= 6."""
    g = levi.graph
    for side in ("point", levi.side_labels[-1]):
        verts = levi.side(side)
        for i, u in enumerate(verts):
            for v in verts[i + 1 :]:
                if (g.adj[u] & g.adj[v]).bit_count() > 1:
                    raise AssertionError(
                        f"{levi.family}: two {side}s with two common neighbors"
                    )


# -- projective plane --------------------------------------------------------


def _proj_points(fld: FiniteField, dim: int) -> list[tuple]:
    """Normalized representatives (first nonzero coordinate = 1) of the
    1-dimensional subspaces of F_q^dim, in lexicographic coordinate order."""
    pts = set()
    for vec in itertools.product(fld.elements(), repeat=dim):
        if all(c == fld.zero for c in vec):
            continue
        lead = next(c for c in vec if c != fld.zero)
        s = fld.inv(lead)
        pts.add(tuple(fld.mul(s, c) for c in vec))
    return sorted(pts, key=lambda v: tuple(fld.idx(c) for c in v))


def _coord_label(fld: FiniteField, vec: tuple) -> str:
    return ".".join(str(fld.idx(c)) for c in vec)


def projective_levi(q: int) -> LeviGraph:
    """Levi graph of the projective plane over GF(q): 1- and 2-dimensional
    subspaces of F_q^3, incidence by containment.

    Lines are encoded by their dual vectors: the line with dual d contains
    the points x with d.x = 0.
    """
    fld = field_new(q)
    pts = _proj_points(fld, 3)
    duals = pts  # lines are parameterized by normalized dual vectors
    incidences = []
    for pi, p in enumerate(pts):
        for li, d in enumerate(duals):
            s = fld.zero
            for a, b in zip(d, p):
                s = fld.add(s, fld.mul(a, b))
            if s == fld.zero:
                incidences.append((pi, li))
    return _mk_levi(
        "projective",
        {"q": q},
        [f"p:{_coord_label(fld, v)}" for v in pts],
        [f"l:{_coord_label(fld, v)}" for v in duals],
        incidences,
    )


# -- affine and biaffine planes ----------------------------------------------


def affine_levi(q: int) -> LeviGraph:
    """Levi graph of the affine plane: q^2 points (x,y); lines [m,b] with
    y = m x + b and vertical lines [inf,a] with x = a."""
    fld = field_new(q)
    els = fld.elements()
    pts = [(x, y) for x in els for y in els]
    pt_index = {p: i for i, p in enumerate(pts)}
    line_labels: list[str] = []
    incidences: list[tuple[int, int]] = []
    for m in els:
        for b in els:
            li = len(line_labels)
            line_labels.append(f"l:{fld.idx(m)}.{fld.idx(b)}")
            for x in els:
                y = fld.add(fld.mul(m, x), b)
                incidences.append((pt_index[(x, y)], li))
    for a in els:
        li = len(line_labels)
        line_labels.append(f"l:inf.{fld.idx(a)}")
        for y in els:
            incidences.append((pt_index[(a, y)], li))
    return _mk_levi(
        "affine",
        {"q": q},
        [f"p:{fld.idx(x)}.{fld.idx(y)}" for x, y in pts],
        line_labels,
        incidences,
    )


def biaffine_levi(q: int) -> LeviGraph:
    """Levi graph of the biaffine plane: q^2 points (x,y) and q^2 lines
    [m,b], incidence y = m x + b.  q-regular and vertex-transitive."""
    fld = field_new(q)
    els = fld.elements()
    pts = [(x, y) for x in els for y in els]
    pt_index = {p: i for i, p in enumerate(pts)}
    line_labels = []
    incidences = []
    for m in els:
        for b in els:
            li = len(line_labels)
            line_labels.append(f"l:{fld.idx(m)}.{fld.idx(b)}")
            for x in els:
                y = fld.add(fld.mul(m, x), b)
                incidences.append((pt_index[(x, y)], li))
    return _mk_levi(
        "biaffine",
        {"q": q},
        [f"p:{fld.idx(x)}.{fld.idx(y)}" for x, y in pts],
        line_labels,
        incidences,
    )


def biaffine_duality(levi: LeviGraph) -> list[int]:
    """The type-reversing involution (x,y) -> [x,-y], [m,b] -> (m,-b), as a
    vertex permutation of the biaffine Levi graph."""
    if levi.family != "biaffine":
        raise BadParams("duality is defined for biaffine Levi graphs")
    q = levi.params["q"]
    fld = field_new(q)
    g = levi.graph
    perm = [0] * g.V
    for v, name in enumerate(g.names):
        kind, coords = name.split(":")
        i, j = (int(c) for c in coords.split("."))
        a, b = fld.elem(i), fld.elem(j)
        nb = fld.neg(b)
        if kind == "p":
            target = f"l:{fld.idx(a)}.{fld.idx(nb)}"
        else:
            target = f"p:{fld.idx(a)}.{fld.idx(nb)}"
        perm[v] = g.index(target)
    return perm


# -- transversal designs -------------------------------------------------------


def transversal_design_levi(t: int, q: int) -> LeviGraph:
    """Levi graph of the transversal design TD(t, q) built from the field
    family of mutually orthogonal Latin squares L_a(i, j) = a*i + j.

    Points are (part, symbol) with t parts of size q; the q^2 blocks are
    indexed by (slope a, intercept y) and meet part i in symbol a*e_i + y,
    where e_i is the i-th field element.  For t = q+1 the extra part is
    indexed by the slope itself.  Every pair of points from distinct parts
    lies in exactly one block; verified at construction.
    """
    if not 3 <= t <= q + 1:
        raise BadParams(f"need 3 <= t <= q+1, got t={t}, q={q}")
    fld = field_new(q)
    els = fld.elements()
    pts = [(i, j) for i in range(t) for j in els]
    pt_index = {p: i for i, p in enumerate(pts)}
    block_labels = []
    incidences = []
    blocks = []
    for a in els:
        for y in els:
            bi = len(block_labels)
            block_labels.append(f"B:{fld.idx(a)}.{fld.idx(y)}")
            members = []
            for i in range(min(t, q)):
                sym = fld.add(fld.mul(a, fld.elem(i)), y)
                members.append((i, sym))
            if t == q + 1:
                members.append((q, a))
            blocks.append(members)
            for mpt in members:
                incidences.append((pt_index[mpt], bi))
    levi = _mk_levi(
        "td",
        {"t": t, "q": q},
        [f"P:{i}.{fld.idx(j)}" for i, j in pts],
        block_labels,
        incidences,
        sides=("point", "block"),
    )
    _check_td_axiom(t, q, pts, blocks)
    return levi


def _check_td_axiom(t: int, q: int, pts, blocks) -> None:
    cover: dict[frozenset, int] = {}
    for members in blocks:
        for x, y in itertools.combinations(members, 2):
            if x[0] == y[0]:
                raise AssertionError("block meets a part twice")
            cover[frozenset((x, y))] = cover.get(frozenset((x, y)), 0) + 1
    for x, y in itertools.combinations(pts, 2):
        if x[0] == y[0]:
            continue
        if cover.get(frozenset((x, y)), 0) != 1:
            raise AssertionError(
                f"TD({t},{q}): cross-part pair {x},{y} not covered exactly once"
            )


# -- symplectic generalized quadrangle -----------------------------------------


def _symplectic_form(fld: FiniteField, x: tuple, y: tuple):
    # x1 y2 - x2 y1 + x3 y4 - x4 y3
    s = fld.sub(fld.mul(x[0], y[1]), fld.mul(x[1], y[0]))
    return fld.add(s, fld.sub(fld.mul(x[2], y[3]), fld.mul(x[3], y[2])))


def _rref(fld: FiniteField, rows: list[tuple]) -> tuple[tuple, ...]:
    """Reduced row echelon form of a small matrix over GF(q); canonical
    representative of the row span."""
    mat = [list(r) for r in rows]
    nrows, ncols = len(mat), len(mat[0])
    lead = 0
    for r in range(nrows):
        while lead < ncols:
            pivot = None
            for i in range(r, nrows):
                if mat[i][lead] != fld.zero:
                    pivot = i
                    break
            if pivot is None:
                lead += 1
                continue
            mat[r], mat[pivot] = mat[pivot], mat[r]
            s = fld.inv(mat[r][lead])
            mat[r] = [fld.mul(s, c) for c in mat[r]]
            for i in range(nrows):
                if i != r and mat[i][lead] != fld.zero:
                    f = mat[i][lead]
                    mat[i] = [fld.sub(c, fld.mul(f, d)) for c, d in zip(mat[i], mat[r])]
            lead += 1
            break
    return tuple(tuple(r) for r in mat)


def symplectic_gq_levi(q: int) -> LeviGraph:
    """Levi graph of the symplectic generalized quadrangle of order q:
    points of PG(3, q) versus totally isotropic lines of the standard
    alternating form.  Girth 8, diameter 4 and (q+1)-regularity are
    verified after construction."""
    if q > 9:
        raise BadParams(f"quadrangle generator capped at q <= 9, got {q}")
    fld = field_new(q)
    pts = _proj_points(fld, 4)
    pt_index = {p: i for i, p in enumerate(pts)}
    line_sets: dict[tuple, set[int]] = {}
    for i, p in enumerate(pts):
        for r in pts[i + 1 :]:
            if _symplectic_form(fld, p, r) != fld.zero:
                continue
            key = _rref(fld, [list(p), list(r)])
            if key in line_sets:
                continue
            members = set()
            for a in fld.elements():
                for b in fld.elements():
                    if a == fld.zero and b == fld.zero:
                        continue
                    vec = tuple(
                        fld.add(fld.mul(a, c), fld.mul(b, d)) for c, d in zip(p, r)
                    )
                    lead = next(c for c in vec if c != fld.zero)
                    s = fld.inv(lead)
                    members.add(pt_index[tuple(fld.mul(s, c) for c in vec)])
            line_sets[key] = members
    lines = sorted(
        line_sets.items(),
        key=lambda kv: tuple(tuple(fld.idx(c) for c in row) for row in kv[0]),
    )
    line_labels = [
        "l:" + ";".join(".".join(str(fld.idx(c)) for c in row) for row in key)
        for key, _ in lines
    ]
    incidences = []
    for li, (_, members) in enumerate(lines):
        for pi in sorted(members):
            incidences.append((pi, li))
    levi = _mk_levi(
        "gq",
        {"q": q},
        [f"p:{_coord_label(fld, v)}" for v in pts],
        line_labels,
        incidences,
    )
    g = levi.graph
    if girth(g) != 8 or diameter(g) != 4 or valence_range(g) != (q + 1, q + 1):
        raise AssertionError("symplectic quadrangle invariants failed")
    return levi


GENERATORS = {
    "projective": projective_levi,
    "affine": affine_levi,
    "biaffine": biaffine_levi,
    "td": transversal_design_levi,
    "gq": symplectic_gq_levi,
}
