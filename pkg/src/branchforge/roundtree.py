"""Round-tree stages inside the Davis complex of a right-angled Coxeter
group, grown strip by strip along sheet boundaries.

Vertices of the complex are ShortLex normal forms; squares are recorded as
(ShortLex-least corner, commuting label pair) and discovered during growth
rather than materialized from a global complex.  The stage at depth j has
one sheet per address in T^j, T = {1..n}; growing a sheet walks its outer
boundary path and attaches, per strip, the cycle of squares realizing a
branching witness at every interior boundary vertex.

`verify_stage` re-checks the finite-stage axioms: per-sheet disc structure,
exactly nested sibling intersections, boundary-vertex links, local
convexity (every vertex link a full subgraph of the defining graph), the
insulated basepoint, and the per-strip horizontal adjacency bound 3m-7.
"""

from __future__ import annotations

import json
import random
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .branching import BranchingSearch, WitnessEntry
from .coxeter import normal_form
from .graph import Graph, girth, is_induced_path

Word = tuple[int, ...]


class BadPath(ValueError):
    """Raised when the requested base path is unusable."""


class OracleFailure(RuntimeError):
    """A branching witness needed during growth does not exist."""


class ConvexityViolation(RuntimeError):
    """A vertex link stopped being a full subgraph of the defining graph."""


class InvalidStage(RuntimeError):
    """The stage's combinatorial structure is broken."""


@dataclass(frozen=True, order=True)
class Square:
    """A Davis-complex square: ShortLex-least corner plus its commuting
    label pair (an edge of the defining graph), labels sorted."""

    base: Word
    labels: tuple[int, int]


@dataclass
class Sheet:
    """The disc D_t carried by one address: its squares and the three
    boundary arcs (L and R from the basepoint outward, E from the end of L
    to the end of R)."""

    squares: frozenset[Square]
    L: tuple[Word, ...]
    R: tuple[Word, ...]
    E: tuple[Word, ...]


@dataclass
class RoundTreeStage:
    graph: Graph
    n: int
    m: int
    depth: int
    base_path: tuple[int, ...]
    sheets: dict[tuple[int, ...], Sheet]

    def leaf_addresses(self) -> list[tuple[int, ...]]:
        return sorted(a for a in self.sheets if len(a) == self.depth)

    def all_squares(self) -> frozenset[Square]:
        out: set[Square] = set()
        for addr in self.leaf_addresses():
            out |= self.sheets[addr].squares
        return frozenset(out)

    def level_squares(self, depth: int) -> frozenset[Square]:
        out: set[Square] = set()
        for addr, sheet in self.sheets.items():
            if len(addr) == depth:
                out |= sheet.squares
        return frozenset(out)


class _Words:
    """Memoized right multiplication by a generator, in normal form."""

    def __init__(self, g: Graph):
        self.g = g
        self._mul: dict[tuple[Word, int], Word] = {}

    def mul(self, w: Word, s: int) -> Word:
        key = (w, s)
        r = self._mul.get(key)
        if r is None:
            r = normal_form(self.g, w + (s,))
            self._mul[key] = r
        return r


def _shortlex_key(w: Word) -> tuple[int, Word]:
    return (len(w), w)


def _square_at(words: _Words, vertex: Word, a: int, b: int) -> Square:
    if not words.g.has_edge(a, b):
        raise InvalidStage(f"labels {a},{b} are not an edge of the graph")
    va = words.mul(vertex, a)
    vb = words.mul(vertex, b)
    vab = words.mul(va, b)
    base = min((vertex, va, vb, vab), key=_shortlex_key)
    return Square(base=base, labels=(min(a, b), max(a, b)))


def _square_cells(
    words: _Words, sq: Square
) -> tuple[tuple[Word, ...], list[tuple[Word, Word, int]]]:
    """Corners and labelled edges of a square."""
    a, b = sq.labels
    c00 = sq.base
    c10 = words.mul(c00, a)
    c01 = words.mul(c00, b)
    c11 = words.mul(c10, b)
    corners = (c00, c10, c01, c11)
    edges = [
        (c00, c10, a),
        (c00, c01, b),
        (c10, c11, b),
        (c01, c11, a),
    ]
    return corners, edges


@dataclass
class _ComplexMaps:
    edge_label: dict[frozenset, int] = field(default_factory=dict)
    vertex_labels: dict[Word, set[int]] = field(default_factory=lambda: defaultdict(set))
    link_edges: dict[Word, set[tuple[int, int]]] = field(
        default_factory=lambda: defaultdict(set)
    )
    vertex_squares: dict[Word, list[Square]] = field(
        default_factory=lambda: defaultdict(list)
    )
    adjacency: dict[Word, set[Word]] = field(default_factory=lambda: defaultdict(set))

    @property
    def vertices(self):
        return self.vertex_labels.keys()


def _complex_maps(words: _Words, squares: Iterable[Square]) -> _ComplexMaps:
    maps = _ComplexMaps()
    for sq in squares:
        corners, edges = _square_cells(words, sq)
        for x, y, s in edges:
            maps.edge_label[frozenset((x, y))] = s
            maps.vertex_labels[x].add(s)
            maps.vertex_labels[y].add(s)
            maps.adjacency[x].add(y)
            maps.adjacency[y].add(x)
        for c in corners:
            maps.vertex_squares[c].append(sq)
            maps.link_edges[c].add(sq.labels)
    return maps


def _link_path(maps: _ComplexMaps, y: Word, start: int) -> tuple[int, ...]:
    """The link of y, which must be a simple label path, ordered to begin
    at the label `start`."""
    labels = maps.vertex_labels[y]
    nbrs: dict[int, list[int]] = {lab: [] for lab in labels}
    for a, b in maps.link_edges[y]:
        nbrs[a].append(b)
        nbrs[b].append(a)
    degs = sorted(len(v) for v in nbrs.values())
    if start not in labels or len(nbrs[start]) != 1:
        raise InvalidStage(f"link of {y} does not start a path at label {start}")
    if degs.count(1) != 2 or any(d > 2 for d in degs):
        raise InvalidStage(f"link of {y} is not a simple path")
    walk = [start]
    prev = None
    cur = start
    while True:
        step = [t for t in nbrs[cur] if t != prev]
        if not step:
            break
        prev, cur = cur, step[0]
        walk.append(cur)
    if len(walk) != len(labels):
        raise InvalidStage(f"link of {y} is disconnected")
    return tuple(walk)


# -- construction -----------------------------------------------------------------


def build_base(g: Graph, path: Sequence[int], n: int, m: int) -> RoundTreeStage:
    """Depth-0 stage: the chain of squares at the identity whose link at the
    basepoint is the given induced path."""
    path = tuple(path)
    if len(path) < 2 or not is_induced_path(g, path):
        raise BadPath(f"{path} is not an induced path with at least one edge")
    gr = girth(g)
    if gr != float("inf") and len(path) - 1 > gr - 2:
        raise BadPath(f"path length {len(path) - 1} exceeds girth - 2 = {gr - 2}")
    words = _Words(g)
    squares = [
        _square_at(words, (), path[i], path[i + 1]) for i in range(len(path) - 1)
    ]
    L = ((), (path[0],))
    R = ((), (path[-1],))
    E: list[Word] = [(path[0],)]
    for i in range(len(path) - 1):
        E.append(words.mul((path[i],), path[i + 1]))
        E.append((path[i + 1],))
    root = Sheet(squares=frozenset(squares), L=L, R=R, E=tuple(E))
    return RoundTreeStage(
        graph=g, n=n, m=m, depth=0, base_path=path, sheets={(): root}
    )


def grow(
    stage: RoundTreeStage, search: BranchingSearch | None = None
) -> RoundTreeStage:
    """Attach n strips along the outer boundary of every depth-j sheet,
    producing the depth-j+1 stage."""
    g = stage.graph
    n = stage.n
    if search is None:
        search = BranchingSearch(g, stage.m)
    words = _Words(g)
    sheets = dict(stage.sheets)
    for addr in stage.leaf_addresses():
        for child_addr, child in _grow_sheet(stage, addr, search, words).items():
            sheets[child_addr] = child
    new_stage = RoundTreeStage(
        graph=g,
        n=n,
        m=stage.m,
        depth=stage.depth + 1,
        base_path=stage.base_path,
        sheets=sheets,
    )
    _check_new_links(new_stage, words)
    return new_stage


def _grow_sheet(
    stage: RoundTreeStage,
    addr: tuple[int, ...],
    search: BranchingSearch,
    words: _Words,
) -> dict[tuple[int, ...], Sheet]:
    g = stage.graph
    n = stage.n
    sheet = stage.sheets[addr]
    maps = _complex_maps(words, sheet.squares)
    E = sheet.E
    y0 = E[0]
    u0 = maps.edge_label[frozenset((sheet.L[-2], y0))]
    v0 = maps.edge_label[frozenset((y0, E[1]))]
    eligible = sorted(set(g.neighbors(v0)) - {u0})
    if len(eligible) < n:
        raise OracleFailure(
            f"sheet {addr}: only {len(eligible)} eligible strip labels at the "
            f"boundary start, need {n}"
        )
    first_labels = eligible[:n]
    strips: list[list[Square]] = [
        [_square_at(words, y0, v0, vi)] for vi in first_labels
    ]
    ucur = list(first_labels)
    for k in range(1, len(E) - 1):
        yk = E[k]
        u = maps.edge_label[frozenset((E[k - 1], yk))]
        v = maps.edge_label[frozenset((yk, E[k + 1]))]
        link = _link_path(maps, yk, u)
        if link[-1] != v or len(link) not in (2, 3):
            raise InvalidStage(
                f"sheet {addr}: boundary vertex {yk} has link {link}, "
                f"expected a path from {u} to {v}"
            )
        witness = search.witness(link, tuple(ucur))
        if witness is None:
            raise OracleFailure(
                f"sheet {addr}: no branching witness for P={link}, U={tuple(ucur)}"
            )
        for i in range(n):
            cyc = witness.cycle_for(ucur[i])
            arc = [
                (cyc[j], cyc[j + 1]) for j in range(len(link), len(cyc) - 1)
            ] + [(cyc[-1], cyc[0])]
            for l1, l2 in arc:
                strips[i].append(_square_at(words, yk, l1, l2))
            ucur[i] = witness.v_for(ucur[i])
    children: dict[tuple[int, ...], Sheet] = {}
    for i in range(n):
        squares = frozenset(sheet.squares | set(strips[i]))
        if len(sheet.squares) + len(strips[i]) != len(squares):
            raise InvalidStage(f"sheet {addr}: strip {i + 1} reuses existing squares")
        L = sheet.L + (words.mul(y0, first_labels[i]),)
        R = sheet.R + (words.mul(E[-1], ucur[i]),)
        E_child = _outer_boundary(words, squares, L, R)
        children[addr + (i + 1,)] = Sheet(
            squares=squares, L=L, R=R, E=E_child
        )
    return children


def _boundary_adjacency(words: _Words, squares: Iterable[Square]):
    count: Counter = Counter()
    for sq in squares:
        _, edges = _square_cells(words, sq)
        for x, y, _ in edges:
            count[frozenset((x, y))] += 1
    badj: dict[Word, list[Word]] = defaultdict(list)
    for e, c in count.items():
        if c == 1:
            x, y = sorted(e, key=_shortlex_key)
            badj[x].append(y)
            badj[y].append(x)
        elif c > 2:
            raise InvalidStage(f"edge {set(e)} lies in {c} squares")
    return badj


def _outer_boundary(
    words: _Words,
    squares: frozenset[Square],
    L: tuple[Word, ...],
    R: tuple[Word, ...],
) -> tuple[Word, ...]:
    """Walk the free boundary from the end of L to the end of R."""
    badj = _boundary_adjacency(words, squares)
    start, prev = L[-1], L[-2]
    stop = R[-1]
    walk = [start]
    cur = start
    cap = 8 * len(squares) + 8
    while cur != stop:
        if len(badj[cur]) != 2:
            raise InvalidStage(f"boundary vertex {cur} has {len(badj[cur])} boundary edges")
        nxt = [z for z in badj[cur] if z != prev]
        if len(nxt) != 1:
            raise InvalidStage(f"boundary walk stuck at {cur}")
        prev, cur = cur, nxt[0]
        walk.append(cur)
        if len(walk) > cap:
            raise InvalidStage("boundary walk does not close up")
    return tuple(walk)


def _check_new_links(stage: RoundTreeStage, words: _Words) -> None:
    """Local convexity tripwire after growth: every vertex link must be a
    full subgraph of the defining graph."""
    bad = _link_fullness_violations(stage, words)
    if bad:
        vertex, a, b = bad[0]
        raise ConvexityViolation(
            f"link of {vertex} misses the square for adjacent labels {a},{b}"
        )


def _link_fullness_violations(stage: RoundTreeStage, words: _Words):
    g = stage.graph
    maps = _complex_maps(words, stage.all_squares())
    violations = []
    for vertex in maps.vertices:
        labels = sorted(maps.vertex_labels[vertex])
        present = maps.link_edges[vertex]
        for i, a in enumerate(labels):
            for b in labels[i + 1 :]:
                if g.has_edge(a, b) and (a, b) not in present:
                    violations.append((vertex, a, b))
    return violations


# -- verification ------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class StageReport:
    checks: list[CheckResult]
    data: dict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> str:
        return json.dumps(
            {
                "passed": self.passed,
                "checks": [
                    {"name": c.name, "passed": c.passed, "detail": c.detail}
                    for c in self.checks
                ],
                "data": self.data,
            },
            indent=1,
            sort_keys=True,
        ) + "\n"


def verify_stage(stage: RoundTreeStage) -> StageReport:
    """Run every finite-stage check; failures are reported, not raised."""
    g = stage.graph
    words = _Words(g)
    checks: list[CheckResult] = []
    data: dict = {}

    expected = sum(stage.n**d for d in range(stage.depth + 1))
    leaf_ok = len(stage.leaf_addresses()) == stage.n**stage.depth
    checks.append(
        CheckResult(
            "sheet-count",
            len(stage.sheets) == expected and leaf_ok,
            f"{len(stage.sheets)} sheets, {len(stage.leaf_addresses())} leaves",
        )
    )

    disc_fail = []
    link_fail = []
    for addr in sorted(stage.sheets):
        sheet = stage.sheets[addr]
        try:
            problem = _disc_problem(words, sheet)
        except (KeyError, InvalidStage) as exc:
            problem = f"broken sheet structure: {exc}"
        if problem:
            disc_fail.append(f"{_addr_str(addr)}: {problem}")
        try:
            problem = _elink_problem(g, words, sheet)
        except (KeyError, InvalidStage) as exc:
            problem = f"broken boundary structure: {exc}"
        if problem:
            link_fail.append(f"{_addr_str(addr)}: {problem}")
    checks.append(CheckResult("sheets-are-discs", not disc_fail, "; ".join(disc_fail[:3])))
    checks.append(
        CheckResult("boundary-vertex-links", not link_fail, "; ".join(link_fail[:3]))
    )

    nest_fail = []
    by_depth: dict[int, list[tuple[tuple[int, ...], Sheet]]] = defaultdict(list)
    for addr, sheet in stage.sheets.items():
        by_depth[len(addr)].append((addr, sheet))
    vertex_sets = {
        addr: frozenset(_complex_maps(words, sheet.squares).vertices)
        for addr, sheet in stage.sheets.items()
    }
    for depth, items in sorted(by_depth.items()):
        items.sort()
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                (a, sa), (b, sb) = items[i], items[j]
                lcp = _common_prefix(a, b)
                ref = stage.sheets[lcp]
                if sa.squares & sb.squares != ref.squares:
                    nest_fail.append(f"{_addr_str(a)} ^ {_addr_str(b)}: squares")
                elif vertex_sets[a] & vertex_sets[b] != vertex_sets[lcp]:
                    nest_fail.append(f"{_addr_str(a)} ^ {_addr_str(b)}: vertices")
    checks.append(
        CheckResult("sheet-intersections-nested", not nest_fail, "; ".join(nest_fail[:3]))
    )

    novelty_fail = []
    for addr in sorted(stage.sheets):
        if not addr:
            continue
        parent = stage.sheets[addr[:-1]]
        sheet = stage.sheets[addr]
        strip = sheet.squares - parent.squares
        level = stage.level_squares(len(addr) - 1)
        if strip & level:
            novelty_fail.append(f"{_addr_str(addr)}: strip square already present")
            continue
        strip_vertices = frozenset(_complex_maps(words, strip).vertices)
        level_vertices: set[Word] = set()
        for a2, s2 in by_depth[len(addr) - 1]:
            level_vertices |= vertex_sets[a2]
        if strip_vertices & level_vertices != set(parent.E):
            novelty_fail.append(f"{_addr_str(addr)}: strip meets old stage beyond E")
    checks.append(
        CheckResult("strip-novelty", not novelty_fail, "; ".join(novelty_fail[:3]))
    )

    root = stage.sheets[()]
    all_squares = stage.all_squares()
    base_violations = [
        sq for sq in all_squares - root.squares
        if () in _square_cells(words, sq)[0]
    ]
    checks.append(
        CheckResult(
            "basepoint-insulated",
            not base_violations,
            f"{len(base_violations)} squares outside the base chain touch the basepoint",
        )
    )

    fullness = _link_fullness_violations(stage, words)
    checks.append(
        CheckResult(
            "vertex-links-full",
            not fullness,
            f"{len(fullness)} non-full links" if fullness else "",
        )
    )

    max_per_strip, max_total = _horizontal_census(stage, words)
    bound = 3 * stage.m - 7
    data["max_new_squares_per_strip"] = max_per_strip
    data["max_new_squares_total"] = max_total
    data["horizontal_bound"] = bound
    checks.append(
        CheckResult(
            "horizontal-branching",
            max_per_strip <= bound and max_total <= stage.n * bound,
            f"per-strip max {max_per_strip} (bound {bound}), "
            f"total max {max_total} (bound {stage.n * bound})",
        )
    )

    data["squares"] = len(all_squares)
    data["vertices"] = len(_complex_maps(words, all_squares).vertex_labels)
    return StageReport(checks=checks, data=data)


def _addr_str(addr: tuple[int, ...]) -> str:
    return ".".join(str(i) for i in addr)


def _common_prefix(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for x, y in zip(a, b):
        if x != y:
            break
        out.append(x)
    return tuple(out)


def _disc_problem(words: _Words, sheet: Sheet) -> str | None:
    maps = _complex_maps(words, sheet.squares)
    verts = list(maps.vertices)
    n_edges = len(maps.edge_label)
    chi = len(verts) - n_edges + len(sheet.squares)
    if chi != 1:
        return f"euler characteristic {chi} != 1"
    seen = {verts[0]}
    queue = deque([verts[0]])
    while queue:
        x = queue.popleft()
        for y in maps.adjacency[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) != len(verts):
        return "1-skeleton disconnected"
    try:
        badj = _boundary_adjacency(words, sheet.squares)
    except InvalidStage as exc:
        return str(exc)
    boundary_edges = {
        frozenset((x, y)) for x, ys in badj.items() for y in ys
    }
    declared = set()
    for arc in (sheet.L, sheet.E, sheet.R):
        for i in range(len(arc) - 1):
            declared.add(frozenset((arc[i], arc[i + 1])))
    if boundary_edges != declared:
        return "boundary is not L + E + R"
    if sheet.L[0] != () or sheet.R[0] != ():
        return "L and R do not start at the basepoint"
    if sheet.L[-1] != sheet.E[0] or sheet.R[-1] != sheet.E[-1]:
        return "E does not join the ends of L and R"
    return None


def _elink_problem(g: Graph, words: _Words, sheet: Sheet) -> str | None:
    maps = _complex_maps(words, sheet.squares)
    for pos, y in enumerate(sheet.E):
        if pos == 0:
            prev_label = maps.edge_label[frozenset((sheet.L[-2], y))]
        else:
            prev_label = maps.edge_label[frozenset((sheet.E[pos - 1], y))]
        try:
            link = _link_path(maps, y, prev_label)
        except InvalidStage as exc:
            return str(exc)
        if len(link) not in (2, 3):
            return f"link of E[{pos}] has {len(link)} labels"
        if pos == 0 and len(link) != 2:
            return "link at the initial boundary vertex is not a single edge"
        if not is_induced_path(g, link):
            return f"link of E[{pos}] is not an induced path of the graph"
    return None


def _horizontal_census(stage: RoundTreeStage, words: _Words) -> tuple[int, int]:
    """Per (old square, new strip) and per old square totals of new-square
    contacts, maximized over every depth transition."""
    max_per_strip = 0
    totals: Counter = Counter()
    max_total = 0
    corners_cache: dict[Square, tuple[Word, ...]] = {}

    def corners(sq: Square) -> tuple[Word, ...]:
        got = corners_cache.get(sq)
        if got is None:
            got = _square_cells(words, sq)[0]
            corners_cache[sq] = got
        return got

    for depth in range(stage.depth):
        old = stage.level_squares(depth)
        totals.clear()
        for addr in sorted(stage.sheets):
            if len(addr) != depth + 1:
                continue
            parent = stage.sheets[addr[:-1]]
            strip = stage.sheets[addr].squares - parent.squares
            by_vertex: dict[Word, set[Square]] = defaultdict(set)
            for sq in strip:
                for c in corners(sq):
                    by_vertex[c].add(sq)
            for q in old:
                met: set[Square] = set()
                for c in corners(q):
                    met |= by_vertex.get(c, set())
                if met:
                    max_per_strip = max(max_per_strip, len(met))
                    totals[q] += len(met)
        if totals:
            max_total = max(max_total, max(totals.values()))
    return max_per_strip, max_total


# -- sampled isometry check -----------------------------------------------------


def sampled_isometry_check(
    stage: RoundTreeStage, samples: int, seed: int
) -> StageReport:
    """Compare 1-skeleton BFS distance with the group word metric on random
    vertex pairs; convexity of the stage makes them agree."""
    from .coxeter import word_distance

    words = _Words(stage.graph)
    maps = _complex_maps(words, stage.all_squares())
    verts = sorted(maps.vertices, key=_shortlex_key)
    index = {w: i for i, w in enumerate(verts)}
    nbrs: list[list[int]] = [[] for _ in verts]
    for w, adj in maps.adjacency.items():
        nbrs[index[w]] = sorted(index[z] for z in adj)
    rng = random.Random(seed)
    mismatches = []
    for _ in range(samples):
        i = rng.randrange(len(verts))
        j = rng.randrange(len(verts))
        d_complex = _bfs_distance(nbrs, i, j)
        d_group = word_distance(stage.graph, verts[i], verts[j])
        if d_complex != d_group:
            mismatches.append((verts[i], verts[j], d_complex, d_group))
    check = CheckResult(
        "sampled-isometry",
        not mismatches,
        f"{len(mismatches)} mismatches" if mismatches else f"{samples} pairs agree",
    )
    return StageReport(
        checks=[check],
        data={"samples": samples, "seed": seed, "vertices": len(verts)},
    )


def _bfs_distance(nbrs: list[list[int]], src: int, dst: int) -> int:
    if src == dst:
        return 0
    dist = {src: 0}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        for y in nbrs[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                if y == dst:
                    return dist[y]
                queue.append(y)
    return -1


# -- serialization -----------------------------------------------------------------


def stage_to_json(stage: RoundTreeStage) -> str:
    g = stage.graph

    def word_str(w: Word) -> str:
        return ",".join(g.names[s] for s in w)

    sheets = {}
    for addr in sorted(stage.sheets):
        sheet = stage.sheets[addr]
        sheets[_addr_str(addr)] = {
            "squares": [
                {"base": word_str(sq.base), "labels": [g.names[a] for a in sq.labels]}
                for sq in sorted(sheet.squares)
            ],
            "L": [word_str(w) for w in sheet.L],
            "R": [word_str(w) for w in sheet.R],
            "E": [word_str(w) for w in sheet.E],
        }
    return json.dumps(
        {
            "n": stage.n,
            "m": stage.m,
            "depth": stage.depth,
            "base_path": [g.names[v] for v in stage.base_path],
            "sheets": sheets,
        },
        indent=1,
        sort_keys=True,
    ) + "\n"


def stage_from_json(g: Graph, text: str) -> RoundTreeStage:
    data = json.loads(text)

    def parse_word(s: str) -> Word:
        if not s:
            return ()
        return tuple(g.index(x) for x in s.split(","))

    sheets = {}
    for key, rec in data["sheets"].items():
        addr = tuple(int(x) for x in key.split(".")) if key else ()
        squares = frozenset(
            Square(
                base=parse_word(sq["base"]),
                labels=tuple(sorted(g.index(x) for x in sq["labels"])),
            )
            for sq in rec["squares"]
        )
        sheets[addr] = Sheet(
            squares=squares,
            L=tuple(parse_word(w) for w in rec["L"]),
            R=tuple(parse_word(w) for w in rec["R"]),
            E=tuple(parse_word(w) for w in rec["E"]),
        )
    return RoundTreeStage(
        graph=g,
        n=data["n"],
        m=data["m"],
        depth=data["depth"],
        base_path=tuple(g.index(x) for x in data["base_path"]),
        sheets=sheets,
    )
