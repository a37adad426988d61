"""Immutable simple graphs with bitset adjacency, plus the invariants the
branching machinery quantifies over: girth, diameter, induced-square and
induced-cycle searches, the inseparability test, the girth-refined Euler
nonplanarity bound, and clique expansion.

Vertex index order (construction order) is the single global tie-breaker;
every search iterates in index order so outputs are reproducible.
"""

from __future__ import annotations

import hashlib
import math
from collections import deque
from typing import Iterable, Iterator, Mapping, Sequence

MAX_VERTICES = 4096

INF = math.inf


class NotTriangleFree(ValueError):
    """Raised when an operation restricted to triangle-free graphs sees a triangle."""


class Graph:
    """Simple undirected graph: named vertices, per-vertex bitset adjacency.

    Treated as immutable after construction; no loops, no multi-edges.
    """

    __slots__ = ("names", "adj", "_index")

    def __init__(self, names: Sequence[str], edges: Iterable[tuple[int, int]]):
        if len(names) > MAX_VERTICES:
            raise ValueError(f"graph exceeds {MAX_VERTICES} vertex cap")
        if len(set(names)) != len(names):
            raise ValueError("vertex names must be distinct")
        self.names: tuple[str, ...] = tuple(str(n) for n in names)
        self._index: dict[str, int] = {n: i for i, n in enumerate(self.names)}
        adj = [0] * len(self.names)
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < len(names) and 0 <= v < len(names)):
                raise ValueError(f"edge ({u},{v}) out of range")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.adj: tuple[int, ...] = tuple(adj)

    # -- basic accessors ---------------------------------------------------

    @property
    def V(self) -> int:
        return len(self.names)

    @property
    def E(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def index(self, name: str) -> int:
        return self._index[name]

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.V):
            a = self.adj[u] >> (u + 1) << (u + 1)
            for v in _bits(a):
                yield (u, v)

    def __repr__(self) -> str:
        return f"Graph(V={self.V}, E={self.E})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.names == other.names
            and self.adj == other.adj
        )

    def __hash__(self) -> int:
        return hash((self.names, self.adj))

    # -- derived graphs ----------------------------------------------------

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph on the given vertices, reindexed in the given order."""
        keep = list(vertices)
        pos = {v: i for i, v in enumerate(keep)}
        edges = [
            (pos[u], pos[v])
            for u, v in self.edges()
            if u in pos and v in pos
        ]
        return Graph([self.names[v] for v in keep], edges)

    # -- serialization -----------------------------------------------------

    def to_edge_list(self, comments: Sequence[str] = ()) -> str:
        lines = [f"# {c}" for c in comments]
        for u, v in self.edges():
            lines.append(f"{self.names[u]} {self.names[v]}")
        return "\n".join(lines) + "\n"

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for n in self.names:
            lines.append(f'  "{n}";')
        for u, v in self.edges():
            lines.append(f'  "{self.names[u]}" -- "{self.names[v]}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def sha256(self) -> str:
        """Hash of the name-sorted edge list; stable across reindexing, so
        a reloaded edge-list file fingerprints identically."""
        lines = sorted(
            " ".join(sorted((self.names[u], self.names[v]))) for u, v in self.edges()
        )
        isolated = sorted(
            self.names[v] for v in range(self.V) if not self.adj[v]
        )
        blob = "\n".join(lines + isolated)
        return hashlib.sha256(blob.encode()).hexdigest()


def parse_edge_list(text: str) -> Graph:
    """Parse the '#'-commented edge-list format; vertices appear implicitly
    in order of first mention."""
    names: list[str] = []
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []

    def vid(name: str) -> int:
        if name not in index:
            index[name] = len(names)
            names.append(name)
        return index[name]

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {raw!r}")
        edges.append((vid(parts[0]), vid(parts[1])))
    return Graph(names, edges)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# -- small constructors (test and demo fodder) -----------------------------


def cycle_graph(k: int) -> Graph:
    return Graph([f"v{i}" for i in range(k)], [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> Graph:
    """Path with k edges (k+1 vertices)."""
    return Graph([f"v{i}" for i in range(k + 1)], [(i, i + 1) for i in range(k)])


def complete_graph(k: int) -> Graph:
    return Graph(
        [f"v{i}" for i in range(k)],
        [(i, j) for i in range(k) for j in range(i + 1, k)],
    )


# -- path and cycle helpers -------------------------------------------------


def is_induced_path(g: Graph, seq: Sequence[int]) -> bool:
    """Distinct vertices, consecutive adjacent, non-consecutive non-adjacent."""
    if len(set(seq)) != len(seq):
        return False
    for i in range(len(seq) - 1):
        if not g.has_edge(seq[i], seq[i + 1]):
            return False
    for i in range(len(seq)):
        for j in range(i + 2, len(seq)):
            if g.has_edge(seq[i], seq[j]):
                return False
    return True


def is_cycle(g: Graph, seq: Sequence[int]) -> bool:
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return False
    return all(g.has_edge(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq)))


def is_induced_cycle(g: Graph, seq: Sequence[int]) -> bool:
    if not is_cycle(g, seq):
        return False
    k = len(seq)
    for i in range(k):
        for j in range(i + 1, k):
            if (j - i) % k in (1, k - 1):
                continue
            if g.has_edge(seq[i], seq[j]):
                return False
    return True


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation/reflection of a cyclic sequence."""
    s = tuple(seq)
    best = None
    for variant in (s, tuple(reversed(s))):
        for r in range(len(variant)):
            rot = variant[r:] + variant[:r]
            if best is None or rot < best:
                best = rot
    return best


# -- invariants --------------------------------------------------------------


def girth(g: Graph) -> float:
    """Length of a shortest cycle, or math.inf for forests. BFS from every vertex."""
    best = INF
    for s in range(g.V):
        dist = [-1] * g.V
        parent = [-1] * g.V
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best:
                continue
            for w in g.neighbors(u):
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w and parent[w] != u:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def diameter(g: Graph) -> float:
    """Maximum eccentricity; math.inf if disconnected (or for the empty graph)."""
    if g.V == 0:
        return INF
    worst = 0
    for s in range(g.V):
        dist = _bfs(g, s)
        if any(d < 0 for d in dist):
            return INF
        worst = max(worst, max(dist))
    return worst


def _bfs(g: Graph, s: int) -> list[int]:
    dist = [-1] * g.V
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if dist[w] == -1:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected(g: Graph) -> bool:
    if g.V == 0:
        return True
    return all(d >= 0 for d in _bfs(g, 0))


def valence_range(g: Graph) -> tuple[int, int]:
    degs = [g.degree(v) for v in range(g.V)]
    return (min(degs), max(degs))


def has_triangle(g: Graph) -> bool:
    return any(g.adj[u] & g.adj[v] for u, v in g.edges())


def has_induced_square(g: Graph) -> tuple[bool, tuple[int, ...] | None]:
    """Detect an induced 4-cycle; the witness is the lexicographically least
    such cycle in canonical (least-vertex-first) form."""
    for a in range(g.V):
        for x in g.neighbors(a):
            if x <= a:
                continue
            for c in g.neighbors(x):
                if c <= a or g.has_edge(a, c):
                    continue
                common = g.adj[a] & g.adj[c] & ~g.adj[x]
                for y in _bits(common):
                    if y > x and y != x:
                        return True, (a, x, c, y)
    return False, None


def is_induced_union_of_cycles(
    g: Graph, cycles: Sequence[Sequence[int]], core: Sequence[int]
) -> bool:
    """True iff the cycles pairwise intersect exactly in core's vertex set and
    the union vertex set induces exactly the union of cycle edges."""
    core_set = set(core)
    cyc = [tuple(c) for c in cycles]
    for c in cyc:
        if not _contains_subpath(c, tuple(core)):
            raise ValueError("cycle does not contain the core as a subpath")
    sets = [set(c) for c in cyc]
    for i in range(len(cyc)):
        for j in range(i + 1, len(cyc)):
            if sets[i] & sets[j] != core_set:
                return False
    union_vertices = set().union(*sets) if sets else set()
    union_edges = set()
    for c in cyc:
        for i in range(len(c)):
            union_edges.add(frozenset((c[i], c[(i + 1) % len(c)])))
    for u in union_vertices:
        for v in union_vertices:
            if u < v and g.has_edge(u, v):
                if frozenset((u, v)) not in union_edges:
                    return False
    return True


def _contains_subpath(cycle: tuple[int, ...], path: tuple[int, ...]) -> bool:
    if len(path) == 1:
        return path[0] in cycle
    k = len(cycle)
    doubled = cycle + cycle
    rev = tuple(reversed(path))
    for start in range(k):
        window = doubled[start : start + len(path)]
        if window == path or window == rev:
            return True
    return False


def induced_cycles_through(
    g: Graph, spine: Sequence[int], maxlen: int
) -> list[tuple[int, ...]]:
    """All induced cycles of length in [5, maxlen] containing the spine as a
    consecutive subpath, by depth-first extension with inducedness pruning.

    Cycles are returned spine-first, in deterministic (index) discovery
    order; each cycle is found exactly once.
    """
    spine = tuple(spine)
    if not is_induced_path(g, spine):
        raise ValueError("spine must be an induced path")
    if len(spine) > maxlen:
        return []
    out: list[tuple[int, ...]] = []
    start = spine[0]
    in_path = 0
    for v in spine:
        in_path |= 1 << v
    path = list(spine)
    # forbidden: path vertices other than the current tip; a candidate may be
    # adjacent only to the tip, except `start` which marks a closing edge
    forbidden0 = in_path & ~(1 << spine[-1])

    def extend(last: int, forbidden: int) -> None:
        nonlocal in_path
        for x in g.neighbors(last):
            bit = 1 << x
            if bit & in_path:
                continue
            adj_x = g.adj[x]
            if adj_x & forbidden & ~(1 << start):
                continue
            if adj_x >> start & 1:
                ln = len(path) + 1
                if 5 <= ln <= maxlen:
                    out.append(tuple(path) + (x,))
                continue
            if len(path) + 1 >= maxlen:
                continue
            path.append(x)
            in_path |= bit
            extend(x, forbidden | (1 << last))
            in_path &= ~bit
            path.pop()

    extend(spine[-1], forbidden0)
    return out


def is_inseparable(g: Graph) -> tuple[bool, tuple[int, ...] | None]:
    """For a triangle-free connected graph: no cut vertex, cut edge, cut
    (non-adjacent) pair, or cut 2-path.  Returns (flag, witness cut set)."""
    if has_triangle(g):
        raise NotTriangleFree("inseparability test requires a triangle-free graph")
    if not is_connected(g):
        return False, ()
    cut_sets: list[tuple[int, ...]] = []
    for v in range(g.V):
        cut_sets.append((v,))
    for u in range(g.V):
        for v in range(u + 1, g.V):
            cut_sets.append((u, v))  # covers both edges and non-adjacent pairs
    for w in range(g.V):
        nbrs = g.neighbors(w)
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                u, v = nbrs[i], nbrs[j]
                cut_sets.append((u, w, v))  # u,v non-adjacent: triangle-free
    for cut in cut_sets:
        if _separates(g, cut):
            return False, cut
    return True, None


def _separates(g: Graph, cut: Sequence[int]) -> bool:
    removed = 0
    for v in cut:
        removed |= 1 << v
    rest = [v for v in range(g.V) if not removed >> v & 1]
    if len(rest) <= 1:
        return False
    seen = 1 << rest[0] | removed
    queue = deque([rest[0]])
    count = 1
    while queue:
        u = queue.popleft()
        for w in _bits(g.adj[u] & ~seen):
            seen |= 1 << w
            count += 1
            queue.append(w)
    return count < len(rest)


def euler_nonplanar(g: Graph) -> bool:
    """Sufficient nonplanarity test: E(girth-2) > girth(V-2).

    False means inconclusive, not planar.  Requires finite girth >= 3.
    """
    gr = girth(g)
    if gr is INF or gr < 3:
        raise ValueError("euler_nonplanar requires finite girth >= 3")
    gr = int(gr)
    return g.E * (gr - 2) > gr * (g.V - 2)


def clique_expand(g: Graph, mu) -> Graph:
    """Expand each vertex v into a clique of mu(v) copies; copies of adjacent
    vertices are fully joined.  mu may be an int, a sequence, or a mapping."""
    if isinstance(mu, int):
        mult = [mu] * g.V
    elif isinstance(mu, Mapping):
        mult = [mu[v] for v in range(g.V)]
    else:
        mult = list(mu)
    if len(mult) != g.V or any(m < 1 for m in mult):
        raise ValueError("mu must assign an integer >= 1 to every vertex")
    names = []
    base = []
    for v in range(g.V):
        base.append(len(names))
        for i in range(mult[v]):
            names.append(f"{g.names[v]}#{i + 1}")
    edges = []
    for v in range(g.V):
        for i in range(mult[v]):
            for j in range(i + 1, mult[v]):
                edges.append((base[v] + i, base[v] + j))
    for u, v in g.edges():
        for i in range(mult[u]):
            for j in range(mult[v]):
                edges.append((base[u] + i, base[v] + j))
    return Graph(names, edges)


def find_long_induced_cycle(g: Graph, lmin: int) -> tuple[int, ...] | None:
    """First induced cycle of length >= lmin in the deterministic search
    order, or None after exhaustive search."""
    for a in range(g.V):
        # canonical start: a is the least vertex of the cycle
        path = [a]
        in_path = 1 << a

        def extend(last: int, nonadj: int) -> tuple[int, ...] | None:
            nonlocal in_path
            for x in g.neighbors(last):
                if x <= a:
                    continue
                bit = 1 << x
                if bit & in_path:
                    continue
                adj_x = g.adj[x]
                if adj_x & nonadj & ~(1 << a):
                    continue
                if adj_x >> a & 1 and len(path) + 1 >= lmin and len(path) + 1 >= 3:
                    return tuple(path) + (x,)
                path.append(x)
                in_path |= bit
                found = extend(x, nonadj | (1 << last))
                in_path &= ~bit
                path.pop()
                if found:
                    return found
            return None

        found = extend(a, 0)
        if found:
            return found
    return None
