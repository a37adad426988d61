"""Independent oracles for the test suite: subset enumeration and dense
all-pairs algorithms that share no code path with the library's searches.
"""

from __future__ import annotations

import itertools
import random

from branchforge.graph import Graph


def random_graph(rng: random.Random, n_vertices: int, p: float) -> Graph:
    edges = [
        (u, v)
        for u in range(n_vertices)
        for v in range(u + 1, n_vertices)
        if rng.random() < p
    ]
    return Graph([f"v{i}" for i in range(n_vertices)], edges)


def largest_component(g: Graph) -> Graph:
    remaining = set(range(g.V))
    best: list[int] = []
    while remaining:
        seed = min(remaining)
        comp = {seed}
        frontier = [seed]
        while frontier:
            x = frontier.pop()
            for y in g.neighbors(x):
                if y in remaining and y not in comp:
                    comp.add(y)
                    frontier.append(y)
        remaining -= comp
        if len(comp) > len(best):
            best = sorted(comp)
    return g.induced_subgraph(best)


def _cycle_order(g: Graph, sub: tuple[int, ...]) -> tuple[int, ...] | None:
    """If the subset induces a single cycle, return it in traversal order."""
    mask = 0
    for v in sub:
        mask |= 1 << v
    if any((g.adj[v] & mask).bit_count() != 2 for v in sub):
        return None
    start = sub[0]
    prev, cur = None, start
    order = [start]
    while True:
        nbrs = [w for w in g.neighbors(cur) if mask >> w & 1 and w != prev]
        nxt = nbrs[0]
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    if len(order) != len(sub):
        return None
    return tuple(order)


def all_induced_cycles(g: Graph, lo: int, hi: int) -> list[tuple[int, ...]]:
    """Every induced cycle with lo <= length <= hi, by exhaustive subset
    enumeration, in traversal order."""
    out = []
    for size in range(lo, min(hi, g.V) + 1):
        for sub in itertools.combinations(range(g.V), size):
            order = _cycle_order(g, sub)
            if order is not None:
                out.append(order)
    return out


def naive_girth(g: Graph) -> float:
    for size in range(3, g.V + 1):
        for sub in itertools.combinations(range(g.V), size):
            if _cycle_order(g, sub) is not None:
                return size
    return float("inf")


def naive_diameter(g: Graph) -> float:
    if g.V == 0:
        return float("inf")
    big = float("inf")
    dist = [[0 if i == j else (1 if g.has_edge(i, j) else big) for j in range(g.V)] for i in range(g.V)]
    for k in range(g.V):
        for i in range(g.V):
            for j in range(g.V):
                via = dist[i][k] + dist[k][j]
                if via < dist[i][j]:
                    dist[i][j] = via
    worst = max(max(row) for row in dist)
    return worst


def _oriented_paths(g: Graph) -> list[tuple[int, ...]]:
    out = []
    for u in range(g.V):
        for v in g.neighbors(u):
            out.append((u, v))
    for u in range(g.V):
        for w in g.neighbors(u):
            for v in g.neighbors(w):
                if v != u and not g.has_edge(u, v):
                    out.append((u, w, v))
    return out


def _contains_path_edges(cycle: tuple[int, ...], path: tuple[int, ...]) -> bool:
    edges = {
        frozenset((cycle[i], cycle[(i + 1) % len(cycle)])) for i in range(len(cycle))
    }
    return all(
        frozenset((path[i], path[i + 1])) in edges for i in range(len(path) - 1)
    )


def _union_induced(g: Graph, chosen, path_set) -> bool:
    union_edges = set()
    union_verts = set()
    for c in chosen:
        union_verts |= set(c)
        for i in range(len(c)):
            union_edges.add(frozenset((c[i], c[(i + 1) % len(c)])))
    for a in union_verts:
        for b in union_verts:
            if a < b and g.has_edge(a, b) and frozenset((a, b)) not in union_edges:
                return False
    return True


def branching_oracle(g: Graph, n: int, m: int):
    """Direct decision of (n, m)-branching over all cycle systems.

    Returns (certified, failing_instance); the failing instance is the
    first (path, subset) in the canonical scan order, or the low-valence
    vertex as ((), (v,)).
    """
    for v in range(g.V):
        if g.degree(v) < n + 1:
            return False, ((), (v,))
    inventory = all_induced_cycles(g, 5, m)
    inv_sets = [frozenset(c) for c in inventory]
    for path in _oriented_paths(g):
        u, v = path[0], path[-1]
        path_set = set(path)
        pool = [x for x in g.neighbors(u) if x not in path_set]
        for subset in itertools.combinations(pool, n):
            cand: list[list[tuple[int, ...]]] = []
            for ui in subset:
                lst = [
                    c
                    for c, s in zip(inventory, inv_sets)
                    if ui in s and path_set <= s and _contains_path_edges(c, path)
                ]
                cand.append(lst)
            found = False
            for combo in itertools.product(*cand):
                sets = [set(c) for c in combo]
                if any(
                    sets[i] & sets[j] != path_set
                    for i in range(n)
                    for j in range(i + 1, n)
                ):
                    continue
                if not _union_induced(g, combo, path_set):
                    continue
                # a valid system must end at distinct new neighbors of v;
                # the candidate pools are disjoint outside the path, so
                # per-cycle nonemptiness suffices
                if any(
                    not any(x not in path_set and g.has_edge(v, x) for x in c)
                    for c in combo
                ):
                    continue
                found = True
                break
            if not found:
                return False, (path, subset)
    return True, None
