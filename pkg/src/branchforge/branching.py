"""Certified decision procedure for the branching condition.

A graph has (n, m)-branching when every vertex has valence at least n+1
and, for every induced path P of length 1 or 2 with endpoints u and v
(both orientations) and every n-subset U of Lk(u) minus P, there are n
induced cycles of length 5..m through P, one per element of U, meeting
pairwise exactly in P, ending at distinct neighbors of v, with induced
union.  The checker emits either a certificate listing an explicit cycle
system per (P, U) instance or the first falsifying instance in canonical
scan order.

Each witness cycle is necessarily an induced cycle traversing u_i next to
u: a chord would be an edge of the induced union not covered by any cycle
(cycles pairwise meet in the chord-free path P).  The search therefore
enumerates induced cycles through the spine u_i . u . P-tail.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import (
    Graph,
    induced_cycles_through,
    is_connected,
    is_induced_path,
    is_induced_union_of_cycles,
)

VALENCE_TOO_LOW = "ValenceTooLow"
NO_WITNESS_SYSTEM = "NoWitnessSystem"


class BadParams(ValueError):
    """Raised for parameters outside the branching definition's domain."""


class BadSubset(ValueError):
    """Raised when U is not a set of n distinct vertices in Lk(u) minus P."""


@dataclass
class WitnessEntry:
    """Cycle system for one (path, subset) instance.

    `subset`, `v_choices` and `cycles` are aligned; cycles are stored
    spine-first: (u_i, u, [w], v, v_i, ...).
    """

    path: tuple[int, ...]
    subset: tuple[int, ...]
    v_choices: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]

    def cycle_for(self, ui: int) -> tuple[int, ...]:
        return self.cycles[self.subset.index(ui)]

    def v_for(self, ui: int) -> int:
        return self.v_choices[self.subset.index(ui)]


@dataclass
class BranchingCertificate:
    n: int
    m: int
    graph_sha256: str
    entries: list[WitnessEntry]


@dataclass
class BranchingFailure:
    n: int
    m: int
    graph_sha256: str
    path: tuple[int, ...]
    subset: tuple[int, ...]
    reason: str


def oriented_paths(g: Graph) -> list[tuple[int, ...]]:
    """Induced paths of length 1 and 2, in both orientations, in the
    canonical scan order: all edges first, then all 2-paths, ascending."""
    out: list[tuple[int, ...]] = []
    for u in range(g.V):
        for v in g.neighbors(u):
            out.append((u, v))
    for u in range(g.V):
        for w in g.neighbors(u):
            for v in g.neighbors(w):
                if v == u or g.has_edge(u, v):
                    continue
                out.append((u, w, v))
    return out


class BranchingSearch:
    """Per-(P, U) witness search with a shared memo table.

    The memo key is the path oriented from the subset's endpoint plus the
    subset as a frozen set; the same instances recur massively during
    round-tree growth.  dict.setdefault gives atomic insert-if-absent, so
    concurrent evaluation is safe and schedule-independent.
    """

    def __init__(self, g: Graph, m: int):
        if m < 5:
            raise BadParams(f"cycle bound m must be >= 5, got {m}")
        self.g = g
        self.m = m
        self._memo: dict = {}

    def witness(
        self, path: Sequence[int], subset: Iterable[int]
    ) -> WitnessEntry | None:
        path = tuple(path)
        subset = tuple(sorted(subset))
        g = self.g
        if not is_induced_path(g, path) or len(path) not in (2, 3):
            raise BadSubset(f"{path} is not an induced path of length 1 or 2")
        u = path[0]
        in_path = set(path)
        if len(set(subset)) != len(subset) or any(
            s in in_path or not g.has_edge(u, s) for s in subset
        ):
            raise BadSubset(f"{subset} is not a valid subset of Lk({u}) minus path")
        key = (path, subset)
        if key in self._memo:
            return self._memo[key]
        result = self._search(path, subset)
        return self._memo.setdefault(key, result)

    def _search(
        self, path: tuple[int, ...], subset: tuple[int, ...]
    ) -> WitnessEntry | None:
        g = self.g
        core_mask = 0
        for v in path:
            core_mask |= 1 << v
        prepared: list[list[tuple[tuple[int, ...], int, int]]] = []
        for ui in subset:
            spine = (ui,) + path
            if not is_induced_path(g, spine):
                return None
            cycles = induced_cycles_through(g, spine, self.m)
            if not cycles:
                return None
            lst = []
            for cyc in cycles:
                mask = 0
                nbr = 0
                for x in cyc:
                    mask |= 1 << x
                for x in cyc:
                    if not core_mask >> x & 1:
                        nbr |= g.adj[x]
                lst.append((cyc, mask, nbr))
            prepared.append(lst)

        n = len(subset)
        chosen: list[tuple[tuple[int, ...], int, int]] = []

        def backtrack(idx: int) -> bool:
            if idx == n:
                return True
            for cand in prepared[idx]:
                cyc, mask, nbr = cand
                ok = True
                for pcyc, pmask, pnbr in chosen:
                    if mask & pmask != core_mask or nbr & pmask & ~core_mask:
                        ok = False
                        break
                if ok:
                    chosen.append(cand)
                    if backtrack(idx + 1):
                        return True
                    chosen.pop()
            return False

        if not backtrack(0):
            return None
        cycles = tuple(c for c, _, _ in chosen)
        v_pos = len(path) + 1
        return WitnessEntry(
            path=path,
            subset=subset,
            v_choices=tuple(c[v_pos] for c in cycles),
            cycles=cycles,
        )


def witness_extension(
    g: Graph,
    path: Sequence[int],
    subset: Iterable[int],
    n: int,
    m: int,
    search: BranchingSearch | None = None,
) -> WitnessEntry | None:
    """Single quantifier instance of the branching condition; None when no
    cycle system exists."""
    subset = tuple(subset)
    if len(subset) != n:
        raise BadSubset(f"subset has size {len(subset)}, expected n={n}")
    if search is None:
        search = BranchingSearch(g, m)
    return search.witness(path, subset)


def _tasks(g: Graph, n: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    tasks = []
    for path in oriented_paths(g):
        u = path[0]
        pool = [x for x in g.neighbors(u) if x not in path]
        for subset in itertools.combinations(pool, n):
            tasks.append((path, subset))
    return tasks


def _invert(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


def check_branching(
    g: Graph,
    n: int,
    m: int,
    threads: int | None = None,
    automorphisms: Sequence[Sequence[int]] | None = None,
    search: BranchingSearch | None = None,
) -> BranchingCertificate | BranchingFailure:
    """Decide (n, m)-branching; a failure is a value, not an error.

    `automorphisms`, when given, is a list of vertex permutations used to
    reuse witnesses across instances related by symmetry; correctness does
    not depend on the list being a group.
    """
    if n < 1:
        raise BadParams(f"need n >= 1, got {n}")
    if m < 5:
        raise BadParams(f"need m >= 5, got {m}")
    if not is_connected(g):
        raise BadParams("branching check requires a connected graph")
    sha = g.sha256()
    for v in range(g.V):
        if g.degree(v) < n + 1:
            return BranchingFailure(
                n=n, m=m, graph_sha256=sha, path=(), subset=(v,),
                reason=VALENCE_TOO_LOW,
            )
    if search is None:
        search = BranchingSearch(g, m)
    tasks = _tasks(g, n)

    auto_maps: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    if automorphisms:
        for perm in automorphisms:
            auto_maps.append((tuple(perm), tuple(_invert(perm))))
    done: dict = {}

    def via_symmetry(task):
        path, subset = task
        for perm, inv in auto_maps:
            image = (tuple(perm[x] for x in path), tuple(sorted(perm[x] for x in subset)))
            hit = done.get(image)
            if hit is not None:
                mapped = sorted(
                    (inv[ui], tuple(inv[x] for x in cyc))
                    for ui, cyc in zip(hit.subset, hit.cycles)
                )
                cycles = tuple(c for _, c in mapped)
                return WitnessEntry(
                    path=path,
                    subset=tuple(ui for ui, _ in mapped),
                    v_choices=tuple(c[len(path) + 1] for c in cycles),
                    cycles=cycles,
                )
        return None

    def evaluate(task):
        path, subset = task
        return search.witness(path, subset)

    entries: list[WitnessEntry] = []
    if threads is not None and threads > 1:
        chunk = max(1, 8 * threads)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for base in range(0, len(tasks), chunk):
                block = tasks[base : base + chunk]
                for task, result in zip(block, pool.map(evaluate, block)):
                    if result is None:
                        return BranchingFailure(
                            n=n, m=m, graph_sha256=sha,
                            path=task[0], subset=task[1],
                            reason=NO_WITNESS_SYSTEM,
                        )
                    entries.append(result)
                    done[(task[0], frozenset(task[1]))] = result
    else:
        for task in tasks:
            result = None
            if auto_maps:
                result = via_symmetry(task)
            if result is None:
                result = evaluate(task)
            if result is None:
                return BranchingFailure(
                    n=n, m=m, graph_sha256=sha,
                    path=task[0], subset=task[1],
                    reason=NO_WITNESS_SYSTEM,
                )
            entries.append(result)
            done[(task[0], task[1])] = result
    return BranchingCertificate(n=n, m=m, graph_sha256=sha, entries=entries)


def max_branching_n(g: Graph, m: int, threads: int | None = None) -> int:
    """Largest n certified at cycle bound m (0 when none); monotone in n,
    so ascend by doubling and bisect."""
    if g.V == 0:
        return 0
    cap = min(g.degree(v) for v in range(g.V)) - 1
    if cap < 1:
        return 0
    search = BranchingSearch(g, m)

    def ok(n: int) -> bool:
        return isinstance(
            check_branching(g, n, m, threads=threads, search=search),
            BranchingCertificate,
        )

    if not ok(1):
        return 0
    lo = 1
    hi = None
    while hi is None:
        cand = min(2 * lo, cap)
        if cand == lo:
            return lo
        if ok(cand):
            lo = cand
        else:
            hi = cand
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


# -- validation ----------------------------------------------------------------


def verify_certificate(
    g: Graph, cert: BranchingCertificate
) -> tuple[bool, list[str]]:
    """Re-validate a certificate entry by entry against the definition's
    bullet conditions, using only graph-module predicates, and check the
    entries cover every (P, U) instance."""
    problems: list[str] = []
    n, m = cert.n, cert.m
    if cert.graph_sha256 != g.sha256():
        problems.append("graph hash mismatch")
    for v in range(g.V):
        if g.degree(v) < n + 1:
            problems.append(f"vertex {v} has valence {g.degree(v)} < n+1")
    required = set(_tasks(g, n))
    present = {(e.path, e.subset) for e in cert.entries}
    for missing in sorted(required - present):
        problems.append(f"missing instance {missing}")
    for extra in sorted(present - required):
        problems.append(f"spurious instance {extra}")
    for e in cert.entries:
        tag = f"entry P={e.path} U={e.subset}"
        u, v = e.path[0], e.path[-1]
        path_set = set(e.path)
        if len(set(e.v_choices)) != len(e.v_choices):
            problems.append(f"{tag}: v choices not distinct")
        for ui, vi, cyc in zip(e.subset, e.v_choices, e.cycles):
            if not (5 <= len(cyc) <= m):
                problems.append(f"{tag}: cycle length {len(cyc)} outside [5, m]")
            if not _is_cycle_of(g, cyc):
                problems.append(f"{tag}: {cyc} is not a cycle of the graph")
            if ui not in cyc or vi not in cyc:
                problems.append(f"{tag}: cycle misses u_i or v_i")
            if not path_set <= set(cyc) or not _has_subpath(cyc, e.path):
                problems.append(f"{tag}: cycle does not contain the path")
            if vi in path_set or not g.has_edge(v, vi):
                problems.append(f"{tag}: v_i={vi} not in Lk(v) minus path")
        try:
            if not is_induced_union_of_cycles(g, e.cycles, e.path):
                problems.append(f"{tag}: union not induced or wrong intersections")
        except ValueError as exc:
            problems.append(f"{tag}: {exc}")
    return (not problems), problems


def _is_cycle_of(g: Graph, cyc: Sequence[int]) -> bool:
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        return False
    return all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


def _has_subpath(cycle: Sequence[int], path: Sequence[int]) -> bool:
    k = len(cycle)
    doubled = tuple(cycle) + tuple(cycle)
    fwd, rev = tuple(path), tuple(reversed(path))
    return any(
        doubled[s : s + len(path)] in (fwd, rev) for s in range(k)
    )


# -- serialization ---------------------------------------------------------------


def _entry_sort_key(e: WitnessEntry):
    return (len(e.path), e.path, e.subset)


def result_to_json(g: Graph, result) -> str:
    """Certificate or failure as canonical JSON (vertex labels, sorted)."""
    names = g.names
    if isinstance(result, BranchingCertificate):
        payload = {
            "n": result.n,
            "m": result.m,
            "graph_sha256": result.graph_sha256,
            "entries": [
                {
                    "P": [names[x] for x in e.path],
                    "U": [names[x] for x in e.subset],
                    "v": [names[x] for x in e.v_choices],
                    "cycles": [[names[x] for x in c] for c in e.cycles],
                }
                for e in sorted(result.entries, key=_entry_sort_key)
            ],
        }
    else:
        payload = {
            "n": result.n,
            "m": result.m,
            "graph_sha256": result.graph_sha256,
            "failure": {
                "P": [names[x] for x in result.path],
                "U": [names[x] for x in result.subset],
                "reason": result.reason,
            },
        }
    return json.dumps(payload, indent=1, sort_keys=True) + "\n"


def result_from_json(g: Graph, text: str):
    data = json.loads(text)
    idx = g.index
    if "failure" in data:
        f = data["failure"]
        return BranchingFailure(
            n=data["n"],
            m=data["m"],
            graph_sha256=data["graph_sha256"],
            path=tuple(idx(x) for x in f["P"]),
            subset=tuple(idx(x) for x in f["U"]),
            reason=f["reason"],
        )
    entries = []
    for e in data["entries"]:
        triples = sorted(
            zip(
                (idx(x) for x in e["U"]),
                (idx(x) for x in e["v"]),
                (tuple(idx(x) for x in c) for c in e["cycles"]),
            )
        )
        entries.append(
            WitnessEntry(
                path=tuple(idx(x) for x in e["P"]),
                subset=tuple(t[0] for t in triples),
                v_choices=tuple(t[1] for t in triples),
                cycles=tuple(t[2] for t in triples),
            )
        )
    return BranchingCertificate(
        n=data["n"], m=data["m"], graph_sha256=data["graph_sha256"], entries=entries
    )
