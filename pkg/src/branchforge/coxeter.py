"""Word problem for the right-angled Coxeter group of a graph.

Generators are the graph's vertices; every generator is an involution and
two generators commute exactly when they are adjacent.  Words are tuples of
vertex indices.  The normal form is the ShortLex-least reduced word:
reduction deletes equal letters separated only by letters commuting with
them, then the lexicographically least representative is extracted greedily
(repeatedly pull the smallest letter that commutes past everything before
it).  Two words represent the same group element iff their normal forms
coincide.
"""

from __future__ import annotations

from typing import Sequence

from .graph import Graph

Word = tuple[int, ...]


class BadLetter(ValueError):
    """Raised when a word contains a letter outside the vertex range."""


def _validate(g: Graph, word: Sequence[int]) -> None:
    for s in word:
        if not 0 <= s < g.V:
            raise BadLetter(f"letter {s} is not a vertex of the graph")


def reduce_word(g: Graph, word: Sequence[int]) -> list[int]:
    """Geodesic representative: push letters left to right, cancelling a
    letter against an equal one when everything between commutes with it."""
    _validate(g, word)
    adj = g.adj
    out: list[int] = []
    for s in word:
        k = len(out) - 1
        cancelled = False
        while k >= 0:
            t = out[k]
            if t == s:
                del out[k]
                cancelled = True
                break
            if not adj[s] >> t & 1:
                break
            k -= 1
        if not cancelled:
            out.append(s)
    return out


def normal_form(g: Graph, word: Sequence[int]) -> Word:
    """ShortLex-least word representing the same group element."""
    rem = reduce_word(g, word)
    adj = g.adj
    out: list[int] = []
    while rem:
        best = None
        for i, t in enumerate(rem):
            if best is not None and rem[best] <= t:
                continue
            if all(adj[t] >> rem[j] & 1 for j in range(i)):
                best = i
        out.append(rem.pop(best))
    return tuple(out)


def word_distance(g: Graph, a: Sequence[int], b: Sequence[int]) -> int:
    """Distance in the word metric; each generator is its own inverse, so
    the inverse of a word is its reversal."""
    return len(normal_form(g, tuple(reversed(tuple(a))) + tuple(b)))


def mul(g: Graph, a: Sequence[int], b: Sequence[int]) -> Word:
    return normal_form(g, tuple(a) + tuple(b))


def is_hyperbolic(g: Graph) -> bool:
    """The group is hyperbolic iff the graph has no induced square."""
    from .graph import has_induced_square

    return not has_induced_square(g)[0]


def parse_word(g: Graph, text: str) -> Word:
    """Comma-separated vertex labels; the empty string is the identity."""
    if text == "":
        return ()
    return tuple(g.index(part) for part in text.split(","))


def format_word(g: Graph, word: Sequence[int]) -> str:
    return ",".join(g.names[s] for s in word)
