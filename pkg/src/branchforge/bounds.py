"""Closed-form evaluators for the conformal-dimension and genus bounds.

All logarithms are natural; the bounds only ever use ratios of logs, so
the base cancels.  Evaluators are pure and total on their domains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


class BadParams(ValueError):
    """Raised for inputs outside a bound's domain."""


@dataclass
class BoundReport:
    name: str
    inputs: dict = field(default_factory=dict)
    value: float = 0.0
    formula: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs": dict(sorted(self.inputs.items())),
            "value": self.value,
            "formula": self.formula,
        }


def confdim_lower_branching(n: int, m: int) -> float:
    """1 + log(n) / log(3m - 7): the conformal-dimension lower bound
    attached to an (n, m)-branching presentation graph."""
    if n < 1 or m < 5 or 3 * m - 7 < 2:
        raise BadParams(f"need n >= 1, m >= 5 with 3m-7 >= 2; got n={n}, m={m}")
    return 1.0 + math.log(n) / math.log(3 * m - 7)


def confdim_lower_mackay(v: int, h: int) -> float:
    """1 + log(V) / log(H) for a round tree with vertical branching V and
    horizontal branching at most H."""
    if v < 2 or h < 2:
        raise BadParams(f"need V >= 2 and H >= 2; got V={v}, H={h}")
    return 1.0 + math.log(v) / math.log(h)


def genus_lower_bound(n: int, edges: int) -> float:
    """1 + E(3n - 7) / (10(n + 1)): minimum orientable genus of a graph
    with (n, m)-branching and E edges, meaningful for n >= 3."""
    if n < 3:
        raise BadParams(f"genus bound requires n >= 3, got {n}")
    if edges < 1:
        raise BadParams(f"need at least one edge, got {edges}")
    return 1.0 + (3 * n - 7) * edges / (10 * (n + 1))


def min_edges(n: int) -> int:
    """(n+1) + (n+1)n + (n+1)n^2/2, rounded up: the least edge count of a
    graph with minimum valence n+1 and girth at least 5."""
    if n < 1:
        raise BadParams(f"need n >= 1, got {n}")
    half = (n + 1) * n * n
    return (n + 1) + (n + 1) * n + -(-half // 2)


def genm_branching_params(m: int, q: int) -> tuple[int, int]:
    """Branching parameters certified for a generalized m-gon of order q:
    (q, 2m) for m > 3 and (floor(q + 1 - sqrt(q)), 6) for m = 3.

    m = 2 is outside the claim (a cycle bound of 4 is below the branching
    definition's floor), so it is rejected."""
    if q < 2:
        raise BadParams(f"need q >= 2, got {q}")
    if m == 3:
        s = math.isqrt(q)
        ceil_sqrt = s if s * s == q else s + 1
        return (q + 1 - ceil_sqrt, 6)
    if m > 3:
        return (q, 2 * m)
    raise BadParams(f"generalized {m}-gons carry no branching claim")


def report(name: str, **inputs) -> BoundReport:
    """Evaluate a named bound and wrap it in a BoundReport."""
    if name == "branching":
        value = confdim_lower_branching(inputs["n"], inputs["m"])
        formula = "1 + log(n)/log(3m-7)"
    elif name == "mackay":
        value = confdim_lower_mackay(inputs["V"], inputs["H"])
        formula = "1 + log(V)/log(H)"
    elif name == "genus":
        value = genus_lower_bound(inputs["n"], inputs["E"])
        formula = "1 + E(3n-7)/(10(n+1))"
    elif name == "min-edges":
        value = float(min_edges(inputs["n"]))
        formula = "(n+1) + (n+1)n + ceil((n+1)n^2/2)"
    elif name == "genm":
        n, cyc = genm_branching_params(inputs["m"], inputs["q"])
        return BoundReport(
            name="genm",
            inputs=dict(inputs),
            value=float(n),
            formula=f"(n, cycle_bound) = ({n}, {cyc})",
        )
    else:
        raise BadParams(f"unknown bound {name!r}")
    return BoundReport(name=name, inputs=dict(inputs), value=value, formula=formula)
