"""Generating-series cocycles and the half-edge pairing census."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

from liegraph.exactq import format_rational, in_span
from liegraph.graph_complex import (
    GraphVector,
    _sum,
    delta,
    delta_sharp,
    normalize,
    project_quotient,
)
from liegraph.graphs import (
    TopologicalGraph,
    automorphism_count,
    canonical_label,
    default_decoration,
    enumerate_trivalent,
    graph_to_json,
    has_self_loop,
    is_connected,
    relative_orientation,
)

__all__ = [
    "CensusReport",
    "CENSUS_BOUND",
    "psi",
    "cs_cocycle",
    "pairing_census",
    "generating_table",
    "census_to_json",
    "double_factorial",
    "proportionality",
]

CENSUS_BOUND = 2


def double_factorial(n: int) -> int:
    return prod(range(n, 0, -2)) if n > 0 else 1


def _require_trivalent(t: TopologicalGraph):
    if any(len(b) != 3 for b in t.vertices):
        raise ValueError("expected a trivalent graph")


def psi(t: TopologicalGraph) -> GraphVector:
    """``or_Γ · Γ`` for a decoration ``Γ`` of ``t``; independent of the decoration."""
    _require_trivalent(t)
    g = default_decoration(t)
    return normalize(g).scale(relative_orientation(g))


def cs_cocycle(n: int, include_self_loops: bool = True) -> GraphVector:
    """``Σ 1/|Aut| · psi`` over connected trivalent graphs of order ``n``."""
    terms = []
    for t in enumerate_trivalent(n, connected=True, allow_self_loops=include_self_loops):
        terms.append(psi(t).scale(Fraction(1, automorphism_count(t))))
    return _sum(terms)


# --------------------------------------------------------------------------
# census


@dataclass
class CensusReport:
    order: int
    total_matchings: int
    per_class: dict = field(default_factory=dict)  # canonical topology -> count
    identity_holds: bool = False

    def group_order(self) -> int:
        return factorial(3) ** (2 * self.order) * factorial(2 * self.order)


def _matchings(items: list[int]):
    if not items:
        yield []
        return
    a = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1 :]
        for m in _matchings(rest):
            yield [(a, items[k])] + m


def _bucket(args) -> dict:
    n, partner = args
    H = 6 * n
    vertices = [tuple(range(3 * i + 1, 3 * i + 4)) for i in range(2 * n)]
    rest = [h for h in range(2, H + 1) if h != partner]
    counts: dict = {}
    for m in _matchings(rest):
        t = TopologicalGraph(H, vertices, [(1, partner)] + m)
        key = canonical_label(t)[0]
        counts[key] = counts.get(key, 0) + 1
    return counts


def pairing_census(n: int, workers: int = 1, allow_order_3: bool = False) -> CensusReport:
    """Bucket all perfect matchings of ``6n`` half-edges by isomorphism class."""
    bound = 3 if allow_order_3 else CENSUS_BOUND
    if not 1 <= n <= bound:
        raise ValueError(f"census order must be in 1..{bound}")
    tasks = [(n, p) for p in range(2, 6 * n + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_bucket, tasks))
    else:
        parts = [_bucket(t) for t in tasks]
    merged: dict = {}
    for part in parts:
        for k, c in part.items():
            merged[k] = merged.get(k, 0) + c
    per_class = dict(sorted(merged.items()))
    report = CensusReport(n, sum(per_class.values()), per_class)
    G = report.group_order()
    report.identity_holds = report.total_matchings == double_factorial(6 * n - 1) and all(
        c * automorphism_count(t) == G for t, c in per_class.items()
    )
    return report


def census_to_json(r: CensusReport) -> dict:
    G = r.group_order()
    classes = []
    for t, c in r.per_class.items():
        a = automorphism_count(t)
        classes.append(
            {
                "graph": graph_to_json(t),
                "count": c,
                "aut": a,
                "connected": is_connected(t),
                "identity": c * a == G,
            }
        )
    return {"order": r.order, "total": r.total_matchings, "classes": classes}


# --------------------------------------------------------------------------
# coefficient table


def generating_table(max_n: int) -> list[dict]:
    """Per order: connected classes with ``|Aut|``, ``or`` and coefficient."""
    rows = []
    for n in range(1, max_n + 1):
        entries = []
        for t in enumerate_trivalent(n, connected=True):
            a = automorphism_count(t)
            entries.append(
                {
                    "graph": t,
                    "aut": a,
                    "or": relative_orientation(default_decoration(t)),
                    "coefficient": Fraction(1, a),
                    "self_loops": has_self_loop(t),
                }
            )
        full = cs_cocycle(n, True)
        quotient = cs_cocycle(n, False)
        rows.append(
            {
                "order": n,
                "classes": entries,
                "cocycle": not delta(full),
                "quotient_cocycle": not delta_sharp(quotient),
                "projection_matches": project_quotient(full) == quotient,
            }
        )
    return rows


def proportionality(v: GraphVector, w: GraphVector):
    """Scalar ``c`` with ``v = c·w``, or ``None``."""
    keys = sorted(set(v.terms) | set(w.terms))
    c = in_span({k: v.coefficient(k) for k in keys}, [{k: w.coefficient(k) for k in keys}])
    return None if c is None else c[0]
