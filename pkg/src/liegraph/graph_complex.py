"""The graph complex over the rationals.

A decorated graph is normalized as follows.  Its topology is put in
canonical form; the decoration then reduces to three pieces of data relative
to the canonical labels:

* the sign of the vertex numbering (vertices are odd),
* one sign per edge whose direction disagrees with the canonical one,
* at each vertex, a multilinear Lie element in its half-edges.

Edge numbering by itself carries no sign; it only fixes which half-edge sits
at which position of a tree.  The Lie elements at the vertices live in
``V = (x)_v Lie(v)`` (comb basis, dimension ``(n_v - 2)!``), and a class is
the image of ``V`` in the coinvariants of the automorphism group acting with
vertex and direction signs.  Coordinates are read off the averaging
projector; the class basis is the lex-first set of comb tuples whose
averages are independent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Optional

from liegraph.exactq import QMatrix, QVector, format_rational, in_span, kernel_basis, parse_rational
from liegraph.graphs import (
    DecoratedGraph,
    InsertionTree,
    InvalidGraph,
    TopologicalGraph,
    _canonical_automorphisms,
    canonical_label,
    disjoint_union,
    enumerate_graphs,
    graph_from_json,
    graph_to_json,
    has_self_loop,
    permutation_sign,
    violations,
)
from liegraph.trees import comb_basis, comb_coords, comb_word, relabel, reroot

__all__ = [
    "GraphClass",
    "GraphVector",
    "ORDER_BOUND",
    "normalize",
    "contract_edge",
    "delta",
    "delta_sharp",
    "delta_of_graph",
    "project_quotient",
    "union",
    "basis",
    "cocycle_basis",
    "differential_matrix",
    "vector_to_json",
    "vector_from_json",
]

ORDER_BOUND = 3
VARIANTS = ("full", "self_loop_only", "quotient")


@dataclass(frozen=True, order=True)
class GraphClass:
    """A canonical topology together with one comb per vertex."""

    topology: TopologicalGraph
    combs: tuple

    @property
    def order(self) -> int:
        return self.topology.edge_count - self.topology.vertex_count

    @property
    def degree(self) -> int:
        return 2 * self.topology.edge_count - 3 * self.topology.vertex_count

    @property
    def has_self_loop(self) -> bool:
        return has_self_loop(self.topology)

    def representative(self) -> DecoratedGraph:
        """The canonical decoration: its induced orders are the sorted labels."""
        t = self.topology
        trees = []
        for block, comb in zip(t.vertices, self.combs):
            rank = {h: i + 1 for i, h in enumerate(block)}
            trees.append(InsertionTree(comb_word(tuple(rank[h] for h in comb))))
        return DecoratedGraph(t.half_edge_count, t.vertices, t.edges, trees)


class GraphVector:
    """Finite rational combination of :class:`GraphClass` values."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        self.terms = terms if isinstance(terms, QVector) else QVector(terms)

    @classmethod
    def of(cls, c: GraphClass, coeff=1) -> "GraphVector":
        return cls({c: Fraction(coeff)})

    def items(self):
        return sorted(self.terms.items())

    def __iter__(self):
        return iter(sorted(self.terms))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, GraphVector):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(self.terms)

    def __add__(self, other):
        return GraphVector(self.terms + other.terms)

    def __sub__(self, other):
        return GraphVector(self.terms - other.terms)

    def __neg__(self):
        return GraphVector(-self.terms)

    def scale(self, c) -> "GraphVector":
        return GraphVector(self.terms.scale(c))

    __rmul__ = scale
    __mul__ = scale

    def coefficient(self, c: GraphClass) -> Fraction:
        return self.terms.get(c, Fraction(0))

    def bigrades(self) -> set[tuple[int, int]]:
        return {(c.order, c.degree) for c in self.terms}

    @property
    def bigrade(self) -> Optional[tuple[int, int]]:
        g = self.bigrades()
        return next(iter(g)) if len(g) == 1 else None

    def __repr__(self):
        inner = " + ".join(f"{format_rational(q)}*{_short(c)}" for c, q in self.items())
        return f"GraphVector({inner or '0'})"


def _short(c: GraphClass) -> str:
    return f"[v{c.topology.vertex_count}e{c.topology.edge_count}:{c.topology.edges}]"


def _sum(vectors: Iterable[GraphVector]) -> GraphVector:
    acc: dict = {}
    for v in vectors:
        for k, q in v.terms.items():
            acc[k] = acc.get(k, 0) + q
    return GraphVector(acc)


# --------------------------------------------------------------------------
# the coinvariant space of one canonical topology


def _tensor(factors: list[dict]) -> dict[tuple, Fraction]:
    out: dict[tuple, Fraction] = {(): Fraction(1)}
    for f in factors:
        nxt: dict[tuple, Fraction] = {}
        for k, c in out.items():
            for comb, d in f.items():
                nxt[k + (comb,)] = c * d
        out = nxt
    return out


class _Space:
    def __init__(self, topo: TopologicalGraph):
        self.topo = topo
        self.block_of = {h: i for i, b in enumerate(topo.vertices) for h in b}
        self.tuples = list(itertools.product(*(comb_basis(b) for b in topo.vertices)))
        self.auts = _canonical_automorphisms(topo)

    def _act(self, g: tuple, tup: tuple) -> dict[tuple, Fraction]:
        img = lambda h: g[h - 1]  # noqa: E731
        sigma = [self.block_of[img(b[0])] for b in self.topo.vertices]
        s = permutation_sign(sigma)
        for x, y in self.topo.edges:
            if img(x) > img(y):
                s = -s
        f = {h: img(h) for h in range(1, self.topo.half_edge_count + 1)}
        placed: list = [None] * len(sigma)
        for i, (block, comb) in enumerate(zip(self.topo.vertices, tup)):
            ground = img(block[-1])
            placed[sigma[i]] = comb_coords(ground, relabel(comb_word(comb), f))
        return {k: s * c for k, c in _tensor(placed).items()}

    @cached_property
    def images(self) -> dict[tuple, QVector]:
        n = len(self.auts)
        out = {}
        for tup in self.tuples:
            acc: dict = {}
            for g in self.auts:
                for k, c in self._act(g, tup).items():
                    acc[k] = acc.get(k, 0) + c
            out[tup] = QVector(acc).scale(Fraction(1, n))
        return out

    @cached_property
    def pivots(self) -> list[tuple]:
        chosen: list[tuple] = []
        vecs: list[QVector] = []
        for tup in self.tuples:
            v = self.images[tup]
            if v and in_span(v, vecs) is None:
                chosen.append(tup)
                vecs.append(v)
        return chosen

    @cached_property
    def coords(self) -> dict[tuple, QVector]:
        vecs = [self.images[p] for p in self.pivots]
        classes = [GraphClass(self.topo, p) for p in self.pivots]
        out = {}
        for tup in self.tuples:
            c = in_span(self.images[tup], vecs)
            out[tup] = QVector(zip(classes, c))
        return out

    def classes(self) -> list[GraphClass]:
        return [GraphClass(self.topo, p) for p in self.pivots]


@lru_cache(maxsize=None)
def _space(topo: TopologicalGraph) -> _Space:
    return _Space(topo)


# --------------------------------------------------------------------------
# normalization


def _check(g: DecoratedGraph):
    problems = violations(g)
    if problems:
        raise InvalidGraph(problems)


def intrinsic_form(g: DecoratedGraph) -> tuple[TopologicalGraph, dict[tuple, Fraction]]:
    """Canonical topology and the signed element of its comb-tuple space."""
    canon, wit = canonical_label(g.topology)
    block_of = {h: i for i, b in enumerate(canon.vertices) for h in b}
    where = [block_of[wit[b[0]]] for b in g.vertices]
    s = permutation_sign(where)
    for t, h in g.edges:
        if wit[t] > wit[h]:
            s = -s
    placed: list = [None] * len(where)
    for i in range(len(g.vertices)):
        sign, word, ground = g.physical_tree(i)
        placed[where[i]] = {
            k: sign * c for k, c in comb_coords(wit[ground], relabel(word, wit)).items()
        }
    return canon, {k: s * c for k, c in _tensor(placed).items()}


def normalize(g: DecoratedGraph) -> GraphVector:
    """Express a decorated graph in the class basis."""
    _check(g)
    canon, elem = intrinsic_form(g)
    coords = _space(canon).coords
    return _sum(GraphVector(coords[k].scale(c)) for k, c in elem.items())


# --------------------------------------------------------------------------
# contraction and the differentials


def contract_edge(g: DecoratedGraph, e: int) -> DecoratedGraph:
    """Contract edge number ``e`` (1-based), merging its ends at the lower vertex."""
    if not 1 <= e <= len(g.edges):
        raise ValueError(f"no edge {e}")
    t, h = g.edges[e - 1]
    vi = g.vertex_index()
    i, j = vi[t], vi[h]
    if i == j:
        raise ValueError("cannot contract a self-loop")
    si, wi, gi = g.physical_tree(i)
    sj, wj, gj = g.physical_tree(j)
    a, p = reroot(wi, gi, t)
    b, q = reroot(wj, gj, h)
    lo, hi = min(i, j), max(i, j)
    merged = tuple(x for x in g.vertices[i] + g.vertices[j] if x not in (t, h))
    edges = [pair for k, pair in enumerate(g.edges) if k != e - 1]
    verts = [blk for k, blk in enumerate(g.vertices) if k != hi]
    verts[lo] = merged
    trees = [tr for k, tr in enumerate(g.trees) if k != hi]
    # compact half-edge ids
    keep = sorted(x for pair in edges for x in pair)
    new = {x: k + 1 for k, x in enumerate(keep)}
    edges = [(new[x], new[y]) for x, y in edges]
    verts = [tuple(new[x] for x in blk) for blk in verts]
    tmp = DecoratedGraph(len(keep), verts, edges, trees)
    pos = tmp.induced_order(lo)
    ground = pos[-1]
    c, w = reroot(relabel(p, new), relabel(q, new), ground)
    rank = {x: k + 1 for k, x in enumerate(pos)}
    trees[lo] = InsertionTree(relabel(w, rank), si * sj * a * b * c)
    return DecoratedGraph(len(keep), verts, edges, trees)


def _sigma(i: int, j: int) -> int:
    """Sign for contracting an edge from vertex ``i`` to vertex ``j`` (1-based)."""
    if j > i:
        return -1 if j % 2 else 1
    return -1 if (i + 1) % 2 else 1


def _regular(g: DecoratedGraph, k: int) -> bool:
    vi = g.vertex_index()
    t, h = g.edges[k]
    ends = {vi[t], vi[h]}
    if len(ends) == 1:
        return False
    return sum(1 for x, y in g.edges if {vi[x], vi[y]} == ends) == 1


def delta_of_graph(g: DecoratedGraph, regular_only: bool = False) -> GraphVector:
    """δ applied to a single decorated graph (not necessarily canonical)."""
    _check(g)
    vi = g.vertex_index()
    parts = []
    for k, (t, h) in enumerate(g.edges):
        i, j = vi[t] + 1, vi[h] + 1
        if i == j or (regular_only and not _regular(g, k)):
            continue
        parts.append(normalize(contract_edge(g, k + 1)).scale(_sigma(i, j)))
    return _sum(parts)


@lru_cache(maxsize=None)
def _delta_class(c: GraphClass, regular_only: bool) -> GraphVector:
    return delta_of_graph(c.representative(), regular_only)


def delta(v: GraphVector) -> GraphVector:
    return _sum(_delta_class(c, False).scale(q) for c, q in v.terms.items())


def project_quotient(v: GraphVector) -> GraphVector:
    return GraphVector({c: q for c, q in v.terms.items() if not c.has_self_loop})


def delta_sharp(v: GraphVector) -> GraphVector:
    """Differential of the self-loop-free quotient: regular edges only."""
    bad = [c for c in v.terms if c.has_self_loop]
    if bad:
        raise ValueError("delta_sharp needs a vector without self-loop classes")
    return _sum(_delta_class(c, True).scale(q) for c, q in v.terms.items())


def union(v1: GraphVector, v2: GraphVector) -> GraphVector:
    parts = []
    for c1, q1 in v1.terms.items():
        r1 = c1.representative()
        for c2, q2 in v2.terms.items():
            parts.append(normalize(disjoint_union(r1, c2.representative())).scale(q1 * q2))
    return _sum(parts)


# --------------------------------------------------------------------------
# bases and cohomology


def _check_order(n: int):
    if not 1 <= n <= ORDER_BOUND:
        raise ValueError(f"order must be in 1..{ORDER_BOUND}")


def basis(
    n: int, t: int, variant: str = "full", include_disconnected: bool = False
) -> list[GraphClass]:
    """Class basis of the order-``n``, degree-``t`` component."""
    _check_order(n)
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    if t < 0:
        raise ValueError("degree must be nonnegative")
    v, e = 2 * n - t, 3 * n - t
    out = []
    for topo in enumerate_graphs(v, e, connected=not include_disconnected):
        loops = has_self_loop(topo)
        if variant == "quotient" and loops or variant == "self_loop_only" and not loops:
            continue
        out.extend(_space(topo).classes())
    return sorted(out)


def differential_matrix(
    source: list[GraphClass], sharp: bool = False
) -> tuple[QMatrix, list[GraphClass]]:
    """Matrix of δ (or δ♯) with columns ``0..len(source)-1`` and one row per
    target class, targets sorted."""
    images = [_delta_class(c, sharp) for c in source]
    targets = sorted({k for im in images for k in im.terms})
    rows = []
    for tc in targets:
        rows.append({j: im.coefficient(tc) for j, im in enumerate(images)})
    return QMatrix(rows, range(len(source))), targets


def cocycle_basis(
    n: int, variant: str = "full", include_disconnected: bool = False
) -> list[GraphVector]:
    """Degree-0 cocycles, each scaled so its first coefficient is 1."""
    src = basis(n, 0, variant, include_disconnected)
    m, _ = differential_matrix(src, sharp=(variant == "quotient"))
    out = []
    for kv in kernel_basis(m):
        first = min(kv)
        kv = kv.scale(1 / kv[first])
        out.append(GraphVector({src[j]: q for j, q in kv.items()}))
    return out


# --------------------------------------------------------------------------
# JSON


def vector_to_json(v: GraphVector) -> dict:
    return {
        "terms": [
            {"coeff": format_rational(q), "graph": graph_to_json(c.representative())}
            for c, q in v.items()
        ]
    }


def vector_from_json(obj) -> GraphVector:
    if isinstance(obj, (GraphClass, DecoratedGraph)):
        raise TypeError("expected JSON")
    parts = []
    for term in obj["terms"]:
        g = graph_from_json(term["graph"])
        parts.append(normalize(g).scale(parse_rational(term.get("coeff", "1"))))
    return _sum(parts)
