"""Half-edge graphs: topology, decorations, canonical labels and enumeration.

A :class:`TopologicalGraph` is a pair of partitions of the half-edge set
``{1..H}``: one into vertices (blocks of size at least 3) and one into edges
(pairs).  A :class:`DecoratedGraph` adds a vertex numbering, an edge
numbering, a direction for every edge and a positional insertion tree at
every vertex.

At a vertex the half-edges are ordered by edge number, the tail of an edge
coming before its head (this only matters for self-loops).  An insertion
tree whose word is ``w`` over positions ``1..n-1`` denotes the form
``W(v_1, .., v_n) = B(w(v_1, .., v_{n-1}), v_n)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, Optional, Sequence

from liegraph.trees import Word, is_word, leaves, word_edge_count

__all__ = [
    "TopologicalGraph",
    "InsertionTree",
    "DecoratedGraph",
    "Violation",
    "InvalidGraph",
    "permutation_sign",
    "validate",
    "violations",
    "order",
    "degree",
    "canonical_label",
    "automorphisms",
    "automorphism_count",
    "enumerate_graphs",
    "enumerate_trivalent",
    "is_connected",
    "has_self_loop",
    "relative_orientation",
    "default_decoration",
    "decorated_from_edges",
    "disjoint_union",
    "graph_to_json",
    "graph_from_json",
    "to_dot",
    "from_dot",
]


def permutation_sign(seq: Sequence) -> int:
    """Sign of the permutation that sorts ``seq`` (entries must be distinct)."""
    pos = {x: i for i, x in enumerate(sorted(seq))}
    p = [pos[x] for x in seq]
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# --------------------------------------------------------------------------
# topology


@dataclass(frozen=True, order=True)
class TopologicalGraph:
    """Two partitions of ``{1..half_edge_count}``.

    Blocks are stored sorted and the block lists are sorted too, so equality
    is equality of partitions.  No validity check happens here; see
    :func:`violations`.
    """

    half_edge_count: int
    vertices: tuple
    edges: tuple

    def __post_init__(self):
        vs = tuple(sorted(tuple(sorted(b)) for b in self.vertices))
        es = tuple(sorted(tuple(sorted(p)) for p in self.edges))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def vertex_of(self) -> dict[int, int]:
        return {h: i for i, b in enumerate(self.vertices) for h in b}

    def valencies(self) -> list[int]:
        return [len(b) for b in self.vertices]

    def encoding(self) -> tuple:
        return (self.half_edge_count, self.vertices, self.edges)


def _topology_violations(t: TopologicalGraph) -> list["Violation"]:
    out = []
    universe = set(range(1, t.half_edge_count + 1))
    vs = [h for b in t.vertices for h in b]
    es = [h for p in t.edges for h in p]
    if t.half_edge_count % 2:
        out.append(Violation("half_edges", "half-edge count must be even"))
    if sorted(vs) != sorted(universe):
        out.append(Violation("vertices", "vertex blocks must partition 1..H exactly once"))
    if sorted(es) != sorted(universe):
        out.append(Violation("edges", "edges must partition 1..H exactly once"))
    for p in t.edges:
        if len(p) != 2:
            out.append(Violation("edges", f"edge {p} is not a pair"))
    for i, b in enumerate(t.vertices):
        if len(b) < 3:
            out.append(Violation("vertices", f"vertex {b} has valency {len(b)} < 3", where=i + 1))
    return out


# --------------------------------------------------------------------------
# decorated graphs


@dataclass(frozen=True)
class InsertionTree:
    """A positional grounded bracket word with an overall sign.

    Leaves ``1..n-1`` appear in ``word``; leaf ``n`` is the implicit ground.
    """

    word: Word
    sign: int = 1

    @property
    def leaf_count(self) -> int:
        return len(leaves(self.word)) + 1 if is_word(self.word) else 0

    @classmethod
    def y(cls) -> "InsertionTree":
        return cls((1, 2))

    def to_json(self):
        body = _word_to_json(self.word)
        return body if self.sign == 1 else {"sign": self.sign, "word": body}

    @classmethod
    def from_json(cls, obj) -> "InsertionTree":
        if isinstance(obj, dict):
            return cls(_word_from_json(obj["word"]), int(obj.get("sign", 1)))
        return cls(_word_from_json(obj))


def _word_to_json(w):
    return w if isinstance(w, int) else [_word_to_json(w[0]), _word_to_json(w[1])]


def _word_from_json(obj):
    if isinstance(obj, bool):
        raise ValueError("bad tree word")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, list) and len(obj) == 2:
        return (_word_from_json(obj[0]), _word_from_json(obj[1]))
    raise ValueError(f"bad tree word {obj!r}")


@dataclass(frozen=True)
class DecoratedGraph:
    """Vertices in numbering order, edges ``(tail, head)`` in numbering order,
    and one insertion tree per vertex."""

    half_edge_count: int
    vertices: tuple
    edges: tuple
    trees: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(sorted(b)) for b in self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(p) for p in self.edges))
        object.__setattr__(self, "trees", tuple(self.trees))

    @property
    def topology(self) -> TopologicalGraph:
        return TopologicalGraph(self.half_edge_count, self.vertices, self.edges)

    def edge_numbers(self) -> dict[int, tuple[int, int]]:
        """half-edge -> (edge number, 0 for tail / 1 for head)."""
        out = {}
        for k, (t, h) in enumerate(self.edges, start=1):
            out[t] = (k, 0)
            out[h] = (k, 1)
        return out

    def induced_order(self, i: int) -> list[int]:
        """Half-edges of vertex ``i`` (0-based) in position order."""
        en = self.edge_numbers()
        return sorted(self.vertices[i], key=en.__getitem__)

    def vertex_index(self) -> dict[int, int]:
        return {h: i for i, b in enumerate(self.vertices) for h in b}

    def physical_tree(self, i: int) -> tuple[int, Word, int]:
        """``(sign, word, ground)`` of the tree at vertex ``i`` over half-edge ids."""
        pos = self.induced_order(i)
        tree = self.trees[i]
        f = {p + 1: h for p, h in enumerate(pos)}
        from liegraph.trees import relabel

        return tree.sign, relabel(tree.word, f), pos[-1]

    def is_self_loop(self, k: int) -> bool:
        t, h = self.edges[k]
        vi = self.vertex_index()
        return vi[t] == vi[h]

    @property
    def order(self) -> int:
        return len(self.edges) - len(self.vertices)

    @property
    def degree(self) -> int:
        return 2 * len(self.edges) - 3 * len(self.vertices)


@dataclass(frozen=True)
class Violation:
    field: str
    message: str
    where: Optional[int] = None

    def to_json(self):
        d = {"field": self.field, "message": self.message}
        if self.where is not None:
            d["where"] = self.where
        return d


class InvalidGraph(ValueError):
    def __init__(self, problems: list[Violation]):
        self.violations = problems
        super().__init__("; ".join(v.message for v in problems))


def violations(g) -> list[Violation]:
    """Every broken invariant of a topological or decorated graph."""
    if isinstance(g, TopologicalGraph):
        return _topology_violations(g)
    out = _topology_violations(g.topology)
    if out:
        return out
    if len(g.trees) != len(g.vertices):
        return out + [Violation("trees", "need exactly one tree per vertex")]
    for i, (b, tree) in enumerate(zip(g.vertices, g.trees)):
        n = len(b)
        if not isinstance(tree, InsertionTree) or not is_word(tree.word):
            out.append(Violation("trees", "malformed tree word", where=i + 1))
            continue
        if tree.sign not in (1, -1):
            out.append(Violation("trees", "tree sign must be +1 or -1", where=i + 1))
        ls = leaves(tree.word)
        if sorted(ls) != list(range(1, n)):
            out.append(
                Violation("trees", f"leaves {ls} must be exactly 1..{n - 1}", where=i + 1)
            )
        edges = word_edge_count(tree.word)
        if edges != 2 * n - 3:
            out.append(
                Violation("trees", f"tree has {edges} edges, expected {2 * n - 3}", where=i + 1)
            )
    return out


def validate(g) -> bool:
    return not violations(g)


def order(g) -> int:
    return g.edge_count - g.vertex_count if isinstance(g, TopologicalGraph) else g.order


def degree(g) -> int:
    if isinstance(g, TopologicalGraph):
        return 2 * g.edge_count - 3 * g.vertex_count
    return g.degree


def is_connected(t) -> bool:
    if isinstance(t, DecoratedGraph):
        t = t.topology
    if not t.vertices:
        return True
    vo = t.vertex_of()
    adj = {i: set() for i in range(len(t.vertices))}
    for a, b in t.edges:
        adj[vo[a]].add(vo[b])
        adj[vo[b]].add(vo[a])
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(t.vertices)


def has_self_loop(t) -> bool:
    if isinstance(t, DecoratedGraph):
        t = t.topology
    vo = t.vertex_of()
    return any(vo[a] == vo[b] for a, b in t.edges)


def components(t: TopologicalGraph) -> list[list[int]]:
    vo = t.vertex_of()
    parent = list(range(len(t.vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in t.edges:
        parent[find(vo[a])] = find(vo[b])
    groups: dict[int, list[int]] = {}
    for i in range(len(t.vertices)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


# --------------------------------------------------------------------------
# canonical labeling


def _multiplicities(t: TopologicalGraph) -> list[list[int]]:
    n = len(t.vertices)
    vo = t.vertex_of()
    m = [[0] * n for _ in range(n)]
    for a, b in t.edges:
        i, j = sorted((vo[a], vo[b]))
        m[i][j] += 1
    return m


def _upper(m, perm) -> tuple:
    n = len(perm)
    out = []
    for a in range(n):
        for b in range(a, n):
            i, j = perm[a], perm[b]
            out.append(m[i][j] if i <= j else m[j][i])
    return tuple(out)


def _block_perms(keys: list) -> Iterator[tuple[int, ...]]:
    """All vertex orders that list vertices by nondecreasing key."""
    blocks: dict = {}
    for i, k in enumerate(keys):
        blocks.setdefault(k, []).append(i)
    ordered = [blocks[k] for k in sorted(blocks)]
    for choice in itertools.product(*(itertools.permutations(b) for b in ordered)):
        yield tuple(x for part in choice for x in part)


@lru_cache(maxsize=200_000)
def _canonical_matrix(valencies: tuple, upper: tuple) -> tuple[tuple, tuple]:
    """Lex-least upper triangle and the list of vertex orders achieving it."""
    n = len(valencies)
    m = [[0] * n for _ in range(n)]
    it = iter(upper)
    for a in range(n):
        for b in range(a, n):
            m[a][b] = next(it)
    keys = [(valencies[i], m[i][i]) for i in range(n)]
    best, winners = None, []
    for perm in _block_perms(keys):
        code = _upper(m, perm)
        if best is None or code < best:
            best, winners = code, [perm]
        elif code == best:
            winners.append(perm)
    return best, tuple(winners)


def _layout(valencies: Sequence[int], code: tuple):
    """Canonical half-edge labels from a canonical upper triangle.

    Returns the topology and, per pair ``(a, b)``, the list of canonical
    edges (as ``(slot_at_a, slot_at_b)``) in assignment order.
    """
    n = len(valencies)
    offsets, acc = [], 1
    for v in valencies:
        offsets.append(acc)
        acc += v
    nxt = list(offsets)
    it = iter(code)
    bundles = {}
    edges = []
    for a in range(n):
        for b in range(a, n):
            mult = next(it)
            lst = []
            for _ in range(mult):
                if a == b:
                    x, y = nxt[a], nxt[a] + 1
                    nxt[a] += 2
                else:
                    x, y = nxt[a], nxt[b]
                    nxt[a] += 1
                    nxt[b] += 1
                lst.append((x, y))
                edges.append((x, y))
            if mult:
                bundles[(a, b)] = lst
    vertices = [tuple(range(offsets[i], offsets[i] + valencies[i])) for i in range(n)]
    return TopologicalGraph(acc - 1, vertices, edges), bundles


def canonical_label(t: TopologicalGraph) -> tuple[TopologicalGraph, dict[int, int]]:
    """Canonical form of ``t`` and a witness ``{old half-edge: canonical}``."""
    m = _multiplicities(t)
    vals = tuple(t.valencies())
    upper = _upper(m, tuple(range(len(vals))))
    code, winners = _canonical_matrix(vals, upper)
    perm = winners[0]
    cvals = [vals[i] for i in perm]
    canon, bundles = _layout(cvals, code)
    vo = t.vertex_of()
    # original edges grouped by original vertex pair
    groups: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for a, b in t.edges:
        groups.setdefault(tuple(sorted((vo[a], vo[b]))), []).append((a, b))
    for lst in groups.values():
        lst.sort()
    witness: dict[int, int] = {}
    for (ca, cb), slots in bundles.items():
        oa, ob = perm[ca], perm[cb]
        orig = groups[tuple(sorted((oa, ob)))]
        for (x, y), (p, q) in zip(slots, orig):
            if ca == cb:
                witness[p], witness[q] = x, y
            else:
                if vo[p] != oa:
                    p, q = q, p
                witness[p], witness[q] = x, y
    return canon, witness


@lru_cache(maxsize=4096)
def _canonical_automorphisms(canon: TopologicalGraph) -> tuple[tuple[int, ...], ...]:
    vals = tuple(canon.valencies())
    m = _multiplicities(canon)
    code = _upper(m, tuple(range(len(vals))))
    _, winners = _canonical_matrix(vals, code)
    _, bundles = _layout(vals, code)
    H = canon.half_edge_count
    per_sigma = []
    for sigma in winners:
        # sigma lists, for canonical position a, the vertex placed there; the
        # map a -> sigma[a] is then a vertex automorphism
        choices = []
        for (a, b), slots in bundles.items():
            sa, sb = sigma[a], sigma[b]
            if a == b:
                target = bundles[(sa, sa)]
                opts = []
                for bij in itertools.permutations(range(len(slots))):
                    for flips in itertools.product((False, True), repeat=len(slots)):
                        mp = {}
                        for k, (x, y) in enumerate(slots):
                            u, w = target[bij[k]]
                            if flips[k]:
                                u, w = w, u
                            mp[x], mp[y] = u, w
                        opts.append(mp)
            else:
                key = (min(sa, sb), max(sa, sb))
                target = bundles[key]
                opts = []
                for bij in itertools.permutations(range(len(slots))):
                    mp = {}
                    for k, (x, y) in enumerate(slots):
                        u, w = target[bij[k]]
                        if sa > sb:
                            u, w = w, u
                        mp[x], mp[y] = u, w
                    opts.append(mp)
            choices.append(opts)
        per_sigma.append(choices)
    out = []
    for choices in per_sigma:
        for combo in itertools.product(*choices):
            g = [0] * (H + 1)
            for mp in combo:
                for x, y in mp.items():
                    g[x] = y
            out.append(tuple(g[1:]))
    return tuple(sorted(out))


def automorphisms(t: TopologicalGraph) -> list[dict[int, int]]:
    """All half-edge permutations of ``t`` preserving both partitions."""
    canon, wit = canonical_label(t)
    inv = {c: o for o, c in wit.items()}
    out = []
    for g in _canonical_automorphisms(canon):
        out.append({o: inv[g[wit[o] - 1]] for o in wit})
    return out


def automorphism_count(t: TopologicalGraph) -> int:
    canon, _ = canonical_label(t)
    vals = tuple(canon.valencies())
    m = _multiplicities(canon)
    code = _upper(m, tuple(range(len(vals))))
    _, winners = _canonical_matrix(vals, code)
    n = len(vals)
    bundle = prod(factorial(m[a][b]) for a in range(n) for b in range(a + 1, n))
    loops = prod(factorial(m[a][a]) * 2 ** m[a][a] for a in range(n))
    return len(winners) * bundle * loops


# --------------------------------------------------------------------------
# enumeration


def _degree_sequences(v: int, total: int, lo: int = 3) -> Iterator[tuple[int, ...]]:
    def rec(k, remaining, cap):
        if k == 0:
            if remaining == 0:
                yield ()
            return
        for d in range(min(cap, remaining - lo * (k - 1)), lo - 1, -1):
            for rest in rec(k - 1, remaining - d, d):
                yield (d,) + rest

    yield from rec(v, total, total)


def _matrices(degs: tuple[int, ...], allow_loops: bool) -> Iterator[list[list[int]]]:
    n = len(degs)
    cells = [(a, b) for a in range(n) for b in range(a, n)]
    m = [[0] * n for _ in range(n)]
    rem = list(degs)

    def rec(idx):
        if idx == len(cells):
            if all(r == 0 for r in rem):
                yield [row[:] for row in m]
            return
        a, b = cells[idx]
        # the last cell touching row a must close it exactly
        if a == b:
            top = rem[a] // 2 if allow_loops else 0
            for k in range(top, -1, -1):
                m[a][a] = k
                rem[a] -= 2 * k
                yield from rec(idx + 1)
                rem[a] += 2 * k
            m[a][a] = 0
        else:
            top = min(rem[a], rem[b])
            lo = rem[a] if b == n - 1 else 0
            for k in range(top, lo - 1, -1):
                m[a][b] = k
                rem[a] -= k
                rem[b] -= k
                yield from rec(idx + 1)
                rem[a] += k
                rem[b] += k
            m[a][b] = 0

    yield from rec(0)


def _from_matrix(degs, m) -> TopologicalGraph:
    n = len(degs)
    code = tuple(m[a][b] for a in range(n) for b in range(a, n))
    return _layout(list(degs), code)[0]


def enumerate_graphs(
    vertex_count: int,
    edge_count: int,
    connected: bool = True,
    allow_self_loops: bool = True,
    valency: Optional[int] = None,
) -> list[TopologicalGraph]:
    """Canonical forms of all multigraphs with the given counts and every
    valency at least 3 (exactly ``valency`` if given), each class once."""
    if vertex_count <= 0:
        return []
    seen = set()
    for degs in _degree_sequences(vertex_count, 2 * edge_count):
        if valency is not None and any(d != valency for d in degs):
            continue
        for m in _matrices(degs, allow_self_loops):
            t = _from_matrix(degs, m)
            if connected and not is_connected(t):
                continue
            seen.add(canonical_label(t)[0])
    return sorted(seen)


def enumerate_trivalent(n: int, connected: bool = True, allow_self_loops: bool = True):
    """Trivalent graphs of order ``n`` (``2n`` vertices, ``3n`` edges)."""
    if n < 1:
        raise ValueError("order must be at least 1")
    return enumerate_graphs(2 * n, 3 * n, connected, allow_self_loops, valency=3)


# --------------------------------------------------------------------------
# orientation and decorations


def relative_orientation(g: DecoratedGraph) -> int:
    """Sign of the permutation from the edge orientation to the vertex orientation."""
    if any(len(b) != 3 for b in g.vertices):
        raise ValueError("relative orientation is defined for trivalent graphs")
    edge_seq = [h for pair in g.edges for h in pair]
    vertex_seq = [h for i in range(len(g.vertices)) for h in g.induced_order(i)]
    rank = {h: i for i, h in enumerate(edge_seq)}
    return permutation_sign([rank[h] for h in vertex_seq])


def default_decoration(t: TopologicalGraph) -> DecoratedGraph:
    """Numbering and directions pulled back from the canonical form; Y trees.

    Only valid for trivalent ``t``; higher valencies would need a tree choice.
    """
    if any(len(b) != 3 for b in t.vertices):
        raise ValueError("default decoration needs a trivalent graph")
    _, wit = canonical_label(t)
    verts = sorted(t.vertices, key=lambda b: min(wit[h] for h in b))
    edges = []
    for a, b in t.edges:
        if wit[a] > wit[b]:
            a, b = b, a
        edges.append((a, b))
    edges.sort(key=lambda p: (wit[p[0]], wit[p[1]]))
    return DecoratedGraph(t.half_edge_count, verts, edges, [InsertionTree.y()] * len(verts))


def decorated_from_edges(
    vertex_count: int, edges: Sequence[tuple[int, int]], trees=None
) -> DecoratedGraph:
    """Build a decorated graph from 1-based ``(tail vertex, head vertex)`` pairs.

    Edge ``k`` gets half-edges ``2k-1`` (tail) and ``2k`` (head).  ``trees``
    maps 1-based vertex numbers to positional words or trees; missing entries
    default to the Y tree.
    """
    blocks = [[] for _ in range(vertex_count)]
    hedges = []
    for k, (i, j) in enumerate(edges, start=1):
        blocks[i - 1].append(2 * k - 1)
        blocks[j - 1].append(2 * k)
        hedges.append((2 * k - 1, 2 * k))
    trees = dict(trees or {})
    ts = []
    for v in range(1, vertex_count + 1):
        tr = trees.get(v)
        if tr is None:
            ts.append(InsertionTree.y())
        elif isinstance(tr, InsertionTree):
            ts.append(tr)
        else:
            ts.append(InsertionTree(tr))
    return DecoratedGraph(2 * len(edges), blocks, hedges, ts)


def disjoint_union(g1: DecoratedGraph, g2: DecoratedGraph) -> DecoratedGraph:
    s = g1.half_edge_count
    verts = list(g1.vertices) + [tuple(h + s for h in b) for b in g2.vertices]
    edges = list(g1.edges) + [(a + s, b + s) for a, b in g2.edges]
    return DecoratedGraph(s + g2.half_edge_count, verts, edges, list(g1.trees) + list(g2.trees))


# --------------------------------------------------------------------------
# JSON and DOT


def graph_to_json(g) -> dict:
    if isinstance(g, TopologicalGraph):
        g = _as_decorated(g)
    trees = []
    for b, t in zip(g.vertices, g.trees):
        trees.append(None if len(b) == 3 and t == InsertionTree.y() else t.to_json())
    return {
        "half_edges": g.half_edge_count,
        "vertices": [list(b) for b in g.vertices],
        "edges": [list(p) for p in g.edges],
        "trees": trees,
    }


def _as_decorated(t: TopologicalGraph) -> DecoratedGraph:
    if all(len(b) == 3 for b in t.vertices):
        return default_decoration(t)
    from liegraph.trees import comb_word

    trees = [InsertionTree(comb_word(tuple(range(1, len(b))))) for b in t.vertices]
    return DecoratedGraph(t.half_edge_count, t.vertices, t.edges, trees)


def graph_from_json(obj) -> DecoratedGraph:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        H = int(obj["half_edges"])
        verts = [tuple(int(h) for h in b) for b in obj["vertices"]]
        edges = [tuple(int(h) for h in p) for p in obj["edges"]]
        raw = obj.get("trees") or [None] * len(verts)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGraph([Violation("format", f"malformed graph JSON: {exc}")]) from exc
    if len(raw) != len(verts):
        raise InvalidGraph([Violation("trees", "need exactly one tree entry per vertex")])
    trees = []
    for i, (b, tr) in enumerate(zip(verts, raw)):
        if tr is None:
            if len(b) != 3:
                raise InvalidGraph(
                    [Violation("trees", "null tree only allowed at trivalent vertices", where=i + 1)]
                )
            trees.append(InsertionTree.y())
        else:
            try:
                trees.append(InsertionTree.from_json(tr))
            except (ValueError, KeyError, TypeError) as exc:
                raise InvalidGraph([Violation("trees", str(exc), where=i + 1)]) from exc
    g = DecoratedGraph(H, verts, edges, trees)
    problems = violations(g)
    if problems:
        raise InvalidGraph(problems)
    return g


def to_dot(g) -> str:
    if isinstance(g, TopologicalGraph):
        g = _as_decorated(g)
    vi = g.vertex_index()
    lines = ["digraph G {"]
    for i, (b, t) in enumerate(zip(g.vertices, g.trees)):
        attrs = [f'label="v{i + 1}"']
        if not (len(b) == 3 and t == InsertionTree.y()):
            body = json.dumps(_word_to_json(t.word), separators=(",", ":"))
            attrs.append(f'tree="{"-" if t.sign == -1 else ""}{body}"')
        lines.append(f"  v{i + 1} [{', '.join(attrs)}];")
    for k, (a, b) in enumerate(g.edges, start=1):
        lines.append(f'  v{vi[a] + 1} -> v{vi[b] + 1} [label="e{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def from_dot(text: str) -> DecoratedGraph:
    """Read back the DOT produced by :func:`to_dot`."""
    import re

    nodes = {}
    edges = []
    for line in text.splitlines():
        line = line.strip()
        me = re.match(r'v(\d+)\s*->\s*v(\d+)\s*\[label="e(\d+)"\];', line)
        if me:
            edges.append((int(me.group(3)), int(me.group(1)), int(me.group(2))))
            continue
        mn = re.match(r"v(\d+)\s*\[(.*)\];", line)
        if mn:
            tree = re.search(r'tree="([^"]*)"', mn.group(2))
            if tree:
                txt = tree.group(1)
                sign = -1 if txt.startswith("-") else 1
                nodes[int(mn.group(1))] = {"sign": sign, "word": json.loads(txt.lstrip("-"))}
            else:
                nodes[int(mn.group(1))] = None
    edges.sort()
    g = decorated_from_edges(len(nodes), [(i, j) for _, i, j in edges])
    trees = [
        InsertionTree.from_json(nodes[i + 1]) if nodes[i + 1] is not None else t
        for i, t in enumerate(g.trees)
    ]
    return DecoratedGraph(g.half_edge_count, g.vertices, g.edges, trees)
