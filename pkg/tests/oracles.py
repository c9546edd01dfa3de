"""Independent reference implementations used only by the tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from liegraph.graphs import DecoratedGraph, InsertionTree, TopologicalGraph, permutation_sign
from liegraph.trees import relabel


# ---------------------------------------------------------------- linear algebra


def dense_rank(rows: list[list[Fraction]]) -> int:
    """Plain Gaussian elimination, no pivoting tricks."""
    m = [list(r) for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[rank], m[p] = m[p], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------- automorphisms


def brute_automorphisms(t: TopologicalGraph) -> set[tuple[int, ...]]:
    """Vertex bijection x per-vertex half-edge bijections, filtered by edges."""
    verts = t.vertices
    edges = {frozenset(p) for p in t.edges}
    out = set()
    for vp in itertools.permutations(range(len(verts))):
        if any(len(verts[i]) != len(verts[vp[i]]) for i in range(len(verts))):
            continue
        per = [itertools.permutations(verts[vp[i]]) for i in range(len(verts))]
        for images in itertools.product(*per):
            g = {}
            for i, img in enumerate(images):
                g.update(zip(verts[i], img))
            if all(frozenset((g[a], g[b])) in edges for a, b in t.edges):
                out.add(tuple(g[h] for h in range(1, t.half_edge_count + 1)))
    return out


# ---------------------------------------------------------------- trees as geometry


def _geometry(word, ground):
    """Internal nodes with neighbour triples in cyclic order (left, right, up)."""
    cyc = {}
    counter = itertools.count()

    def build(w, up):
        if isinstance(w, int):
            return ("leaf", w)
        me = ("node", next(counter))
        a = build(w[0], me)
        b = build(w[1], me)
        cyc[me] = (a, b, up)
        return me

    root = build(word, ("leaf", ground))
    return cyc, root


def _same_cycle(t1, t2) -> bool:
    return any(t1 == t2[k:] + t2[:k] for k in range(3))


def represent(word, ground, new_ground, pos):
    """Re-present the physical tree ``B(word, ground)`` with ``new_ground`` as
    the ground, children at each node ordered by least leaf position.

    Returns ``(flips, new_word)``: the number of nodes whose cyclic order the
    presentation reverses, and the word over positions.
    """
    cyc, _ = _geometry(word, ground)
    nbrs = {n: set(t) for n, t in cyc.items()}
    for n, t in cyc.items():
        for x in t:
            if x[0] == "leaf":
                nbrs.setdefault(x, set()).add(n)
    start = next(iter(nbrs[("leaf", new_ground)]))
    flips = 0

    def least(x, frm):
        if x[0] == "leaf":
            return pos[x[1]]
        return min(least(y, x) for y in nbrs[x] if y != frm)

    def walk(x, frm):
        nonlocal flips
        if x[0] == "leaf":
            return pos[x[1]]
        kids = sorted((y for y in nbrs[x] if y != frm), key=lambda y: least(y, x))
        if not _same_cycle((kids[0], kids[1], frm), cyc[x]):
            flips += 1
        return (walk(kids[0], x), walk(kids[1], x))

    w = walk(start, ("leaf", new_ground))
    return flips, w


def perturb(g: DecoratedGraph, rng: random.Random):
    """Random renumbering of vertices and edges plus random reversals.

    Trees are re-presented in the new positions by planar rule.  Returns the
    new graph and the predicted sign ``(-1)^(k + m + d)``: ``d`` the parity
    of the vertex renumbering, ``m`` the number of reversed edges, ``k`` the
    number of tree nodes whose cyclic order was reversed.
    """
    nv, ne = len(g.vertices), len(g.edges)
    vperm = list(range(nv))
    eperm = list(range(ne))
    rng.shuffle(vperm)
    rng.shuffle(eperm)
    flip = [rng.random() < 0.5 for _ in range(ne)]
    edges = []
    for k in eperm:
        t, h = g.edges[k]
        edges.append((h, t) if flip[k] else (t, h))
    verts = [g.vertices[i] for i in vperm]
    tmp = DecoratedGraph(g.half_edge_count, verts, edges, [g.trees[i] for i in vperm])
    trees = []
    k_total = 0
    for new_i, old_i in enumerate(vperm):
        sign, word, ground = g.physical_tree(old_i)
        order = tmp.induced_order(new_i)
        pos = {h: p + 1 for p, h in enumerate(order)}
        k, w = represent(word, ground, order[-1], pos)
        k_total += k
        trees.append(InsertionTree(w, sign))
    out = DecoratedGraph(g.half_edge_count, verts, edges, trees)
    d = permutation_sign(vperm)
    m = sum(flip)
    return out, d * (-1) ** (m + k_total)


def redecorate(g: DecoratedGraph, rng: random.Random) -> DecoratedGraph:
    """Random numbering and directions, keeping each positional tree as is."""
    nv, ne = len(g.vertices), len(g.edges)
    vperm = list(range(nv))
    eperm = list(range(ne))
    rng.shuffle(vperm)
    rng.shuffle(eperm)
    edges = []
    for k in eperm:
        t, h = g.edges[k]
        edges.append((h, t) if rng.random() < 0.5 else (t, h))
    return DecoratedGraph(
        g.half_edge_count, [g.vertices[i] for i in vperm], edges, [g.trees[i] for i in vperm]
    )


def relabel_topology(t: TopologicalGraph, rng: random.Random) -> TopologicalGraph:
    hs = list(range(1, t.half_edge_count + 1))
    img = hs[:]
    rng.shuffle(img)
    f = dict(zip(hs, img))
    return TopologicalGraph(
        t.half_edge_count,
        [[f[h] for h in b] for b in t.vertices],
        [[f[h] for h in p] for p in t.edges],
    )


def theta_weight_bruteforce(g) -> Fraction:
    """``Σ Tr_abc Tr_a'b'c' 𝟏^aa' 𝟏^bb' 𝟏^cc'`` straight from structure constants."""
    d = g.dim
    B = g.killing_matrix
    # Tr_abc = Σ_l c_ab^l B_lc
    tr = {}
    for a in range(d):
        for b in range(d):
            for c in range(d):
                s = sum(
                    (g.structure_constants.get((a, b, l), 0) * B[l][c] for l in range(d)),
                    Fraction(0),
                )
                if s:
                    tr[(a, b, c)] = s
    C = g.casimir_matrix
    total = Fraction(0)
    for (a, b, c), x in tr.items():
        for (p, q, r), y in tr.items():
            total += x * y * C[a][p] * C[b][q] * C[c][r]
    return total
