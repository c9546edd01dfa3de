"""Named decorated graphs used throughout the tests and the CLI.

Edge lists are 1-based ``(tail vertex, head vertex)`` pairs; see
:func:`liegraph.graphs.decorated_from_edges` for the half-edge layout.
"""

from __future__ import annotations

from liegraph.graphs import DecoratedGraph, InsertionTree, decorated_from_edges

# positional words at a 4-valent vertex, ground at position 4
TREE_I = ((1, 2), 3)  # B([1,2],[3,4])
TREE_H = ((2, 3), 1)  # B([1,4],[2,3])
TREE_X = InsertionTree(((1, 3), 2), -1)  # B([1,3],[4,2])


def theta() -> DecoratedGraph:
    return decorated_from_edges(2, [(1, 2), (1, 2), (1, 2)])


def dumbbell() -> DecoratedGraph:
    return decorated_from_edges(2, [(1, 1), (1, 2), (2, 2)])


def figure_eight(tree=TREE_I, reverse_first_loop: bool = False) -> DecoratedGraph:
    g = decorated_from_edges(1, [(1, 1), (1, 1)], {1: tree})
    if reverse_first_loop:
        (t, h), rest = g.edges[0], g.edges[1:]
        g = DecoratedGraph(g.half_edge_count, g.vertices, ((h, t),) + rest, g.trees)
    return g


def gamma1() -> DecoratedGraph:
    """Complete graph on four vertices."""
    return decorated_from_edges(4, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3), (2, 4)])


def gamma2() -> DecoratedGraph:
    """Four-cycle with two opposite edges doubled."""
    return decorated_from_edges(4, [(1, 2), (3, 4), (2, 3), (2, 3), (1, 4), (1, 4)])


def gamma_i() -> DecoratedGraph:
    """Common contraction of the two order-2 graphs without self-loops."""
    return decorated_from_edges(3, [(1, 2), (2, 3), (2, 3), (1, 3), (1, 3)], {3: TREE_I})


def double_edge(tree, loop: bool = False) -> DecoratedGraph:
    """Vertex v1 is 4-valent; its positions 3 and 4 form a double edge to the
    trivalent vertex v3.  Positions 1 and 2 go to v2 twice, or form a loop
    when ``loop`` is set."""
    if loop:
        edges = [(1, 1), (1, 3), (1, 3), (3, 2), (2, 2)]
    else:
        edges = [(1, 2), (1, 2), (1, 3), (1, 3), (3, 2)]
    return decorated_from_edges(3, edges, {1: tree})


def triple_edge(tree) -> DecoratedGraph:
    """The 4-valent vertex v2 meets the trivalent v3 along three parallel edges."""
    return decorated_from_edges(3, [(2, 3), (2, 3), (2, 3), (1, 2), (1, 1)], {2: tree})
