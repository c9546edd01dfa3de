"""Grounded bracket words and their multilinear free-Lie normal form.

A word is either an ``int`` (a leaf label) or a pair ``(A, B)`` of words, read
as the bracket ``[A, B]``.  A grounded word ``(word, g)`` stands for the
invariant pairing ``B(word, x_g)``.  Because that pairing is symmetric and
ad-invariant, a grounded word can be re-expressed with any of its leaves as
the ground, at the cost of a sign (:func:`reroot`).

Normal form: the ground is the largest label and the word is expanded in the
left-comb basis ``[[..[l0, s1], s2].., sk]`` with ``l0`` the smallest label.
The coefficient of such a comb equals the coefficient of the associative
word ``l0 s1 .. sk`` in the expansion ``[A, B] = AB - BA``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Union

Word = Union[int, tuple]

__all__ = [
    "Word",
    "leaves",
    "relabel",
    "reroot",
    "expand",
    "comb_coords",
    "comb_word",
    "comb_basis",
    "is_word",
    "word_edge_count",
]


def is_word(w) -> bool:
    if isinstance(w, bool):
        return False
    if isinstance(w, int):
        return True
    return isinstance(w, tuple) and len(w) == 2 and is_word(w[0]) and is_word(w[1])


def leaves(w: Word) -> list[int]:
    if isinstance(w, int):
        return [w]
    return leaves(w[0]) + leaves(w[1])


def word_edge_count(w: Word) -> int:
    """Edges of the uni-trivalent tree of the grounded word ``B(w, ground)``.

    Every leaf (including the ground) contributes one edge and every bracket
    that is not the root contributes the edge to its parent.
    """
    if isinstance(w, int):
        return 1  # degenerate: a single leaf paired with the ground

    def brackets(u):
        return 0 if isinstance(u, int) else 1 + brackets(u[0]) + brackets(u[1])

    return len(leaves(w)) + 1 + brackets(w) - 1


def relabel(w: Word, f) -> Word:
    if isinstance(w, int):
        return f[w]
    return (relabel(w[0], f), relabel(w[1], f))


def _contains(w: Word, x: int) -> bool:
    if isinstance(w, int):
        return w == x
    return _contains(w[0], x) or _contains(w[1], x)


def reroot(u: Word, v: Word, x: int) -> tuple[int, Word]:
    """Return ``(s, w)`` with ``B(u, v) = s * B(w, x)``; ``x`` must be a leaf."""
    if _contains(u, x):
        u, v = v, u
    sign = 1
    while True:
        if isinstance(v, int):
            if v != x:
                raise ValueError(f"leaf {x} not in word")
            return sign, u
        a, c = v
        if _contains(c, x):
            # B(u, [a, c]) = B([u, a], c)
            u, v = (u, a), c
        else:
            # B(u, [a, c]) = -B([u, c], a)
            u, v = (u, c), a
            sign = -sign


@lru_cache(maxsize=None)
def expand(w: Word) -> dict[tuple[int, ...], int]:
    """Associative expansion of a bracket word."""
    if isinstance(w, int):
        return {(w,): 1}
    left, right = expand(w[0]), expand(w[1])
    out: dict[tuple[int, ...], int] = {}
    for p, a in left.items():
        for q, b in right.items():
            out[p + q] = out.get(p + q, 0) + a * b
            out[q + p] = out.get(q + p, 0) - a * b
    return {k: c for k, c in out.items() if c}


@lru_cache(maxsize=None)
def comb_coords(ground: int, w: Word) -> dict[tuple[int, ...], int]:
    """Coordinates of ``B(w, x_ground)`` in the normal-form comb basis.

    Keys are comb tuples ``(l0, s1, ..., sk)`` over every label except the
    largest, which becomes the ground.
    """
    labels = leaves(w)
    top = max(max(labels), ground)
    if ground == top:
        sign, body = 1, w
    else:
        sign, body = reroot(w, ground, top)
    lo = min(leaves(body))
    return {k: sign * c for k, c in expand(body).items() if k[0] == lo}


def comb_word(comb: tuple[int, ...]) -> Word:
    w: Word = comb[0]
    for x in comb[1:]:
        w = (w, x)
    return w


def comb_basis(labels) -> list[tuple[int, ...]]:
    """Lex-ordered comb basis for a vertex whose half-edge labels are ``labels``."""
    from itertools import permutations

    ls = sorted(labels)
    if len(ls) < 3:
        raise ValueError("a vertex needs at least three half-edges")
    lo, mid = ls[0], ls[1:-1]
    return [(lo,) + p for p in permutations(mid)]
