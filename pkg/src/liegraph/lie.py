"""Lie algebras from rational structure constants, and their weight systems.

Indices are 0-based in Python and 1-based in JSON files.  A rank-``r``
:class:`Tensor` is a sparse map from index tuples to rationals; whether an
index is upper or lower is left to the operation that produced it.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from liegraph.exactq import QMatrix, QVector, format_rational, kernel_basis, parse_rational, rref
from liegraph.graphs import DecoratedGraph, InsertionTree
from liegraph.trees import is_word, leaves

__all__ = [
    "Tensor",
    "LieAlgebraData",
    "InvalidAlgebra",
    "sl2",
    "so3",
    "direct_sum",
    "builtin",
    "bracket",
    "killing",
    "casimir",
    "cubic_trace",
    "bracket_map",
    "bracket_kernel_dim",
    "antisymmetric_kernel",
    "wedge",
    "weight_of_tree",
    "tree_weight_direct",
    "ihx_check",
    "graph_weight",
    "FiberCheck",
    "fiber_vanishing_check",
    "loop_pair_identity",
    "lemma_641_identity",
    "contract",
    "algebra_from_json",
    "algebra_to_json",
    "tensor_from_json",
]


class InvalidAlgebra(ValueError):
    pass


@dataclass(frozen=True)
class Tensor:
    rank: int
    dim: int
    entries: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, v in dict(self.entries).items():
            k = tuple(k)
            if len(k) != self.rank or any(not 0 <= i < self.dim for i in k):
                raise ValueError(f"index {k} outside rank {self.rank}, dim {self.dim}")
            v = Fraction(v)
            if v:
                clean[k] = v
        object.__setattr__(self, "entries", clean)

    def __getitem__(self, idx) -> Fraction:
        if not isinstance(idx, tuple):
            idx = (idx,)
        return self.entries.get(idx, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.rank, self.dim, self.entries) == (other.rank, other.dim, other.entries)

    def __hash__(self):
        return hash((self.rank, self.dim, frozenset(self.entries.items())))

    def __add__(self, other: "Tensor") -> "Tensor":
        self._same(other)
        d = dict(self.entries)
        for k, v in other.entries.items():
            d[k] = d.get(k, 0) + v
        return Tensor(self.rank, self.dim, d)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Tensor":
        return Tensor(self.rank, self.dim, {k: c * v for k, v in self.entries.items()})

    def _same(self, other):
        if (self.rank, self.dim) != (other.rank, other.dim):
            raise ValueError("tensor shape mismatch")

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self, perm: Sequence[int]) -> "Tensor":
        """Entry ``new[i_0..] = old[i_{perm^-1}..]``: slot ``k`` moves to ``perm[k]``."""
        out = {}
        for k, v in self.entries.items():
            nk = [0] * self.rank
            for slot, target in enumerate(perm):
                nk[target] = k[slot]
            out[tuple(nk)] = v
        return Tensor(self.rank, self.dim, out)

    @classmethod
    def vector(cls, dim: int, coords: Mapping[int, object]) -> "Tensor":
        return cls(1, dim, {(i,): c for i, c in coords.items()})

    @classmethod
    def basis_vector(cls, dim: int, i: int) -> "Tensor":
        return cls(1, dim, {(i,): 1})

    @classmethod
    def zero(cls, rank: int, dim: int) -> "Tensor":
        return cls(rank, dim, {})


@dataclass(frozen=True, eq=False)
class LieAlgebraData:
    """``structure_constants[(i, j, k)]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``."""

    dim: int
    basis_labels: tuple
    structure_constants: Mapping

    def __post_init__(self):
        d = self.dim
        if len(self.basis_labels) != d:
            raise InvalidAlgebra("need one label per basis vector")
        sc = {}
        for (i, j, k), v in dict(self.structure_constants).items():
            if not all(0 <= x < d for x in (i, j, k)):
                raise InvalidAlgebra(f"index ({i},{j},{k}) out of range")
            v = Fraction(v)
            if v:
                sc[(i, j, k)] = v
        object.__setattr__(self, "structure_constants", sc)
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))
        for (i, j, k), v in sc.items():
            if sc.get((j, i, k), 0) != -v:
                raise InvalidAlgebra(f"antisymmetry fails at ({i},{j},{k})")
        table = self.table
        for i, j, k in itertools.combinations_with_replacement(range(d), 3):
            jac = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                for l, x in table[a][b].items():
                    for m, y in table[l][c].items():
                        jac[m] = jac.get(m, 0) + x * y
            if any(jac.values()):
                raise InvalidAlgebra(f"Jacobi identity fails at ({i},{j},{k})")
        _, rank = rref(QMatrix.from_dense(self.killing_matrix))
        if rank != d:
            raise InvalidAlgebra("Killing form is degenerate (not semi-simple)")

    @cached_property
    def table(self) -> list[list[dict[int, Fraction]]]:
        """``table[i][j]`` is ``[e_i, e_j]`` as ``{k: coefficient}``."""
        t = [[{} for _ in range(self.dim)] for _ in range(self.dim)]
        for (i, j, k), v in self.structure_constants.items():
            t[i][j][k] = v
        return t

    @cached_property
    def killing_matrix(self) -> list[list[Fraction]]:
        d, t = self.dim, self.table
        # ad(e_i)[l][k] = c_{ik}^l
        B = [[Fraction(0)] * d for _ in range(d)]
        for i in range(d):
            for j in range(d):
                s = Fraction(0)
                for k in range(d):
                    for l, x in t[i][k].items():
                        y = t[j][l].get(k)
                        if y:
                            s += x * y
                B[i][j] = s
        return B

    @cached_property
    def casimir_matrix(self) -> list[list[Fraction]]:
        return _inverse(self.killing_matrix)

    def index(self, label: str) -> int:
        return self.basis_labels.index(label)

    def vec(self, label: str) -> Tensor:
        return Tensor.basis_vector(self.dim, self.index(label))


def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = QMatrix.from_dense([row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)])
    red, _ = rref(aug)
    dense = red.to_dense()
    return [row[n:] for row in dense]


# --------------------------------------------------------------------------
# built-in algebras


def sl2() -> LieAlgebraData:
    h, e, f = 0, 1, 2
    sc = {}
    for (i, j), out in {(h, e): {e: 2}, (h, f): {f: -2}, (e, f): {h: 1}}.items():
        for k, v in out.items():
            sc[(i, j, k)] = v
            sc[(j, i, k)] = -v
    return LieAlgebraData(3, ("h", "e", "f"), sc)


def so3() -> LieAlgebraData:
    sc = {}
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        sc[(i, j, k)] = 1
        sc[(j, i, k)] = -1
    return LieAlgebraData(3, ("x", "y", "z"), sc)


def direct_sum(g1: LieAlgebraData, g2: LieAlgebraData) -> LieAlgebraData:
    d = g1.dim
    sc = dict(g1.structure_constants)
    for (i, j, k), v in g2.structure_constants.items():
        sc[(i + d, j + d, k + d)] = v
    labels = tuple(f"{x}_1" for x in g1.basis_labels) + tuple(f"{x}_2" for x in g2.basis_labels)
    return LieAlgebraData(d + g2.dim, labels, sc)


def builtin(name: str) -> LieAlgebraData:
    if name == "sl2":
        return sl2()
    if name == "so3":
        return so3()
    if name in ("sl2xsl2", "sl2+sl2"):
        return direct_sum(sl2(), sl2())
    raise KeyError(name)


# --------------------------------------------------------------------------
# basic tensors


def _check_vec(g, x: Tensor):
    if x.rank != 1 or x.dim != g.dim:
        raise ValueError("expected a vector of the algebra's dimension")


def bracket(g: LieAlgebraData, x: Tensor, y: Tensor) -> Tensor:
    _check_vec(g, x)
    _check_vec(g, y)
    out: dict = {}
    for (i,), a in x.entries.items():
        for (j,), b in y.entries.items():
            for k, c in g.table[i][j].items():
                out[(k,)] = out.get((k,), 0) + a * b * c
    return Tensor(1, g.dim, out)


def killing(g: LieAlgebraData) -> Tensor:
    B = g.killing_matrix
    return Tensor(2, g.dim, {(i, j): B[i][j] for i in range(g.dim) for j in range(g.dim)})


def casimir(g: LieAlgebraData) -> Tensor:
    C = g.casimir_matrix
    return Tensor(2, g.dim, {(i, j): C[i][j] for i in range(g.dim) for j in range(g.dim)})


def cubic_trace(g: LieAlgebraData) -> Tensor:
    B = g.killing_matrix
    out = {}
    for i in range(g.dim):
        for j in range(g.dim):
            for l, x in g.table[i][j].items():
                for k in range(g.dim):
                    if B[l][k]:
                        out[(i, j, k)] = out.get((i, j, k), 0) + x * B[l][k]
    return Tensor(3, g.dim, out)


def bracket_map(g: LieAlgebraData, xi: Tensor) -> Tensor:
    """``𝔏(ξ) = Σ ξ^{ab} [e_a, e_b]``."""
    if xi.rank != 2 or xi.dim != g.dim:
        raise ValueError("expected a rank-2 tensor of the algebra's dimension")
    out: dict = {}
    for (a, b), v in xi.entries.items():
        for k, c in g.table[a][b].items():
            out[(k,)] = out.get((k,), 0) + v * c
    return Tensor(1, g.dim, out)


def _bracket_rows(g: LieAlgebraData, columns) -> QMatrix:
    # rows: output basis vector k; columns: pairs (a, b) of g ⊗ g
    rows = [dict() for _ in range(g.dim)]
    for a, b in columns:
        for k, c in g.table[a][b].items():
            rows[k][(a, b)] = c
    return QMatrix(rows, columns)


def bracket_kernel_dim(g: LieAlgebraData) -> int:
    cols = [(a, b) for a in range(g.dim) for b in range(g.dim)]
    return len(kernel_basis(_bracket_rows(g, cols)))


def wedge(d: int, pairs: Mapping[tuple[int, int], object]) -> Tensor:
    """``Σ c · (e_a ⊗ e_b - e_b ⊗ e_a)``."""
    out: dict = {}
    for (a, b), c in pairs.items():
        out[(a, b)] = out.get((a, b), 0) + Fraction(c)
        out[(b, a)] = out.get((b, a), 0) - Fraction(c)
    return Tensor(2, d, out)


def antisymmetric_kernel(g: LieAlgebraData) -> list[Tensor]:
    """Basis of ``Λ²𝔤 ∩ ker 𝔏``, in the wedge basis ``e_a ∧ e_b`` (a < b)."""
    cols = [(a, b) for a in range(g.dim) for b in range(a + 1, g.dim)]
    # [e_a, e_b] - [e_b, e_a] = 2 [e_a, e_b]; the factor does not change the kernel
    out = []
    for v in kernel_basis(_bracket_rows(g, cols)):
        out.append(wedge(g.dim, dict(v.items())))
    return out


# --------------------------------------------------------------------------
# tensor networks


def contract(factors: Sequence[tuple[tuple, Mapping]], free: Sequence = ()) -> dict[tuple, Fraction]:
    """Contract a network of sparse tensors.

    Each factor is ``(labels, entries)``; labels appearing twice are summed
    over.  The result is keyed by the values of ``free`` in order.
    """
    work = [(tuple(lbl), dict(ent)) for lbl, ent in factors]
    if not work:
        return {(): Fraction(1)}
    while len(work) > 1:
        # contract the pair sharing the most labels, preferring small factors
        best = None
        for x in range(len(work)):
            for y in range(x + 1, len(work)):
                shared = len(set(work[x][0]) & set(work[y][0]))
                if shared:
                    key = (-shared, len(work[x][1]) * len(work[y][1]))
                    if best is None or key < best[0]:
                        best = (key, x, y)
        if best is None:
            x, y = 0, 1
        else:
            _, x, y = best
        merged = _pair(work[x], work[y])
        work = [w for k, w in enumerate(work) if k not in (x, y)] + [merged]
    labels, ent = work[0]
    # trace out any label repeated inside the last factor
    labels, ent = _self_trace(labels, ent)
    order = [labels.index(f) for f in free]
    if len(order) != len(labels):
        raise ValueError("free labels do not match the uncontracted labels")
    out: dict = {}
    for k, v in ent.items():
        kk = tuple(k[i] for i in order)
        out[kk] = out.get(kk, 0) + v
    return {k: v for k, v in out.items() if v}


def _self_trace(labels, ent):
    while len(set(labels)) < len(labels):
        seen = {}
        for pos, l in enumerate(labels):
            if l in seen:
                p, q = seen[l], pos
                break
            seen[l] = pos
        keep = [i for i in range(len(labels)) if i not in (p, q)]
        nxt: dict = {}
        for k, v in ent.items():
            if k[p] == k[q]:
                kk = tuple(k[i] for i in keep)
                nxt[kk] = nxt.get(kk, 0) + v
        labels, ent = tuple(labels[i] for i in keep), nxt
    return labels, ent


def _pair(f1, f2):
    l1, e1 = _self_trace(*f1)
    l2, e2 = _self_trace(*f2)
    shared = [l for l in l1 if l in l2]
    p1 = [l1.index(l) for l in shared]
    p2 = [l2.index(l) for l in shared]
    rest1 = [i for i in range(len(l1)) if l1[i] not in shared]
    rest2 = [i for i in range(len(l2)) if l2[i] not in shared]
    index: dict = {}
    for k, v in e2.items():
        index.setdefault(tuple(k[i] for i in p2), []).append((tuple(k[i] for i in rest2), v))
    out: dict = {}
    for k, v in e1.items():
        for r2, w in index.get(tuple(k[i] for i in p1), ()):
            kk = tuple(k[i] for i in rest1) + r2
            out[kk] = out.get(kk, 0) + v * w
    labels = tuple(l1[i] for i in rest1) + tuple(l2[i] for i in rest2)
    return labels, {k: v for k, v in out.items() if v}


def _entries(t: Tensor) -> dict:
    return dict(t.entries)


def _tree_factors(g: LieAlgebraData, word, ground_label, leaf_label, tag) -> list:
    """Tr at every bracket, 𝟏 on every internal edge; leaves use ``leaf_label``."""
    tr = _entries(cubic_trace(g))
    one = _entries(casimir(g))
    factors = []
    counter = itertools.count()

    def node(w, up):
        # ``up`` is the label of the slot this subtree feeds
        if isinstance(w, int):
            return leaf_label(w), []
        k = next(counter)
        a = node(w[0], None)
        b = node(w[1], None)
        return None, [(a, b, k)]

    def build(w, up_label):
        if isinstance(w, int):
            raise AssertionError
        k = next(counter)
        slots = []
        for child in w:
            if isinstance(child, int):
                slots.append(leaf_label(child))
            else:
                inner = (tag, "in", k, len(slots))
                outer = build(child, None)
                factors.append(((inner, outer), one))
                slots.append(inner)
        slots.append(up_label if up_label is not None else (tag, "up", k))
        factors.append((tuple(slots), tr))
        return slots[-1]

    if isinstance(word, int):
        raise ValueError("tree word needs at least two leaves")
    build(word, ground_label)
    return factors


def weight_of_tree(tree, g: LieAlgebraData) -> Tensor:
    """``W_T`` as a rank-``n`` tensor, slot ``k`` = leaf position ``k + 1``."""
    if not isinstance(tree, InsertionTree):
        tree = InsertionTree(tree)
    if not is_word(tree.word) or isinstance(tree.word, int):
        raise ValueError("malformed tree")
    n = tree.leaf_count
    if sorted(leaves(tree.word)) != list(range(1, n)):
        raise ValueError("tree leaves must be 1..n-1")
    factors = _tree_factors(g, tree.word, ("leaf", n), lambda p: ("leaf", p), "t")
    free = [("leaf", p) for p in range(1, n + 1)]
    return Tensor(n, g.dim, contract(factors, free)).scale(tree.sign)


def tree_weight_direct(tree, g: LieAlgebraData) -> Tensor:
    """Oracle for :func:`weight_of_tree`: evaluate ``B(w(e_a..), e_b)`` recursively."""
    if not isinstance(tree, InsertionTree):
        tree = InsertionTree(tree)
    n = tree.leaf_count
    basis = [Tensor.basis_vector(g.dim, i) for i in range(g.dim)]
    B = g.killing_matrix

    def ev(w, args):
        if isinstance(w, int):
            return basis[args[w - 1]]
        return bracket(g, ev(w[0], args), ev(w[1], args))

    out = {}
    for args in itertools.product(range(g.dim), repeat=n):
        x = ev(tree.word, args)
        s = sum((c * B[k][args[-1]] for (k,), c in x.entries.items()), Fraction(0))
        if s:
            out[args] = tree.sign * s
    return Tensor(n, g.dim, out)


def ihx_check(g: LieAlgebraData) -> bool:
    """``W_I + W_H + W_X`` vanishes on every basis tuple."""
    wi = weight_of_tree(((1, 2), 3), g)  # B([1,2],[3,4])
    wh = weight_of_tree(((2, 3), 1), g)  # B([1,4],[2,3])
    wx = weight_of_tree(((1, 3), 2), g).scale(-1)  # B([1,3],[4,2])
    return (wi + wh + wx).is_zero()


def graph_weight(g: LieAlgebraData, graph, xi: Optional[Tensor] = None) -> Fraction:
    """Fully contracted Lie factor of a closed graph.

    Regular edges carry the Casimir, self-loops carry ``xi`` (tail slot
    first).  A :class:`~liegraph.graph_complex.GraphClass` is evaluated on its
    representative; a ``GraphVector`` linearly.
    """
    from liegraph.graph_complex import GraphClass, GraphVector

    if isinstance(graph, GraphVector):
        return sum((q * graph_weight(g, c, xi) for c, q in graph.items()), Fraction(0))
    if isinstance(graph, GraphClass):
        graph = graph.representative()
    if xi is None:
        xi = Tensor.zero(2, g.dim)
    if xi.rank != 2 or xi.dim != g.dim:
        raise ValueError("xi must be rank 2 over the algebra")
    one = _entries(casimir(g))
    vi = graph.vertex_index()
    factors = []
    for i in range(len(graph.vertices)):
        sign, word, ground = graph.physical_tree(i)
        fs = _tree_factors(g, word, ("h", ground), lambda h: ("h", h), ("v", i))
        if sign == -1:
            fs.append(((), {(): Fraction(-1)}))
        factors.extend(fs)
    for t, h in graph.edges:
        ent = _entries(xi) if vi[t] == vi[h] else one
        factors.append(((("h", t), ("h", h)), ent))
    return contract(factors).get((), Fraction(0))


@dataclass(frozen=True)
class FiberCheck:
    identity_holds: bool
    vanishes: bool

    def __bool__(self):
        return self.identity_holds and self.vanishes


def fiber_vanishing_check(g: LieAlgebraData, xi: Tensor) -> FiberCheck:
    """Compare ``Σ ξ^{ab} Tr(e_a, e_b, w)`` with ``B(𝔏ξ, w)`` for every basis ``w``."""
    tr = cubic_trace(g)
    lx = bracket_map(g, xi)
    B = g.killing_matrix
    holds, zero = True, True
    for w in range(g.dim):
        lhs = sum((v * tr[(a, b, w)] for (a, b), v in xi.entries.items()), Fraction(0))
        rhs = sum((c * B[k][w] for (k,), c in lx.entries.items()), Fraction(0))
        holds &= lhs == rhs
        zero &= lhs == 0
    return FiberCheck(holds, zero)


def loop_pair_identity(g: LieAlgebraData, xi: Tensor, a: int, b: int) -> tuple[Fraction, Fraction]:
    """``Σ ξ^{lj} Tr(e_l, e_a, e_m) 𝟏^{mn} Tr(e_n, e_j, e_b)`` against ``½ B(𝔏ξ, [e_a, e_b])``."""
    tr = cubic_trace(g).entries
    one = casimir(g).entries
    lhs = Fraction(0)
    for (l, j), x in xi.entries.items():
        for (m, n), c in one.items():
            lhs += x * tr.get((l, a, m), 0) * c * tr.get((n, j, b), 0)
    lx = bracket_map(g, xi)
    ab = bracket(g, Tensor.basis_vector(g.dim, a), Tensor.basis_vector(g.dim, b))
    B = g.killing_matrix
    rhs = sum(
        (u * v * B[p][q] for (p,), u in lx.entries.items() for (q,), v in ab.entries.items()),
        Fraction(0),
    ) / 2
    return lhs, rhs


# name used by the published interface
lemma_641_identity = loop_pair_identity


# --------------------------------------------------------------------------
# JSON


def algebra_from_json(obj) -> LieAlgebraData:
    if isinstance(obj, str):
        obj = json.loads(obj)
    d = int(obj["dim"])
    labels = obj.get("basis") or [f"e{i + 1}" for i in range(d)]
    sc: dict = {}
    for i, j, k, c in obj.get("brackets", []):
        i, j, k = int(i) - 1, int(j) - 1, int(k) - 1
        c = parse_rational(c)
        if sc.get((i, j, k), c) != c or sc.get((j, i, k), -c) != -c:
            raise InvalidAlgebra(f"inconsistent bracket entries at ({i + 1},{j + 1},{k + 1})")
        sc[(i, j, k)] = c
        sc[(j, i, k)] = -c
    return LieAlgebraData(d, tuple(labels), sc)


def algebra_to_json(g: LieAlgebraData) -> dict:
    rows = [
        [i + 1, j + 1, k + 1, format_rational(v)]
        for (i, j, k), v in sorted(g.structure_constants.items())
        if i < j
    ]
    return {"dim": g.dim, "basis": list(g.basis_labels), "brackets": rows}


def tensor_from_json(obj, dim: Optional[int] = None) -> Tensor:
    if isinstance(obj, str):
        obj = json.loads(obj)
    d = int(obj["dim"])
    if dim is not None and d != dim:
        raise ValueError("tensor dimension does not match the algebra")
    ent = {}
    for i, j, c in obj.get("entries", []):
        ent[(int(i) - 1, int(j) - 1)] = parse_rational(c)
    return Tensor(2, d, ent)
