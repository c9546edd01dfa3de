"""Exact rational scalars and sparse linear algebra.

Scalars are :class:`fractions.Fraction`.  Vectors are sparse maps from
arbitrary hashable keys to nonzero rationals; matrices are sequences of such
rows over an explicit, ordered column universe.  Pivots are chosen by column
position in that universe, which makes every echelon form deterministic.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Iterator, Mapping, Sequence
from fractions import Fraction
from typing import Optional

Rational = Fraction

__all__ = [
    "Rational",
    "QVector",
    "QMatrix",
    "parse_rational",
    "format_rational",
    "rref",
    "kernel_basis",
    "in_span",
]


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int.  Accepts the unicode minus sign."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot read a rational from {text!r}")
    s = text.strip().replace("−", "-")
    if not s:
        raise ValueError("empty rational")
    if "." in s or "e" in s.lower():
        raise ValueError(f"rationals must be exact, got {text!r}")
    return Fraction(s)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class QVector(Mapping):
    """Immutable sparse vector; absent keys are zero, zeros are never stored."""

    __slots__ = ("_d", "_hash")

    def __init__(self, entries: Mapping | Iterable = ()):
        d = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for k, v in items:
            v = Fraction(v)
            if v:
                d[k] = d.get(k, 0) + v
                if not d[k]:
                    del d[k]
        self._d = d
        self._hash = None

    @classmethod
    def _wrap(cls, d: dict) -> "QVector":
        # d must already be zero-free
        obj = cls.__new__(cls)
        obj._d = d
        obj._hash = None
        return obj

    def __getitem__(self, key):
        return self._d[key]

    def get(self, key, default=Fraction(0)):
        return self._d.get(key, default)

    def __iter__(self) -> Iterator:
        return iter(self._d)

    def __len__(self) -> int:
        return len(self._d)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, QVector):
            return self._d == other._d
        if isinstance(other, Mapping):
            return self._d == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __repr__(self):
        inner = ", ".join(f"{k!r}: {format_rational(v)}" for k, v in self._d.items())
        return f"QVector({{{inner}}})"

    def __bool__(self):
        return bool(self._d)

    def __add__(self, other: "QVector") -> "QVector":
        d = dict(self._d)
        for k, v in other.items():
            s = d.get(k, 0) + v
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        return QVector._wrap(d)

    def __neg__(self) -> "QVector":
        return QVector._wrap({k: -v for k, v in self._d.items()})

    def __sub__(self, other: "QVector") -> "QVector":
        return self + (-other)

    def scale(self, c) -> "QVector":
        c = Fraction(c)
        if not c:
            return QVector._wrap({})
        return QVector._wrap({k: c * v for k, v in self._d.items()})

    __rmul__ = scale

    def __mul__(self, c):
        return self.scale(c)

    def dot(self, other: Mapping) -> Fraction:
        if len(other) < len(self._d):
            return sum((v * self._d.get(k, 0) for k, v in other.items()), Fraction(0))
        return sum((v * other.get(k, 0) for k, v in self._d.items()), Fraction(0))


class QMatrix:
    """Rows of sparse vectors over an explicit ordered column universe."""

    __slots__ = ("rows", "columns", "_colpos")

    def __init__(self, rows: Iterable, columns: Sequence[Hashable]):
        self.columns = tuple(columns)
        self._colpos = {c: i for i, c in enumerate(self.columns)}
        if len(self._colpos) != len(self.columns):
            raise ValueError("duplicate column keys")
        built = []
        for r in rows:
            r = r if isinstance(r, QVector) else QVector(r)
            for k in r:
                if k not in self._colpos:
                    raise ValueError(f"row key {k!r} outside the column universe")
            built.append(r)
        self.rows = tuple(built)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "QMatrix":
        ncols = len(rows[0]) if rows else 0
        return cls(
            (QVector((j, x) for j, x in enumerate(row)) for row in rows), range(ncols)
        )

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)

    def to_dense(self) -> list[list[Fraction]]:
        return [[r.get(c) for c in self.columns] for r in self.rows]

    def apply(self, v: Mapping) -> QVector:
        """Matrix-vector product; ``v`` is keyed by this matrix's columns."""
        return QVector((i, r.dot(v)) for i, r in enumerate(self.rows))

    def __eq__(self, other):
        return (
            isinstance(other, QMatrix)
            and self.columns == other.columns
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"QMatrix(shape={self.shape})"


def _leading(row: dict, colpos: dict) -> Optional[Hashable]:
    return min(row, key=colpos.__getitem__) if row else None


def _eliminate(rows: list[dict], colpos: dict) -> list[tuple[Hashable, dict]]:
    """Gauss-Jordan elimination; returns (pivot column, row) sorted by pivot."""
    pivots: dict[Hashable, dict] = {}
    for row in rows:
        r = dict(row)
        # pivot rows are kept fully reduced, so one pass clears every pivot column
        for pc in [k for k in r if k in pivots]:
            c = r.get(pc)
            if not c:
                continue
            for k, v in pivots[pc].items():
                s = r.get(k, 0) - c * v
                if s:
                    r[k] = s
                else:
                    r.pop(k, None)
        if not r:
            continue
        lead = _leading(r, colpos)
        inv = 1 / r[lead]
        r = {k: v * inv for k, v in r.items()}
        # back-substitute into older pivot rows
        for other in pivots.values():
            c = other.get(lead)
            if c:
                for k, v in r.items():
                    s = other.get(k, 0) - c * v
                    if s:
                        other[k] = s
                    else:
                        other.pop(k, None)
        pivots[lead] = r
    return sorted(pivots.items(), key=lambda kv: colpos[kv[0]])


def rref(m: QMatrix) -> tuple[QMatrix, int]:
    """Reduced row-echelon form and rank.  Zero rows are kept at the bottom
    so the result has the same shape as ``m``."""
    piv = _eliminate([dict(r.items()) for r in m.rows], m._colpos)
    rows = [QVector._wrap(r) for _, r in piv]
    rank = len(rows)
    rows.extend(QVector._wrap({}) for _ in range(len(m.rows) - rank))
    return QMatrix(rows, m.columns), rank


def kernel_basis(m: QMatrix) -> list[QVector]:
    """Basis of ``{v : m v = 0}``, one vector per free column (in column order),
    each with a 1 at its free column."""
    piv = _eliminate([dict(r.items()) for r in m.rows], m._colpos)
    pivot_cols = {c for c, _ in piv}
    basis = []
    for free in m.columns:
        if free in pivot_cols:
            continue
        v = {free: Fraction(1)}
        for c, r in piv:
            x = r.get(free)
            if x:
                v[c] = -x
        basis.append(QVector._wrap(v))
    return basis


def in_span(v: Mapping, basis: Sequence[Mapping]) -> Optional[list[Fraction]]:
    """Coefficients ``c`` with ``sum(c[i] * basis[i]) == v``, or ``None``.

    When the basis is dependent the returned solution sets the coefficients
    of redundant vectors to zero.
    """
    keys: list = []
    seen = set()
    for b in list(basis) + [v]:
        for k in b:
            if k not in seen:
                seen.add(k)
                keys.append(k)
    # unknowns are tagged so that they never collide with vector keys
    n = len(basis)
    cols = [("x", i) for i in range(n)] + [("rhs",)]
    rows = []
    for k in keys:
        row = {("x", i): Fraction(b.get(k, 0)) for i, b in enumerate(basis)}
        row[("rhs",)] = Fraction(v.get(k, 0))
        rows.append({c: x for c, x in row.items() if x})
    colpos = {c: i for i, c in enumerate(cols)}
    piv = _eliminate(rows, colpos)
    coeffs = [Fraction(0)] * n
    for c, r in piv:
        if c == ("rhs",):
            return None
        coeffs[c[1]] = r.get(("rhs",), Fraction(0))
    return coeffs
