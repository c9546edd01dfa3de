from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liegraph.exactq import (
    QMatrix,
    QVector,
    format_rational,
    in_span,
    kernel_basis,
    parse_rational,
    rref,
)
from oracles import dense_rank

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def dense(rows):
    return QMatrix.from_dense([[F(x) for x in r] for r in rows])


def test_identity_rref():
    m = dense([[1, 0], [0, 1]])
    red, rank = rref(m)
    assert rank == 2 and red == m


def test_zero_rref():
    red, rank = rref(dense([[0] * 3] * 3))
    assert rank == 0
    assert red.to_dense() == [[0] * 3] * 3


def test_dependent_rows():
    assert rref(dense([[1, 2], [2, 4]]))[1] == 1


def test_kernel_examples():
    assert kernel_basis(dense([[1, 0], [0, 1]])) == []
    assert len(kernel_basis(dense([[0, 0, 0]]))) == 3
    (v,) = kernel_basis(dense([[1, 1]]))
    assert v[0] == -v[1] != 0


def test_in_span_examples():
    b = [QVector({"a": 1}), QVector({"b": 1})]
    assert in_span(QVector({"a": 1}), b) == [1, 0]
    assert in_span(QVector(), b) == [0, 0]
    assert in_span(QVector({"c": 1}), b) is None


def test_qvector_drops_zeros():
    v = QVector({"x": 0, "y": F(1, 2)}) + QVector({"y": F(-1, 2)})
    assert len(v) == 0 and not v


def test_reduction_clears_stale_pivot_columns():
    # a row reduced only at its leading entry would leave column 1 wrong here
    m = dense([[-1, 3, 0, 0, 0], [0, 0, 1, 0, 2], [2, 0, 1, 0, 0], [0, 0, 0, 3, -2]])
    (v,) = kernel_basis(m)
    assert m.apply(v) == QVector()
    assert v == QVector({0: 1, 1: F(1, 3), 2: -2, 3: F(2, 3), 4: 1})


def test_rational_text():
    assert parse_rational("−3/6") == F(-1, 2)
    assert format_rational(F(4, 2)) == "2"
    assert format_rational(F(-2, 6)) == "-1/3"
    with pytest.raises(ValueError):
        parse_rational("0.5")


matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=5)
)


@given(matrices)
@settings(max_examples=150, deadline=None)
def test_kernel_and_rank_agree_with_dense_oracle(rows):
    m = dense(rows)
    red, rank = rref(m)
    assert rank == dense_rank(rows)
    ker = kernel_basis(m)
    assert rank + len(ker) == len(rows[0])
    for v in ker:
        assert m.apply(v) == QVector()
    # rref is idempotent and row-equivalent
    assert rref(red)[0] == red
    assert dense_rank(rows + red.to_dense()) == rank


@given(matrices, st.lists(small, min_size=5, max_size=5))
@settings(max_examples=100, deadline=None)
def test_in_span_reconstructs(rows, coeffs):
    vecs = [QVector(enumerate(r)) for r in rows]
    target = QVector()
    for c, v in zip(coeffs, vecs):
        target = target + v.scale(c)
    c = in_span(target, vecs)
    assert c is not None
    back = QVector()
    for x, v in zip(c, vecs):
        back = back + v.scale(x)
    assert back == target


@given(st.fractions().filter(bool), st.fractions().filter(bool))
def test_rational_round_trip(a, b):
    assert (a / b) * (b / a) == 1
    assert parse_rational(format_rational(a)) == a
