import itertools
from math import factorial

from hypothesis import given, settings
from hypothesis import strategies as st

from liegraph.lie import direct_sum, sl2
from liegraph.trees import comb_basis, comb_coords, comb_word, expand, leaves, reroot

G = direct_sum(sl2(), sl2())


def random_word(labels, draw):
    if len(labels) == 1:
        return labels[0]
    k = draw(st.integers(1, len(labels) - 1))
    return (random_word(labels[:k], draw), random_word(labels[k:], draw))


@st.composite
def grounded(draw, n_max=5):
    n = draw(st.integers(3, n_max))
    perm = draw(st.permutations(list(range(1, n + 1))))
    return random_word(list(perm[:-1]), draw), perm[-1]


def evaluate(word, ground, args):
    """B(word(args), args[ground]) with args indexed by label."""
    from liegraph.lie import Tensor, bracket

    def ev(w):
        if isinstance(w, int):
            return Tensor.basis_vector(G.dim, args[w])
        return bracket(G, ev(w[0]), ev(w[1]))

    x = ev(word)
    B = G.killing_matrix
    return sum(c * B[k][args[ground]] for (k,), c in x.entries.items())


@given(grounded(), st.data())
@settings(max_examples=60, deadline=None)
def test_reroot_preserves_the_form(gw, data):
    word, ground = gw
    labels = leaves(word) + [ground]
    x = data.draw(st.sampled_from(labels))
    s, w = reroot(word, ground, x)
    args = {l: data.draw(st.integers(0, G.dim - 1)) for l in labels}
    assert evaluate(word, ground, args) == s * evaluate(w, x, args)


@given(grounded(4))
@settings(max_examples=20, deadline=None)
def test_comb_coordinates_reproduce_the_form(gw):
    word, ground = gw
    labels = sorted(leaves(word) + [ground])
    coords = comb_coords(ground, word)
    top = labels[-1]
    for vals in itertools.product(range(G.dim), repeat=len(labels)):
        args = dict(zip(labels, vals))
        lhs = evaluate(word, ground, args)
        rhs = sum(c * evaluate(comb_word(k), top, args) for k, c in coords.items())
        assert lhs == rhs


def test_comb_basis_size():
    for n in range(3, 7):
        assert len(comb_basis(range(1, n + 1))) == factorial(n - 2)


def test_expand_antisymmetry():
    assert expand((1, 2)) == {(1, 2): 1, (2, 1): -1}
    assert comb_coords(3, (2, 1)) == {(1, 2): -1}
