from math import factorial

import pytest

from rootdual import build
from rootdual.weyl import (WeylElement, longest_element, minus_one_in_W, minus_w0_diagram,
                           reflection_matrix)
from rootdual.intlin import identity, matmul

WEYL_ORDER = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "B3": 48, "C3": 48, "G2": 12, "D4": 192, "A4": 120}


def enumerate_group(brd):
    """Closure of the simple reflections as integer matrices (oracle)."""
    gens = [tuple(map(tuple, reflection_matrix(brd, i))) for i in brd.simples]
    I = tuple(map(tuple, identity(brd.rank)))
    seen = {I}
    frontier = [I]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(map(tuple, matmul(g, s)))
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


@pytest.mark.parametrize("t", sorted(WEYL_ORDER))
def test_weyl_order_by_enumeration(t):
    brd = build(t)
    W = enumerate_group(brd)
    assert len(W) == WEYL_ORDER[t]
    minus = tuple(tuple(-int(i == j) for j in range(brd.rank)) for i in range(brd.rank))
    assert (minus in W) == minus_one_in_W(brd)


@pytest.mark.parametrize("t", sorted(WEYL_ORDER))
def test_longest_element_is_unique_max_length(t):
    brd = build(t)
    w0 = longest_element(brd)
    assert w0.length() == brd.npos
    assert len(w0.reduced_word()) == brd.npos
    lengths = [WeylElement(brd, M, ()).length() for M in enumerate_group(brd)]
    assert lengths.count(brd.npos) == 1
    assert all(not brd.is_positive(w0.act_root(k)) for k in range(brd.npos))


def test_levi_longest_element():
    brd = build("A3")
    wM = longest_element(brd, [0, 2])
    assert wM.length() == 2
    assert sorted(wM.reduced_word()) == [0, 2]
    assert longest_element(brd, []).length() == 0


def test_minus_w0_diagram():
    assert minus_w0_diagram(build("A4")) == (3, 2, 1, 0)
    assert minus_w0_diagram(build("D5")) == (0, 1, 2, 4, 3)
    assert minus_w0_diagram(build("D4")) == (0, 1, 2, 3)
    assert minus_w0_diagram(build("E6"))[1] == 1


def test_reduced_word_roundtrip():
    brd = build("B3")
    w = WeylElement.from_word(brd, [0, 1, 2, 1, 0, 2])
    w2 = WeylElement.from_word(brd, w.reduced_word())
    assert w2.matrix == w.matrix
    assert len(w.reduced_word()) == w.length()


def test_coweight_action_preserves_pairing():
    brd = build("G2")
    w = WeylElement.from_word(brd, [0, 1, 0])
    x, y = (3, -1), (2, 5)
    wx = w.act(x)
    wy = w.coweight_action(y)
    assert sum(a * b for a, b in zip(wx, wy)) == sum(a * b for a, b in zip(x, y))


def test_symmetric_group_order_formula():
    for n in range(1, 5):
        assert len(enumerate_group(build(f"A{n}"))) == factorial(n + 1)
