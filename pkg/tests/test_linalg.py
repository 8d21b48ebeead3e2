from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cdgakit.linalg import Echelon, integerize, kernel, nullspace, rank, rref, solve, span_contains

entries = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(min_value=1, max_value=max_rows))
    c = draw(st.integers(min_value=1, max_value=max_cols))
    return [[draw(entries) for _ in range(c)] for _ in range(r)]


def test_integerize_clears_denominators():
    w, s = integerize({0: Fraction(1, 2), 3: Fraction(-2, 3)})
    assert s == 6 and w == {0: 3, 3: -4}


def test_rref_small():
    m, piv = rref([[2, 4], [1, 3]])
    assert piv == [0, 1] and m == [[1, 0], [0, 1]]


def test_solve_inconsistent():
    assert solve([[1, 1], [2, 2]], [1, 3]) is None


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_matches_sympy(a):
    assert rank(a) == sympy.Matrix(a).rank()


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_nullspace_is_kernel_of_right_dimension(a):
    ns = nullspace(a)
    assert len(ns) == len(a[0]) - sympy.Matrix(a).rank()
    for x in ns:
        assert all(sum(Fraction(r[j]) * x[j] for j in range(len(x))) == 0 for r in a)


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_sparse_kernel_agrees_with_dense(a):
    # columns of a as sparse vectors
    cols = [{i: a[i][j] for i in range(len(a)) if a[i][j]} for j in range(len(a[0]))]
    ker = kernel(cols)
    assert len(ker) == len(nullspace(a))
    for x in ker:
        for i in range(len(a)):
            assert sum(a[i][j] * x.get(j, 0) for j in range(len(a[0]))) == 0


@settings(max_examples=200, deadline=None)
@given(matrices(), st.lists(entries, min_size=6, max_size=6))
def test_echelon_membership(a, coeffs):
    rows = [{j: x for j, x in enumerate(r) if x} for r in a]
    combo = {}
    for r, c in zip(rows, coeffs):
        for j, x in r.items():
            combo[j] = combo.get(j, 0) + c * x
    assert span_contains(rows, {j: x for j, x in combo.items() if x})


def test_tags_track_preimages():
    e = Echelon()
    e.insert({0: 1, 1: 1}, {0: 1})
    e.insert({1: 2}, {1: 1})
    v, scale, t = e.reduce({0: 3, 1: 5}, {})
    assert v == {}
    # scale * target = sum of rows with coefficients -t
    assert scale * 3 == -t.get(0, 0) * 1
