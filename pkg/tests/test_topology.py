import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import h7_oracle
from cdgakit.cohomology import cohomology, induced_map
from cdgakit.corpus import H7_QUARTER_TURN, registry
from cdgakit.errors import TopologyInputError
from cdgakit.exterior import parse_form
from cdgakit.topology import (
    AutomorphismAction,
    betti_vector,
    blowup_betti,
    euler_characteristic,
    kunneth_betti,
    mapping_torus_betti,
)

CIRCLE = (1, 1)
KT = (1, 3, 4, 3, 1)
G6_78 = (1, 1, 1, 2, 1, 1, 1)


def cpn(n):
    return tuple(1 - k % 2 for k in range(2 * n + 1))


# ------------------------------------------------------------ blow-ups


def test_blowup_cp7_along_g6_78():
    assert blowup_betti(cpn(7), G6_78, 8)[3] == 1


def test_blowup_cp5_along_kt():
    b = blowup_betti(cpn(5), KT, 6)
    assert b[3] == 3
    assert b == (1, 0, 2, 3, 6, 6, 6, 3, 2, 0, 1)


def test_blowup_codim_two_is_identity():
    assert blowup_betti(cpn(3), cpn(2), 2) == cpn(3)


@pytest.mark.parametrize("codim", [0, 3, -2])
def test_blowup_bad_codim(codim):
    with pytest.raises(TopologyInputError):
        blowup_betti(cpn(3), cpn(2), codim)


def test_blowup_dimension_mismatch():
    with pytest.raises(TopologyInputError):
        blowup_betti(cpn(5), KT, 4)


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_blowup_keeps_b0_b1_and_duality(data):
    N = data.draw(st.integers(min_value=2, max_value=7))
    k = data.draw(st.integers(min_value=1, max_value=N))
    half_y = N - k
    y = data.draw(st.lists(st.integers(min_value=0, max_value=4), min_size=half_y + 1, max_size=half_y + 1))
    y = [1] + y[1:]
    bY = tuple(y + y[:-1][::-1])
    out = blowup_betti(cpn(N), bY, 2 * k)
    assert out[0] == 1 and out[1] == 0
    assert out == out[::-1]


# ------------------------------------------------------------ Kunneth


def test_kunneth_examples():
    assert kunneth_betti((1, 2, 2, 1), CIRCLE) == KT
    assert kunneth_betti(G6_78, (1,)) == G6_78
    assert kunneth_betti(kunneth_betti(KT, KT), CIRCLE)[1] == 7


def test_betti_vector_validation():
    with pytest.raises(TopologyInputError):
        betti_vector([])
    with pytest.raises(TopologyInputError):
        betti_vector([1, -1])


# ------------------------------------------------------------ mapping tori


def test_mapping_torus_size_mismatch():
    with pytest.raises(TopologyInputError):
        mapping_torus_betti((1, 2), {0: [[1]], 1: [[1]]})
    with pytest.raises(TopologyInputError):
        mapping_torus_betti((1, 2), {0: [[1]]})


def test_mapping_torus_swap():
    # swapping the two classes of H^1 fixes a line
    assert mapping_torus_betti((1, 2, 1), {0: [[1]], 1: [[0, 1], [1, 0]], 2: [[-1]]}) == (1, 2, 1, 0)


# ------------------------------------------------------------ h7 quarter turn


def h7_pipeline():
    r = cohomology(registry("h7").cdga())
    m = induced_map(r, {i: parse_form(t, 6) for i, t in H7_QUARTER_TURN.items()})
    return r.betti, mapping_torus_betti(r.betti, AutomorphismAction(m.matrices))


def test_h7_pipeline_matches_sympy_oracle():
    betti, fixed = h7_oracle()
    b, out = h7_pipeline()
    assert b == betti == (1, 3, 8, 12, 8, 3, 1)
    # b_k(M) = fixed_k + cofixed_(k-1), and cofixed = fixed for a square matrix
    assert out == tuple(fixed[k] + (fixed[k - 1] if k else 0) for k in range(7)) + (fixed[6],)


def test_h7_mapping_torus_low_degrees():
    b, out = h7_pipeline()
    assert out[1] == 2
    assert out == (1, 2, 3, 6, 6, 3, 2, 1)
    assert euler_characteristic(out) == 0
