import pytest

from cdgakit.cdga import (
    CDGA,
    AlgebraMap,
    LieAlgebra,
    ce_differential,
    check_d_squared,
    circle_product,
    differential,
    direct_sum,
    is_derivation,
    is_nilpotent,
    is_unimodular,
    lower_central_series,
    semidirect_extend,
)
from cdgakit.corpus import H7_DERIVATION, registry
from cdgakit.errors import JacobiError, NotADerivationError
from cdgakit.exterior import Form, parse_form


def model(n, **d):
    return CDGA(n, {int(k[1:]): parse_form(v, n) for k, v in d.items()})


# ------------------------------------------------------------ CE construction


def test_ce_five_dimensional_example():
    g = LieAlgebra(5, {(1, 2): {4: -1}, (1, 5): {3: -1}})
    c = ce_differential(g)
    assert c.differentials[2] == parse_form("e15", 5)
    assert c.differentials[3] == parse_form("e12", 5)
    assert all(not c.differentials[i] for i in (0, 1, 4))


def test_ce_abelian():
    assert all(not f for f in ce_differential(LieAlgebra(4)).differentials)


def test_ce_h7():
    g = LieAlgebra(6, {(1, 2): {4: -1}, (1, 3): {5: -1}, (2, 3): {6: -1}})
    c = ce_differential(g)
    assert [str(f) for f in c.differentials[3:]] == ["e12", "e13", "e23"]


def test_ce_rejects_jacobi_failure_with_triple():
    # [e1,e2]=e3, [e3,e1]=e1... fails Jacobi on (e1,e2,e3)
    g = LieAlgebra(3, {(1, 2): {3: 1}, (1, 3): {2: 1}, (2, 3): {2: 1}})
    with pytest.raises(JacobiError) as err:
        ce_differential(g)
    assert err.value.triple == (1, 2, 3)
    assert err.value.exit_code == 3


# ------------------------------------------------------------ differential


def test_differential_heisenberg_e13():
    c = model(3, d3="e12")
    assert differential(c, parse_form("e13", 3)).is_zero()


def test_differential_nil5_e234():
    c = registry("nil5_cosymp").cdga()
    assert differential(c, parse_form("e234", 5)) == parse_form("-e1245", 5)


def test_differential_of_one():
    c = registry("kt").cdga()
    assert differential(c, Form.one(4)).is_zero()


# ------------------------------------------------------------ d^2


def test_d_squared_g6_78_and_heisenberg():
    assert check_d_squared(registry("g6_78").cdga()).ok
    assert check_d_squared(model(3, d3="e12")).ok


def test_d_squared_failure_witness():
    chk = check_d_squared(model(4, d3="e12", d4="e34"))
    assert not chk.ok
    assert chk.generator == 4
    # d(e34) = d(e3) e4 - e3 d(e4) = e124 - e3 e34
    assert chk.witness == parse_form("e124", 4)


def test_every_registry_entry_has_d_squared_zero():
    from cdgakit.corpus import registry_names

    for name in registry_names():
        assert check_d_squared(registry(name).cdga()).ok, name


# ------------------------------------------------------------ extensions


def test_circle_product_of_heisenberg_is_kt():
    c = circle_product(model(3, d3="e12"))
    assert c == registry("kt").cdga()


def test_circle_product_of_abelian():
    c = circle_product(CDGA(3))
    assert c.n == 4 and c.is_abelian()


def test_circle_product_twice_keeps_relations():
    g = registry("g6_78").cdga()
    c = circle_product(circle_product(g))
    assert c.n == 8
    assert c.differentials[:6] == tuple(Form(8, f.terms) for f in g.differentials)
    assert not c.differentials[6] and not c.differentials[7]


def test_semidirect_with_zero_is_circle_product():
    h = registry("h7").cdga()
    zero = [[0] * 6 for _ in range(6)]
    assert semidirect_extend(h, zero) == circle_product(h)


def test_semidirect_h7_rotation_passes_d_squared():
    c = semidirect_extend(registry("h7").cdga(), H7_DERIVATION)
    assert c.n == 7 and check_d_squared(c).ok
    assert not c.differentials[6]


def test_semidirect_plane_rotation():
    # D e1 = -e2, D e2 = e1
    D = [[0, 1], [-1, 0]]
    c = semidirect_extend(CDGA(2), D)
    assert c.differentials[0] == parse_form("e23", 3)
    assert c.differentials[1] == parse_form("-e13", 3)


def test_semidirect_rejects_non_derivation():
    h = registry("heisenberg").cdga()
    D = [[1, 0, 0], [0, 0, 0], [0, 0, 0]]  # scales e1 but not [e1,e2]
    with pytest.raises(NotADerivationError) as err:
        semidirect_extend(h, D)
    assert err.value.pair == (1, 2)
    assert is_derivation(h.lie_algebra(), [[1, 0, 0], [0, 0, 0], [0, 0, 1]]) is None


def test_direct_sum_of_tori_is_torus():
    assert direct_sum(CDGA(2), CDGA(3)) == CDGA(5)


def test_direct_sum_reindexes():
    c = direct_sum(model(3, d3="e12"), model(3, d3="e12"))
    assert c.differentials[5] == parse_form("e45", 6)


# ------------------------------------------------------------ structure checks


@pytest.mark.parametrize(
    "name,nil",
    [("heisenberg", True), ("kt", True), ("e4", True), ("nil5_cosymp", True), ("h7", True),
     ("g6_78", False), ("solv5", False), ("g7", False)],
)
def test_nilpotency(name, nil):
    assert is_nilpotent(registry(name).cdga()) is nil


def test_lower_central_series_of_e4():
    assert lower_central_series(registry("e4").cdga()) == [4, 2, 1, 0]


@pytest.mark.parametrize("name", ["g6_78", "solv5", "g7", "h7", "kt"])
def test_corpus_entries_are_unimodular(name):
    assert is_unimodular(registry(name).cdga())


def test_non_unimodular_detected():
    assert not is_unimodular(model(2, d2="e12"))


def test_algebra_map_commutation():
    h = registry("h7").cdga()
    rot = AlgebraMap(6, {1: parse_form("-e2", 6), 2: parse_form("e1", 6), 5: parse_form("-e6", 6), 6: parse_form("e5", 6)})
    assert rot.commutation_defect(h) is None
    bad = AlgebraMap(6, {1: parse_form("e2", 6)})
    assert bad.commutation_defect(h) is not None
