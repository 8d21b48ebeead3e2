import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from _oracles import oracle_massey
from _support import closed_forms, two_step_nilpotent
from cdgakit.cdga import CDGA, is_nilpotent
from cdgakit.cohomology import cohomology
from cdgakit.corpus import registry
from cdgakit.errors import NotNilpotentError, PreconditionError
from cdgakit.exterior import parse_form
from cdgakit.lefschetz import symplectic_lefschetz
from cdgakit.massey import formality, hasegawa_verdict, massey_scan, triple_massey
from cdgakit.structures import validate_symplectic

HEIS = {3: {(1, 2): 1}}
E4 = {3: {(1, 2): 1}, 4: {(1, 3): 1}}
R = sympy.Rational


def test_oracle_heisenberg():
    e1, e2 = {(1,): R(1)}, {(2,): R(1)}
    assert oracle_massey(HEIS, 3, e1, e1, e2, 1, 1, 1, {(1, 3): R(1)}) == (True, True, True)


def test_oracle_e4():
    e1, e2 = {(1,): R(1)}, {(2,): R(1)}
    assert oracle_massey(E4, 4, e2, e2, e1, 1, 1, 1, {(2, 3): R(-1)}) == (True, True, True)


def test_oracle_torus_vanishes():
    e1 = {(1,): R(1)}
    nonvan, _, _ = oracle_massey({}, 3, e1, e1, e1, 1, 1, 1, {})
    assert not nonvan


# ------------------------------------------------------------ engine


def classes(r, *texts):
    return [r.reduce(parse_form(t, r.n)) for t in texts]


def test_heisenberg_product():
    r = cohomology(registry("heisenberg").cdga())
    m = triple_massey(r, *classes(r, "e1", "e1", "e2"))
    assert m.nonvanishing and m.indeterminacy_dim == 0
    assert m.value == r.reduce(parse_form("e13", 3))


def test_e4_product():
    r = cohomology(registry("e4").cdga())
    m = triple_massey(r, *classes(r, "e2", "e2", "e1"))
    assert m.nonvanishing and m.indeterminacy_dim == 0
    assert m.value == r.reduce(parse_form("-e23", 4))


def test_torus_products_vanish():
    r = cohomology(CDGA(3))
    m = triple_massey(r, *classes(r, "e1", "e1", "e1"))
    assert not m.nonvanishing
    assert massey_scan(r) == []


def test_precondition_failure():
    r = cohomology(CDGA(3))
    with pytest.raises(PreconditionError):
        triple_massey(r, *classes(r, "e1", "e2", "e3"))


def test_supplied_sigma_checked():
    r = cohomology(registry("heisenberg").cdga())
    with pytest.raises(PreconditionError):
        triple_massey(r, *classes(r, "e1", "e1", "e2"), sigma=parse_form("e3", 3))


def test_scans():
    assert massey_scan(cohomology(registry("kt").cdga()))
    assert massey_scan(cohomology(registry("g6_78").cdga())) == []


def test_scan_order_and_limit():
    r = cohomology(registry("kt").cdga())
    full = massey_scan(r)
    assert massey_scan(r) == full
    assert massey_scan(r, limit=3) == full[:3]
    assert massey_scan(r, max_degree=1) == []


def test_scan_line_format():
    r = cohomology(registry("heisenberg").cdga())
    assert massey_scan(r)[0].line(r) == "<H1.0,H1.0,H1.1> -> [e13], indeterminacy dim 0, NONVANISHING"


@pytest.mark.parametrize("name,verdict", [("torus_4", "formal"), ("heisenberg", "non-formal"), ("e4", "non-formal")])
def test_hasegawa(name, verdict):
    assert hasegawa_verdict(registry(name).cdga()) == verdict


def test_hasegawa_needs_nilpotent():
    with pytest.raises(NotNilpotentError):
        hasegawa_verdict(registry("g6_78").cdga())


@pytest.mark.parametrize(
    "name,verdict",
    [("torus_5", "formal"), ("kt", "non-formal"), ("g6_78", "undetermined"), ("solv5", "undetermined")],
)
def test_formality_three_valued(name, verdict):
    c = registry(name).cdga()
    assert formality(c, cohomology(c)).verdict == verdict


def test_empty_scan_does_not_certify_formality():
    # solvable and free of triple obstructions, still not declared formal
    c = registry("solv5").cdga()
    assert massey_scan(cohomology(c)) == []
    assert formality(c, cohomology(c)).verdict != "formal"


# ------------------------------------------------------------ symplectic nilmanifolds


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_nilpotent_lefschetz_type_implies_formal(data):
    c = data.draw(two_step_nilpotent(6))
    assume(c.n % 2 == 0)
    w = data.draw(closed_forms(c, 2))
    try:
        s = validate_symplectic(c, w)
    except Exception:
        assume(False)
    assert is_nilpotent(c)
    if symplectic_lefschetz(cohomology(c), s).lefschetz_type:
        assert hasegawa_verdict(c) == "formal"
