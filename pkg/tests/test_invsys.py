import pytest
from hypothesis import given, settings, strategies as st

from tatelab.algebra import socle
from tatelab.invsys import (DPElement, annihilator_dim, apolar_form, apolar_hilbert_function, contract,
                            from_ordinary, verify_apolarity)
from tatelab.polyring import MarkedBasis, Poly, parse_poly, preset_presentation
from tatelab.scalars import ConfigError, FieldConfig

NAMES = ("T", "U", "V", "X", "Y", "Z")


@pytest.fixture(scope="module")
def F(cfg):
    return apolar_form(cfg)


@pytest.fixture(scope="module")
def I(cfg):
    return preset_presentation("codim6-gorenstein", cfg).basis


def P(text, cfg):
    return parse_poly(text, NAMES, cfg)


def test_divided_power_conversion(cfg):
    f = parse_poly("tY^2 + tX*tT*tV", ("tT", "tU", "tV", "tX", "tY", "tZ"), cfg)
    e = from_ordinary(f)
    assert e.terms == {(0, 0, 0, 0, 2, 0): 2, (1, 0, 1, 1, 0, 0): 1}


def test_contraction_examples(cfg, F):
    assert contract(P("Z^2", cfg), F).is_zero()
    assert contract(P("U*Z - T*X - alpha*U*V", cfg), F).is_zero()
    # the term 6*tX*tT*tV is 6 T^[1]X^[1]V^[1]; nothing else in F is divisible by TVX
    assert contract(P("T*V*X", cfg), F) == DPElement({(0,) * 6: cfg.field(6)}, cfg.field)


def test_every_generator_annihilates(I, F):
    assert all(contract(g, F).is_zero() for g in I.polys)


def test_annihilator_dimensions(F):
    assert annihilator_dim(F, 1)[0] == 0
    assert annihilator_dim(F, 2)[0] == 15
    assert annihilator_dim(F, 3)[0] == 55
    assert annihilator_dim(F, 4)[0] == 126
    assert apolar_hilbert_function(F, 4) == [1, 6, 6, 1, 0]


def test_certificate(I, F, R):
    ok, ev = verify_apolarity(I, F)
    assert ok and ev.hilbert_apolar == [1, 6, 6, 1, 0] and ev.hilbert_quotient == ev.hilbert_apolar
    # the algebra's own socle computation agrees: tvx is the nonzero socle element
    soc = socle(R)
    assert len(soc) == 1 and soc[0][R.dim - 1] != 0


def test_extra_generator_breaks_certificate(I, F, cfg):
    tvx = P("T*V*X", cfg)
    J = MarkedBasis(I.polys + [tvx], I.marks + [(1, 0, 1, 1, 0, 0)], I.order, 6)
    ok, ev = verify_apolarity(J, F)
    assert not ok and ev.nonannihilating == [15]


def test_single_cube_is_not_the_right_form(I, cfg):
    G = apolar_form(cfg, "tX^3")
    ok, ev = verify_apolarity(I, G)
    assert not ok and ev.hilbert_apolar == [1, 1, 1, 1, 0]


def test_characteristic_rules():
    with pytest.raises(ConfigError):
        apolar_form(FieldConfig(3))
    F7 = apolar_form(FieldConfig(32003))
    I7 = preset_presentation("codim6-gorenstein", FieldConfig(32003)).basis
    assert verify_apolarity(I7, F7)[0]


def test_inhomogeneous_form_rejected(cfg):
    with pytest.raises(ValueError):
        apolar_form(cfg, "tX^3 + tY")


small = st.dictionaries(st.tuples(*[st.integers(0, 1)] * 6), st.integers(-3, 3), max_size=3)


@given(small, small)
@settings(max_examples=50, deadline=None)
def test_contraction_is_a_module_action(g, h):
    cfg = FieldConfig()
    Fm = apolar_form(cfg)
    fld = cfg.field
    G = Poly({m: fld(c) for m, c in g.items()}, 6, fld)
    H = Poly({m: fld(c) for m, c in h.items()}, 6, fld)
    assert contract(G * H, Fm) == contract(G, contract(H, Fm))
    for m in G.terms:
        r = contract(Poly.monomial(m, 6, fld), Fm)
        if not r.is_zero():
            assert r.degree() == Fm.degree() - sum(m)
