from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfarc.jet import (STAR, SpElement, T_map, Tableau, in_sp, invariant_dimension, jet_piece,
                       leading_monomial, qh, qh_generator, sp_action, sp_basis, symplectic_form,
                       tableau_of, verify_injectivity, verify_invariance, verify_leading, word)
from pfarc.order import ESeq, JSeq
from pfarc.pfaffian import pfaffian_derivative
from pfarc.ring import AGen, Poly, avar, dbar, mono_from_factors, xvar
from pfarc.standard import StandardProduct, canonical_lift, enumerate_standard
from strategies import a_polys, x_polys


def a(i, l, k=0, p=2, h=2):
    return avar(i, l, k, p, h)


def test_qh_examples():
    assert qh(2, 2, xvar(1, 2, 0, 2)) == a(1, 1) * a(2, 2) - a(2, 1) * a(1, 2)
    assert qh(2, 2, xvar(1, 2, 1, 2)) == (a(1, 1, 1) * a(2, 2) + a(1, 1) * a(2, 2, 1)
                                          - a(2, 1, 1) * a(1, 2) - a(2, 1) * a(1, 2, 1))
    from pfarc.pfaffian import pfaffian
    assert qh(4, 2, pfaffian((1, 2, 3, 4), 4)) == 0
    assert qh(3, 2, Poly.const(5, "X", 3)) == Poly.const(5, "A", 3, 2)
    with pytest.raises(ValueError):
        qh(2, 3, xvar(1, 2, 0, 2))


def test_qh_is_skew_in_its_rows():
    assert qh(3, 4, xvar(3, 1, 2, 3)) == -qh_generator(1, 3, 2, 3, 4)


@pytest.mark.parametrize("h", [2, 4])
def test_qh_kills_minors_above_h(h):
    p = h + 3
    for rows in list(combinations(range(1, p + 1), h + 2))[:3]:
        for n in range(4):
            assert qh(p, h, pfaffian_derivative(rows, n, p)) == 0


@settings(max_examples=40, deadline=None)
@given(x_polys(p=3, max_terms=3, max_deg=2), st.integers(0, 3))
def test_qh_commutes_with_dbar(f, l):
    assert qh(3, 2, dbar(l, f)) == dbar(l, qh(3, 2, f))


@settings(max_examples=40, deadline=None)
@given(x_polys(p=3, max_terms=3, max_deg=2), x_polys(p=3, max_terms=3, max_deg=2))
def test_qh_is_a_ring_map(f, g):
    assert qh(3, 4, f * g) == qh(3, 4, f) * qh(3, 4, g)
    assert qh(3, 4, f + g) == qh(3, 4, f) + qh(3, 4, g)


def _mono(*gens):
    return mono_from_factors(gens)


def test_tableau_examples():
    t = tableau_of(_mono(AGen(0, 1, 1), AGen(0, 2, 2)), 2)
    assert t.rows == ((AGen(0, 2, 2), AGen(0, 1, 1)),)
    t = tableau_of(_mono(AGen(0, 1, 1), AGen(1, 1, 1)), 2)
    assert t.rows == ((STAR, AGen(0, 1, 1)), (STAR, AGen(1, 1, 1)))
    assert str(t) == "[*, a0_11] / [*, a1_11]"
    assert tableau_of((), 2).rows == ()
    with pytest.raises(ValueError):
        tableau_of(_mono(AGen(0, 1, 3)), 2)


@pytest.mark.parametrize("p,h,d,w", [(2, 2, 2, 1), (2, 4, 3, 1), (3, 2, 3, 2)])
def test_tableau_round_trip(p, h, d, w):
    for m in jet_piece(p, h, d, w):
        t = tableau_of(m, h)
        assert t.monomial() == m
        for row in t.rows:
            assert any(y is not STAR for y in row)
        for col in range(h):
            entries = [r[col] for r in t.rows]
            keys = [(1,) if y is STAR else (0,) + tuple(y) for y in entries]
            assert keys == sorted(keys)


def test_word_order_star_is_largest():
    with_star = _mono(AGen(0, 1, 1), AGen(1, 1, 1))
    plain = _mono(AGen(0, 1, 1), AGen(0, 1, 2))
    assert word(with_star, 2) > word(plain, 2)
    assert word((), 2) < word(plain, 2)


def test_leading_monomial_examples():
    f = qh(2, 2, xvar(1, 2, 0, 2))
    assert leading_monomial(f, 2) == (_mono(AGen(0, 1, 1), AGen(0, 2, 2)), 1)
    g = qh(2, 2, dbar(1, xvar(1, 2, 0, 2)))
    assert leading_monomial(g, 2) == (_mono(AGen(0, 1, 1), AGen(1, 2, 2)), 1)
    single = a(1, 2, 1).scale(3)
    assert leading_monomial(single, 2) == (_mono(AGen(1, 1, 2)), 3)
    with pytest.raises(ValueError):
        leading_monomial(Poly("A", 2, 2), 2)


def test_tableau_of_standard_lifts():
    E = ESeq.parse
    t = T_map([E("|(2,0),(1,0)|")], 2)
    assert t.rows == ((AGen(0, 2, 2), AGen(0, 1, 1)),)
    t = T_map([E("|(2,0),(1,0)|"), E("|(2,1),(1,0)|")], 2)
    assert t.rows == ((AGen(0, 2, 2), AGen(0, 1, 1)), (AGen(1, 2, 2), AGen(0, 1, 1)))
    assert T_map([], 2).rows == ()
    with pytest.raises(ValueError):
        T_map([E("|(1,0),(2,0)|")], 2)


def test_verify_leading_examples():
    J = JSeq.parse
    for js in ([J("|2,1|")], [J("|2,1|"), J("d^1|2,1|")]):
        sp = StandardProduct(tuple(js), tuple(canonical_lift(js)))
        ok, detail = verify_leading(sp, 2, 2)
        assert ok, detail
    for d in range(3):
        for w in range(3):
            for sp in enumerate_standard(3, 2, d, w):
                assert verify_leading(sp, 3, 2)[0]


def test_symplectic_basis():
    for h in (2, 4, 6):
        basis = sp_basis(h)
        assert len(basis) == h * (h + 1) // 2
        assert all(in_sp(g, h) for g in basis)
    assert symplectic_form(2) == [[0, 1], [-1, 0]]
    with pytest.raises(ValueError):
        SpElement(((1, 0), (0, 1)), 0)
    with pytest.raises(ValueError):
        SpElement(((1, 0), (0, -1)), -1)


def test_sp_action_examples():
    g = SpElement(((1, 0), (0, -1)), 0)
    assert sp_action(g, Poly.const(3, "A", 2, 2)) == 0
    assert sp_action(g, qh_generator(1, 2, 0, 2, 2)) == 0
    deep = SpElement(sp_basis(2)[0], 3)
    assert sp_action(deep, qh_generator(1, 2, 2, 2, 2)) == 0
    # a diagonal element scales the two columns oppositely
    assert sp_action(g, a(1, 1)) == a(1, 1)
    assert sp_action(g, a(1, 2)) == -a(1, 2)
    half = SpElement(((Fraction(1, 2), 0), (0, Fraction(-1, 2))), 1)
    assert sp_action(half, a(1, 1, 1) * a(2, 1)) == (a(1, 1) * a(2, 1)).scale(Fraction(1, 2))


@settings(max_examples=60, deadline=None)
@given(a_polys(), st.integers(0, 2), st.integers(0, 2))
def test_sp_action_respects_grading(f, bi, m):
    out = sp_action(SpElement(sp_basis(2)[bi], m), f)
    for d, w in out.degrees():
        assert (d, w + m) in f.degrees()


@settings(max_examples=60, deadline=None)
@given(a_polys(max_terms=2, max_deg=2), a_polys(max_terms=2, max_deg=2), st.integers(0, 2))
def test_sp_action_is_a_derivation(f, g, m):
    el = SpElement(sp_basis(2)[1], m)
    assert sp_action(el, f * g) == sp_action(el, f) * g + f * sp_action(el, g)


def test_invariance_examples():
    r = verify_invariance(2, 2, 2, 2)
    assert r["verdict"] == "pass" and r["checked"] == 1 * 3 * 3 * 3
    assert verify_invariance(3, 4, 1, 1)["verdict"] == "pass"
    r = verify_invariance(1, 2, 2, 2)
    assert r["verdict"] == "pass" and r["checked"] == 0


def test_non_invariant_is_detected():
    el = SpElement(sp_basis(2)[0], 0)
    assert sp_action(el, a(1, 2) * a(2, 2)) == a(1, 1) * a(2, 2) + a(1, 2) * a(2, 1)


def test_invariant_dimension_examples():
    assert invariant_dimension(2, 2, 2, 0) == (1, 1)
    assert invariant_dimension(2, 2, 2, 1) == (1, 1)
    assert invariant_dimension(2, 2, 1, 0) == (0, 0)


def test_injectivity_examples():
    r = verify_injectivity(4, 2, 2, 0)
    assert r["verdict"] == "pass" and r["n_standard"] == 20 == r["rank"]
    for d in range(4):
        for w in range(4):
            assert verify_injectivity(2, 2, d, w)["verdict"] == "pass"
    assert verify_injectivity(3, 2, 0, 1)["n_standard"] == 0
