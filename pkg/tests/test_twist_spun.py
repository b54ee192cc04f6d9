import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quandlebench.geometry import schlafli_quandle
from quandlebench.quandle import InnerPermutation, QuandleHom, check_axioms, find_isomorphism, is_connected
from quandlebench.twist_spun import (OutOfScope, build_Qm, certify_infinite, check_e0, collapse_relation_check,
                                     deck_group, hat_automorphism, orbit, projection_to_schlafli,
                                     twist_spun_presentation, verify_central_extension, verify_main1,
                                     verify_main2)


@pytest.fixture(scope="module")
def Q():
    return {m: build_Qm(m) for m in range(1, 6)}


@pytest.mark.parametrize("m,order", [(1, 1), (2, 3), (3, 8), (4, 24), (5, 120)])
def test_orders_and_relations(Q, m, order):
    q = Q[m]
    assert q.finite and q.quandle.order == order
    t = q.quandle
    a, c = q.a, q.c
    assert t.op(t.op(a, c), a) == c and t.power(c, a, m) == c
    assert check_axioms(t) and is_connected(t)


def test_q6_budget():
    q = build_Qm(6, budget=4000)
    assert not q.finite


def test_out_of_scope():
    with pytest.raises(OutOfScope):
        build_Qm(7)
    with pytest.raises(OutOfScope):
        certify_infinite(7)
    with pytest.raises(OutOfScope):
        verify_main1(2)


def test_presentation_text():
    assert str(twist_spun_presentation(3)) == "< a, c | a*c*a = c, c*a*a*a = c >"


@pytest.mark.parametrize("m,size", [(2, 1), (3, 2), (4, 4), (5, 10)])
def test_projection_fibers(Q, m, size):
    p = projection_to_schlafli(Q[m])
    assert p.is_homomorphism() and p.is_surjective()
    assert {len(f) for f in p.fibers().values()} == {size}


@pytest.mark.parametrize("m,length", [(2, 1), (3, 2), (4, 4), (5, 10)])
def test_hat_orbit(Q, m, length):
    q = Q[m]
    g = hat_automorphism(q.quandle, q.a, q.c)
    assert len(orbit(g, q.a)) == length
    assert g.replay(q.quandle) == g.perm


@pytest.mark.parametrize("m", [3, 4, 5])
def test_fiber_coherence(Q, m):
    q = Q[m]
    p = projection_to_schlafli(q)
    A = deck_group(q.quandle, p, q.a)
    g = hat_automorphism(q.quandle, q.a, q.c)
    fa = sorted(p.fibers()[p.mapping[q.a]])
    assert sorted(orbit(g, q.a)) == fa
    assert len(fa) == A.order


@settings(max_examples=40)
@given(st.sampled_from([3, 4, 5]), st.lists(st.tuples(st.integers(0, 119), st.sampled_from([1, -1])), max_size=6))
def test_hat_under_inner_conjugation(m, raw_word):
    q = build_Qm(m)
    t = q.quandle
    p = projection_to_schlafli(q)
    word = tuple((y % t.order, s) for y, s in raw_word)
    perm = tuple(InnerPermutation((), word).replay(t)) if word else tuple(range(t.order))
    g = InnerPermutation(perm, word)
    hat_g = hat_automorphism(t, q.a, q.c, g)
    hat = hat_automorphism(t, q.a, q.c)
    # hat_g = g o hat o g^-1
    ginv = g.inverse()
    assert hat_g.perm == tuple(g(hat(ginv(x))) for x in range(t.order))
    ga = g(q.a)
    assert sorted(orbit(hat_g, ga)) == sorted(p.fibers()[p.mapping[ga]])


@pytest.mark.parametrize("m,order", [(3, 2), (4, 4), (5, 10)])
def test_main2(m, order):
    rep = verify_main2(m)
    assert rep.e0.ok and rep.e1.ok and rep.e2.ok
    assert rep.deck_order == order and rep.cyclic and rep.verdict
    assert rep.to_dict()["deck_order"] == order


def test_main2_m2_negative():
    rep = verify_main2(2)
    assert rep.e0.ok and rep.e1.ok and rep.e2.ok
    assert rep.deck_order == 1 and not rep.verdict
    assert rep.reason == "not a central extension (trivial A)"


def test_identity_projection_trivial():
    X = schlafli_quandle(4)
    p = QuandleHom(X, X, tuple(range(X.order)))
    rep = verify_central_extension(X, X, p)
    assert rep.deck_order == 1 and not rep.verdict


def test_e0_detects_non_fiber_blind():
    # collapsing the 6-element octahedral quandle onto one point is not a central extension
    X = schlafli_quandle(4)
    from quandlebench.quandle import trivial_quandle
    p = QuandleHom(X, trivial_quandle(1), (0,) * X.order)
    assert not check_e0(X, p)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_main1(m):
    res = verify_main1(m)
    assert res.verified
    assert res.isomorphism.source.order == {3: 8, 4: 24, 5: 120}[m]


@pytest.mark.parametrize("m,order", [(2, 3), (3, 4), (4, 6), (5, 12)])
def test_collapse(m, order):
    rep = collapse_relation_check(m)
    assert rep.order == order and rep.isomorphic


def test_infinity_certificate():
    cert = certify_infinite(6)
    assert cert.valid and all(cert.relations_hold)
    assert str(cert.translation) == "2"
    assert [str(x) for x in cert.orbit_sample] == ["0", "2", "4", "6"]


def test_q2_matches_dihedral(Q):
    assert find_isomorphism(Q[2].quandle, schlafli_quandle(2)) is not None
