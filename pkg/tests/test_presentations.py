import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quandlebench.presentations import (FreeQuandleElement, PresentationSyntaxError, UnknownGenerator,
                                        enumerate_presentation, free_generator, parse_presentation, parse_relation,
                                        parse_term, term_to_free)
from quandlebench.presentations.consequences import (MalformedMove, Verdict, consequence_step,
                                                     is_consequence_bounded, relation_is_consequence, relation_pairs)
from quandlebench.presentations.free import invert_word, random_free_element, reduce_word
from quandlebench.presentations.tietze import TietzeError, certify_consequence, tietze_apply
from quandlebench.quandle import (check_axioms, cyclic_group_table, dihedral_quandle, find_isomorphism,
                                  generalized_alexander, generated_closure, hom_from_generators,
                                  product_group_table)

Q = "< a, c | (a*c)*a = c, c *^{m} a = c >"


def qm(m):
    return parse_presentation(Q.format(m=m))


# -- parsing ------------------------------------------------------------------

def test_parse_q3():
    p = qm(3)
    assert p.generators == ("a", "c") and len(p.relations) == 2


def test_parse_free_one_generator():
    p = parse_presentation("< v | >")
    assert p.generators == ("v",) and p.relations == ()


def test_iterated_power_expands():
    assert parse_term("c *^2 a") == parse_term("(c*a)*a")
    assert parse_term("c /^2 a") == parse_term("(c/a)/a")


def test_comments_and_round_trip():
    p = parse_presentation("# Q_2\n< a, c | (a*c)*a = c,  # first\n c*^2 a = c >")
    assert parse_presentation(str(p)) == p


@pytest.mark.parametrize("bad", ["< a | a*b = a >", "< a, c | a*c = >", "< a | a = a", "a, c | a = c >",
                                 "< a | a *^-1 a = a >", "< a, a | >", "< a | a % a = a >"])
def test_syntax_errors(bad):
    with pytest.raises((PresentationSyntaxError, ValueError)):
        parse_presentation(bad)


def test_unknown_generator_has_position():
    with pytest.raises(UnknownGenerator) as err:
        parse_presentation("< a | a*b = a >")
    assert err.value.position > 0


# -- free quandle ----------------------------------------------------------------

def test_free_examples():
    s, t = free_generator("s"), free_generator("t")
    assert (s * t).group_word() == (("t", -1), ("s", 1), ("t", 1))
    assert (s * t) / t == s
    assert s * s == s


gens = ["a", "b", "c"]


@st.composite
def free_elements(draw):
    rng = random.Random(draw(st.integers(0, 2 ** 32)))
    return random_free_element(gens, 6, rng)


def conj(word, by):
    return reduce_word(invert_word(by) + word + by)


@settings(max_examples=1000)
@given(free_elements(), free_elements(), free_elements())
def test_free_quandle_axioms(x, y, z):
    assert x * x == x
    assert (x * y) / y == x and (x / y) * y == x
    assert (x * y) * z == (x * z) * (y * z)
    # oracle: the operation is conjugation in the free group
    assert (x * y).group_word() == conj(x.group_word(), y.group_word())
    # normal form is canonical: equal elements give equal group words and vice versa
    assert (x == y) == (x.group_word() == y.group_word())


# -- constructor quandles of order <= 4 ----------------------------------------

def automorphisms(g):
    n = len(g)
    for perm in itertools.permutations(range(n)):
        if perm[0] == 0 and all(perm[g[x][y]] == g[perm[x]][perm[y]] for x in range(n) for y in range(n)):
            yield list(perm)


def constructor_quandles(max_order=4):
    groups = [cyclic_group_table(n) for n in range(1, max_order + 1)]
    groups.append(product_group_table(cyclic_group_table(2), cyclic_group_table(2)))
    if max_order >= 6:
        groups += [cyclic_group_table(5), cyclic_group_table(6)]
    out = []
    for g in groups:
        if len(g) > max_order:
            continue
        g = g.tolist()
        for phi in automorphisms(g):
            out.append(generalized_alexander(g, phi))
    out += [dihedral_quandle(n) for n in range(3, max_order + 1)]
    assert all(check_axioms(q) for q in out)
    return out


SMALL = constructor_quandles(4)
MEDIUM = constructor_quandles(6)


def evaluate(elem: FreeQuandleElement, q, assign):
    return elem.evaluate(q, assign)


@settings(max_examples=400)
@given(st.integers(0, len(SMALL) - 1), st.integers(0, 2 ** 32), st.sampled_from("abcde"))
def test_consequence_moves_are_sound(qi, seed, move):
    q = SMALL[qi]
    rng = random.Random(seed)
    assign = {g: rng.randrange(q.order) for g in gens}
    # relation set of pairs that hold in the model
    R = []
    while len(R) < 3:
        x, y = random_free_element(gens, 4, rng), random_free_element(gens, 4, rng)
        if evaluate(x, q, assign) == evaluate(y, q, assign):
            R.append((x, y))
    R = tuple(R)
    if move == "a":
        new = consequence_step(R, "a", random_free_element(gens, 4, rng))
    elif move == "b":
        new = consequence_step(R, "b", rng.choice(R))
    elif move == "c":
        p = rng.choice(R)
        R = consequence_step(R, "a", p[1])
        new = consequence_step(R, "c", p, (p[1], p[1]))
    elif move == "d":
        new = consequence_step(R, "d", rng.choice(R), rng.choice(gens), generators=gens)
    else:
        new = consequence_step(R, "e", rng.choice(R), random_free_element(gens, 4, rng))
    assert set(R) <= set(new)
    for x, y in new:
        assert evaluate(x, q, assign) == evaluate(y, q, assign)


@settings(max_examples=100)
@given(st.integers(0, len(MEDIUM) - 1), st.integers(0, 2 ** 32))
def test_bounded_search_yes_is_sound(qi, seed):
    q = MEDIUM[qi]
    rng = random.Random(seed)
    assign = {g: rng.randrange(q.order) for g in gens}
    R = []
    while len(R) < 2:
        x, y = random_free_element(gens, 3, rng), random_free_element(gens, 3, rng)
        if evaluate(x, q, assign) == evaluate(y, q, assign):
            R.append((x, y))
    goal = (random_free_element(gens, 3, rng), random_free_element(gens, 3, rng))
    if is_consequence_bounded(R, goal, 1, gens) is Verdict.YES:
        assert evaluate(goal[0], q, assign) == evaluate(goal[1], q, assign)


def test_move_examples():
    x, y, z = (free_generator(g) for g in "xyz")
    R = ((x, y),)
    assert (x, x) in consequence_step(R, "a", x)
    assert (y, x) in consequence_step(R, "b", (x, y))
    new = consequence_step(R, "e", (x, y), z)
    assert (z * x, z * y) in new and (z / x, z / y) in new
    with pytest.raises(MalformedMove):
        consequence_step(R, "b", (y, z))
    with pytest.raises(MalformedMove):
        consequence_step(R, "d", (x, y), z * x)
    with pytest.raises(MalformedMove):
        consequence_step(R, "f", x)


def test_bounded_search_examples():
    p = qm(3)
    R = relation_pairs(p)
    a = free_generator("a")
    assert is_consequence_bounded(R, (a, a), 1) is Verdict.YES
    assert is_consequence_bounded(R, R[0], 0) is Verdict.YES
    collapse = parse_relation("(((a*c)*a)*a)*c = a", p.generators)
    assert relation_is_consequence(p, collapse, depth=2) is Verdict.UNKNOWN


# -- enumeration --------------------------------------------------------------------

@pytest.mark.parametrize("m,order", [(1, 1), (2, 3), (3, 8), (4, 24), (5, 120)])
def test_qm_orders(m, order):
    res = enumerate_presentation(qm(m))
    assert res.finite and res.order == order


def test_q2_is_dihedral():
    res = enumerate_presentation(qm(2))
    assert find_isomorphism(res.quandle, dihedral_quandle(3)) is not None


def test_q6_exceeds_budget():
    res = enumerate_presentation(qm(6), budget=5000)
    assert res.outcome == "budget_exceeded" and res.quandle is None and res.classes_seen > 0


def test_lemma_presentation_m3():
    res = enumerate_presentation(parse_presentation("< v, w | (v*w)*v = w, (w*v)*w = v, w *^3 v = w >"))
    assert res.order == 4


def test_free_one_generator_is_singleton():
    assert enumerate_presentation(parse_presentation("< v | >")).order == 1


def test_free_two_generators_exceeds_budget():
    # the free quandle on two generators is infinite
    assert not enumerate_presentation(parse_presentation("< a, b | >"), budget=500).finite


def _check_result(pres, res):
    q = res.quandle
    assert check_axioms(q)
    img = res.generator_images
    for r in pres.relations:
        assert r.lhs.evaluate(q, img) == r.rhs.evaluate(q, img)
    assert len(generated_closure(q, img.values())) == q.order


RANDOM_RELS = ["a*b = b", "b*a = a", "(a*b)*a = b", "(b*a)*b = a", "a *^2 b = a", "b *^2 a = b",
               "a *^3 b = a", "b *^3 a = b", "(a*b)*b = b*a", "a/b = a*b", "(a*b)*a = b*a"]


@settings(max_examples=60)
@given(st.lists(st.sampled_from(RANDOM_RELS), min_size=1, max_size=3, unique=True))
def test_enumeration_universal_property(rels):
    pres = parse_presentation("< a, b | " + ", ".join(rels) + " >")
    res = enumerate_presentation(pres, budget=3000)
    if not res.finite:
        return
    _check_result(pres, res)
    gens_src = [res.generator_images[g] for g in pres.generators]
    # every model of the relations receives a homomorphism from the enumerated quandle
    for q in SMALL:
        for x, y in itertools.product(range(q.order), repeat=2):
            assign = {"a": x, "b": y}
            if all(r.lhs.evaluate(q, assign) == r.rhs.evaluate(q, assign) for r in pres.relations):
                assert hom_from_generators(res.quandle, gens_src, [x, y], q) is not None


# -- Tietze ------------------------------------------------------------------------

def _same(p1, p2):
    r1, r2 = enumerate_presentation(p1), enumerate_presentation(p2)
    assert r1.finite and r2.finite
    return find_isomorphism(r1.quandle, r2.quandle) is not None


LEMMA_FORMER = "< v, w | (v*w)*v = w, (w*v)*w = v, w *^{m} v = w >"


def test_lemma_former_to_latter():
    for m in (3, 4):
        former = parse_presentation(LEMMA_FORMER.format(m=m))
        new_rel = parse_relation("(((v*w)*v)*v)*w = v", former.generators)
        step = tietze_apply(former, "T1", new_rel)
        latter = tietze_apply(step, "T1^-1", 1)
        assert latter.relations == (former.relations[0], former.relations[2], new_rel)
        assert _same(former, latter)


def test_t2_round_trip():
    p = qm(2)
    p2 = tietze_apply(p, "T2", "s", parse_term("a*c"))
    assert enumerate_presentation(p2).order == 3
    assert tietze_apply(p2, "T2^-1", "s") == p


def test_t1_refuses_non_consequence():
    p = qm(3)
    with pytest.raises(TietzeError):
        tietze_apply(p, "T1", parse_relation("(((a*c)*a)*a)*c = a", p.generators))
    assert certify_consequence(p, parse_relation("a = c", p.generators)) is None


TIETZE_CASES = [
    (qm(2), "T2", ("s", "a*c")),
    (qm(3), "T2", ("s", "c*a")),
    (qm(3), "T1", ("(c*a)*a = c/a",)),
    (qm(4), "T1", ("c *^4 a = c",)),
    (parse_presentation(LEMMA_FORMER.format(m=3)), "T1", ("(((v*w)*v)*v)*w = v",)),
    (parse_presentation(LEMMA_FORMER.format(m=5)), "T2", ("u", "(v*w)*w")),
    (parse_presentation("< a, b | a*b = a, b*a = b >"), "T1", ("a/b = a",)),
]


@pytest.mark.parametrize("pres,move,args", TIETZE_CASES, ids=range(len(TIETZE_CASES)))
def test_tietze_preserves_quandle(pres, move, args):
    if move == "T2":
        new = tietze_apply(pres, "T2", args[0], parse_term(args[1], pres.generators))
    else:
        new = tietze_apply(pres, "T1", parse_relation(args[0], pres.generators))
    r1, r2 = enumerate_presentation(pres), enumerate_presentation(new)
    assert r1.finite and r2.finite and r1.order == r2.order
    assert find_isomorphism(r1.quandle, r2.quandle) is not None
    if move == "T1":
        back = tietze_apply(new, "T1^-1", len(new.relations) - 1)
        assert back == pres


def test_term_to_free_matches_evaluation():
    d5 = dihedral_quandle(5)
    for text in ["(a*c)*a", "c *^3 a", "(a/c)*(c*a)", "((a*c)/a)*(c/a)"]:
        t = parse_term(text, ("a", "c"))
        assign = {"a": 1, "c": 3}
        assert term_to_free(t).evaluate(d5, assign) == t.evaluate(d5, assign)
