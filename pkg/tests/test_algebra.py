import random

import pytest

from esakiakit import (Poset, TooLarge, TooManyAssignments, UnboundVariable,
                       all_epartitions, generated_subalgebra, is_si,
                       min_generators, parse_equation, parse_term,
                       subalgebras, upset_algebra, validates)
from esakiakit.algebra import BOT, TOP, evaluate, t_imp, t_not, var
from esakiakit.randgen import random_poset

WEM = parse_equation("~x0 | ~~x0 = 1")


def v_poset():
    return Poset.from_covers(3, [(0, 1), (0, 2)])


def test_carrier_is_all_upsets_in_canonical_order():
    a = upset_algebra(v_poset())
    assert len(a) == 5
    assert a.mask(a.bot) == 0
    assert a.mask(a.top) == 0b111
    masks = [a.mask(i) for i in range(len(a))]
    assert masks == sorted(masks, key=lambda m: (bin(m).count("1"), m))


def test_size_guard():
    with pytest.raises(TooLarge):
        upset_algebra(Poset.from_covers(25, []), bound=20)


def test_lattice_ops_are_set_ops():
    a = upset_algebra(v_poset())
    for i in range(len(a)):
        for j in range(len(a)):
            assert a.mask(a.meet(i, j)) == a.mask(i) & a.mask(j)
            assert a.mask(a.join(i, j)) == a.mask(i) | a.mask(j)


def test_residuation_on_seeded_posets():
    rng = random.Random(2)
    for _ in range(40):
        p = random_poset(rng, rng.randint(1, 5))
        a = upset_algebra(p)
        k = len(a)
        for i in range(k):
            for j in range(k):
                m = a.meet(i, j)
                for c in range(k):
                    assert a.leq(m, c) == a.leq(i, a.imp(j, c))


def test_negation_is_implication_to_bottom():
    a = upset_algebra(v_poset())
    for i in range(len(a)):
        assert a.neg(i) == a.imp(i, a.bot)


def test_si_means_rooted():
    assert is_si(upset_algebra(v_poset()))
    assert not is_si(upset_algebra(Poset.from_covers(2, [])))


def test_parser_precedence_and_associativity():
    t = parse_term("~x0 & x1 | x2 -> x3")
    # -> binds loosest: ((~x0 & x1) | x2) -> x3
    assert t.op == "imp"
    assert t.left.op == "or"
    assert t.left.left.op == "and"
    r = parse_term("x0 -> x1 -> x2")
    assert r.right.op == "imp"


def test_parser_rejects_garbage():
    with pytest.raises(ValueError):
        parse_term("x0 +")
    with pytest.raises(ValueError):
        parse_term("x")
    with pytest.raises(ValueError):
        parse_equation("x0 = x1 = x2")


def test_evaluate_requires_bindings():
    a = upset_algebra(v_poset())
    with pytest.raises(UnboundVariable):
        evaluate(a, var(3), {0: 0})
    assert evaluate(a, BOT, {}) == a.bot
    assert evaluate(a, TOP, {}) == a.top


def test_weak_excluded_middle_fails_exactly_on_topless_duals():
    ok, witness = validates(upset_algebra(v_poset()), *WEM)
    assert not ok and witness is not None
    # rooted with a top: 2-chain validates it
    ok2, _ = validates(upset_algebra(Poset.from_covers(2, [(0, 1)])), *WEM)
    assert ok2


def test_validates_cap():
    a = upset_algebra(v_poset())
    eq = parse_equation("x0 & x1 & x2 = x2 & x1 & x0")
    with pytest.raises(TooManyAssignments):
        validates(a, *eq, cap=10)


def test_generated_subalgebra_contains_bounds():
    a = upset_algebra(v_poset())
    s = generated_subalgebra(a, ())
    assert a.bot in s and a.top in s
    assert generated_subalgebra(a, range(len(a))) == frozenset(range(len(a)))


def test_min_generators_small_cases():
    chain2 = Poset.from_covers(2, [(0, 1)])
    assert min_generators(upset_algebra(chain2), cap=2) == 1
    assert min_generators(upset_algebra(Poset.from_covers(1, [])), cap=2) == 0
    assert min_generators(upset_algebra(v_poset()), cap=0) is None


def test_subalgebra_count_matches_epartition_count():
    for p in (v_poset(), Poset.from_covers(3, [(0, 1), (1, 2)]),
              Poset.from_covers(3, []), Poset.from_covers(4, [(0, 2), (1, 2)])):
        assert len(subalgebras(upset_algebra(p))) == len(all_epartitions(p))


def test_term_str_roundtrip():
    t = t_imp(t_not(var(0)), var(1))
    assert parse_term(str(t)) == t
