import random

import pytest

from esakiakit import (Coloring, EPartition, InvalidId, NotEPartition,
                       NotMergeable, NotPMorphism, NotSurjective, Poset,
                       TooLarge, all_epartitions, alpha_mergeable,
                       beta_mergeable, brute_coarsest_color_respecting,
                       coarsest_color_respecting, color_respecting_reduction,
                       compose_steps, decompose_pmorphism, is_epartition,
                       is_pmorphism, kernel, merge_step, mergeable_pairs,
                       quotient)
from esakiakit.randgen import random_poset, random_weak_coloring


def v_poset():
    return Poset.from_covers(3, [(0, 1), (0, 2)])


def chain(n):
    return Poset.from_covers(n, [(i, i + 1) for i in range(n - 1)])


def test_epartition_validation():
    p = v_poset()
    with pytest.raises(InvalidId):
        EPartition.from_blocks(p, [[0, 1]])          # misses 2
    with pytest.raises(InvalidId):
        EPartition.from_blocks(p, [[0, 1], [1, 2]])  # overlap
    part = EPartition.from_blocks(p, [[1, 2], [0]])
    assert is_epartition(p, part)
    assert part.same(1, 2) and not part.same(0, 1)
    assert part.blocks[part.block_of(1)] == (1, 2)


def test_epartition_from_pairs_closes_transitively():
    p = Poset.from_covers(4, [])
    part = EPartition.from_pairs(p, [(0, 1), (1, 2)])
    assert part.blocks == ((0, 1, 2), (3,))


def test_non_epartition_detected():
    p = chain(2)
    part = EPartition.from_blocks(p, [[0, 1]])
    assert is_epartition(p, part)        # merging a covering pair is fine
    q = v_poset()
    bad = EPartition.from_blocks(q, [[0, 1], [2]])
    assert not is_epartition(q, bad)     # root merged with one arm only


def test_all_epartition_counts():
    assert len(all_epartitions(chain(3))) == 4
    assert len(all_epartitions(Poset.from_covers(3, []))) == 5
    assert len(all_epartitions(v_poset())) == 3
    with pytest.raises(TooLarge):
        all_epartitions(Poset.from_covers(9, []))


def test_quotient_of_v_by_arm_merge():
    p = v_poset()
    part = EPartition.from_blocks(p, [[0], [1, 2]])
    q, proj = quotient(p, part)
    assert q.n == 2 and q.covers == ((1, 0),)   # block ids run top down
    assert proj == (1, 0, 0)
    with pytest.raises(NotEPartition):
        quotient(p, EPartition.from_blocks(p, [[0, 1], [2]]))


def test_pmorphism_check_and_kernel():
    p, q = v_poset(), chain(2)
    f = (0, 1, 1)
    assert is_pmorphism(p, q, f)
    assert kernel(p, f).blocks == ((0,), (1, 2))
    assert not is_pmorphism(p, q, (0, 1, 0))        # back condition at the arm
    assert is_pmorphism(chain(2), chain(2), (1, 1))  # p-morphism, not onto
    assert not is_pmorphism(chain(2), chain(2), (0, 0))


def test_mergeable_predicates():
    p = v_poset()
    assert beta_mergeable(p, 1, 2)
    assert not alpha_mergeable(p, 0, 1)        # root has two successors
    c = chain(2)
    assert alpha_mergeable(c, 0, 1)
    assert not beta_mergeable(c, 0, 1)


def test_mergeable_pairs_order_is_deterministic():
    p = v_poset()
    assert mergeable_pairs(p) == [("beta", 1, 2)]
    c = chain(3)
    assert mergeable_pairs(c) == [("alpha", 1, 2), ("alpha", 0, 1)]


def test_merge_step_and_errors():
    p = v_poset()
    q, proj = merge_step(p, "beta", 1, 2)
    assert q.n == 2 and proj[1] == proj[2]
    with pytest.raises(NotMergeable):
        merge_step(p, "alpha", 1, 2)
    with pytest.raises(NotMergeable):
        merge_step(p, "beta", 0, 1)


def test_decompose_then_compose_roundtrip():
    p, q = v_poset(), chain(2)
    steps = decompose_pmorphism(p, q, (0, 1, 1))
    assert [(s.kind, s.pair) for s in steps] == [("beta", (1, 2))]
    final, ker = compose_steps(p, steps)
    assert ker == kernel(p, (0, 1, 1))
    assert final.isomorphic(q)


def test_decompose_rejects_bad_maps():
    p, q = v_poset(), chain(2)
    with pytest.raises(NotPMorphism):
        decompose_pmorphism(p, q, (0, 1, 0))
    with pytest.raises(NotSurjective):
        decompose_pmorphism(chain(2), chain(2), (1, 1))


def test_decompose_roundtrip_on_seeded_quotients():
    rng = random.Random(23)
    done = 0
    while done < 60:
        p = random_poset(rng, rng.randint(2, 6))
        parts = all_epartitions(p)
        part = parts[rng.randrange(len(parts))]
        q, proj = quotient(p, part)
        steps = decompose_pmorphism(p, q, proj)
        final, ker = compose_steps(p, steps)
        assert ker.blocks == part.blocks
        assert final.isomorphic(q)
        done += 1


def test_compose_steps_validates_each_step():
    p = v_poset()
    from esakiakit import ReductionStep
    with pytest.raises(NotMergeable):
        compose_steps(p, [ReductionStep("beta", (0, 1))])


def test_coarsest_color_respecting_examples():
    p = v_poset()
    const = Coloring.of(p, 1, [0, 0, 0])
    part = coarsest_color_respecting(p, const)
    assert part.blocks == ((0, 1, 2),)
    strict = Coloring.of(p, 1, [0, 0, 1])
    assert coarsest_color_respecting(p, strict).is_identity()


def test_coarsest_matches_brute_force_on_seeded_instances():
    rng = random.Random(31)
    for _ in range(120):
        p = random_poset(rng, rng.randint(1, 6))
        f = random_weak_coloring(rng, p, 2)
        assert coarsest_color_respecting(p, f) == \
            brute_coarsest_color_respecting(p, f)


def test_coarsest_is_order_independent():
    rng = random.Random(47)
    p = chain(4)
    f = Coloring.of(p, 1, [0, 0, 1, 1])
    baseline = coarsest_color_respecting(p, f)
    for _ in range(10):
        scrambled = coarsest_color_respecting(
            p, f, order=lambda cands: sorted(cands, key=lambda _: rng.random()))
        assert scrambled == baseline


def test_color_respecting_reduction_steps_replay():
    p = chain(4)
    f = Coloring.of(p, 1, [0, 0, 1, 1])
    part, steps = color_respecting_reduction(p, f)
    final, ker = compose_steps(p, steps)
    assert ker == part
    assert final.n == 2
