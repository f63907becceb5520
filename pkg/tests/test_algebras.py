"""Finite systems: products, subalgebras, homomorphisms, isomorphisms."""

import random
from itertools import product

import pytest

from malcevlab import (FiniteAlgebra, Signature, direct_product,
                       find_homomorphisms, find_isomorphism, flat_index,
                       generate_subalgebra, is_homomorphism,
                       is_strong_homomorphism, is_unitary, product_decode,
                       product_encode, subalgebra_as_algebra,
                       unitary_system)
from malcevlab.errors import (EmptyUngeneratable, SearchBudgetExceeded,
                              SizeOverflow)

from conftest import (GROUP_SIG, MEET_SIG, chain_semilattice, cyclic_group,
                      klein_group, random_algebra, symmetric_group_3)

PRED_SIG = Signature(ops=(("meet", 2),), preds=(("leq", 2),))


def ordered_chain(n: int) -> FiniteAlgebra:
    meet = tuple(min(a, b) for a in range(n) for b in range(n))
    leq = tuple(a <= b for a in range(n) for b in range(n))
    return FiniteAlgebra(PRED_SIG, n, {"meet": meet}, {"leq": leq})


def test_flat_index_is_row_major_most_significant_first():
    assert flat_index((0, 0), 3) == 0
    assert flat_index((0, 1), 3) == 1
    assert flat_index((1, 0), 3) == 3
    assert flat_index((2, 1), 3) == 7
    assert flat_index((1, 0, 2), 3) == 11
    assert flat_index((), 5) == 0


def test_encode_decode_round_trip_seeded():
    rng = random.Random(5)
    for _ in range(100):
        sizes = tuple(rng.randint(1, 5) for _ in range(rng.randint(1, 4)))
        coords = tuple(rng.randrange(s) for s in sizes)
        idx = product_encode(coords, sizes)
        assert product_decode(idx, sizes) == coords


def test_table_validation_rejects_bad_tables():
    with pytest.raises(ValueError):
        FiniteAlgebra(MEET_SIG, 2, {"meet": (0, 0, 0)})
    with pytest.raises(ValueError):
        FiniteAlgebra(MEET_SIG, 2, {"meet": (0, 0, 0, 2)})
    with pytest.raises(ValueError):
        FiniteAlgebra(MEET_SIG, 2, {})


def test_direct_product_is_pointwise(z2, z3):
    prod = direct_product([z2, z3])
    assert prod.size == 6
    for a in range(6):
        for b in range(6):
            ca, cb = product_decode(a, (2, 3)), product_decode(b, (2, 3))
            want = product_encode(
                (z2.op_value("mul", (ca[0], cb[0])),
                 z3.op_value("mul", (ca[1], cb[1]))), (2, 3))
            assert prod.op_value("mul", (a, b)) == want


def test_direct_product_predicates_are_conjunctions():
    c2 = ordered_chain(2)
    prod = direct_product([c2, c2])
    for a in range(4):
        for b in range(4):
            ca, cb = product_decode(a, (2, 2)), product_decode(b, (2, 2))
            want = (ca[0] <= cb[0]) and (ca[1] <= cb[1])
            assert prod.pred_value("leq", (a, b)) == want


def test_direct_product_empty_family_needs_a_signature():
    with pytest.raises(ValueError):
        direct_product([])
    one = unitary_system(PRED_SIG)
    assert one.size == 1
    assert one.pred_value("leq", (0, 0))


def test_direct_product_size_bound():
    z10 = cyclic_group(10)
    with pytest.raises(SizeOverflow):
        direct_product([z10] * 7)


def test_generate_subalgebra_known_values(z6):
    assert generate_subalgebra(z6, [2]) == [0, 2, 4]
    assert generate_subalgebra(z6, []) == [0]
    assert generate_subalgebra(z6, [1]) == [0, 1, 2, 3, 4, 5]


def test_generate_subalgebra_needs_seed_or_constants():
    alg = chain_semilattice(3)
    with pytest.raises(EmptyUngeneratable):
        generate_subalgebra(alg, [])


def step_operator(alg, current: set) -> set:
    out = set(current)
    for name, arity in alg.sig.ops:
        for combo in product(sorted(current), repeat=arity):
            out.add(alg.op_value(name, combo))
    return out


def test_generate_subalgebra_is_a_closure_operator_seeded():
    rng = random.Random(31337)
    for _ in range(120):
        alg = random_algebra(rng)
        seed = sorted(rng.sample(range(alg.size),
                                 rng.randint(0, alg.size)))
        if not seed and not alg.constants():
            continue
        got = generate_subalgebra(alg, seed)
        # extensive and closed
        assert set(seed) <= set(got)
        assert step_operator(alg, set(got)) == set(got)
        # idempotent
        assert generate_subalgebra(alg, got) == got
        # least: iterating the one-step operator from the seed reaches it
        current = set(seed) | set(alg.constants())
        for _ in range(alg.size):
            nxt = step_operator(alg, current)
            if nxt == current:
                break
            current = nxt
        assert sorted(current) == got


def test_subalgebra_as_algebra_restricts_tables(z6):
    sub = subalgebra_as_algebra(z6, [0, 2, 4])
    assert sub.size == 3
    # 2 * 4 = 0 in Z6; positions 1 and 2 multiply to position 0
    assert sub.op_value("mul", (1, 2)) == 0
    iso = find_isomorphism(sub, cyclic_group(3))
    assert iso is not None


def test_is_homomorphism_hand_cases(z4, z2):
    assert is_homomorphism((0, 1, 0, 1), z4, z2)
    assert not is_homomorphism((0, 1, 1, 0), z4, z2)
    assert is_strong_homomorphism((0, 1, 0, 1), z4, z2)
    # constant map preserves ops but is not surjective, hence not strong
    assert is_homomorphism((0, 0, 0, 0), z4, z2)
    assert not is_strong_homomorphism((0, 0, 0, 0), z4, z2)


def test_strong_needs_predicate_reflection():
    c2 = ordered_chain(2)
    flat = FiniteAlgebra(PRED_SIG, 2, dict(c2.op_tables),
                         {"leq": (True, False, False, True)})
    ident = (0, 1)
    assert is_homomorphism(ident, flat, c2)
    assert not is_strong_homomorphism(ident, flat, c2)


def brute_force_homs(a, b):
    found = []
    for images in product(range(b.size), repeat=a.size):
        if is_homomorphism(images, a, b):
            found.append(images)
    return found


def test_find_homomorphisms_matches_brute_force_seeded():
    rng = random.Random(1717)
    for _ in range(60):
        a = random_algebra(rng, max_size=3)
        b = random_algebra(rng, max_size=3)
        if a.sig != b.sig:
            continue
        assert find_homomorphisms(a, b) == brute_force_homs(a, b)


def test_find_homomorphisms_same_signature_pairs_seeded():
    rng = random.Random(2024)
    checked = 0
    while checked < 40:
        a = random_algebra(rng, max_size=3)
        tables = {name: tuple(rng.randrange(a.size)
                              for _ in range(a.size**arity))
                  for name, arity in a.sig.ops}
        ptables = {name: tuple(rng.random() < 0.5
                               for _ in range(a.size**arity))
                   for name, arity in a.sig.preds}
        b = FiniteAlgebra(a.sig, a.size, tables, ptables)
        assert find_homomorphisms(a, b) == brute_force_homs(a, b)
        checked += 1


def test_find_homomorphisms_counts(z4, z2, z6):
    assert len(find_homomorphisms(z4, z4)) == 4
    assert len(find_homomorphisms(z4, z2)) == 2
    assert len(find_homomorphisms(z6, z6)) == 6
    strong = find_homomorphisms(z4, z2, strong=True)
    assert strong == [(0, 1, 0, 1)]


def test_find_homomorphisms_budget(z4):
    with pytest.raises(SearchBudgetExceeded):
        find_homomorphisms(z4, z4, budget=2)


def test_unitary_system_and_predicates():
    one = unitary_system(PRED_SIG)
    assert one.size == 1
    assert is_unitary(one)
    assert one.pred_value("leq", (0, 0))
    assert not is_unitary(ordered_chain(2))


def test_find_isomorphism_detects_relabelings_seeded():
    rng = random.Random(777)
    for _ in range(40):
        a = random_algebra(rng, max_size=5)
        perm = list(range(a.size))
        rng.shuffle(perm)
        inverse = [0] * a.size
        for i, p in enumerate(perm):
            inverse[p] = i
        ops = {}
        for name, arity in a.sig.ops:
            ops[name] = tuple(
                perm[a.op_value(name, tuple(inverse[c] for c in combo))]
                for combo in product(range(a.size), repeat=arity))
        preds = {}
        for name, arity in a.sig.preds:
            preds[name] = tuple(
                a.pred_value(name, tuple(inverse[c] for c in combo))
                for combo in product(range(a.size), repeat=arity))
        b = FiniteAlgebra(a.sig, a.size, ops, preds)
        iso = find_isomorphism(a, b)
        assert iso is not None
        assert is_homomorphism(iso, a, b)
        assert sorted(iso) == list(range(a.size))


def test_find_isomorphism_distinguishes_z4_from_klein():
    assert find_isomorphism(cyclic_group(4), klein_group()) is None
    assert find_isomorphism(cyclic_group(4), cyclic_group(4)) is not None


def test_find_isomorphism_needs_equal_sizes(z2, z4):
    assert find_isomorphism(z2, z4) is None


def test_s3_has_trivial_center_visible_through_automorphisms():
    s3 = symmetric_group_3()
    autos = [phi for phi in find_homomorphisms(s3, s3)
             if sorted(phi) == list(range(6))]
    assert len(autos) == 6
