"""Derived-operation searches: Mal'cev terms, biternary pairs, translations."""

import random

import pytest

from malcevlab import (App, TermEnumeration, Var, check_permutability_theorem,
                       composition_closure, detect_biternary, eval_term,
                       find_biternary_pair, find_malcev_term,
                       malcev_from_biternary, malcev_search, parse_term,
                       print_term, term_key, term_size, translation_group)

from conftest import (GROUP_SIG, GROUPOID_SIG, MEET_SIG, chain_semilattice,
                      cyclic_group, klein_group, symmetric_group_3, tangle5)


def assert_malcev_identities(alg, term):
    for x in range(alg.size):
        for z in range(alg.size):
            assert eval_term(term, (x, x, z), alg) == z
            assert eval_term(term, (x, z, z), alg) == x


def test_term_enumeration_small_counts():
    # depth <= 1 over a single binary symbol with three variables:
    # 3 variables plus 3*3 products
    terms = list(TermEnumeration(GROUPOID_SIG, max_depth=1, var_count=3))
    assert len(terms) == 12
    keys = [term_key(t, GROUPOID_SIG) for t in terms]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_term_enumeration_respects_size_cap():
    for t in TermEnumeration(GROUPOID_SIG, max_depth=3, var_count=2,
                             max_size=5):
        assert term_size(t) <= 5


def test_groups_have_malcev_terms():
    for alg in (cyclic_group(2), cyclic_group(3), cyclic_group(4),
                cyclic_group(5), cyclic_group(6), klein_group(),
                symmetric_group_3()):
        term = find_malcev_term(alg)
        assert term is not None
        assert_malcev_identities(alg, term)


def test_canonical_witnesses_are_stable(z4, s3):
    assert print_term(find_malcev_term(z4)) == "mul(inv(x1), mul(x0, x2))"
    assert print_term(find_malcev_term(s3)) == "mul(x0, mul(inv(x1), x2))"


def test_search_is_deterministic(z4):
    a = malcev_search(z4)
    b = malcev_search(z4)
    assert a == b


def test_semilattices_have_no_malcev_term():
    for n in (2, 3, 4):
        res = malcev_search(chain_semilattice(n), max_depth=4)
        assert res.term is None
        assert not res.truncated


def test_tangle5_exhausts_within_size_cap():
    res = malcev_search(tangle5(), max_depth=4, max_term_size=8)
    assert res.term is None
    assert not res.truncated
    assert res.tables_explored == 102


def test_tangle5_truncates_without_cap_on_small_budget():
    res = malcev_search(tangle5(), max_depth=4, table_budget=2000)
    assert res.term is None
    assert res.truncated


def test_second_identity_variant_admits_projection(z4):
    res = malcev_search(z4, second_identity="z")
    assert res.term == Var(2)


def test_malcev_verifies_witness_against_evaluator(z6):
    res = malcev_search(z6)
    assert res.term is not None
    assert_malcev_identities(z6, res.term)
    assert res.max_depth == 4


def test_check_permutability_verdicts(z4, chain2, chain3):
    assert check_permutability_theorem(z4).verdict == "consistent"
    # a two-element chain has only the trivial congruences: no term is
    # found, but nothing fails to permute either
    report = check_permutability_theorem(chain2)
    assert report.verdict == "inconclusive"
    assert report.term is None and not report.non_permuting
    # the three-element chain has a genuinely non-permuting pair, which
    # the missing term is consistent with
    report3 = check_permutability_theorem(chain3)
    assert report3.verdict == "consistent"
    assert report3.term is None and report3.non_permuting
    tangle_report = check_permutability_theorem(
        tangle5(), max_term_size=8)
    assert tangle_report.verdict == "consistent"
    assert tangle_report.term is None
    assert len(tangle_report.non_permuting) == 1


def test_biternary_pair_on_groups(z4):
    res = detect_biternary(z4)
    assert res.pair is not None
    alpha, beta = res.pair.alpha, res.pair.beta
    n = z4.size
    for x in range(n):
        for y in range(n):
            assert eval_term(alpha, (x, x, y), z4) == y
            for z in range(n):
                lhs = eval_term(beta, (x, y, z), z4)
                assert eval_term(alpha, (lhs, y, z), z4) == x
                rhs = eval_term(alpha, (x, y, z), z4)
                assert eval_term(beta, (rhs, y, z), z4) == x


def test_biternary_resolves_to_none_on_semilattices(chain3):
    res = detect_biternary(chain3)
    assert res.pair is None
    assert not res.truncated
    assert find_biternary_pair(chain3) is None


def test_malcev_from_biternary_composites(z4, s3):
    for alg in (z4, s3):
        pair = detect_biternary(alg).pair
        assert pair is not None
        for anchor in range(alg.size):
            term, verified = malcev_from_biternary(alg, pair, anchor)
            assert verified
            assert_malcev_identities_with_anchor(alg, term, anchor)


def assert_malcev_identities_with_anchor(alg, term, anchor):
    for x in range(alg.size):
        for z in range(alg.size):
            assert eval_term(term, (x, x, z, anchor), alg) == z
            assert eval_term(term, (x, z, z, anchor), alg) == x


def test_translation_group_of_z4_is_affine(z4):
    grp = translation_group(z4)
    affine = {tuple((s * x + c) % 4 for x in range(4))
              for s in (1, 3) for c in range(4)}
    assert set(grp.closure) == affine
    assert grp.transitive
    assert not grp.truncated


def test_translation_group_of_chain_is_trivial(chain3):
    grp = translation_group(chain3)
    assert grp.closure == frozenset({(0, 1, 2)})
    assert not grp.transitive


def test_composition_closure_generates_s3():
    swap01 = (1, 0, 2)
    cycle = (1, 2, 0)
    closure = composition_closure([swap01, cycle], 3)
    assert len(closure) == 6


def test_composition_closure_contains_identity():
    closure = composition_closure([], 4)
    assert closure == frozenset({(0, 1, 2, 3)})


def test_search_witness_is_canonically_least(z4):
    res = malcev_search(z4)
    # any same-table term found at the same depth has a key no smaller
    key = term_key(res.term, z4.sig)
    handwritten = parse_term("mul(mul(x0, inv(x1)), x2)", GROUP_SIG)
    assert_malcev_identities(z4, handwritten)
    assert key <= term_key(handwritten, GROUP_SIG)


def test_find_malcev_term_respects_depth_bound():
    assert find_malcev_term(cyclic_group(5), max_depth=1) is None
    term = find_malcev_term(cyclic_group(5), max_depth=2)
    assert term is not None
