"""Searching for Mal'cev terms and what their absence permits.

A Mal'cev term is a ternary term P with P(x,x,z) = z and P(x,z,z) = x.
When one exists, every pair of congruences permutes; the search below
walks derived operations in order of composition depth, deduplicating
by value table.  Where no term exists, non-permuting pairs may appear.
"""

from pathlib import Path

from malcevlab import (check_permutability_theorem, compose_permute,
                       detect_biternary, eval_term, find_malcev_term,
                       load_algebra, malcev_from_biternary,
                       translation_group)

DATA = Path(__file__).resolve().parent / "data"


def main():
    z4 = load_algebra(DATA / "z4.alg")
    term = find_malcev_term(z4)
    print(f"the 4-cycle has Mal'cev term {term}")
    checks = all(eval_term(term, (x, x, z), z4) == z
                 and eval_term(term, (x, z, z), z4) == x
                 for x in range(z4.size) for z in range(z4.size))
    print(f"  identities re-verified on every pair: {checks}")

    chain = load_algebra(DATA / "chain3.alg")
    print(f"\nthe 3-chain semilattice: "
          f"term = {find_malcev_term(chain)} (no ternary term of depth "
          f"<= 4 satisfies both identities)")

    for name in ("chain3", "tangle5"):
        alg = load_algebra(DATA / f"{name}.alg")
        report = check_permutability_theorem(alg, max_term_size=8)
        print(f"\n{name}: verdict {report.verdict!r} over "
              f"{report.congruence_count} congruences")
        for theta, xi in report.non_permuting:
            forward, _ = compose_permute(theta, xi)
            backward, _ = compose_permute(xi, theta)
            witness = min(forward - backward)
            print(f"  non-permuting pair: {theta} vs {xi}"
                  f" (only one composition reaches {witness})")

    # a biternary pair is an equivalent two-operation certificate
    found = detect_biternary(z4)
    print(f"\nbiternary pair on the 4-cycle: alpha={found.pair.alpha}, "
          f"beta={found.pair.beta}")
    composite, verified = malcev_from_biternary(z4, found.pair, anchor=0)
    print(f"  composite Mal'cev term through anchor 0: {composite} "
          f"(verified: {verified})")

    grp = translation_group(z4)
    print(f"\nclosure of the one-variable translations of the 4-cycle: "
          f"{len(grp.closure)} maps, transitive: {grp.transitive}")


if __name__ == "__main__":
    main()
