"""Congruences, quotients, and the kernel of a homomorphism.

A congruence is an equivalence relation stable under every operation.
Collapsing its blocks yields the quotient algebra; conversely the
kernel of any homomorphism is a congruence, and the quotient by the
kernel reproduces the image exactly.
"""

from pathlib import Path

from malcevlab import (all_congruences, compose_permute, find_homomorphisms,
                       find_isomorphism, kernel, load_algebra, quotient)

DATA = Path(__file__).resolve().parent / "data"


def main():
    z4 = load_algebra(DATA / "z4.alg")
    congs = all_congruences(z4)
    print(f"the 4-cycle has {len(congs)} congruences:")
    for theta in congs:
        print(f"  blocks {theta}")

    for theta, xi in [(congs[0], congs[1]), (congs[1], congs[2])]:
        _, ok = compose_permute(theta, xi)
        print(f"pair {theta} / {xi} permutes: {ok}")

    middle = next(t for t in congs if not t.is_identity() and not t.is_full())
    quo, canonical = quotient(z4, middle)
    print(f"\nquotient by {middle} has {quo.size} elements; "
          f"canonical map {canonical}")

    z2 = load_algebra(DATA / "z2.alg")
    surjection = next(h for h in find_homomorphisms(z4, z2)
                      if len(set(h)) == z2.size)
    ker = kernel(surjection, z4, z2)
    quo2, _ = quotient(z4, ker)
    print(f"\nmod-2 surjection {surjection} has kernel {ker}")
    print(f"quotient by the kernel is isomorphic to the image: "
          f"{find_isomorphism(quo2, z2) is not None}")

    # semilattices show congruence pairs that fail to permute
    chain = load_algebra(DATA / "chain3.alg")
    congs = all_congruences(chain)
    print(f"\nthe 3-chain semilattice has {len(congs)} congruences")
    for theta, xi in [(t, x) for t in congs for x in congs]:
        forward, ok = compose_permute(theta, xi)
        if not ok:
            backward, _ = compose_permute(xi, theta)
            pair = min(forward - backward)
            print(f"  {theta} and {xi} do not permute: "
                  f"{pair} is reachable one way only")
            break


if __name__ == "__main__":
    main()
