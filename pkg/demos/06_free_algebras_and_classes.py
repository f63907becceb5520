"""Free algebras, presentations, replicas, and class membership.

Fixing a finite list of generator algebras closes a class under
subalgebras and products.  The rank-m free algebra is the subalgebra
of a suitable power generated by the m coordinate patterns: every map
of its generators into a class member extends uniquely to a
homomorphism.  The replica of an arbitrary algebra is its best image
inside the class, and membership can be decided by separation.
"""

from pathlib import Path

from malcevlab import (find_homomorphisms, find_isomorphism, free_algebra,
                       load_algebra, load_class, membership_in_closure,
                       parse_formula, presented_algebra, replica,
                       verify_universal_property)

DATA = Path(__file__).resolve().parent / "data"


def main():
    z2 = load_algebra(DATA / "z2.alg")
    fr = free_algebra([z2], 2)
    print(f"free algebra of rank 2 over the 2-cycle: {fr.algebra.size} "
          f"elements, generators at {fr.generator_images}")
    report = verify_universal_property(fr, [z2])
    print(f"  universal property against the 2-cycle: holds={report.holds} "
          f"({report.assignments_checked} generator maps extended)")

    relation = parse_formula("mul(x0, x1) = e", z2.sig)
    collapsed = presented_algebra([z2], 2, [relation])
    print(f"\nadding the relation {relation} collapses the free algebra "
          f"to {collapsed.algebra.size} elements")

    cls = load_class(DATA / "chain.cls")
    chain3 = load_algebra(DATA / "chain3.alg")
    rep = replica(cls.algebras, chain3)
    print(f"\nreplica of the 3-chain in the class of the 2-chain: "
          f"{rep.algebra.size} elements via canonical map "
          f"{rep.canonical_map}")
    print(f"  replica is isomorphic to the source: "
          f"{find_isomorphism(rep.algebra, chain3) is not None}")
    for h in find_homomorphisms(chain3, cls.algebras[0]):
        lifted = tuple(h[rep.canonical_map.index(b)]
                       for b in range(rep.algebra.size))
        print(f"  {h} factors through the replica as {lifted}")

    flat = load_algebra(DATA / "flat2.alg")
    verdict = membership_in_closure(cls.algebras, flat)
    print(f"\nthe two-element algebra with constant meet is a member: "
          f"{verdict.member}")
    if not verdict.member:
        kind, a, b = verdict.witness
        print(f"  witness: elements {a} and {b} are {kind} by all "
              f"{verdict.hom_count} homomorphisms into the class")


if __name__ == "__main__":
    main()
