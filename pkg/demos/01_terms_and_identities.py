"""Terms, identities, and quasiidentities over finite operation tables.

A finite algebra lives on the carrier {0, ..., n-1} with each operation
stored as a flat table.  Terms are trees over variables x0, x1, ...;
an identity is an equation holding under every assignment, and a
quasiidentity is an implication between such equations.
"""

from pathlib import Path

from malcevlab import (check_quasiidentity, eval_term, load_algebra,
                       parse_quasiidentity, parse_term, term_depth,
                       term_size)

DATA = Path(__file__).resolve().parent / "data"


def main():
    z4 = load_algebra(DATA / "z4.alg")
    print(f"loaded cyclic group of order {z4.size} "
          f"with operations {[name for name, _ in z4.sig.ops]}")

    term = parse_term("mul(x0, inv(x1))", z4.sig)
    print(f"\nterm {term} has size {term_size(term)} "
          f"and depth {term_depth(term)}")
    for x0 in range(z4.size):
        row = [eval_term(term, (x0, x1), z4) for x1 in range(z4.size)]
        print(f"  x0={x0}: {row}")

    # identities are quasiidentities with no premises
    commutative = parse_quasiidentity("mul(x0, x1) = mul(x1, x0)", z4.sig)
    outcome = check_quasiidentity(commutative, z4)
    print(f"\n{commutative}")
    print(f"  holds on the cyclic group: {outcome.holds}")

    chain = load_algebra(DATA / "chain3.alg")
    cancellation = parse_quasiidentity(
        "meet(x0, x1) = meet(x0, x2) => x1 = x2", chain.sig)
    outcome = check_quasiidentity(cancellation, chain)
    print(f"\n{cancellation}")
    print(f"  holds on the 3-chain semilattice: {outcome.holds}")
    if not outcome.holds:
        assignment = ", ".join(
            f"x{i}={v}" for i, v in enumerate(outcome.witness))
        print(f"  counterexample: {assignment}")


if __name__ == "__main__":
    main()
