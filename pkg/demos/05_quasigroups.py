"""Quasigroups from Latin squares: divisions, translations, rectification.

A Latin square is exactly the multiplication table of a quasigroup;
both divisions are read off the rows and columns.  Every quasigroup
carries a Mal'cev polynomial built from its divisions, its translation
groups act transitively, and a right unit makes the coordinate swap
(x, y) -> (x, x*y) a rectification of the square.
"""

from malcevlab import (equasigroup_from_latin, eval_term, latin_square,
                       malcev_polynomial, multiplication_group,
                       rectification_check, to_algebra)
from malcevlab.errors import NoRightUnit

UNIT_FREE = ((1, 0, 2),
             (0, 2, 1),
             (2, 1, 0))


def main():
    square = latin_square(UNIT_FREE)
    eq = equasigroup_from_latin(square)
    n = eq.size
    print(f"order-{n} Latin square with no one-sided unit "
          f"(left: {eq.left_unit}, right: {eq.right_unit})")
    for a in range(n):
        print("  " + " ".join(str(eq.mul[a * n + x]) for x in range(n)))

    poly = malcev_polynomial(eq)
    alg = to_algebra(eq)
    print(f"\nanchored Mal'cev polynomial: {poly}")
    for anchor in range(n):
        ok = all(eval_term(poly, (x, x, z, anchor), alg) == z
                 and eval_term(poly, (x, z, z, anchor), alg) == x
                 for x in range(n) for z in range(n))
        print(f"  anchor {anchor}: both identities hold = {ok}")

    for side in ("left", "right"):
        grp = multiplication_group(eq, side=side)
        print(f"{side} translation group: {len(grp.closure)} permutations, "
              f"transitive = {grp.transitive}")

    try:
        rectification_check(eq)
    except NoRightUnit as exc:
        print(f"\nrectification is refused here: {exc}")

    cyclic = latin_square(tuple(tuple((a + b) % 4 for b in range(4))
                                for a in range(4)))
    unital = equasigroup_from_latin(cyclic)
    report = rectification_check(unital)
    print(f"\nthe 4-cycle table has right unit {report.unit}; "
          f"rectification holds: {report.holds}")
    print(f"  swap is involutive: {report.forward_then_back} and "
          f"{report.back_then_forward}")
    print(f"  fixes the first coordinate: {report.keeps_first}; "
          f"diagonal lands on the unit column: {report.diagonal_to_unit}")


if __name__ == "__main__":
    main()
