"""Homomorphisms, direct products, and generated subalgebras.

A homomorphism is a carrier map preserving every operation table and
carrying every true predicate forward; a strong homomorphism is onto
and also reflects predicates.  Products interpret operations pointwise,
and subalgebra generation closes a seed set under all operations.
"""

from pathlib import Path

from malcevlab import (direct_product, find_homomorphisms, find_isomorphism,
                       generate_subalgebra, is_strong_homomorphism,
                       load_algebra, product_decode, subalgebra_as_algebra)

DATA = Path(__file__).resolve().parent / "data"


def main():
    z4 = load_algebra(DATA / "z4.alg")
    z2 = load_algebra(DATA / "z2.alg")

    homs = find_homomorphisms(z4, z2)
    print(f"homomorphisms from the 4-cycle to the 2-cycle: {len(homs)}")
    for h in homs:
        onto = len(set(h)) == z2.size
        strong = is_strong_homomorphism(h, z4, z2)
        print(f"  {h}  onto={onto}  strong={strong}")

    square = direct_product([z2, z2])
    print(f"\nthe product of two 2-cycles has {square.size} elements")
    for idx in range(square.size):
        print(f"  element {idx} = coordinates {product_decode(idx, [2, 2])}")
    print(f"  isomorphic to the 4-cycle: "
          f"{find_isomorphism(square, z4) is not None}")

    # the diagonal generates a proper subalgebra of the square
    diagonal = generate_subalgebra(square, [3])
    sub = subalgebra_as_algebra(square, diagonal)
    print(f"\nelement 3 generates {diagonal} inside the product; "
          f"that subalgebra has size {sub.size} "
          f"(isomorphic to the 2-cycle: "
          f"{find_isomorphism(sub, z2) is not None})")


if __name__ == "__main__":
    main()
