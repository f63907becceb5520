"""Shared fixtures: small concrete algebras and generators for them."""

from __future__ import annotations

import random
from itertools import permutations

import pytest

from malcevlab import FiniteAlgebra, Signature

GROUP_SIG = Signature(ops=(("mul", 2), ("inv", 1), ("e", 0)))
MEET_SIG = Signature(ops=(("meet", 2),))
GROUPOID_SIG = Signature(ops=(("mul", 2),))


def cyclic_group(n: int) -> FiniteAlgebra:
    mul = tuple((a + b) % n for a in range(n) for b in range(n))
    inv = tuple((-a) % n for a in range(n))
    return FiniteAlgebra(GROUP_SIG, n, {"mul": mul, "inv": inv, "e": (0,)})


def klein_group() -> FiniteAlgebra:
    """Z2 x Z2 with elements numbered by (a, b) -> 2a + b."""
    def op(x, y):
        return (((x >> 1) ^ (y >> 1)) << 1) | ((x & 1) ^ (y & 1))
    mul = tuple(op(a, b) for a in range(4) for b in range(4))
    return FiniteAlgebra(GROUP_SIG, 4,
                         {"mul": mul, "inv": tuple(range(4)), "e": (0,)})


def symmetric_group_3() -> FiniteAlgebra:
    """Permutations of {0,1,2} in lexicographic order; (p*q)(i) = p[q[i]]."""
    perms = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    mul = tuple(index[tuple(p[q[i]] for i in range(3))]
                for p in perms for q in perms)
    inv = tuple(index[tuple(sorted(range(3), key=lambda i: p[i]))]
                for p in perms)
    return FiniteAlgebra(GROUP_SIG, 6, {"mul": mul, "inv": inv, "e": (0,)})


def chain_semilattice(n: int) -> FiniteAlgebra:
    meet = tuple(min(a, b) for a in range(n) for b in range(n))
    return FiniteAlgebra(MEET_SIG, n, {"meet": meet})


TANGLE5_ROWS = ((0, 1, 2, 3, 4),
                (1, 2, 1, 1, 0),
                (2, 1, 1, 1, 0),
                (3, 1, 1, 1, 0),
                (4, 0, 0, 0, 1))


def tangle5() -> FiniteAlgebra:
    """Commutative unital groupoid with a non-permuting congruence pair."""
    mul = tuple(v for row in TANGLE5_ROWS for v in row)
    return FiniteAlgebra(GROUPOID_SIG, 5, {"mul": mul})


def groupoid_from_rows(rows) -> FiniteAlgebra:
    n = len(rows)
    mul = tuple(v for row in rows for v in row)
    return FiniteAlgebra(GROUPOID_SIG, n, {"mul": mul})


def all_latin_squares(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Every n x n Latin square, rows filled in lexicographic order."""
    squares: list[tuple[tuple[int, ...], ...]] = []
    rows: list[tuple[int, ...]] = []
    col_used: list[set[int]] = [set() for _ in range(n)]

    def fill_row(r: int, c: int, row: list[int], row_used: set[int]):
        if c == n:
            rows.append(tuple(row))
            for i, v in enumerate(row):
                col_used[i].add(v)
            if r + 1 == n:
                squares.append(tuple(rows))
            else:
                fill_row(r + 1, 0, [0] * n, set())
            rows.pop()
            for i, v in enumerate(row):
                col_used[i].remove(v)
            return
        for v in range(n):
            if v in row_used or v in col_used[c]:
                continue
            row[c] = v
            row_used.add(v)
            fill_row(r, c + 1, row, row_used)
            row_used.remove(v)

    fill_row(0, 0, [0] * n, set())
    return squares


def random_square(rng: random.Random, n: int) -> tuple[tuple[int, ...], ...]:
    """A Latin square of order n: the Z_n table with rows, columns and
    symbols independently permuted."""
    rho = list(range(n))
    gamma = list(range(n))
    sigma = list(range(n))
    rng.shuffle(rho)
    rng.shuffle(gamma)
    rng.shuffle(sigma)
    return tuple(tuple(sigma[(rho[r] + gamma[c]) % n] for c in range(n))
                 for r in range(n))


def random_algebra(rng: random.Random, max_size: int = 5) -> FiniteAlgebra:
    """A random finite system: a few tables over a small random carrier."""
    size = rng.randint(1, max_size)
    ops = []
    tables = {}
    for i in range(rng.randint(1, 3)):
        arity = rng.randint(0, 2)
        name = f"f{i}"
        ops.append((name, arity))
        tables[name] = tuple(rng.randrange(size)
                             for _ in range(size**arity))
    preds = []
    ptables = {}
    for i in range(rng.randint(0, 2)):
        arity = rng.randint(1, 2)
        name = f"p{i}"
        preds.append((name, arity))
        ptables[name] = tuple(rng.random() < 0.5
                              for _ in range(size**arity))
    sig = Signature(ops=tuple(ops), preds=tuple(preds))
    return FiniteAlgebra(sig, size, tables, ptables)


UNIT_FREE_ROWS = ((1, 0, 2), (0, 2, 1), (2, 1, 0))


@pytest.fixture
def z2():
    return cyclic_group(2)


@pytest.fixture
def z3():
    return cyclic_group(3)


@pytest.fixture
def z4():
    return cyclic_group(4)


@pytest.fixture
def z6():
    return cyclic_group(6)


@pytest.fixture
def klein():
    return klein_group()


@pytest.fixture
def s3():
    return symmetric_group_3()


@pytest.fixture
def chain2():
    return chain_semilattice(2)


@pytest.fixture
def chain3():
    return chain_semilattice(3)


@pytest.fixture
def tangle():
    return tangle5()
