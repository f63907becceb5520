"""Finite algebraic systems: carriers, operation and predicate tables.

A system's carrier is always {0, ..., size-1}.  Operation tables are
stored flat, indexed lexicographically by argument tuple: the value of
f(a_0, ..., a_{m-1}) sits at position a_0*n^(m-1) + ... + a_{m-1}.
Predicate tables use the same layout with boolean entries.  Element
names, when a file provides them, are cosmetic labels only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional, Sequence

from .errors import (
    AlgebraMismatch,
    EmptyUngeneratable,
    NotAHomomorphism,
    SearchBudgetExceeded,
    SizeOverflow,
)
from .terms import Signature

DEFAULT_PRODUCT_BOUND = 10**6
DEFAULT_HOM_BUDGET = 10**7


def flat_index(args: Sequence[int], size: int) -> int:
    idx = 0
    for a in args:
        idx = idx * size + a
    return idx


@dataclass(frozen=True)
class FiniteAlgebra:
    """A finite algebraic system over carrier {0..size-1}.

    op_tables maps each operation name to its flat table (length
    size**arity); pred_tables likewise with bools.  Tables are validated
    for totality and closure at construction.
    """

    sig: Signature
    size: int
    op_tables: dict[str, tuple[int, ...]]
    pred_tables: dict[str, tuple[bool, ...]] = field(default_factory=dict)
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("carrier must be nonempty")
        for name, arity in self.sig.ops:
            table = self.op_tables.get(name)
            if table is None:
                raise ValueError(f"missing table for operation {name!r}")
            if len(table) != self.size**arity:
                raise ValueError(f"table for {name!r} has wrong length")
            if any(not (0 <= v < self.size) for v in table):
                raise ValueError(f"table for {name!r} not closed over carrier")
        if set(self.op_tables) != {n for n, _ in self.sig.ops}:
            raise ValueError("operation tables do not match signature")
        for name, arity in self.sig.preds:
            table = self.pred_tables.get(name)
            if table is None:
                raise ValueError(f"missing table for predicate {name!r}")
            if len(table) != self.size**arity:
                raise ValueError(f"table for {name!r} has wrong length")
        if set(self.pred_tables) != {n for n, _ in self.sig.preds}:
            raise ValueError("predicate tables do not match signature")
        if self.labels is not None and len(self.labels) != self.size:
            raise ValueError("labels must cover the carrier exactly")

    def op_value(self, name: str, args: Sequence[int]) -> int:
        return self.op_tables[name][flat_index(args, self.size)]

    def pred_value(self, name: str, args: Sequence[int]) -> bool:
        return self.pred_tables[name][flat_index(args, self.size)]

    def constants(self) -> list[int]:
        """Values of all nullary operations."""
        return [self.op_tables[n][0] for n, a in self.sig.ops if a == 0]

    def elements(self) -> range:
        return range(self.size)


def algebra_from_nested(sig: Signature, size: int, ops: dict, preds: dict | None = None,
                        labels=None) -> FiniteAlgebra:
    """Build an algebra from nested tables (lists of lists for arity 2,
    flat lists for arity 1, a bare value for arity 0)."""
    flat_ops = {}
    for name, arity in sig.ops:
        t = ops[name]
        if arity == 0:
            flat_ops[name] = (int(t),)
        elif arity == 1:
            flat_ops[name] = tuple(int(v) for v in t)
        else:
            flat = []
            def walk(node, depth):
                if depth == arity:
                    flat.append(int(node))
                    return
                for sub in node:
                    walk(sub, depth + 1)
            walk(t, 0)
            flat_ops[name] = tuple(flat)
    flat_preds = {}
    if preds:
        for name, arity in sig.preds:
            t = preds[name]
            if arity == 0:
                flat_preds[name] = (bool(t),)
            else:
                flat = []
                def walkp(node, depth):
                    if depth == arity:
                        flat.append(bool(node))
                        return
                    for sub in node:
                        walkp(sub, depth + 1)
                walkp(t, 0)
                flat_preds[name] = tuple(flat)
    return FiniteAlgebra(sig, size, flat_ops, flat_preds, labels)


def is_unitary(alg: FiniteAlgebra) -> bool:
    """One element and every predicate identically true."""
    if alg.size != 1:
        return False
    return all(all(t) for t in alg.pred_tables.values())


def unitary_system(sig: Signature) -> FiniteAlgebra:
    """The one-element system over sig with all predicates true."""
    ops = {name: (0,) * 1 for name, _ in sig.ops}
    preds = {name: (True,) for name, _ in sig.preds}
    return FiniteAlgebra(sig, 1, ops, preds)


# ---------------------------------------------------------------------------
# direct products

def product_encode(coords: Sequence[int], sizes: Sequence[int]) -> int:
    """Mixed-radix code of a product element; factor 0 is most significant."""
    idx = 0
    for c, s in zip(coords, sizes):
        idx = idx * s + c
    return idx


def product_decode(idx: int, sizes: Sequence[int]) -> tuple[int, ...]:
    coords = []
    for s in reversed(sizes):
        coords.append(idx % s)
        idx //= s
    return tuple(reversed(coords))


def direct_product(factors: Sequence[FiniteAlgebra],
                   max_product: int = DEFAULT_PRODUCT_BOUND) -> FiniteAlgebra:
    """Componentwise product; a predicate holds iff it holds in every factor.

    Elements are mixed-radix codes of coordinate tuples (use
    product_encode/product_decode to convert).  Raises SizeOverflow when
    the carrier would exceed max_product.
    """
    if not factors:
        raise ValueError("need at least one factor")
    sig = factors[0].sig
    for f in factors[1:]:
        if f.sig != sig:
            raise AlgebraMismatch("product factors must share a signature")
    size = 1
    for f in factors:
        size *= f.size
        if size > max_product:
            raise SizeOverflow(
                f"product carrier exceeds {max_product}")
    sizes = [f.size for f in factors]
    op_tables = {}
    for name, arity in sig.ops:
        table = []
        for args in product(range(size), repeat=arity):
            coords = [product_decode(a, sizes) for a in args]
            value = tuple(
                f.op_value(name, tuple(c[i] for c in coords))
                for i, f in enumerate(factors))
            table.append(product_encode(value, sizes))
        op_tables[name] = tuple(table)
    pred_tables = {}
    for name, arity in sig.preds:
        table = []
        for args in product(range(size), repeat=arity):
            coords = [product_decode(a, sizes) for a in args]
            table.append(all(
                f.pred_value(name, tuple(c[i] for c in coords))
                for i, f in enumerate(factors)))
        pred_tables[name] = tuple(table)
    return FiniteAlgebra(sig, size, op_tables, pred_tables)


# ---------------------------------------------------------------------------
# generated subalgebras

def generate_subalgebra(alg: FiniteAlgebra, seed: Iterable[int]) -> list[int]:
    """Least subset containing seed and all constants, closed under the
    operations.  Computed as the chain X_0 = seed+constants,
    X_{k+1} = X_k plus one-step operation images, which stabilizes after
    at most alg.size steps.  Returned sorted.
    """
    current = set(seed)
    for x in current:
        if not (0 <= x < alg.size):
            raise ValueError(f"seed element {x} outside carrier")
    current |= set(alg.constants())
    if not current:
        raise EmptyUngeneratable(
            "empty seed and no constants: no least subalgebra exists")
    while True:
        new = set()
        elems = sorted(current)
        for name, arity in alg.sig.ops:
            if arity == 0:
                continue
            table = alg.op_tables[name]
            n = alg.size
            for args in product(elems, repeat=arity):
                v = table[flat_index(args, n)]
                if v not in current:
                    new.add(v)
        if not new:
            return sorted(current)
        current |= new


def subalgebra_as_algebra(alg: FiniteAlgebra, carrier: Sequence[int]) -> FiniteAlgebra:
    """Restrict alg to a closed carrier subset, reindexed to 0..k-1 in
    carrier order.  Predicates restrict pointwise."""
    index = {e: i for i, e in enumerate(carrier)}
    k = len(carrier)
    op_tables = {}
    for name, arity in alg.sig.ops:
        table = []
        for args in product(carrier, repeat=arity):
            v = alg.op_value(name, args)
            if v not in index:
                raise ValueError("carrier is not closed under operations")
            table.append(index[v])
        op_tables[name] = tuple(table)
    pred_tables = {}
    for name, arity in alg.sig.preds:
        pred_tables[name] = tuple(
            alg.pred_value(name, args) for args in product(carrier, repeat=arity))
    labels = None
    if alg.labels is not None:
        labels = tuple(alg.labels[e] for e in carrier)
    return FiniteAlgebra(alg.sig, k, op_tables, pred_tables, labels)


# ---------------------------------------------------------------------------
# homomorphisms

def is_homomorphism(phi: Sequence[int], a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    """phi preserves every operation and implies every predicate:
    phi(f(x...)) = f(phi(x)...) and p(x...) true in a forces it in b."""
    if a.sig != b.sig:
        raise AlgebraMismatch("homomorphisms need a common signature")
    if len(phi) != a.size:
        return False
    for name, arity in a.sig.ops:
        for args in product(range(a.size), repeat=arity):
            if phi[a.op_value(name, args)] != b.op_value(
                    name, tuple(phi[x] for x in args)):
                return False
    for name, arity in a.sig.preds:
        for args in product(range(a.size), repeat=arity):
            if a.pred_value(name, args) and not b.pred_value(
                    name, tuple(phi[x] for x in args)):
                return False
    return True


def is_strong_homomorphism(phi: Sequence[int], a: FiniteAlgebra,
                           b: FiniteAlgebra) -> bool:
    """Surjective homomorphism such that every predicate tuple true in b
    has a true preimage tuple in a."""
    if not is_homomorphism(phi, a, b):
        return False
    if set(phi) != set(range(b.size)):
        return False
    fibers = [[x for x in range(a.size) if phi[x] == y] for y in range(b.size)]
    for name, arity in b.sig.preds:
        for args in product(range(b.size), repeat=arity):
            if b.pred_value(name, args):
                if not any(
                        a.pred_value(name, pre)
                        for pre in product(*(fibers[y] for y in args))):
                    return False
    return True


def _generating_sequence(alg: FiniteAlgebra):
    """A small generating set plus a derivation of every carrier element.

    Returns (gens, steps) where steps is a list of (element, how) covering
    the whole carrier in derivation order; how is ('gen', i) for the i-th
    generator, ('const', opname) for a constant, or ('op', name, args).
    """
    gens: list[int] = []
    known: dict[int, tuple] = {}
    steps: list[tuple[int, tuple]] = []

    def close():
        changed = True
        while changed:
            changed = False
            elems = sorted(known)
            for name, arity in alg.sig.ops:
                if arity == 0:
                    v = alg.op_tables[name][0]
                    if v not in known:
                        known[v] = ("const", name)
                        steps.append((v, known[v]))
                        changed = True
                    continue
                for args in product(elems, repeat=arity):
                    v = alg.op_value(name, args)
                    if v not in known:
                        known[v] = ("op", name, args)
                        steps.append((v, known[v]))
                        changed = True

    close()
    for x in range(alg.size):
        if x not in known:
            gens.append(x)
            known[x] = ("gen", len(gens) - 1)
            steps.append((x, known[x]))
            close()
    return gens, steps


def find_homomorphisms(a: FiniteAlgebra, b: FiniteAlgebra, *, strong: bool = False,
                       limit: Optional[int] = None,
                       budget: int = DEFAULT_HOM_BUDGET) -> list[tuple[int, ...]]:
    """All homomorphisms a -> b as image tuples, sorted lexicographically.

    Searches over images of a generating set of a, propagating along the
    derivation of each remaining element, then verifies the full
    homomorphism condition (and the strong condition when requested).
    limit truncates the sorted result.  Raises SearchBudgetExceeded when
    b.size ** #generators exceeds the budget.
    """
    if a.sig != b.sig:
        raise AlgebraMismatch("homomorphisms need a common signature")
    gens, steps = _generating_sequence(a)
    if b.size**len(gens) > budget:
        raise SearchBudgetExceeded(
            f"{b.size}^{len(gens)} generator images exceed budget {budget}")
    found = []
    for images in product(range(b.size), repeat=len(gens)):
        phi: list[Optional[int]] = [None] * a.size
        for element, how in steps:
            if how[0] == "gen":
                phi[element] = images[how[1]]
            elif how[0] == "const":
                phi[element] = b.op_tables[how[1]][0]
            else:
                _, name, args = how
                phi[element] = b.op_value(name, tuple(phi[x] for x in args))
        mapping = tuple(phi)  # total: steps cover the carrier
        if is_homomorphism(mapping, a, b):
            if not strong or is_strong_homomorphism(mapping, a, b):
                found.append(mapping)
    found.sort()
    if limit is not None:
        found = found[:limit]
    return found


def find_isomorphism(a: FiniteAlgebra, b: FiniteAlgebra
                     ) -> Optional[tuple[int, ...]]:
    """A bijective map preserving and reflecting all tables, or None.

    Backtracks over images element by element; a cheap per-element
    invariant (the sorted content of an element's rows and unary
    values) prunes candidates before the full table check.
    """
    if a.sig != b.sig or a.size != b.size:
        return None

    def profile(alg: FiniteAlgebra, x: int):
        parts = []
        for name, arity in alg.sig.ops:
            table = alg.op_tables[name]
            if arity == 1:
                parts.append(("u", name, table[x] == x))
            elif arity == 2:
                n = alg.size
                row = table[x * n:(x + 1) * n]
                parts.append(("d", name, table[x * n + x] == x,
                              tuple(sorted(row.count(v) for v in set(row)))))
        for name, arity in alg.sig.preds:
            if arity == 1:
                parts.append(("p", name, alg.pred_tables[name][x]))
        return tuple(parts)

    prof_a = [profile(a, x) for x in range(a.size)]
    prof_b = [profile(b, x) for x in range(b.size)]
    if sorted(prof_a) != sorted(prof_b):
        return None
    n = a.size
    image: list[Optional[int]] = [None] * n
    used = [False] * n

    def consistent(x: int) -> bool:
        assigned = [i for i in range(n) if image[i] is not None]
        for name, arity in a.sig.ops:
            for args in product(assigned, repeat=arity):
                if x not in args and arity > 0:
                    continue
                value = a.op_value(name, args)
                if image[value] is None:
                    continue
                mapped = tuple(image[i] for i in args)
                if b.op_value(name, mapped) != image[value]:
                    return False
        for name, arity in a.sig.preds:
            for args in product(assigned, repeat=arity):
                if x not in args and arity > 0:
                    continue
                mapped = tuple(image[i] for i in args)
                if a.pred_value(name, args) != b.pred_value(name, mapped):
                    return False
        return True

    def place(x: int) -> bool:
        if x == n:
            return True
        for y in range(n):
            if used[y] or prof_a[x] != prof_b[y]:
                continue
            image[x] = y
            used[y] = True
            if consistent(x) and place(x + 1):
                return True
            image[x] = None
            used[y] = False
        return False

    if not place(0):
        return None
    mapping = tuple(image)
    if not is_homomorphism(mapping, a, b):
        return None
    return mapping
