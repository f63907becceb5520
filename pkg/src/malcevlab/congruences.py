"""Congruences of finite algebras: generation, enumeration, quotients.

A congruence is an equivalence relation stable under every operation.
Partitions are normalized so each element maps to the least element of
its block; that tuple doubles as the canonical sort key.  Predicates
play no role in stability, but they do transfer to quotients: a
predicate holds on blocks iff it holds on some choice of representatives
(one per block, independently).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional, Sequence

from .algebras import FiniteAlgebra, flat_index, is_homomorphism
from .errors import AlgebraMismatch, NotAHomomorphism, NotStable


@dataclass(frozen=True)
class Congruence:
    """A stable partition of an algebra's carrier.

    block_of[x] is the least element of x's block.  Congruences over the
    same algebra compare and hash by this tuple.
    """

    algebra: FiniteAlgebra = field(compare=False)
    block_of: tuple[int, ...]

    def __post_init__(self):
        n = self.algebra.size
        if len(self.block_of) != n:
            raise ValueError("partition must cover the carrier")
        for x, r in enumerate(self.block_of):
            if not (0 <= r <= x) or self.block_of[r] != r:
                raise ValueError("block ids must be least block members")

    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x, r in enumerate(self.block_of):
            out.setdefault(r, []).append(x)
        return [out[r] for r in sorted(out)]

    def related(self, a: int, b: int) -> bool:
        return self.block_of[a] == self.block_of[b]

    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (a, b)
            for a in range(len(self.block_of))
            for b in range(len(self.block_of))
            if self.block_of[a] == self.block_of[b])

    def is_identity(self) -> bool:
        return all(r == x for x, r in enumerate(self.block_of))

    def is_full(self) -> bool:
        return all(r == 0 for r in self.block_of)

    def __str__(self):
        inner = ",".join(
            "{" + ",".join(str(x) for x in blk) + "}" for blk in self.blocks())
        return "{" + inner + "}"


def _normalize(parent: Sequence[int], n: int) -> tuple[int, ...]:
    """Collapse a union-find parent array to least-member block ids."""
    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    rep: dict[int, int] = {}
    block_of = [0] * n
    for x in range(n):
        r = find(x)
        if r not in rep:
            rep[r] = x  # first visit in ascending order is the least member
        block_of[x] = rep[r]
    return tuple(block_of)


def partition_congruence(alg: FiniteAlgebra, blocks: Iterable[Iterable[int]]) -> Congruence:
    """Congruence from explicit blocks; raises NotStable if not stable."""
    block_of = [-1] * alg.size
    for blk in blocks:
        least = min(blk)
        for x in blk:
            if block_of[x] != -1:
                raise ValueError(f"element {x} in two blocks")
            block_of[x] = least
    if any(r == -1 for r in block_of):
        raise ValueError("blocks do not cover the carrier")
    cong = Congruence(alg, tuple(block_of))
    if not is_stable_partition(alg, cong.block_of):
        raise NotStable("partition is not stable under the operations")
    return cong


def identity_congruence(alg: FiniteAlgebra) -> Congruence:
    return Congruence(alg, tuple(range(alg.size)))


def full_congruence(alg: FiniteAlgebra) -> Congruence:
    return Congruence(alg, (0,) * alg.size)


def is_stable_partition(alg: FiniteAlgebra, block_of: Sequence[int]) -> bool:
    """Does x ~ y force f(..x..) ~ f(..y..) for every operation and context?
    Checked directly from the definition over all argument tuples."""
    n = alg.size
    for name, arity in alg.sig.ops:
        table = alg.op_tables[name]
        for args in product(range(n), repeat=arity):
            v = block_of[table[flat_index(args, n)]]
            for pos in range(arity):
                x = args[pos]
                for y in range(n):
                    if y == x or block_of[y] != block_of[x]:
                        continue
                    alt = args[:pos] + (y,) + args[pos + 1:]
                    if block_of[table[flat_index(alt, n)]] != v:
                        return False
    return True


def congruence_generated_by(alg: FiniteAlgebra,
                            pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence relating every given pair.

    Union-find plus a worklist: whenever two classes merge, images of the
    merged pair under every one-variable context f(c.., _, ..c) merge too.
    Each productive merge enqueues finitely many pairs, so this
    terminates; the empty pair set yields the identity congruence.
    """
    n = alg.size
    parent = list(range(n))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    work = [(a, b) for a, b in pairs]
    for a, b in work:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"pair ({a},{b}) outside carrier")
    while work:
        a, b = work.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[max(ra, rb)] = min(ra, rb)
        for name, arity in alg.sig.ops:
            if arity == 0:
                continue
            table = alg.op_tables[name]
            for pos in range(arity):
                for context in product(range(n), repeat=arity - 1):
                    left = context[:pos] + (a,) + context[pos:]
                    right = context[:pos] + (b,) + context[pos:]
                    fa = table[flat_index(left, n)]
                    fb = table[flat_index(right, n)]
                    if find(fa) != find(fb):
                        work.append((fa, fb))
    return Congruence(alg, _normalize(parent, n))


def join(theta: Congruence, xi: Congruence) -> Congruence:
    """Least congruence containing both."""
    if theta.algebra is not xi.algebra and theta.algebra != xi.algebra:
        raise AlgebraMismatch("join needs congruences of one algebra")
    seeds = [(x, r) for x, r in enumerate(theta.block_of)]
    seeds += [(x, r) for x, r in enumerate(xi.block_of)]
    return congruence_generated_by(theta.algebra, seeds)


def all_congruences(alg: FiniteAlgebra) -> list[Congruence]:
    """Every congruence, via join-closure of the principal congruences.

    Returns the full lattice sorted by the canonical partition key.  The
    exhaustive partition filter (all_stable_partitions) computes the same
    set by brute force and serves as a cross-check.
    """
    principals: dict[tuple[int, ...], Congruence] = {}
    for a in range(alg.size):
        for b in range(a + 1, alg.size):
            c = congruence_generated_by(alg, [(a, b)])
            principals[c.block_of] = c
    found: dict[tuple[int, ...], Congruence] = dict(principals)
    ident = identity_congruence(alg)
    found[ident.block_of] = ident
    frontier = list(principals.values())
    while frontier:
        fresh = []
        for c in frontier:
            for d in list(found.values()):
                j = join(c, d)
                if j.block_of not in found:
                    found[j.block_of] = j
                    fresh.append(j)
        frontier = fresh
    return [found[k] for k in sorted(found)]


def _partitions(n: int):
    """All partitions of range(n) as block_of tuples (restricted growth)."""
    if n == 0:
        yield ()
        return
    codes = [0] * n

    def rec(i, top):
        if i == n:
            # translate growth string to least-member block ids
            first = {}
            out = [0] * n
            for x, c in enumerate(codes):
                if c not in first:
                    first[c] = x
                out[x] = first[c]
            yield tuple(out)
            return
        for c in range(top + 2):
            codes[i] = c
            yield from rec(i + 1, max(top, c))

    yield from rec(1, 0)


def all_stable_partitions(alg: FiniteAlgebra) -> list[Congruence]:
    """Brute-force congruence enumeration: filter every partition of the
    carrier by stability.  Exponential; meant as a small-size oracle."""
    out = []
    for block_of in _partitions(alg.size):
        if is_stable_partition(alg, block_of):
            out.append(Congruence(alg, block_of))
    out.sort(key=lambda c: c.block_of)
    return out


# ---------------------------------------------------------------------------
# composition and permutability

def compose_relation(theta: Congruence, xi: Congruence) -> frozenset[tuple[int, int]]:
    """Relational composition: (a, c) with a theta b and b xi c for some b."""
    if theta.algebra != xi.algebra:
        raise AlgebraMismatch("composition needs congruences of one algebra")
    xi_blocks: dict[int, list[int]] = {}
    for x, r in enumerate(xi.block_of):
        xi_blocks.setdefault(r, []).append(x)
    pairs = set()
    theta_blocks = theta.blocks()
    for blk in theta_blocks:
        reach = set()
        for b in blk:
            reach.update(xi_blocks[xi.block_of[b]])
        for a in blk:
            for c in reach:
                pairs.add((a, c))
    return frozenset(pairs)


def compose_permute(theta: Congruence, xi: Congruence):
    """(composition theta o xi, True iff theta o xi == xi o theta)."""
    forward = compose_relation(theta, xi)
    backward = compose_relation(xi, theta)
    return forward, forward == backward


def relation_is_congruence(alg: FiniteAlgebra,
                           rel: frozenset[tuple[int, int]]) -> bool:
    """Is a binary relation an equivalence stable under the operations?"""
    n = alg.size
    for a in range(n):
        if (a, a) not in rel:
            return False
    for a, b in rel:
        if (b, a) not in rel:
            return False
    member = rel.__contains__
    for a, b in rel:
        for c in range(n):
            if member((b, c)) and not member((a, c)):
                return False
    # stability: relate componentwise images
    for name, arity in alg.sig.ops:
        if arity == 0:
            continue
        table = alg.op_tables[name]
        for args in product(range(n), repeat=arity):
            v = table[flat_index(args, n)]
            for pos in range(arity):
                for y in range(n):
                    if (args[pos], y) in rel:
                        alt = args[:pos] + (y,) + args[pos + 1:]
                        if (v, table[flat_index(alt, n)]) not in rel:
                            return False
    return True


# ---------------------------------------------------------------------------
# quotients and kernels

def quotient(alg: FiniteAlgebra, theta: Congruence):
    """Quotient system and the canonical map onto it.

    Blocks are indexed in order of their least elements.  Operations act
    through representatives and are re-verified to be independent of the
    choice (NotStable otherwise).  A predicate holds on a block tuple iff
    it holds for some choice of members, one from each block.
    """
    if theta.algebra != alg:
        raise AlgebraMismatch("congruence belongs to a different algebra")
    reps = sorted(set(theta.block_of))
    index = {r: i for i, r in enumerate(reps)}
    canonical = tuple(index[r] for r in theta.block_of)
    k = len(reps)
    members: list[list[int]] = [[] for _ in range(k)]
    for x in range(alg.size):
        members[canonical[x]].append(x)
    op_tables = {}
    for name, arity in alg.sig.ops:
        table = []
        for blocks_args in product(range(k), repeat=arity):
            rep_args = tuple(reps[i] for i in blocks_args)
            value = canonical[alg.op_value(name, rep_args)]
            # well-definedness: every member choice lands in the same block
            for choice in product(*(members[i] for i in blocks_args)):
                if canonical[alg.op_value(name, choice)] != value:
                    raise NotStable(
                        f"operation {name!r} not constant on blocks")
            table.append(value)
        op_tables[name] = tuple(table)
    pred_tables = {}
    for name, arity in alg.sig.preds:
        table = []
        for blocks_args in product(range(k), repeat=arity):
            table.append(any(
                alg.pred_value(name, choice)
                for choice in product(*(members[i] for i in blocks_args))))
        pred_tables[name] = tuple(table)
    q = FiniteAlgebra(alg.sig, k, op_tables, pred_tables)
    return q, canonical


def kernel(phi: Sequence[int], a: FiniteAlgebra, b: FiniteAlgebra) -> Congruence:
    """Congruence identifying elements with equal phi-images.

    phi must be a homomorphism a -> b (verified; NotAHomomorphism if not)."""
    if not is_homomorphism(phi, a, b):
        raise NotAHomomorphism("kernel of a non-homomorphism")
    first: dict[int, int] = {}
    block_of = []
    for x in range(a.size):
        y = phi[x]
        if y not in first:
            first[y] = x
        block_of.append(first[y])
    return Congruence(a, tuple(block_of))
