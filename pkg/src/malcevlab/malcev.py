"""Mal'cev-style term searches over finite algebras.

The searches walk the derived operations of an algebra breadth-first by
term depth: level 0 holds the variable projections, and level d+1 holds
every basic operation applied to vectors from earlier levels.  Distinct
derived operations are deduplicated by their full value table, so each
table is represented by the first term that produced it.  Qualification
(the Mal'cev identities, or the biternary identities) depends only on
the value table, which makes the deduplicated search exact as a decision
procedure within the depth bound; deterministic work budgets cap the
exploration, and a budget-truncated search reports absence within
bounds.  Every returned witness is re-verified exhaustively through the
term evaluator, independently of the table arithmetic used during the
search.

TermEnumeration, by contrast, enumerates raw terms one by one in the
canonical order (size, then root symbol, then children) without any
deduplication; it is the substrate for corpus generation and small
exhaustive checks, not for deep searches.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, product
from typing import Iterator, Optional, Sequence

import numpy as np

from .algebras import FiniteAlgebra, flat_index
from .congruences import Congruence, all_congruences, compose_permute
from .terms import App, Signature, Term, Var, eval_term, term_depth, term_key

DEFAULT_DEPTH = 4
DEFAULT_TABLE_BUDGET = 150_000
DEFAULT_CANDIDATE_BUDGET = 2_000_000


# ---------------------------------------------------------------------------
# raw term enumeration

class TermEnumeration:
    """All terms over sig in x0..x{var_count-1}, canonically ordered.

    Terms are produced by size (node count), ties broken by root symbol
    (variables first, then operations in signature order) and then by
    children, recursively.  Iteration stops once both bounds (max_depth,
    max_size) are exhausted; each in-bounds term appears exactly once.
    Intended for small bounds: the term count grows doubly fast in depth.
    """

    def __init__(self, sig: Signature, max_depth: int = DEFAULT_DEPTH,
                 var_count: int = 4, max_size: int = 8):
        self.sig = sig
        self.max_depth = max_depth
        self.var_count = var_count
        self.max_size = max_size
        self._by_size: list[list[Term]] = [[]]  # index 0 unused

    def _terms_of_size(self, s: int) -> list[Term]:
        while len(self._by_size) <= s:
            self._by_size.append(self._build(len(self._by_size)))
        return self._by_size[s]

    def _build(self, s: int) -> list[Term]:
        out: list[Term] = []
        if s == 1:
            out.extend(Var(i) for i in range(self.var_count))
            out.extend(App(name) for name, arity in self.sig.ops if arity == 0)
            return out
        for name, arity in self.sig.ops:
            if arity == 0 or arity > s - 1:
                continue
            for children in self._child_tuples(arity, s - 1):
                out.append(App(name, children))
        # sort is stable and cheap; children tuples already come out in
        # canonical order per operation, sizes are all s
        out.sort(key=lambda t: term_key(t, self.sig))
        return out

    def _child_tuples(self, k: int, total: int):
        if k == 1:
            for t in self._terms_of_size(total):
                yield (t,)
            return
        for first in range(1, total - (k - 1) + 1):
            for head in self._terms_of_size(first):
                for rest in self._child_tuples(k - 1, total - first):
                    yield (head,) + rest

    def __iter__(self) -> Iterator[Term]:
        for s in range(1, self.max_size + 1):
            for t in self._terms_of_size(s):
                if term_depth(t) <= self.max_depth:
                    yield t


# ---------------------------------------------------------------------------
# derived-operation breadth-first search

class _TableSearch:
    """Breadth-first closure of k-ary derived operations of an algebra.

    Vectors are value tables over all n^k assignments (x0 most
    significant).  reps/terms/levels grow in discovery order; the first
    term reaching a table is kept as its representative.
    """

    def __init__(self, alg: FiniteAlgebra, var_count: int,
                 table_budget: int = DEFAULT_TABLE_BUDGET,
                 candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
                 max_term_size: Optional[int] = None):
        self.alg = alg
        self.k = var_count
        self.n = alg.size
        self.length = self.n**self.k
        self.table_budget = table_budget
        self.candidate_budget = candidate_budget
        self.max_term_size = max_term_size
        self.candidates_used = 0
        self.truncated = False
        self.vectors: list[np.ndarray] = []
        self.terms: list[Term] = []
        self.keys: list[tuple] = []
        self.sizes: list[int] = []
        self.levels: list[int] = []
        self.index: dict[bytes, int] = {}
        self.op_arrays = {
            name: np.array(alg.op_tables[name], dtype=np.int64)
            for name, _ in alg.sig.ops}
        self.digits = [
            ((np.arange(self.length) // (self.n**(self.k - 1 - i))) % self.n)
            .astype(np.uint8)
            for i in range(self.k)]
        self._level_start: dict[int, int] = {}
        for i in range(self.k):
            self._add(self.digits[i], Var(i), 0)

    def _add(self, vec: np.ndarray, term: Term, level: int) -> Optional[int]:
        key = vec.tobytes()
        idx = self.index.get(key)
        if idx is not None:
            # a table keeps the canonically least term among the
            # candidates of its discovery level
            if self.levels[idx] == level:
                ck = term_key(term, self.alg.sig)
                if ck < self.keys[idx]:
                    self.terms[idx] = term
                    self.keys[idx] = ck
                    self.sizes[idx] = ck[0]
            return None
        idx = len(self.vectors)
        self.vectors.append(vec)
        self.terms.append(term)
        ck = term_key(term, self.alg.sig)
        self.keys.append(ck)
        self.sizes.append(ck[0])
        self.levels.append(level)
        self.index[key] = idx
        return idx

    def _spend(self, count: int) -> bool:
        """Charge the candidate budget; False once exhausted."""
        if self.truncated:
            return False
        self.candidates_used += count
        if (self.candidates_used > self.candidate_budget
                or len(self.vectors) > self.table_budget):
            self.truncated = True
            return False
        return True

    def run_level(self, depth: int) -> list[int]:
        """Expand one level; returns indices of newly found tables."""
        frontier_start = 0 if depth == 1 else self._level_start[depth - 1]
        start = len(self.vectors)
        n = self.n
        for name, arity in self.alg.sig.ops:
            if self.truncated:
                break
            ftab = self.op_arrays[name]
            if arity == 0:
                if depth == 1:
                    vec = np.full(self.length, self.alg.op_tables[name][0],
                                  dtype=np.uint8)
                    if self._spend(1):
                        self._add(vec, App(name), 1)
                continue
            if arity == 1:
                lo, hi = frontier_start, start
                cap = self.max_term_size
                for a in range(lo, hi):
                    if cap is not None and self.sizes[a] + 1 > cap:
                        continue
                    if not self._spend(1):
                        break
                    vec = ftab[self.vectors[a].astype(np.int64)].astype(np.uint8)
                    self._add(vec, App(name, (self.terms[a],)), depth)
                continue
            if arity == 2:
                self._binary_level(name, ftab, frontier_start, start, depth)
                continue
            self._generic_level(name, arity, ftab, frontier_start, start, depth)
        self._level_start[depth] = start
        return list(range(start, len(self.vectors)))

    def _binary_level(self, name, ftab, f0, r, depth):
        n = self.n
        cap = self.max_term_size
        # blocks: (frontier x all), then (old x frontier)
        for a_range, b_range in (((f0, r), (0, r)), ((0, f0), (f0, r))):
            for a in range(*a_range):
                va = self.vectors[a].astype(np.int64) * n
                b_lo, b_hi = b_range
                if cap is not None:
                    allowed = cap - 1 - self.sizes[a]
                    b_list: Sequence[int] = [
                        b for b in range(b_lo, b_hi)
                        if self.sizes[b] <= allowed]
                else:
                    b_list = range(b_lo, b_hi)
                slab = 4096
                for c0 in range(0, len(b_list), slab):
                    batch = list(b_list[c0:c0 + slab])
                    if not self._spend(len(batch)):
                        return
                    block = np.stack([self.vectors[b] for b in batch])
                    out = ftab[va[None, :] + block].astype(np.uint8)
                    ta = self.terms[a]
                    for j, b in enumerate(batch):
                        self._add(out[j], App(name, (ta, self.terms[b])), depth)

    def _generic_level(self, name, arity, ftab, f0, r, depth):
        n = self.n
        cap = self.max_term_size
        for lead in range(arity):
            ranges = [range(0, f0)] * lead + [range(f0, r)] + \
                     [range(0, r)] * (arity - 1 - lead)
            for combo in product(*ranges):
                if cap is not None and (
                        1 + sum(self.sizes[i] for i in combo) > cap):
                    continue
                if not self._spend(1):
                    return
                idx = self.vectors[combo[0]].astype(np.int64)
                for b in combo[1:]:
                    idx = idx * n + self.vectors[b]
                vec = ftab[idx].astype(np.uint8)
                self._add(vec, App(name, tuple(self.terms[i] for i in combo)),
                          depth)


def _canonical_min(search: _TableSearch, indices: list[int]) -> Optional[int]:
    return min(indices, key=lambda i: search.keys[i], default=None)


@dataclass(frozen=True)
class MalcevSearchResult:
    """Outcome of a bounded Mal'cev term search.

    term is None when no derived operation within the depth bound (and
    work budget) satisfies the identities; truncated reports whether the
    budget cut the exploration short of the full depth.
    """

    term: Optional[Term]
    truncated: bool
    tables_explored: int
    max_depth: int


def malcev_search(alg: FiniteAlgebra, max_depth: int = DEFAULT_DEPTH, *,
                  second_identity: str = "x",
                  table_budget: int = DEFAULT_TABLE_BUDGET,
                  candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
                  max_term_size: Optional[int] = None) -> MalcevSearchResult:
    """Search for a ternary term P with P(x,x,z) = z and P(x,z,z) = x.

    second_identity selects the expected value of P(x,z,z): "x" is the
    standard Mal'cev condition; "z" yields a degenerate condition that
    the projection onto the third variable already satisfies.  The
    search scans derived ternary operations breadth-first by depth and
    returns, from the first depth level containing any qualifying
    operation, the representative term least in the canonical order.
    max_term_size additionally prunes candidates whose representative
    term would exceed that node count.  The witness is re-verified
    through the term evaluator on all triples.
    """
    if second_identity not in ("x", "z"):
        raise ValueError("second_identity must be 'x' or 'z'")
    search = _TableSearch(alg, 3, table_budget, candidate_budget,
                          max_term_size)
    d0, d1, d2 = search.digits
    m1 = np.where(d0 == d1)[0]
    t1 = d2[m1]
    m2 = np.where(d1 == d2)[0]
    t2 = d0[m2] if second_identity == "x" else d2[m2]

    def qualifies(vec: np.ndarray) -> bool:
        return bool(np.all(vec[m1] == t1) and np.all(vec[m2] == t2))

    new = list(range(len(search.vectors)))
    depth = 0
    while True:
        hits = [i for i in new if qualifies(search.vectors[i])]
        if hits:
            best = _canonical_min(search, hits)
            term = search.terms[best]
            _verify_malcev(alg, term, second_identity)
            return MalcevSearchResult(term, search.truncated,
                                      len(search.vectors), max_depth)
        depth += 1
        if depth > max_depth or search.truncated:
            return MalcevSearchResult(None, search.truncated,
                                      len(search.vectors), max_depth)
        new = search.run_level(depth)


def _verify_malcev(alg: FiniteAlgebra, term: Term, second_identity: str):
    for x in range(alg.size):
        for z in range(alg.size):
            v1 = eval_term(term, (x, x, z), alg)
            if v1 != z:
                raise AssertionError("witness fails P(x,x,z) = z")
            v2 = eval_term(term, (x, z, z), alg)
            expected = x if second_identity == "x" else z
            if v2 != expected:
                raise AssertionError("witness fails the second identity")


def find_malcev_term(alg: FiniteAlgebra, max_depth: int = DEFAULT_DEPTH, *,
                     second_identity: str = "x",
                     table_budget: int = DEFAULT_TABLE_BUDGET,
                     candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
                     max_term_size: Optional[int] = None) -> Optional[Term]:
    """The witness term from malcev_search, or None (absence is a value)."""
    return malcev_search(
        alg, max_depth, second_identity=second_identity,
        table_budget=table_budget, candidate_budget=candidate_budget,
        max_term_size=max_term_size).term


# ---------------------------------------------------------------------------
# permutability cross-check

@dataclass(frozen=True)
class PermutabilityReport:
    """Joint view of the congruence lattice and the term search.

    verdict is "consistent" when a found term coincides with full
    pairwise permutability, or when absence coincides with a
    non-permuting pair; "inconclusive" when nothing was found but all
    pairs permute (the bounded search proves nothing); "violation" when
    a verified term coexists with a non-permuting pair (impossible:
    would indicate a defect in one of the two computations).
    """

    term: Optional[Term]
    truncated: bool
    congruence_count: int
    non_permuting: tuple[tuple[Congruence, Congruence], ...]
    verdict: str


def check_permutability_theorem(alg: FiniteAlgebra,
                                max_depth: int = DEFAULT_DEPTH, *,
                                table_budget: int = DEFAULT_TABLE_BUDGET,
                                candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
                                max_term_size: Optional[int] = None
                                ) -> PermutabilityReport:
    """Compare find_malcev_term against pairwise congruence permutability."""
    congs = all_congruences(alg)
    bad = []
    for i in range(len(congs)):
        for j in range(i + 1, len(congs)):
            _, ok = compose_permute(congs[i], congs[j])
            if not ok:
                bad.append((congs[i], congs[j]))
    result = malcev_search(alg, max_depth, table_budget=table_budget,
                           candidate_budget=candidate_budget,
                           max_term_size=max_term_size)
    if result.term is not None:
        verdict = "violation" if bad else "consistent"
    else:
        verdict = "consistent" if bad else "inconclusive"
    return PermutabilityReport(result.term, result.truncated, len(congs),
                               tuple(bad), verdict)


# ---------------------------------------------------------------------------
# biternary pairs

@dataclass(frozen=True)
class BiternaryPair:
    """Derived ternary operations with a(x,x,y) = y and the two
    mutual-inverse laws a(b(x,y,z),y,z) = x, b(a(x,y,z),y,z) = x."""

    alpha: Term
    beta: Term


@dataclass(frozen=True)
class BiternarySearchResult:
    """Outcome of a bounded biternary-pair search.

    pair is None when no (alpha, beta) pair exists within the depth
    bound (or the scan truncated; see truncated)."""

    pair: Optional[BiternaryPair]
    truncated: bool
    tables_explored: int
    max_depth: int


def detect_biternary(alg: FiniteAlgebra, max_depth: int = DEFAULT_DEPTH, *,
                     table_budget: int = DEFAULT_TABLE_BUDGET,
                     candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
                     max_term_size: Optional[int] = None
                     ) -> BiternarySearchResult:
    """First (alpha, beta) pair of derived ternary operations, ordered by
    the canonical term order on alpha then beta, or None within bounds.

    The pair found at the earliest depth level is returned; among pairs
    first complete at that level, the least by (alpha key, beta key)
    wins.  Pair checks share the candidate budget of the underlying
    table search, so on very rich algebras the scan can truncate before
    settling the question."""
    search = _TableSearch(alg, 3, table_budget, candidate_budget,
                          max_term_size)
    n = alg.size
    d0, d1, d2 = (d.astype(np.int64) for d in search.digits)
    diag = np.where(d0 == d1)[0]
    diag_t = search.digits[2][diag]
    tail = d1 * n + d2

    def is_alpha(vec: np.ndarray) -> bool:
        return bool(np.all(vec[diag] == diag_t))

    def cross(va: np.ndarray, vb: np.ndarray) -> bool:
        inner = vb.astype(np.int64) * (n * n) + tail
        if not np.array_equal(va[inner], search.digits[0]):
            return False
        inner = va.astype(np.int64) * (n * n) + tail
        return bool(np.array_equal(vb[inner], search.digits[0]))

    def key(i: int):
        return search.keys[i]

    alphas: list[int] = []
    prev_total = 0
    new = list(range(len(search.vectors)))
    depth = 0
    while True:
        new_alphas = [i for i in new if is_alpha(search.vectors[i])]
        total = len(search.vectors)
        # only pairs completed at this level: a new alpha against any
        # table, or an older alpha against a new table
        fresh_pairs = chain(
            ((a, b) for a in new_alphas for b in range(total)),
            ((a, b) for a in alphas for b in range(prev_total, total)))
        hits = []
        for a, b in fresh_pairs:
            if not search._spend(1):
                break
            if cross(search.vectors[a], search.vectors[b]):
                hits.append((a, b))
        if hits:
            a, b = min(hits, key=lambda p: (key(p[0]), key(p[1])))
            pair = BiternaryPair(search.terms[a], search.terms[b])
            _verify_biternary(alg, pair)
            return BiternarySearchResult(pair, search.truncated,
                                         len(search.vectors), max_depth)
        alphas.extend(new_alphas)
        prev_total = total
        depth += 1
        if depth > max_depth or search.truncated:
            return BiternarySearchResult(None, search.truncated,
                                         len(search.vectors), max_depth)
        new = search.run_level(depth)


def find_biternary_pair(alg: FiniteAlgebra, max_depth: int = DEFAULT_DEPTH, *,
                        table_budget: int = DEFAULT_TABLE_BUDGET,
                        candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
                        max_term_size: Optional[int] = None
                        ) -> Optional[BiternaryPair]:
    """The pair from detect_biternary, or None when not found in bounds."""
    return detect_biternary(
        alg, max_depth, table_budget=table_budget,
        candidate_budget=candidate_budget, max_term_size=max_term_size).pair


def _verify_biternary(alg: FiniteAlgebra, pair: BiternaryPair):
    for x in range(alg.size):
        for y in range(alg.size):
            if eval_term(pair.alpha, (x, x, y), alg) != y:
                raise AssertionError("alpha(x,x,y) = y fails")
            for z in range(alg.size):
                w = eval_term(pair.beta, (x, y, z), alg)
                if eval_term(pair.alpha, (w, y, z), alg) != x:
                    raise AssertionError("alpha(beta(x,y,z),y,z) = x fails")
                w = eval_term(pair.alpha, (x, y, z), alg)
                if eval_term(pair.beta, (w, y, z), alg) != x:
                    raise AssertionError("beta(alpha(x,y,z),y,z) = x fails")


def malcev_from_biternary(alg: FiniteAlgebra, pair: BiternaryPair,
                          anchor: int) -> tuple[Term, bool]:
    """P(x,y,z) = beta(alpha(x, y, a), z, a) for a fixed anchor a.

    Returns the composite as a term over four variables (x3 standing for
    the anchor) together with the exhaustive check of the two Mal'cev
    identities at that anchor."""
    a_term = _substitute(pair.alpha, (Var(0), Var(1), Var(3)))
    composite = _substitute(pair.beta, (a_term, Var(2), Var(3)))
    ok = True
    for x in range(alg.size):
        for z in range(alg.size):
            if eval_term(composite, (x, x, z, anchor), alg) != z:
                ok = False
            if eval_term(composite, (x, z, z, anchor), alg) != x:
                ok = False
    return composite, ok


def _substitute(t: Term, replacements: tuple[Term, ...]) -> Term:
    if isinstance(t, Var):
        return replacements[t.index]
    return App(t.op, tuple(_substitute(a, replacements) for a in t.args))


# ---------------------------------------------------------------------------
# translation groups

def composition_closure(maps, size: int) -> frozenset:
    """Close a family of self-maps of 0..size-1 under composition.

    The identity is always included.  For bijective generators over a
    finite carrier the result is a permutation group: some power of
    each generator is its inverse.
    """
    identity = tuple(range(size))
    closure = {identity}
    closure.update(tuple(m) for m in maps)
    work = list(closure)
    while work:
        g = work.pop()
        for h in list(closure):
            for comp in (tuple(g[h[x]] for x in range(size)),
                         tuple(h[g[x]] for x in range(size))):
                if comp not in closure:
                    closure.add(comp)
                    work.append(comp)
    return frozenset(closure)


@dataclass(frozen=True)
class TranslationGroup:
    """Bijective unary polynomial maps of an algebra and their closure.

    generators are the reversible maps realized by unary polynomial
    forms within the depth bound (the designated variable may occur
    several times; all other positions take carrier constants).  closure
    is the group they generate under composition; on a finite carrier
    the composition closure of bijections already contains all inverses.
    """

    generators: tuple[tuple[int, ...], ...]
    closure: frozenset[tuple[int, ...]]
    transitive: bool
    truncated: bool


def translation_group(alg: FiniteAlgebra, max_depth: int = DEFAULT_DEPTH, *,
                      max_maps: int = 100_000,
                      candidate_budget: int = DEFAULT_CANDIDATE_BUDGET
                      ) -> TranslationGroup:
    """Reversible translations x -> F(x) with F a unary polynomial form.

    Builds all unary polynomial maps breadth-first (seeds: the identity
    and every constant map), keeps the bijective ones, and closes them
    under composition.  transitive reports whether the closure acts
    transitively on the carrier.
    """
    n = alg.size
    identity = tuple(range(n))
    maps: list[tuple[int, ...]] = [identity]
    seen = {identity}
    for c in range(n):
        cmap = tuple([c] * n)
        if cmap not in seen:
            seen.add(cmap)
            maps.append(cmap)
    truncated = False
    spent = 0
    frontier_lo = 0
    for depth in range(1, max_depth + 1):
        if truncated or frontier_lo == len(maps):
            break
        level_start = len(maps)
        for name, arity in alg.sig.ops:
            if arity == 0 or truncated:
                continue
            table = alg.op_tables[name]
            # one block per leading frontier position, as in the table
            # search: old^i x frontier x all^(arity-1-i)
            for lead in range(arity):
                ranges = [range(0, frontier_lo)] * lead \
                    + [range(frontier_lo, level_start)] \
                    + [range(0, level_start)] * (arity - 1 - lead)
                for combo in product(*ranges):
                    spent += 1
                    if spent > candidate_budget or len(maps) > max_maps:
                        truncated = True
                        break
                    new_map = tuple(
                        table[flat_index(tuple(maps[i][x] for i in combo), n)]
                        for x in range(n))
                    if new_map not in seen:
                        seen.add(new_map)
                        maps.append(new_map)
                if truncated:
                    break
        frontier_lo = level_start
    generators = tuple(sorted(m for m in seen if sorted(m) == list(range(n))))
    closure = composition_closure(generators, n)
    orbit = {g[0] for g in closure}
    return TranslationGroup(generators, closure, len(orbit) == n, truncated)
