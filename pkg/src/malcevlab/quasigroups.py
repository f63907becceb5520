"""Latin squares, equational quasigroups, and their Mal'cev structure.

A Latin square of order n is a multiplication table in which every row
and every column is a permutation of 0..n-1.  Such a table always
supports two division operations: ldiv(a, b) is the unique x with
a*x = b, and rdiv(b, a) is the unique x with x*a = b.  Working in the
enriched signature (mul, ldiv, rdiv) makes the class equationally
definable, and explicit Mal'cev-style terms can be written down rather
than searched for: malcev_polynomial returns them per flavor, verified
exhaustively against the tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .algebras import FiniteAlgebra
from .errors import FlavorMismatch, NoRightUnit, NotLatin
from .malcev import TranslationGroup, composition_closure
from .terms import App, Signature, Term, Var, eval_term

QUASIGROUP_SIGNATURE = Signature(ops=(("mul", 2), ("ldiv", 2), ("rdiv", 2)))

_FLAVORS = ("groupoid", "quasigroup", "right_eloop", "left_eloop")


@dataclass(frozen=True)
class LatinSquare:
    """Validated Latin square; rows[a][b] is the product a*b."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n == 0:
            raise NotLatin("empty table", 0, 0)
        for r, row in enumerate(self.rows):
            if len(row) != n:
                raise NotLatin(f"row {r} has length {len(row)}, expected {n}",
                               r, min(len(row), n))
            seen: dict[int, int] = {}
            for c, v in enumerate(row):
                if not (0 <= v < n):
                    raise NotLatin(f"entry {v} out of range at ({r}, {c})",
                                   r, c)
                if v in seen:
                    raise NotLatin(
                        f"row {r} repeats {v} at columns {seen[v]} and {c}",
                        r, c)
                seen[v] = c
        for c in range(n):
            seen = {}
            for r in range(n):
                v = self.rows[r][c]
                if v in seen:
                    raise NotLatin(
                        f"column {c} repeats {v} at rows {seen[v]} and {r}",
                        r, c)
                seen[v] = r

    @property
    def order(self) -> int:
        return len(self.rows)

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]


def latin_square(rows: Sequence[Sequence[int]]) -> LatinSquare:
    """Validate a nested table as a Latin square."""
    return LatinSquare(tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class Equasigroup:
    """A Latin square enriched with both divisions.

    mul, ldiv and rdiv are flat row-major tables: ldiv[a*n + b] solves
    a*x = b, rdiv[b*n + a] solves x*a = b.  left_unit/right_unit record
    the unit elements when present (None otherwise).
    """

    size: int
    mul: tuple[int, ...]
    ldiv: tuple[int, ...]
    rdiv: tuple[int, ...]
    left_unit: Optional[int]
    right_unit: Optional[int]

    @property
    def two_sided_unit(self) -> Optional[int]:
        if self.left_unit is not None and self.left_unit == self.right_unit:
            return self.left_unit
        return None

    def square(self) -> LatinSquare:
        n = self.size
        return LatinSquare(tuple(self.mul[a * n:(a + 1) * n]
                                 for a in range(n)))


def equasigroup_from_latin(square: LatinSquare) -> Equasigroup:
    """Derive both divisions and detect units."""
    n = square.order
    mul = [0] * (n * n)
    ldiv = [0] * (n * n)
    rdiv = [0] * (n * n)
    for a in range(n):
        for b in range(n):
            mul[a * n + b] = square.rows[a][b]
            ldiv[a * n + square.rows[a][b]] = b
            rdiv[square.rows[a][b] * n + b] = a
    identity = tuple(range(n))
    left = next((e for e in range(n) if square.rows[e] == identity), None)
    right = next(
        (e for e in range(n)
         if tuple(square.rows[x][e] for x in range(n)) == identity), None)
    return Equasigroup(n, tuple(mul), tuple(ldiv), tuple(rdiv), left, right)


def to_algebra(q: Equasigroup, flavor: str = "quasigroup") -> FiniteAlgebra:
    """Package an equational quasigroup as a finite algebra.

    flavor selects the signature: "groupoid" keeps the bare product,
    "quasigroup" adds both divisions, "right_eloop"/"left_eloop" further
    name the respective unit as a constant (and require it to exist).
    """
    if flavor not in _FLAVORS:
        raise FlavorMismatch(f"unknown flavor {flavor!r}; choose from "
                             + ", ".join(_FLAVORS))
    if flavor == "groupoid":
        sig = Signature(ops=(("mul", 2),))
        return FiniteAlgebra(sig, q.size, {"mul": q.mul}, {})
    tables = {"mul": q.mul, "ldiv": q.ldiv, "rdiv": q.rdiv}
    if flavor == "quasigroup":
        return FiniteAlgebra(QUASIGROUP_SIGNATURE, q.size, tables, {})
    if flavor == "right_eloop":
        if q.right_unit is None:
            raise NoRightUnit("no element e satisfies x*e = x for all x")
        unit = q.right_unit
    else:
        if q.left_unit is None:
            raise FlavorMismatch("no element e satisfies e*x = x for all x")
        unit = q.left_unit
    sig = Signature(ops=(("mul", 2), ("ldiv", 2), ("rdiv", 2), ("e", 0)))
    tables["e"] = (unit,)
    return FiniteAlgebra(sig, q.size, tables, {})


# ---------------------------------------------------------------------------
# multiplication groups

def multiplication_group(q: Equasigroup, side: str = "left") -> TranslationGroup:
    """Permutation group generated by one-sided product translations.

    side "left" takes the maps x -> a*x for every a, "right" the maps
    x -> x*a, "both" their union.  Rows and columns of a Latin square
    are permutations, so the generators are bijections and their
    composition closure is a group; it always acts transitively (the
    relevant row or column already carries 0 everywhere).
    """
    if side not in ("left", "right", "both"):
        raise ValueError("side must be 'left', 'right' or 'both'")
    n = q.size
    gens: list[tuple[int, ...]] = []
    if side in ("left", "both"):
        gens.extend(tuple(q.mul[a * n + x] for x in range(n))
                    for a in range(n))
    if side in ("right", "both"):
        gens.extend(tuple(q.mul[x * n + a] for x in range(n))
                    for a in range(n))
    unique = tuple(sorted(set(gens)))
    closure = composition_closure(unique, n)
    orbit = {g[0] for g in closure} | {0}
    return TranslationGroup(unique, closure, len(orbit) == n, False)


# ---------------------------------------------------------------------------
# explicit Mal'cev terms

def malcev_polynomial(q: Equasigroup, flavor: str = "quasigroup") -> Term:
    """An explicit term P with P(x,x,z) = z and P(x,z,z) = x.

    flavor "quasigroup" needs no unit and returns the four-variable form
    P(x,y,z) = (x * (y \\ x3)) / (z \\ x3), valid with any carrier
    element substituted for the anchor variable x3: with y = x the
    inner product collapses to the anchor and the outer division
    inverts z \\ anchor, while y = z cancels the division directly.
    Both identities are verified here for every anchor.  flavor
    "right_eloop" returns x * (y \\ z) (the right unit makes z \\ z
    constant), "left_eloop" the mirror (x / y) * z.  The returned term
    is verified exhaustively against the tables before being handed
    back.
    """
    alg = to_algebra(q, "quasigroup")
    if flavor == "quasigroup":
        term = App("rdiv", (
            App("mul", (Var(0), App("ldiv", (Var(1), Var(3))))),
            App("ldiv", (Var(2), Var(3)))))
        for a in range(q.size):
            _check_identities(alg, term, anchor=a)
        return term
    if flavor == "right_eloop":
        if q.right_unit is None:
            raise NoRightUnit("no element e satisfies x*e = x for all x")
        term = App("mul", (Var(0), App("ldiv", (Var(1), Var(2)))))
    elif flavor == "left_eloop":
        if q.left_unit is None:
            raise FlavorMismatch("no element e satisfies e*x = x for all x")
        term = App("mul", (App("rdiv", (Var(0), Var(1))), Var(2)))
    else:
        raise FlavorMismatch(f"no explicit form for flavor {flavor!r}")
    _check_identities(alg, term)
    return term


def _check_identities(alg: FiniteAlgebra, term: Term,
                      anchor: Optional[int] = None):
    n = alg.size
    for x in range(n):
        for z in range(n):
            point = (x, x, z) if anchor is None else (x, x, z, anchor)
            if eval_term(term, point, alg) != z:
                raise AssertionError("P(x,x,z) = z fails on a Latin square")
            point = (x, z, z) if anchor is None else (x, z, z, anchor)
            if eval_term(term, point, alg) != x:
                raise AssertionError("P(x,z,z) = x fails on a Latin square")


# ---------------------------------------------------------------------------
# rectification

@dataclass(frozen=True)
class RectificationReport:
    """Mutually inverse coordinate changes attached to a right unit.

    The forward map sends (x, y) to (x, x*y) and the backward map sends
    (x, y) to (x, x \\ y).  With a right unit e the diagonal lands on
    the axis (x, e); the four booleans record the checks individually.
    """

    unit: int
    forward_then_back: bool
    back_then_forward: bool
    keeps_first: bool
    diagonal_to_unit: bool

    @property
    def holds(self) -> bool:
        return (self.forward_then_back and self.back_then_forward
                and self.keeps_first and self.diagonal_to_unit)


def rectification_check(q: Equasigroup) -> RectificationReport:
    """Verify the coordinate change (x, y) -> (x, x*y) is reversible.

    Requires a right unit; raises NoRightUnit otherwise.  All four
    component checks run over the full carrier square.
    """
    if q.right_unit is None:
        raise NoRightUnit("rectification needs a right unit")
    n = q.size

    def forward(x: int, y: int) -> tuple[int, int]:
        return (x, q.mul[x * n + y])

    def backward(x: int, y: int) -> tuple[int, int]:
        return (x, q.ldiv[x * n + y])

    fwd_back = back_fwd = keeps = diag = True
    for x in range(n):
        if backward(x, x) != (x, q.right_unit):
            diag = False
        for y in range(n):
            if backward(*forward(x, y)) != (x, y):
                fwd_back = False
            if forward(*backward(x, y)) != (x, y):
                back_fwd = False
            if forward(x, y)[0] != x:
                keeps = False
    return RectificationReport(q.right_unit, fwd_back, back_fwd, keeps, diag)
