"""Lexicographically ordered value groups Q^k extended by infinity.

Elements of the divisible group Q^k (ordered lexicographically) carry every
value produced by the library: valuations of field elements and polynomials,
augmentation values, Newton polygon slopes and intercepts.  The distinguished
element ``INF`` is larger than every finite element and absorbs addition.

Finitely generated subgroups are represented by an integer lattice in
canonical Hermite form, so membership, joins and indices are exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence


class ValueGroupError(ValueError):
    pass


class RankMismatchError(ValueGroupError):
    pass


class SearchBoundExceeded(ValueGroupError):
    """Raised when a multiple search would silently pass its declared bound."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class GroupElement:
    """Point of Q^k under lex order, or the distinguished infinity."""

    __slots__ = ("coords",)

    def __init__(self, coords=None):
        if coords is None:
            self.coords = None
        else:
            self.coords = tuple(_frac(c) for c in coords)
            if not self.coords:
                raise ValueGroupError("finite elements need rank >= 1")

    @property
    def is_infinite(self) -> bool:
        return self.coords is None

    @property
    def rank(self):
        return None if self.coords is None else len(self.coords)

    def _check_rank(self, other: "GroupElement"):
        if self.coords is not None and other.coords is not None:
            if len(self.coords) != len(other.coords):
                raise RankMismatchError(
                    f"rank {len(self.coords)} vs {len(other.coords)}"
                )

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check_rank(other)
        if self.coords is None or other.coords is None:
            return INF
        return GroupElement(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        if other.coords is None:
            raise ValueGroupError("cannot subtract infinity")
        if self.coords is None:
            return INF
        self._check_rank(other)
        return GroupElement(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "GroupElement":
        if self.coords is None:
            raise ValueGroupError("cannot negate infinity")
        return GroupElement(-c for c in self.coords)

    def scale(self, q) -> "GroupElement":
        """Scalar multiple by a rational; order-preserving for q > 0."""
        if self.coords is None:
            q = _frac(q)
            if q <= 0:
                raise ValueGroupError("infinity scaled by a nonpositive rational")
            return INF
        q = _frac(q)
        return GroupElement(q * c for c in self.coords)

    @property
    def is_zero(self) -> bool:
        return self.coords is not None and all(c == 0 for c in self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other: "GroupElement") -> bool:
        self._check_rank(other)
        if self.coords is None:
            return False
        if other.coords is None:
            return True
        return self.coords < other.coords

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def __repr__(self):
        return f"GroupElement({self})"

    def __str__(self):
        if self.coords is None:
            return "inf"
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def to_json(self):
        if self.coords is None:
            return "inf"
        return [str(c) for c in self.coords]

    @staticmethod
    def from_json(data, rank=None) -> "GroupElement":
        if data == "inf":
            return INF
        if isinstance(data, str):
            data = [data]
        g = GroupElement(data)
        if rank is not None and g.rank != rank:
            raise RankMismatchError(f"expected rank {rank}, got {g.rank}")
        return g


INF = GroupElement(None)


def elem(*coords) -> GroupElement:
    return GroupElement(coords)


def compare(a: GroupElement, b: GroupElement) -> int:
    """Total lex order: -1, 0 or 1; infinity is maximal."""
    if a == b:
        return 0
    return -1 if a < b else 1


def gmin(values: Iterable[GroupElement]) -> GroupElement:
    best = None
    for v in values:
        if best is None or v < best:
            best = v
    if best is None:
        raise ValueGroupError("min of empty value list")
    return best


# -- integer lattice plumbing ------------------------------------------------
#
# A subgroup of Q^k is stored as (den, rows): the set {r/den : r in Z-span of
# rows}, with rows in canonical Hermite form (pivots positive, entries above a
# pivot reduced into [0, pivot)).


def _pivot_col(row) -> int:
    for j, a in enumerate(row):
        if a:
            return j
    return -1


def _hermite(rows: list[list[int]], k: int) -> list[list[int]]:
    work = [list(r) for r in rows if any(r)]
    echelon = []
    for col in range(k):
        have = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not have:
            work = rest
            continue
        while len(have) > 1:
            have.sort(key=lambda r: abs(r[col]))
            base = have[0]
            reduced = [base]
            for r in have[1:]:
                q = r[col] // base[col]
                r2 = [a - q * b for a, b in zip(r, base)]
                if r2[col] != 0:
                    reduced.append(r2)
                elif any(r2):
                    rest.append(r2)
            if len(reduced) == 1:
                have = reduced
                break
            have = reduced
        pivot = have[0]
        if pivot[col] < 0:
            pivot = [-a for a in pivot]
        echelon.append(pivot)
        work = rest
    # canonical form: reduce entries above each pivot
    for i in range(len(echelon) - 1, -1, -1):
        c = _pivot_col(echelon[i])
        p = echelon[i][c]
        for j in range(i):
            q = echelon[j][c] // p
            if q:
                echelon[j] = [a - q * b for a, b in zip(echelon[j], echelon[i])]
    return echelon


def _lattice_reduce(basis: list[list[int]], vec: list[int]):
    """Reduce vec against a Hermite basis; return True iff vec is in the span."""
    v = list(vec)
    for row in basis:
        c = _pivot_col(row)
        if v[c] % row[c] != 0:
            return False
        q = v[c] // row[c]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def _solve_rational(basis: list[list[int]], target: Sequence[Fraction]):
    """Coefficients expressing target over the basis rows, or None."""
    r = len(basis)
    k = len(target)
    # Gaussian elimination on the transposed system (k equations, r unknowns).
    aug = [[Fraction(basis[i][j]) for i in range(r)] + [Fraction(target[j])]
           for j in range(k)]
    pivots = []
    row = 0
    for col in range(r):
        sel = next((i for i in range(row, k) if aug[i][col] != 0), None)
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [a * inv for a in aug[row]]
        for i in range(k):
            if i != row and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[row])]
        pivots.append(col)
        row += 1
    for i in range(row, k):
        if aug[i][r] != 0:
            return None
    coeffs = [Fraction(0)] * r
    for i, col in enumerate(pivots):
        coeffs[col] = aug[i][r]
    return coeffs


def _det(m: list[list[Fraction]]) -> Fraction:
    n = len(m)
    m = [row[:] for row in m]
    det = Fraction(1)
    for col in range(n):
        sel = next((i for i in range(col, n) if m[i][col] != 0), None)
        if sel is None:
            return Fraction(0)
        if sel != col:
            m[col], m[sel] = m[sel], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return det


class Subgroup:
    """Finitely generated subgroup of Q^k with decidable membership."""

    __slots__ = ("rank", "_den", "_basis")

    def __init__(self, rank: int, generators: Iterable[GroupElement] = ()):
        if rank < 1:
            raise ValueGroupError("rank must be positive")
        self.rank = rank
        rows = []
        dens = [1]
        gens = list(generators)
        for g in gens:
            if g.is_infinite:
                raise ValueGroupError("subgroup generators must be finite")
            if g.rank != rank:
                raise RankMismatchError(f"generator rank {g.rank} != {rank}")
            dens.extend(c.denominator for c in g.coords)
        den = lcm(*dens) if dens else 1
        for g in gens:
            rows.append([int(c * den) for c in g.coords])
        self._den = den
        self._basis = _hermite(rows, rank)
        self._normalize()

    def _normalize(self):
        # strip a common factor between den and all basis entries
        from math import gcd
        g = self._den
        for row in self._basis:
            for a in row:
                g = gcd(g, a)
        if g > 1:
            self._den //= g
            self._basis = [[a // g for a in row] for row in self._basis]

    @property
    def generators(self) -> tuple[GroupElement, ...]:
        """Canonical basis of the subgroup (Hermite-reduced)."""
        return tuple(
            GroupElement(Fraction(a, self._den) for a in row)
            for row in self._basis
        )

    @property
    def lattice_rank(self) -> int:
        return len(self._basis)

    def contains(self, x: GroupElement) -> bool:
        if x.is_infinite:
            return False
        if x.rank != self.rank:
            raise RankMismatchError(f"element rank {x.rank} != {self.rank}")
        scaled = [c * self._den for c in x.coords]
        if any(s.denominator != 1 for s in scaled):
            return False
        return _lattice_reduce(self._basis, [int(s) for s in scaled])

    __contains__ = contains

    def join(self, xs: Iterable[GroupElement]) -> "Subgroup":
        return Subgroup(self.rank, list(self.generators) + list(xs))

    def same_group(self, other: "Subgroup") -> bool:
        return (self.rank == other.rank
                and all(g in other for g in self.generators)
                and all(g in self for g in other.generators))

    def index_over(self, sub: "Subgroup") -> int:
        """Index (self : sub); requires sub <= self with equal rational rank."""
        if sub.rank != self.rank:
            raise RankMismatchError("mixed ambient ranks")
        if not all(g in self for g in sub.generators):
            raise ValueGroupError("index_over: not a subgroup")
        if sub.lattice_rank != self.lattice_rank:
            raise ValueGroupError("index_over: infinite index (rank drops)")
        r = self.lattice_rank
        if r == 0:
            return 1
        mat = []
        for row in sub._basis:
            target = [Fraction(a, sub._den) for a in row]
            coeffs = _solve_rational(
                self._basis, [t * self._den for t in target])
            if coeffs is None:
                raise ValueGroupError("index_over: generator outside group")
            mat.append(coeffs)
        d = _det(mat)
        if d == 0 or d.denominator != 1:
            raise ValueGroupError("index_over: not an integral basis change")
        return abs(int(d))

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"Subgroup(rank={self.rank}, <{gens}>)"


DEFAULT_MULTIPLE_BOUND = 10_000


def smallest_multiple_in(gamma: GroupElement, group: Subgroup,
                         bound: int = DEFAULT_MULTIPLE_BOUND):
    """Least e >= 1 with e*gamma in the subgroup, or None if no multiple is.

    None means provably no multiple exists (gamma lies outside the rational
    span of the group).  A finite answer beyond ``bound`` is never silently
    truncated: it raises SearchBoundExceeded instead.
    """
    if gamma.is_infinite:
        raise ValueGroupError("smallest_multiple_in needs a finite element")
    if gamma.rank != group.rank:
        raise RankMismatchError(f"element rank {gamma.rank} != {group.rank}")
    if gamma.is_zero:
        return 1
    scaled = [c * group._den for c in gamma.coords]
    coeffs = _solve_rational(group._basis, scaled)
    if coeffs is None:
        return None
    e = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    if e > bound:
        raise SearchBoundExceeded(
            f"least multiple e={e} exceeds search bound {bound}")
    return e


def subgroup_join(group: Subgroup, xs: Iterable[GroupElement]) -> Subgroup:
    """Subgroup generated by ``group`` together with the elements ``xs``."""
    return group.join(xs)
