"""Exact integer linear algebra on row vectors.

Vectors are tuples of Python ints and matrices are tuples of row tuples, so
every value is immutable and entries never overflow.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, prod
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, NotSplitSummand, ZeroVector

IntVector = tuple
IntMatrix = tuple


def vec(v: Iterable[int]) -> IntVector:
    return tuple(int(x) for x in v)


def mat(rows: Iterable[Iterable[int]]) -> IntMatrix:
    return tuple(vec(r) for r in rows)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    if not A:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*A))


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    if not A:
        return ()
    if not B:
        return tuple(() for _ in A)
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def pairing(chi: Sequence[int], v: Sequence[int]) -> int:
    """Dot product of a character with a cocharacter."""
    if len(chi) != len(v):
        raise DimensionMismatch(f"lengths {len(chi)} and {len(v)} differ")
    return sum(a * b for a, b in zip(chi, v))


def vector_gcd(v: Iterable[int]) -> int:
    return reduce(gcd, v, 0)


def is_primitive(v: Sequence[int]) -> bool:
    g = vector_gcd(v)
    if g == 0:
        raise ZeroVector("the zero vector has no primitivity")
    return g == 1


def primitive(v: Sequence[int]) -> IntVector:
    g = vector_gcd(v)
    if g == 0:
        raise ZeroVector("the zero vector has no primitive part")
    return tuple(x // g for x in v)


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# -- rational helpers ------------------------------------------------------

def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals, with pivot columns."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    if not M:
        return M, pivots
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [x / piv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def solve_left(B: Sequence[Sequence], v: Sequence) -> Optional[tuple[Fraction, ...]]:
    """Return rational ``x`` with ``x . B == v`` (B has independent rows), or None."""
    r = len(B)
    if r == 0:
        return () if all(x == 0 for x in v) else None
    # Augment the transpose: columns of B^T are the rows of B.
    aug = [list(col) + [val] for col, val in zip(zip(*B), v)]
    R, piv = rref(aug)
    if r in piv:
        return None
    x = [Fraction(0)] * r
    for row, c in zip(R, piv):
        x[c] = row[r]
    return tuple(x)


def integer_coordinates(B: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[IntVector]:
    """Integer coordinates of ``v`` in the lattice basis ``B``, or None."""
    x = solve_left(B, v)
    if x is None or any(c.denominator != 1 for c in x):
        return None
    return tuple(int(c) for c in x)


# -- Smith normal form -----------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    """``U . A . V == D`` with U, V unimodular and D in Smith form.

    The inverses of U and V are tracked alongside since they are exact
    integer matrices and several callers need them.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return tuple(d for d in (self.D[i][i] for i in range(k)) if d != 0)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> SmithDecomposition:
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    D = [list(r) for r in A]
    U = [list(r) for r in identity(m)]
    Ui = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]
    Vi = [list(r) for r in identity(n)]

    def row_add(i, j, c):  # row_i += c * row_j
        D[i] = [a + c * b for a, b in zip(D[i], D[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        for row in Ui:
            row[j] -= c * row[i]

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]
        for row in Ui:
            row[i] = -row[i]

    def col_add(i, j, c):  # col_i += c * col_j
        for row in D:
            row[i] += c * row[j]
        for row in V:
            row[i] += c * row[j]
        Vi[j] = [a - c * b for a, b in zip(Vi[j], Vi[i])]

    def col_swap(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j] != 0]
            if not entries:
                break
            _, i, j = min(entries)
            if i != t:
                row_swap(i, t)
            if j != t:
                col_swap(j, t)
            dirty = False
            for i in range(t + 1, m):
                q = D[i][t] // D[t][t]
                if q:
                    row_add(i, t, -q)
                dirty |= D[i][t] != 0
            for j in range(t + 1, n):
                q = D[t][j] // D[t][t]
                if q:
                    col_add(j, t, -q)
                dirty |= D[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            row_add(t, bad, 1)
        if not any(D[i][j] for i in range(t, m) for j in range(t, n)):
            break
        if D[t][t] < 0:
            row_neg(t)
    return SmithDecomposition(mat(U), mat(D), mat(V), mat(Ui), mat(Vi))


# -- sublattices -----------------------------------------------------------

@dataclass(frozen=True)
class Sublattice:
    """Sublattice of Z^n given by linearly independent basis rows."""

    n: int
    basis: IntMatrix = ()

    def __post_init__(self):
        object.__setattr__(self, "basis", mat(self.basis))
        for row in self.basis:
            if len(row) != self.n:
                raise DimensionMismatch(f"basis row {row} is not in Z^{self.n}")

    @classmethod
    def spanned_by(cls, generators: Iterable[Sequence[int]], n: int) -> "Sublattice":
        """Lattice generated by arbitrary (possibly dependent) integer vectors."""
        gens = mat(generators)
        if not gens:
            return cls(n, ())
        s = smith_normal_form(gens, n)
        basis = [tuple(d * x for x in s.V_inv[i]) for i, d in enumerate(s.invariant_factors)]
        return cls(n, hermite_form(basis))

    @classmethod
    def full(cls, n: int) -> "Sublattice":
        return cls(n, identity(n))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def smith(self) -> SmithDecomposition:
        return smith_normal_form(self.basis, self.n)

    def contains_vector(self, v: Sequence[int]) -> bool:
        return integer_coordinates(self.basis, v) is not None

    def contains(self, other: "Sublattice") -> bool:
        return all(self.contains_vector(v) for v in other.basis)

    def canonical(self) -> "Sublattice":
        return Sublattice(self.n, hermite_form(self.basis))

    def key(self) -> IntMatrix:
        return hermite_form(self.basis)

    def same_lattice(self, other: "Sublattice") -> bool:
        return self.n == other.n and self.key() == other.key()


def hermite_form(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Row Hermite normal form of the lattice spanned by ``rows`` (zero rows dropped)."""
    A = [list(r) for r in rows if any(r)]
    if not A:
        return ()
    ncols = len(A[0])
    p = 0
    for c in range(ncols):
        if p == len(A):
            break
        while True:
            nz = [i for i in range(p, len(A)) if A[i][c] != 0]
            if not nz:
                break
            i = min(nz, key=lambda k: abs(A[k][c]))
            A[p], A[i] = A[i], A[p]
            done = True
            for k in range(p + 1, len(A)):
                q = A[k][c] // A[p][c]
                if q:
                    A[k] = [a - q * b for a, b in zip(A[k], A[p])]
                if A[k][c]:
                    done = False
            if done:
                break
        if A[p][c] == 0:
            continue
        if A[p][c] < 0:
            A[p] = [-a for a in A[p]]
        for k in range(p):
            q = A[k][c] // A[p][c]
            if q:
                A[k] = [a - q * b for a, b in zip(A[k], A[p])]
        p += 1
    return mat(r for r in A if any(r))


def saturate(L: Sublattice) -> Sublattice:
    """Largest sublattice of Z^n with the same rational span as ``L``."""
    if L.rank == 0:
        return L
    s = L.smith()
    return Sublattice(L.n, hermite_form(s.V_inv[: s.rank]))


def index_in_saturation(L: Sublattice) -> int:
    return prod(smith_normal_form(L.basis, L.n).invariant_factors) if L.rank else 1


def is_split_summand(L: Sublattice) -> bool:
    return index_in_saturation(L) == 1


def complete_to_basis(L: Sublattice) -> IntMatrix:
    """Unimodular n x n matrix whose first rows are the basis of ``L``."""
    n, r = L.n, L.rank
    if r == 0:
        return identity(n)
    s = L.smith()
    if any(d != 1 for d in s.invariant_factors) or s.rank < r:
        raise NotSplitSummand(f"lattice {L.basis} has invariant factors {s.invariant_factors}")
    block = [list(row) + [0] * (n - r) for row in s.U_inv]
    block += [[0] * r + [int(i == j) for j in range(n - r)] for i in range(n - r)]
    return matmul(block, s.V_inv)


def kernel_basis(rows: Sequence[Sequence[int]], n: int) -> IntMatrix:
    """Z-basis of ``{v in Z^n : <row, v> = 0 for all rows}`` (always saturated)."""
    if not rows:
        return identity(n)
    s = smith_normal_form(rows, n)
    cols = transpose(s.V, n)
    return hermite_form(cols[s.rank:])


def unimodular_inverse(M: Sequence[Sequence[int]]) -> IntMatrix:
    s = smith_normal_form(M)
    if s.rank != len(M) or any(d != 1 for d in s.invariant_factors):
        raise NotSplitSummand("matrix is not unimodular")
    # M = U_inv D V_inv with D = I, so M^-1 = V U.
    return matmul(s.V, s.U)
