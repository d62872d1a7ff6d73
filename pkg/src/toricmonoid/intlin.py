"""Exact integer linear algebra.

Vectors are tuples of Python ints and matrices are tuples of row tuples, so
every value here is arbitrary precision and hashable.  Rational work (solving,
rank) goes through :class:`fractions.Fraction`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Vector = tuple
Matrix = tuple


@dataclass(frozen=True)
class AbelianGroupStructure:
    """Isomorphism type Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ..."""

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion invariant {d} must be >= 2")
        for d1, d2 in zip(self.torsion, self.torsion[1:]):
            if d2 % d1:
                raise ValueError(f"torsion invariants {d1}, {d2} break divisibility")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank == 1:
            parts.insert(0, "Z")
        elif self.free_rank > 1:
            parts.insert(0, f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def as_matrix(rows) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A: Matrix, ncols: int | None = None) -> Matrix:
    if not A:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*A))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A: Matrix, v: Sequence) -> Vector:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> Vector:
    return tuple(c * a for a in u)


def gcd_of(entries: Sequence[int]) -> int:
    return math.gcd(*entries) if entries else 0


def primitive(v: Sequence[int]) -> Vector:
    """Divide ``v`` by the gcd of its entries; the result is a positive multiple."""
    g = gcd_of(v)
    if g == 0:
        raise ValueError("no primitive representative for the zero vector")
    return tuple(x // g for x in v)


def glex_key(v: Sequence[int]):
    """Sort key used for every serialized set: total absolute size, then
    lexicographically descending, so (1,0,0) < (0,1,0) < (0,0,1) < (1,1,-1)."""
    return (sum(abs(x) for x in v), tuple(-x for x in v))


# --- rational elimination -------------------------------------------------

def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in rows]
    pivots = []
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(vectors: Sequence[Sequence]) -> int:
    vectors = [v for v in vectors]
    if not vectors or not vectors[0]:
        return 0
    _, piv = _rref([[Fraction(x) for x in v] for v in vectors])
    return len(piv)


def determinant(A: Matrix):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if p is None:
                return 0
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rational_inverse(A: Matrix) -> tuple:
    n = len(A)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(A)]
    red, piv = _rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def integer_inverse(A: Matrix) -> Matrix:
    """Inverse of a unimodular matrix; raises if the inverse is not integral."""
    inv = rational_inverse(A)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


def solve_rational(A: Sequence[Sequence], b: Sequence):
    """One solution x of A x = b over Q, or None if inconsistent."""
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [[Fraction(x) for x in A[i]] + [Fraction(b[i])] for i in range(m)]
    red, piv = _rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return tuple(x)


def is_unimodular(A: Matrix) -> bool:
    r, c = shape(A)
    return r == c and abs(determinant(A)) == 1


# --- Smith normal form ------------------------------------------------------

class _Reducer:
    """Tracks A = U D V and the inverses Ui, Vi under elementary operations."""

    def __init__(self, A: Matrix):
        m, n = shape(A)
        self.m, self.n = m, n
        self.D = [list(row) for row in A]
        self.U = [list(r) for r in identity(m)]
        self.Ui = [list(r) for r in identity(m)]
        self.V = [list(r) for r in identity(n)]
        self.Vi = [list(r) for r in identity(n)]

    # row ops act on D from the left; U absorbs the inverse on the right
    def row_add(self, src, dst, c):
        if c == 0:
            return
        D, U, Ui = self.D, self.U, self.Ui
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        Ui[dst] = [a + c * b for a, b in zip(Ui[dst], Ui[src])]
        for row in U:
            row[src] -= c * row[dst]

    def row_swap(self, i, j):
        if i == j:
            return
        self.D[i], self.D[j] = self.D[j], self.D[i]
        self.Ui[i], self.Ui[j] = self.Ui[j], self.Ui[i]
        for row in self.U:
            row[i], row[j] = row[j], row[i]

    def row_negate(self, i):
        self.D[i] = [-a for a in self.D[i]]
        self.Ui[i] = [-a for a in self.Ui[i]]
        for row in self.U:
            row[i] = -row[i]

    def col_add(self, src, dst, c):
        if c == 0:
            return
        D, V, Vi = self.D, self.V, self.Vi
        for row in D:
            row[dst] += c * row[src]
        for row in Vi:
            row[dst] += c * row[src]
        V[src] = [a - c * b for a, b in zip(V[src], V[dst])]

    def col_swap(self, i, j):
        if i == j:
            return
        for row in self.D:
            row[i], row[j] = row[j], row[i]
        for row in self.Vi:
            row[i], row[j] = row[j], row[i]
        self.V[i], self.V[j] = self.V[j], self.V[i]

    def run(self):
        D, m, n = self.D, self.m, self.n
        for t in range(min(m, n)):
            while True:
                entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
                if not entries:
                    return
                _, i, j = min(entries)
                self.row_swap(t, i)
                self.col_swap(t, j)
                p = D[t][t]
                dirty = False
                for i in range(t + 1, m):
                    q = D[i][t] // p
                    self.row_add(t, i, -q)
                    dirty |= D[i][t] != 0
                for j in range(t + 1, n):
                    q = D[t][j] // p
                    self.col_add(t, j, -q)
                    dirty |= D[t][j] != 0
                if dirty:
                    continue
                bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
                if bad is None:
                    break
                self.row_add(bad, t, 1)
            if D[t][t] < 0:
                self.row_negate(t)

    def result(self):
        f = lambda M: tuple(tuple(r) for r in M)
        return f(self.U), f(self.D), f(self.V), f(self.Ui), f(self.Vi)


def smith_normal_form_with_inverses(A: Matrix):
    """Like :func:`smith_normal_form` but also returns ``U^-1`` and ``V^-1``."""
    red = _Reducer(as_matrix(A) if A else ())
    red.run()
    return red.result()


def smith_normal_form(A: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ D @ V == A``.

    ``U`` and ``V`` are square unimodular, ``D`` has the shape of ``A`` with
    nonnegative diagonal d_1 | d_2 | ... and zeros elsewhere.  Pivots are the
    smallest nonzero entry of the remaining block, which keeps coefficients
    small on desk-scale inputs.
    """
    U, D, V, _, _ = smith_normal_form_with_inverses(A)
    return U, D, V


def diagonal(D: Matrix) -> tuple:
    r, c = shape(D)
    return tuple(D[i][i] for i in range(min(r, c)))


def cokernel_structure(A: Matrix, nrows: int | None = None) -> AbelianGroupStructure:
    """Isomorphism type of Z^rows / image(A).

    ``nrows`` is only needed when ``A`` has no columns and so cannot carry its
    row count (an empty tuple).
    """
    A = as_matrix(A)
    m = len(A) if nrows is None else nrows
    if not A or not A[0]:
        return AbelianGroupStructure(m, ())
    _, D, _ = smith_normal_form(A)
    d = diagonal(D)
    r = sum(1 for x in d if x)
    return AbelianGroupStructure(m - r, tuple(x for x in d if x > 1))


def kernel_basis(A: Matrix, ncols: int | None = None) -> tuple:
    """A Z-basis of the integer kernel {x : A x = 0}."""
    A = as_matrix(A)
    n = len(A[0]) if A else (ncols or 0)
    if not A:
        return identity(n)
    _, D, _, _, Vi = smith_normal_form_with_inverses(A)
    r = sum(1 for x in diagonal(D) if x)
    return tuple(tuple(Vi[i][k] for i in range(n)) for k in range(r, n))


def saturating_basis_change(vectors: Sequence[Sequence[int]], n: int) -> tuple[Matrix, int]:
    """Unimodular B and r = rank so that B v lies in Z^r x 0 for every v.

    B maps span(vectors) cap Z^n onto Z^r x 0.  Returns the identity when the
    vectors already live in the first r coordinates.
    """
    vectors = [tuple(v) for v in vectors]
    r = rank(vectors)
    if all(all(x == 0 for x in v[r:]) for v in vectors):
        return identity(n), r
    cols = transpose(as_matrix(vectors))
    _, _, _, Ui, _ = smith_normal_form_with_inverses(cols)
    return Ui, r


# --- lattice automorphisms ----------------------------------------------------

def linear_map_from_images(src: Sequence[Sequence[int]], dst: Sequence[Sequence[int]]):
    """Rational matrix T with T src_k = dst_k for all k, or None.

    The source vectors must span Q^n so that T is unique.
    """
    n = len(src[0])
    basis = []
    for k, v in enumerate(src):
        if rank([src[j] for j in basis] + [v]) > len(basis):
            basis.append(k)
        if len(basis) == n:
            break
    if len(basis) < n:
        raise ValueError("source vectors do not span the ambient space")
    S = tuple(tuple(src[k][i] for k in basis) for i in range(n))
    Dm = tuple(tuple(dst[k][i] for k in basis) for i in range(n))
    T = matmul_frac(Dm, rational_inverse(S))
    for v, w in zip(src, dst):
        if tuple(sum(a * x for a, x in zip(row, v)) for row in T) != tuple(w):
            return None
    return T


def matmul_frac(A, B):
    Bt = list(zip(*B))
    return tuple(tuple(sum(Fraction(a) * b for a, b in zip(row, col)) for col in Bt) for row in A)


def lattice_automorphism_candidates(src_rays, dst_rays) -> list[Matrix]:
    """All unimodular T with {T p : p in src_rays} == set(dst_rays).

    One linear system is solved per bijection src -> dst, so the cost is m!
    for m rays; fine for the handful of rays of a surface or a 3-fold, not
    meant for large fans.  The rays must span Q^n, which makes T unique for
    each bijection and the search complete.
    """
    src = [tuple(p) for p in src_rays]
    dst = [tuple(p) for p in dst_rays]
    if len(src) != len(dst) or not src:
        return []
    found = []
    for perm in itertools.permutations(dst):
        T = linear_map_from_images(src, perm)
        if T is None or any(x.denominator != 1 for row in T for x in row):
            continue
        T = tuple(tuple(int(x) for x in row) for row in T)
        if abs(determinant(T)) == 1 and T not in found:
            found.append(T)
    return found
