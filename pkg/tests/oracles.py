"""Independent brute-force references used by the tests."""
import itertools

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.domains import ZZ


def pairings(rays, u):
    return tuple(sum(a * b for a, b in zip(p, u)) for p in rays)


def brute_hilbert_2d(rays, box=12):
    """Irreducible elements of Z^2 cap dual(cone(rays)), by exhaustive search.

    With rays of height <= 6 the dual extreme rays have height <= 6 and every
    Hilbert-basis element lies in the parallelogram they span, so the box
    [-12, 12]^2 holds all candidates.  A reducible x dominates (in the ray
    pairings) some Hilbert-basis element, which lies in the same box, so the
    search for y needs no larger region.
    """
    pts = []
    for u in itertools.product(range(-box, box + 1), repeat=2):
        pr = pairings(rays, u)
        if any(u) and all(x >= 0 for x in pr):
            pts.append((u, pr))
    out = []
    for u, pu in pts:
        if not any(v != u and all(a <= b for a, b in zip(pv, pu)) for v, pv in pts):
            out.append(u)
    return out


def invariant_factors_of(A):
    """Nonzero SNF invariants of an integer matrix, computed by sympy."""
    if not A or not A[0] or not any(any(r) for r in A):
        return ()
    return tuple(abs(int(x)) for x in invariant_factors(Matrix(A), domain=ZZ) if x != 0)
