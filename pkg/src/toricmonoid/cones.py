"""Rational polyhedral cones: duals, Hilbert bases and the 2D normal form."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import intlin
from .intlin import dot, glex_key, primitive


@dataclass(frozen=True)
class DualConeData:
    """The dual cone omega = {u : <p_i, u> >= 0}.

    ``generators`` spans omega over Q>=0: its extreme rays followed by +/- the
    ``lineality`` basis.  ``facet_normals`` are the rays p_i of sigma.
    """

    generators: tuple
    facet_normals: tuple
    lineality: tuple = ()

    @property
    def extreme_rays(self) -> tuple:
        lin = set(self.lineality) | {tuple(-x for x in v) for v in self.lineality}
        return tuple(g for g in self.generators if g not in lin)

    def contains(self, u) -> bool:
        return all(dot(p, u) >= 0 for p in self.facet_normals)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality


@dataclass(frozen=True)
class Cone:
    """Cone generated by primitive rays in N = Z^ambient_rank.

    Construction validates the ray set: primitive, pairwise distinct, each
    ray extremal, and the cone strongly convex.
    """

    ambient_rank: int
    rays: tuple

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in p) for p in self.rays)
        object.__setattr__(self, "rays", rays)
        for p in rays:
            if len(p) != self.ambient_rank:
                raise ValueError(f"ray {p} does not have length {self.ambient_rank}")
            if intlin.gcd_of(p) != 1:
                raise ValueError(f"ray {p} is not primitive")
        if len(set(rays)) != len(rays):
            raise ValueError("rays are proportional")
        dual = _double_description(rays, self.ambient_rank)
        if intlin.rank(dual.generators) < self.ambient_rank:
            raise ValueError("cone contains a line")
        for i, p in enumerate(rays):
            tight = [g for g in dual.generators if dot(p, g) == 0]
            if intlin.rank(tight) != self.ambient_rank - 1:
                raise ValueError(f"ray {p} (index {i + 1}) is not an extremal ray")

    @property
    def dim(self) -> int:
        return intlin.rank(self.rays)


def _double_description(rays, n: int) -> DualConeData:
    """Motzkin's double description of {u : <p, u> >= 0 for p in rays}.

    The state is a lineality basis plus extreme rays modulo it; each ray keeps
    the set of constraints it is tight on, which drives the combinatorial
    adjacency test.
    """
    lin = [tuple(r) for r in intlin.identity(n)]
    ext: list[tuple[tuple, frozenset]] = []
    for t, h in enumerate(rays):
        pivot = next((l for l in lin if dot(h, l) != 0), None)
        if pivot is not None:
            if dot(h, pivot) < 0:
                pivot = tuple(-x for x in pivot)
            s0 = dot(h, pivot)
            new_lin = []
            for l in lin:
                if l is pivot or l == tuple(-x for x in pivot):
                    continue
                v = intlin.sub(intlin.scale(s0, l), intlin.scale(dot(h, l), pivot))
                if any(v):
                    new_lin.append(primitive(v))
            lin = new_lin
            new_ext = []
            for r, z in ext:
                v = intlin.sub(intlin.scale(s0, r), intlin.scale(dot(h, r), pivot))
                new_ext.append((primitive(v), z | {t}))
            done = frozenset(range(t))
            new_ext.append((primitive(pivot), done))
            ext = new_ext
            continue
        pos, zero, neg = [], [], []
        for r, z in ext:
            s = dot(h, r)
            (pos if s > 0 else neg if s < 0 else zero).append((r, z, s))
        new_ext = [(r, z) for r, z, _ in pos] + [(r, z | {t}) for r, z, _ in zero]
        for (rp, zp, sp), (rn, zn, sn) in itertools.product(pos, neg):
            common = zp & zn
            if any(common <= z for r, z in ext if r != rp and r != rn):
                continue
            v = intlin.sub(intlin.scale(sp, rn), intlin.scale(sn, rp))
            new_ext.append((primitive(v), common | {t}))
        ext = new_ext
    lin = _canonical_lineality(rays, n) if lin else ()
    extreme = sorted({r for r, _ in ext}, key=glex_key)
    gens = tuple(extreme) + tuple(lin) + tuple(tuple(-x for x in v) for v in lin)
    return DualConeData(tuple(gens), tuple(tuple(p) for p in rays), tuple(lin))


def _canonical_lineality(rays, n):
    """Saturated basis of the common kernel of the rays (omega cap -omega)."""
    if not rays:
        return tuple(tuple(r) for r in intlin.identity(n))
    basis = [primitive(b) for b in intlin.kernel_basis(intlin.as_matrix(rays))]
    basis = [b if next(x for x in b if x) > 0 else tuple(-x for x in b) for b in basis]
    return tuple(sorted(basis, key=glex_key))


def dual_cone(c: Cone) -> DualConeData:
    """Generators of omega = sigma dual, computed by double description."""
    return _dual_cached(c.rays, c.ambient_rank)


@lru_cache(maxsize=256)
def _dual_cached(rays, n):
    return _double_description(rays, n)


def _parallelepiped_points(V):
    """Lattice points sum(lambda_i v_i) with 0 <= lambda_i < 1 (columns v_i)."""
    n = len(V)
    U, D, _ = intlin.smith_normal_form(V)
    d = intlin.diagonal(D)
    Vinv = intlin.rational_inverse(V)
    pts = set()
    for k in itertools.product(*(range(x) for x in d)):
        x = intlin.matvec(U, k)
        lam = [sum(a * b for a, b in zip(row, x)) for row in Vinv]
        frac = [l - (l.numerator // l.denominator) for l in lam]
        y = tuple(sum(V[i][j] * frac[j] for j in range(n)) for i in range(n))
        pts.add(tuple(int(Fraction(c)) for c in y))
    pts.discard((0,) * n)
    return pts


def hilbert_basis(dual: DualConeData) -> tuple:
    """Minimal generating set of the semigroup M cap omega, in glex order.

    omega must be pointed and full-dimensional (sigma strongly convex and
    full-dimensional).  Every simplicial cone spanned by n independent extreme
    rays contributes its rays and its half-open parallelepiped points; by
    Caratheodory these cones cover omega, so the union contains every
    irreducible element, and the reducible candidates are dropped.
    """
    if not dual.is_pointed:
        raise ValueError("Hilbert basis needs a pointed dual cone; split off torus factors first")
    ext = list(dual.extreme_rays)
    if not ext:
        return ()
    n = len(ext[0])
    cands = set(ext)
    for sub in itertools.combinations(ext, n):
        V = tuple(tuple(v[i] for v in sub) for i in range(n))
        if intlin.determinant(V) == 0:
            continue
        cands |= _parallelepiped_points(V)
    normals = dual.facet_normals

    def reducible(x):
        for y in cands:
            if y != x and all(dot(p, x) - dot(p, y) >= 0 for p in normals):
                return True
        return False

    return tuple(sorted((x for x in cands if not reducible(x)), key=glex_key))


def check_generates(gens, dual: DualConeData, bound: int = 6) -> bool:
    """Brute force: every point of omega in the box [-bound, bound]^n is a
    nonnegative integer combination of ``gens``."""
    n = len(dual.facet_normals[0]) if dual.facet_normals else len(gens[0])
    box = [u for u in itertools.product(range(-bound, bound + 1), repeat=n) if dual.contains(u)]
    return all(decompose(u, gens, dual.facet_normals) is not None for u in box)


def decompose(u, gens, normals):
    """Nonnegative integer multiplicities c with sum c_h h == u, or None.

    Among all decompositions the one with the fewest factors wins, ties broken
    towards larger multiplicities of earlier generators.
    """
    gens = tuple(tuple(g) for g in gens)
    grade = tuple(sum(p[i] for p in normals) for i in range(len(u)))
    return _decompose(tuple(u), gens, grade)


@lru_cache(maxsize=65536)
def _decompose(u, gens, grade):
    if not any(u):
        return (0,) * len(gens)
    deg_u = dot(grade, u)
    best = None
    for k, g in enumerate(gens):
        dg = dot(grade, g)
        if dg <= 0 or dg > deg_u:
            continue
        rest = _decompose(intlin.sub(u, g), gens, grade)
        if rest is None:
            continue
        cand = tuple(c + (j == k) for j, c in enumerate(rest))
        if best is None or (sum(cand), tuple(-c for c in cand)) < (sum(best), tuple(-c for c in best)):
            best = cand
    return best


@dataclass(frozen=True)
class Relation:
    """Binomial relation prod gens^lhs == prod gens^rhs."""

    lhs: tuple
    rhs: tuple

    def format(self, names) -> str:
        return f"{_monomial(self.lhs, names)} = {_monomial(self.rhs, names)}"


def _monomial(exps, names) -> str:
    parts = []
    for e, name in zip(exps, names):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) or "1"


def binomial_relations(gens, degree_bound: int) -> tuple:
    """Binomials with disjoint supports and total degree <= degree_bound.

    Each relation is an element lhs - rhs of the kernel of the generator
    matrix.  This is a bounded listing, not a generating set of the toric
    ideal.
    """
    gens = [tuple(g) for g in gens]
    k = len(gens)
    if not k:
        return ()
    by_point: dict[tuple, list[tuple]] = {}
    for deg in range(1, degree_bound + 1):
        for combo in itertools.combinations_with_replacement(range(k), deg):
            exps = tuple(combo.count(j) for j in range(k))
            pt = tuple(sum(e * g[i] for e, g in zip(exps, gens)) for i in range(len(gens[0])))
            by_point.setdefault(pt, []).append(exps)
    rels = set()
    for exps_list in by_point.values():
        for a, b in itertools.combinations(exps_list, 2):
            if any(x and y for x, y in zip(a, b)):
                continue
            lhs, rhs = max(a, b), min(a, b)
            rels.add(Relation(lhs, rhs))
    return tuple(sorted(rels, key=lambda r: (sum(r.lhs) + sum(r.rhs), tuple(-x for x in r.lhs), tuple(-x for x in r.rhs))))


@dataclass(frozen=True)
class SurfaceNormalForm:
    """sigma = cone((0,1), (d,-k)) after the unimodular ``basis_change``."""

    d: int
    k: int
    basis_change: tuple

    @property
    def rays(self):
        return ((0, 1), (self.d, -self.k))


def normal_form_2d(c: Cone) -> SurfaceNormalForm:
    """Normal form (d, k) of a two-ray cone in Z^2.

    The first input ray goes to (0,1).  Swapping the input rays replaces k by
    its inverse modulo d, so (d, k) is an invariant of the cone with ordered
    rays.
    """
    if c.ambient_rank != 2 or len(c.rays) != 2:
        raise ValueError("normal form needs a two-ray cone in a rank-2 lattice")
    (p0, p1), q = c.rays
    # rows r1, r2 with r1.p = 0 and r2.p = 1; det B = x p0 + y p1 = 1
    g, x, y = _xgcd(p0, p1)
    B = ((p1, -p0), (x, y))
    q0, q1 = intlin.matvec(B, q)
    if q0 < 0:
        B = intlin.matmul(((-1, 0), (0, 1)), B)
        q0, q1 = -q0, q1
    d = q0
    k = (-q1) % d
    s = (-k - q1) // d
    B = intlin.matmul(((1, 0), (s, 1)), B)
    assert intlin.matvec(B, c.rays[0]) == (0, 1) and intlin.matvec(B, q) == (d, -k)
    return SurfaceNormalForm(d, k, B)


def _xgcd(a: int, b: int):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0
