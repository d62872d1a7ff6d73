"""Affine toric varieties, Demazure roots and their Ga-actions on monomials."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Sequence

import sympy

from . import intlin
from .cones import Cone, DualConeData, binomial_relations, decompose, dual_cone, hilbert_basis
from .intlin import dot, glex_key

LETTERS = "abcdefghijklmnopqrs"


@dataclass(frozen=True)
class AffineToricVariety:
    """X given by the rays of its cone in N = Z^n.

    When the rays do not span N_Q the variety splits as X0 x (K^x)^m~.  The
    unimodular ``basis_change`` B moves span(rays) cap N onto the first n - m~
    coordinates; M is changed by B^-T so pairings are preserved.  All public
    vectors (Hilbert basis, roots, exponents) stay in the input coordinates.
    """

    lattice_rank: int
    cone: Cone
    torus_rank: int
    basis_change: tuple
    dual: DualConeData
    hilbert: tuple
    torus_generators: tuple = ()

    @property
    def rays(self) -> tuple:
        return self.cone.rays

    @property
    def m(self) -> int:
        return len(self.cone.rays)

    @property
    def pointed_rank(self) -> int:
        return self.lattice_rank - self.torus_rank

    @cached_property
    def dual_change(self) -> tuple:
        """B^-T, taking M coordinates to split coordinates."""
        return intlin.transpose(intlin.integer_inverse(self.basis_change), self.lattice_rank)

    @property
    def generators(self) -> tuple:
        """Algebra generators of K[X]: Hilbert basis, then +/- torus generators."""
        neg = tuple(tuple(-x for x in t) for t in self.torus_generators)
        return self.hilbert + self.torus_generators + neg

    @property
    def generator_names(self) -> tuple:
        names = [LETTERS[k] if k < len(LETTERS) else f"g{k + 1}" for k in range(len(self.hilbert))]
        names += [f"t{k + 1}" for k in range(self.torus_rank)]
        return tuple(names)

    @property
    def is_affine_space(self) -> bool:
        return self.torus_rank == 0 and self.m == self.lattice_rank and \
            abs(intlin.determinant(self.rays)) == 1

    def contains(self, u) -> bool:
        return len(u) == self.lattice_rank and all(dot(p, u) >= 0 for p in self.rays)

    def require(self, u):
        u = tuple(u)
        if not self.contains(u):
            raise ValueError(f"exponent {u} is not in the weight semigroup S_X")
        return u

    def split(self, u) -> tuple[tuple, tuple]:
        """(pointed part, torus part) of u in split coordinates."""
        w = intlin.matvec(self.dual_change, u)
        return w[:self.pointed_rank], w[self.pointed_rank:]

    def relations(self, degree_bound: int = 2) -> tuple:
        return binomial_relations(self.hilbert, degree_bound)

    def express(self, u) -> tuple[tuple, tuple]:
        """Write u in S_X as (Hilbert-basis multiplicities, torus exponents)."""
        u = self.require(u)
        _, torus = self.split(u)
        rest = intlin.sub(u, _combine(self.torus_generators, torus, self.lattice_rank))
        mult = decompose(rest, self.hilbert, self.rays) if any(rest) else (0,) * len(self.hilbert)
        if mult is None:
            raise AssertionError(f"{u} has no decomposition over the Hilbert basis")
        return mult, torus

    def monomial_name(self, u) -> str:
        mult, torus = self.express(u)
        parts = [_power(n, e) for n, e in zip(self.generator_names, mult + torus) if e]
        return "*".join(parts) or "1"


def _power(name, e):
    return name if e == 1 else f"{name}^{e}"


def _combine(vectors, coeffs, n):
    out = (0,) * n
    for v, c in zip(vectors, coeffs):
        out = intlin.add(out, intlin.scale(c, v))
    return out


def build_variety(rays: Sequence[Sequence[int]], lattice_rank: int | None = None) -> AffineToricVariety:
    rays = tuple(tuple(int(x) for x in p) for p in rays)
    if lattice_rank is None:
        if not rays:
            raise ValueError("lattice rank is required when there are no rays")
        lattice_rank = len(rays[0])
    cone = Cone(lattice_rank, rays)
    B, r = intlin.saturating_basis_change(rays, lattice_rank)
    torus_rank = lattice_rank - r
    dual = dual_cone(cone)
    BT = intlin.transpose(B, lattice_rank)
    if r:
        split_rays = tuple(intlin.matvec(B, p)[:r] for p in rays)
        pointed = hilbert_basis(dual_cone(Cone(r, split_rays)))
        hilbert = tuple(intlin.matvec(BT, h + (0,) * torus_rank) for h in pointed)
    else:
        hilbert = ()
    torus_gens = tuple(intlin.matvec(BT, tuple(int(i == j) for j in range(lattice_rank)))
                       for i in range(r, lattice_rank))
    hilbert = tuple(sorted(hilbert, key=glex_key))
    return AffineToricVariety(lattice_rank, cone, torus_rank, B, dual, hilbert, torus_gens)


@dataclass(frozen=True)
class DemazureRoot:
    """e in M with <p_i, e> = -1 and <p_j, e> >= 0 otherwise; i is 1-based."""

    ray_index: int
    e: tuple

    def __str__(self):
        return f"R{self.ray_index}{self.e}"


def _check_index(X: AffineToricVariety, i: int):
    if not 1 <= i <= X.m:
        raise IndexError(f"ray index {i} out of range 1..{X.m}")


def is_demazure_root(X: AffineToricVariety, i: int, e) -> bool:
    _check_index(X, i)
    e = tuple(e)
    if len(e) != X.lattice_rank:
        return False
    for j, p in enumerate(X.rays, start=1):
        v = dot(p, e)
        if (j == i and v != -1) or (j != i and v < 0):
            return False
    return True


def root_ray(X: AffineToricVariety, e) -> int | None:
    """The ray index i with e in R_i, or None when e is not a root."""
    for i in range(1, X.m + 1):
        if is_demazure_root(X, i, e):
            return i
    return None


def make_root(X: AffineToricVariety, e, i: int | None = None) -> DemazureRoot:
    e = tuple(int(x) for x in e)
    if i is None:
        i = root_ray(X, e)
        if i is None:
            raise ValueError(f"{e} is not a Demazure root of X")
    elif not is_demazure_root(X, i, e):
        raise ValueError(f"{e} is not a Demazure root at ray {i}")
    return DemazureRoot(i, e)


def enumerate_roots(X: AffineToricVariety, i: int, height_bound: int) -> tuple:
    """All roots in R_i with every coordinate in [-height_bound, height_bound]."""
    _check_index(X, i)
    box = range(-height_bound, height_bound + 1)
    found = [e for e in itertools.product(box, repeat=X.lattice_rank) if is_demazure_root(X, i, e)]
    return tuple(DemazureRoot(i, e) for e in sorted(found, key=glex_key))


@dataclass(frozen=True)
class GradedTerm:
    coefficient: object
    exponent: tuple

    @property
    def is_zero(self) -> bool:
        return self.coefficient == 0


def lnd_apply(X: AffineToricVariety, root: DemazureRoot, u) -> GradedTerm:
    """The homogeneous LND of the root on chi^u: <p_i, u> chi^(u+e)."""
    u = X.require(u)
    c = dot(X.rays[root.ray_index - 1], u)
    return GradedTerm(c, intlin.add(u, root.e))


def ga_action(X: AffineToricVariety, root: DemazureRoot, alpha, u) -> tuple:
    """exp(alpha * d_e) chi^u = sum_j C(m, j) alpha^j chi^(u + j e), m = <p_i, u>."""
    u = X.require(u)
    m = dot(X.rays[root.ray_index - 1], u)
    terms = []
    for j in range(m + 1):
        w = intlin.add(u, intlin.scale(j, root.e))
        assert X.contains(w)
        terms.append(GradedTerm(comb(m, j) * alpha ** j, w))
    return tuple(terms)


def ga_action_poly(X, root, alpha, poly: dict) -> dict:
    """Linear extension of :func:`ga_action` to {exponent: coefficient} maps."""
    out: dict = {}
    for u, c in poly.items():
        for t in ga_action(X, root, alpha, u):
            out[t.exponent] = out.get(t.exponent, 0) + c * t.coefficient
    return {u: c for u, c in out.items() if c != 0}


# --- parametrized root families ----------------------------------------------

@dataclass(frozen=True)
class RootFamily:
    """Roots e(l) = base + sum_k l_k * direction_k with l_k >= lower_k.

    Every direction pairs to zero with p_i and nonnegatively with the other
    rays, so the admissible parameters form an upward-closed box and every
    direction lies in S_X.  ``lower_k`` is None for a direction that pairs to
    zero with all rays (a torus direction), whose parameter ranges over Z.
    """

    ray_index: int
    base: tuple
    params: tuple  # parameter names
    directions: tuple
    lower: tuple

    @cached_property
    def symbols(self) -> tuple:
        return tuple(sympy.Symbol(name, integer=True) for name in self.params)

    def expr(self) -> tuple:
        return tuple(
            sympy.Integer(b) + sum((s * d[k] for s, d in zip(self.symbols, self.directions)), sympy.Integer(0))
            for k, b in enumerate(self.base))

    def at(self, *values) -> DemazureRoot:
        for v, lo, name in zip(values, self.lower, self.params):
            if lo is not None and v < lo:
                raise ValueError(f"parameter {name}={v} below its lower bound {lo}")
        e = self.base
        for v, d in zip(values, self.directions):
            e = intlin.add(e, intlin.scale(v, d))
        return DemazureRoot(self.ray_index, e)

    @property
    def anchor(self) -> tuple:
        """Parameter values at the corner of the admissible box (0 if free)."""
        return tuple(0 if lo is None else lo for lo in self.lower)


def root_family(X: AffineToricVariety, i: int, exprs: Sequence, lower=None) -> RootFamily:
    """Parse coordinates like ``["l", "-1"]`` into a family of roots at ray i.

    Each coordinate must be affine in the parameters with integer
    coefficients.  Lower bounds are derived from the single-parameter
    constraints unless given explicitly.
    """
    _check_index(X, i)
    if len(exprs) != X.lattice_rank:
        raise ValueError(f"root needs {X.lattice_rank} coordinates")
    parsed = [sympy.sympify(str(x)) for x in exprs]
    syms = sorted(set().union(*(p.free_symbols for p in parsed)), key=lambda s: s.name)
    names = tuple(s.name for s in syms)
    base, dirs = [], [[0] * X.lattice_rank for _ in syms]
    for k, p in enumerate(parsed):
        poly = sympy.Poly(p, *syms) if syms else None
        if poly is not None and poly.total_degree() > 1:
            raise ValueError(f"coordinate {p} is not affine in the parameters")
        const = p.subs({s: 0 for s in syms})
        if not const.is_integer:
            raise ValueError(f"coordinate {p} has a non-integer constant")
        base.append(int(const))
        for j, s in enumerate(syms):
            c = p.coeff(s)
            if not c.is_integer:
                raise ValueError(f"coordinate {p} has a non-integer coefficient")
            dirs[j][k] = int(c)
    base, dirs = tuple(base), tuple(tuple(d) for d in dirs)
    p_i = X.rays[i - 1]
    for name, d in zip(names, dirs):
        if dot(p_i, d) != 0:
            raise ValueError(f"direction of {name} changes the pairing with p_{i}")
        if any(dot(p, d) < 0 for p in X.rays):
            raise ValueError(f"direction of {name} leaves the root set as {name} grows")
    if lower is None:
        lower = []
        for name, d in zip(names, dirs):
            if all(dot(p, d) == 0 for p in X.rays):
                lower.append(None)
                continue
            lo = None
            for j, p in enumerate(X.rays, start=1):
                if j == i:
                    continue
                slopes = [dot(p, dd) for dd in dirs]
                k = names.index(name)
                if slopes[k] > 0 and all(s == 0 for n, s in enumerate(slopes) if n != k):
                    bound = -(dot(p, base) // slopes[k])  # ceil(-<p,base>/slope)
                    lo = bound if lo is None else max(lo, bound)
            lower.append(lo if lo is not None else 0)
    lower = tuple(lower)
    fam = RootFamily(i, base, names, dirs, lower)
    if not is_demazure_root(X, i, fam.at(*fam.anchor).e):
        raise ValueError("could not determine a parameter box; pass lower bounds explicitly")
    return fam
