"""Cox coordinates of an affine toric variety and lifted monoid products.

X-bar = A^m x (K^x)^m~ maps onto X by chi^u -> x^u-bar, where u-bar collects
the ray pairings of u followed by its torus coordinates.  Points are plain
sequences of exact numbers (Fraction, int or sympy expressions).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod

import sympy

from . import intlin
from .bialg import ADDITIVE, CORANK1, TORIC, MonoidStructure, comultiply
from .intlin import AbelianGroupStructure, dot
from .toric import AffineToricVariety

DEFAULT_SEED = 20240917


@dataclass(frozen=True)
class CoxData:
    """Class group and grading of the Cox coordinates x_1 .. x_(m + m~).

    Degrees are tuples (free part..., torsion residues...) in the order of
    ``class_group``; torus coordinates always have degree zero.
    """

    m: int
    torus_rank: int
    class_group: AbelianGroupStructure
    degree_map: tuple
    bar: tuple  # (m + m~) x n matrix, u-bar = bar . u

    @property
    def size(self) -> int:
        return self.m + self.torus_rank

    def bar_of(self, u) -> tuple:
        return intlin.matvec(self.bar, u)

    def degree_of(self, exps) -> tuple:
        """Class-group degree of the monomial x^exps."""
        free = self.class_group.free_rank
        total = [0] * (free + len(self.class_group.torsion))
        for e, deg in zip(exps, self.degree_map):
            for k, g in enumerate(deg):
                total[k] += e * g
        for k, d in enumerate(self.class_group.torsion):
            total[free + k] %= d
        return tuple(total)


@lru_cache(maxsize=128)
def cox_data(X: AffineToricVariety) -> CoxData:
    n = X.lattice_rank
    rows = list(X.rays) + [X.dual_change[k] for k in range(X.pointed_rank, n)]
    bar = intlin.as_matrix(rows)
    size = len(bar)
    if not size:
        return CoxData(0, 0, AbelianGroupStructure(0), (), bar)
    U, D, V, Ui, Vi = intlin.smith_normal_form_with_inverses(bar)
    d = [D[k][k] if k < min(size, n) else 0 for k in range(size)]
    free_rows = [k for k in range(size) if d[k] == 0]
    tors_rows = [k for k in range(size) if d[k] > 1]
    group = AbelianGroupStructure(len(free_rows), tuple(d[k] for k in tors_rows))
    degrees = []
    for i in range(size):
        col = [Ui[k][i] for k in range(size)]
        degrees.append(tuple(col[k] for k in free_rows) + tuple(col[k] % d[k] for k in tors_rows))
    if group.free_rank == 1:
        first = next((deg[0] for deg in degrees if deg[0]), 0)
        if first < 0:
            degrees = [(-deg[0],) + deg[1:] for deg in degrees]
    return CoxData(X.m, X.torus_rank, group, tuple(degrees), bar)


def bar_monomial(X: AffineToricVariety, u) -> tuple:
    return _bar(X, X.require(u))


def _bar(X, u):
    return intlin.matvec(cox_data(X).bar, u)


def monomial_value(exps, point):
    """x^exps at a point; zero coordinates only ever carry exponent >= 0."""
    out = 1
    for e, x in zip(exps, point):
        if e:
            assert e > 0 or x != 0, "negative exponent on a vanishing coordinate"
            if e < 0 and isinstance(x, int):
                x = Fraction(x)  # int ** negative int would give a float
            out = out * x ** e
    return out


def quasitorus_action(cd: CoxData, element, point) -> tuple:
    """Action of h in H_X = Hom(Cl(X), K^x) on a Cox point.

    ``element`` lists one value per summand of Cl(X): a nonzero t for each
    free summand and a root of unity zeta with zeta^d = 1 for each Z/d.
    """
    summands = cd.class_group.free_rank + len(cd.class_group.torsion)
    element = tuple(element)
    if len(element) != summands:
        raise ValueError(f"quasitorus element needs {summands} entries")
    for z, d in zip(element[cd.class_group.free_rank:], cd.class_group.torsion):
        if sympy.simplify(sympy.sympify(z) ** d - 1) != 0:
            raise ValueError(f"{z} is not a {d}-th root of unity")
    out = []
    for x, deg in zip(point, cd.degree_map):
        out.append(x * monomial_value(deg, element))
    return tuple(out)


def invariant_monomial_check(X: AffineToricVariety) -> bool:
    cd = cox_data(X)
    zero = (0,) * (cd.class_group.free_rank + len(cd.class_group.torsion))
    return all(cd.degree_of(_bar(X, u)) == zero for u in X.generators)


def exactness_check(X: AffineToricVariety) -> bool:
    """M -> Z^(m + m~) -> Cl(X) is zero on a basis of M."""
    cd = cox_data(X)
    zero = (0,) * (cd.class_group.free_rank + len(cd.class_group.torsion))
    basis = intlin.identity(X.lattice_rank)
    return all(cd.degree_of(intlin.matvec(cd.bar, b)) == zero for b in basis)


def lifted_root_check(X: AffineToricVariety, e, i: int) -> bool:
    """bar(e) is a Demazure root of A^m x (K^x)^m~ at coordinate i."""
    eb = _bar(X, e)
    return eb[i - 1] == -1 and all(x >= 0 for j, x in enumerate(eb[:X.m]) if j != i - 1)


@dataclass(frozen=True)
class LiftedMonoid:
    structure: MonoidStructure
    ebar: tuple | None = None
    ray_index: int | None = None

    @property
    def variety(self) -> AffineToricVariety:
        return self.structure.variety

    @property
    def kind(self) -> str:
        return self.structure.kind


def lift(s: MonoidStructure) -> LiftedMonoid:
    if s.kind != CORANK1:
        return LiftedMonoid(s)
    X = s.variety
    i = s.root.ray_index
    if not lifted_root_check(X, s.root.e, i):
        raise AssertionError(f"lift of {s.root} is not a root of the total coordinate space")
    return LiftedMonoid(s, _bar(X, s.root.e), i)


def _check_point(L: LiftedMonoid, x):
    X = L.variety
    x = tuple(x)
    if len(x) != X.m + X.torus_rank:
        raise ValueError(f"Cox point needs {X.m + X.torus_rank} coordinates")
    if any(v == 0 for v in x[X.m:]):
        raise ValueError("torus coordinates of a Cox point must be nonzero")
    return x


def lifted_product(L: LiftedMonoid, x, y) -> tuple:
    x, y = _check_point(L, x), _check_point(L, y)
    if L.kind == TORIC:
        return tuple(a * b for a, b in zip(x, y))
    if L.kind == ADDITIVE:
        return tuple(a + b for a, b in zip(x, y))
    i = L.ray_index - 1
    rest = tuple(0 if j == i else v for j, v in enumerate(L.ebar))
    out = [a * b for a, b in zip(x, y)]
    out[i] = x[i] * monomial_value(rest, y) + monomial_value(rest, x) * y[i]
    return tuple(out)


def unit_point(L: LiftedMonoid) -> tuple:
    X = L.variety
    size = X.m + X.torus_rank
    if L.kind == ADDITIVE:
        return (0,) * size
    if L.kind == TORIC:
        return (1,) * size
    return tuple(0 if j == L.ray_index - 1 else 1 for j in range(size))


def random_point(L: LiftedMonoid, rng: random.Random) -> tuple:
    X = L.variety
    pt = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(X.m)]
    for _ in range(X.torus_rank):
        pt.append(Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 6)))
    return tuple(pt)


def coherence_at(L: LiftedMonoid, x, y) -> bool:
    """chi^u-bar(x * y) equals the comultiplication of chi^u at (x, y) for
    every algebra generator u."""
    X = L.variety
    xy = lifted_product(L, x, y)
    for u in X.generators:
        lhs = monomial_value(_bar(X, u), xy)
        rhs = sum(c * monomial_value(_bar(X, a), x) * monomial_value(_bar(X, b), y)
                  for (a, b), c in comultiply(L.structure, u).terms.items())
        if lhs != rhs:
            return False
    return True


def coherence_check(L: LiftedMonoid, samples: int = 20, seed: int = DEFAULT_SEED) -> bool:
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = random.Random(seed)
    for _ in range(samples):
        if not coherence_at(L, random_point(L, rng), random_point(L, rng)):
            return False
    return True


def symbolic_lifted_product(L: LiftedMonoid, ebar=None) -> tuple:
    """lifted_product on symbols x1.., y1..; ``ebar`` may carry sympy exponents."""
    X = L.variety
    size = X.m + X.torus_rank
    xs = sympy.symbols(f"x1:{size + 1}")
    ys = sympy.symbols(f"y1:{size + 1}")
    if L.kind != CORANK1:
        return tuple(sympy.expand(v) for v in lifted_product(L, xs, ys)) if size else ()
    eb = L.ebar if ebar is None else ebar
    i = L.ray_index - 1
    out = [a * b for a, b in zip(xs, ys)]
    mx = prod((xs[j] ** eb[j] for j in range(size) if j != i), start=sympy.Integer(1))
    my = prod((ys[j] ** eb[j] for j in range(size) if j != i), start=sympy.Integer(1))
    out[i] = xs[i] * my + mx * ys[i]
    return tuple(out)


def format_cox_product(L: LiftedMonoid, ebar=None) -> str:
    return "(" + ", ".join(str(v) for v in symbolic_lifted_product(L, ebar)) + ")"


def family_ebar(X: AffineToricVariety, fam) -> tuple:
    """bar(e(l)) of a root family as sympy expressions."""
    cd = cox_data(X)
    e = fam.expr()
    return tuple(sympy.expand(sum((c * v for c, v in zip(row, e)), sympy.Integer(0))) for row in cd.bar)


def verify_lift(L: LiftedMonoid, samples: int = 20, seed: int = DEFAULT_SEED) -> dict:
    X = L.variety
    unit = unit_point(L)
    rng = random.Random(seed)
    pts = [random_point(L, rng) for _ in range(3)]
    return {
        "coherence": coherence_check(L, samples, seed),
        "unit": all(lifted_product(L, unit, p) == p == lifted_product(L, p, unit) for p in pts),
        "lifted_root": L.kind != CORANK1 or lifted_root_check(X, L.structure.root.e, L.ray_index),
        "invariant_monomials": invariant_monomial_check(X),
        "exactness": exactness_check(X),
    }
