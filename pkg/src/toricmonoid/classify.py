"""Isomorphism classes of commutative monoid structures.

Two corank-one structures are isomorphic exactly when a lattice automorphism
preserving the fan moves one root onto the other.  For surfaces the roots come
in two arithmetic series and the question reduces to whether the swap of the
two rays is defined over N.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import intlin
from .bialg import MonoidStructure, generator_table, symbolic_table
from .cones import Cone, SurfaceNormalForm, _xgcd, normal_form_2d
from .coxlift import cox_data, family_ebar, format_cox_product, lift
from .toric import AffineToricVariety, DemazureRoot, build_variety, is_demazure_root, root_family


def root_series(nf: SurfaceNormalForm, i: int, count: int) -> tuple:
    """First ``count`` roots of ray i of cone((0,1), (d,-k))."""
    if i not in (1, 2):
        raise ValueError(f"a surface cone has rays 1 and 2, not {i}")
    if count < 0:
        raise ValueError("count must be nonnegative")
    if i == 1:
        return tuple(DemazureRoot(1, (l, -1)) for l in range(count))
    base = series_two_base(nf)
    return tuple(DemazureRoot(2, (base[0] + l * nf.k, base[1] + l * nf.d)) for l in range(count))


def series_two_base(nf: SurfaceNormalForm) -> tuple:
    """Solution of d*x - k*y = -1 with the least y >= 0."""
    d, k = nf.d, nf.k
    for y in range(d):
        if (k * y - 1) % d == 0:
            return ((k * y - 1) // d, y)
    raise AssertionError(f"no root for d={d}, k={k}")


def tau_is_integral(nf: SurfaceNormalForm) -> bool:
    return (nf.k * nf.k - 1) % nf.d == 0


def tau_matrix(nf: SurfaceNormalForm) -> tuple:
    """The map of N swapping (0,1) and (d,-k)."""
    if not tau_is_integral(nf):
        raise ValueError("rays not swappable over N")
    d, k = nf.d, nf.k
    return ((k, d), ((1 - k * k) // d, -k))


def tau_pair(nf: SurfaceNormalForm, e: DemazureRoot) -> DemazureRoot:
    T = tau_matrix(nf)
    rays = nf.rays
    if e.ray_index not in (1, 2) or intlin.dot(rays[e.ray_index - 1], e.e) != -1:
        raise ValueError(f"{e} is not a root of the normal-form cone")
    image = intlin.matvec(intlin.transpose(T), e.e)
    return DemazureRoot(3 - e.ray_index, image)


def _pointed_part(X: AffineToricVariety, e) -> tuple:
    return X.split(e)[0]


def isomorphic_roots(X: AffineToricVariety, r1: DemazureRoot, r2: DemazureRoot) -> bool:
    """Whether the corank-one structures of r1 and r2 are isomorphic.

    With torus factors only the pointed part matters: an automorphism
    (w0, wt) -> (A^T w0, X^T w0 + wt) can match any torus parts because the
    pointed part of a root is primitive.
    """
    for r in (r1, r2):
        if not is_demazure_root(X, r.ray_index, r.e):
            raise ValueError(f"{r} is not a Demazure root of X")
    if X.torus_rank:
        rays = tuple(intlin.matvec(X.basis_change, p)[:X.pointed_rank] for p in X.rays)
        e1, e2 = _pointed_part(X, r1.e), _pointed_part(X, r2.e)
    else:
        rays, e1, e2 = X.rays, r1.e, r2.e
    for T in intlin.lattice_automorphism_candidates(rays, rays):
        if intlin.matvec(intlin.transpose(T), e2) == tuple(e1):
            return True
    return False


def classify_roots(X: AffineToricVariety, roots) -> list[list[DemazureRoot]]:
    """Partition roots into isomorphism classes, in first-seen order."""
    classes: list[list[DemazureRoot]] = []
    for r in roots:
        for cls in classes:
            if isomorphic_roots(X, cls[0], r):
                cls.append(r)
                break
        else:
            classes.append([r])
    return classes


@dataclass
class Representative:
    rank: int
    structure: MonoidStructure
    table: list
    cox_product: str

    def to_dict(self) -> dict:
        s = self.structure
        out = {
            "rank": self.rank,
            "kind": s.kind,
            "comultiplication": [{"generator": g, "formula": f} for g, f in self.table],
            "cox_product": self.cox_product,
        }
        if s.root is not None:
            out["root"] = list(s.root.e)
            out["ray_index"] = s.root.ray_index
        return out


@dataclass
class ClassificationReport:
    rays: tuple
    lattice_rank: int
    description: str
    class_group: str
    root_count: int
    normal_form: tuple | None = None
    tau_integral: bool | None = None
    representatives: list = field(default_factory=list)
    series: list = field(default_factory=list)
    pairing: list = field(default_factory=list)

    def by_rank(self, rank: int) -> list:
        return [r for r in self.representatives if r.rank == rank]

    def to_dict(self) -> dict:
        return {
            "rays": [list(p) for p in self.rays],
            "lattice_rank": self.lattice_rank,
            "description": self.description,
            "class_group": self.class_group,
            "root_count": self.root_count,
            "normal_form": None if self.normal_form is None
            else {"d": self.normal_form[0], "k": self.normal_form[1]},
            "tau_integral": self.tau_integral,
            "classes": {str(rank): [r.to_dict() for r in self.by_rank(rank)] for rank in (2, 1, 0)},
            "series": self.series,
            "pairing": self.pairing,
        }


def _representative(s: MonoidStructure) -> Representative:
    return Representative(s.rank, s, generator_table(s), format_cox_product(lift(s)))


def _to_input(nf: SurfaceNormalForm, e) -> tuple:
    """Normal-form M coordinates back to input coordinates: e = B^T e'."""
    return intlin.matvec(intlin.transpose(nf.basis_change), e)


def _series_entry(X, i, exprs) -> dict:
    fam = root_family(X, i, exprs)
    s = MonoidStructure.corank1(X, fam.at(*fam.anchor))
    return {
        "ray_index": i,
        "root": [str(x) for x in fam.expr()],
        "parameters": {name: lo for name, lo in zip(fam.params, fam.lower)},
        "comultiplication": [{"generator": g, "formula": f} for g, f in symbolic_table(X, fam)],
        "cox_product": format_cox_product(lift(s), family_ebar(X, fam)),
    }


def _affine_strings(base, step, name="l"):
    out = []
    for b, s in zip(base, step):
        expr = f"{b}" if not s else f"{b} + {s}*{name}"
        out.append(expr)
    return out


def classify_surface(rays, root_count: int = 3) -> ClassificationReport:
    rays = tuple(tuple(int(x) for x in p) for p in rays)
    if any(len(p) != 2 for p in rays):
        raise ValueError("surface classification needs rays in Z^2")
    if len(rays) > 2:
        raise ValueError("more than two rays in Z^2 do not span a strongly convex cone with all rays extremal")
    if root_count < 0:
        raise ValueError("root_count must be nonnegative")
    X = build_variety(rays, 2)
    group = str(cox_data(X).class_group)
    reps = [_representative(MonoidStructure.toric(X))]
    if not rays:
        return ClassificationReport(rays, 2, "algebraic torus (K^x)^2", group, root_count, representatives=reps)
    if len(rays) == 1:
        g, x, y = _xgcd(*rays[0])
        e = (-x, -y)
        reps.append(_representative(MonoidStructure.corank1(X, DemazureRoot(1, e))))
        # all roots differ by the torus direction; one family covers them
        t = (-rays[0][1], rays[0][0])
        series = [_series_entry(X, 1, _affine_strings(e, t, "t"))]
        return ClassificationReport(rays, 2, "A^1 x K^x", group, root_count,
                                    representatives=reps, series=series)
    nf = normal_form_2d(Cone(2, rays))
    integral = tau_is_integral(nf)
    s1 = root_series(nf, 1, root_count)
    s2 = root_series(nf, 2, root_count)
    for r in s1:
        reps.append(_representative(MonoidStructure.corank1(X, DemazureRoot(1, _to_input(nf, r.e)))))
    if not integral:
        for r in s2:
            reps.append(_representative(MonoidStructure.corank1(X, DemazureRoot(2, _to_input(nf, r.e)))))
    if nf.d == 1 and nf.k == 0:
        reps.append(_representative(MonoidStructure.additive(X)))
    base1, step1 = _to_input(nf, (0, -1)), _to_input(nf, (1, 0))
    base2, step2 = _to_input(nf, series_two_base(nf)), _to_input(nf, (nf.k, nf.d))
    series = [_series_entry(X, 1, _affine_strings(base1, step1)),
              _series_entry(X, 2, _affine_strings(base2, step2))]
    pairing = []
    if integral:
        for r in s2:
            partner = tau_pair(nf, r)
            pairing.append({"ray_2": list(_to_input(nf, r.e)), "ray_1": list(_to_input(nf, partner.e))})
    desc = "A^2" if (nf.d, nf.k) == (1, 0) else f"affine toric surface of type (d, k) = ({nf.d}, {nf.k})"
    return ClassificationReport(rays, 2, desc, group, root_count, (nf.d, nf.k), integral,
                                reps, series, pairing)
