"""Comultiplications of the rank n, n-1 and 0 monoid structures and the
bialgebra checks run on them.

Elements of K[X]^(tensor k) are kept as exact maps from k-tuples of exponent
vectors to coefficients; structural equality of those maps is the comparison
used by every check.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, prod

import sympy

from . import intlin
from .intlin import dot, glex_key
from .toric import AffineToricVariety, DemazureRoot, RootFamily, is_demazure_root

TORIC, CORANK1, ADDITIVE = "toric", "corank1", "additive"


@dataclass(frozen=True)
class MonoidStructure:
    """A commutative monoid structure on X of rank n, n-1 or 0."""

    kind: str
    variety: AffineToricVariety
    root: DemazureRoot | None = None

    def __post_init__(self):
        X = self.variety
        if self.kind == CORANK1:
            if self.root is None or not is_demazure_root(X, self.root.ray_index, self.root.e):
                raise ValueError(f"{self.root} is not a Demazure root of X")
        elif self.kind == ADDITIVE:
            if not X.is_affine_space:
                raise ValueError("the additive structure needs X = A^n")
        elif self.kind != TORIC:
            raise ValueError(f"unknown monoid kind {self.kind!r}")
        if self.kind != CORANK1 and self.root is not None:
            raise ValueError(f"{self.kind} structures carry no root")

    @classmethod
    def toric(cls, X):
        return cls(TORIC, X)

    @classmethod
    def corank1(cls, X, root: DemazureRoot):
        return cls(CORANK1, X, root)

    @classmethod
    def additive(cls, X):
        return cls(ADDITIVE, X)

    @property
    def rank(self) -> int:
        n = self.variety.lattice_rank
        return {TORIC: n, CORANK1: n - 1, ADDITIVE: 0}[self.kind]

    def counit(self, u) -> int:
        """Value of chi^u at the unit point."""
        if self.kind == TORIC:
            return 1
        if self.kind == ADDITIVE:
            return int(not any(u))
        return int(dot(self.variety.rays[self.root.ray_index - 1], u) == 0)

    def describe(self) -> str:
        if self.kind == CORANK1:
            return f"corank1 e={self.root.e} at ray {self.root.ray_index}"
        return self.kind


class TensorElement:
    """Finite sum of coefficient * (chi^a1 (x) ... (x) chi^ak).

    Keys are k-tuples of exponent vectors.  Zero coefficients are never
    stored, so two elements are equal exactly when their term maps are.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            if c != 0:
                clean[tuple(tuple(a) for a in key)] = c
        self.terms = clean

    @classmethod
    def from_pairs(cls, pairs):
        out: dict = {}
        for key, c in pairs:
            key = tuple(tuple(a) for a in key)
            out[key] = out.get(key, 0) + c
        return cls(out)

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        return TensorElement.from_pairs(itertools.chain(self.terms.items(), other.terms.items()))

    def __mul__(self, other):
        return tensor_multiply(self, other)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: tuple(glex_key(a) for a in kv[0]))

    def swap(self):
        return TensorElement({tuple(reversed(k)): c for k, c in self.terms.items()})

    def __repr__(self):
        body = " + ".join(f"{c}*{k}" for k, c in self.sorted_terms())
        return f"TensorElement({body or '0'})"


TripleTensorElement = TensorElement


def tensor_multiply(t1: TensorElement, t2: TensorElement) -> TensorElement:
    """Factorwise product (a, b) * (a', b') = (a + a', b + b'), extended bilinearly."""
    pairs = []
    for k1, c1 in t1.terms.items():
        for k2, c2 in t2.terms.items():
            pairs.append((tuple(intlin.add(a, b) for a, b in zip(k1, k2)), c1 * c2))
    return TensorElement.from_pairs(pairs)


def comultiply(s: MonoidStructure, u) -> TensorElement:
    X = s.variety
    u = X.require(u)
    if s.kind == TORIC:
        return TensorElement({(u, u): 1})
    if s.kind == CORANK1:
        e = s.root.e
        m = dot(X.rays[s.root.ray_index - 1], u)
        pairs = []
        for j in range(m + 1):
            a = intlin.add(u, intlin.scale(m - j, e))
            b = intlin.add(u, intlin.scale(j, e))
            assert X.contains(a) and X.contains(b)
            pairs.append(((a, b), comb(m, j)))
        return TensorElement.from_pairs(pairs)
    # additive: prod_i (x_i (x) 1 + 1 (x) x_i)^(u_i) in the coordinates dual to the rays
    coords = _coordinate_basis(X)
    ubar = tuple(dot(p, u) for p in X.rays)
    pairs = []
    for ks in itertools.product(*(range(x + 1) for x in ubar)):
        a = _combination(coords, ks, X.lattice_rank)
        b = _combination(coords, tuple(x - k for x, k in zip(ubar, ks)), X.lattice_rank)
        pairs.append(((a, b), prod(comb(x, k) for x, k in zip(ubar, ks))))
    return TensorElement.from_pairs(pairs)


def _coordinate_basis(X):
    """Exponents h_i of the coordinate functions of X = A^n, <p_j, h_i> = delta_ij."""
    inv = intlin.integer_inverse(X.rays)  # rows p_j, so columns of inv are the h_i
    return tuple(tuple(inv[r][i] for r in range(X.lattice_rank)) for i in range(X.lattice_rank))


def _combination(vectors, coeffs, n):
    out = (0,) * n
    for v, c in zip(vectors, coeffs):
        out = intlin.add(out, intlin.scale(c, v))
    return out


def apply_left(s: MonoidStructure, t: TensorElement) -> TensorElement:
    """(Phi (x) id) t for a tensor of arity 2."""
    pairs = []
    for (a, b), c in t.terms.items():
        for (a1, a2), c1 in comultiply(s, a).terms.items():
            pairs.append(((a1, a2, b), c * c1))
    return TensorElement.from_pairs(pairs)


def apply_right(s: MonoidStructure, t: TensorElement) -> TensorElement:
    """(id (x) Phi) t for a tensor of arity 2."""
    pairs = []
    for (a, b), c in t.terms.items():
        for (b1, b2), c1 in comultiply(s, b).terms.items():
            pairs.append(((a, b1, b2), c * c1))
    return TensorElement.from_pairs(pairs)


def coassociativity_check(s: MonoidStructure, u) -> bool:
    phi = comultiply(s, u)
    return apply_left(s, phi) == apply_right(s, phi)


def cocommutativity_check(s: MonoidStructure, u) -> bool:
    phi = comultiply(s, u)
    return phi == phi.swap()


def counit_check(s: MonoidStructure) -> bool:
    """(eps (x) id) Phi = id = (id (x) eps) Phi on every algebra generator."""
    for u in s.variety.generators:
        phi = comultiply(s, u)
        left = TensorElement.from_pairs(((b,), c * s.counit(a)) for (a, b), c in phi.terms.items())
        right = TensorElement.from_pairs(((a,), c * s.counit(b)) for (a, b), c in phi.terms.items())
        target = TensorElement({(u,): 1})
        if left != target or right != target:
            return False
    return True


def homomorphism_check(s: MonoidStructure, u, v) -> bool:
    return comultiply(s, intlin.add(u, v)) == tensor_multiply(comultiply(s, u), comultiply(s, v))


def exponents_in_semigroup(s: MonoidStructure, u) -> bool:
    X = s.variety
    return all(X.contains(a) and X.contains(b) for a, b in comultiply(s, u).terms)


def verify_structure(s: MonoidStructure, degree_bound: int = 2) -> dict:
    """Run every bialgebra check on the generators and their pairwise sums.

    Returns {check name: bool}.  Homomorphism is tested on generator pairs
    whose sum has at most ``degree_bound`` factors.
    """
    X = s.variety
    gens = X.generators
    points = list(gens)
    if degree_bound >= 2:
        points += [intlin.add(a, b) for a, b in itertools.combinations_with_replacement(gens, 2)]
    pairs = list(itertools.combinations_with_replacement(gens, 2)) if degree_bound >= 2 else []
    return {
        "coassociativity": all(coassociativity_check(s, u) for u in points),
        "cocommutativity": all(cocommutativity_check(s, u) for u in points),
        "counit": counit_check(s),
        "homomorphism": all(homomorphism_check(s, u, v) for u, v in pairs),
        "exponents_in_S_X": all(exponents_in_semigroup(s, u) for u in points),
        "positive_integer_coefficients": all(
            isinstance(c, int) and c > 0 for u in points for c in comultiply(s, u).terms.values()),
    }


# --- evaluation and symbolic tables -------------------------------------------

def generator_table(s: MonoidStructure) -> list[tuple[str, str]]:
    """(generator name, formula for generator(x*y)) over the algebra generators."""
    X = s.variety
    rows = []
    for name, u in zip(X.generator_names, X.hilbert + X.torus_generators):
        rows.append((name, format_tensor(X, comultiply(s, u))))
    return rows


def format_tensor(X: AffineToricVariety, t: TensorElement) -> str:
    parts = []
    for (a, b), c in t.sorted_terms():
        factors = [f for f in (_eval_name(X, a, "x"), _eval_name(X, b, "y")) if f != "1"]
        if c != 1 or not factors:
            factors.insert(0, str(c))
        parts.append("*".join(factors))
    return " + ".join(parts) or "0"


def _eval_name(X, u, var):
    mult, torus = X.express(u)
    factors = []
    for name, e in zip(X.generator_names, mult + tuple(torus)):
        if e == 1:
            factors.append(f"{name}({var})")
        elif e:
            factors.append(f"{name}({var})^{e}")
    return "*".join(factors) or "1"


@dataclass(frozen=True)
class SymbolicTerm:
    """coefficient * prod g(x)^left[g] * prod g(y)^right[g] with sympy exponents."""

    coefficient: int
    left: tuple  # ((generator name, exponent expr), ...)
    right: tuple

    def render(self) -> str:
        factors = [_sym_factor(n, e, "x") for n, e in self.left if e != 0]
        factors += [_sym_factor(n, e, "y") for n, e in self.right if e != 0]
        if self.coefficient != 1 or not factors:
            factors.insert(0, str(self.coefficient))
        return "*".join(factors)

    def key(self):
        return (self.coefficient, frozenset(self.left), frozenset(self.right))


def _sym_factor(name, e, var):
    if e == 1:
        return f"{name}({var})"
    text = str(e)
    if not (e.is_Atom and (e.is_Symbol or e >= 0)):
        text = f"({text})"
    return f"{name}({var})^{text}"


def _symbolic_exponents(X, fam: RootFamily, w0, coeff_of_e):
    """Generator exponents of u + c e(l), as affine sympy expressions.

    The exponent is written as (its value at the anchor of the parameter box)
    + sum_k (l_k - anchor_k) c d_k; both pieces lie in S_X and are decomposed
    over the generators separately.
    """
    anchor = fam.anchor
    base_root = fam.at(*anchor).e
    const = intlin.add(w0, intlin.scale(coeff_of_e, base_root))
    mult, torus = X.express(const)
    exps = [sympy.Integer(x) for x in mult + tuple(torus)]
    for sym, lo, d in zip(fam.symbols, anchor, fam.directions):
        step = intlin.scale(coeff_of_e, d)
        if not any(step):
            continue
        dm, dt = X.express(step)
        for k, x in enumerate(dm + tuple(dt)):
            exps[k] += (sym - lo) * x
    return tuple((n, sympy.expand(e)) for n, e in zip(X.generator_names, exps))


def symbolic_comultiply(X: AffineToricVariety, fam: RootFamily, u) -> tuple:
    """Phi(chi^u) for the corank-one structures of a whole root family.

    <p_i, u> does not depend on the parameters, so the number of terms is
    fixed; only the exponents move, affinely in the parameters.
    """
    u = X.require(u)
    m = dot(X.rays[fam.ray_index - 1], u)
    terms = []
    for j in range(m + 1):
        terms.append(SymbolicTerm(comb(m, j),
                                  _symbolic_exponents(X, fam, u, j),
                                  _symbolic_exponents(X, fam, u, m - j)))
    return tuple(terms)


def symbolic_table(X: AffineToricVariety, fam: RootFamily) -> list[tuple[str, str]]:
    rows = []
    for name, u in zip(X.generator_names, X.hilbert + X.torus_generators):
        rows.append((name, " + ".join(t.render() for t in symbolic_comultiply(X, fam, u))))
    return rows


def evaluate_comultiply(t: TensorElement, chi_x, chi_y):
    """sum coeff * chi_x(a) * chi_y(b) for callables chi_x, chi_y on exponents."""
    return sum(c * chi_x(a) * chi_y(b) for (a, b), c in t.terms.items())
