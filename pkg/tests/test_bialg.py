import itertools

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from toricmonoid import intlin
from toricmonoid.bialg import (
    MonoidStructure, TensorElement, cocommutativity_check, coassociativity_check, comultiply, counit_check,
    generator_table, homomorphism_check, symbolic_comultiply, symbolic_table, tensor_multiply, verify_structure,
)
from toricmonoid.toric import DemazureRoot, build_variety, enumerate_roots, make_root, root_family


def laurent(u, syms):
    out = sympy.Integer(1)
    for e, s in zip(u, syms):
        out *= s ** e
    return out


def as_poly(t: TensorElement, n):
    xs, ys = sympy.symbols(f"X1:{n + 1}"), sympy.symbols(f"Y1:{n + 1}")
    return sympy.expand(sum(c * laurent(a, xs) * laurent(b, ys) for (a, b), c in t.terms.items()))


def corank1_oracle(X, root, u):
    """chi^u (x) chi^u (1 (x) chi^e + chi^e (x) 1)^<p_i,u>, expanded by sympy."""
    n = X.lattice_rank
    xs, ys = sympy.symbols(f"X1:{n + 1}"), sympy.symbols(f"Y1:{n + 1}")
    m = intlin.dot(X.rays[root.ray_index - 1], u)
    expr = laurent(u, xs) * laurent(u, ys) * (laurent(root.e, ys) + laurent(root.e, xs)) ** m
    return sympy.expand(expr)


def test_comultiply_surface_examples(surface):
    for l in range(4):
        s = MonoidStructure.corank1(surface, DemazureRoot(1, (l, -1)))
        assert comultiply(s, (1, 1)).terms == {((1, 1), (l + 1, 0)): 1, ((l + 1, 0), (1, 1)): 1}
        assert comultiply(s, (1, 2)).terms == {
            ((2 * l + 1, 0), (1, 2)): 1, ((l + 1, 1), (l + 1, 1)): 2, ((1, 2), (2 * l + 1, 0)): 1}


def test_toric_is_grouplike(threefold):
    s = MonoidStructure.toric(threefold)
    for u in [(1, 0, 0), (3, 2, -1), (0, 0, 0)]:
        assert comultiply(s, u).terms == {(u, u): 1}


def test_comultiply_rejects_outside(surface):
    s = MonoidStructure.toric(surface)
    with pytest.raises(ValueError, match="weight semigroup"):
        comultiply(s, (0, 1))


def test_structure_validation(surface, orthant):
    with pytest.raises(ValueError):
        MonoidStructure.additive(surface)
    with pytest.raises(ValueError):
        MonoidStructure.corank1(orthant, DemazureRoot(1, (-1, -1)))
    with pytest.raises(ValueError):
        MonoidStructure("bogus", orthant)
    assert MonoidStructure.additive(orthant).rank == 0
    assert MonoidStructure.corank1(orthant, DemazureRoot(1, (-1, 0))).rank == 1
    assert MonoidStructure.toric(orthant).rank == 2


def test_tensor_canonical_form():
    t = TensorElement.from_pairs([(((1,), (2,)), 3), (((1,), (2,)), -3), (((0,), (0,)), 1)])
    assert t.terms == {((0,), (0,)): 1}
    assert TensorElement({((1,), (1,)): 0}) == TensorElement()


def test_tensor_multiply(surface):
    s = MonoidStructure.corank1(surface, DemazureRoot(1, (1, -1)))
    unit = TensorElement({((0, 0), (0, 0)): 1})
    a, c = comultiply(s, (1, 0)), comultiply(s, (1, 2))
    assert tensor_multiply(a, c) == comultiply(s, (2, 2))
    assert tensor_multiply(c, unit) == c
    u, v = (1, 1), (1, 2)
    g = MonoidStructure.toric(surface)
    assert tensor_multiply(comultiply(g, u), comultiply(g, v)).terms == {((2, 3), (2, 3)): 1}


def test_checks_on_examples(surface, orthant):
    s = MonoidStructure.corank1(surface, DemazureRoot(1, (0, -1)))
    assert coassociativity_check(s, (1, 2))
    assert cocommutativity_check(s, (1, 2))
    assert counit_check(s)
    assert coassociativity_check(MonoidStructure.additive(orthant), (1, 1))
    assert all(verify_structure(MonoidStructure.additive(orthant)).values())


def test_checks_can_fail(surface):
    # (0,1) pairs to +1 with the first ray, so it is not a root; bypass validation
    bogus = object.__new__(MonoidStructure)
    object.__setattr__(bogus, "kind", "corank1")
    object.__setattr__(bogus, "variety", surface)
    object.__setattr__(bogus, "root", DemazureRoot(1, (0, 1)))
    assert not counit_check(bogus)
    with pytest.raises(AssertionError):
        comultiply(bogus, (1, 2))


def test_additive_matches_vector_addition(orthant):
    s = MonoidStructure.additive(orthant)
    X1, X2, Y1, Y2 = sympy.symbols("X1 X2 Y1 Y2")
    for u in [(2, 0), (1, 1), (3, 2)]:
        expected = sympy.expand((X1 + Y1) ** u[0] * (X2 + Y2) ** u[1])
        assert as_poly(comultiply(s, u), 2) == expected


def test_additive_on_skew_basis():
    X = build_variety(((1, 1), (0, 1)))
    s = MonoidStructure.additive(X)
    assert all(verify_structure(s).values())


@pytest.mark.parametrize("rays", [((0, 1), (2, -1)), ((1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)),
                                  ((1, 0),), ((1, 2), (3, 1))])
def test_corank1_matches_oracle(rays):
    X = build_variety(rays)
    for i in range(1, X.m + 1):
        for root in enumerate_roots(X, i, 2)[:4]:
            s = MonoidStructure.corank1(X, root)
            for u in X.generators:
                assert as_poly(comultiply(s, u), X.lattice_rank) == corank1_oracle(X, root, u)


def small_varieties():
    return st.sampled_from([((0, 1), (2, -1)), ((1, 0), (0, 1)), ((1, 0),), ((0, 1), (5, -2)),
                            ((1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1))])


@settings(max_examples=40, deadline=None)
@given(small_varieties(), st.data())
def test_bialgebra_properties(rays, data):
    X = build_variety(rays)
    i = data.draw(st.integers(1, X.m))
    roots = enumerate_roots(X, i, 3)
    root = data.draw(st.sampled_from(roots))
    s = MonoidStructure.corank1(X, root)
    u = data.draw(st.sampled_from(X.generators))
    v = data.draw(st.sampled_from(X.generators))
    assert coassociativity_check(s, u)
    assert cocommutativity_check(s, u)
    assert homomorphism_check(s, u, v)
    phi = comultiply(s, u)
    assert all(isinstance(c, int) and c > 0 for c in phi.terms.values())
    assert all(X.contains(a) and X.contains(b) for a, b in phi.terms)


def test_generator_table(surface):
    s = MonoidStructure.corank1(surface, DemazureRoot(1, (0, -1)))
    assert generator_table(s) == [
        ("a", "a(x)*a(y)"),
        ("b", "a(x)*b(y) + b(x)*a(y)"),
        ("c", "a(x)*c(y) + 2*b(x)*b(y) + c(x)*a(y)"),
    ]


def test_symbolic_table_agrees_with_numeric(threefold):
    fam = root_family(threefold, 1, ["-1", "l2", "l3"])
    for l2, l3 in itertools.product(range(3), range(1, 4)):
        s = MonoidStructure.corank1(threefold, fam.at(l2, l3))
        for u in threefold.hilbert:
            sym = symbolic_comultiply(threefold, fam, u)
            sub = {fam.symbols[0]: l2, fam.symbols[1]: l3}
            pairs = []
            for term in sym:
                left = tuple(int(e.subs(sub)) for _, e in term.left)
                right = tuple(int(e.subs(sub)) for _, e in term.right)
                a = tuple(sum(m * h[k] for m, h in zip(left, threefold.hilbert)) for k in range(3))
                b = tuple(sum(m * h[k] for m, h in zip(right, threefold.hilbert)) for k in range(3))
                pairs.append(((a, b), term.coefficient))
            assert TensorElement.from_pairs(pairs) == comultiply(s, u)


def test_symbolic_table_text(surface):
    fam = root_family(surface, 1, ["l", "-1"])
    assert dict(symbolic_table(surface, fam))["c"] == \
        "c(x)*a(y)^(2*l + 1) + 2*a(x)^l*b(x)*a(y)^l*b(y) + a(x)^(2*l + 1)*c(y)"
