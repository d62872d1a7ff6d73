import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from toricmonoid import intlin
from toricmonoid.toric import (
    DemazureRoot, build_variety, enumerate_roots, ga_action, ga_action_poly, is_demazure_root, lnd_apply,
    make_root, root_family,
)


def test_build_surface(surface):
    assert surface.torus_rank == 0
    assert surface.hilbert == ((1, 0), (1, 1), (1, 2))
    assert surface.generator_names == ("a", "b", "c")


def test_build_with_torus_factor(line_torus, torus):
    assert line_torus.torus_rank == 1
    assert line_torus.hilbert == ((1, 0),)
    assert line_torus.torus_generators == ((0, 1),)
    assert line_torus.generator_names == ("a", "t1")
    assert torus.torus_rank == 2 and torus.hilbert == ()
    with pytest.raises(ValueError):
        build_variety(())


def test_build_slanted_torus_factor():
    X = build_variety(((1, 1, 0),))
    assert X.torus_rank == 2
    for h in X.hilbert:
        assert X.contains(h)
    # a pointed generator plus two torus generators span M
    basis = list(X.hilbert) + list(X.torus_generators)
    assert abs(intlin.determinant(basis)) == 1


def test_express(threefold, line_torus):
    assert threefold.express((2, 1, 0)) == ((2, 1, 0, 0), ())
    assert threefold.monomial_name((1, 1, -1)) == "d"
    assert line_torus.express((2, -3)) == ((2,), (-3,))
    with pytest.raises(ValueError, match="weight semigroup"):
        threefold.express((-1, 0, 0))


def test_is_demazure_root(surface, threefold):
    assert is_demazure_root(surface, 1, (3, -1))
    assert not is_demazure_root(surface, 1, (-1, -1))
    assert not is_demazure_root(threefold, 1, (-1, 0, 0))
    with pytest.raises(IndexError):
        is_demazure_root(surface, 3, (0, 0))


def test_enumerate_roots(surface, orthant, threefold, line_torus):
    assert [r.e for r in enumerate_roots(surface, 2, 5)] == [(0, 1), (1, 3), (2, 5)]
    assert [r.e for r in enumerate_roots(orthant, 1, 1)] == [(-1, 0), (-1, 1)]
    # every root of ray 3 pairs to -1 with (1,0,1)
    assert [r.e for r in enumerate_roots(threefold, 3, 1)] == [(0, 1, -1)]
    assert [r.e for r in enumerate_roots(line_torus, 1, 1)] == [(-1, 0), (-1, 1), (-1, -1)]


@pytest.mark.parametrize("l", range(6))
def test_surface_series_membership(surface, l):
    assert is_demazure_root(surface, 1, (l, -1))
    assert is_demazure_root(surface, 2, (l, 1 + 2 * l))


def test_make_root(surface):
    assert make_root(surface, (2, -1)) == DemazureRoot(1, (2, -1))
    with pytest.raises(ValueError):
        make_root(surface, (0, 0))
    with pytest.raises(ValueError):
        make_root(surface, (2, -1), 2)


def test_lnd(surface, orthant):
    t = lnd_apply(surface, DemazureRoot(1, (0, -1)), (1, 2))
    assert (t.coefficient, t.exponent) == (2, (1, 1))
    assert lnd_apply(surface, DemazureRoot(1, (0, -1)), (1, 0)).is_zero
    t = lnd_apply(orthant, DemazureRoot(1, (-1, 0)), (2, 0))
    assert (t.coefficient, t.exponent) == (2, (1, 0))
    with pytest.raises(ValueError):
        lnd_apply(orthant, DemazureRoot(1, (-1, 0)), (-1, 0))


def test_lnd_matches_cox_derivative(surface):
    # on Cox coordinates chi^u = x1^<p1,u> x2^<p2,u>, the root (0,-1) acts as x2 d/dx1
    x1, x2 = sympy.symbols("x1 x2")
    e = DemazureRoot(1, (0, -1))
    for u in [(1, 0), (1, 1), (1, 2), (3, 4)]:
        mono = x1 ** (u[1]) * x2 ** (2 * u[0] - u[1])
        t = lnd_apply(surface, e, u)
        w = t.exponent
        assert sympy.expand(x2 * sympy.diff(mono, x1)) == sympy.expand(t.coefficient * x1 ** w[1] * x2 ** (2 * w[0] - w[1]))


def test_lnd_nilpotent(threefold):
    for i in range(1, 5):
        for root in enumerate_roots(threefold, i, 1):
            for u in threefold.hilbert:
                poly = {u: 1}
                steps = intlin.dot(threefold.rays[i - 1], u) + 1
                for _ in range(steps):
                    nxt = {}
                    for w, c in poly.items():
                        t = lnd_apply(threefold, root, w)
                        if not t.is_zero:
                            nxt[t.exponent] = nxt.get(t.exponent, 0) + c * t.coefficient
                    poly = nxt
                assert poly == {}


def test_leibniz(surface):
    e = DemazureRoot(1, (1, -1))
    for u in surface.hilbert:
        for v in surface.hilbert:
            lhs = lnd_apply(surface, e, intlin.add(u, v))
            a, b = lnd_apply(surface, e, u), lnd_apply(surface, e, v)
            assert intlin.add(a.exponent, v) == intlin.add(u, b.exponent) == lhs.exponent
            assert a.coefficient + b.coefficient == lhs.coefficient


def test_ga_action_example(surface):
    a = sympy.Symbol("alpha")
    for l in range(3):
        terms = ga_action(surface, DemazureRoot(1, (l, -1)), a, (1, 2))
        assert [(t.coefficient, t.exponent) for t in terms] == [
            (1, (1, 2)), (2 * a, (l + 1, 1)), (a ** 2, (2 * l + 1, 0))]
    assert [t.exponent for t in ga_action(surface, DemazureRoot(1, (0, -1)), 0, (1, 2))][0] == (1, 2)
    assert len(ga_action(surface, DemazureRoot(1, (0, -1)), 5, (1, 0))) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(0, 3), st.integers(0, 3), st.integers(0, 2))
def test_ga_action_is_group_action(alpha, beta, i, j, l):
    X = build_variety(((0, 1), (2, -1)))
    e = DemazureRoot(1, (l, -1))
    u = intlin.add(intlin.scale(i, (1, 1)), intlin.scale(j, (1, 2)))
    once = ga_action_poly(X, e, alpha + beta, {u: 1})
    twice = ga_action_poly(X, e, alpha, ga_action_poly(X, e, beta, {u: 1}))
    assert once == twice
    assert all(X.contains(w) for w in once)


def test_root_family(surface, threefold, line_torus):
    fam = root_family(surface, 1, ["l", "-1"])
    assert fam.lower == (0,) and fam.at(2).e == (2, -1)
    with pytest.raises(ValueError):
        fam.at(-1)
    fam = root_family(threefold, 1, ["-1", "l2", "l3"])
    assert fam.lower == (0, 1) and fam.base == (-1, 0, 0)
    fam = root_family(line_torus, 1, ["-1", "e"])
    assert fam.lower == (None,) and fam.at(-7).e == (-1, -7)
    with pytest.raises(ValueError):
        root_family(surface, 1, ["l**2", "-1"])
    with pytest.raises(ValueError):
        root_family(surface, 1, ["l", "l - 1"])


def test_threefold_roots_at_rays_3_and_4(threefold):
    # rays 3 and 4 pair to -1 with e exactly when e3 = -1 - e1 resp. -1 - e2
    H = 5
    r3 = {(a, b, -1 - a) for a in range(0, H + 1) for b in range(a + 1, H + 1) if abs(-1 - a) <= H}
    r4 = {(a, b, -1 - b) for b in range(0, H + 1) for a in range(b + 1, H + 1) if abs(-1 - b) <= H}
    assert {r.e for r in enumerate_roots(threefold, 3, H)} == r3
    assert {r.e for r in enumerate_roots(threefold, 4, H)} == r4
