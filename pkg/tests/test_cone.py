import random
from fractions import Fraction

import pytest

from tcone.cone import (
    cone_membership,
    homogenize,
    naive_leading_form_set,
    restrict_infinity,
    tangent_cone_at_infinity,
)
from tcone.groebner import buchberger, ideal_equal
from tcone.polyring import (
    GREVLEX,
    LEX,
    VariableContext,
    ZeroPolynomialError,
    constant,
    evaluate_exact,
    leading_form,
    variables,
    zero,
)

from test_polyring import random_poly


# -- homogenize ----------------------------------------------------------


def test_homogenize_cusp(xy):
    ctx, x, y = xy
    h = homogenize(x**2 - y**3, "t")
    ectx = h.context
    assert ectx.names == ("x", "y", "t")
    xe, ye, te = variables(ectx)
    assert h == xe**2 * te - ye**3


def test_homogenize_quartic_generator(xyz):
    # g2^h = x^3 z - y^2 z t + z^3 t
    ctx, x, y, z = xyz
    h = homogenize(x**3 * z - y**2 * z + z**3, "t")
    xe, ye, ze, te = variables(h.context)
    assert h == xe**3 * ze - ye**2 * ze * te + ze**3 * te


def test_homogenize_already_homogeneous(xy):
    ctx, x, y = xy
    h = homogenize(x * y, "t")
    assert all(m.exponents[2] == 0 for m in h.terms)
    assert h.is_homogeneous()


def test_homogenize_errors(xy):
    ctx, x, y = xy
    with pytest.raises(ZeroPolynomialError):
        homogenize(zero(ctx), "t")
    with pytest.raises(ValueError):
        homogenize(x, "y")


def test_homogenize_sets_var_to_one_recovers(xy):
    ctx, x, y = xy
    rng = random.Random(3)
    for _ in range(50):
        f = random_poly(ctx, rng)
        if f.is_zero():
            continue
        h = homogenize(f, "t")
        assert h.is_homogeneous()
        back = restrict_at_one(h, "t")
        assert back == f


def restrict_at_one(g, var):
    """Substitute 1 for var, dropping it from the context (test helper)."""
    from tcone.polyring import Monomial, Polynomial

    i = g.context.index(var)
    names = g.context.names[:i] + g.context.names[i + 1:]
    ctx = VariableContext(names)
    terms = {}
    for m, c in g.terms.items():
        key = Monomial(m.exponents[:i] + m.exponents[i + 1:])
        terms[key] = terms.get(key, Fraction(0)) + c
    return Polynomial(ctx, terms)


# -- restrict_infinity ------------------------------------------------------


def test_restrict_quartic_generator(xyz):
    ctx, x, y, z = xyz
    h = homogenize(x**3 * z - y**2 * z + z**3, "t")
    r = restrict_infinity(h, "t")
    assert r == x**3 * z


def test_restrict_constant(xy):
    ctx, x, y = xy
    c = homogenize(constant(ctx, Fraction(5, 2)), "t")
    assert restrict_infinity(c, "t") == constant(ctx, Fraction(5, 2))


def test_restrict_unknown_variable(xy):
    ctx, x, y = xy
    with pytest.raises(KeyError):
        restrict_infinity(x, "t")


def test_two_path_equality_random():
    # homogenize then restrict equals the top-degree form
    ctx = VariableContext(("x", "y", "z"))
    rng = random.Random(12)
    for _ in range(100):
        f = random_poly(ctx, rng)
        if f.is_zero():
            continue
        assert restrict_infinity(homogenize(f, "_t"), "_t") == leading_form(f)


# -- tangent cone pipeline ----------------------------------------------------


def test_cone_five_lines(five_lines):
    ctx, f1, f2 = five_lines
    x, y, z = variables(ctx)
    cone = tangent_cone_at_infinity([f1, f2], GREVLEX)
    expected = [x * y, x**3 * z, y * z * (y**2 - z**2)]
    assert ideal_equal(list(cone.generators.generators), expected, GREVLEX)
    for g in cone.generators:
        assert g.is_homogeneous()


def test_cone_cusp(xy):
    ctx, x, y = xy
    cone = tangent_cone_at_infinity([x**2 - y**3], GREVLEX)
    assert cone.generators.generators == (y**3,)
    assert cone_membership(cone, (1, 0))
    assert cone_membership(cone, (Fraction(7, 3), 0))
    assert not cone_membership(cone, (0, 1))


def test_cone_sum_ideal_is_origin(xy):
    ctx, x, y = xy
    cone = tangent_cone_at_infinity([x, y - x**2], GREVLEX)
    assert set(cone.generators.generators) == {x, y}
    assert cone_membership(cone, (0, 0))
    assert not cone_membership(cone, (0, 1))
    assert not cone_membership(cone, (1, 0))


def test_cone_rejects_non_degree_order(xy):
    ctx, x, y = xy
    with pytest.raises(ValueError):
        tangent_cone_at_infinity([x], LEX)


def test_cone_whole_ring(xy):
    ctx, x, y = xy
    cone = tangent_cone_at_infinity([x, constant(ctx, 2)], GREVLEX)
    assert cone.generators.generators == (constant(ctx, 1),)
    # empty cone variety: even the origin is excluded
    assert not cone_membership(cone, (0, 0))


# -- membership ---------------------------------------------------------------


def test_cone_membership_five_lines(five_lines):
    ctx, f1, f2 = five_lines
    cone = tangent_cone_at_infinity([f1, f2], GREVLEX)
    for v in [(0, 0, 1), (0, 1, 0), (1, 0, 0), (0, 1, 1), (0, 1, -1)]:
        assert cone_membership(cone, v)
    for v in [(1, 1, 0), (1, 0, 1)]:
        assert not cone_membership(cone, v)


def test_cone_membership_arity(five_lines):
    ctx, f1, f2 = five_lines
    cone = tangent_cone_at_infinity([f1, f2], GREVLEX)
    with pytest.raises(ValueError):
        cone_membership(cone, (0, 0))


def test_cone_membership_scale_invariant(five_lines):
    ctx, f1, f2 = five_lines
    cone = tangent_cone_at_infinity([f1, f2], GREVLEX)
    rng = random.Random(8)
    points = [(0, 0, 1), (0, 1, 1), (1, 1, 0), (2, 3, 5), (0, 2, 1)]
    for v in points:
        for _ in range(10):
            lam = Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice([-1, 1])
            scaled = tuple(lam * Fraction(c) for c in v)
            assert cone_membership(cone, scaled) == cone_membership(cone, v)


def test_cone_monotone_under_extra_generators(five_lines):
    # a larger ideal (smaller variety) never gains cone members
    ctx, f1, f2 = five_lines
    x, y, z = variables(ctx)
    small = tangent_cone_at_infinity([f1, f2], GREVLEX)
    large = tangent_cone_at_infinity([f1, f2, y - z], GREVLEX)
    points = [(0, 0, 1), (0, 1, 0), (1, 0, 0), (0, 1, 1), (0, 1, -1),
              (1, 1, 0), (1, 2, 3), (0, 2, 1)]
    for v in points:
        if cone_membership(large, v):
            assert cone_membership(small, v)


def test_principal_ideal_cone_is_leading_form():
    ctx = VariableContext(("x", "y"))
    rng = random.Random(77)
    done = 0
    while done < 20:
        f = random_poly(ctx, rng, max_degree=5)
        if f.is_zero() or f.is_constant():
            continue
        cone = tangent_cone_at_infinity([f], GREVLEX)
        assert ideal_equal(list(cone.generators.generators), [leading_form(f)], GREVLEX)
        done += 1


# -- the naive construction and its failure -----------------------------------


def test_naive_set_five_lines(five_lines):
    ctx, f1, f2 = five_lines
    x, y, z = variables(ctx)
    naive = naive_leading_form_set([f1, f2])
    assert naive == [x * y, x**3 * z]


def test_naive_separation_witness(five_lines):
    # (0,2,1) kills both naive forms but not the extra cone generator
    ctx, f1, f2 = five_lines
    x, y, z = variables(ctx)
    witness = (0, 2, 1)
    for g in naive_leading_form_set([f1, f2]):
        assert evaluate_exact(g, witness) == 0
    extra = y * z * (y**2 - z**2)
    assert evaluate_exact(extra, witness) == 6
    cone = tangent_cone_at_infinity([f1, f2], GREVLEX)
    assert not cone_membership(cone, witness)


def test_naive_contains_cone(five_lines):
    # wherever cone membership holds, every naive form vanishes
    ctx, f1, f2 = five_lines
    cone = tangent_cone_at_infinity([f1, f2], GREVLEX)
    naive = naive_leading_form_set([f1, f2])
    for v in [(0, 0, 1), (0, 1, 0), (1, 0, 0), (0, 1, 1), (0, 1, -1), (0, 0, 0)]:
        if cone_membership(cone, v):
            assert all(evaluate_exact(g, v) == 0 for g in naive)


def test_naive_single_generator_matches_cone(xy):
    ctx, x, y = xy
    f = x**2 - y**3
    naive = naive_leading_form_set([f])
    cone = tangent_cone_at_infinity([f], GREVLEX)
    assert ideal_equal(naive, list(cone.generators.generators), GREVLEX)
