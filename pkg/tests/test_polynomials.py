import math
import random
from fractions import Fraction

import pytest

from entrokit.errors import NotPrimitive, RootOfUnityDegeneracy, ZeroConstantTerm, \
    ZeroPolynomial
from entrokit.polynomials import (
    IntPolynomial,
    RatPolynomial,
    content_primitive,
    cyclotomic,
    delta_exact,
    delta_sequence,
    delta_sequence_exact,
    is_zero_mahler,
    poly_from_json,
    poly_to_json,
    reciprocal,
    resultant,
    squarefree_decomposition,
    strip_cyclotomic_factors,
    try_exact_divide,
)

LEHMER = IntPolynomial((1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1))


def test_content_primitive_examples():
    c, p = content_primitive(IntPolynomial((-1, -1, 1)).to_rational())
    assert c == 1 and p.coeffs == (-1, -1, 1)
    c, p = content_primitive(RatPolynomial([Fraction(-1, 2), Fraction(1, 2)]))
    assert c == Fraction(1, 2) and p.coeffs == (-1, 1)
    c, p = content_primitive(RatPolynomial([Fraction(-1, 2), 1]))
    assert c == Fraction(1, 2) and p.coeffs == (-1, 2)


def test_content_primitive_round_trip():
    rng = random.Random(7)
    for _ in range(60):
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(rng.randint(1, 7))]
        if all(c == 0 for c in coeffs):
            coeffs.append(Fraction(1))
        f = RatPolynomial(coeffs)
        content, prim = content_primitive(f)
        rebuilt = [content * c for c in prim.coeffs]
        assert tuple(rebuilt) == f.coeffs
        assert prim.lead > 0
        assert prim.content() in (1, -1)


def test_content_rejects_zero():
    with pytest.raises(ZeroPolynomial):
        content_primitive(RatPolynomial([]))


def test_cyclotomic_small():
    assert cyclotomic(1).coeffs == (-1, 1)
    assert cyclotomic(3).coeffs == (1, 1, 1)
    # oracle: exact division of t^12 - 1 by the proper-divisor cyclotomics
    t12 = IntPolynomial((-1,) + (0,) * 11 + (1,))
    q = t12
    for d in (1, 2, 3, 4, 6):
        q = try_exact_divide(q, cyclotomic(d))
    assert q.coeffs == cyclotomic(12).coeffs == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("m", range(1, 31))
def test_cyclotomic_product_identity(m):
    prod = IntPolynomial((1,))
    for d in range(1, m + 1):
        if m % d == 0:
            prod = prod * cyclotomic(d)
    assert prod.coeffs == ((-1,) + (0,) * (m - 1) + (1,))


def test_is_zero_mahler():
    assert is_zero_mahler(IntPolynomial((1, 1, 1)))
    assert not is_zero_mahler(IntPolynomial((-1, -1, 0, 1)))
    assert not is_zero_mahler(IntPolynomial((-1, 2)))
    assert is_zero_mahler(cyclotomic(7) * cyclotomic(12))
    assert is_zero_mahler(-cyclotomic(5))


def test_is_zero_mahler_products_up_to_20():
    for m1 in range(1, 21):
        for m2 in range(m1, 21):
            assert is_zero_mahler(cyclotomic(m1) * cyclotomic(m2))


def test_is_zero_mahler_requires_primitive():
    with pytest.raises(NotPrimitive):
        is_zero_mahler(IntPolynomial((2, 2)))


def test_strip_cyclotomic_factors():
    f = cyclotomic(4) * cyclotomic(4) * IntPolynomial((-2, 1))
    factors, cofactor = strip_cyclotomic_factors(f)
    assert factors == [(4, 2)]
    assert cofactor.coeffs == (-2, 1)


def test_reciprocal():
    assert reciprocal(IntPolynomial((-1, -1, 1))).coeffs == (-1, 1, 1)
    assert reciprocal(LEHMER).coeffs == LEHMER.coeffs
    assert reciprocal(IntPolynomial((-1, 2))).coeffs == (-2, 1)
    with pytest.raises(ZeroConstantTerm):
        reciprocal(IntPolynomial((0, 1)))


def test_delta_exact_examples():
    assert delta_sequence_exact(IntPolynomial((-2, 1)), 3) == [1, 3, 7]
    assert delta_sequence_exact(IntPolynomial((-1, -1, 1)), 5) == [1, 1, 4, 5, 11]


def test_delta_certified_matches_exact_oracle():
    f = IntPolynomial((-1, -1, 1))
    seq = delta_sequence(f, 12)
    for n, (value, err) in enumerate(zip(seq.values, seq.error_bounds), start=1):
        exact = delta_exact(f, n)
        assert abs(value - exact) <= err + 1e-9 * exact


def test_delta_degenerate():
    with pytest.raises(RootOfUnityDegeneracy):
        delta_sequence(IntPolynomial((-1, 1)), 2)
    # a cyclotomic factor beyond the horizon is fine
    seq = delta_sequence(cyclotomic(12) * IntPolynomial((-2, 1)), 5)
    for n, value in enumerate(seq.values, start=1):
        assert abs(value - delta_exact(cyclotomic(12) * IntPolynomial((-2, 1)), n)) \
            <= seq.error_bounds[n - 1] + 1e-6


def test_delta_slope_converges_to_measure():
    # log D_n / n approaches m(t^2 - t - 1) = log golden ratio
    f = IntPolynomial((-1, -1, 1))
    seq = delta_sequence(f, 200)
    slope = math.log(seq.values[-1]) / 200
    assert abs(slope - math.log((1 + 5 ** 0.5) / 2)) <= 0.05


def test_resultant_against_eigenvalue_product():
    # Res(f, g) = lead(f)^deg(g) * prod g(root): for f = (t-2)(t-3),
    # g = t^2 - 1: (4-1)(9-1) = 24
    f = IntPolynomial((6, -5, 1))
    g = IntPolynomial((-1, 0, 1))
    assert resultant(f, g) == 24


def test_squarefree_decomposition():
    f = IntPolynomial((-1, 1)) * IntPolynomial((-1, 1)) * IntPolynomial((-2, 1))
    parts = squarefree_decomposition(f)
    assert (IntPolynomial((-2, 1)), 1) in parts
    assert (IntPolynomial((-1, 1)), 2) in parts


def test_poly_json_round_trip():
    f = RatPolynomial([Fraction(1, 2), Fraction(-3), Fraction(2, 7)])
    assert poly_from_json(poly_to_json(f)).coeffs == f.coeffs
    g = IntPolynomial((1, 0, -2))
    assert poly_from_json(poly_to_json(g)).coeffs == (1, 0, -2)
