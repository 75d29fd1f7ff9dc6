import math
import random
from fractions import Fraction

import pytest

from entrokit.errors import InputError, WrongDomain
from entrokit.linalg import RatMatrix, char_poly, solve_columns
from entrokit.linear_entropy import (
    LinearFlow,
    algebraic_entropy,
    classify_growth,
    eigenvalue_lower_bound,
    invariant_span,
    pinsker_subspace,
    restrict_to_subspace,
    topological_entropy,
    trajectory_oracle,
)
from entrokit.mahler import mahler_measure

FIB = RatMatrix([[0, 1], [1, 1]])
GOLDEN = math.log((1 + 5 ** 0.5) / 2)


def test_multiplication_map():
    v = algebraic_entropy(LinearFlow.on_integer_lattice(RatMatrix([[6]])))
    assert v.kind == "exact_log" and v.base == 6 and v.multiplier == 1


def test_fibonacci_matrix():
    v = algebraic_entropy(LinearFlow.on_integer_lattice(FIB))
    assert v.as_float() == pytest.approx(GOLDEN, abs=1e-10)


def test_rational_scalar_half():
    v = algebraic_entropy(LinearFlow.on_rationals(RatMatrix([[Fraction(1, 2)]])))
    assert v.kind == "exact_log" and v.base == 2


def test_padic_scalars():
    assert algebraic_entropy(LinearFlow.padic_scalar(3, Fraction(1, 2))).is_zero()
    v = algebraic_entropy(LinearFlow.padic_scalar(5, Fraction(2, 25)))
    assert v.base == 5 and v.multiplier == 2
    v = algebraic_entropy(LinearFlow.padic_scalar(2, 8))
    assert v.is_zero()
    with pytest.raises(InputError):
        LinearFlow.padic_scalar(6, 1)


def test_zn_requires_integer_entries():
    with pytest.raises(InputError):
        LinearFlow.on_integer_lattice(RatMatrix([[Fraction(1, 2)]]))


def test_bowen_on_reals():
    v = topological_entropy(LinearFlow.on_reals(RatMatrix([[2, 0], [0, Fraction(1, 2)]])))
    assert v.kind == "exact_log" and v.base == 2 and v.multiplier == 1
    v = topological_entropy(LinearFlow.on_reals(RatMatrix([[0, -1], [1, 0]])))
    assert v.is_zero()


def test_reals_drop_the_leading_term():
    # x -> x/2 on R contracts: entropy 0, unlike the Q-linear value log 2
    half = RatMatrix([[Fraction(1, 2)]])
    assert algebraic_entropy(LinearFlow.on_reals(half)).is_zero()
    assert algebraic_entropy(LinearFlow.on_rationals(half)).base == 2


def test_bridge_identity():
    toral = topological_entropy(LinearFlow.on_torus_dual(FIB))
    lattice = algebraic_entropy(LinearFlow.on_integer_lattice(FIB.transpose()))
    assert char_poly(FIB).coeffs == char_poly(FIB.transpose()).coeffs
    assert toral.same_value(lattice, slack=1e-12)


def test_wrong_domains():
    with pytest.raises(WrongDomain):
        topological_entropy(LinearFlow.on_rationals(FIB))
    with pytest.raises(WrongDomain):
        eigenvalue_lower_bound(LinearFlow.on_reals(FIB))


def test_eigenvalue_lower_bound():
    assert eigenvalue_lower_bound(LinearFlow.on_integer_lattice(RatMatrix.identity(2))).is_zero()
    v = eigenvalue_lower_bound(LinearFlow.on_integer_lattice(RatMatrix([[2, 0], [0, 3]])))
    assert v.as_float() == pytest.approx(math.log(3), abs=1e-9)
    v = eigenvalue_lower_bound(LinearFlow.on_integer_lattice(FIB))
    assert v.as_float() == pytest.approx(GOLDEN, abs=1e-9)


def test_lower_bound_never_exceeds_entropy():
    rng = random.Random(2024)
    for _ in range(40):
        n = rng.randint(1, 3)
        a = RatMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        flow = LinearFlow.on_integer_lattice(a)
        bound = eigenvalue_lower_bound(flow)
        full = algebraic_entropy(flow)
        assert bound.as_float() <= full.as_float() + bound.error + full.error + 1e-9


def test_log_law_and_weak_addition():
    rng = random.Random(31)
    for _ in range(25):
        n = rng.randint(1, 3)
        a = RatMatrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        h = algebraic_entropy(LinearFlow.on_rationals(a))
        for k in (2, 3):
            hk = algebraic_entropy(LinearFlow.on_rationals(a.power(k)))
            assert abs(hk.as_float() - k * h.as_float()) <= k * h.error + hk.error + 1e-9
        b = RatMatrix([[rng.randint(-2, 2)]])
        hb = algebraic_entropy(LinearFlow.on_rationals(b))
        direct = algebraic_entropy(LinearFlow.on_rationals(a.block_diag(b)))
        assert abs(direct.as_float() - (h.as_float() + hb.as_float())) \
            <= h.error + hb.error + direct.error + 1e-9


def test_trajectory_oracle_doubling_map():
    p = trajectory_oracle(RatMatrix([[2]]), [(0,), (1,)], 10)
    assert p.sizes == tuple(2 ** n for n in range(1, 11))
    assert p.estimate == pytest.approx(math.log(2), abs=1e-12)


def test_trajectory_oracle_identity():
    p = trajectory_oracle(RatMatrix.identity(2), [(0, 0), (1, 0), (0, 1)], 12)
    assert p.sizes == tuple((n + 1) * (n + 2) // 2 for n in range(1, 13))
    assert p.estimate < 0.2


def test_trajectory_oracle_fibonacci_band():
    p = trajectory_oracle(FIB, [(0, 0), (1, 0), (0, 1)], 18)
    assert 0.38 <= p.estimate <= 0.50
    assert p.fekete_upper >= GOLDEN - 1e-9


def test_trajectory_subadditivity_and_monotonicity():
    rng = random.Random(8)
    for _ in range(12):
        n = rng.randint(1, 2)
        a = RatMatrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        pts = [(0,) * n] + [tuple(int(i == j) for i in range(n)) for j in range(n)]
        profile = trajectory_oracle(a, pts, 12)
        sizes = (1,) + profile.sizes
        for i in range(1, len(profile.sizes) + 1):
            assert profile.sizes[i - 1] >= (profile.sizes[i - 2] if i > 1 else 0)
        for i in range(1, len(sizes)):
            for j in range(1, len(sizes) - i):
                assert sizes[i + j] <= sizes[i] * sizes[j]


def test_invariant_span_and_restriction():
    span = invariant_span(FIB, [(1, 0)])
    assert len(span) == 2
    restricted = restrict_to_subspace(FIB, span)
    assert char_poly(restricted).coeffs == char_poly(FIB).coeffs
    # a proper invariant subspace
    a = RatMatrix([[2, 0], [0, 3]])
    span = invariant_span(a, [(1, 0)])
    assert span == [(Fraction(1), Fraction(0))]
    assert char_poly(restrict_to_subspace(a, span)).coeffs == (Fraction(-2), Fraction(1))


def test_classify_growth():
    pts = [(0, 0), (1, 0), (0, 1)]
    assert classify_growth(RatMatrix.identity(2), pts, 8).kind == "polynomial"
    assert classify_growth(RatMatrix([[1, 1], [0, 1]]), pts, 8).kind == "polynomial"
    assert classify_growth(FIB, pts, 8).kind == "exponential"
    assert classify_growth(RatMatrix([[2]]), [(0,), (1,)], 8).kind == "exponential"
    # restriction matters: expansion confined to an invariant line not
    # touched by F keeps the observed growth polynomial
    a = RatMatrix([[1, 0], [0, 2]])
    res = classify_growth(a, [(0, 0), (1, 0)], 8)
    assert res.kind == "polynomial"
    res = classify_growth(a, [(0, 0), (0, 1)], 8)
    assert res.kind == "exponential"


def test_block_triangular_addition_identity():
    # the addition identity, cross-checked on block-triangular matrices:
    # the entropy of [[B, C], [0, D]] is the sum over the diagonal blocks
    rng = random.Random(55)
    for _ in range(15):
        nb, nd = rng.randint(1, 2), rng.randint(1, 2)
        b = RatMatrix([[rng.randint(-2, 2) for _ in range(nb)] for _ in range(nb)])
        d = RatMatrix([[rng.randint(-2, 2) for _ in range(nd)] for _ in range(nd)])
        rows = []
        for i in range(nb):
            coupling = [rng.randint(-2, 2) for _ in range(nd)]
            rows.append(list(b.entries[i]) + coupling)
        for i in range(nd):
            rows.append([0] * nb + list(d.entries[i]))
        full = algebraic_entropy(LinearFlow.on_rationals(RatMatrix(rows)))
        hb = algebraic_entropy(LinearFlow.on_rationals(b))
        hd = algebraic_entropy(LinearFlow.on_rationals(d))
        budget = full.error + hb.error + hd.error + 1e-9
        assert abs(full.as_float() - hb.as_float() - hd.as_float()) <= budget


def test_pinsker_subspace():
    assert len(pinsker_subspace(RatMatrix.identity(2))) == 2
    assert pinsker_subspace(FIB) == []
    basis = pinsker_subspace(RatMatrix([[1, 0], [0, 2]]))
    assert basis == [(Fraction(1), Fraction(0))]


def test_pinsker_invariant_and_zero_entropy():
    rng = random.Random(77)
    for _ in range(20):
        n = rng.randint(2, 3)
        a = RatMatrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        basis = pinsker_subspace(a)
        if not basis:
            continue
        for v in basis:
            image = a.matvec(v)
            assert solve_columns(basis, image) is not None
        restricted = restrict_to_subspace(a, basis)
        assert mahler_measure(char_poly(restricted)).is_zero()
