"""Entropy of linear endomorphisms.

The closed forms: on Z^n and Q^n the algebraic entropy equals the Mahler
measure of the primitive characteristic polynomial; on R^n both entropies
equal the sum of log|eigenvalue| over eigenvalues outside the unit circle
(no leading-coefficient term); the dual toral map carries the same
characteristic polynomial, realizing the bridge between the algebraic and
topological values; multiplication by a p-adic scalar xi contributes
max(0, -v_p(xi)) * log p.

Alongside the closed forms sits an exact brute-force oracle: trajectory
sumsets F + A F + ... + A^(n-1) F enumerated over Z^n, whose log-size slope
converges to the entropy from above (Fekete).  The growth dichotomy is
decided by the closed form; the empirical profile is advisory.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetExceeded, InputError, WrongDomain
from .linalg import RatMatrix, char_poly, kernel_subspace, solve_columns
from .mahler import mahler_measure
from .polynomials import IntPolynomial, content_primitive, strip_cyclotomic_factors
from .roots import classify_unit_circle
from .values import EntropyValue

DOMAINS = ("zn", "qn", "rn", "tn_dual", "qp_scalar")


@dataclass(frozen=True)
class LinearFlow:
    domain: str
    matrix: RatMatrix | None = None
    prime: int = 0
    scalar: Fraction = Fraction(0)

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise InputError(f"unknown domain {self.domain!r}")
        if self.domain == "qp_scalar":
            if self.prime < 2 or any(self.prime % d == 0 for d in range(2, int(self.prime ** 0.5) + 1)):
                raise InputError(f"{self.prime} is not a prime")
        elif self.matrix is None:
            raise InputError("matrix domains need a matrix")
        elif self.domain == "zn" and not self.matrix.is_integer():
            raise InputError("an endomorphism of Z^n needs integer entries")

    @staticmethod
    def on_integer_lattice(matrix: RatMatrix) -> "LinearFlow":
        return LinearFlow("zn", matrix)

    @staticmethod
    def on_rationals(matrix: RatMatrix) -> "LinearFlow":
        return LinearFlow("qn", matrix)

    @staticmethod
    def on_reals(matrix: RatMatrix) -> "LinearFlow":
        return LinearFlow("rn", matrix)

    @staticmethod
    def on_torus_dual(matrix: RatMatrix) -> "LinearFlow":
        return LinearFlow("tn_dual", matrix)

    @staticmethod
    def padic_scalar(prime: int, scalar) -> "LinearFlow":
        return LinearFlow("qp_scalar", prime=prime, scalar=Fraction(scalar))


def padic_valuation(x: Fraction, p: int) -> int:
    if x == 0:
        raise InputError("the zero scalar has infinite valuation")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _eigenvalue_sum_outside(matrix: RatMatrix, tol: float) -> EntropyValue:
    """Sum of log|lambda| over eigenvalues outside the unit circle, exact
    when the primitive characteristic polynomial splits exactly."""
    _, prim = content_primitive(char_poly(matrix))
    from .polynomials import rational_roots

    p = prim
    while p.degree >= 1 and p.constant_term() == 0:
        p = IntPolynomial(p.coeffs[1:])
    _, p = strip_cyclotomic_factors(p)
    roots, cofactor = rational_roots(p)
    outside_int = Fraction(1)
    for root, mult in roots:
        if abs(root) > 1:
            outside_int *= abs(root) ** mult
    if cofactor.degree == 0:
        if outside_int == 1:
            return EntropyValue.zero()
        if outside_int.denominator == 1:
            return EntropyValue.log_of(int(outside_int))
        return EntropyValue.approximate(
            math.log(outside_int.numerator) - math.log(outside_int.denominator), 1e-12)
    classification = classify_unit_circle(cofactor, tol)
    value = math.log(float(outside_int))
    error = 1e-15 * abs(value)
    for root in classification.outside:
        value += root.multiplicity * math.log(abs(root.approx))
        error += root.multiplicity * root.radius / (abs(root.approx) - root.radius)
    for root in classification.on_circle_caveat:
        error += root.multiplicity * max(0.0, math.log(abs(root.approx) + root.radius))
    return EntropyValue.approximate(value, error)


def algebraic_entropy(flow: LinearFlow, tol: float = 1e-12) -> EntropyValue:
    """h_alg of the flow: Mahler measure of the primitive characteristic
    polynomial on Z^n/Q^n, eigenvalue sum on R^n, k*log p for p-adic scalars."""
    if flow.domain in ("zn", "qn"):
        return mahler_measure(char_poly(flow.matrix), tol)
    if flow.domain == "rn":
        return _eigenvalue_sum_outside(flow.matrix, tol)
    if flow.domain == "qp_scalar":
        k = max(0, -padic_valuation(flow.scalar, flow.prime))
        return EntropyValue.log_of(flow.prime, k) if k else EntropyValue.zero()
    raise WrongDomain("algebraic entropy lives on zn, qn, rn, or qp_scalar")


def topological_entropy(flow: LinearFlow, tol: float = 1e-12) -> EntropyValue:
    """h_top: Bowen's eigenvalue formula on R^n, the Mahler measure of the
    shared characteristic polynomial for the dual toral map."""
    if flow.domain == "rn":
        return _eigenvalue_sum_outside(flow.matrix, tol)
    if flow.domain == "tn_dual":
        return mahler_measure(char_poly(flow.matrix), tol)
    raise WrongDomain("topological entropy lives on rn or tn_dual")


def eigenvalue_lower_bound(flow: LinearFlow, tol: float = 1e-12) -> EntropyValue:
    """max(0, max log|eigenvalue|): a certified lower bound for h_alg."""
    if flow.domain not in ("zn", "qn"):
        raise WrongDomain("the eigenvalue bound applies on zn or qn")
    _, prim = content_primitive(char_poly(flow.matrix))
    from .polynomials import rational_roots

    p = prim
    while p.degree >= 1 and p.constant_term() == 0:
        p = IntPolynomial(p.coeffs[1:])
    _, p = strip_cyclotomic_factors(p)
    roots, cofactor = rational_roots(p)
    best = Fraction(1)
    for root, _ in roots:
        if abs(root) > best:
            best = abs(root)
    if cofactor.degree == 0:
        if best == 1:
            return EntropyValue.zero()
        if best.denominator == 1:
            return EntropyValue.log_of(int(best))
        return EntropyValue.approximate(
            math.log(best.numerator) - math.log(best.denominator), 1e-12)
    classification = classify_unit_circle(cofactor, tol)
    value = math.log(float(best))
    error = 1e-15
    for root in classification.outside:
        mod = abs(root.approx)
        if math.log(mod) > value:
            value = math.log(mod)
            error = root.radius / (mod - root.radius)
    if value == 0.0 and not classification.outside:
        # no eigenvalue strictly beats the circle; caveat roots sit on it
        return EntropyValue.zero() if not classification.on_circle_caveat \
            else EntropyValue.approximate(0.0, tol)
    return EntropyValue.approximate(value, error)


# ----------------------------------------------------------------------
# sumset trajectory oracle

DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True)
class TrajectoryProfile:
    sizes: tuple                 # |T_1| .. |T_N|
    slopes: tuple                # log|T_n| / n
    estimate: float              # min one-step quotient log|T_(n+1)| - log|T_n|
    fekete_upper: float          # min slope: a certified upper bound for H(phi, F)
    budget: int = DEFAULT_BUDGET

    def increments(self):
        return tuple(b - a for a, b in zip((0,) + self.sizes, self.sizes))


def trajectory_oracle(a: RatMatrix, points, horizon: int,
                      budget: int = DEFAULT_BUDGET) -> TrajectoryProfile:
    """Exact sizes of the sumsets F + A F + ... + A^(n-1) F over Z^n.

    F is normalized to contain 0 (harmless for the entropy, and it makes the
    size sequence non-decreasing).  Raises BudgetExceeded when a sumset would
    pass the element budget.

    The reported estimate is the smallest one-step quotient
    log|T_(n+1)| - log|T_n|, which converges far faster than log|T_n|/n (the
    latter carries a log-prefactor bias of order 1/n); the Fekete minimum of
    log|T_n|/n is kept alongside as a certified upper bound for H(phi, F).
    """
    if horizon < 2:
        raise InputError("horizon must be at least 2")
    if not a.is_integer():
        raise InputError("the sumset oracle runs over integer matrices")
    rows = a.int_rows()
    n = a.n
    base = {tuple(int(x) for x in v) for v in points}
    if any(len(v) != n for v in base):
        raise InputError("point dimension disagrees with the matrix")
    base.add((0,) * n)
    current = set(base)            # T_n
    image = set(base)              # A^(n-1) F as it evolves
    sizes = [len(current)]
    for _ in range(horizon - 1):
        image = {tuple(sum(rows[i][j] * v[j] for j in range(n)) for i in range(n))
                 for v in image}
        if len(current) * len(image) > 50 * budget:
            raise BudgetExceeded(budget, "sumset enumeration")
        current = {tuple(t[i] + g[i] for i in range(n))
                   for t in current for g in image}
        if len(current) > budget:
            raise BudgetExceeded(budget, "sumset enumeration")
        sizes.append(len(current))
    slopes = tuple(math.log(s) / (i + 1) for i, s in enumerate(sizes))
    diffs = [math.log(b) - math.log(a) for a, b in zip(sizes, sizes[1:])]
    estimate = min(diffs) if diffs else slopes[0]
    return TrajectoryProfile(tuple(sizes), slopes, estimate, min(slopes), budget)


# ----------------------------------------------------------------------
# invariant subspaces, Pinsker subspace, growth dichotomy

def invariant_span(a: RatMatrix, points):
    """Basis (list of Fraction tuples) of the smallest A-invariant subspace
    of Q^n containing the given points: the Krylov span."""
    n = a.n
    basis = []

    def try_add(vec):
        if solve_columns(basis, vec) is None:
            basis.append(tuple(Fraction(x) for x in vec))
            return True
        return False

    frontier = [tuple(Fraction(x) for x in v) for v in points]
    for v in frontier:
        if any(x != 0 for x in v):
            try_add(v)
    changed = True
    while changed and len(basis) < n:
        changed = False
        for v in list(basis):
            img = a.matvec(v)
            if try_add(img):
                changed = True
    return basis


def restrict_to_subspace(a: RatMatrix, basis) -> RatMatrix:
    """Matrix of A on an invariant subspace, in the given basis coordinates."""
    cols = []
    for v in basis:
        img = a.matvec(v)
        coeffs = solve_columns(basis, img)
        if coeffs is None:
            raise InputError("subspace is not invariant under the matrix")
        cols.append(coeffs)
    m = len(basis)
    return RatMatrix([[cols[j][i] for j in range(m)] for i in range(m)])


def pinsker_subspace(a: RatMatrix):
    """Basis of the largest A-invariant subspace of Q^n on which every
    eigenvalue is a root of unity (zero-entropy part); computed exactly as
    the kernel of q(A), q = the cyclotomic part of the characteristic
    polynomial taken with multiplicities."""
    _, prim = content_primitive(char_poly(a))
    factors, _ = strip_cyclotomic_factors(prim if prim.lead > 0 else -prim)
    if not factors:
        return []
    from .polynomials import cyclotomic

    q = IntPolynomial((1,))
    for m, mult in factors:
        for _ in range(mult):
            q = q * cyclotomic(m)
    qa = _poly_at_matrix(q, a)
    return kernel_subspace(qa)


def _poly_at_matrix(p: IntPolynomial, a: RatMatrix) -> RatMatrix:
    n = a.n
    acc = RatMatrix([[Fraction(0)] * n for _ in range(n)])
    power = RatMatrix.identity(n)
    for c in p.coeffs:
        if c:
            acc = acc + power.scale(c)
        power = power * a
    return acc


@dataclass(frozen=True)
class GrowthClassification:
    kind: str                        # "polynomial" | "exponential"
    closed_form: EntropyValue        # h_alg of A restricted to the span of the orbit of F
    profile: TrajectoryProfile       # empirical evidence, advisory only


def classify_growth(a: RatMatrix, points, horizon: int = 12,
                    budget: int = DEFAULT_BUDGET) -> GrowthClassification:
    """Polynomial-vs-exponential growth of the trajectory of F under A.

    Decided exactly by the closed form: the growth is exponential iff the
    Mahler measure of A restricted to the invariant span of the orbit of F
    is nonzero (equivalently, iff the span escapes the Pinsker subspace).
    Exact zero detection makes the dichotomy a real decision; intermediate
    horizons could not separate slow exponential from fast polynomial, so
    the empirical profile is attached as evidence only.
    """
    profile = trajectory_oracle(a, points, horizon, budget)
    span = invariant_span(a, points)
    if not span:
        return GrowthClassification("polynomial", EntropyValue.zero(), profile)
    restricted = restrict_to_subspace(a, span)
    value = mahler_measure(char_poly(restricted))
    kind = "polynomial" if value.is_zero() else "exponential"
    return GrowthClassification(kind, value, profile)
