"""Exact arithmetic on integer and rational polynomials.

Coefficient vectors are ascending: ``coeffs[i]`` is the coefficient of t**i.
The zero polynomial is the empty coefficient tuple; it is representable but
rejected by every measure-related operation.

The module supplies the exact machinery the rest of the toolkit leans on:
content/primitive part, cyclotomic generation (iterated exact division of
t**m - 1), purely exact detection of polynomials whose roots are all roots of
unity, the reciprocal transform, resultants via fraction-free determinants,
and the classical root-growth sequence D_n = prod_i |1 - lambda_i**n|.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InputError, RootOfUnityDegeneracy, ZeroConstantTerm, ZeroPolynomial


def _trim(coeffs):
    end = len(coeffs)
    while end > 0 and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial, ascending coefficients, no trailing zeros."""

    coeffs: tuple

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", _trim([int(c) for c in coeffs]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shifted(self, k: int):
        """t**k * self."""
        if self.is_zero():
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def compose_power(self, k: int):
        """self(t**k)."""
        out = [0] * (k * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return IntPolynomial(out)

    def derivative(self):
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def content(self) -> int:
        if self.is_zero():
            return 0
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self) -> "IntPolynomial":
        """Divide out the content and normalize the leading coefficient positive."""
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no primitive part")
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPolynomial([c // g for c in self.coeffs])

    def to_rational(self) -> "RatPolynomial":
        return RatPolynomial([Fraction(c) for c in self.coeffs])

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = " - " if c < 0 else (" + " if parts else "")
            mag = abs(c)
            if i == 0:
                term = str(mag)
            else:
                var = "t" if i == 1 else f"t^{i}"
                term = var if mag == 1 else f"{mag}{var}"
            parts.append(sign + term)
        return "".join(parts)


@dataclass(frozen=True)
class RatPolynomial:
    """Dense rational polynomial, ascending coefficients in lowest terms."""

    coeffs: tuple

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", _trim([Fraction(c) for c in coeffs]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return RatPolynomial(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPolynomial(out)

    def __sub__(self, other):
        a, b = list(self.coeffs), list(other.coeffs)
        if len(a) < len(b):
            a += [Fraction(0)] * (len(b) - len(a))
        for i, c in enumerate(b):
            a[i] -= c
        return RatPolynomial(a)


# ----------------------------------------------------------------------
# content and primitive part

def content_primitive(f) -> tuple[Fraction, IntPolynomial]:
    """Write f = content * prim with prim primitive over Z and positive lead.

    The sign travels with the content, so the content is negative exactly
    when f has a negative leading coefficient.
    """
    if isinstance(f, IntPolynomial):
        f = f.to_rational()
    if f.is_zero():
        raise ZeroPolynomial("content of the zero polynomial is undefined")
    den_lcm = 1
    for c in f.coeffs:
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in f.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if ints[-1] < 0:
        g = -g
    prim = IntPolynomial([c // g for c in ints])
    return Fraction(g, den_lcm), prim


# ----------------------------------------------------------------------
# exact division

def divmod_exact(f: IntPolynomial, d: IntPolynomial):
    """Quotient and remainder of f by d over Q, returned as rational polys."""
    if d.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in f.coeffs]
    dc = d.coeffs
    quot = [Fraction(0)] * max(len(rem) - len(dc) + 1, 0)
    lead = Fraction(dc[-1])
    for top in range(len(rem) - 1, len(dc) - 2, -1):
        q = rem[top] / lead
        if q:
            quot[top - (len(dc) - 1)] = q
            for j, c in enumerate(dc):
                rem[top - (len(dc) - 1) + j] -= q * c
    return RatPolynomial(quot), RatPolynomial(rem)


def try_exact_divide(f: IntPolynomial, d: IntPolynomial):
    """f // d over Z when the division is exact, else None."""
    if f.is_zero():
        return f
    if d.degree > f.degree:
        return None
    quot, rem = divmod_exact(f, d)
    if not rem.is_zero():
        return None
    if any(c.denominator != 1 for c in quot.coeffs):
        return None
    return IntPolynomial([int(c) for c in quot.coeffs])


# ----------------------------------------------------------------------
# cyclotomic polynomials

@lru_cache(maxsize=None)
def cyclotomic(m: int) -> IntPolynomial:
    """The m-th cyclotomic polynomial, by exact division of t**m - 1."""
    if m < 1:
        raise InputError("cyclotomic index must be a positive integer")
    poly = IntPolynomial((-1,) + (0,) * (m - 1) + (1,))
    for d in range(1, m):
        if m % d == 0:
            poly = try_exact_divide(poly, cyclotomic(d))
            assert poly is not None
    return poly


def _totients_upto(limit: int):
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:  # p prime
            for k in range(p, limit + 1, p):
                phi[k] -= phi[k] // p
    return phi


@lru_cache(maxsize=None)
def cyclotomic_candidates(degree: int):
    """All m with euler_phi(m) <= degree, by brute enumeration m <= 3*degree**2.

    The bound is generous but safe for the desk-scale degrees (<= 64) this
    toolkit supports.
    """
    if degree < 1:
        return []
    limit = 3 * degree * degree + 1
    phi = _totients_upto(limit)
    return [m for m in range(1, limit + 1) if phi[m] <= degree]


def strip_cyclotomic_factors(f: IntPolynomial):
    """Divide out every cyclotomic factor, with multiplicity.

    Returns (factors, cofactor) where factors is a sorted list of
    (m, multiplicity) pairs and cofactor has no cyclotomic divisors.
    Purely exact: no floating point is involved.  A divisibility screen at
    t = 2 (Phi_m | g forces Phi_m(2) | g(2) over Z) skips most of the trial
    divisions.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    factors = {}
    g = f
    g2 = g(2)
    for m in cyclotomic_candidates(f.degree):
        phi_m = cyclotomic(m)
        if phi_m.degree > g.degree:
            continue
        if g2 != 0 and g2 % phi_m(2) != 0:
            continue
        while True:
            q = try_exact_divide(g, phi_m)
            if q is None:
                break
            factors[m] = factors.get(m, 0) + 1
            g = q
            g2 = g(2)
        if g.degree == 0:
            break
    return sorted(factors.items()), g


def is_zero_mahler(f: IntPolynomial) -> bool:
    """True iff every root of f is a root of unity and the lead is +-1.

    Decided exactly by writing f (up to sign) as a product of cyclotomic
    polynomials; no floating point is involved.
    """
    from .errors import NotPrimitive

    if f.is_zero():
        raise ZeroPolynomial("zero polynomial")
    if f.degree < 1:
        raise InputError("constant polynomials carry no roots")
    if abs(f.content()) != 1:
        raise NotPrimitive(f"content {f.content()} != 1")
    if abs(f.lead) != 1:
        return False
    g = f if f.lead > 0 else -f
    _, cofactor = strip_cyclotomic_factors(g)
    return cofactor.degree == 0 and cofactor.coeffs == (1,)


# ----------------------------------------------------------------------
# reciprocal transform

def reciprocal(f: IntPolynomial) -> IntPolynomial:
    """t**deg * f(1/t): the reversed coefficient vector, lead made positive."""
    if f.is_zero():
        raise ZeroPolynomial("zero polynomial")
    if f.constant_term() == 0:
        raise ZeroConstantTerm("reciprocal needs a nonzero constant term")
    rev = tuple(reversed(f.coeffs))
    out = IntPolynomial(rev)
    return out if out.lead > 0 else -out


def is_reciprocal(f: IntPolynomial) -> bool:
    if f.is_zero() or f.constant_term() == 0:
        return False
    return reciprocal(f).coeffs in (f.coeffs, (-f).coeffs)


# ----------------------------------------------------------------------
# gcd over Q and squarefree decomposition

def poly_gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Z, computed by the monic Euclid algorithm over Q."""
    a = [Fraction(c) for c in f.coeffs]
    b = [Fraction(c) for c in g.coeffs]

    def trimmed(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trimmed(a), trimmed(b)
    while b:
        # a mod b
        lead = b[-1]
        for top in range(len(a) - 1, len(b) - 2, -1):
            q = a[top] / lead
            if q:
                for j, c in enumerate(b):
                    a[top - (len(b) - 1) + j] -= q * c
        a = trimmed(a)
        a, b = b, a
    if not a:
        return IntPolynomial(())
    _, prim = content_primitive(RatPolynomial(a))
    return prim


_SQUAREFREE_PRIME = 1_000_003


def _squarefree_mod_p(f: IntPolynomial, p: int = _SQUAREFREE_PRIME) -> bool:
    """gcd(f, f') = 1 over GF(p) certifies squarefreeness over Q (one-sided)."""
    a = [c % p for c in f.coeffs]
    b = [(i * c) % p for i, c in enumerate(f.coeffs)][1:]

    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(a), trim(list(b))
    if len(a) - 1 != f.degree:
        return False  # leading coefficient vanished mod p; stay conservative
    while b:
        inv = pow(b[-1], -1, p)
        for top in range(len(a) - 1, len(b) - 2, -1):
            q = (a[top] * inv) % p
            if q:
                for j, c in enumerate(b):
                    a[top - (len(b) - 1) + j] = (a[top - (len(b) - 1) + j] - q * c) % p
        a = trim(a)
        a, b = b, a
    return len(a) == 1


def squarefree_decomposition(f: IntPolynomial):
    """Yun's algorithm: pairwise-coprime squarefree parts with multiplicities.

    Returns a list of (factor, multiplicity) with f = lead-sign * prod
    factor**multiplicity up to content; factors are primitive with positive
    lead.  A GF(p) gcd pre-test short-circuits the common squarefree case.
    """
    if f.is_zero():
        raise ZeroPolynomial("zero polynomial")
    f = f.primitive()
    if f.degree == 0:
        return []
    if _squarefree_mod_p(f):
        return [(f, 1)]
    parts = []
    g = poly_gcd(f, f.derivative())
    c = try_exact_divide(f, g)
    if c is None:  # g computed primitive; division is exact up to content
        c = content_primitive(divmod_exact(f, g)[0])[1]
    i = 1
    while c.degree > 0:
        d = poly_gcd(c, g)
        factor = try_exact_divide(c, d)
        if factor is None:
            factor = content_primitive(divmod_exact(c, d)[0])[1]
        if factor.degree > 0:
            parts.append((factor, i))
        nxt = try_exact_divide(g, d)
        if nxt is None:
            nxt = content_primitive(divmod_exact(g, d)[0])[1]
        c, g = d, nxt
        i += 1
    return parts


def rational_roots(f: IntPolynomial, factor_cap: int = 10**12):
    """Extract all rational roots with multiplicity, exactly.

    Returns (roots, cofactor): roots is a list of (Fraction root, mult); the
    cofactor has no rational roots.  Polynomials whose extreme coefficients
    exceed factor_cap are returned unfactored (the numeric stage handles
    them; only exactness of the reporting degrades).
    """
    if f.is_zero():
        raise ZeroPolynomial("zero polynomial")
    g = f
    roots = []
    while g.degree >= 1 and g.constant_term() == 0:
        roots.append((Fraction(0), 1))
        g = IntPolynomial(g.coeffs[1:])
    if g.degree < 1:
        return _merge_roots(roots), g
    if abs(g.constant_term()) > factor_cap or abs(g.lead) > factor_cap:
        return _merge_roots(roots), g
    for p in _divisors(abs(g.constant_term())):
        for q in _divisors(abs(g.lead)):
            if math.gcd(p, q) != 1:
                continue
            for root in (Fraction(p, q), Fraction(-p, q)):
                linear = IntPolynomial((-root.numerator, root.denominator))
                while True:
                    quot = try_exact_divide(g, linear)
                    if quot is None:
                        break
                    roots.append((root, 1))
                    g = quot
                if g.degree < 1:
                    return _merge_roots(roots), g
    return _merge_roots(roots), g


def _merge_roots(roots):
    merged = {}
    for r, k in roots:
        merged[r] = merged.get(r, 0) + k
    return sorted(merged.items())


def _divisors(n: int):
    if n == 0:
        return []
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


# ----------------------------------------------------------------------
# resultants and the Lehmer growth sequence

def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Res(f, g) over Z via fraction-free Bareiss on the Sylvester matrix."""
    if f.is_zero() or g.is_zero():
        return 0
    n, m = f.degree, g.degree
    if n == 0:
        return f.coeffs[0] ** m
    if m == 0:
        return g.coeffs[0] ** n
    size = n + m
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(m):
        rows.append([0] * i + fc + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + gc + [0] * (size - m - 1 - i))
    return _bareiss_determinant(rows)


def _bareiss_determinant(m) -> int:
    n = len(m)
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def delta_exact(f: IntPolynomial, n: int) -> int:
    """|prod_i (lambda_i**n - 1)| for monic f, via |Res(f, t**n - 1)|."""
    if f.is_zero() or f.lead != 1:
        raise InputError("the growth sequence needs a monic polynomial")
    tn = IntPolynomial((-1,) + (0,) * (n - 1) + (1,))
    return abs(resultant(f, tn))


def delta_sequence_exact(f: IntPolynomial, horizon: int):
    return [delta_exact(f, n) for n in range(1, horizon + 1)]


@dataclass(frozen=True)
class DeltaSequence:
    values: tuple          # floats, index n-1 holds D_n
    error_bounds: tuple    # certified absolute error per entry


def delta_sequence(f: IntPolynomial, horizon: int, tol: float = 1e-12) -> DeltaSequence:
    """D_1..D_horizon from certified roots, each with an error bound.

    Raises RootOfUnityDegeneracy when some D_n vanishes for n <= horizon,
    which happens exactly when f has a cyclotomic factor Phi_m with
    m <= horizon (detected exactly before any floating point runs).
    """
    from .roots import find_roots

    if f.is_zero() or f.lead != 1:
        raise InputError("the growth sequence needs a monic polynomial")
    if f.degree < 1:
        raise InputError("constant polynomials have no growth sequence")
    factors, _ = strip_cyclotomic_factors(f)
    for m, _mult in factors:
        if m <= horizon:
            raise RootOfUnityDegeneracy(
                f"Phi_{m} divides the input, so D_n = 0 at n = {m}")
    roots = find_roots(f, tol)
    values, errors = [], []
    for n in range(1, horizon + 1):
        prod = 1.0
        rel_err = 0.0
        for root in roots:
            z = complex(root.approx) ** n
            # |lambda**n - approx**n| <= n * (|approx| + r)**(n-1) * r
            step = n * (abs(root.approx) + root.radius) ** (n - 1) * root.radius
            term = abs(z - 1.0)
            if term <= step:
                raise RootOfUnityDegeneracy(
                    f"D_{n} is zero within certified bounds")
            prod *= term ** root.multiplicity
            rel_err += root.multiplicity * step / (term - step)
        values.append(prod)
        errors.append(prod * math.expm1(rel_err) if rel_err < 1 else math.inf)
    return DeltaSequence(tuple(values), tuple(errors))


# ----------------------------------------------------------------------
# JSON form

def poly_to_json(f) -> dict:
    if isinstance(f, IntPolynomial):
        return {"coeffs": [str(c) for c in f.coeffs]}
    return {"coeffs": [f"{c.numerator}/{c.denominator}" if c.denominator != 1
                       else str(c.numerator) for c in f.coeffs]}


def poly_from_json(obj) -> RatPolynomial:
    if isinstance(obj, dict):
        coeffs = obj["coeffs"]
    else:
        coeffs = obj
    return RatPolynomial([Fraction(str(c)) for c in coeffs])
