"""Exhaustive search for small positive Mahler measures and entropy spectra.

The Lehmer search enumerates bounded-height integer polynomials, reduces by
the measure-preserving symmetries (global sign, t -> -t, reciprocal), and
keeps the k smallest certified-positive measures.  Zero measures are
recognized by the exact cyclotomic path and counted, never ranked; a
measure whose certified interval touches zero without an exact zero proof
is re-verified at higher precision and quarantined if still ambiguous, so a
false positive can never contaminate the leaderboard.

Enumeration order and the leaderboard merge are deterministic: the merge is
a sort keyed on (measure, coefficients), and each polynomial's measure is
computed identically regardless of worker schedule, so runs are
bit-identical across worker counts.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product

from .errors import BudgetExceeded, InputError
from .linalg import RatMatrix, char_poly
from .mahler import mahler_measure
from .polynomials import IntPolynomial
from .values import EntropyValue


@dataclass(frozen=True)
class SearchSpec:
    max_degree: int
    max_height: int = 1
    monic_only: bool = True
    skip_cyclotomic: bool = True
    top: int = 5
    budget: int = 5_000_000

    def __post_init__(self):
        if self.max_degree < 1 or self.max_height < 1:
            raise InputError("degree and height bounds must be positive")
        space = (2 * self.max_height + 1) ** (self.max_degree + 1)
        if space > 400 * self.budget:
            raise BudgetExceeded(self.budget, "search space")


@dataclass(frozen=True)
class LeaderboardEntry:
    measure: float
    error: float
    coeffs: tuple
    value: EntropyValue


@dataclass(frozen=True)
class SearchResult:
    leaderboard: tuple
    zero_count: int
    scanned_count: int
    quarantined: tuple


def canonical_form(coeffs) -> tuple:
    """Public alias for the search's symmetry-class representative."""
    return _canonical(tuple(int(c) for c in coeffs))


def _canonical(coeffs: tuple) -> tuple:
    """Smallest positive-lead coefficient tuple over the measure-preserving
    symmetries: global sign, t -> -t, and (when defined) reciprocal.  Kept
    within positive leads so canonical forms stay inside the enumerated
    family."""
    variants = []
    base = list(coeffs)
    for flip_t in (False, True):
        v = [c * ((-1) ** i) if flip_t else c for i, c in enumerate(base)]
        for rev in (False, True):
            if rev:
                if v[0] == 0:
                    continue
                w = list(reversed(v))
            else:
                w = list(v)
            if w[-1] < 0:
                w = [-c for c in w]
            variants.append(tuple(w))
    return min(variants)


def _candidate_polys(spec: SearchSpec):
    """Canonical representatives, ascending coefficients.

    Only primitive polynomials are enumerated: an imprimitive tuple is its
    content times a primitive one of the same degree and no greater height,
    already in the family.  Zero constant terms are skipped (t**k factors
    do not move the measure) and so are negative leads (global sign is in
    the symmetry group).
    """
    h = spec.max_height
    for degree in range(1, spec.max_degree + 1):
        leads = [1] if spec.monic_only else list(range(1, h + 1))
        for lead in leads:
            for rest in product(range(-h, h + 1), repeat=degree):
                if rest[0] == 0:
                    continue
                coeffs = rest + (lead,)
                if math.gcd(*coeffs) != 1:
                    continue
                if _canonical(coeffs) == coeffs:
                    yield coeffs


def _measure_one(coeffs: tuple):
    """(kind, payload) for one canonical polynomial; pure and deterministic."""
    poly = IntPolynomial(coeffs)
    value = mahler_measure(poly, tol=1e-12)
    if value.is_zero():
        return ("zero", coeffs)
    lo, hi = value.interval()
    if lo <= 1e-12:
        # suspiciously small but not exactly zero: re-verify tighter
        value = mahler_measure(poly, tol=1e-20)
        lo, hi = value.interval()
        if lo <= 0:
            return ("quarantine", coeffs)
    return ("positive", (value.as_float(),
                         value.error if value.kind == "approx" else 0.0,
                         coeffs, value.to_json()))


def _measure_chunk(chunk):
    return [_measure_one(c) for c in chunk]


def lehmer_search(spec: SearchSpec, workers: int = 1) -> SearchResult:
    """Scan the bounded family and rank the smallest positive measures.

    The worker count only splits the candidate list into chunks; the final
    leaderboard is a deterministic sort, identical for any worker count.
    """
    candidates = list(_candidate_polys(spec))
    if len(candidates) > spec.budget:
        raise BudgetExceeded(spec.budget, "candidate enumeration")
    if workers > 1:
        chunk_size = max(64, len(candidates) // (8 * workers) + 1)
        chunks = [candidates[i:i + chunk_size]
                  for i in range(0, len(candidates), chunk_size)]
        outcomes = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_measure_chunk, chunks):
                outcomes.extend(part)
    else:
        outcomes = [_measure_one(c) for c in candidates]

    zero_count = 0
    quarantined = []
    positives = []
    for kind, payload in outcomes:
        if kind == "zero":
            zero_count += 1
        elif kind == "quarantine":
            quarantined.append(payload)
        else:
            positives.append(payload)
    positives.sort(key=lambda p: (p[0], p[2]))
    board = tuple(LeaderboardEntry(m, e, c, EntropyValue.from_json(v))
                  for m, e, c, v in positives[:spec.top])
    return SearchResult(board, zero_count, len(candidates), tuple(sorted(quarantined)))


# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumReport:
    dimension: int
    entry_bound: int
    values: tuple            # sorted (float, json) pairs with multiplicity
    minimal_positive: EntropyValue | None
    scanned: int


def espectrum_sample(dimension: int, entry_bound: int,
                     budget: int = 2_000_000) -> SpectrumReport:
    """Algebraic entropies of every integer matrix in the box, as a sorted
    multiset; the smallest positive value is highlighted.  Measures are
    cached by characteristic polynomial, which collapses the box by orders
    of magnitude."""
    if dimension < 1 or dimension > 3:
        raise InputError("spectrum sampling is desk-scale: dimension 1..3")
    if entry_bound < 0:
        raise InputError("entry bound must be non-negative")
    entries = range(-entry_bound, entry_bound + 1)
    n2 = dimension * dimension
    if (2 * entry_bound + 1) ** n2 > budget:
        raise BudgetExceeded(budget, "matrix box enumeration")
    cache = {}
    values = []
    scanned = 0
    for flat in product(entries, repeat=n2):
        scanned += 1
        a = RatMatrix([flat[i * dimension:(i + 1) * dimension]
                       for i in range(dimension)])
        key = char_poly(a).coeffs
        if key not in cache:
            cache[key] = mahler_measure(char_poly(a))
        values.append(cache[key])
    values.sort(key=lambda v: (v.as_float(), str(v.kind)))
    minimal = next((v for v in values if not v.is_zero()), None)
    return SpectrumReport(dimension, entry_bound,
                          tuple((v.as_float(), v.kind) for v in values),
                          minimal, scanned)
