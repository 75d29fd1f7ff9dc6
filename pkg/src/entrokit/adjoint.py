"""Adjoint algebraic entropy over integer lattices.

For a nonsingular integer matrix A and a finite-index sublattice N of Z^n,
the cotrajectory chain is C_1 = N, C_(k+1) = N meet A^-1(C_k); the adjoint
entropy with respect to N is the limit of log[Z^n : C_k] / k.  Over Z^n the
chain always freezes: e * Z^n sits inside every C_k, where e is the exponent
of Z^n / N, because an integer matrix maps e * Z^n into itself.  Indices are
therefore bounded, one repeated step certifies stationarity forever (the
recursion depends only on the previous term), and the value is an exact
zero.  The infinite side of the 0-or-infinity dichotomy needs infinite rank
and lives with the generalized shifts.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, InputError, SingularMap
from .linalg import Lattice, RatMatrix, lattice_intersect, lattice_preimage
from .values import EntropyValue


@dataclass(frozen=True)
class CotrajectoryReport:
    indices: tuple        # [Z^n : C_k] for k = 1..
    alphas: tuple         # alphas[k] = indices[k+1] / indices[k]
    stationary_at: int    # first k with C_(k+1) = C_k
    value: EntropyValue   # exact zero once the chain freezes
    certificate: bool     # e*Z^n was verified inside the frozen lattice


def adjoint_entropy_at(a: RatMatrix, n_lattice: Lattice,
                       horizon: int = 64) -> CotrajectoryReport:
    """Cotrajectory chain of N under A with the exact freeze certificate.

    The horizon is a safety stop only; the chain provably freezes within
    [Z^n : e*Z^n] strict drops.  Raises SingularMap when det A = 0 and
    BudgetExceeded when the horizon is hit first (which indicates a horizon
    far below the index bound, not a genuinely growing chain).
    """
    if not a.is_integer():
        raise InputError("the cotrajectory machinery runs over integer matrices")
    if a.determinant() == 0:
        raise SingularMap("preimages under a singular map lose finite index")
    if a.n != n_lattice.n:
        raise InputError("matrix and lattice dimensions disagree")
    exponent = n_lattice.exponent()
    bound = Lattice.scaled(a.n, exponent)
    current = n_lattice
    indices = [current.index]
    stationary_at = None
    for step in range(1, horizon + 1):
        nxt = lattice_intersect(n_lattice, lattice_preimage(a, current))
        indices.append(nxt.index)
        if nxt.basis == current.basis:
            stationary_at = step
            current = nxt
            break
        current = nxt
    if stationary_at is None:
        raise BudgetExceeded(horizon, "cotrajectory iteration")
    certificate = bound.is_sublattice_of(current)
    alphas = tuple(b // ax for ax, b in zip(indices, indices[1:]))
    return CotrajectoryReport(tuple(indices), alphas, stationary_at,
                              EntropyValue.zero(), certificate)


def enumerate_lattices(n: int, max_index: int):
    """All HNF lattices of Z^n with index <= max_index, in lexicographic
    order of (diagonal, off-diagonal) entries."""
    if max_index < 1:
        return

    def diagonals(remaining, budget):
        if remaining == 0:
            yield ()
            return
        for d in range(1, budget + 1):
            for rest in diagonals(remaining - 1, budget // d):
                yield (d,) + rest

    for diag in sorted(diagonals(n, max_index)):
        # column j has free entries in rows i < j, each modulo diag[i]
        def fill(j, cols):
            if j == n:
                yield [list(c) for c in cols]
                return
            free = [range(diag[i]) for i in range(j)]

            def assign(i, col):
                if i == j:
                    col = col + [diag[j]] + [0] * (n - j - 1)
                    yield from fill(j + 1, cols + [col])
                    return
                for v in free[i]:
                    yield from assign(i + 1, col + [v])

            yield from assign(0, [])

        for cols in fill(0, []):
            yield Lattice.from_columns(cols)


@dataclass(frozen=True)
class DichotomyProbe:
    outcome: str              # "all_zero" (Z^n side of the dichotomy)
    lattices_probed: int
    max_stabilization: int
    reports: tuple


def dichotomy_probe(a: RatMatrix, max_index: int,
                    horizon: int = 64, budget: int = 100_000) -> DichotomyProbe:
    """Probe every lattice of index <= max_index.

    Over Z^n every probe lands on the zero side of the dichotomy, and the
    run records the exact freeze certificate for each lattice.  The infinite
    side is realized only by infinite-rank systems (the direct-sum Bernoulli
    shift), outside this module's domain.
    """
    reports = []
    count = 0
    worst = 0
    for lattice in enumerate_lattices(a.n, max_index):
        count += 1
        if count > budget:
            raise BudgetExceeded(budget, "lattice enumeration")
        report = adjoint_entropy_at(a, lattice, horizon)
        if not (report.value.is_zero() and report.certificate):
            raise AssertionError("a Z^n probe failed its freeze certificate")
        worst = max(worst, report.stationary_at)
        reports.append(report)
    return DichotomyProbe("all_zero", count, worst, tuple(reports))
