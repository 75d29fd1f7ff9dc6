"""Exact rational matrix algebra and integer lattice arithmetic.

Matrices are exact (Fraction entries); lattices are full-rank subgroups of
Z^n held in a canonical column-style Hermite normal form: the basis matrix
is upper triangular with positive diagonal and each above-diagonal entry
reduced modulo its row's diagonal.  Equality of lattices is equality of
canonical bases.

The characteristic polynomial is computed by Faddeev-LeVerrier over exact
rationals, so the only numerical stage in the entropy pipeline is root
finding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, RankDeficient, SingularMap
from .polynomials import RatPolynomial


@dataclass(frozen=True)
class RatMatrix:
    entries: tuple  # tuple of row tuples, Fractions

    def __init__(self, rows):
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if not data or any(len(row) != len(data) for row in data):
            raise InputError("matrix must be square and non-empty")
        object.__setattr__(self, "entries", data)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def row(self, i):
        return self.entries[i]

    def is_integer(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)

    def int_rows(self):
        if not self.is_integer():
            raise InputError("matrix has non-integer entries")
        return [[int(x) for x in row] for row in self.entries]

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return RatMatrix([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    def __mul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.n != other.n:
            raise InputError("dimension mismatch")
        n = self.n
        return RatMatrix([[sum(self.entries[i][k] * other.entries[k][j]
                               for k in range(n)) for j in range(n)]
                          for i in range(n)])

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix([[a + b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.entries, other.entries)])

    def scale(self, c) -> "RatMatrix":
        c = Fraction(c)
        return RatMatrix([[c * x for x in row] for row in self.entries])

    def matvec(self, v):
        return tuple(sum(self.entries[i][j] * v[j] for j in range(self.n))
                     for i in range(self.n))

    def transpose(self) -> "RatMatrix":
        return RatMatrix(list(zip(*self.entries)))

    def trace(self):
        return sum(self.entries[i][i] for i in range(self.n))

    def power(self, k: int) -> "RatMatrix":
        if k < 0:
            raise InputError("negative matrix powers are not supported")
        result = RatMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def block_diag(self, other: "RatMatrix") -> "RatMatrix":
        n, m = self.n, other.n
        rows = []
        for i in range(n):
            rows.append(list(self.entries[i]) + [Fraction(0)] * m)
        for i in range(m):
            rows.append([Fraction(0)] * n + list(other.entries[i]))
        return RatMatrix(rows)

    def determinant(self) -> Fraction:
        return _det_fraction([list(row) for row in self.entries])

    def inverse(self) -> "RatMatrix":
        n = self.n
        aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
               for i, row in enumerate(self.entries)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if pivot is None:
                raise SingularMap("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    factor = aug[r][col]
                    aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
        return RatMatrix([row[n:] for row in aug])


def _det_fraction(rows) -> Fraction:
    n = len(rows)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col]:
                factor = rows[r][col] * inv
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return det


def char_poly(a: RatMatrix) -> RatPolynomial:
    """Monic characteristic polynomial det(tI - A) by Faddeev-LeVerrier."""
    n = a.n
    coeffs = [Fraction(0)] * n + [Fraction(1)]
    m = RatMatrix.identity(n)
    for k in range(1, n + 1):
        am = a * m if k > 1 else a
        c = -am.trace() / k
        coeffs[n - k] = c
        if k < n:
            m = am + RatMatrix.identity(n).scale(c)
    return RatPolynomial(coeffs)


def kernel_subspace(a: RatMatrix):
    """Exact basis of ker(A) over Q, as a list of Fraction tuples."""
    n = a.n
    rows = [list(row) for row in a.entries]
    pivots = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, n) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(tuple(v))
    return basis


def solve_columns(columns, target):
    """Solve sum_j x_j * columns[j] = target exactly; None if inconsistent."""
    if not columns:
        return None if any(t != 0 for t in target) else []
    n = len(columns[0])
    m = len(columns)
    aug = [[Fraction(columns[j][i]) for j in range(m)] + [Fraction(target[i])]
           for i in range(n)]
    pivots = []
    r = 0
    for col in range(m):
        pivot = next((i for i in range(r, n) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][col]:
                factor = aug[i][col]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for i in range(r, n):
        if aug[i][m] != 0:
            return None
    x = [Fraction(0)] * m
    for i, col in enumerate(pivots):
        x[col] = aug[i][m]
    return x


# ----------------------------------------------------------------------
# integer columns: echelon form, kernels, Hermite normal form

def _xgcd(a: int, b: int):
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return g, x, y


class _Echelon:
    """Incremental integer column echelon: pivot = last nonzero coordinate."""

    def __init__(self, n, track=False):
        self.n = n
        self.track = track
        self.basis = {}   # pivot index -> (vector, companion)
        self.kernel = []  # companions of vectors that reduced to zero

    def insert(self, v, u=None):
        v = list(v)
        u = list(u) if u is not None else None
        while True:
            p = self._last_nonzero(v)
            if p is None:
                if self.track and u is not None:
                    self.kernel.append(tuple(u))
                return
            if p not in self.basis:
                self.basis[p] = (tuple(v), tuple(u) if u is not None else None)
                return
            bv, bu = self.basis[p]
            if v[p] % bv[p] == 0:
                q = v[p] // bv[p]
                v = [a - q * b for a, b in zip(v, bv)]
                if u is not None:
                    u = [a - q * b for a, b in zip(u, bu)]
            else:
                g, x, y = _xgcd(bv[p], v[p])
                nv = tuple(x * a + y * b for a, b in zip(bv, v))
                rv = [(bv[p] // g) * b - (v[p] // g) * a for a, b in zip(bv, v)]
                if u is not None:
                    nu = tuple(x * a + y * b for a, b in zip(bu, u))
                    ru = [(bv[p] // g) * b - (v[p] // g) * a for a, b in zip(bu, u)]
                else:
                    nu, ru = None, None
                self.basis[p] = (nv, nu)
                v, u = rv, ru

    @staticmethod
    def _last_nonzero(v):
        for i in range(len(v) - 1, -1, -1):
            if v[i] != 0:
                return i
        return None


def integer_kernel(columns):
    """Basis of {x in Z^m : sum x_j columns[j] = 0}, m = len(columns)."""
    if not columns:
        return []
    n = len(columns[0])
    ech = _Echelon(n, track=True)
    m = len(columns)
    for j, col in enumerate(columns):
        unit = [0] * m
        unit[j] = 1
        ech.insert(col, unit)
    return ech.kernel


@dataclass(frozen=True)
class Lattice:
    """Full-rank sublattice of Z^n in canonical column HNF."""

    n: int
    basis: tuple  # tuple of n column tuples; basis[j][i] is row i of column j

    @staticmethod
    def from_columns(columns) -> "Lattice":
        columns = [tuple(int(x) for x in c) for c in columns]
        if not columns:
            raise RankDeficient("no generators")
        n = len(columns[0])
        if any(len(c) != n for c in columns):
            raise InputError("generator dimensions disagree")
        ech = _Echelon(n)
        for col in columns:
            ech.insert(col)
        if len(ech.basis) != n:
            raise RankDeficient(f"rank {len(ech.basis)} < ambient dimension {n}")
        cols = [list(ech.basis[p][0]) for p in range(n)]
        # positive diagonal
        for j in range(n):
            if cols[j][j] < 0:
                cols[j] = [-x for x in cols[j]]
        # reduce above-diagonal entries modulo the diagonal
        for j in range(n):
            for i in range(j - 1, -1, -1):
                q = cols[j][i] // cols[i][i]
                if q:
                    cols[j] = [a - q * b for a, b in zip(cols[j], cols[i])]
        return Lattice(n, tuple(tuple(c) for c in cols))

    @staticmethod
    def standard(n: int) -> "Lattice":
        return Lattice.from_columns([[int(i == j) for i in range(n)] for j in range(n)])

    @staticmethod
    def scaled(n: int, k: int) -> "Lattice":
        """k * Z^n."""
        return Lattice.from_columns([[k * int(i == j) for i in range(n)] for j in range(n)])

    @property
    def index(self) -> int:
        out = 1
        for j in range(self.n):
            out *= self.basis[j][j]
        return out

    def contains(self, v) -> bool:
        w = [int(x) for x in v]
        for j in range(self.n - 1, -1, -1):
            if w[j] % self.basis[j][j] != 0:
                return False
            q = w[j] // self.basis[j][j]
            if q:
                for i in range(j + 1):
                    w[i] -= q * self.basis[j][i]
        return all(x == 0 for x in w)

    def is_sublattice_of(self, other: "Lattice") -> bool:
        return all(other.contains(col) for col in self.basis)

    def transformed(self, p: RatMatrix) -> "Lattice":
        """Image under an integer matrix (caller guarantees full rank)."""
        rows = p.int_rows()
        n = self.n
        cols = [tuple(sum(rows[i][k] * col[k] for k in range(n)) for i in range(n))
                for col in self.basis]
        return Lattice.from_columns(cols)

    def exponent(self) -> int:
        """Exponent of Z^n / L: lcm of the orders of the unit vectors."""
        idx = self.index
        divisors = sorted(_all_divisors(idx))
        out = 1
        for i in range(self.n):
            unit = [0] * self.n
            unit[i] = 1
            for d in divisors:
                if self.contains([d * x for x in unit]):
                    out = out * d // math.gcd(out, d)
                    break
        return out

    def to_json(self) -> dict:
        return {"columns": [[str(x) for x in col] for col in self.basis]}


def _all_divisors(n: int):
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return out


def hnf(columns) -> Lattice:
    """Canonical HNF lattice from integer generators (RankDeficient if not full rank)."""
    return Lattice.from_columns(columns)


def lattice_intersect(l1: Lattice, l2: Lattice) -> Lattice:
    """L1 meet L2 via the integer kernel of the stacked system [B1 | -B2]."""
    if l1.n != l2.n:
        raise InputError("ambient dimensions disagree")
    n = l1.n
    stacked = [list(col) for col in l1.basis] + [[-x for x in col] for col in l2.basis]
    kernel = integer_kernel(stacked)
    gens = []
    for w in kernel:
        a = w[:n]
        gens.append(tuple(sum(l1.basis[j][i] * a[j] for j in range(n)) for i in range(n)))
    return Lattice.from_columns(gens)


def lattice_preimage(a: RatMatrix, lat: Lattice) -> Lattice:
    """{v in Z^n : A v in L} for an integer matrix A with det A != 0."""
    rows = a.int_rows()
    n = lat.n
    if a.n != n:
        raise InputError("ambient dimensions disagree")
    if a.determinant() == 0:
        raise SingularMap("preimage under a singular map is not a full-rank lattice")
    acols = [[rows[i][j] for i in range(n)] for j in range(n)]
    stacked = acols + [[-x for x in col] for col in lat.basis]
    kernel = integer_kernel(stacked)
    gens = [w[:n] for w in kernel]
    return Lattice.from_columns(gens)


# ----------------------------------------------------------------------
# JSON forms

def matrix_to_json(a: RatMatrix) -> dict:
    return {"rows": [[f"{x.numerator}/{x.denominator}" if x.denominator != 1
                      else str(x.numerator) for x in row] for row in a.entries]}


def matrix_from_json(obj) -> RatMatrix:
    rows = obj["rows"] if isinstance(obj, dict) else obj
    return RatMatrix([[Fraction(str(x)) for x in row] for row in rows])


def lattice_from_json(obj) -> Lattice:
    cols = obj["columns"] if isinstance(obj, dict) else obj
    return Lattice.from_columns([[int(str(x)) for x in col] for col in cols])
