"""Exact integer linear algebra and dominant-eigenvalue estimation.

Everything here works on arbitrary-precision Python integers: elimination
blows up intermediate entries even for small matrices, and the matrices in
this package are tiny (roughly up to 10x10), so exactness wins over speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "NegativeEntry",
    "NonSquare",
    "SmithForm",
    "determinant",
    "dominant_eigenvalue",
    "power_iteration",
    "smith_normal_form",
]

DEFAULT_POWER_TOL = 1e-8
DEFAULT_POWER_MAX_ITER = 10**5


class NonSquare(ValueError):
    """A square matrix was required."""


class NegativeEntry(ValueError):
    """A nonnegative matrix was required."""


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix with exact (arbitrary precision) entries."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows or any(
            len(row) != self.cols for row in self.entries
        ):
            raise ValueError("entries shape does not match rows x cols")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        return cls(len(data), len(data[0]) if data else 0, data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.entries[i][j]

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix.from_rows(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix.from_rows(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        cols = list(zip(*other.entries))
        return IntMatrix.from_rows(
            [
                [sum(a * b for a, b in zip(row, col)) for col in cols]
                for row in self.entries
            ]
        )

    def _same_shape(self, other: "IntMatrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shapes differ")

    def column_sums(self) -> list[int]:
        return [sum(row[j] for row in self.entries) for j in range(self.cols)]

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)


@dataclass(frozen=True)
class SmithForm:
    """Diagonal of a Smith normal form: d1 | d2 | ... with zeros trailing."""

    diagonal: tuple[int, ...]

    def __post_init__(self):
        diag = self.diagonal
        if any(d < 0 for d in diag):
            raise ValueError("Smith diagonal entries must be nonnegative")
        for a, b in zip(diag, diag[1:]):
            if a == 0 and b != 0:
                raise ValueError("zeros must trail the Smith diagonal")
            if a != 0 and b % a != 0:
                raise ValueError("Smith diagonal must form a divisibility chain")

    @property
    def nonzero(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Smith normal form diagonal of ``m`` via integer row/column operations.

    For square nonsingular matrices the product of the diagonal equals
    |det m|.
    """
    a = [list(row) for row in m.entries]
    rows, cols = m.rows, m.cols
    size = min(rows, cols)
    diag: list[int] = []

    for k in range(size):
        pivot = _find_pivot(a, k, rows, cols)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
        while True:
            # Clear column k, then row k; restart when a remainder shrinks
            # below the pivot (keeps the pivot a gcd candidate).
            restart = False
            for i in range(k + 1, rows):
                if a[i][k] == 0:
                    continue
                q = a[i][k] // a[k][k]
                for j in range(k, cols):
                    a[i][j] -= q * a[k][j]
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    restart = True
                    break
            if restart:
                continue
            for j in range(k + 1, cols):
                if a[k][j] == 0:
                    continue
                q = a[k][j] // a[k][k]
                for i in range(k, rows):
                    a[i][j] -= q * a[i][k]
                if a[k][j] != 0:
                    for row in a:
                        row[k], row[j] = row[j], row[k]
                    restart = True
                    break
            if restart:
                continue
            # Divisibility fix: fold in any entry the pivot does not divide.
            offender = None
            for i in range(k + 1, rows):
                for j in range(k + 1, cols):
                    if a[i][j] % a[k][k] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(k, cols):
                a[k][j] += a[offender][j]
        diag.append(abs(a[k][k]))

    diag.extend([0] * (size - len(diag)))
    return SmithForm(tuple(diag))


def _find_pivot(a, k, rows, cols):
    best = None
    best_abs = None
    for i in range(k, rows):
        for j in range(k, cols):
            v = a[i][j]
            if v != 0 and (best_abs is None or abs(v) < best_abs):
                best = (i, j)
                best_abs = abs(v)
    return best


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise NonSquare(f"{m.rows}x{m.cols} matrix has no determinant")
    n = m.rows
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def power_iteration(
    m: IntMatrix,
    tol: float = DEFAULT_POWER_TOL,
    max_iter: int = DEFAULT_POWER_MAX_ITER,
) -> tuple[float, bool, int]:
    """Spectral radius of nonnegative ``m``, with a convergence flag.

    Power iteration on (m + I) applied to the all-ones vector with a
    Rayleigh-quotient stopping test; the +I shift makes irreducible
    matrices primitive so the iteration converges.  Returns
    (estimate, converged, iterations); on hitting ``max_iter`` the current
    estimate is returned with converged=False rather than failing.
    """
    if m.rows != m.cols:
        raise NonSquare("power iteration needs a square matrix")
    if any(x < 0 for row in m.entries for x in row):
        raise NegativeEntry("power iteration needs nonnegative entries")
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = m.rows
    shifted = [
        [float(x) + (1.0 if i == j else 0.0) for j, x in enumerate(row)]
        for i, row in enumerate(m.entries)
    ]
    v = [1.0] * n
    rq_prev = None
    rq = 1.0
    for it in range(1, max_iter + 1):
        u = [sum(row[j] * v[j] for j in range(n)) for row in shifted]
        num = sum(ui * vi for ui, vi in zip(u, v))
        den = sum(vi * vi for vi in v)
        rq = num / den
        scale = max(abs(x) for x in u)
        v = [x / scale for x in u]
        if rq_prev is not None and abs(rq - rq_prev) <= tol * max(1.0, abs(rq)):
            return rq - 1.0, True, it
        rq_prev = rq
    return rq - 1.0, False, max_iter


def dominant_eigenvalue(
    m: IntMatrix,
    tol: float = DEFAULT_POWER_TOL,
    max_iter: int = DEFAULT_POWER_MAX_ITER,
) -> float:
    """Estimate of the spectral radius of nonnegative ``m`` within ``tol``.

    Use :func:`power_iteration` directly when the convergence flag matters.
    """
    value, _, _ = power_iteration(m, tol, max_iter)
    return value
