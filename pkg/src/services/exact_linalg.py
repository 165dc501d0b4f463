"""
Exact rational linear algebra for firing-vector balance systems

Matrices are numpy object arrays of fractions.Fraction, so elimination is
exact and pivots are taken in plain column order (first nonzero entry).
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from src.errors import DomainError, NoPositiveSolution, StructuralError
from src.services.constructions import useful_bipartite
from src.services.graph_core import DirectedMultigraph

logger = logging.getLogger(__name__)

BigRational = Fraction


class ExactMatrix:
    """Dense rows x cols matrix of Fractions"""

    def __init__(self, data: np.ndarray):
        data = np.asarray(data)
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise DomainError(f"matrix dimensions must be positive, got {data.shape}")
        if data.dtype.kind == "f":
            raise DomainError("floating-point matrices are not exact; pass integers or Fractions")
        # fresh object array of Fractions
        self.data = np.array([[Fraction(x) for x in row] for row in data], dtype=object)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        return cls(np.array([list(row) for row in rows], dtype=object))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def entries(self) -> tuple[Fraction, ...]:
        """Row-major"""
        return tuple(self.data.flatten())

    def __getitem__(self, key):
        return self.data[key]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self.data]

    def apply(self, vector: Sequence) -> list[Fraction]:
        """Matrix-vector product"""
        if len(vector) != self.cols:
            raise DomainError(f"vector of length {len(vector)} does not match {self.cols} columns")
        v = np.array([Fraction(x) for x in vector], dtype=object)
        return list(self.data.dot(v))

    def drop_row(self, row: int) -> "ExactMatrix":
        return ExactMatrix(np.delete(self.data, row, axis=0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(np.all(self.data == other.data))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.to_lists()!r})"


@dataclass(frozen=True)
class RowEchelonResult:
    rref: ExactMatrix
    rank: int
    pivot_columns: tuple[int, ...]


@dataclass(frozen=True)
class FiringVector:
    """Smallest positive integer solution of the balance equations"""
    counts: tuple[int, ...]

    def __post_init__(self):
        if not self.counts or any(c < 1 for c in self.counts):
            raise NoPositiveSolution(f"firing vector entries must be positive: {self.counts}")
        if math.gcd(*self.counts) != 1:
            raise DomainError(f"firing vector is not normalized: {self.counts}")

    @property
    def maximum(self) -> int:
        return max(self.counts)

    @property
    def argmax(self) -> int:
        return self.counts.index(self.maximum)

    def __getitem__(self, v: int) -> int:
        return self.counts[v]

    def __len__(self) -> int:
        return len(self.counts)


def balance_laplacian(g: DirectedMultigraph) -> ExactMatrix:
    """
    L[v][v] = deg+(v) and L[v][u] = -mult(u -> v)

    L f = 0 says every vertex gets back, over one period, the chips it sent.
    """
    n = g.vertex_count
    if n < 1:
        raise DomainError("balance system needs at least one vertex")
    rows = [[0] * n for _ in range(n)]
    for v in range(n):
        rows[v][v] = g.out_degree[v]
    for u, v in g.edges:
        rows[v][u] -= 1
    return ExactMatrix.from_rows(rows)


def reduced_row_echelon(m: ExactMatrix) -> RowEchelonResult:
    """Gauss-Jordan elimination over the rationals"""
    a = m.data.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nonzero = next((i for i in range(r, rows) if a[i, col] != 0), None)
        if nonzero is None:
            continue
        if nonzero != r:
            a[[r, nonzero]] = a[[nonzero, r]]
        a[r, :] = a[r, :] / a[r, col]
        for i in range(rows):
            if i != r and a[i, col] != 0:
                a[i, :] = a[i, :] - a[i, col] * a[r, :]
        pivots.append(col)
        r += 1
    return RowEchelonResult(ExactMatrix(a), len(pivots), tuple(pivots))


def nullspace_basis(m: ExactMatrix) -> list[tuple[Fraction, ...]]:
    """One basis vector per free column of the RREF"""
    result = reduced_row_echelon(m)
    pivots = result.pivot_columns
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -result.rref[i, f]
        basis.append(tuple(x))
    return basis


def primitive_vector(counts: Iterable[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (zero vector unchanged)"""
    values = tuple(int(c) for c in counts)
    g = math.gcd(*values) if values else 0
    if g == 0:
        return values
    return tuple(c // g for c in values)


def minimal_positive_kernel_vector(g: DirectedMultigraph) -> FiringVector:
    """
    Smallest positive integer f with L f = 0

    The kernel must be one-dimensional (it is for strongly connected g). The
    rational basis vector is cleared of denominators, divided by its gcd and
    sign-normalized.
    """
    laplacian = balance_laplacian(g)
    result = reduced_row_echelon(laplacian)
    dimension = g.vertex_count - result.rank
    if dimension != 1:
        raise StructuralError(
            f"balance system has rank {result.rank}; kernel dimension {dimension} is not 1",
            rank=result.rank,
            kernel_dimension=dimension,
        )
    (basis,) = nullspace_basis(laplacian)
    scale = math.lcm(*(x.denominator for x in basis))
    integral = primitive_vector(int(x * scale) for x in basis)
    if all(x <= 0 for x in integral):
        integral = tuple(-x for x in integral)
    if any(x <= 0 for x in integral):
        raise NoPositiveSolution(f"kernel vector {integral} has zero or mixed-sign entries")
    logger.debug(f"Minimal firing vector {integral}")
    return FiringVector(integral)


def reduced_system_rank(g: DirectedMultigraph, dropped_row: int = 0) -> int:
    """Rank of the balance system after deleting one equation"""
    if not 0 <= dropped_row < g.vertex_count:
        raise DomainError(f"row {dropped_row} out of range")
    laplacian = balance_laplacian(g)
    if laplacian.rows == 1:
        return 0
    return reduced_row_echelon(laplacian.drop_row(dropped_row)).rank


def period_lower_bound(g: DirectedMultigraph) -> int:
    """Any game on g with T > 1 has T at least the largest minimal fire count"""
    return minimal_positive_kernel_vector(g).maximum


def complete_graph_recurrence(n: int) -> int:
    """T_1 = T_2 = T_3 = 1, T_n = T_{n-2} + (n-1) T_{n-1}"""
    if n < 1:
        raise DomainError(f"recurrence is defined for n >= 1, got {n}")
    previous, current = 1, 1  # T_{k-1}, T_k at k = 3
    if n <= 3:
        return 1
    for k in range(4, n + 1):
        previous, current = current, previous + (k - 1) * current
    return current


def bipartite_lower_bound(a: int) -> int:
    """f_4 of the minimal firing vector of the useful orientation of K_{a,a}"""
    if a < 2:
        raise DomainError(f"bipartite bound needs a >= 2, got {a}")
    return minimal_positive_kernel_vector(useful_bipartite(a))[3]
