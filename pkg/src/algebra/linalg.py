"""
Exact linear algebra over GF(2), GF(p) and the rationals.

  - GF(2): columns packed into Python ints, reduced by XOR against a pivot table
    (``GF2Basis``), which also records how each reduced vector was combined.
  - GF(p): modular Gaussian elimination on numpy integer arrays.
  - Q: fraction-free (Bareiss) elimination on integer-scaled rows, exact
    back-substitution with ``Fraction``.

Dense matrices are passed row-major as lists of rows.
"""
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from math import lcm
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from src.algebra.fields import FieldTag, Scalar
from src.constants import INT64_SAFE_PRIME_LIMIT


# ── GF(2) packed columns ─────────────────────────────────────────────────────

@dataclass
class GF2Basis:
    """
    Incremental column echelon form over GF(2).

    Each added column is reduced against the pivots seen so far. Independent
    columns become pivots; dependent ones contribute a kernel vector, recorded
    as the bitmask of column positions summing to zero.
    """

    pivots: dict[int, tuple[int, int]] = dataclass_field(default_factory=dict)
    kernel: list[int] = dataclass_field(default_factory=list)
    ncols: int = 0

    @classmethod
    def from_columns(cls, columns: Iterable[int]) -> "GF2Basis":
        basis = cls()
        for column in columns:
            basis.add(column)
        return basis

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, column: int) -> Optional[int]:
        """Add the next column; return its kernel combination if it is dependent."""
        vector, combination = column, 1 << self.ncols
        self.ncols += 1
        while vector:
            top = vector.bit_length() - 1
            entry = self.pivots.get(top)
            if entry is None:
                self.pivots[top] = (vector, combination)
                return None
            vector ^= entry[0]
            combination ^= entry[1]
        self.kernel.append(combination)
        return combination

    def express(self, target: int) -> Optional[int]:
        """Columns (as a bitmask) summing to ``target``, or None if outside the span."""
        combination = 0
        while target:
            top = target.bit_length() - 1
            entry = self.pivots.get(top)
            if entry is None:
                return None
            target ^= entry[0]
            combination ^= entry[1]
        return combination


def gf2_rank(columns: Iterable[int]) -> int:
    return GF2Basis.from_columns(columns).rank


def gf2_kernel(columns: Iterable[int]) -> list[int]:
    return GF2Basis.from_columns(columns).kernel


def bits(mask: int) -> list[int]:
    """Positions of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _rows_to_gf2_columns(matrix: Sequence[Sequence], ncols: int) -> list[int]:
    columns = [0] * ncols
    for i, row in enumerate(matrix):
        for j, value in enumerate(row):
            if int(value) % 2:
                columns[j] |= 1 << i
    return columns


# ── Dense elimination (GF(p), Q) ─────────────────────────────────────────────

class Echelon(NamedTuple):
    rows: list[list]   # nonzero echelon rows
    pivots: list[int]  # pivot column of each row
    ncols: int


def _echelon_modp(matrix: Sequence[Sequence], ncols: int, p: int) -> Echelon:
    m = len(matrix)
    if m == 0 or ncols == 0:
        return Echelon([], [], ncols)
    dtype = np.int64 if p < INT64_SAFE_PRIME_LIMIT else object
    a = np.array([[int(x) % p for x in row] for row in matrix], dtype=dtype).reshape(m, ncols)
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        nonzero = np.nonzero(a[r:, c])[0]
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        below = np.nonzero(a[r + 1:, c])[0] + r + 1
        if below.size:
            a[below] = (a[below] - np.outer(a[below, c], a[r])) % p
        pivots.append(c)
        r += 1
    return Echelon([[int(x) for x in a[i]] for i in range(r)], pivots, ncols)


def _integer_rows(matrix: Sequence[Sequence]) -> list[list[int]]:
    rows = []
    for row in matrix:
        values = [Fraction(x) for x in row]
        scale = lcm(*(v.denominator for v in values)) if values else 1
        rows.append([int(v * scale) for v in values])
    return rows


def _echelon_bareiss(matrix: Sequence[Sequence], ncols: int) -> Echelon:
    """Fraction-free row echelon form; every intermediate entry is a minor of the input."""
    a = _integer_rows(matrix)
    m = len(a)
    previous = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        pivot = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        head = a[r][c]
        for i in range(r + 1, m):
            factor = a[i][c]
            row = a[i]
            for j in range(c + 1, ncols):
                row[j] = (head * row[j] - factor * a[r][j]) // previous
            row[c] = 0
        previous = head
        pivots.append(c)
        r += 1
    return Echelon([a[i] for i in range(r)], pivots, ncols)


def echelon(matrix: Sequence[Sequence], field: FieldTag, ncols: Optional[int] = None) -> Echelon:
    ncols = len(matrix[0]) if ncols is None and matrix else (ncols or 0)
    if field.is_rational:
        return _echelon_bareiss(matrix, ncols)
    return _echelon_modp(matrix, ncols, field.characteristic)


def _back_substitute(ech: Echelon, field: FieldTag, rhs: Sequence[Scalar],
                     free_values: dict[int, Scalar]) -> list[Scalar]:
    x = [field.zero] * ech.ncols
    for j, value in free_values.items():
        x[j] = field.element(value)
    for r in range(len(ech.pivots) - 1, -1, -1):
        pc = ech.pivots[r]
        row = ech.rows[r]
        acc = field.element(rhs[r])
        for j in range(pc + 1, ech.ncols):
            if row[j]:
                acc = field.sub(acc, field.mul(field.element(row[j]), x[j]))
        x[pc] = field.div(acc, field.element(row[pc]))
    return x


# ── Public entry points ──────────────────────────────────────────────────────

def rank(matrix: Sequence[Sequence], field: FieldTag, ncols: Optional[int] = None) -> int:
    ncols = len(matrix[0]) if ncols is None and matrix else (ncols or 0)
    if field.characteristic == 2:
        return gf2_rank(_rows_to_gf2_columns(matrix, ncols))
    return len(echelon(matrix, field, ncols).pivots)


def nullspace(matrix: Sequence[Sequence], field: FieldTag, ncols: Optional[int] = None) -> list[list[Scalar]]:
    """A basis of {x : matrix · x = 0}, one free variable set to 1 per vector."""
    ncols = len(matrix[0]) if ncols is None and matrix else (ncols or 0)
    if field.characteristic == 2:
        return [[(v >> j) & 1 for j in range(ncols)]
                for v in gf2_kernel(_rows_to_gf2_columns(matrix, ncols))]
    ech = echelon(matrix, field, ncols)
    pivot_set = set(ech.pivots)
    zeros = [0] * len(ech.pivots)
    return [_back_substitute(ech, field, zeros, {j: 1})
            for j in range(ncols) if j not in pivot_set]


class SolveResult(NamedTuple):
    solution: Optional[list[Scalar]]
    rank: int            # rank of the coefficient matrix
    augmented_rank: int  # rank of [matrix | rhs]


def solve(matrix: Sequence[Sequence], rhs: Sequence[Scalar], field: FieldTag,
          ncols: Optional[int] = None) -> SolveResult:
    """Exact solution of matrix · x = rhs (free variables set to 0), with rank transcript."""
    ncols = len(matrix[0]) if ncols is None and matrix else (ncols or 0)
    if len(rhs) != len(matrix):
        raise ValueError(f"Right-hand side has {len(rhs)} entries for {len(matrix)} rows")
    if field.characteristic == 2:
        basis = GF2Basis.from_columns(_rows_to_gf2_columns(matrix, ncols))
        target = 0
        for i, value in enumerate(rhs):
            if int(value) % 2:
                target |= 1 << i
        combination = basis.express(target)
        if combination is None:
            return SolveResult(None, basis.rank, basis.rank + 1)
        chosen = set(bits(combination))
        return SolveResult([1 if j in chosen else 0 for j in range(ncols)], basis.rank, basis.rank)
    augmented = [list(row) + [value] for row, value in zip(matrix, rhs)]
    ech = echelon(augmented, field, ncols + 1)
    coefficient_rank = sum(1 for c in ech.pivots if c < ncols)
    if ncols in ech.pivots:
        return SolveResult(None, coefficient_rank, len(ech.pivots))
    trimmed = Echelon([row[:ncols] for row in ech.rows], ech.pivots, ncols)
    solution = _back_substitute(trimmed, field, [row[ncols] for row in ech.rows], {})
    return SolveResult(solution, coefficient_rank, len(ech.pivots))
