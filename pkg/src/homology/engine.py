"""
Boundary matrices, reduced Betti numbers and cycle/boundary membership.

Rows and columns of every boundary matrix follow ``SimplicialComplex.faces``
order (lexicographic on sorted vertex indices), so matrices, witnesses and
reports are reproducible.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from loguru import logger

from src.algebra import linalg
from src.algebra.chains import Chain, boundary, boundary_terms
from src.algebra.fields import FieldTag, Scalar
from src.core.complex import Face, SimplicialComplex
from src.errors import DimensionRange, InvariantViolation


@dataclass(frozen=True)
class BoundaryMatrix:
    dim: int
    field: FieldTag
    rows: tuple[Face, ...]
    cols: tuple[Face, ...]
    entries: tuple[tuple[Scalar, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def column(self, j: int) -> list[Scalar]:
        return [row[j] for row in self.entries]

    def rank(self) -> int:
        return linalg.rank(self.entries, self.field, len(self.cols))


@dataclass(frozen=True)
class BettiReport:
    name: str
    field: FieldTag
    betti: dict[int, int]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "field": self.field.label,
            "betti": {str(d): b for d, b in sorted(self.betti.items())},
        }


def boundary_matrix(complex_: SimplicialComplex, d: int, field: FieldTag) -> BoundaryMatrix:
    if d < 0 or d > complex_.dim:
        raise DimensionRange(f"Boundary matrix dimension {d} outside 0..{complex_.dim}")
    cols = complex_.faces(d)
    rows = complex_.faces(d - 1) if d > 0 else ()
    position = {f: i for i, f in enumerate(rows)}
    entries = [[field.zero] * len(cols) for _ in rows]
    if d > 0:
        for j, face in enumerate(cols):
            for ridge, sign in boundary_terms(face):
                entries[position[ridge]][j] = field.element(sign)
    return BoundaryMatrix(d, field, rows, cols, tuple(tuple(r) for r in entries))


def gf2_boundary_columns(complex_: SimplicialComplex, d: int) -> list[int]:
    """Packed GF(2) columns of the d-th boundary map, bit i = i-th (d-1)-face."""
    if d <= 0:
        return [0] * len(complex_.faces(0)) if d == 0 else []
    position = {f: i for i, f in enumerate(complex_.faces(d - 1))}
    columns = []
    for face in complex_.faces(d):
        mask = 0
        for ridge, _ in boundary_terms(face):
            mask |= 1 << position[ridge]
        columns.append(mask)
    return columns


@lru_cache(maxsize=512)
def boundary_rank(complex_: SimplicialComplex, d: int, field: FieldTag) -> int:
    """Rank of the d-th boundary map; 0 outside 1..dim."""
    if d < 1 or d > complex_.dim:
        return 0
    if field.characteristic == 2:
        return linalg.gf2_rank(gf2_boundary_columns(complex_, d))
    return boundary_matrix(complex_, d, field).rank()


def reduced_betti(complex_: SimplicialComplex, d: int, field: FieldTag) -> int:
    if d < 0:
        raise DimensionRange(f"Homology dimension must be >= 0, got {d}")
    if d == 0:
        return max(len(complex_.vertex_components()) - 1, 0)
    n_faces = len(complex_.faces(d))
    if n_faces == 0:
        return 0
    return n_faces - boundary_rank(complex_, d, field) - boundary_rank(complex_, d + 1, field)


def betti_report(complex_: SimplicialComplex, field: FieldTag) -> BettiReport:
    betti = {d: reduced_betti(complex_, d, field) for d in range(complex_.dim + 1)}
    logger.debug(f"Betti numbers of {complex_.name} over {field}: {betti}")
    return BettiReport(complex_.name, field, betti)


def is_cycle(c: Chain, complex_: SimplicialComplex) -> bool:
    return boundary(c, complex_).is_zero()


@dataclass(frozen=True)
class BoundarySolve:
    """Outcome of solving ∂_{d+1} y = c, kept as the non-bounding proof transcript."""

    field: FieldTag
    dim: int
    columns: int
    rank: int
    augmented_rank: int
    witness: Optional[Chain]

    @property
    def solvable(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> dict:
        return {
            "field": self.field.label,
            "dim": self.dim,
            "boundary_columns": self.columns,
            "boundary_rank": self.rank,
            "augmented_rank": self.augmented_rank,
            "solvable": self.solvable,
        }


def boundary_solve(c: Chain, complex_: SimplicialComplex) -> BoundarySolve:
    c = c.transport(complex_)
    d = c.dim
    field = c.field
    upper = d + 1
    columns = complex_.faces(upper) if upper >= 1 else ()
    if not columns:
        witness = Chain.zero(upper, field, complex_.labels) if c.is_zero() else None
        return BoundarySolve(field, d, 0, 0, 0 if c.is_zero() else 1, witness)

    if field.characteristic == 2:
        basis = linalg.GF2Basis.from_columns(gf2_boundary_columns(complex_, upper))
        combination = basis.express(c.to_bits(complex_.faces(d)))
        if combination is None:
            return BoundarySolve(field, d, len(columns), basis.rank, basis.rank + 1, None)
        chosen = [columns[j] for j in linalg.bits(combination)]
        witness = Chain.from_terms(upper, field, complex_.labels, ((f, 1) for f in chosen))
        rank, augmented_rank = basis.rank, basis.rank
    else:
        matrix = boundary_matrix(complex_, upper, field)
        result = linalg.solve(matrix.entries, c.to_vector(matrix.rows), field, len(columns))
        rank, augmented_rank = result.rank, result.augmented_rank
        if result.solution is None:
            return BoundarySolve(field, d, len(columns), rank, augmented_rank, None)
        witness = Chain.from_terms(upper, field, complex_.labels, zip(columns, result.solution))

    if boundary(witness, complex_) != c:
        raise InvariantViolation(f"Boundary witness in {complex_.name} does not reproduce the chain")
    return BoundarySolve(field, d, len(columns), rank, augmented_rank, witness)


def is_boundary(c: Chain, complex_: SimplicialComplex) -> Optional[Chain]:
    """A chain y with ∂y = c, or None when c is not a boundary."""
    return boundary_solve(c, complex_).witness
