"""
Brute-force GF(2) homology by exhaustive enumeration.

Every subset of d-faces is tested for being a cycle and the boundary of every
subset of (d+1)-faces is collected. Subsets are walked in Gray-code order so
each step costs one XOR. In dimension 0 the cycles are the even-sized vertex
sets, matching the augmented (reduced) convention used by the rank engine.
"""
from dataclasses import dataclass
from math import log2

from src.constants import ORACLE_MAX_FACES
from src.core.complex import Face, SimplicialComplex
from src.errors import DimensionRange, OracleTooLarge
from src.homology.engine import gf2_boundary_columns


@dataclass(frozen=True)
class OracleResult:
    dim: int
    faces: tuple[Face, ...]
    cycle_masks: frozenset
    boundary_masks: frozenset

    def _as_sets(self, masks) -> frozenset:
        return frozenset(
            frozenset(f for i, f in enumerate(self.faces) if mask >> i & 1) for mask in masks
        )

    @property
    def cycles(self) -> frozenset:
        return self._as_sets(self.cycle_masks)

    @property
    def boundaries(self) -> frozenset:
        return self._as_sets(self.boundary_masks)

    @property
    def betti(self) -> int:
        return round(log2(len(self.cycle_masks))) - round(log2(len(self.boundary_masks)))

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "faces": len(self.faces),
            "cycles": len(self.cycle_masks),
            "boundaries": len(self.boundary_masks),
            "betti": self.betti,
        }


def _gray_span(columns: list[int]) -> list[int]:
    """Images of all 2^n subsets of ``columns`` under XOR, in Gray-code order."""
    current = 0
    images = [0]
    for step in range(1, 1 << len(columns)):
        current ^= columns[(step & -step).bit_length() - 1]
        images.append(current)
    return images


def brute_force_homology_oracle(complex_: SimplicialComplex, d: int,
                                max_faces: int = ORACLE_MAX_FACES) -> OracleResult:
    if d < 0:
        raise DimensionRange(f"Oracle dimension must be >= 0, got {d}")
    faces = complex_.faces(d)
    upper = complex_.faces(d + 1)
    if len(faces) > max_faces or len(upper) > max_faces:
        raise OracleTooLarge(
            f"Oracle bound exceeded in {complex_.name}: {len(faces)} {d}-faces and "
            f"{len(upper)} {d + 1}-faces (limit {max_faces} per level)"
        )

    n = len(faces)
    if d == 0:
        down = [1] * n  # augmentation: every vertex maps to the single (-1)-face
    else:
        down = gf2_boundary_columns(complex_, d)
    cycles = set()
    current = 0
    if n:
        subset = 0
        for step in range(1 << n):
            if step:
                bit = (step & -step).bit_length() - 1
                subset ^= 1 << bit
                current ^= down[bit]
            if current == 0:
                cycles.add(subset)
    else:
        cycles.add(0)
    boundaries = frozenset(_gray_span(gf2_boundary_columns(complex_, d + 1)) if upper else [0])
    return OracleResult(d, faces, frozenset(cycles), boundaries)
