"""
Oriented faces, d-chains and the boundary homomorphism.

An oriented face is stored as its sorted vertex tuple plus a sign: +1 for the
class of the sorted order, -1 for the opposite class. A chain maps sorted faces
to nonzero field coefficients, so the sign of an oriented face is absorbed in
its coefficient.
"""
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

from src.algebra.fields import FieldTag, Scalar
from src.core.complex import Face, SimplicialComplex
from src.errors import (
    ChainMismatch, DimensionRange, EmptySupport, ForeignFace, InvalidFacet, UnknownVertex,
)


def permutation_sign(sequence: Sequence[int]) -> int:
    """Sign of the permutation sorting ``sequence`` (entries must be distinct)."""
    items = list(sequence)
    if len(set(items)) != len(items):
        raise InvalidFacet(f"Repeated vertex in oriented face {items}")
    sign = 1
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class OrientedFace:
    face: Face
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"Orientation sign must be +1 or -1, got {self.sign}")

    @classmethod
    def from_sequence(cls, sequence: Sequence[int]) -> "OrientedFace":
        return cls(tuple(sorted(sequence)), permutation_sign(sequence))

    @property
    def dim(self) -> int:
        return len(self.face) - 1

    def sequence(self) -> tuple[int, ...]:
        """A vertex ordering representing this orientation class."""
        if self.sign == 1 or len(self.face) < 2:
            return self.face
        return (self.face[1], self.face[0]) + self.face[2:]

    def __neg__(self) -> "OrientedFace":
        return OrientedFace(self.face, -self.sign)


TermKey = Union[Face, OrientedFace]


@dataclass(frozen=True, eq=False)
class Chain:
    """
    A d-chain with coefficients in ``field`` over the vertex table ``labels``.

    ``terms`` never stores zero coefficients; over GF(2) every stored
    coefficient is 1.
    """

    dim: int
    field: FieldTag
    labels: tuple[str, ...]
    terms: Mapping[Face, Scalar]

    def __post_init__(self):
        object.__setattr__(self, "terms", MappingProxyType(dict(sorted(self.terms.items()))))

    # ── Construction ─────────────────────────────────────────────────────────

    @classmethod
    def zero(cls, dim: int, field: FieldTag, labels: tuple[str, ...]) -> "Chain":
        return cls(dim, field, labels, {})

    @classmethod
    def from_terms(cls, dim: int, field: FieldTag, labels: tuple[str, ...],
                   terms: Iterable[tuple[TermKey, object]]) -> "Chain":
        """Combine (face or oriented face, coefficient) pairs, dropping zeros."""
        acc: dict[Face, Scalar] = {}
        for key, coefficient in terms:
            if isinstance(key, OrientedFace):
                face, value = key.face, field.element(coefficient) * key.sign
            else:
                face, value = tuple(key), field.element(coefficient)
            if len(face) != dim + 1 or list(face) != sorted(set(face)):
                raise InvalidFacet(f"{face} is not a sorted {dim}-face")
            acc[face] = field.add(acc.get(face, field.zero), value)
        return cls(dim, field, labels, {f: c for f, c in acc.items() if c != 0})

    @classmethod
    def from_faces(cls, complex_: SimplicialComplex, faces: Iterable[Face], field: FieldTag,
                   coefficient=1) -> "Chain":
        faces = list(faces)
        dim = len(faces[0]) - 1 if faces else 0
        return cls.from_terms(dim, field, complex_.labels, ((f, coefficient) for f in faces))

    @classmethod
    def from_labels(cls, complex_: SimplicialComplex, field: FieldTag,
                    terms: Iterable[tuple[Sequence[str], object]]) -> "Chain":
        """Build a chain from (ordered vertex labels, coefficient) pairs."""
        pairs = [(OrientedFace.from_sequence([complex_.index_of(v) for v in seq]), c) for seq, c in terms]
        if not pairs:
            raise EmptySupport("No terms given")
        return cls.from_terms(pairs[0][0].dim, field, complex_.labels, pairs)

    # ── Algebra ──────────────────────────────────────────────────────────────

    def _check_compatible(self, other: "Chain"):
        if self.dim != other.dim or self.field != other.field or self.labels != other.labels:
            raise ChainMismatch(
                f"Cannot combine {self.dim}-chain over {self.field} with {other.dim}-chain over {other.field}"
            )

    def __add__(self, other: "Chain") -> "Chain":
        self._check_compatible(other)
        return Chain.from_terms(self.dim, self.field, self.labels,
                                list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "Chain":
        return self.scale(-1)

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def scale(self, factor) -> "Chain":
        factor = self.field.element(factor)
        return Chain.from_terms(self.dim, self.field, self.labels,
                                ((f, self.field.mul(c, factor)) for f, c in self.terms.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return (self.dim, self.field, self.labels, dict(self.terms)) == \
            (other.dim, other.field, other.labels, dict(other.terms))

    def __hash__(self) -> int:
        return hash((self.dim, self.field, self.labels, tuple(self.terms.items())))

    # ── Queries ──────────────────────────────────────────────────────────────

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, face: Face) -> Scalar:
        return self.terms.get(tuple(face), self.field.zero)

    def support(self) -> tuple[Face, ...]:
        return tuple(self.terms)

    def to_vector(self, order: Sequence[Face]) -> list[Scalar]:
        return [self.coefficient(f) for f in order]

    def to_bits(self, order: Sequence[Face]) -> int:
        """Packed GF(2) image of the chain over the given face order."""
        position = {f: i for i, f in enumerate(order)}
        bits = 0
        for face, c in self.terms.items():
            if int(c) % 2:
                bits ^= 1 << position[face]
        return bits

    def transport(self, target: SimplicialComplex) -> "Chain":
        """Same chain re-indexed into ``target``; every face must be a face of it."""
        if self.labels == target.labels:
            for face in self.terms:
                if not target.has_face(face):
                    raise ForeignFace(f"{face} is not a face of '{target.name}'")
            return self
        terms = []
        for face, c in self.terms.items():
            labels = [self.labels[i] for i in face]
            try:
                mapped = [target.index_of(v) for v in labels]
            except UnknownVertex:
                raise ForeignFace(f"{labels} is not a face of '{target.name}'") from None
            oriented = OrientedFace.from_sequence(mapped)
            if not target.has_face(oriented.face):
                raise ForeignFace(f"{labels} is not a face of '{target.name}'")
            terms.append((oriented, c))
        return Chain.from_terms(self.dim, self.field, target.labels, terms)

    def labelled_terms(self) -> list[tuple[list[str], Scalar]]:
        return [([self.labels[i] for i in face], c) for face, c in self.terms.items()]


def add(c1: Chain, c2: Chain) -> Chain:
    return c1 + c2


def scale(c: Chain, factor) -> Chain:
    return c.scale(factor)


def boundary_terms(face: Face) -> list[tuple[Face, int]]:
    """(ridge, (-1)^i) pairs for the sorted face with vertex i removed."""
    return [(face[:i] + face[i + 1:], -1 if i % 2 else 1) for i in range(len(face))]


def boundary(c: Chain, ambient: SimplicialComplex) -> Chain:
    """The boundary of ``c`` in ``ambient``; a 0-chain maps to the empty (-1)-chain."""
    if c.dim < 0:
        raise DimensionRange(f"Boundary is defined for chains of dimension >= 0, got {c.dim}")
    c = c.transport(ambient)
    if c.dim == 0:
        return Chain.zero(-1, c.field, c.labels)
    field = c.field
    return Chain.from_terms(
        c.dim - 1, field, c.labels,
        ((ridge, field.mul(coefficient, sign))
         for face, coefficient in c.terms.items()
         for ridge, sign in boundary_terms(face)),
    )


def support_complex(c: Chain, name: str = "support") -> SimplicialComplex:
    if c.is_zero():
        raise EmptySupport("The support of the zero chain is empty")
    return SimplicialComplex._build(name, [frozenset(c.labels[i] for i in face) for face in c.terms])
