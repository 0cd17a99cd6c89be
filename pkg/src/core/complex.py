"""
Finite abstract simplicial complexes.

Vertices are string labels interned to dense integer indices. The interning
order is the natural label order (numeric labels by value first, then the
rest lexicographically), so restricting to a subset of vertices keeps the
relative index order and faces stay sorted when moved between a complex and
its subcomplexes.
"""
import threading
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence

from src.errors import (
    DimensionRange, EmptyComplex, ForeignFace, InvalidFacet, InvalidLabel, UnknownVertex,
)

Face = tuple[int, ...]


def label_key(label: str) -> tuple:
    """Sort key putting numeric labels first (by value), then the rest."""
    if label.isascii() and label.isdigit():
        return (0, int(label), label)
    return (1, 0, label)


def _check_label(raw) -> str:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise InvalidLabel(f"Vertex label must be a string or integer, got {raw!r}")
    label = str(raw)
    if not label or label.startswith("#") or any(ch.isspace() for ch in label):
        raise InvalidLabel(f"Invalid vertex label {label!r}")
    return label


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """
    Immutable complex given by its facets (an antichain under inclusion).

    ``labels[i]`` is the label of vertex ``i``; ``facets`` holds sorted index
    tuples in lexicographic order. Face levels are computed on demand and
    memoized under a lock, so instances can be shared between threads.
    """

    name: str
    labels: tuple[str, ...]
    facets: tuple[Face, ...]

    def __post_init__(self):
        object.__setattr__(self, "_index", {label: i for i, label in enumerate(self.labels)})
        object.__setattr__(self, "_faces", {})
        object.__setattr__(self, "_face_sets", {})
        object.__setattr__(self, "_lock", threading.Lock())
        object.__setattr__(self, "_hash", hash((self.labels, self.facets)))

    # ── Construction ─────────────────────────────────────────────────────────

    @classmethod
    def from_facets(cls, name: str, facet_lists: Iterable[Sequence]) -> "SimplicialComplex":
        """Intern labels, collapse duplicate facets and drop dominated ones."""
        label_sets = []
        for position, facet in enumerate(facet_lists):
            labels = [_check_label(v) for v in facet]
            if not labels:
                raise InvalidFacet(f"Facet #{position} is empty")
            if len(set(labels)) != len(labels):
                raise InvalidFacet(f"Facet #{position} repeats a vertex: {labels}")
            label_sets.append(frozenset(labels))
        if not label_sets:
            raise EmptyComplex(f"Complex '{name}' has no facets")
        return cls._build(name, label_sets)

    @classmethod
    def _build(cls, name: str, label_sets: Iterable[frozenset]) -> "SimplicialComplex":
        unique = set(label_sets)
        maximal = [s for s in unique if not any(s < other for other in unique)]
        labels = tuple(sorted(set().union(*maximal), key=label_key))
        index = {label: i for i, label in enumerate(labels)}
        facets = tuple(sorted(tuple(sorted(index[v] for v in s)) for s in maximal))
        return cls(name, labels, facets)

    # ── Identity ─────────────────────────────────────────────────────────────

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.labels == other.labels and self.facets == other.facets

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return (f"SimplicialComplex(name={self.name!r}, vertices={len(self.labels)}, "
                f"facets={len(self.facets)}, dim={self.dim})")

    # ── Basic queries ────────────────────────────────────────────────────────

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    @property
    def facet_dims(self) -> list[int]:
        return sorted({len(f) - 1 for f in self.facets})

    def is_pure(self) -> bool:
        return len(self.facet_dims) == 1

    def is_d_complete(self, d: int) -> bool:
        return len(self.faces(d)) == comb(self.num_vertices, d + 1)

    def faces(self, k: int) -> tuple[Face, ...]:
        """All k-faces, sorted lexicographically; empty above the top dimension."""
        if k < 0:
            raise DimensionRange(f"Face dimension must be >= 0, got {k}")
        with self._lock:
            cached = self._faces.get(k)
            if cached is None:
                found = set()
                for facet in self.facets:
                    if len(facet) > k:
                        found.update(combinations(facet, k + 1))
                cached = tuple(sorted(found))
                self._faces[k] = cached
        return cached

    def face_set(self, k: int) -> frozenset:
        with self._lock:
            cached = self._face_sets.get(k)
        if cached is None:
            cached = frozenset(self.faces(k))
            with self._lock:
                self._face_sets[k] = cached
        return cached

    def has_face(self, face: Face) -> bool:
        return len(face) > 0 and face in self.face_set(len(face) - 1)

    def f_vector(self) -> list[int]:
        return [len(self.faces(k)) for k in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    # ── Labels and indices ───────────────────────────────────────────────────

    def index_of(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownVertex(f"Vertex {label!r} is not in complex '{self.name}'") from None

    def face_of(self, labels: Iterable[str]) -> Face:
        return tuple(sorted(self.index_of(label) for label in labels))

    def face_labels(self, face: Face) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in face)

    def facet_lists(self) -> list[list[str]]:
        return [list(self.face_labels(f)) for f in self.facets]

    def lift(self, face: Face, source: "SimplicialComplex") -> Face:
        """Translate a face of ``source`` into this complex's indices."""
        try:
            mapped = self.face_of(source.face_labels(face))
        except UnknownVertex as e:
            raise ForeignFace(str(e)) from None
        if not self.has_face(mapped):
            raise ForeignFace(f"{list(source.face_labels(face))} is not a face of '{self.name}'")
        return mapped

    # ── Derived complexes ────────────────────────────────────────────────────

    def subcomplex(self, facets: Iterable[Face], name: Optional[str] = None) -> "SimplicialComplex":
        """Complex generated by some faces of this one (re-interned, may be empty)."""
        label_sets = []
        for face in facets:
            if not self.has_face(face):
                raise ForeignFace(f"{face} is not a face of '{self.name}'")
            label_sets.append(frozenset(self.face_labels(face)))
        return SimplicialComplex._build(self.name if name is None else name, label_sets)

    def induced_subcomplex(self, vertices: Iterable[str], name: Optional[str] = None) -> "SimplicialComplex":
        keep = {self.index_of(label) for label in vertices}
        label_sets = []
        for facet in self.facets:
            part = frozenset(self.labels[i] for i in facet if i in keep)
            if part:
                label_sets.append(part)
        return SimplicialComplex._build(self.name if name is None else name, label_sets)

    def vertex_components(self) -> list[tuple[str, ...]]:
        """Connected components of the 1-skeleton, ordered by smallest vertex."""
        parent = list(range(self.num_vertices))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        if self.dim >= 1:
            for a, b in self.faces(1):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[str]] = {}
        for i in range(self.num_vertices):
            groups.setdefault(find(i), []).append(self.labels[i])
        return [tuple(groups[root]) for root in sorted(groups)]
