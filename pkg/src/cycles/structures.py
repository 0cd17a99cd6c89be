"""
d-dimensional cycles and the structures around them.

A pure d-complex is a d-dimensional cycle when its facets are connected through
shared ridges ((d-1)-faces) and every ridge lies in an even number of facets.
Every search here runs on facet tuples in the index space of one complex and
wraps results back into ``SimplicialComplex`` objects at the end.
"""
from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence

from loguru import logger

from src.algebra.chains import boundary_terms
from src.algebra.linalg import GF2Basis, bits
from src.constants import KERNEL_ENUMERATION_MAX_DIM
from src.core.complex import Face, SimplicialComplex
from src.errors import (
    DimensionRange, InvariantViolation, NotACycle, NotPure, TooFewVertices, VertexClash,
)

RidgeIncidence = Mapping[Face, tuple[Face, ...]]


def ridge_incidence(facets: Iterable[Face]) -> dict[Face, tuple[Face, ...]]:
    """Each ridge of the given facets mapped to the sorted facets containing it."""
    table: dict[Face, list[Face]] = defaultdict(list)
    for facet in sorted(facets):
        for ridge, _ in boundary_terms(facet):
            table[ridge].append(facet)
    return {ridge: tuple(group) for ridge, group in sorted(table.items())}


def _require_pure(complex_: SimplicialComplex):
    if not complex_.is_pure():
        raise NotPure(f"Complex '{complex_.name}' is not pure (facet dimensions {complex_.facet_dims})")


def facet_components(facets: Sequence[Face]) -> list[list[Face]]:
    """Classes of facets under 'share a ridge', each sorted, ordered by smallest facet."""
    facets = sorted(facets)
    parent = {f: f for f in facets}

    def find(f: Face) -> Face:
        while parent[f] != f:
            parent[f] = parent[parent[f]]
            f = parent[f]
        return f

    for group in ridge_incidence(facets).values():
        root = find(group[0])
        for other in group[1:]:
            other_root = find(other)
            if other_root != root:
                low, high = sorted((root, other_root))
                parent[high] = low
                root = low
    classes: dict[Face, list[Face]] = defaultdict(list)
    for f in facets:
        classes[find(f)].append(f)
    return sorted(classes.values(), key=lambda c: c[0])


# ── Cycle predicate ──────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class CycleComplex:
    """A pure d-complex validated as a d-dimensional cycle."""

    base: SimplicialComplex
    d: int
    ridges: RidgeIncidence

    @property
    def facets(self) -> tuple[Face, ...]:
        return self.base.facets

    @property
    def name(self) -> str:
        return self.base.name

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycleComplex):
            return NotImplemented
        return self.d == other.d and self.base == other.base

    def __hash__(self) -> int:
        return hash((self.d, self.base))

    def __len__(self) -> int:
        return len(self.base.facets)


@dataclass(frozen=True)
class CycleCheck:
    complex: SimplicialComplex
    dim: int
    components: int
    odd_ridges: tuple[Face, ...]
    incidence_histogram: Mapping[int, int]
    cycle: Optional[CycleComplex]

    @property
    def is_cycle(self) -> bool:
        return self.cycle is not None

    @property
    def reason(self) -> str:
        if self.is_cycle:
            return f"{self.dim}-dimensional cycle"
        problems = []
        if self.odd_ridges:
            problems.append(f"{len(self.odd_ridges)} ridge(s) with odd incidence")
        if self.components != 1:
            problems.append(f"{self.components} {self.dim}-path components")
        return "; ".join(problems)

    def to_dict(self) -> dict:
        return {
            "name": self.complex.name,
            "dim": self.dim,
            "is_cycle": self.is_cycle,
            "reason": self.reason,
            "components": self.components,
            "odd_ridges": [list(self.complex.face_labels(r)) for r in self.odd_ridges],
            "incidence_histogram": {str(k): v for k, v in sorted(self.incidence_histogram.items())},
        }


def check_d_dimensional_cycle(complex_: SimplicialComplex) -> CycleCheck:
    _require_pure(complex_)
    ridges = ridge_incidence(complex_.facets)
    odd = tuple(r for r, group in ridges.items() if len(group) % 2)
    histogram = Counter(len(group) for group in ridges.values())
    components = len(facet_components(complex_.facets))
    cycle = None
    if not odd and components == 1:
        cycle = CycleComplex(complex_, complex_.dim, MappingProxyType(ridges))
    return CycleCheck(complex_, complex_.dim, components, odd, dict(histogram), cycle)


def is_d_dimensional_cycle(complex_: SimplicialComplex) -> Optional[CycleComplex]:
    return check_d_dimensional_cycle(complex_).cycle


def as_cycle(complex_: SimplicialComplex) -> CycleComplex:
    """The complex as a CycleComplex, raising NotACycle with the reason otherwise."""
    check = check_d_dimensional_cycle(complex_)
    if check.cycle is None:
        raise NotACycle(f"'{complex_.name}' is not a {check.dim}-dimensional cycle: {check.reason}")
    return check.cycle


def d_path_components(complex_: SimplicialComplex) -> list[SimplicialComplex]:
    _require_pure(complex_)
    return [complex_.subcomplex(group, name=f"{complex_.name}#{i}")
            for i, group in enumerate(facet_components(complex_.facets))]


def is_pseudo_manifold(complex_: SimplicialComplex) -> bool:
    _require_pure(complex_)
    ridges = ridge_incidence(complex_.facets)
    return (all(len(group) == 2 for group in ridges.values())
            and len(facet_components(complex_.facets)) == 1)


# ── Face-minimality and decomposition ────────────────────────────────────────

def local_kernel(facets: Sequence[Face]) -> list[int]:
    """GF(2) kernel basis of the boundary restricted to ``facets`` (bit i = facets[i])."""
    position: dict[Face, int] = {}
    columns = []
    for facet in facets:
        mask = 0
        for ridge, _ in boundary_terms(facet):
            mask |= 1 << position.setdefault(ridge, len(position))
        columns.append(mask)
    return GF2Basis.from_columns(columns).kernel


def min_weight_combination(vectors: Sequence[int], order: Sequence[Face]) -> int:
    """Nonzero XOR-combination of ``vectors`` with fewest bits; ties by face order."""
    best, best_key = 0, None
    current = 0
    for step in range(1, 1 << len(vectors)):
        current ^= vectors[(step & -step).bit_length() - 1]
        weight = current.bit_count()
        if best_key is not None and weight > best_key[0]:
            continue
        key = (weight, [order[i] for i in bits(current)])
        if best_key is None or key < best_key:
            best, best_key = current, key
    return best


def minimal_subcycle(facets: Sequence[Face], limit: int = KERNEL_ENUMERATION_MAX_DIM) -> list[Face]:
    """
    Facets of a face-minimal cycle inside the cycle formed by ``facets``.

    With a kernel of dimension at most ``limit`` the minimum-support kernel
    vector is taken (its support is connected and face-minimal). Larger kernels
    descend instead: pick a kernel vector other than the whole, keep one ridge
    component of its support, repeat.
    """
    current = sorted(facets)
    while True:
        kernel = local_kernel(current)
        if len(kernel) <= 1:
            return current
        if len(kernel) <= limit:
            vector = min_weight_combination(kernel, current)
        else:
            whole = (1 << len(current)) - 1
            vector = next(v for v in kernel if v != whole)
        support = [current[i] for i in bits(vector)]
        current = facet_components(support)[0]
        logger.debug(f"Face-minimal search narrowed to {len(current)} facets")


def is_face_minimal(cycle: CycleComplex) -> bool:
    return len(local_kernel(cycle.facets)) == 1


@dataclass(frozen=True)
class Decomposition:
    source: CycleComplex
    parts: tuple[CycleComplex, ...]

    def to_dict(self) -> dict:
        return {
            "name": self.source.name,
            "dim": self.source.d,
            "parts": [
                {
                    "facets": part.base.facet_lists(),
                    "face_minimal": is_face_minimal(part),
                    "pseudo_manifold": is_pseudo_manifold(part.base),
                }
                for part in self.parts
            ],
        }


def face_minimal_decomposition(cycle: CycleComplex,
                               limit: int = KERNEL_ENUMERATION_MAX_DIM) -> Decomposition:
    """Split a cycle into facet-disjoint face-minimal cycles."""
    found: list[list[Face]] = []
    pending = [list(cycle.facets)]
    while pending:
        facets = pending.pop()
        part = minimal_subcycle(facets, limit)
        found.append(part)
        rest = sorted(set(facets) - set(part))
        if rest:
            pending.extend(reversed(facet_components(rest)))

    base = cycle.base
    parts = []
    for i, facets in enumerate(sorted(found)):
        sub = base.subcomplex(facets, name=f"{base.name}/part{i}")
        part = is_d_dimensional_cycle(sub)
        if part is None or not is_face_minimal(part):
            raise InvariantViolation(f"Decomposition of {base.name} produced a non face-minimal part")
        parts.append(part)
    logger.debug(f"Decomposed {base.name} into {len(parts)} face-minimal part(s)")
    return Decomposition(cycle, tuple(parts))


# ── Links and cones ──────────────────────────────────────────────────────────

def link_cycles(cycle: CycleComplex, vertex: str) -> list[CycleComplex]:
    """The (d-1)-cycles making up the link of ``vertex``, one per ridge component."""
    if cycle.d < 1:
        raise DimensionRange("Links of vertices are taken in cycles of dimension >= 1")
    base = cycle.base
    v = base.index_of(vertex)
    link_faces = [tuple(x for x in facet if x != v) for facet in cycle.facets if v in facet]
    link = base.subcomplex(link_faces, name=f"{base.name}:lk({vertex})")
    result = []
    for component in d_path_components(link):
        part = is_d_dimensional_cycle(component)
        if part is None:
            raise InvariantViolation(f"Link component of {vertex} in {base.name} is not a cycle")
        result.append(part)
    return result


def _minimal_solution(combination: int, columns: Sequence[int], kernel: Sequence[int]) -> int:
    """Shrink a solution of Σ columns = target until no proper subset also solves it."""
    improved = True
    while improved:
        improved = False
        for vector in kernel:
            candidate = combination ^ vector
            if candidate.bit_count() < combination.bit_count():
                combination, improved = candidate, True
    while True:
        chosen = bits(combination)
        dependencies = GF2Basis.from_columns([columns[j] for j in chosen]).kernel
        if not dependencies:
            return combination
        for position in bits(dependencies[0]):
            combination ^= 1 << chosen[position]


def cone_extend(ambient: SimplicialComplex, cycle: CycleComplex, vertex: str) -> Optional[CycleComplex]:
    """
    Extend a d-cycle of ``ambient`` to a (d+1)-cycle: the cone over it with apex
    ``vertex`` plus (d+1)-faces of ``ambient`` on the same vertices whose
    boundary is the cycle over GF(2). None when no such faces exist.
    """
    apex = str(vertex)
    if apex in cycle.base.labels:
        raise VertexClash(f"Apex {apex!r} is already a vertex of {cycle.name}")
    targets = [ambient.lift(f, cycle.base) for f in cycle.facets]
    allowed = {ambient.index_of(label) for label in cycle.base.labels}
    upper = cycle.d + 1
    candidates = [a for a in ambient.faces(upper) if set(a) <= allowed] if upper <= ambient.dim else []

    position: dict[Face, int] = {}
    target = 0
    for f in targets:
        target |= 1 << position.setdefault(f, len(position))
    columns = []
    for a in candidates:
        mask = 0
        for ridge, _ in boundary_terms(a):
            mask |= 1 << position.setdefault(ridge, len(position))
        columns.append(mask)

    basis = GF2Basis.from_columns(columns)
    combination = basis.express(target)
    if combination is None:
        logger.debug(f"No {upper}-faces of {ambient.name} fill {cycle.name}")
        return None
    combination = _minimal_solution(combination, columns, basis.kernel)

    facets = [list(cycle.base.face_labels(f)) + [apex] for f in cycle.facets]
    facets += [list(ambient.face_labels(candidates[j])) for j in bits(combination)]
    extended = SimplicialComplex.from_facets(f"cone({cycle.name},{apex})", facets)
    result = is_d_dimensional_cycle(extended)
    if result is None:
        raise InvariantViolation(f"Cone extension of {cycle.name} is not a {upper}-dimensional cycle")
    return result


# ── Generators and graphs ────────────────────────────────────────────────────

def lambda_complete(n: int, d: int) -> SimplicialComplex:
    """All (d+1)-subsets of n vertices labelled 1..n."""
    if d < 0:
        raise DimensionRange(f"Dimension must be >= 0, got {d}")
    if n <= d:
        raise TooFewVertices(f"Need more than {d} vertices for a {d}-dimensional complete complex, got {n}")
    labels = [str(i) for i in range(1, n + 1)]
    return SimplicialComplex.from_facets(f"lambda_{n}_{d}", combinations(labels, d + 1))


def _graph_adjacency(graph: SimplicialComplex) -> dict[int, list[int]]:
    _require_pure(graph)
    if graph.dim != 1:
        raise DimensionRange(f"'{graph.name}' is {graph.dim}-dimensional, expected a graph")
    adjacency: dict[int, list[int]] = {v: [] for v in range(graph.num_vertices)}
    for a, b in graph.facets:
        adjacency[a].append(b)
        adjacency[b].append(a)
    return {v: sorted(ns) for v, ns in adjacency.items()}


def _walk_until_repeat(adjacency: dict[int, list[int]], start: int) -> list[int]:
    walk, seen = [start], {start: 0}
    previous, current = None, start
    while True:
        step = next(u for u in adjacency[current] if u != previous)
        if step in seen:
            return walk[seen[step]:]
        seen[step] = len(walk)
        walk.append(step)
        previous, current = current, step


def _validate_graph_cycle(graph: SimplicialComplex, cycle: list[int]) -> list[str]:
    edges = set(graph.facets)
    closed = list(zip(cycle, cycle[1:] + cycle[:1]))
    if len(cycle) < 3 or len(set(cycle)) != len(cycle) or \
            any(tuple(sorted(e)) not in edges for e in closed):
        raise InvariantViolation(f"Walk {cycle} in {graph.name} is not a graph cycle")
    return [graph.labels[v] for v in cycle]


def find_graph_cycle(graph: SimplicialComplex) -> Optional[list[str]]:
    """A graph cycle found by walking until a vertex repeats; None if some degree is below 2."""
    adjacency = _graph_adjacency(graph)
    if any(len(ns) < 2 for ns in adjacency.values()):
        return None
    return _validate_graph_cycle(graph, _walk_until_repeat(adjacency, 0))


def find_any_graph_cycle(graph: SimplicialComplex) -> Optional[list[str]]:
    """Exhaustive variant: prune leaves down to the 2-core, then walk inside it."""
    adjacency = {v: set(ns) for v, ns in _graph_adjacency(graph).items()}
    leaves = [v for v, ns in adjacency.items() if len(ns) < 2]
    while leaves:
        v = leaves.pop()
        if v not in adjacency:
            continue
        for u in adjacency.pop(v):
            adjacency[u].discard(v)
            if len(adjacency[u]) < 2:
                leaves.append(u)
    if not adjacency:
        return None
    core = {v: sorted(ns) for v, ns in adjacency.items()}
    return _validate_graph_cycle(graph, _walk_until_repeat(core, min(core)))
