"""
Induced orientations and orientability of d-dimensional cycles.

Signs are always relative to the sorted vertex order of a face. Orientability
asks for facet signs such that, at every ridge, the induced orientation classes
split evenly. Ridges of incidence 2 force a relation between their two facets
and are propagated over the dual graph; the remaining ridges (incidence >= 4)
constrain one free sign per propagated class and are solved by backtracking.
"""
from collections import defaultdict
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Optional

from loguru import logger

from src.algebra.chains import Chain, OrientedFace, boundary
from src.algebra.fields import FieldTag
from src.constants import ORIENTATION_NODE_BUDGET
from src.core.complex import Face, SimplicialComplex
from src.cycles.structures import CycleComplex
from src.errors import (
    IncompleteAssignment, InvariantViolation, SearchBudgetExceeded, UnknownVertex,
)
from src.utils.cancellation import CancellationToken


@dataclass(frozen=True)
class InducedOrientationClass:
    ridge: Face
    cofacet: Face
    sign: int  # +1: class of the ridge's sorted order, -1: the other class


def induced_orientation(face: OrientedFace, vertex: int) -> InducedOrientationClass:
    """
    Orientation a ridge inherits from an oriented face by deleting ``vertex``.

    Deleting the vertex at an odd (1-based) position of the ordering keeps the
    remaining order; at an even position one transposition is applied.
    """
    ordering = face.sequence()
    if vertex not in ordering:
        raise UnknownVertex(f"Vertex {vertex} is not in face {face.face}")
    position = ordering.index(vertex) + 1
    remaining = [v for v in ordering if v != vertex]
    if position % 2 == 0 and len(remaining) >= 2:
        remaining[0], remaining[1] = remaining[1], remaining[0]
    if position % 2 == 0 and len(remaining) < 2:
        sign = -1
    else:
        sign = OrientedFace.from_sequence(remaining).sign
    return InducedOrientationClass(tuple(sorted(remaining)), face.face, sign)


def _incidence_sign(ridge: Face, facet: Face) -> int:
    """Induced class at ``ridge`` of ``facet`` taken with its sorted orientation."""
    removed = next(v for v in facet if v not in ridge)
    return induced_orientation(OrientedFace(facet), removed).sign


@dataclass(frozen=True)
class OrientationAssignment:
    base: SimplicialComplex
    signs: Mapping[Face, int]

    def __post_init__(self):
        object.__setattr__(self, "signs", MappingProxyType(dict(sorted(self.signs.items()))))

    def __neg__(self) -> "OrientationAssignment":
        return OrientationAssignment(self.base, {f: -s for f, s in self.signs.items()})

    def label_map(self) -> dict[str, int]:
        return {" ".join(self.base.face_labels(f)): s for f, s in self.signs.items()}

    def is_balanced(self, cycle: CycleComplex) -> bool:
        """Every ridge of incidence 2k sees exactly k induced classes of each kind."""
        for ridge, cofacets in cycle.ridges.items():
            classes = [self.signs[f] * _incidence_sign(ridge, f) for f in cofacets]
            if classes.count(1) != classes.count(-1):
                return False
        return True


class _Backtracker:
    """Assign ±1 to free classes so every weighted constraint sums to zero."""

    def __init__(self, constraints: list[dict[int, int]], fixed: set[int], budget: int,
                 cancel: Optional[CancellationToken]):
        order: list[int] = []
        for terms in constraints:
            for var in sorted(terms):
                if var not in order:
                    order.append(var)
        self.order = order
        self.position = {var: i for i, var in enumerate(order)}
        self.fixed = fixed
        self.budget = budget
        self.cancel = cancel
        self.nodes = 0
        self.terms = [sorted((self.position[v], w) for v, w in c.items()) for c in constraints]
        self.watch: dict[int, list[int]] = defaultdict(list)
        for ci, terms in enumerate(self.terms):
            for pos, _ in terms:
                self.watch[pos].append(ci)

    def _consistent(self, level: int, values: list[int]) -> bool:
        for ci in self.watch[level]:
            partial = sum(w * values[pos] for pos, w in self.terms[ci] if pos <= level)
            remaining = sum(abs(w) for pos, w in self.terms[ci] if pos > level)
            if abs(partial) > remaining or (partial + remaining) % 2:
                return False
        return True

    def solve(self) -> Optional[dict[int, int]]:
        n = len(self.order)
        values = [0] * n
        tried = [0] * n
        level = 0
        while 0 <= level < n:
            options = (1,) if self.order[level] in self.fixed else (1, -1)
            if tried[level] == len(options):
                tried[level] = 0
                values[level] = 0
                level -= 1
                continue
            values[level] = options[tried[level]]
            tried[level] += 1
            self.nodes += 1
            if self.nodes > self.budget:
                raise SearchBudgetExceeded(f"Orientation search exceeded {self.budget} nodes")
            if self.cancel is not None and self.nodes % 1024 == 0:
                self.cancel.check()
            if self._consistent(level, values):
                level += 1
        if level < 0:
            return None
        return {var: values[i] for i, var in enumerate(self.order)}


def orientability(cycle: CycleComplex, node_budget: int = ORIENTATION_NODE_BUDGET,
                  cancel: Optional[CancellationToken] = None) -> Optional[OrientationAssignment]:
    """
    Facet signs balancing every ridge, or None if the cycle is not orientable.

    The lexicographically smallest facet always gets +1.
    """
    facets = list(cycle.facets)
    incidence = {(r, f): _incidence_sign(r, f) for r, group in cycle.ridges.items() for f in group}

    # Propagate forced relations over ridges of incidence 2.
    pairs: dict[Face, list[tuple[Face, int]]] = defaultdict(list)
    for ridge, group in cycle.ridges.items():
        if len(group) == 2:
            a, b = group
            relation = -incidence[(ridge, a)] * incidence[(ridge, b)]
            pairs[a].append((b, relation))
            pairs[b].append((a, relation))
    root_of: dict[Face, Face] = {}
    parity: dict[Face, int] = {}
    for start in facets:
        if start in root_of:
            continue
        root_of[start], parity[start] = start, 1
        stack = [start]
        while stack:
            f = stack.pop()
            for g, relation in pairs[f]:
                expected = parity[f] * relation
                if g not in root_of:
                    root_of[g], parity[g] = start, expected
                    stack.append(g)
                elif parity[g] != expected:
                    logger.debug(f"{cycle.name}: conflicting propagation at {g}")
                    return None

    roots = sorted(set(root_of.values()))
    root_index = {r: i for i, r in enumerate(roots)}
    constraints = []
    for ridge, group in cycle.ridges.items():
        if len(group) == 2:
            continue
        weights: dict[int, int] = defaultdict(int)
        for f in group:
            weights[root_index[root_of[f]]] += parity[f] * incidence[(ridge, f)]
        weights = {v: w for v, w in weights.items() if w}
        if weights:
            constraints.append((len(group), ridge, weights))
    constraints.sort(key=lambda c: (c[0], c[1]))

    fixed = {root_index[root_of[facets[0]]]}
    search = _Backtracker([w for _, _, w in constraints], fixed, node_budget, cancel)
    solution = search.solve()
    logger.debug(f"{cycle.name}: orientation search visited {search.nodes} node(s)")
    if solution is None:
        return None

    signs = {f: solution.get(root_index[root_of[f]], 1) * parity[f] for f in facets}
    assignment = OrientationAssignment(cycle.base, signs)
    if not assignment.is_balanced(cycle):
        raise InvariantViolation(f"Orientation of {cycle.name} is not balanced")
    return assignment


def oriented_cycle_chain(cycle: CycleComplex, assignment: OrientationAssignment, field: FieldTag) -> Chain:
    """The signed facet sum of an oriented cycle; its boundary is zero."""
    missing = [f for f in cycle.facets if f not in assignment.signs]
    if missing:
        raise IncompleteAssignment(f"{len(missing)} facet(s) of {cycle.name} have no sign")
    chain = Chain.from_terms(cycle.d, field, cycle.base.labels,
                             ((f, assignment.signs[f]) for f in cycle.facets))
    if not boundary(chain, cycle.base).is_zero():
        raise InvariantViolation(f"Oriented facet sum of {cycle.name} has nonzero boundary over {field}")
    return chain


def simplex_boundary_orientation(cycle: CycleComplex) -> OrientationAssignment:
    """Orientation of the boundary of a simplex, each face a subface of [v1,...,vn]."""
    vertices = tuple(range(cycle.base.num_vertices))
    signs = {}
    for facet in cycle.facets:
        missing = next(v for v in vertices if v not in facet)
        signs[facet] = induced_orientation(OrientedFace(vertices), missing).sign
    return OrientationAssignment(cycle.base, signs)
