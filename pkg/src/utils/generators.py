"""Seeded random complexes, chains and cycles for experiments and tests."""
import random
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional

from src.algebra.chains import Chain
from src.algebra.fields import FieldTag
from src.algebra.linalg import GF2Basis, bits
from src.core.complex import SimplicialComplex
from src.cycles.structures import CycleComplex, facet_components, is_d_dimensional_cycle
from src.errors import DimensionRange, EmptyComplex
from src.homology.engine import gf2_boundary_columns


def _vertex_labels(n_vertices: int) -> list[str]:
    return [str(i) for i in range(n_vertices)]


def random_pure_complex(rng: random.Random, n_vertices: int, d: int, density: float = 0.5,
                        name: str = "random") -> SimplicialComplex:
    """Each (d+1)-subset of the vertices becomes a facet with probability ``density``."""
    if d < 0 or d + 1 > n_vertices:
        raise DimensionRange(f"Cannot build pure {d}-complexes on {n_vertices} vertices")
    candidates = list(combinations(_vertex_labels(n_vertices), d + 1))
    facets = [c for c in candidates if rng.random() < density]
    if not facets:
        facets = [rng.choice(candidates)]
    return SimplicialComplex.from_facets(name, facets)


def random_complex(rng: random.Random, n_vertices: int, max_dim: int, n_facets: int,
                   name: str = "random") -> SimplicialComplex:
    """Facets of mixed dimension; dominated ones are dropped on construction."""
    labels = _vertex_labels(n_vertices)
    facets = []
    for _ in range(max(1, n_facets)):
        size = rng.randint(1, min(max_dim + 1, n_vertices))
        facets.append(rng.sample(labels, size))
    return SimplicialComplex.from_facets(name, facets)


def random_graph(rng: random.Random, n_vertices: int, edge_probability: float = 0.4,
                 name: str = "graph") -> SimplicialComplex:
    """A pure 1-complex; isolated vertices are not kept."""
    return random_pure_complex(rng, n_vertices, 1, edge_probability, name)


def random_scalar(rng: random.Random, field: FieldTag):
    if field.is_rational:
        return Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return rng.randrange(field.characteristic)


def random_chain(rng: random.Random, complex_: SimplicialComplex, d: int, field: FieldTag) -> Chain:
    faces = complex_.faces(d)
    chosen = [f for f in faces if rng.random() < 0.5]
    return Chain.from_terms(d, field, complex_.labels, ((f, random_scalar(rng, field)) for f in chosen))


def random_cycle(rng: random.Random, n_vertices: int, d: int, density: float = 0.5,
                 attempts: int = 100) -> Optional[CycleComplex]:
    """A d-dimensional cycle carved from a random pure complex, or None after ``attempts`` misses."""
    for attempt in range(attempts):
        complex_ = random_pure_complex(rng, n_vertices, d, density, name=f"cycle-{attempt}")
        kernel = GF2Basis.from_columns(gf2_boundary_columns(complex_, d)).kernel
        if not kernel:
            continue
        mask = 0
        while not mask:
            for vector in kernel:
                if rng.random() < 0.5:
                    mask ^= vector
        faces = complex_.faces(d)
        groups = facet_components([faces[i] for i in bits(mask)])
        cycle = is_d_dimensional_cycle(complex_.subcomplex(rng.choice(groups), name=f"cycle-{attempt}"))
        if cycle is not None:
            return cycle
    return None


def pure_complexes_on(n_vertices: int, d: int) -> Iterator[SimplicialComplex]:
    """Every pure d-complex whose facets are (d+1)-subsets of n labelled vertices."""
    candidates = list(combinations(_vertex_labels(n_vertices), d + 1))
    if not candidates:
        raise EmptyComplex(f"No {d}-faces on {n_vertices} vertices")
    for mask in range(1, 1 << len(candidates)):
        yield SimplicialComplex.from_facets(f"pure-{mask}", [candidates[i] for i in bits(mask)])
