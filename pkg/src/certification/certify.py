"""
Homology certificates.

A certificate is a d-dimensional cycle inside the ambient complex whose facet
sum (signed, for orientable certificates) is a homological cycle that is not a
boundary over the certificate's field. Every certificate leaving this module
has been re-checked by ``verify_certificate``.
"""
from dataclasses import dataclass, replace
from typing import Optional

from loguru import logger

from src.algebra.chains import Chain, OrientedFace
from src.algebra.fields import GF2, FieldTag
from src.algebra.linalg import GF2Basis, bits
from src.constants import (
    KERNEL_ENUMERATION_MAX_DIM, KIND_CHAR2, KIND_GRAPH, KIND_ORIENTABLE, ORIENTATION_NODE_BUDGET,
)
from src.core.complex import Face, SimplicialComplex
from src.cycles.orientation import OrientationAssignment, orientability, oriented_cycle_chain
from src.cycles.structures import (
    CycleComplex, facet_components, find_graph_cycle, is_d_dimensional_cycle,
)
from src.errors import DimensionRange, InvariantViolation, SearchBudgetExceeded
from src.homology.engine import (
    BoundarySolve, boundary_solve, gf2_boundary_columns, is_cycle, reduced_betti,
)
from src.utils.cancellation import CancellationToken


@dataclass(frozen=True)
class HomologyCertificate:
    kind: str
    dim: int
    field: FieldTag
    witness: CycleComplex
    chain: Chain
    proof: BoundarySolve
    orientation: Optional[OrientationAssignment] = None
    vertex_sequence: Optional[tuple[str, ...]] = None
    complete: bool = True
    verified: bool = False

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "dim": self.dim,
            "field": self.field.label,
            "facets": self.witness.base.facet_lists(),
            "chain": [
                {"face": labels, "coefficient": self.field.render(c)}
                for labels, c in self.chain.labelled_terms()
            ],
            "orientation": self.orientation.label_map() if self.orientation else None,
            "vertex_sequence": list(self.vertex_sequence) if self.vertex_sequence else None,
            "nonbounding": self.proof.to_dict(),
            "search": "complete" if self.complete else "sound, not complete",
            "verified": self.verified,
        }


def verify_certificate(cert: HomologyCertificate, ambient: SimplicialComplex) -> bool:
    """Re-check every claim a certificate makes against the ambient complex."""
    witness = cert.witness
    if is_d_dimensional_cycle(witness.base) is None or witness.d != cert.dim:
        return False
    chain = cert.chain.transport(ambient)
    if chain.field != cert.field or chain.dim != cert.dim:
        return False
    support = {tuple(chain.labels[i] for i in f) for f in chain.terms}
    if support != {tuple(labels) for labels in witness.base.facet_lists()}:
        return False
    if not is_cycle(chain, ambient):
        return False
    if boundary_solve(chain, ambient).solvable:
        return False
    if cert.orientation is not None and not cert.orientation.is_balanced(witness):
        return False
    if cert.vertex_sequence is not None:
        sequence = list(cert.vertex_sequence)
        edges = {frozenset(labels) for labels in witness.base.facet_lists()}
        steps = {frozenset(pair) for pair in zip(sequence, sequence[1:] + sequence[:1])}
        if steps != edges or len(sequence) != len(edges):
            return False
    return True


def _finalize(cert: HomologyCertificate, ambient: SimplicialComplex) -> HomologyCertificate:
    if not verify_certificate(cert, ambient):
        raise InvariantViolation(f"{cert.kind} certificate for {ambient.name} failed re-verification")
    logger.debug(f"{cert.kind} certificate verified for {ambient.name} (dim {cert.dim}, {cert.field})")
    return replace(cert, verified=True)


def _witness(ambient: SimplicialComplex, facets: list[Face], d: int) -> CycleComplex:
    cycle = is_d_dimensional_cycle(ambient.subcomplex(facets, name=f"{ambient.name}:cycle{d}"))
    if cycle is None:
        raise InvariantViolation(f"Witness support in {ambient.name} is not a {d}-dimensional cycle")
    return cycle


# ── Characteristic 2 ─────────────────────────────────────────────────────────

def _weight_key(mask: int):
    return mask.bit_count(), bits(mask)


def certify_char2(ambient: SimplicialComplex, d: int) -> Optional[HomologyCertificate]:
    """
    A d-dimensional cycle whose facet sum is not a GF(2) boundary, or None
    exactly when the d-th reduced GF(2) homology vanishes.
    """
    if d < 1:
        raise DimensionRange(f"Certificates are defined for d >= 1, got {d}")
    faces = ambient.faces(d)
    if not faces:
        return None
    down = gf2_boundary_columns(ambient, d)
    up = GF2Basis.from_columns(gf2_boundary_columns(ambient, d + 1))

    def nonbounding(mask: int) -> bool:
        return up.express(mask) is None

    candidates = [k for k in GF2Basis.from_columns(down).kernel if nonbounding(k)]
    if not candidates:
        return None

    position = {f: i for i, f in enumerate(faces)}
    current = min(candidates, key=_weight_key)
    while True:
        # a non-bounding ridge component exists, since the components sum to current
        components = [sum(1 << position[f] for f in group)
                      for group in facet_components([faces[i] for i in bits(current)])]
        current = next(m for m in components if nonbounding(m))
        chosen = bits(current)
        local = GF2Basis.from_columns([down[i] for i in chosen]).kernel
        if len(local) <= 1:
            break
        options = []
        for vector in local:
            sub = sum(1 << chosen[p] for p in bits(vector))
            if sub == current:
                continue
            options.extend(m for m in (sub, current ^ sub) if nonbounding(m))
        current = min(options, key=_weight_key)
        logger.debug(f"Shrunk GF(2) witness in {ambient.name} to {current.bit_count()} facets")

    support = [faces[i] for i in bits(current)]
    chain = Chain.from_terms(d, GF2, ambient.labels, ((f, 1) for f in support))
    cert = HomologyCertificate(KIND_CHAR2, d, GF2, _witness(ambient, support, d), chain,
                               boundary_solve(chain, ambient))
    return _finalize(cert, ambient)


# ── Orientable cycles, any field ─────────────────────────────────────────────

def candidate_cycles(ambient: SimplicialComplex, d: int,
                     kernel_limit: int = KERNEL_ENUMERATION_MAX_DIM,
                     cancel: Optional[CancellationToken] = None) -> list[tuple[Face, ...]]:
    """Every d-dimensional cycle of the complex, as facet tuples, smallest first."""
    faces = ambient.faces(d)
    kernel = GF2Basis.from_columns(gf2_boundary_columns(ambient, d)).kernel
    if len(kernel) > kernel_limit:
        raise SearchBudgetExceeded(
            f"GF(2) cycle space of {ambient.name} in dimension {d} has dimension {len(kernel)} "
            f"(enumeration limit {kernel_limit})"
        )
    found = set()
    current = 0
    for step in range(1, 1 << len(kernel)):
        if cancel is not None and step % 1024 == 0:
            cancel.check()
        current ^= kernel[(step & -step).bit_length() - 1]
        for group in facet_components([faces[i] for i in bits(current)]):
            found.add(tuple(group))
    return sorted(found, key=lambda c: (len(c), c))


def certify_orientable(ambient: SimplicialComplex, d: int, field: FieldTag,
                       kernel_limit: int = KERNEL_ENUMERATION_MAX_DIM,
                       node_budget: int = ORIENTATION_NODE_BUDGET,
                       cancel: Optional[CancellationToken] = None) -> Optional[HomologyCertificate]:
    """
    An orientable d-dimensional cycle whose signed facet sum is not a boundary
    over ``field``. Sound but not complete: None does not mean zero homology.
    """
    if d < 1:
        raise DimensionRange(f"Certificates are defined for d >= 1, got {d}")
    if not ambient.faces(d):
        return None
    for facets in candidate_cycles(ambient, d, kernel_limit, cancel):
        cycle = _witness(ambient, list(facets), d)
        assignment = orientability(cycle, node_budget, cancel)
        if assignment is None:
            continue
        chain = oriented_cycle_chain(cycle, assignment, field).transport(ambient)
        proof = boundary_solve(chain, ambient)
        if proof.solvable:
            continue
        cert = HomologyCertificate(KIND_ORIENTABLE, d, field, cycle, chain, proof,
                                   orientation=assignment, complete=False)
        return _finalize(cert, ambient)
    logger.debug(f"No orientable non-bounding {d}-cycle in {ambient.name} over {field}")
    return None


# ── Graph cycles ─────────────────────────────────────────────────────────────

def _graph_certificate(ambient: SimplicialComplex, sequence: list[str],
                       field: FieldTag) -> Optional[HomologyCertificate]:
    indices = [ambient.index_of(v) for v in sequence]
    steps = [OrientedFace.from_sequence(pair) for pair in zip(indices, indices[1:] + indices[:1])]
    chain = Chain.from_terms(1, field, ambient.labels, ((step, 1) for step in steps))
    proof = boundary_solve(chain, ambient)
    if proof.solvable:
        return None
    witness = _witness(ambient, [s.face for s in steps], 1)
    orientation = OrientationAssignment(
        witness.base, {witness.base.lift(s.face, ambient): s.sign for s in steps}
    )
    cert = HomologyCertificate(KIND_GRAPH, 1, field, witness, chain, proof,
                               orientation=orientation, vertex_sequence=tuple(sequence))
    return _finalize(cert, ambient)


def fundamental_cycles(ambient: SimplicialComplex) -> list[list[str]]:
    """Graph cycles closing each non-tree edge of a breadth-first spanning forest."""
    adjacency: dict[int, list[int]] = {v: [] for v in range(ambient.num_vertices)}
    for a, b in ambient.faces(1):
        adjacency[a].append(b)
        adjacency[b].append(a)
    parent: dict[int, Optional[int]] = {}
    depth: dict[int, int] = {}
    for root in range(ambient.num_vertices):
        if root in parent:
            continue
        parent[root], depth[root] = None, 0
        queue = [root]
        for v in queue:
            for u in sorted(adjacency[v]):
                if u not in parent:
                    parent[u], depth[u] = v, depth[v] + 1
                    queue.append(u)
    tree = {tuple(sorted((v, p))) for v, p in parent.items() if p is not None}

    cycles = []
    for a, b in ambient.faces(1):
        if (a, b) in tree:
            continue
        left, right = [a], [b]
        x, y = a, b
        while depth[x] > depth[y]:
            x = parent[x]
            left.append(x)
        while depth[y] > depth[x]:
            y = parent[y]
            right.append(y)
        while x != y:
            x, y = parent[x], parent[y]
            left.append(x)
            right.append(y)
        path = left + right[-2::-1]
        cycles.append([ambient.labels[v] for v in path])
    return cycles


def certify_graph_cycle(ambient: SimplicialComplex, field: FieldTag = GF2) -> Optional[HomologyCertificate]:
    """A graph cycle that is not a boundary over ``field``; None iff the first reduced homology vanishes."""
    if not ambient.faces(1):
        raise DimensionRange(f"'{ambient.name}' has no 1-faces")
    if field.characteristic == 2:
        cert = certify_char2(ambient, 1)
        if cert is None:
            return None
        sequence = find_graph_cycle(cert.witness.base)
        if sequence is None:
            raise InvariantViolation(f"Face-minimal 1-cycle in {ambient.name} is not a graph cycle")
        return _graph_certificate(ambient, sequence, field)
    if reduced_betti(ambient, 1, field) == 0:
        return None
    for sequence in fundamental_cycles(ambient):
        cert = _graph_certificate(ambient, sequence, field)
        if cert is not None:
            return cert
    raise InvariantViolation(f"Nonzero first homology of {ambient.name} over {field} without a graph cycle")
