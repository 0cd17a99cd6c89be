import pytest

from src.algebra.chains import OrientedFace, boundary
from src.algebra.fields import GF3, Q, FieldTag
from src.corpus.registry import corpus_get, corpus_list
from src.cycles.orientation import (
    OrientationAssignment, induced_orientation, orientability, oriented_cycle_chain,
    simplex_boundary_orientation,
)
from src.cycles.structures import as_cycle, lambda_complete
from src.errors import IncompleteAssignment, SearchBudgetExceeded, SearchCancelled, UnknownVertex
from src.utils.cancellation import CancellationToken
from src.utils.generators import random_cycle

CYCLE_ENTRIES = [e for e in corpus_list() if e.is_cycle]


class TestInducedOrientation:
    def test_triangle_matches_boundary_signs(self):
        face = OrientedFace((0, 1, 2))
        assert [induced_orientation(face, v).sign for v in (0, 1, 2)] == [1, -1, 1]
        assert induced_orientation(face, 1).ridge == (0, 2)
        assert induced_orientation(face, 1).cofacet == (0, 1, 2)

    def test_reversed_face_flips_every_class(self):
        face = OrientedFace((0, 1, 2), -1)
        assert [induced_orientation(face, v).sign for v in (0, 1, 2)] == [-1, 1, -1]

    def test_edge_endpoints(self):
        edge = OrientedFace((3, 7))
        assert induced_orientation(edge, 7).sign == -1
        assert induced_orientation(edge, 3).sign == 1

    def test_vertex_not_in_face(self):
        with pytest.raises(UnknownVertex):
            induced_orientation(OrientedFace((0, 1)), 5)


class TestOrientability:
    def test_hollow_tetrahedron(self):
        assignment = orientability(as_cycle(corpus_get("hollow_tetrahedron")))
        assert assignment.label_map() == {"a b c": 1, "a b d": -1, "a c d": 1, "b c d": -1}

    def test_simplex_boundary_agrees_up_to_sign(self):
        cycle = as_cycle(lambda_complete(5, 3))
        found = orientability(cycle)
        reference = simplex_boundary_orientation(cycle)
        assert reference.is_balanced(cycle)
        assert dict(found.signs) in (dict(reference.signs), dict((-reference).signs))

    @pytest.mark.parametrize("entry", CYCLE_ENTRIES, ids=lambda e: e.name)
    def test_corpus_verdicts(self, entry):
        cycle = as_cycle(entry.build())
        assignment = orientability(cycle)
        assert (assignment is not None) == entry.is_orientable
        if assignment is not None:
            assert assignment.is_balanced(cycle)
            assert (-assignment).is_balanced(cycle)
            assert assignment.signs[cycle.facets[0]] == 1

    def test_ridge_of_incidence_four_is_split_evenly(self):
        cycle = as_cycle(corpus_get("glued_pyramids"))
        assignment = orientability(cycle)
        ab = cycle.base.face_of("ab")
        assert len(cycle.ridges[ab]) == 4
        assert assignment.is_balanced(cycle)

    def test_unbalanced_assignment_detected(self):
        cycle = as_cycle(corpus_get("hollow_tetrahedron"))
        assert not OrientationAssignment(cycle.base, {f: 1 for f in cycle.facets}).is_balanced(cycle)

    def test_orientable_cycles_have_zero_boundary_over_every_field(self, rng):
        fields = [GF3, FieldTag.gf(5), Q]
        checked = 0
        for _ in range(150):
            cycle = random_cycle(rng, 6, rng.choice([1, 2]))
            if cycle is None:
                continue
            assignment = orientability(cycle)
            if assignment is None:
                assert cycle.d == 2
                continue
            checked += 1
            for field in fields:
                chain = oriented_cycle_chain(cycle, assignment, field)
                assert boundary(chain, cycle.base).is_zero()
                assert len(chain) == len(cycle)
        assert checked > 0

    def test_every_graph_cycle_is_orientable(self, rng):
        checked = 0
        for _ in range(500):
            cycle = random_cycle(rng, rng.randint(3, 8), 1, density=rng.choice([0.4, 0.6]))
            if cycle is None:
                continue
            checked += 1
            assignment = orientability(cycle)
            assert assignment is not None
            assert assignment.is_balanced(cycle)
        assert checked > 0

    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_simplex_boundaries_are_orientable(self, d):
        cycle = as_cycle(lambda_complete(d + 2, d))
        assignment = orientability(cycle)
        assert assignment is not None
        assert assignment.is_balanced(cycle)
        assert simplex_boundary_orientation(cycle).is_balanced(cycle)
        assert boundary(oriented_cycle_chain(cycle, assignment, Q), cycle.base).is_zero()

    def test_node_budget(self):
        cycle = as_cycle(corpus_get("moore_mod3_plus_xyz"))
        assert orientability(cycle) is None
        with pytest.raises(SearchBudgetExceeded):
            orientability(cycle, node_budget=0)


class TestOrientedChain:
    def test_rp2_has_no_signed_sum(self):
        assert orientability(as_cycle(corpus_get("rp2_6"))) is None

    def test_missing_signs_rejected(self):
        cycle = as_cycle(corpus_get("octahedron"))
        partial = OrientationAssignment(cycle.base, {cycle.facets[0]: 1})
        with pytest.raises(IncompleteAssignment, match="7 facet"):
            oriented_cycle_chain(cycle, partial, Q)

    def test_graph_cycle_chain(self):
        cycle = as_cycle(corpus_get("six_cycle"))
        chain = oriented_cycle_chain(cycle, orientability(cycle), GF3)
        assert len(chain) == 6


class TestCancellation:
    def test_token(self):
        token = CancellationToken()
        token.check()
        token.cancel()
        assert token.cancelled
        with pytest.raises(SearchCancelled):
            token.check()
