import pytest

from src.algebra.chains import Chain, boundary
from src.algebra.fields import GF2, GF3, Q, FieldTag
from src.core.complex import SimplicialComplex
from src.corpus.registry import corpus_get, corpus_list
from src.errors import DimensionRange, OracleTooLarge
from src.homology.engine import (
    betti_report, boundary_matrix, boundary_rank, boundary_solve, is_boundary, is_cycle, reduced_betti,
)
from src.homology.oracle import brute_force_homology_oracle
from src.algebra import linalg
from src.utils.generators import random_complex

FIELDS = [GF2, GF3, FieldTag.gf(5), Q]


def _solid():
    return SimplicialComplex.from_facets("solid", ["abcd"])


def _hollow():
    return SimplicialComplex.from_facets("hollow", ["abc", "abd", "acd", "bcd"])


class TestBettiNumbers:
    @pytest.mark.parametrize("field", FIELDS)
    def test_solid_simplex_is_acyclic(self, field):
        assert betti_report(_solid(), field).betti == {0: 0, 1: 0, 2: 0, 3: 0}

    @pytest.mark.parametrize("field", FIELDS)
    def test_hollow_tetrahedron(self, field):
        assert betti_report(_hollow(), field).betti == {0: 0, 1: 0, 2: 1}

    def test_disconnected_points(self):
        c = SimplicialComplex.from_facets("points", [["a"], ["b"], ["c"]])
        assert reduced_betti(c, 0, Q) == 2

    def test_negative_dimension_rejected(self):
        with pytest.raises(DimensionRange):
            reduced_betti(_hollow(), -1, GF2)

    def test_above_top_dimension_is_zero(self):
        assert reduced_betti(_hollow(), 5, Q) == 0

    def test_report_serialization(self):
        report = betti_report(corpus_get("rp2_6"), GF2).to_dict()
        assert report == {"name": "rp2_6", "field": "gf2", "betti": {"0": 0, "1": 1, "2": 1}}

    def test_boundary_rank_outside_range(self):
        assert boundary_rank(_hollow(), 0, Q) == 0
        assert boundary_rank(_hollow(), 3, Q) == 0

    def test_boundary_matrix_shape(self):
        matrix = boundary_matrix(_hollow(), 2, GF3)
        assert matrix.shape == (6, 4)
        assert all(sum(1 for v in matrix.column(j) if v) == 3 for j in range(4))
        with pytest.raises(DimensionRange):
            boundary_matrix(_hollow(), 3, GF3)

    @pytest.mark.parametrize("entry", corpus_list(), ids=lambda e: e.name)
    @pytest.mark.parametrize("field", [GF2, GF3, Q], ids=lambda f: f.label)
    def test_euler_poincare(self, entry, field):
        complex_ = entry.build()
        betti = betti_report(complex_, field).betti
        reduced_euler = sum((-1) ** d * b for d, b in betti.items())
        assert complex_.euler_characteristic() - 1 == reduced_euler


class TestMooreSpace:
    def test_torsion_shows_only_in_characteristic_three(self):
        moore = corpus_get("moore_mod3")
        assert betti_report(moore, GF3).betti == {0: 0, 1: 1, 2: 1}
        assert betti_report(moore, GF2).betti == {0: 0, 1: 0, 2: 0}
        assert betti_report(moore, Q).betti == {0: 0, 1: 0, 2: 0}

    def test_rational_cycle_has_coefficient_three_on_xyz(self):
        closed = corpus_get("moore_mod3_plus_xyz")
        matrix = boundary_matrix(closed, 2, Q)
        kernel = linalg.nullspace(matrix.entries, Q, len(matrix.cols))
        assert len(kernel) == 1
        vector = kernel[0]
        xyz = matrix.cols.index(closed.face_of("xyz"))
        others = {abs(v) for j, v in enumerate(vector) if j != xyz}
        assert len(others) == 1
        assert abs(vector[xyz]) == 3 * others.pop()


class TestBoundaries:
    def test_sphere_bounds_in_the_solid(self):
        solid = _solid()
        sphere = Chain.from_labels(solid, Q, [("bcd", 1), ("acd", -1), ("abd", 1), ("abc", -1)])
        assert is_cycle(sphere, solid)
        witness = is_boundary(sphere, solid)
        assert witness is not None
        assert boundary(witness, solid) == sphere

    def test_sphere_does_not_bound_in_the_hollow(self):
        hollow = _hollow()
        sphere = Chain.from_labels(hollow, Q, [("bcd", 1), ("acd", -1), ("abd", 1), ("abc", -1)])
        proof = boundary_solve(sphere, hollow)
        assert not proof.solvable
        assert proof.to_dict()["boundary_columns"] == 0

    def test_vertex_differences_bound(self):
        c = SimplicialComplex.from_facets("path", ["ab", "bc"])
        assert is_boundary(Chain.from_labels(c, GF3, [("a", 1), ("c", -1)]), c) is not None
        assert is_boundary(Chain.from_labels(c, GF3, [("a", 1)]), c) is None

    def test_transcript_records_ranks(self):
        solid = _solid()
        chain = Chain.from_labels(solid, GF2, [("abc", 1)])
        proof = boundary_solve(chain, solid)
        assert not proof.solvable
        assert proof.augmented_rank == proof.rank + 1


class TestOracle:
    def test_agrees_with_rank_on_random_complexes(self, rng):
        for _ in range(1000):
            complex_ = random_complex(rng, 5, 3, rng.randint(1, 5))
            for d in range(complex_.dim + 1):
                oracle = brute_force_homology_oracle(complex_, d)
                assert oracle.betti == reduced_betti(complex_, d, GF2)

    @pytest.mark.parametrize("entry", corpus_list(), ids=lambda e: e.name)
    def test_agrees_with_rank_on_corpus(self, entry):
        complex_ = entry.build()
        for d in range(complex_.dim + 1):
            try:
                oracle = brute_force_homology_oracle(complex_, d)
            except OracleTooLarge:
                continue
            assert oracle.betti == entry.betti["gf2"][d]

    def test_cycles_and_boundaries_of_a_triangle(self):
        c = SimplicialComplex.from_facets("triangle", ["ab", "bc", "ca"])
        oracle = brute_force_homology_oracle(c, 1)
        assert oracle.cycles == {frozenset(), frozenset(c.faces(1))}
        assert oracle.boundaries == {frozenset()}
        assert oracle.betti == 1

    def test_bound_is_enforced(self):
        with pytest.raises(OracleTooLarge, match="limit 20"):
            brute_force_homology_oracle(corpus_get("sphere_triangulation"), 1)
