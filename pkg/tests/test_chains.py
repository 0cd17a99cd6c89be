from collections import Counter
from fractions import Fraction
from itertools import combinations

import pytest

from src.algebra.chains import (
    Chain, OrientedFace, add, boundary, boundary_terms, permutation_sign, scale, support_complex,
)
from src.algebra.fields import GF2, GF3, Q, FieldTag
from src.core.complex import SimplicialComplex
from src.errors import (
    ChainMismatch, DimensionRange, EmptySupport, ForeignFace, InvalidFacet, InvalidField,
)
from src.utils.generators import random_chain, random_complex, random_scalar


def _tetra():
    return SimplicialComplex.from_facets("tetra", ["abc", "abd", "acd", "bcd"])


class TestFields:
    @pytest.mark.parametrize("text,label", [("gf2", "gf2"), ("GF3", "gf3"), ("gf:7", "gf:7"),
                                            ("gf7", "gf:7"), ("q", "q"), ("Q", "q"), ("rationals", "q")])
    def test_parse(self, text, label):
        assert FieldTag.parse(text).label == label

    @pytest.mark.parametrize("bad", ["gf4", "gf1", "gf:0", "reals", "z"])
    def test_parse_rejects(self, bad):
        with pytest.raises(InvalidField):
            FieldTag.parse(bad)

    def test_arithmetic(self):
        assert GF3.add(2, 2) == 1
        assert GF3.inv(2) == 2
        assert GF3.element(Fraction(1, 2)) == 2
        assert Q.div(1, 3) == Fraction(1, 3)
        assert Q.render(Fraction(-2, 4)) == "-1/2"
        assert Q.render(Fraction(6, 3)) == 2


class TestOrientedFace:
    def test_permutation_sign(self):
        assert permutation_sign([0, 1, 2]) == 1
        assert permutation_sign([1, 0, 2]) == -1
        assert permutation_sign([2, 0, 1]) == 1
        with pytest.raises(InvalidFacet):
            permutation_sign([0, 0])

    def test_from_sequence_and_back(self):
        oriented = OrientedFace.from_sequence([2, 0, 1])
        assert oriented.face == (0, 1, 2)
        assert oriented.sign == 1
        flipped = OrientedFace.from_sequence([1, 0, 2])
        assert flipped.sign == -1
        assert permutation_sign(flipped.sequence()) == -1
        assert (-flipped).sign == 1


class TestChainAlgebra:
    def test_combines_and_drops_zeros(self):
        c = _tetra()
        chain = Chain.from_labels(c, GF3, [("abc", 1), ("bac", 1), ("abd", 2)])
        assert dict(chain.terms) == {c.face_of("abd"): 2}

    def test_gf2_coefficients_are_bits(self):
        c = _tetra()
        chain = Chain.from_labels(c, GF2, [("abc", 3), ("abd", 2)])
        assert dict(chain.terms) == {c.face_of("abc"): 1}

    def test_add_and_scale(self):
        c = _tetra()
        x = Chain.from_labels(c, Q, [("ab", 1), ("bc", Fraction(1, 2))])
        y = Chain.from_labels(c, Q, [("ab", -1)])
        assert dict((x + y).terms) == {c.face_of("bc"): Fraction(1, 2)}
        assert x.scale(2).coefficient(c.face_of("bc")) == 1
        assert (x - x).is_zero()

    def test_mismatched_chains_rejected(self):
        c = _tetra()
        with pytest.raises(ChainMismatch):
            Chain.from_labels(c, Q, [("ab", 1)]) + Chain.from_labels(c, GF3, [("ab", 1)])
        with pytest.raises(ChainMismatch):
            Chain.from_labels(c, Q, [("ab", 1)]) + Chain.from_labels(c, Q, [("abc", 1)])

    def test_unsorted_face_rejected(self):
        with pytest.raises(InvalidFacet):
            Chain.from_terms(1, Q, ("a", "b"), [((1, 0), 1)])


class TestBoundary:
    def test_boundary_terms_signs(self):
        assert boundary_terms((0, 1, 2)) == [((1, 2), 1), ((0, 2), -1), ((0, 1), 1)]

    def test_boundary_of_triangle(self):
        c = _tetra()
        result = boundary(Chain.from_labels(c, Q, [("abc", 1)]), c)
        assert result == Chain.from_labels(c, Q, [("bc", 1), ("ac", -1), ("ab", 1)])

    def test_boundary_of_vertex_is_empty(self):
        c = _tetra()
        result = boundary(Chain.from_labels(c, Q, [("a", 1)]), c)
        assert result.dim == -1
        assert result.is_zero()

    def test_boundary_of_foreign_chain(self):
        c = _tetra()
        small = SimplicialComplex.from_facets("edge", ["ab"])
        with pytest.raises(ForeignFace):
            boundary(Chain.from_labels(c, Q, [("abc", 1)]), small)

    def test_negative_dimension_rejected(self):
        with pytest.raises(DimensionRange):
            boundary(Chain.zero(-1, Q, ()), _tetra())

    def test_boundary_of_sphere_is_zero(self):
        c = _tetra()
        chain = Chain.from_labels(c, Q, [("bcd", 1), ("acd", -1), ("abd", 1), ("abc", -1)])
        assert boundary(chain, c).is_zero()

    @pytest.mark.parametrize("field", [GF2, GF3, FieldTag.gf(7), Q], ids=lambda f: f.label)
    def test_boundary_squared_vanishes(self, rng, field):
        checked = 0
        while checked < 2500:
            complex_ = random_complex(rng, 7, 4, rng.randint(1, 6))
            for d in range(1, complex_.dim + 1):
                for _ in range(5):
                    chain = random_chain(rng, complex_, d, field)
                    assert boundary(boundary(chain, complex_), complex_).is_zero()
                    checked += 1

    @pytest.mark.parametrize("field", [GF2, GF3, FieldTag.gf(7), Q], ids=lambda f: f.label)
    def test_boundary_is_linear(self, rng, field):
        for _ in range(200):
            complex_ = random_complex(rng, 6, 3, rng.randint(1, 5))
            for d in range(1, complex_.dim + 1):
                a = random_chain(rng, complex_, d, field)
                b = random_chain(rng, complex_, d, field)
                factor = random_scalar(rng, field)
                assert boundary(a + b.scale(factor), complex_) == \
                    boundary(a, complex_) + boundary(b, complex_).scale(factor)

    def test_mod_two_boundary_counts_incidences(self, rng):
        for _ in range(300):
            complex_ = random_complex(rng, 6, 3, rng.randint(1, 5))
            for d in range(1, complex_.dim + 1):
                chain = random_chain(rng, complex_, d, GF2)
                counts = Counter(ridge for face in chain.terms for ridge in combinations(face, d))
                odd = sorted(ridge for ridge, n in counts.items() if n % 2)
                assert list(boundary(chain, complex_).support()) == odd


class TestTransportAndSupport:
    def test_transport_reorients(self):
        big = _tetra()
        small = SimplicialComplex.from_facets("s", ["bcd"])
        chain = Chain.from_labels(small, Q, [("cbd", 1)])
        moved = chain.transport(big)
        assert dict(moved.terms) == {big.face_of("bcd"): -1}

    def test_support_complex(self):
        c = _tetra()
        chain = Chain.from_labels(c, GF3, [("abc", 1), ("abd", 2)])
        assert support_complex(chain).facet_lists() == [["a", "b", "c"], ["a", "b", "d"]]
        with pytest.raises(EmptySupport):
            support_complex(Chain.zero(1, GF3, c.labels))

    def test_support_vanishes_when_scaled_by_the_characteristic(self):
        c = _tetra()
        a = Chain.from_labels(c, GF3, [("abc", 1)])
        b = Chain.from_labels(c, GF3, [("abd", 1)])
        with pytest.raises(EmptySupport):
            support_complex(scale(add(a, b), 3))
