"""
Named example complexes with their expected properties.

Every entry fixes one explicit triangulation; the expected map is what the
engine must reproduce for it (see tests/test_corpus.py).
"""
from dataclasses import dataclass, field
from typing import Callable, Optional

from src.core.complex import SimplicialComplex
from src.errors import UnknownEntry

ALL_FIELDS = ("gf2", "gf3", "q")


def _same(betti: dict[int, int]) -> dict[str, dict[int, int]]:
    return {f: dict(betti) for f in ALL_FIELDS}


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    description: str
    builder: Callable[[], SimplicialComplex]
    betti: dict[str, dict[int, int]]
    is_cycle: bool
    is_pseudo_manifold: bool
    is_face_minimal: Optional[bool] = None
    is_orientable: Optional[bool] = None
    parts: Optional[int] = None
    notes: list[str] = field(default_factory=list)

    def build(self) -> SimplicialComplex:
        return self.builder()

    @property
    def expected(self) -> dict:
        return {
            "betti": {f: {str(d): b for d, b in sorted(v.items())} for f, v in self.betti.items()},
            "is_cycle": self.is_cycle,
            "is_pseudo_manifold": self.is_pseudo_manifold,
            "is_face_minimal": self.is_face_minimal,
            "is_orientable": self.is_orientable,
            "parts": self.parts,
        }

    def to_dict(self) -> dict:
        complex_ = self.build()
        return {
            "name": self.name,
            "description": self.description,
            "vertices": complex_.num_vertices,
            "facets": len(complex_.facets),
            "expected": self.expected,
            "notes": list(self.notes),
        }


# ── Builders ─────────────────────────────────────────────────────────────────

def six_cycle() -> SimplicialComplex:
    labels = "abcdef"
    return SimplicialComplex.from_facets(
        "six_cycle", [(labels[i], labels[(i + 1) % 6]) for i in range(6)]
    )


def hollow_tetrahedron() -> SimplicialComplex:
    return SimplicialComplex.from_facets("hollow_tetrahedron", ["abc", "abd", "acd", "bcd"])


def octahedron() -> SimplicialComplex:
    facets = [(a, b, c) for a in (1, 2) for b in (3, 4) for c in (5, 6)]
    return SimplicialComplex.from_facets("octahedron", facets)


_ICOSAHEDRON = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
    (11, 6, 7), (11, 7, 8), (11, 8, 9), (11, 9, 10), (11, 10, 6),
    (1, 2, 6), (2, 3, 7), (3, 4, 8), (4, 5, 9), (5, 1, 10),
    (2, 6, 7), (3, 7, 8), (4, 8, 9), (5, 9, 10), (1, 10, 6),
]


def sphere_triangulation() -> SimplicialComplex:
    return SimplicialComplex.from_facets("sphere_triangulation", _ICOSAHEDRON)


def torus_7() -> SimplicialComplex:
    facets = []
    for i in range(7):
        facets.append((i, (i + 1) % 7, (i + 3) % 7))
        facets.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex.from_facets("torus_7", facets)


def rp2_6() -> SimplicialComplex:
    facets = ["123", "134", "145", "156", "162", "235", "346", "452", "563", "624"]
    return SimplicialComplex.from_facets("rp2_6", [list(f) for f in facets])


def glued_pyramids() -> SimplicialComplex:
    first = ["pab", "pbc", "pcd", "pda", "abc", "acd"]
    second = ["qab", "qbe", "qef", "qfa", "abe", "aef"]
    return SimplicialComplex.from_facets("glued_pyramids", [list(f) for f in first + second])


def pinched_sphere() -> SimplicialComplex:
    """Icosahedron with the antipodal poles merged and two more vertices merged along an edge."""
    merge = {0: "x", 11: "x", 1: "y", 8: "y"}
    facets = [[merge.get(v, str(v)) for v in facet] for facet in _ICOSAHEDRON]
    return SimplicialComplex.from_facets("pinched_sphere", facets)


def one_dim_nonminimal() -> SimplicialComplex:
    return SimplicialComplex.from_facets(
        "one_dim_nonminimal", ["ab", "bc", "ca", "ad", "de", "ea"]
    )


def _moore_facets() -> list[list[str]]:
    rim = ["x", "y", "z"] * 3
    inner = [f"q{i}" for i in range(9)]
    facets = []
    for i in range(9):
        j = (i + 1) % 9
        facets.append([rim[i], rim[j], inner[i]])
        facets.append([rim[j], inner[i], inner[j]])
        facets.append(["o", inner[i], inner[j]])
    return facets


def moore_mod3() -> SimplicialComplex:
    """A disk whose boundary wraps three times around the triangle xyz."""
    return SimplicialComplex.from_facets("moore_mod3", _moore_facets())


def moore_mod3_plus_xyz() -> SimplicialComplex:
    return SimplicialComplex.from_facets("moore_mod3_plus_xyz", _moore_facets() + [["x", "y", "z"]])


# ── Registry ─────────────────────────────────────────────────────────────────

_ENTRIES = [
    CorpusEntry("six_cycle", "Graph cycle on six vertices", six_cycle,
                _same({0: 0, 1: 1}), True, True, True, True),
    CorpusEntry("hollow_tetrahedron", "Boundary of the 3-simplex (all 2-faces on 4 vertices)",
                hollow_tetrahedron, _same({0: 0, 1: 0, 2: 1}), True, True, True, True),
    CorpusEntry("octahedron", "Octahedron boundary, antipodal pairs 1-2, 3-4, 5-6", octahedron,
                _same({0: 0, 1: 0, 2: 1}), True, True, True, True),
    CorpusEntry("sphere_triangulation", "Icosahedron boundary, poles 0 and 11", sphere_triangulation,
                _same({0: 0, 1: 0, 2: 1}), True, True, True, True),
    CorpusEntry("torus_7", "Seven-vertex torus", torus_7,
                _same({0: 0, 1: 2, 2: 1}), True, True, True, True),
    CorpusEntry("rp2_6", "Six-vertex projective plane", rp2_6,
                {"gf2": {0: 0, 1: 1, 2: 1}, "gf3": {0: 0, 1: 0, 2: 0}, "q": {0: 0, 1: 0, 2: 0}},
                True, True, True, False,
                notes=["nonzero homology only in characteristic 2"]),
    CorpusEntry("glued_pyramids", "Two square pyramids glued along the edge ab", glued_pyramids,
                _same({0: 0, 1: 0, 2: 2}), True, False, False, True, parts=2),
    CorpusEntry("pinched_sphere", "Icosahedron with vertices 0~11 and 1~8 identified", pinched_sphere,
                _same({0: 0, 1: 1, 2: 1}), True, False, True, True,
                notes=["edge xy lies in four triangles",
                       "the link of x is one figure-eight made of two graph cycles"]),
    CorpusEntry("one_dim_nonminimal", "Two triangles sharing the vertex a", one_dim_nonminimal,
                _same({0: 0, 1: 2}), True, False, False, True, parts=2),
    CorpusEntry("moore_mod3", "Mod 3 Moore space: disk glued three times around xyz", moore_mod3,
                {"gf2": {0: 0, 1: 0, 2: 0}, "gf3": {0: 0, 1: 1, 2: 1}, "q": {0: 0, 1: 0, 2: 0}},
                False, False,
                notes=["edges xy, yz and xz lie in three triangles each",
                       "nonzero GF(3) homology without any 2-dimensional cycle"]),
    CorpusEntry("moore_mod3_plus_xyz", "Mod 3 Moore space with the triangle xyz added",
                moore_mod3_plus_xyz, _same({0: 0, 1: 0, 2: 1}), True, False, True, False,
                notes=["the rational 2-cycle has coefficient 3 on xyz",
                       "nonzero rational homology but no orientable certificate"]),
]

_BY_NAME = {entry.name: entry for entry in _ENTRIES}


def corpus_list() -> list[CorpusEntry]:
    return list(_ENTRIES)


def corpus_entry(name: str) -> CorpusEntry:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise UnknownEntry(f"Unknown corpus entry '{name}' (known: {', '.join(sorted(_BY_NAME))})") from None


def corpus_get(name: str) -> SimplicialComplex:
    return corpus_entry(name).build()
