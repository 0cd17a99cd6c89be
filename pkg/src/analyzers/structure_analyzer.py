from typing import Optional

from src.analyzers.base_analyzer import BaseAnalyzer
from src.constants import KERNEL_ENUMERATION_MAX_DIM, ORIENTATION_NODE_BUDGET
from src.core.complex import SimplicialComplex
from src.cycles.orientation import orientability
from src.cycles.structures import (
    check_d_dimensional_cycle, face_minimal_decomposition, is_face_minimal, is_pseudo_manifold,
)
from src.utils.cancellation import CancellationToken


def classify_complex(complex_: SimplicialComplex,
                     kernel_limit: int = KERNEL_ENUMERATION_MAX_DIM,
                     node_budget: int = ORIENTATION_NODE_BUDGET,
                     cancel: Optional[CancellationToken] = None) -> dict:
    """
    Structural verdicts for one complex. Face-minimality, orientability and the
    decomposition size are only defined for cycles and are None otherwise.
    """
    pure = complex_.is_pure()
    result = {
        "name": complex_.name,
        "pure": pure,
        "dims": sorted(set(complex_.facet_dims)),
        "vertices": complex_.num_vertices,
        "facets": len(complex_.facets),
        "cycle": False,
        "reason": "not pure",
        "pseudo_manifold": False,
        "face_minimal": None,
        "orientable": None,
        "parts": None,
    }
    if not pure:
        return result
    check = check_d_dimensional_cycle(complex_)
    result["cycle"] = check.is_cycle
    result["reason"] = check.reason
    result["pseudo_manifold"] = is_pseudo_manifold(complex_)
    if check.cycle is not None:
        cycle = check.cycle
        result["face_minimal"] = is_face_minimal(cycle)
        result["orientable"] = orientability(cycle, node_budget, cancel) is not None
        result["parts"] = len(face_minimal_decomposition(cycle, kernel_limit).parts)
    return result


class StructureAnalyzer(BaseAnalyzer):
    """Cycle, pseudo-manifold, face-minimality and orientability verdicts."""

    analyzer_name = "structure"

    def __init__(self, kernel_limit: int = KERNEL_ENUMERATION_MAX_DIM,
                 node_budget: int = ORIENTATION_NODE_BUDGET):
        self.kernel_limit = kernel_limit
        self.node_budget = node_budget

    def _run_check(self, complex_: SimplicialComplex) -> dict:
        verdict = classify_complex(complex_, self.kernel_limit, self.node_budget)
        if not verdict["cycle"]:
            return self._ok_result(f"Not a cycle: {verdict['reason']}", classification=verdict)
        traits = ["face-minimal" if verdict["face_minimal"] else f"{verdict['parts']} face-minimal parts",
                  "orientable" if verdict["orientable"] else "non-orientable"]
        if verdict["pseudo_manifold"]:
            traits.insert(0, "pseudo-manifold")
        return self._ok_result(f"{verdict['reason']} ({', '.join(traits)})", classification=verdict)
