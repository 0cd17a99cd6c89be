from typing import Optional

from src.algebra.fields import FieldTag
from src.analyzers.base_analyzer import BaseAnalyzer
from src.constants import DEFAULT_SCAN_FIELDS
from src.core.complex import SimplicialComplex
from src.homology.engine import betti_report


class HomologyAnalyzer(BaseAnalyzer):
    """Reduced Betti numbers over each configured field."""

    analyzer_name = "homology"

    def __init__(self, fields: Optional[list[str]] = None):
        self.fields: list[FieldTag] = [FieldTag.parse(f) for f in (fields or DEFAULT_SCAN_FIELDS)]

    def _run_check(self, complex_: SimplicialComplex) -> dict:
        reports = {field.label: betti_report(complex_, field).to_dict()["betti"] for field in self.fields}
        nonzero = sorted(label for label, betti in reports.items() if any(betti.values()))
        if nonzero:
            message = f"Nonzero reduced homology over {', '.join(nonzero)}"
        else:
            message = "Acyclic over every checked field"
        return self._ok_result(message, betti=reports)
