from typing import Optional

from loguru import logger

from src.algebra.fields import FieldTag
from src.analyzers.base_analyzer import BaseAnalyzer
from src.certification.certify import certify_char2, certify_orientable
from src.constants import DEFAULT_SCAN_FIELDS, KERNEL_ENUMERATION_MAX_DIM, ORIENTATION_NODE_BUDGET
from src.core.complex import SimplicialComplex
from src.errors import SearchBudgetExceeded
from src.homology.engine import reduced_betti


class CertificateAnalyzer(BaseAnalyzer):
    """
    Looks for a cycle certificate in every dimension with nonzero homology.

    Over characteristic 2 a certificate exists exactly when homology is
    nonzero. Over other fields orientable certificates may be missing; each
    such case is reported as a warning.
    """

    analyzer_name = "certificate"

    def __init__(self, fields: Optional[list[str]] = None,
                 kernel_limit: int = KERNEL_ENUMERATION_MAX_DIM,
                 node_budget: int = ORIENTATION_NODE_BUDGET):
        self.fields = [FieldTag.parse(f) for f in (fields or DEFAULT_SCAN_FIELDS)]
        self.kernel_limit = kernel_limit
        self.node_budget = node_budget

    def _certify(self, complex_: SimplicialComplex, d: int, field: FieldTag):
        if field.characteristic == 2:
            return certify_char2(complex_, d)
        return certify_orientable(complex_, d, field, self.kernel_limit, self.node_budget)

    def _run_check(self, complex_: SimplicialComplex) -> dict:
        findings = []
        gaps = []
        for field in self.fields:
            for d in range(1, complex_.dim + 1):
                betti = reduced_betti(complex_, d, field)
                if betti == 0:
                    continue
                entry = {"field": field.label, "dim": d, "betti": betti}
                try:
                    cert = self._certify(complex_, d, field)
                except SearchBudgetExceeded as e:
                    entry["certificate"] = None
                    entry["skipped"] = str(e)
                    gaps.append(f"{field.label} dim {d} (search limit)")
                    findings.append(entry)
                    continue
                entry["certificate"] = cert.kind if cert else None
                entry["facets"] = len(cert.witness) if cert else None
                if cert is None:
                    gaps.append(f"{field.label} dim {d}")
                    logger.info(f"{complex_.name}: homology over {field} in dim {d} has no cycle certificate")
                findings.append(entry)
        if gaps:
            return self._warning_result(f"Homology without a cycle certificate: {', '.join(gaps)}",
                                        certificates=findings)
        if not findings:
            return self._ok_result("No homology in positive dimensions", certificates=findings)
        return self._ok_result(f"{len(findings)} certificate(s) found", certificates=findings)
