"""
Randomized search for complexes where orientable certificates fall short.

Orientable certificates are sound over every field but may miss homology.
This experiment samples random pure complexes, keeps those with nonzero
homology in the target dimension, and records every one for which no
orientable certificate is found.
"""
import random
from dataclasses import dataclass, field as dataclass_field

from loguru import logger

from src.algebra.fields import Q, FieldTag
from src.certification.certify import certify_orientable
from src.constants import KERNEL_ENUMERATION_MAX_DIM, ORIENTATION_NODE_BUDGET
from src.core.complex import SimplicialComplex
from src.errors import SearchBudgetExceeded
from src.homology.engine import reduced_betti
from src.utils.generators import random_pure_complex


@dataclass
class ConverseReport:
    field: FieldTag
    dim: int
    trials: int = 0
    with_homology: int = 0
    certified: int = 0
    skipped: int = 0
    gaps: list[SimplicialComplex] = dataclass_field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "field": self.field.label,
            "dim": self.dim,
            "trials": self.trials,
            "with_homology": self.with_homology,
            "certified": self.certified,
            "skipped": self.skipped,
            "gaps": [{"name": g.name, "facets": g.facet_lists()} for g in self.gaps],
        }


def search_orientable_converse(trials: int = 200, n_vertices: int = 6, d: int = 2,
                               density: float = 0.5, seed: int = 0, field: FieldTag = Q,
                               kernel_limit: int = KERNEL_ENUMERATION_MAX_DIM,
                               node_budget: int = ORIENTATION_NODE_BUDGET) -> ConverseReport:
    rng = random.Random(seed)
    report = ConverseReport(field=field, dim=d)
    for trial in range(trials):
        complex_ = random_pure_complex(rng, n_vertices, d, density, name=f"converse-{seed}-{trial}")
        report.trials += 1
        if reduced_betti(complex_, d, field) == 0:
            continue
        report.with_homology += 1
        try:
            cert = certify_orientable(complex_, d, field, kernel_limit, node_budget)
        except SearchBudgetExceeded as e:
            logger.debug(f"Skipping {complex_.name}: {e}")
            report.skipped += 1
            continue
        if cert is not None:
            report.certified += 1
        else:
            logger.warning(f"{complex_.name}: nonzero homology over {field} without an orientable certificate")
            report.gaps.append(complex_)
    logger.info(
        f"Converse search over {field}: {report.with_homology}/{report.trials} with homology, "
        f"{report.certified} certified, {len(report.gaps)} gap(s), {report.skipped} skipped"
    )
    return report
