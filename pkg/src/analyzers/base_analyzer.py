from abc import ABC, abstractmethod

from loguru import logger

from src.constants import STATUS_ERROR, STATUS_OK, STATUS_WARNING
from src.core.complex import SimplicialComplex
from src.errors import CycleMateError


class BaseAnalyzer(ABC):
    """
    Abstract base class for complex analyzers used by batch scans.

    Subclasses must define ``analyzer_name`` and implement ``_run_check()``.
    The public ``check()`` method wraps ``_run_check()`` so a failing analyzer
    yields an error result instead of aborting the scan.
    """

    #: Override in each subclass (e.g. "homology", "structure", …)
    analyzer_name: str = "base"

    # ── Public entry-point ────────────────────────────────────────────────────

    def check(self, complex_: SimplicialComplex) -> dict:
        try:
            return self._run_check(complex_)
        except CycleMateError as e:
            logger.warning(f"{self.analyzer_name} analyzer rejected {complex_.name}: {e}")
            return self._error_result(str(e))
        except Exception as e:
            logger.error(f"Error in {self.analyzer_name} analyzer for {complex_.name}: {e}")
            return self._error_result("Check failed")

    # ── Abstract method ───────────────────────────────────────────────────────

    @abstractmethod
    def _run_check(self, complex_: SimplicialComplex) -> dict:
        """Perform the analysis; raise on unrecoverable errors."""

    # ── Shared helpers ────────────────────────────────────────────────────────

    def _ok_result(self, message: str, **extra) -> dict:
        return {"analyzer": self.analyzer_name, "status": STATUS_OK,
                "message": message, **extra}

    def _warning_result(self, message: str, **extra) -> dict:
        return {"analyzer": self.analyzer_name, "status": STATUS_WARNING,
                "message": message, **extra}

    def _error_result(self, message: str, **extra) -> dict:
        return {"analyzer": self.analyzer_name, "status": STATUS_ERROR,
                "message": message, **extra}
