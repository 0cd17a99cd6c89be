"""Batch scans: every configured analyzer over every input file, one thread per file."""
import asyncio
import os
from typing import Optional

from loguru import logger

from src.analyzers.base_analyzer import BaseAnalyzer
from src.analyzers.certificate_analyzer import CertificateAnalyzer
from src.analyzers.homology_analyzer import HomologyAnalyzer
from src.analyzers.structure_analyzer import StructureAnalyzer
from src.constants import COMPLEX_FILE_SUFFIXES, CORPUS_PREFIX, STATUS_ERROR
from src.errors import CycleMateError
from src.formats.complex_files import load_complex
from src.settings import AppConfig


def build_analyzers(config: AppConfig) -> list[BaseAnalyzer]:
    limits = config.limits
    return [
        HomologyAnalyzer(config.fields),
        StructureAnalyzer(limits.kernel_enumeration_max_dim, limits.orientation_node_budget),
        CertificateAnalyzer(config.fields, limits.kernel_enumeration_max_dim, limits.orientation_node_budget),
    ]


def expand_inputs(inputs: list[str]) -> list[str]:
    """Replace each directory with its complex files, sorted by name."""
    paths = []
    for entry in inputs:
        if entry.startswith(CORPUS_PREFIX) or not os.path.isdir(entry):
            paths.append(entry)
            continue
        found = sorted(
            os.path.join(entry, name) for name in os.listdir(entry)
            if name.endswith(COMPLEX_FILE_SUFFIXES) and os.path.isfile(os.path.join(entry, name))
        )
        if not found:
            logger.warning(f"No complex files in {entry}")
        else:
            logger.debug(f"Expanded {entry} into {len(found)} file(s)")
        paths.extend(found)
    return paths


def scan_one(path: str, analyzers: list[BaseAnalyzer]) -> list[dict]:
    try:
        complex_ = load_complex(path)
    except CycleMateError as e:
        logger.error(f"Skipping {path}: {e}")
        return [{"complex": path, "analyzer": "load", "status": STATUS_ERROR, "message": str(e)}]
    results = []
    for analyzer in analyzers:
        res = analyzer.check(complex_)
        res["complex"] = complex_.name
        results.append(res)
    return results


async def _scan_all(inputs: list[str], analyzers: list[BaseAnalyzer], jobs: int) -> list[list[dict]]:
    semaphore = asyncio.Semaphore(max(1, jobs))

    async def bounded(path: str) -> list[dict]:
        async with semaphore:
            return await asyncio.to_thread(scan_one, path, analyzers)

    return await asyncio.gather(*(bounded(path) for path in inputs))


def run_scan(config: AppConfig, inputs: Optional[list[str]] = None, jobs: int = 1) -> list[dict]:
    """Results in input order, independent of ``jobs``."""
    paths = expand_inputs(list(inputs if inputs is not None else config.inputs))
    analyzers = build_analyzers(config)
    logger.info(f"Scanning {len(paths)} complex(es) with {len(analyzers)} analyzer(s)...")
    if jobs <= 1:
        batches = [scan_one(path, analyzers) for path in paths]
    else:
        batches = asyncio.run(_scan_all(paths, analyzers, jobs))
    return [res for batch in batches for res in batch]
