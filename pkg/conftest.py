import random

import pytest
from loguru import logger


@pytest.fixture(autouse=True)
def _quiet_logs():
    logger.remove()
    yield


@pytest.fixture
def rng():
    return random.Random(20240611)
