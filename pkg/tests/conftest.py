"""
Shared fixtures: random error curves and logger isolation
"""
import logging

import numpy as np
import pytest

from elbowkit.utils.logging_config import LOGGER_NAME


def make_random_curve(rng: np.random.Generator, length: int) -> np.ndarray:
    """Non-increasing curve with at least one drop; convex or irregular at random"""
    drops = rng.exponential(1.0, length - 1) * (rng.random(length - 1) < 0.8)
    if rng.random() < 0.5:
        drops = np.sort(drops)[::-1]
    drops[0] += 0.1 + rng.random()
    if rng.random() < 0.3:
        # flat tail after the last real drop
        cut = int(rng.integers(1, length))
        drops[cut:] = 0.0
    values = np.concatenate(([0.0], np.cumsum(drops[::-1])))[::-1]
    return values + rng.uniform(-10.0, 10.0)


@pytest.fixture
def curve_factory():
    return make_random_curve


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture(autouse=True)
def reset_logger():
    yield
    logger = logging.getLogger(LOGGER_NAME)
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)
        handler.close()
    logger.propagate = True
