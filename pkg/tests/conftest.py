"""Shared fixtures: src/ on sys.path, the q context and a few models."""

import cmath
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / 'src'))

from glsm.model import MINUS, hypersurface_model  # noqa: E402
from qseries.context import QContext  # noqa: E402

N3R2_ANGLES = (0.3, 1.1, 2.3, -0.7)
QUINTIC_ANGLES = (0.3, 1.1, 2.3, -0.7, -1.9, 0.5)


def unit_params(angles):
    return [cmath.exp(1j * t) for t in angles]


@pytest.fixture
def ctx():
    return QContext(q=0.1)


@pytest.fixture
def n3r2():
    return hypersurface_model(3, 2, unit_params(N3R2_ANGLES))


@pytest.fixture
def n3r2_minus(n3r2):
    return n3r2.with_phase(MINUS)


@pytest.fixture
def quintic():
    return hypersurface_model(5, 5, unit_params(QUINTIC_ANGLES), name="quintic")
