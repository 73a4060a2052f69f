import numpy as np
import pytest

from porpob import PoMatrix

from helpers import CLASSROOM_LABELS, CLASSROOM_ROWS, classroom_array


@pytest.fixture
def classroom_matrix() -> PoMatrix:
    return PoMatrix(classroom_array())


@pytest.fixture
def classroom_csv(tmp_path):
    path = tmp_path / "classroom.csv"
    lines = ["id," + ",".join(CLASSROOM_LABELS)]
    for i, row in enumerate(CLASSROOM_ROWS, start=1):
        lines.append(f"{i}," + ",".join(str(v) for v in row))
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(20240801))
