import numpy as np
import pytest

from fftmorph.umbra import GridFunction

# Worked 1-D example: image [3 0 7 6 2 7] (origin at the first entry),
# filter [1 2 X 0] with origin at the second entry.


@pytest.fixture
def example_image():
    return GridFunction.from_tokens([3, 0, 7, 6, 2, 7], tonal_max=7)


@pytest.fixture
def example_se():
    return GridFunction.from_tokens([1, 2, None, 0], lo=(-1,), tonal_max=2)


EXAMPLE_DILATION = [5, 8, 9, 8, 8, 9]

# Rows are printed top-to-bottom for tonal values 9..0 (umbra convention);
# columns follow the spatial index.
IMAGE_LIFT_MATRIX = [
    [0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 1],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
]

SE_LIFT_MATRIX = [
    [0, 0, 0, 0],
    [0, 0, 0, 0],
    [0, 0, 0, 0],
    [0, 0, 0, 0],
    [0, 0, 0, 0],
    [0, 0, 0, 0],
    [0, 0, 0, 0],
    [0, 1, 0, 0],
    [1, 0, 0, 0],
    [0, 0, 0, 1],
]

RESULT_COUNT_MATRIX = [
    [0, 0, 1, 0, 0, 1],
    [0, 1, 0, 1, 1, 0],
    [0, 0, 1, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 1, 1, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
]


def umbra_matrix_to_bits(matrix):
    """Convert a top-down tonal matrix (rows = values high..low) to a
    bits[x, y] array with the tonal axis last and ascending."""
    m = np.asarray(matrix, dtype=np.int64)
    return m[::-1].T.copy()
