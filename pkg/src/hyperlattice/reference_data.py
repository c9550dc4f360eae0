"""Small worked objects with known properties, shared by tests and ``verify-all``.

Hypermatrices are given as lists of k-planes; use :func:`stack_planes` to get
the ``(n, n, n)`` array.
"""

from __future__ import annotations

import numpy as np

from .core import DTYPE

CROSS = [[0, 1, 0], [1, -1, 1], [0, 1, 0]]
ANTI_3 = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
IDENT_3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def stack_planes(planes) -> np.ndarray:
    return np.stack([np.asarray(p, dtype=DTYPE) for p in planes], axis=2)


# 2-D join/meet of two 3x3 permutation matrices
PERM_213 = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
PERM_132 = [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
SIGMA_MAX_213_132 = [[0, 0, 0, 0], [0, 1, 1, 1], [0, 1, 2, 2], [0, 1, 2, 3]]
SIGMA_MIN_213_132 = [[0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 1, 2], [0, 1, 2, 3]]

# the cyclic square of order 3 and its corner sums
CYCLIC_3 = [[1, 2, 3], [2, 3, 1], [3, 1, 2]]
CYCLIC_3_SIGMA = [[0, 0, 0, 0], [0, 1, 3, 6], [0, 3, 8, 12], [0, 6, 12, 18]]
CYCLIC_3_XI_PLANES = [  # k = 0..3, each indexed [i][j]
    [[0] * 4] * 4,
    [[0, 0, 0, 0], [0, 1, 1, 1], [0, 1, 1, 2], [0, 1, 2, 3]],
    [[0, 0, 0, 0], [0, 1, 2, 2], [0, 2, 3, 4], [0, 2, 4, 6]],
    [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 4, 6], [0, 3, 6, 9]],
]

# a PASHM that is not an ASHM, and an ASHM, with their grid notations
PASHM_3 = [CROSS, ANTI_3, IDENT_3]
PASHM_3_GRID = [[(3,), (1,), (2,)], [(1,), (-1, 2, 3), (1,)], [(2,), (1,), (3,)]]
ASHM_3 = [ANTI_3, CROSS, IDENT_3]
ASHM_3_GRID = [[(3,), (2,), (1,)], [(2,), (1, -2, 3), (2,)], [(1,), (2,), (3,)]]

# the element of C_3 whose cell sums are all 2
ALL_TWOS_3 = [CROSS, [[1, -1, 1], [-1, 3, -1], [1, -1, 1]], CROSS]

# two order-3 squares joined by two positive T-blocks (upper, lower)
TBLOCK_UPPER = [[3, 1, 2], [1, 2, 3], [2, 3, 1]]
TBLOCK_LOWER = [[1, 3, 2], [2, 1, 3], [3, 2, 1]]
TBLOCK_STEPS = [(1, 2, 1, 2, 1, 3), (2, 3, 1, 2, 2, 3)]  # (i1, i2, j1, j2, k1, k2)

# incomparable pair below a common element, order 4
INCOMP_A = [[1, 2, 3, 4], [4, 3, 1, 2], [3, 4, 2, 1], [2, 1, 4, 3]]
INCOMP_C = [[2, 1, 3, 4], [4, 3, 1, 2], [3, 4, 2, 1], [1, 2, 4, 3]]
INCOMP_D = [[2, 1, 3, 4], [3, 4, 1, 2], [4, 3, 2, 1], [1, 2, 4, 3]]

# subarray counts for a decreasing replacement, order 4
SUB_LOWER = [[1, 2, 3, 4], [2, 3, 4, 1], [3, 4, 1, 2], [4, 1, 2, 3]]
SUB_UPPER = [[2, 3, 1, 4], [3, 2, 4, 1], [1, 4, 3, 2], [4, 1, 2, 3]]
SUB_POSITIONS = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1), (3, 3)]
# counts[k-1][i-1][j-1]; None where (i, j) is not a position
SUB_LOWER_COUNTS = [
    [[1, 1, 1], [1, 1, None], [1, None, 2]],
    [[1, 2, 2], [2, 3, None], [2, None, 4]],
    [[1, 2, 3], [2, 4, None], [3, None, 7]],
]
SUB_UPPER_COUNTS = [
    [[0, 0, 1], [0, 0, None], [1, None, 2]],
    [[1, 1, 2], [1, 2, None], [2, None, 4]],
    [[1, 2, 3], [2, 4, None], [3, None, 7]],
]

# two saturated chains of different lengths between the same squares of order 4
CHAIN_LONG = [
    [[1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1]],
    [[2, 1, 3, 4], [1, 2, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1]],
    [[2, 1, 4, 3], [1, 2, 3, 4], [3, 4, 1, 2], [4, 3, 2, 1]],
    [[3, 1, 4, 2], [1, 2, 3, 4], [2, 4, 1, 3], [4, 3, 2, 1]],
]
CHAIN_SHORT = [
    [[1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1]],
    [[1, 2, 3, 4], [3, 1, 4, 2], [2, 4, 1, 3], [4, 3, 2, 1]],
    [[3, 1, 4, 2], [1, 2, 3, 4], [2, 4, 1, 3], [4, 3, 2, 1]],
]

# plane sums of M_4 and U_4, and two squares whose Sigma-max is the latter
PLANE_SUM_M4 = [[4, 7, 9, 10], [7, 14, 17, 20], [9, 17, 24, 30], [10, 20, 30, 40]]
PLANE_SUM_U4 = [[4, 7, 9, 10], [7, 13, 17, 20], [9, 17, 24, 30], [10, 20, 30, 40]]
LATIN_LIKE_A = [[4, 3, 2, 1], [3, 1, 4, 2], [2, 4, 1, 3], [1, 2, 3, 4]]
LATIN_LIKE_B = [[4, 2, 1, 3], [3, 4, 2, 1], [2, 1, 3, 4], [1, 3, 4, 2]]
# Sigma^{-1} of that max in a circulating display (its first row contradicts the
# max itself) and as computed
SIGMA_INV_PRINTED = [[4, 2, 1, 3], [3, 3, 2, 2], [2, 2, 3, 3], [1, 2, 3, 4]]
SIGMA_INV_COMPUTED = [[4, 3, 2, 1], [3, 3, 2, 2], [2, 2, 3, 3], [1, 2, 3, 4]]

# a hypermatrix in Xi^{-1}(C_3), its partial-sum multiplicities and hypertriangle
TRIANGLE_HYPERMATRIX = [IDENT_3, CROSS, ANTI_3]
TRIANGLE_MULTIPLICITY_PLANES = [  # P[:, :, k] for k = 1..3, indexed [i][j]
    [[1, 0, 0], [1, 1, 0], [1, 1, 1]],
    [[1, 1, 0], [2, 1, 1], [2, 2, 2]],
    [[1, 1, 1], [2, 2, 2], [3, 3, 3]],
]
TRIANGLE_ROWS = [  # rows[k-1][i-1]
    [[1], [1, 2], [1, 2, 3]],
    [[1, 2], [1, 1, 2, 3], [1, 1, 2, 2, 3, 3]],
    [[1, 2, 3], [1, 1, 2, 2, 3, 3], [1, 1, 1, 2, 2, 2, 3, 3, 3]],
]

# first four rows of the first four planes of an order-5 array that passes
# every interlacing inequality yet is not a monotone hypertriangle
ORDER5_PARTIAL_ROWS = [
    [[4], [3, 5], [1, 3, 5], [1, 2, 4, 5]],
    [[3, 5], [3, 3, 5, 5], [1, 1, 3, 3, 5, 5], [1, 1, 2, 3, 4, 4, 5, 5]],
    [[2, 3, 5], [1, 2, 3, 3, 5, 5], [1, 1, 2, 3, 3, 4, 4, 5, 5],
     [1, 1, 1, 2, 2, 3, 3, 4, 4, 4, 5, 5]],
    [[1, 2, 4, 5], [1, 1, 2, 3, 4, 4, 5, 5], [1, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 5],
     [1, 1, 1, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 5, 5, 5]],
]


def order5_completed_rows() -> list[list[list[int]]]:
    """Complete row 5 of each plane and plane 5 by the forced boundary rows."""
    n = 5
    rows = [list(map(list, plane)) for plane in ORDER5_PARTIAL_ROWS]
    for k, plane in enumerate(rows, start=1):
        plane.append([s for s in range(1, n + 1) for _ in range(k)])
    rows.append([[s for s in range(1, n + 1) for _ in range(i)] for i in range(1, n + 1)])
    return rows
