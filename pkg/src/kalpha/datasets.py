"""Small bundled example data."""

from __future__ import annotations

from .data import ReliabilityMatrix

NA = None

# Krippendorff's nominal reliability example: 12 units x 4 coders, values
# in {1..5}, seven missing cells.
NOMINAL_ROWS = (
    (1, 1, NA, 1),
    (2, 2, 3, 2),
    (3, 3, 3, 3),
    (3, 3, 3, 3),
    (2, 2, 2, 2),
    (1, 2, 3, 4),
    (4, 4, 4, 4),
    (1, 1, 2, 1),
    (2, 2, 2, 2),
    (NA, 5, 5, 5),
    (NA, NA, 1, 1),
    (NA, 3, NA, NA),
)


def nominal_example() -> ReliabilityMatrix:
    return ReliabilityMatrix.from_rows(NOMINAL_ROWS)
