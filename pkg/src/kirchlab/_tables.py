"""Frozen structure constants a_ijk, generated by tools/regen_tables.py."""

TRIPLES = {
    1: [
    ],
    2: [
        (1, 2, 3, +1),
        (1, 3, 2, -1),
        (2, 1, 3, -1),
        (2, 3, 1, +1),
        (3, 1, 2, +1),
        (3, 2, 1, -1),
    ],
    3: [
        (1, 2, 3, +1),
        (1, 3, 2, -1),
        (1, 4, 5, +1),
        (1, 5, 4, -1),
        (1, 6, 7, -1),
        (1, 7, 6, +1),
        (2, 1, 3, -1),
        (2, 3, 1, +1),
        (2, 4, 6, +1),
        (2, 5, 7, +1),
        (2, 6, 4, -1),
        (2, 7, 5, -1),
        (3, 1, 2, +1),
        (3, 2, 1, -1),
        (3, 4, 7, +1),
        (3, 5, 6, -1),
        (3, 6, 5, +1),
        (3, 7, 4, -1),
        (4, 1, 5, -1),
        (4, 2, 6, -1),
        (4, 3, 7, -1),
        (4, 5, 1, +1),
        (4, 6, 2, +1),
        (4, 7, 3, +1),
        (5, 1, 4, +1),
        (5, 2, 7, -1),
        (5, 3, 6, +1),
        (5, 4, 1, -1),
        (5, 6, 3, -1),
        (5, 7, 2, +1),
        (6, 1, 7, +1),
        (6, 2, 4, +1),
        (6, 3, 5, -1),
        (6, 4, 2, -1),
        (6, 5, 3, +1),
        (6, 7, 1, -1),
        (7, 1, 6, -1),
        (7, 2, 5, +1),
        (7, 3, 4, +1),
        (7, 4, 3, -1),
        (7, 5, 2, -1),
        (7, 6, 1, +1),
    ],
}
