"""Published census values the package is checked against."""

# n -> (all, reduced, primitive) relabelling classes
CENSUS_COUNTS = {
    1: (1, 1, 1),
    2: (3, 0, 0),
    3: (7, 3, 3),
    4: (26, 19, 13),
    5: (97, 91, 91),
    6: (624, 603, 500),
    7: (4163, 4155, 4155),
    8: (34470, 34398, 33190),
    9: (314493, 314468, 313474),
    10: (3202839, 3202548, 3176532),
}

# n -> (symmetry, holonomy, non-visibility) among reduced surfaces
FAKE_TORUS_COUNTS = {
    2: (0, 0, 0),
    3: (0, 3, 0),
    4: (0, 10, 0),
    5: (0, 40, 0),
    6: (0, 254, 36),
    7: (0, 1620, 90),
    8: (1, 13364, 348),
}

# stratum -> largest size with a visibility torus
LARGEST_VISIBILITY = {
    (2,): 5,
    (1, 1): 9,
}
