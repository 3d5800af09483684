"""Reference decompositions of W^(r)_s for exceptional types.

Each entry maps a dominant weight (fundamental-weight coordinates) to the
coefficient polynomial of V(lambda), stored as {exponent: coefficient} in the
variable q after the substitution q -> 1/q.
"""

EXCEPTIONAL_TABLES: dict[tuple[str, int, int], dict[tuple[int, ...], dict[int, int]]] = {
    ('E6', 1, 1): {
        (1, 0, 0, 0, 0, 0): {0: 1},
    },
    ('E6', 2, 1): {
        (0, 0, 0, 0, 1, 0): {1: 1},
        (0, 1, 0, 0, 0, 0): {0: 1},
    },
    ('E6', 3, 1): {
        (0, 0, 0, 0, 0, 0): {3: 1},
        (0, 0, 0, 0, 0, 1): {1: 1, 2: 1},
        (0, 0, 1, 0, 0, 0): {0: 1},
        (1, 0, 0, 0, 1, 0): {1: 1},
    },
    ('E6', 4, 1): {
        (0, 0, 0, 1, 0, 0): {0: 1},
        (1, 0, 0, 0, 0, 0): {1: 1},
    },
    ('E6', 5, 1): {
        (0, 0, 0, 0, 1, 0): {0: 1},
    },
    ('E6', 6, 1): {
        (0, 0, 0, 0, 0, 0): {1: 1},
        (0, 0, 0, 0, 0, 1): {0: 1},
    },
    ('E7', 1, 1): {
        (0, 0, 0, 0, 0, 0, 0): {1: 1},
        (1, 0, 0, 0, 0, 0, 0): {0: 1},
    },
    ('E7', 2, 1): {
        (0, 0, 0, 0, 0, 0, 0): {3: 1},
        (0, 0, 0, 0, 1, 0, 0): {1: 1},
        (0, 1, 0, 0, 0, 0, 0): {0: 1},
        (1, 0, 0, 0, 0, 0, 0): {1: 1, 2: 1},
    },
    ('E7', 3, 1): {
        (0, 0, 0, 0, 0, 0, 0): {4: 1, 6: 1},
        (0, 0, 0, 0, 0, 1, 1): {1: 1, 2: 1},
        (0, 0, 0, 0, 0, 2, 0): {3: 1},
        (0, 0, 0, 0, 1, 0, 0): {2: 2, 3: 1, 4: 1},
        (0, 0, 1, 0, 0, 0, 0): {0: 1},
        (0, 1, 0, 0, 0, 0, 0): {1: 1, 2: 1, 3: 1},
        (1, 0, 0, 0, 0, 0, 0): {3: 2, 4: 1, 5: 1},
        (1, 0, 0, 0, 1, 0, 0): {1: 1},
        (2, 0, 0, 0, 0, 0, 0): {2: 1},
    },
    ('E7', 3, 2): {
        (0, 0, 0, 0, 0, 0, 0): {8: 1, 10: 1, 12: 1},
        (0, 0, 0, 0, 0, 0, 2): {5: 2, 6: 1, 7: 1},
        (0, 0, 0, 0, 0, 1, 1): {5: 1, 6: 3, 7: 4, 8: 2},
        (0, 0, 0, 0, 0, 2, 0): {7: 1, 9: 1},
        (0, 0, 0, 0, 0, 2, 2): {2: 1, 3: 1, 4: 1},
        (0, 0, 0, 0, 0, 3, 1): {4: 1, 5: 1},
        (0, 0, 0, 0, 0, 4, 0): {6: 1},
        (0, 0, 0, 0, 1, 0, 0): {6: 2, 7: 1, 8: 4, 9: 1, 10: 1},
        (0, 0, 0, 0, 1, 0, 2): {3: 1},
        (0, 0, 0, 0, 1, 1, 1): {3: 2, 4: 4, 5: 3, 6: 1},
        (0, 0, 0, 0, 1, 2, 0): {5: 2, 6: 1, 7: 1},
        (0, 0, 0, 0, 2, 0, 0): {4: 3, 5: 2, 6: 4, 7: 1, 8: 1},
        (0, 0, 0, 1, 0, 0, 1): {3: 1, 4: 4, 5: 3, 6: 1},
        (0, 0, 0, 1, 0, 1, 0): {4: 1, 5: 5, 6: 4, 7: 2},
        (0, 0, 0, 2, 0, 0, 0): {3: 1},
        (0, 0, 1, 0, 0, 0, 0): {4: 2, 5: 3, 6: 7, 7: 2, 8: 1},
        (0, 0, 1, 0, 0, 1, 1): {1: 1, 2: 1},
        (0, 0, 1, 0, 0, 2, 0): {3: 2},
        (0, 0, 1, 0, 1, 0, 0): {2: 2, 3: 2, 4: 2},
        (0, 0, 2, 0, 0, 0, 0): {0: 1},
        (0, 1, 0, 0, 0, 0, 0): {5: 1, 6: 2, 7: 5, 8: 3, 9: 2},
        (0, 1, 0, 0, 0, 1, 1): {2: 1, 3: 3, 4: 3, 5: 1},
        (0, 1, 0, 0, 0, 2, 0): {4: 2, 5: 2, 6: 1},
        (0, 1, 0, 0, 1, 0, 0): {3: 2, 4: 5, 5: 7, 6: 3, 7: 1},
        (0, 1, 0, 1, 0, 1, 0): {2: 1},
        (0, 1, 1, 0, 0, 0, 0): {1: 1, 2: 1, 3: 1},
        (0, 2, 0, 0, 0, 0, 0): {2: 1, 3: 1, 4: 3, 5: 1, 6: 1},
        (1, 0, 0, 0, 0, 0, 0): {7: 2, 8: 1, 9: 3, 10: 1, 11: 1},
        (1, 0, 0, 0, 0, 0, 2): {4: 1},
        (1, 0, 0, 0, 0, 1, 1): {4: 3, 5: 6, 6: 4, 7: 1},
        (1, 0, 0, 0, 0, 2, 0): {6: 3, 7: 1, 8: 1},
        (1, 0, 0, 0, 1, 0, 0): {5: 5, 6: 6, 7: 7, 8: 2, 9: 1},
        (1, 0, 0, 0, 1, 1, 1): {2: 1, 3: 1},
        (1, 0, 0, 0, 1, 2, 0): {4: 1},
        (1, 0, 0, 0, 2, 0, 0): {3: 2, 4: 1, 5: 1},
        (1, 0, 0, 1, 0, 0, 1): {2: 1, 3: 1},
        (1, 0, 0, 1, 0, 1, 0): {3: 2, 4: 3, 5: 1},
        (1, 0, 1, 0, 0, 0, 0): {3: 3, 4: 3, 5: 3},
        (1, 0, 1, 0, 1, 0, 0): {1: 1},
        (1, 1, 0, 0, 0, 0, 0): {4: 2, 5: 5, 6: 5, 7: 3, 8: 1},
        (1, 1, 0, 0, 1, 0, 0): {2: 1, 3: 2, 4: 1},
        (2, 0, 0, 0, 0, 0, 0): {6: 4, 7: 2, 8: 4, 9: 1, 10: 1},
        (2, 0, 0, 0, 0, 1, 1): {3: 1, 4: 1},
        (2, 0, 0, 0, 0, 2, 0): {5: 1},
        (2, 0, 0, 0, 1, 0, 0): {4: 4, 5: 2, 6: 2},
        (2, 0, 0, 0, 2, 0, 0): {2: 1},
        (2, 0, 1, 0, 0, 0, 0): {2: 1},
        (2, 1, 0, 0, 0, 0, 0): {3: 1, 4: 1, 5: 1},
        (3, 0, 0, 0, 0, 0, 0): {5: 2, 6: 1, 7: 1},
        (3, 0, 0, 0, 1, 0, 0): {3: 1},
        (4, 0, 0, 0, 0, 0, 0): {4: 1},
    },
    ('E7', 4, 1): {
        (0, 0, 0, 0, 0, 0, 1): {1: 1, 2: 1},
        (0, 0, 0, 0, 0, 1, 0): {2: 1, 3: 1},
        (0, 0, 0, 1, 0, 0, 0): {0: 1},
        (1, 0, 0, 0, 0, 1, 0): {1: 1},
    },
    ('E7', 5, 1): {
        (0, 0, 0, 0, 0, 0, 0): {2: 1},
        (0, 0, 0, 0, 1, 0, 0): {0: 1},
        (1, 0, 0, 0, 0, 0, 0): {1: 1},
    },
    ('E7', 6, 1): {
        (0, 0, 0, 0, 0, 1, 0): {0: 1},
    },
    ('E7', 7, 1): {
        (0, 0, 0, 0, 0, 0, 1): {0: 1},
        (0, 0, 0, 0, 0, 1, 0): {1: 1},
    },
    ('E8', 1, 1): {
        (0, 0, 0, 0, 0, 0, 0, 0): {1: 1},
        (1, 0, 0, 0, 0, 0, 0, 0): {0: 1},
    },
    ('E8', 2, 1): {
        (0, 0, 0, 0, 0, 0, 0, 0): {3: 1},
        (0, 0, 0, 0, 0, 0, 1, 0): {1: 1},
        (0, 1, 0, 0, 0, 0, 0, 0): {0: 1},
        (1, 0, 0, 0, 0, 0, 0, 0): {1: 1, 2: 1},
    },
    ('E8', 3, 1): {
        (0, 0, 0, 0, 0, 0, 0, 0): {4: 1, 6: 1},
        (0, 0, 0, 0, 0, 0, 0, 1): {1: 1, 2: 1},
        (0, 0, 0, 0, 0, 0, 1, 0): {2: 2, 3: 1, 4: 1},
        (0, 0, 1, 0, 0, 0, 0, 0): {0: 1},
        (0, 1, 0, 0, 0, 0, 0, 0): {1: 1, 2: 1, 3: 1},
        (1, 0, 0, 0, 0, 0, 0, 0): {3: 2, 4: 1, 5: 1},
        (1, 0, 0, 0, 0, 0, 1, 0): {1: 1},
        (2, 0, 0, 0, 0, 0, 0, 0): {2: 1},
    },
    ('E8', 4, 1): {
        (0, 0, 0, 0, 0, 0, 0, 0): {6: 1, 7: 1, 8: 1, 10: 1},
        (0, 0, 0, 0, 0, 0, 0, 1): {2: 2, 3: 3, 4: 2, 5: 1, 6: 1},
        (0, 0, 0, 0, 0, 0, 1, 0): {3: 1, 4: 4, 5: 3, 6: 2, 7: 1, 8: 1},
        (0, 0, 0, 0, 0, 0, 2, 0): {2: 1},
        (0, 0, 0, 0, 0, 1, 0, 0): {1: 1, 2: 1, 3: 1},
        (0, 0, 0, 1, 0, 0, 0, 0): {0: 1},
        (0, 0, 1, 0, 0, 0, 0, 0): {1: 1, 2: 2, 3: 1, 4: 1},
        (0, 1, 0, 0, 0, 0, 0, 0): {3: 3, 4: 3, 5: 3, 6: 1, 7: 1},
        (0, 1, 0, 0, 0, 0, 1, 0): {1: 1},
        (1, 0, 0, 0, 0, 0, 0, 0): {4: 1, 5: 3, 6: 3, 7: 2, 8: 1, 9: 1},
        (1, 0, 0, 0, 0, 0, 0, 1): {1: 1, 2: 1},
        (1, 0, 0, 0, 0, 0, 1, 0): {2: 2, 3: 3, 4: 2, 5: 1},
        (1, 1, 0, 0, 0, 0, 0, 0): {2: 1, 3: 1},
        (2, 0, 0, 0, 0, 0, 0, 0): {3: 1, 4: 2, 5: 1, 6: 1},
    },
    ('E8', 5, 1): {
        (0, 0, 0, 0, 0, 0, 0, 0): {7: 1, 9: 3, 10: 1, 11: 2, 12: 1, 13: 1, 15: 1},
        (0, 0, 0, 0, 0, 0, 0, 1): {3: 1, 4: 5, 5: 8, 6: 7, 7: 6, 8: 4, 9: 2, 10: 1, 11: 1},
        (0, 0, 0, 0, 0, 0, 1, 0): {5: 5, 6: 6, 7: 9, 8: 6, 9: 6, 10: 3, 11: 2, 12: 1, 13: 1},
        (0, 0, 0, 0, 0, 0, 1, 1): {1: 1, 2: 2, 3: 2, 4: 1},
        (0, 0, 0, 0, 0, 0, 2, 0): {3: 3, 4: 2, 5: 3, 6: 1, 7: 1},
        (0, 0, 0, 0, 0, 1, 0, 0): {2: 2, 3: 4, 4: 6, 5: 4, 6: 3, 7: 1, 8: 1},
        (0, 0, 0, 0, 1, 0, 0, 0): {0: 1},
        (0, 0, 0, 1, 0, 0, 0, 0): {1: 1, 2: 2, 3: 2, 4: 1, 5: 1},
        (0, 0, 1, 0, 0, 0, 0, 0): {3: 5, 4: 5, 5: 7, 6: 4, 7: 3, 8: 1, 9: 1},
        (0, 0, 1, 0, 0, 0, 1, 0): {1: 1},
        (0, 1, 0, 0, 0, 0, 0, 0): {4: 3, 5: 6, 6: 11, 7: 8, 8: 7, 9: 4, 10: 3, 11: 1, 12: 1},
        (0, 1, 0, 0, 0, 0, 0, 1): {1: 1, 2: 1},
        (0, 1, 0, 0, 0, 0, 1, 0): {2: 3, 3: 4, 4: 4, 5: 2, 6: 1},
        (0, 2, 0, 0, 0, 0, 0, 0): {3: 1},
        (1, 0, 0, 0, 0, 0, 0, 0): {6: 4, 7: 5, 8: 8, 9: 5, 10: 5, 11: 3, 12: 2, 13: 1, 14: 1},
        (1, 0, 0, 0, 0, 0, 0, 1): {2: 2, 3: 5, 4: 5, 5: 3, 6: 2, 7: 1},
        (1, 0, 0, 0, 0, 0, 1, 0): {3: 2, 4: 9, 5: 10, 6: 10, 7: 6, 8: 4, 9: 2, 10: 1},
        (1, 0, 0, 0, 0, 0, 2, 0): {2: 1},
        (1, 0, 0, 0, 0, 1, 0, 0): {1: 1, 2: 1, 3: 1},
        (1, 0, 1, 0, 0, 0, 0, 0): {2: 2, 3: 1, 4: 1},
        (1, 1, 0, 0, 0, 0, 0, 0): {3: 2, 4: 5, 5: 5, 6: 3, 7: 2, 8: 1},
        (2, 0, 0, 0, 0, 0, 0, 0): {5: 5, 6: 4, 7: 6, 8: 3, 9: 3, 10: 1, 11: 1},
        (2, 0, 0, 0, 0, 0, 1, 0): {3: 2, 4: 1, 5: 1},
        (3, 0, 0, 0, 0, 0, 0, 0): {4: 1, 6: 1},
    },
    ('E8', 6, 1): {
        (0, 0, 0, 0, 0, 0, 0, 0): {5: 1, 7: 1},
        (0, 0, 0, 0, 0, 0, 0, 1): {1: 1, 2: 1, 3: 1},
        (0, 0, 0, 0, 0, 0, 1, 0): {2: 1, 3: 2, 4: 1, 5: 1},
        (0, 0, 0, 0, 0, 1, 0, 0): {0: 1},
        (0, 0, 1, 0, 0, 0, 0, 0): {1: 1},
        (0, 1, 0, 0, 0, 0, 0, 0): {2: 2, 3: 1, 4: 1},
        (1, 0, 0, 0, 0, 0, 0, 0): {3: 1, 4: 2, 5: 1, 6: 1},
        (1, 0, 0, 0, 0, 0, 1, 0): {1: 1, 2: 1},
        (2, 0, 0, 0, 0, 0, 0, 0): {3: 1},
    },
    ('E8', 7, 1): {
        (0, 0, 0, 0, 0, 0, 0, 0): {2: 1},
        (0, 0, 0, 0, 0, 0, 1, 0): {0: 1},
        (1, 0, 0, 0, 0, 0, 0, 0): {1: 1},
    },
    ('E8', 8, 1): {
        (0, 0, 0, 0, 0, 0, 0, 0): {4: 1},
        (0, 0, 0, 0, 0, 0, 0, 1): {0: 1},
        (0, 0, 0, 0, 0, 0, 1, 0): {1: 1, 2: 1},
        (0, 1, 0, 0, 0, 0, 0, 0): {1: 1},
        (1, 0, 0, 0, 0, 0, 0, 0): {2: 1, 3: 1},
    },
    ('F4', 1, 1): {
        (0, 0, 0, 0): {1: 1},
        (1, 0, 0, 0): {0: 1},
    },
    ('F4', 2, 1): {
        (0, 0, 0, 0): {3: 1},
        (0, 0, 0, 2): {1: 1},
        (0, 1, 0, 0): {0: 1},
        (1, 0, 0, 0): {1: 1, 2: 1},
    },
    ('F4', 3, 1): {
        (0, 0, 0, 1): {1: 1},
        (0, 0, 1, 0): {0: 1},
    },
    ('F4', 3, 2): {
        (0, 0, 0, 0): {4: 1, 6: 1},
        (0, 0, 0, 2): {2: 2, 3: 1, 4: 1},
        (0, 0, 1, 0): {3: 1},
        (0, 0, 1, 1): {1: 1, 2: 1},
        (0, 0, 2, 0): {0: 1},
        (0, 1, 0, 0): {1: 1, 2: 1, 3: 1},
        (1, 0, 0, 0): {3: 2, 4: 1, 5: 1},
        (1, 0, 0, 2): {1: 1},
        (2, 0, 0, 0): {2: 1},
    },
    ('F4', 4, 1): {
        (0, 0, 0, 1): {0: 1},
    },
    ('G2', 1, 1): {
        (0, 0): {1: 1},
        (1, 0): {0: 1},
    },
    ('G2', 2, 1): {
        (0, 1): {0: 1},
    },
}
