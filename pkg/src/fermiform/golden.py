"""Worked C_2 example: B^{1,2} x (B^{2,1})^3 x (B^{1,1})^2 and W^(1)_2 x (W^(2)_1)^3 x (W^(1)_1)^2.

Element names follow the crystal rendering ("1-2" is 1 2bar, "phi" the empty
tableau).  Elements of B^{2,1} use the short names a..e.
"""

from __future__ import annotations

from .crystals import CrystalId, kr_crystal

C2_COLUMN_NAMES = {"a": "12", "b": "1-2", "c": "2-2", "d": "2-1", "e": "-2-1"}
_COLUMN_BACK = {v: k for k, v in C2_COLUMN_NAMES.items()}

CRYSTALS = "C2:1,2 C2:2,1x3 C2:1,1x2"
SPEC = {"algebra": "C2", "factors": [{"a": 1, "s": 2}, {"a": 2, "s": 1, "count": 3}, {"a": 1, "s": 1, "count": 2}]}

# polynomials in q^{-1}: exponent -> coefficient
X_LEVEL_1 = {15: 1}
X_LEVEL_2 = {8: 1, 9: 2, 10: 2, 11: 3, 12: 2, 13: 1, 15: 1}
X_CLASSICAL = {6: 1, 7: 2, 8: 2, 9: 3, 10: 2, 11: 3, 12: 2, 13: 1, 15: 1}

CONFIGURATIONS_TOTAL = 105

# (path, -E, eps_0); eps_0 is 3, 2, 1 on the three blocks
PATHS = [
    ("11 a c e -1 -1", 7, 3),
    ("11 a e c -1 -1", 8, 3),
    ("11 a d e -2 -1", 6, 3),
    ("11 a e d -2 -1", 7, 3),
    ("11 c a e -1 -1", 9, 3),
    ("11 c c c -1 -1", 12, 2),
    ("11 c c d -2 -1", 11, 2),
    ("11 c d b -1 -1", 9, 2),
    ("11 c d e 1 -1", 11, 2),
    ("11 d a e -2 -1", 10, 2),
    ("11 d b c -1 -1", 8, 2),
    ("11 d b d -2 -1", 9, 2),
    ("11 d e a -2 -1", 10, 2),
    ("phi a a e -2 -1", 11, 2),
    ("phi a b c -1 -1", 13, 2),
    ("phi a b d -2 -1", 12, 2),
    ("phi a e a -2 -1", 15, 1),
]

# (m^(1), m^(2)), (p^(1), p^(2)), contribution in q^{-1}
CONFIG_ROWS = [
    (((1, 0, 0, 0, 0, 1), (0, 1, 1)), ((1, 2, 2, 2, 1, 0), (2, 0, 0)), {6: 1, 7: 1}),
    (((1, 0, 0, 0, 0, 1), (2, 0, 1)), ((2, 4, 3, 2, 1, 0), (0, 0, 0)), {7: 1, 8: 1, 9: 1}),
    (((0, 0, 1, 1), (1, 2)), ((2, 2, 0, 0), (1, 0)), {8: 1, 9: 1}),
    (((1, 1, 0, 1), (1, 2)), ((0, 0, 0, 0), (2, 0)), {9: 1, 10: 1, 11: 1}),
    (((1, 1, 0, 1), (3, 1)), ((1, 2, 1, 0), (0, 0)), {10: 1, 11: 2, 12: 2, 13: 1}),
    (((1, 3), (5,)), ((0, 0), (0,)), {15: 1}),
]

_ROW = "1 2 -2 -1"
_COL = "a b c d e"
_SYM = "11 12 1-2 1-1 22 2-2 2-1 -2-2 -2-1 -1-1 phi"

# (left, right, columns, rows); a row is "b1: images | -H values"; identity R
# tables carry only -H values
R_TABLES = [
    ("C2:1,1", "C2:1,1", _ROW, """
1: 0 1 1 1
2: 0 0 1 1
-2: 0 0 0 1
-1: 0 0 0 0
"""),
    ("C2:2,1", "C2:2,1", _COL, """
a: 0 1 1 1 2
b: 0 0 1 1 1
c: 0 0 1 1 1
d: 0 0 0 0 1
e: 0 0 0 0 0
"""),
    ("C2:1,2", "C2:1,2", _SYM, """
11: 0 1 1 2 2 2 2 2 2 2 1
12: 0 1 1 2 1 2 2 2 2 2 1
1-2: 0 1 1 2 1 1 2 1 2 2 1
1-1: 0 1 1 2 1 1 2 1 2 2 1
22: 0 0 1 1 0 2 1 2 2 2 1
2-2: 0 0 1 1 0 2 1 2 2 2 1
2-1: 0 0 1 1 0 1 1 1 1 1 1
-2-2: 0 0 0 1 0 0 1 0 1 2 1
-2-1: 0 0 0 1 0 0 1 0 1 1 1
-1-1: 0 0 0 0 0 0 0 0 0 0 1
phi: 1 1 1 1 1 1 1 1 1 1 2
"""),
    ("C2:2,1", "C2:1,1", _ROW, """
a: 1xa 2xa 1xc 1xd | 0 0 1 1
b: 1xb -2xa -2xb 1xe | 0 0 0 1
c: 2xb -1xa -1xb 2xe | 0 0 0 1
d: 2xc 2xd -1xc -1xd | 0 0 0 0
e: -2xc -2xd -2xe -1xe | 0 0 0 0
"""),
    ("C2:1,2", "C2:1,1", _ROW, """
11: 1x11 1x12 1x1-2 1xphi | 0 1 1 1
12: 2x11 1x22 2x1-2 2xphi | 0 1 1 1
1-2: -2x11 1x2-2 1x-2-2 -2xphi | 0 1 1 1
1-1: -1x11 2x2-2 2x-2-2 -1xphi | 0 1 1 1
22: 2x12 2x22 2x1-1 2x2-1 | 0 0 1 1
2-2: -2x12 -2x22 -2x1-1 -2x2-1 | 0 0 1 1
2-1: -1x12 -1x22 2x-2-1 2x-1-1 | 0 0 1 1
-2-2: -2x1-2 -2x2-2 -2x-2-2 -2x-2-1 | 0 0 0 1
-2-1: -1x1-2 -1x2-2 -1x-2-2 -2x-1-1 | 0 0 0 1
-1-1: -1x1-1 -1x2-1 -1x-2-1 -1x-1-1 | 0 0 0 0
phi: 1x1-1 1x2-1 1x-2-1 1x-1-1 | 1 1 1 1
"""),
    ("C2:1,2", "C2:2,1", _COL, """
11: ax11 bx11 ax1-2 axphi bxphi | 0 0 1 1 1
12: ax12 cx11 ax1-1 ax2-1 cxphi | 0 0 1 1 1
1-2: bx12 bx1-2 bx1-1 bx2-1 bx-2-1 | 0 0 1 1 1
1-1: cx12 cx1-2 cx1-1 cx2-1 cx-2-1 | 0 0 1 1 1
22: ax22 dx11 dx12 dx22 dxphi | 0 0 0 0 1
2-2: bx22 ex11 ex12 ex22 exphi | 0 0 0 0 1
2-1: cx22 dx1-2 dx1-1 dx2-1 cx-1-1 | 0 0 0 0 1
-2-2: bx2-2 bx-2-2 ex1-2 ex2-2 ex-2-2 | 0 0 0 0 0
-2-1: cx2-2 cx-2-2 ex1-1 ex2-1 ex-2-1 | 0 0 0 0 0
-1-1: dx2-2 dx-2-2 dx-2-1 dx-1-1 ex-1-1 | 0 0 0 0 0
phi: ax2-2 ax-2-2 ax-2-1 ax-1-1 bx-1-1 | 1 1 1 1 1
"""),
]


def element_name(cid: CrystalId, b) -> str:
    text = kr_crystal(cid).render(b)
    if str(cid) == "C2:2,1":
        return _COLUMN_BACK.get(text, text)
    return text


def element_from_name(cid: CrystalId, name: str):
    if str(cid) == "C2:2,1":
        name = C2_COLUMN_NAMES.get(name, name)
    return kr_crystal(cid).parse(name)


def parse_r_table(entry) -> dict[tuple[str, str], tuple[tuple[str, str], int]]:
    """{(b1, b2): ((b2', b1'), -H)} with element names as in the reference tables."""
    left, right, cols, body = entry
    cols = cols.split()
    out = {}
    for line in body.strip().splitlines():
        b1, rest = line.split(":", 1)
        if "|" in rest:
            imgs, hs = rest.split("|")
            imgs = [tuple(x.split("x")) for x in imgs.split()]
        else:
            hs = rest
            imgs = [(b1, c) for c in cols]
        for b2, img, h in zip(cols, imgs, hs.split()):
            out[(b1, b2)] = (img, int(h))
    return out
