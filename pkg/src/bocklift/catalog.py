"""Embedded code fixtures."""
from __future__ import annotations

from itertools import combinations

from .css_model import CssCode
from .errors import UnknownCode

_HAMMING = [
    [0, 0, 0, 1, 1, 1, 1],
    [0, 1, 1, 0, 0, 1, 1],
    [1, 0, 1, 0, 1, 0, 1],
]


def _rm15():
    # columns are the nonzero 4-bit strings 1..15, most significant bit in row 0
    cols = [[(c >> (3 - i)) & 1 for i in range(4)] for c in range(1, 16)]
    x_rows = [[col[i] for col in cols] for i in range(4)]
    z_rows = list(x_rows)
    for a, b in combinations(range(4), 2):
        z_rows.append([x & y for x, y in zip(x_rows[a], x_rows[b])])
    return x_rows, z_rows


def _shor9():
    hx = [
        [1, 1, 1, 1, 1, 1, 0, 0, 0],
        [0, 0, 0, 1, 1, 1, 1, 1, 1],
    ]
    hz = []
    for block in range(3):
        for j in range(2):
            row = [0] * 9
            row[3 * block + j] = row[3 * block + j + 1] = 1
            hz.append(row)
    return hx, hz


def _fixtures():
    rm_x, rm_z = _rm15()
    shor_x, shor_z = _shor9()
    return {
        "rep3": (3, [], [[1, 1, 0], [0, 1, 1]]),
        "c4": (4, [[1, 1, 1, 1]], []),
        "cdep": (4, [[1, 1, 0, 0], [0, 1, 1, 0], [1, 0, 1, 0]], []),
        "steane": (7, _HAMMING, _HAMMING),
        "shor9": (9, shor_x, shor_z),
        "rm15": (15, rm_x, rm_z),
    }


NAMES = ("rep3", "c4", "cdep", "steane", "shor9", "rm15")


def catalog_get(name: str) -> CssCode:
    fixtures = _fixtures()
    if name not in fixtures:
        raise UnknownCode(name)
    n, hx, hz = fixtures[name]
    return CssCode.from_lists(name, n, hx, hz)


def catalog_entry(name: str) -> dict:
    """The fixture in code-file form."""
    code = catalog_get(name)
    return {
        "name": code.name,
        "n": code.n,
        "hx": code.hx.tolist(),
        "hz": code.hz.tolist(),
        "entry_exponent": code.entry_exponent,
    }
