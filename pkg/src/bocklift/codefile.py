"""JSON code files and the ``catalog:`` URI scheme.

Schema (exact keys)::

    {"name": "steane", "n": 7, "hx": [[...], ...], "hz": [[...], ...],
     "entry_exponent": 1}

``entry_exponent`` is optional and defaults to 1.
"""
from __future__ import annotations

import json
from pathlib import Path

from .catalog import catalog_entry, catalog_get
from .css_model import CssCode, validate
from .errors import ParseError

KEYS = ("name", "n", "hx", "hz", "entry_exponent")
CATALOG_PREFIX = "catalog:"


def _key_line(text: str, key: str):
    needle = f'"{key}"'
    for lineno, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return lineno
    return None


def _matrix(doc, key, n, modulus, text):
    rows = doc[key]
    line = _key_line(text, key)
    if not isinstance(rows, list):
        raise ParseError("expected an array of rows", line, key)
    for i, row in enumerate(rows):
        where = f"{key}[{i}]"
        if not isinstance(row, list):
            raise ParseError("expected an array of integers", line, where)
        if len(row) != n:
            raise ParseError(f"row has length {len(row)}, expected n={n}", line, where)
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, int):
                raise ParseError(f"entry {x!r} is not an integer", line, f"{where}[{j}]")
            if not 0 <= x < modulus:
                raise ParseError(
                    f"entry {x} is outside [0, {modulus})", line, f"{where}[{j}]"
                )
    return rows


def parse_code_file(data, check: bool = True) -> CssCode:
    """Parse a UTF-8 JSON code file; with ``check`` the code is validated."""
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from None
    else:
        text = data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", 1)
    unknown = sorted(set(doc) - set(KEYS))
    if unknown:
        raise ParseError("unknown key", _key_line(text, unknown[0]), unknown[0])
    for key in ("name", "n", "hx", "hz"):
        if key not in doc:
            raise ParseError("missing required key", None, key)
    if not isinstance(doc["name"], str):
        raise ParseError("name must be text", _key_line(text, "name"), "name")
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ParseError("n must be a non-negative integer", _key_line(text, "n"), "n")
    e = doc.get("entry_exponent", 1)
    if isinstance(e, bool) or not isinstance(e, int) or e < 1:
        raise ParseError(
            "entry_exponent must be a positive integer",
            _key_line(text, "entry_exponent"),
            "entry_exponent",
        )
    hx = _matrix(doc, "hx", n, 1 << e, text)
    hz = _matrix(doc, "hz", n, 1 << e, text)
    code = CssCode.from_lists(doc["name"], n, hx, hz, e)
    if check:
        validate(code)
    return code


def render_code_file(code: CssCode) -> str:
    doc = {
        "name": code.name,
        "n": code.n,
        "hx": code.hx.tolist(),
        "hz": code.hz.tolist(),
        "entry_exponent": code.entry_exponent,
    }
    return json.dumps(doc, indent=2) + "\n"


def load_code(locator: str, check: bool = True) -> CssCode:
    """Load ``catalog:<name>`` or a path to a code file."""
    if locator.startswith(CATALOG_PREFIX):
        code = catalog_get(locator[len(CATALOG_PREFIX) :])
        if check:
            validate(code)
        return code
    try:
        data = Path(locator).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {locator}: {exc.strerror}") from None
    return parse_code_file(data, check=check)


__all__ = ["parse_code_file", "render_code_file", "load_code", "catalog_entry"]
