"""JSON module files with exact coordinates.

Critical values are written as strings ("1", "2.5", "-1/3") so that no
binary floating point ever enters the pipeline; plain JSON integers are
also accepted.  Structure maps are row-major lists of rows whose shapes
must match the piece dimensions.
"""

from __future__ import annotations

import json
from pathlib import Path

from .gfp import FieldSpec, Mat
from .intervals import format_exact, parse_exact
from .modules import GridModule


class ModuleFileError(ValueError):
    """A module file that does not even parse into the schema."""


def parse_module_text(text: str) -> GridModule:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModuleFileError(f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ModuleFileError("module file must be a JSON object")
    for key in ("field_characteristic", "critical_values", "piece_dims", "maps"):
        if key not in raw:
            raise ModuleFileError(f"missing key {key!r}")
    char = raw["field_characteristic"]
    if not isinstance(char, int):
        raise ModuleFileError("field_characteristic must be an integer")
    criticals = []
    for value in raw["critical_values"]:
        if isinstance(value, bool) or not isinstance(value, (int, str)):
            raise ModuleFileError(
                "critical values must be exact strings or integers"
            )
        criticals.append(parse_exact(str(value)))
    dims = raw["piece_dims"]
    if (not isinstance(dims, list)
            or any(isinstance(d, bool) or not isinstance(d, int) for d in dims)):
        raise ModuleFileError("piece_dims must be a list of integers")
    raw_maps = raw["maps"]
    if not isinstance(raw_maps, list):
        raise ModuleFileError("maps must be a list of matrices")

    field = FieldSpec(char)  # invariant check: primality
    if len(raw_maps) != max(len(dims) - 1, 0):
        raise ValueError("maps length must be 2n for 2n+1 piece dims")
    maps = []
    for k, rows in enumerate(raw_maps):
        if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
            raise ModuleFileError(f"map {k} must be a list of rows")
        expect_rows = dims[k + 1] if k + 1 < len(dims) else 0
        expect_cols = dims[k]
        if len(rows) != expect_rows:
            raise ValueError(
                f"map {k} has {len(rows)} rows, piece_dims require {expect_rows}"
            )
        for r in rows:
            if len(r) != expect_cols:
                raise ValueError(
                    f"map {k} row width {len(r)}, piece_dims require {expect_cols}"
                )
            if any(isinstance(x, bool) or not isinstance(x, int) for x in r):
                raise ModuleFileError(f"map {k} entries must be integers")
        maps.append(Mat.from_rows(rows, field, cols=expect_cols))
    return GridModule(field, tuple(criticals), tuple(dims), tuple(maps))


def parse_module_file(path: str | Path) -> GridModule:
    return parse_module_text(Path(path).read_text())


def module_to_json(v: GridModule) -> str:
    payload = {
        "field_characteristic": v.field.characteristic,
        "critical_values": [format_exact(c) for c in v.criticals],
        "piece_dims": list(v.dims),
        "maps": [m.to_rows() for m in v.maps],
    }
    return json.dumps(payload, indent=2) + "\n"
