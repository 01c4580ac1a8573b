"""CSV/JSON input validation for the figure kinds.

Each figure kind requires a fixed column set; anything missing (or an
empty table) is rejected before any file is opened for writing.
"""

from __future__ import annotations

import csv
import json


class SchemaError(ValueError):
    """Input artifact does not match the expected schema."""


COMPARE_COLUMNS = {"p", "q", "h", "min_pd", "min_sigma", "min_pc", "d", "D"}
BANDS_COLUMNS = {"p", "q", "h", "band_lo", "band_hi"}
LONG_COLUMNS = {"p", "q", "h", "theta1", "theta2", "k", "lambda"}
BS_COMPARE_COLUMNS = {"potential", "kinetic", "h", "e_spec", "e_bs", "diff"}
SCALING_COLUMNS = {"potential", "kinetic", "h", "N_final", "min_eig"}

REQUIRED = {
    "butterfly": [BANDS_COLUMNS, LONG_COLUMNS],
    "ratio": [COMPARE_COLUMNS],
    "loglog": [COMPARE_COLUMNS],
    "bs-compare": [BS_COMPARE_COLUMNS],
    "scaling": [SCALING_COLUMNS],
}


def read_rows(path) -> list[dict[str, str]]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def validate(kind: str, path) -> list[dict[str, str]]:
    """Rows of a CSV whose header matches one of the kind's column sets."""
    if kind not in REQUIRED:
        raise SchemaError(f"unknown figure kind {kind!r}")
    rows = read_rows(path)
    have = set(rows[0])
    for want in REQUIRED[kind]:
        if want <= have:
            return rows
    expected = " or ".join(",".join(sorted(w)) for w in REQUIRED[kind])
    raise SchemaError(
        f"{path}: columns {sorted(have)} do not match {kind} "
        f"(need {expected})")


def load_fits(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read fits file {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise SchemaError(f"{path}: expected a JSON object")
    return payload
