"""Self-describing output records with lossless exact values.

Exact dyadic rationals serialize as {"numerator": <decimal string>,
"exponent": <int>} plus a binary64 mirror, never as a float alone, so
records round-trip without loss.  Wall-clock timing and execution knobs
(thread count, segment size) live in a separate "execution" object:
everything outside it is byte-stable for identical inputs and seed.
"""

from __future__ import annotations

import json
from typing import Any

import mpmath as mp

from .dyadic import DyadicRational

SCHEMA_VERSION = "1"
HP_DIGITS = 25  # significant digits for extended-precision mirrors


def dyadic_to_json(value: DyadicRational) -> dict[str, Any]:
    return {
        "numerator": str(value.numerator),
        "exponent": value.exponent,
        "float": float(value),
    }


def dyadic_from_json(obj: dict[str, Any]) -> DyadicRational:
    return DyadicRational(int(obj["numerator"]), int(obj["exponent"]))


def hp_str(value: mp.mpf) -> str:
    """Extended-precision value as a decimal string (25 significant digits)."""
    return mp.nstr(value, HP_DIGITS, strip_zeros=False)


def make_record(
    command: str,
    inputs: dict[str, Any],
    results: dict[str, Any],
    *,
    seed: int,
    threads: int,
    segment_size: int,
    seconds: float,
) -> dict[str, Any]:
    from . import __version__

    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "execution": {
            "threads": threads,
            "segment_size": segment_size,
            "seconds": seconds,
        },
        "provenance": {"library": f"sqshift {__version__}", "seed": seed},
    }


def dump_json(record: dict[str, Any]) -> str:
    return json.dumps(record, indent=2) + "\n"


def strip_execution(record: dict[str, Any]) -> dict[str, Any]:
    """Copy of a record without the run-variable execution block."""
    return {k: v for k, v in record.items() if k != "execution"}


def format_csv(header: list[str], rows: list[list[Any]], footers: list[str]) -> str:
    """Minimal deterministic CSV: '.' decimals, no quoting needs, header
    mandatory, '#'-prefixed footer comment lines."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_csv_cell(v) for v in row))
    lines.extend(f"# {f}" for f in footers)
    return "\n".join(lines) + "\n"


def _csv_cell(v: Any) -> str:
    if isinstance(v, float):
        return repr(v)  # shortest round-trip form
    return str(v)
