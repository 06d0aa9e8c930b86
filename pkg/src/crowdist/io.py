"""Population CSV dumps and JSON metric reports.

Every output embeds the resolved run manifest for provenance: CSV files as
leading ``# key=value`` comment lines, JSON files under a ``manifest`` key.
Floats are serialized with ``repr`` (shortest round-trip form), infinite
crowding distances as the literal token ``inf``, so a dump re-read is
bit-identical to the in-memory population.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import CsvParseError
from .population import Population


def population_header(n_var: int, n_obj: int) -> list[str]:
    return (
        ["id"]
        + [f"x{i + 1}" for i in range(n_var)]
        + [f"f{i + 1}" for i in range(n_obj)]
        + ["rank", "crowding"]
    )


def format_population_csv(population: Population, manifest: dict | None = None) -> str:
    """Render a population as CSV text with an embedded manifest."""
    lines = []
    for key, value in (manifest or {}).items():
        lines.append(f"# {key}={value}")
    lines.append(",".join(population_header(population.n_var, population.n_obj)))
    ranks = population.ranks
    crowd = population.crowding
    for i in range(len(population)):
        cells = [str(i)]
        cells += [repr(float(v)) for v in population.decisions[i]]
        cells += [repr(float(v)) for v in population.objectives[i]]
        cells.append(str(int(ranks[i])) if ranks is not None else "")
        cells.append(repr(float(crowd[i])) if crowd is not None else "")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_population_csv(path, population: Population, manifest: dict | None = None) -> None:
    Path(path).write_text(format_population_csv(population, manifest))


def read_population_csv(path) -> tuple[Population, dict]:
    """Parse a population CSV produced by this package.

    Raises:
        CsvParseError: naming the offending 1-based line number.
    """
    text = Path(path).read_text()
    manifest: dict[str, str] = {}
    header: list[str] | None = None
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if "=" in body:
                key, _, value = body.partition("=")
                manifest[key.strip()] = value.strip()
            continue
        if header is None:
            header = [c.strip() for c in line.split(",")]
            _check_header(header, lineno)
            continue
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != len(header):
            raise CsvParseError(lineno, f"expected {len(header)} cells, got {len(cells)}")
        rows.append((lineno, cells))
    if header is None:
        raise CsvParseError(1, "missing header row")
    if not rows:
        raise CsvParseError(len(text.splitlines()), "no population rows")

    n_var = sum(1 for c in header if c.startswith("x"))
    n_obj = sum(1 for c in header if c.startswith("f"))
    decisions = np.empty((len(rows), n_var))
    objectives = np.empty((len(rows), n_obj))
    ranks = np.empty(len(rows), dtype=np.int64)
    crowding = np.empty(len(rows), dtype=np.float64)
    for r, (lineno, cells) in enumerate(rows):
        try:
            decisions[r] = [float(c) for c in cells[1 : 1 + n_var]]
            objectives[r] = [float(c) for c in cells[1 + n_var : 1 + n_var + n_obj]]
            ranks[r] = int(cells[1 + n_var + n_obj])
            crowding[r] = float(cells[2 + n_var + n_obj])
        except ValueError as exc:
            raise CsvParseError(lineno, str(exc)) from exc
        if math.isnan(crowding[r]) or crowding[r] < 0:
            raise CsvParseError(lineno, f"invalid crowding value {cells[2 + n_var + n_obj]!r}")
    return Population(decisions=decisions, objectives=objectives, ranks=ranks, crowding=crowding), manifest


def _check_header(header: list[str], lineno: int) -> None:
    if not header or header[0] != "id" or header[-2:] != ["rank", "crowding"]:
        raise CsvParseError(lineno, "header must be id,x1..xn,f1..fm,rank,crowding")
    n_var = sum(1 for c in header if c.startswith("x"))
    n_obj = sum(1 for c in header if c.startswith("f"))
    if n_var < 1 or n_obj < 2:
        raise CsvParseError(lineno, "header must list x1.. and at least f1,f2")
    expected = ["id"] + [f"x{i+1}" for i in range(n_var)] + [f"f{i+1}" for i in range(n_obj)] + ["rank", "crowding"]
    if header != expected:
        raise CsvParseError(lineno, "header columns out of order")


def json_ready(obj):
    """Recursively convert payloads to strict-JSON values.

    Non-finite floats become the tokens ``inf`` / ``-inf`` (strict JSON has
    no infinity literal); numpy scalars and arrays become plain Python.
    """
    if isinstance(obj, dict):
        return {k: json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_ready(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [json_ready(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if math.isnan(v):
            raise ValueError("refusing to serialize NaN")
        return v
    return obj


def write_json(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(json_ready(payload), indent=2, sort_keys=True,
                                     allow_nan=False) + "\n")
