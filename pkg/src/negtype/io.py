"""File formats: CSV distance matrices, edge-list tree files, JSON round-trips."""

from __future__ import annotations

import csv
import io as _io
import json

import numpy as np

from .errors import AsymmetricMatrix, NotATree
from .space import FiniteSemiMetricSpace, from_matrix, gen_tree

__all__ = [
    "read_matrix_csv",
    "write_matrix_csv",
    "read_tree_edge_list",
    "read_tree_edges",
    "space_to_json",
    "space_from_json",
]


def _is_number(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def read_matrix_csv(path: str) -> FiniteSemiMetricSpace:
    """Read a square distance matrix from CSV.

    A first row starting with ``#`` is a label header (the form this module
    writes, safe even for all-numeric labels). Otherwise a first row with any
    non-numeric cell is taken as a header; remaining rows must be numeric and
    square.
    """
    with open(path, newline="") as fh:
        rows = [[cell.strip() for cell in row] for row in csv.reader(fh) if row]
    if not rows:
        raise AsymmetricMatrix(f"{path}: empty file")
    labels = None
    if rows[0][0].startswith("#"):
        labels = [rows[0][0].lstrip("# ")] + rows[0][1:]
        rows = rows[1:]
    elif any(not _is_number(cell) for cell in rows[0]):
        labels = [cell for cell in rows[0] if cell != ""]
        rows = rows[1:]
    if not rows:
        raise AsymmetricMatrix(f"{path}: header but no data rows")
    try:
        data = [[float(cell) for cell in row] for row in rows]
    except ValueError as exc:
        raise AsymmetricMatrix(f"{path}: non-numeric matrix entry ({exc})") from exc
    widths = {len(row) for row in data}
    if len(widths) != 1 or widths.pop() != len(data):
        raise AsymmetricMatrix(f"{path}: rows do not form a square matrix")
    if labels is not None and len(labels) != len(data):
        raise AsymmetricMatrix(
            f"{path}: header has {len(labels)} labels for {len(data)} rows"
        )
    return from_matrix(data, labels=labels)


def write_matrix_csv(space: FiniteSemiMetricSpace, include_header: bool = True) -> str:
    """Render a space as CSV text, labels in a leading ``#`` header row."""
    buf = _io.StringIO()
    if include_header:
        buf.write("# " + ",".join(space.label(i) for i in range(space.n)) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    for row in space.dist:
        writer.writerow([format(x, ".17g") for x in row])
    return buf.getvalue()


def read_tree_edge_list(path: str) -> list[tuple[int, int, float]]:
    """Parse whitespace-separated ``u v weight`` lines into an edge list.

    Blank lines and lines starting with ``#`` are skipped. Vertex ids are
    integers; weights are positive floats.
    """
    edges = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise NotATree(f"{path}:{lineno}: expected 'u v weight', got {line!r}")
            try:
                edges.append((int(parts[0]), int(parts[1]), float(parts[2])))
            except ValueError as exc:
                raise NotATree(f"{path}:{lineno}: {exc}") from exc
    return edges


def read_tree_edges(path: str) -> FiniteSemiMetricSpace:
    """Read a tree file and return its path metric space."""
    return gen_tree(read_tree_edge_list(path))


def space_to_json(space: FiniteSemiMetricSpace) -> str:
    return json.dumps(space.to_dict(), indent=2, sort_keys=True)


def space_from_json(text: str) -> FiniteSemiMetricSpace:
    obj = json.loads(text)
    d = np.asarray(obj["dist"], dtype=float)
    return from_matrix(d, labels=obj.get("labels"))
