"""Plain-text formats.

* edge list: one ``u v [w]`` line per undirected edge, 0-indexed, ``w``
  defaulting to 1; blank lines and lines starting with ``#`` are skipped.
* labels: one integer per line, line ``i`` for vertex ``i``.
* seeds / vertex sets: one vertex index per line.
* seed sets: one line per class, whitespace-separated vertex indices.
* points: one point per row, comma- or whitespace-separated.
"""

import numpy as np

from .errors import DataError
from .graph import build_graph

__all__ = [
    "read_edge_list",
    "write_edge_list",
    "read_labels",
    "write_labels",
    "read_vertex_set",
    "write_vertex_set",
    "read_seed_sets",
    "write_seed_sets",
    "read_points",
]


def _declared_n(path):
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line.startswith("#") and line[1:].strip().startswith("n="):
                try:
                    return int(line[1:].strip()[2:])
                except ValueError:
                    return None
            if line and not line.startswith("#"):
                return None
    return None


def _data_lines(path):
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if line and not line.startswith("#"):
                yield lineno, line


def read_edge_list(path, n=None):
    """Read an edge list.

    ``n`` falls back to a leading ``# n=<count>`` comment, then to one more
    than the largest index seen.
    """
    if n is None:
        n = _declared_n(path)
    edges = []
    top = -1
    for lineno, line in _data_lines(path):
        parts = line.split()
        if len(parts) not in (2, 3):
            raise DataError(f"{path}:{lineno}: expected 'u v [w]', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError as exc:
            raise DataError(f"{path}:{lineno}: {exc}") from None
        edges.append((u, v, w))
        top = max(top, u, v)
    return build_graph(edges, top + 1 if n is None else n)


def write_edge_list(path, g, header=None):
    u, v, w = g.edges()
    with open(path, "w") as fh:
        if header:
            fh.write(f"# {header}\n")
        fh.write(f"# n={g.n}\n")
        for a, b, c in zip(u, v, w):
            fh.write(f"{a} {b} {c:.17g}\n")


def _read_ints(path):
    out = []
    for lineno, line in _data_lines(path):
        try:
            out.append(int(line))
        except ValueError:
            raise DataError(f"{path}:{lineno}: expected an integer, got {line!r}") from None
    return np.asarray(out, dtype=np.int64)


def read_labels(path):
    return _read_ints(path)


def write_labels(path, labels):
    np.savetxt(path, np.asarray(labels, dtype=np.int64), fmt="%d")


def read_vertex_set(path):
    return np.unique(_read_ints(path))


def write_vertex_set(path, S):
    np.savetxt(path, np.asarray(S, dtype=np.int64), fmt="%d")


def read_seed_sets(path):
    sets = []
    for lineno, line in _data_lines(path):
        try:
            sets.append(np.asarray([int(t) for t in line.split()], dtype=np.int64))
        except ValueError:
            raise DataError(f"{path}:{lineno}: expected vertex indices, got {line!r}") from None
    return sets


def write_seed_sets(path, sets):
    with open(path, "w") as fh:
        for S in sets:
            fh.write(" ".join(str(int(i)) for i in S) + "\n")


def read_points(path):
    first = next(_data_lines(path), None)
    if first is None:
        raise DataError(f"{path}: no data rows")
    delim = "," if "," in first[1] else None
    try:
        return np.loadtxt(path, delimiter=delim, comments="#", ndmin=2)
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from None
