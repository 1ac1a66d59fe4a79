"""Plain-text coordinate serialization for the matrices the tools exchange.

Format: one header line "rows cols nnz", then one line per stored entry,
"i j re im" with 1-indexed positions and full-precision floats (repr), so
a write/read cycle is bit-exact.  Entries appear in row-major order.
"""

from __future__ import annotations

import io

import numpy as np
import scipy.sparse as sp

from .errors import ParameterError

__all__ = ["write_coordinate", "read_coordinate", "format_coordinate", "parse_coordinate"]


def format_coordinate(M) -> str:
    """Serialize a dense array or sparse matrix to the coordinate text."""
    A = sp.coo_matrix(M)
    order = np.lexsort((A.col, A.row))
    lines = [f"{A.shape[0]} {A.shape[1]} {A.nnz}"]
    for idx in order:
        v = complex(A.data[idx])
        lines.append(f"{A.row[idx] + 1} {A.col[idx] + 1} {v.real!r} {v.imag!r}")
    return "\n".join(lines) + "\n"


def parse_coordinate(text: str) -> sp.csr_matrix:
    """Inverse of format_coordinate; returns complex CSR."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParameterError("empty coordinate text")
    head = lines[0].split()
    if len(head) != 3:
        raise ParameterError(f"malformed header {lines[0]!r}")
    rows, cols, nnz = (int(t) for t in head)
    if len(lines) - 1 != nnz:
        raise ParameterError(f"header promises {nnz} entries, found {len(lines) - 1}")
    ii = np.empty(nnz, dtype=int)
    jj = np.empty(nnz, dtype=int)
    vv = np.empty(nnz, dtype=complex)
    for t, ln in enumerate(lines[1:]):
        parts = ln.split()
        if len(parts) != 4:
            raise ParameterError(f"malformed entry line {ln!r}")
        i, j = int(parts[0]), int(parts[1])
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise ParameterError(f"entry ({i}, {j}) outside {rows} x {cols}")
        ii[t], jj[t] = i - 1, j - 1
        vv[t] = complex(float(parts[2]), float(parts[3]))
    return sp.coo_matrix((vv, (ii, jj)), shape=(rows, cols)).tocsr()


def write_coordinate(M, path_or_file) -> None:
    text = format_coordinate(M)
    if isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__"):
        with open(path_or_file, "w") as fh:
            fh.write(text)
    else:
        path_or_file.write(text)


def read_coordinate(path_or_file) -> sp.csr_matrix:
    if isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__"):
        with open(path_or_file) as fh:
            return parse_coordinate(fh.read())
    if isinstance(path_or_file, io.TextIOBase) or hasattr(path_or_file, "read"):
        return parse_coordinate(path_or_file.read())
    raise ParameterError("expected a path or readable file object")
