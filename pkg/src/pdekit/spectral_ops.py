"""Differentiation matrices for the two collocation bases, and the
diagonal-dominance check for elliptic coefficient matrices.

Fourier basis (N = n+1 modes, m = floor(n/2)): the first-derivative matrix
is diag(i (k-m) pi), and the second-derivative matrix is its square.  The
closed second-order operator replaces the zero row at k = m with an all-ones
row (point evaluation of the mean mode constraint).

Chebyshev basis: the first-derivative matrix is upper triangular with entries
2r/sigma_k at (k, r) for k+r odd, r > k (sigma_0 = 2, otherwise 1); its
square has interior entries r(r^2 - k^2)/sigma_k for k+r even, r > k+1 and
two zero rows at n-1, n.  The closed operator replaces those rows with point
evaluation at the interval ends: row n is all ones (value at +1, T_k(1) = 1)
and row n-1 alternates (-1)^k (value at -1).

Storage is sparse: the Fourier matrices are diagonal apart from one closure
row, the Chebyshev ones keep the parity-structured triangle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import BudgetExceeded, ParameterError

__all__ = [
    "DiffMatrix",
    "diff_matrix",
    "multi_diff",
    "boundary_row_indices",
    "gdd_check",
]

BASES = ("fourier", "chebyshev")
SYSTEM_BUDGET = 1 << 17  # max rows of an assembled operator (storage is sparse)


@dataclass(frozen=True)
class DiffMatrix:
    basis: str
    order: int
    n: int
    with_boundary_rows: bool
    sparse: sp.csr_matrix

    def dense(self) -> np.ndarray:
        return self.sparse.toarray()


def _sigma(k: int) -> float:
    return 2.0 if k == 0 else 1.0


def _cheb_first(n: int) -> sp.csr_matrix:
    rows, cols, vals = [], [], []
    for k in range(n + 1):
        for r in range(k + 1, n + 1):
            if (k + r) % 2 == 1:
                rows.append(k)
                cols.append(r)
                vals.append(2.0 * r / _sigma(k))
    return sp.csr_matrix((vals, (rows, cols)), shape=(n + 1, n + 1))


def _cheb_second(n: int) -> sp.csr_matrix:
    rows, cols, vals = [], [], []
    for k in range(n + 1):
        for r in range(k + 2, n + 1):
            if (k + r) % 2 == 0:
                rows.append(k)
                cols.append(r)
                vals.append(r * (r * r - k * k) / _sigma(k))
    return sp.csr_matrix((vals, (rows, cols)), shape=(n + 1, n + 1))


def boundary_row_indices(basis: str, n: int) -> tuple:
    """Row indices carrying point-evaluation closures in the closed operator.

    Chebyshev has one row per interval end; Fourier has the single center
    row (index pairs with no second entry use the same row for both ends).
    Returned as (plus_index, minus_index): the rows receiving data from the
    +1 and -1 ends respectively.
    """
    if basis == "chebyshev":
        return (n, n - 1)
    if basis == "fourier":
        m = n // 2
        return (m, m)
    raise ParameterError(f"basis must be one of {BASES}, got {basis!r}")


def diff_matrix(basis: str, order: int, n: int, with_boundary_rows: bool = False) -> DiffMatrix:
    """Differentiation matrix of the given order, optionally closed.

    Closure rows are only defined for the second-order operator; asking for
    them at order 1 is rejected.
    """
    if basis not in BASES:
        raise ParameterError(f"basis must be one of {BASES}, got {basis!r}")
    if order not in (1, 2):
        raise ParameterError(f"order must be 1 or 2, got {order}")
    min_n = 2 if basis == "chebyshev" else 1
    if n < min_n:
        raise ParameterError(f"{basis} needs n >= {min_n}, got {n}")
    if with_boundary_rows and order == 1:
        raise ParameterError("closure rows are defined for the second-order operator only")

    N = n + 1
    if basis == "fourier":
        m = n // 2
        freq = (np.arange(N) - m) * np.pi
        if order == 1:
            M = sp.diags(1j * freq).tocsr()
        else:
            M = sp.diags((-(freq ** 2)).astype(complex)).tocsr().tolil()
            if with_boundary_rows:
                M[m, :] = np.ones(N)
            M = M.tocsr()
    else:
        if order == 1:
            M = _cheb_first(n)
        else:
            M = _cheb_second(n).tolil()
            if with_boundary_rows:
                M[n, :] = np.ones(N)
                M[n - 1, :] = (-1.0) ** np.arange(N)
            M = M.tocsr()
    return DiffMatrix(basis=basis, order=order, n=int(n),
                      with_boundary_rows=bool(with_boundary_rows), sparse=M)


def multi_diff(pattern, basis: str, n: int, d: int) -> sp.csr_matrix:
    """Tensor operator for one term of a pure second-order PDE.

    pattern is a length-d multi-index summing to 2: a single 2 selects the
    closed second-derivative operator on that axis (identity elsewhere); a
    pair of 1s selects the plain first-derivative matrix on both axes with
    no closure rows anywhere.
    """
    pattern = tuple(int(p) for p in pattern)
    if len(pattern) != d:
        raise ParameterError(f"pattern length {len(pattern)} != d={d}")
    if any(p < 0 for p in pattern) or sum(pattern) != 2:
        raise ParameterError(f"pattern must be nonnegative and sum to 2, got {pattern}")
    N = n + 1
    if N ** d > SYSTEM_BUDGET:
        raise BudgetExceeded(f"operator of size {N ** d} exceeds budget")
    dtype = complex if basis == "fourier" else float
    I = sp.identity(N, dtype=dtype, format="csr")
    if 2 in pattern:
        D = diff_matrix(basis, 2, n, with_boundary_rows=True).sparse
    else:
        D = diff_matrix(basis, 1, n).sparse
    out = sp.identity(1, dtype=dtype, format="csr")
    for p in pattern:
        out = sp.kron(out, D if p > 0 else I, format="csr")
    return out


def gdd_check(A) -> dict:
    """Diagonal-dominance margin of a coefficient matrix.

    Returns {"C", "norm_sigma", "norm_star", "accepted"} where
    C = 1 - sum_j (1/|A_jj|) sum_{j2 != j} |A_{j,j2}|, norm_sigma is the sum
    of all |entries| and norm_star the sum of diagonal magnitudes.  Operators
    with C <= 0 are flagged rejected.  A zero diagonal entry or diagonal
    entries of mixed sign (ellipticity violation) are structural errors.
    """
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ParameterError(f"coefficient matrix must be square, got shape {A.shape}")
    diag = np.diag(A)
    if np.any(diag == 0):
        raise ParameterError("zero diagonal coefficient")
    re = diag.real if np.iscomplexobj(diag) else diag
    if np.any(re > 0) and np.any(re < 0):
        raise ParameterError("diagonal coefficients of mixed sign (not elliptic)")
    C = 1.0 - sum(
        (np.abs(A[j]).sum() - abs(A[j, j])) / abs(A[j, j]) for j in range(A.shape[0]))
    return {
        "C": float(C),
        "norm_sigma": float(np.abs(A).sum()),
        "norm_star": float(np.abs(diag).sum()),
        "accepted": bool(C > 0),
    }
