"""Method-of-images restrictions of the periodic Laplacian.

A Dirichlet (antisymmetric) or Neumann (symmetric) problem on n sites is the
periodic problem on 2n sites restricted to a symmetry sector.  Site i of the
restricted lattice pairs with its mirror image 2n-1-i (0-indexed; the
published piecewise formulas are 1-indexed, so their correction index i+j-1
reads i+j+1 here and 2n-i-j+1 reads 2n-i-j-1).  The third variant
("dirichlet_alt") reflects through lattice points instead of midpoints: it
lives on a 2n+2 cycle, pairs site i+1 with 2n+1-i, and is stored padded to
(n+1) x (n+1) with a zero final row and column to keep the (n+1)-dimensional
description literal.

Entry formulas, with r_j = 0 for j > k and s = +1 (Neumann), -1 (Dirichlet):

    dirichlet/neumann:  L''_ij = r_|i-j| + s r_{i+j+1} + s r_{2n-i-j-1}
    dirichlet_alt:      L''_ij = r_|i-j| - r_{i+j+2}   - r_{2n-i-j}
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, SymmetryViolation
from .stencil import Stencil

__all__ = [
    "RestrictedLaplacian",
    "restrict",
    "fold_vector",
    "unfold_vector",
]

_BCS = ("neumann", "dirichlet", "dirichlet_alt")


@dataclass(frozen=True)
class RestrictedLaplacian:
    n: int
    bc: str
    matrix: np.ndarray
    sign: int  # +1 symmetric sector, -1 antisymmetric

    @property
    def parent_sites(self) -> int:
        """Size of the periodic lattice this restriction folds."""
        return 2 * self.n + (2 if self.bc == "dirichlet_alt" else 0)


def restrict(s: Stencil, n: int, bc: str) -> RestrictedLaplacian:
    """Restricted Laplacian matrix for the given boundary condition.

    Requires k < n/2 so the two edge corrections cannot collide in one
    entry; at k >= n/2 a tap would fold back onto itself.
    """
    if bc not in _BCS:
        raise ParameterError(f"bc must be one of {_BCS}, got {bc!r}")
    if not s.k < n / 2:
        raise ParameterError(f"edge corrections collide: need k < n/2, got k={s.k}, n={n}")

    def r(j):
        return float(s.exact[j]) if 0 <= j <= s.k else 0.0

    if bc == "dirichlet_alt":
        M = np.zeros((n + 1, n + 1))
        for i in range(n):
            for j in range(n):
                M[i, j] = r(abs(i - j)) - r(i + j + 2) - r(2 * n - i - j)
        return RestrictedLaplacian(n=n, bc=bc, matrix=M, sign=-1)

    sign = 1 if bc == "neumann" else -1
    M = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            M[i, j] = r(abs(i - j)) + sign * (r(i + j + 1) + r(2 * n - i - j - 1))
    return RestrictedLaplacian(n=n, bc=bc, matrix=M, sign=sign)


def _pairing(n: int, bc: str):
    """Index pairs (i, mirror(i)) of the parent lattice, restricted order."""
    if bc == "dirichlet_alt":
        return [(i + 1, 2 * n + 1 - i) for i in range(n)]
    return [(i, 2 * n - 1 - i) for i in range(n)]


def fold_vector(v: np.ndarray, bc: str, n: int | None = None, rtol: float = 1e-10) -> np.ndarray:
    """Coordinates of v in the symmetry-sector basis (e_i + s e_mirror)/sqrt(2).

    v lives on the parent periodic lattice (2n sites, or 2n+2 for
    dirichlet_alt, where the two reflection fixed points must be zero).
    Raises SymmetryViolation when v has a component in the complementary
    sector larger than rtol * ||v||.
    """
    if bc not in _BCS:
        raise ParameterError(f"bc must be one of {_BCS}, got {bc!r}")
    v = np.asarray(v, dtype=float)
    if n is None:
        n = (v.size - 2) // 2 if bc == "dirichlet_alt" else v.size // 2
    expected = 2 * n + (2 if bc == "dirichlet_alt" else 0)
    if v.size != expected:
        raise ParameterError(f"expected a vector of length {expected}, got {v.size}")
    sign = 1 if bc == "neumann" else -1
    pairs = _pairing(n, bc)
    out = np.zeros(n + 1 if bc == "dirichlet_alt" else n)
    scale = np.linalg.norm(v)
    bad = 0.0
    for idx, (i, m) in enumerate(pairs):
        out[idx] = (v[i] + sign * v[m]) / np.sqrt(2.0)
        bad = max(bad, abs(v[i] - sign * v[m]) / np.sqrt(2.0))
    if bc == "dirichlet_alt":
        # reflection fixed points carry no sector freedom
        bad = max(bad, abs(v[0]), abs(v[n + 1]))
    if scale > 0 and bad > rtol * scale:
        raise SymmetryViolation(
            f"component {bad:.3e} in the complementary sector exceeds rtol*||v|| = {rtol * scale:.3e}")
    return out


def unfold_vector(w: np.ndarray, bc: str) -> np.ndarray:
    """Inverse of fold_vector back onto the parent lattice."""
    if bc not in _BCS:
        raise ParameterError(f"bc must be one of {_BCS}, got {bc!r}")
    w = np.asarray(w, dtype=float)
    if bc == "dirichlet_alt":
        n = w.size - 1
        v = np.zeros(2 * n + 2)
    else:
        n = w.size
        v = np.zeros(2 * n)
    sign = 1 if bc == "neumann" else -1
    for idx, (i, m) in enumerate(_pairing(n, bc)):
        v[i] = w[idx] / np.sqrt(2.0)
        v[m] = sign * w[idx] / np.sqrt(2.0)
    return v
