"""Central finite-difference stencils of order 2k for the second derivative.

Coefficients are generated by a multiplicative recurrence instead of the
closed factorial form, so large k neither overflows nor loses accuracy:

    r_1 = 2k / (k + 1)
    r_{j+1} = -r_j * j^2 (k - j) / ((j+1)^2 (k + j + 1))
    r_0 = -2 * sum_{j>=1} r_j

Each stencil is kept in two representations: exact rationals for identity
checks and floats for assembly.  The weights are dimensionless; divide by h^2
when applying to samples on a lattice of spacing h.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParameterError, PrecisionExhausted

__all__ = [
    "Stencil",
    "make_stencil",
    "second_moment",
    "verify_second_moment",
    "truncation_error_bound",
    "apply_stencil",
]


@dataclass(frozen=True)
class Stencil:
    """Symmetric second-derivative weights r_{-k}..r_k.

    ``exact[j]`` holds r_j for j = 0..k as Fractions; ``coeffs`` is the full
    float vector of length 2k+1 ordered j = -k..k.
    """

    k: int
    exact: tuple
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))

    def coefficient(self, j: int) -> float:
        """Weight at offset j, zero beyond the half-width."""
        j = abs(j)
        return float(self.exact[j]) if j <= self.k else 0.0


def make_stencil(k: int) -> Stencil:
    """Build the order-2k central stencil for d^2/dx^2.

    Rejects k < 1.  Raises PrecisionExhausted if any weight underflows to
    zero in float, since assembly would then silently drop taps.
    """
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ParameterError(f"stencil half-width must be a positive integer, got {k!r}")
    r = [Fraction(0)] * (k + 1)
    r[1] = Fraction(2 * k, k + 1)
    for j in range(1, k):
        r[j + 1] = -r[j] * Fraction(j * j * (k - j), (j + 1) ** 2 * (k + j + 1))
    r[0] = -2 * sum(r[1:])
    floats = [float(v) for v in r]
    if any(f == 0.0 for f in floats[1:]):
        raise PrecisionExhausted(f"stencil weights underflow at k={k}")
    full = np.array(floats[:0:-1] + floats, dtype=float)
    return Stencil(k=int(k), exact=tuple(r), coeffs=full)


def second_moment(s: Stencil) -> Fraction:
    """Exact value of sum_{j=1..k} r_j j^2; equals 1 for a correct stencil.

    This is the normalization that makes the weighted sum reproduce h^2 u'':
    expanding u(x + jh) in a Taylor series, the h^2 term collects exactly
    this sum (doubled by symmetry, halved by the 1/2! factor).
    """
    return sum((s.exact[j] * j * j for j in range(1, s.k + 1)), Fraction(0))


def verify_second_moment(s: Stencil, tol: float = 0.0) -> bool:
    """True iff the second-moment sum is within tol of 1.

    With the default tol=0 this is an exact rational check.
    """
    return abs(second_moment(s) - 1) <= tol


def truncation_error_bound(s: Stencil, h: float, deriv_bound: float) -> float:
    """Envelope deriv_bound * (e h / 2)^(2k-1) on the pointwise remainder.

    deriv_bound caps |u^(2k+1)| on the relevant interval.  The hidden
    constant of the underlying remainder estimate is fixed at 1; treat the
    result as a decay envelope, not an equality.
    """
    if h <= 0:
        raise ParameterError(f"lattice spacing must be positive, got {h}")
    if deriv_bound < 0:
        raise ParameterError(f"derivative bound must be nonnegative, got {deriv_bound}")
    return deriv_bound * (math.e * h / 2.0) ** (2 * s.k - 1)


def apply_stencil(s: Stencil, values: np.ndarray, h: float) -> np.ndarray:
    """Second-derivative estimates at the interior points of a sample vector.

    values has length m; the result has length m - 2k, entry i approximating
    u''(x_{i+k}) with the weighted sum divided by h^2.
    """
    values = np.asarray(values, dtype=float)
    k = s.k
    if values.ndim != 1 or values.size < 2 * k + 1:
        raise ParameterError("need a 1d sample vector longer than the stencil width")
    out = np.zeros(values.size - 2 * k)
    for j, w in enumerate(s.coeffs):
        out += w * values[j:j + out.size]
    return out / (h * h)
