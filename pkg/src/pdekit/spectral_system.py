"""Coefficient-space linear systems for pure second-order elliptic PDEs.

The operator sum_{j1,j2} A_{j1,j2} d^2/dx_j1 dx_j2 on [-1,1]^d becomes, in a
collocation basis, L = sum_j A_jj Dbar^(j) + sum_{j1 != j2} A_{j1,j2} D^(j1,j2)
where Dbar^(j) places the closed second-derivative matrix on axis j and the
mixed terms place two first-derivative matrices.  Boundary data rides the
closure rows: for Chebyshev, rows with k_j = n carry the +1 face of axis j
and rows with k_j = n-1 the -1 face; for Fourier (periodic) the single center
row per axis carries the axis-mean data.  The source coefficients f-hat fill
every row that retains at least one interior axis and are dropped from rows
whose axes are all closure indices (those rows are pure constraint rows).

Mixed-derivative contributions are masked to zero on closure rows so the
constraint equations stay exact.  For Fourier the mask is a no-op (the
first-derivative matrix is diagonal with a zero at the center frequency);
for Chebyshev it is load-bearing.

Closure variants for the periodic basis: "axes" (default, one mean-value row
per axis, mirroring the Chebyshev structure), "point" (a single all-ones row
pinning the value at the origin node), "pin" (pin one coefficient directly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import DegenerateRhs, ParameterError
from .spectral_ops import BASES, boundary_row_indices, diff_matrix, gdd_check, multi_diff

__all__ = [
    "choose_truncation",
    "certified_truncation_order",
    "boundary_index_set",
    "embed_boundary",
    "SpectralSystem",
    "assemble_system",
    "poisson_system",
    "state_prep_q",
    "condition_report",
]

DENSE_SVD_LIMIT = 4096


def choose_truncation(g: float, g_prime: float, eps: float) -> int:
    """Truncation order floor(ln(W)/ln(ln(W))) with W = g'(1+eps)/(g eps).

    g is a lower bound on the solution norm, g_prime an upper bound on its
    derivative magnitudes, eps the target normalized error.  The result is
    clamped below at 2.  Note this is the asymptotic-order expression; the
    finite-W guarantee it is usually quoted with does not actually hold (see
    certified_truncation_order for the version that does).
    """
    if g <= 0 or eps <= 0 or eps >= 1:
        raise ParameterError(f"need g > 0 and eps in (0,1), got g={g}, eps={eps}")
    if g_prime < g:
        raise ParameterError(f"need g_prime >= g, got {g_prime} < {g}")
    omega = g_prime * (1.0 + eps) / (g * eps)
    if omega <= math.e:
        raise ParameterError(f"eps too large: ratio {omega:.3g} must exceed e")
    n = math.floor(math.log(omega) / math.log(math.log(omega)))
    return max(2, n)


def certified_truncation_order(g: float, g_prime: float, eps: float, n_max: int = 500) -> int:
    """Smallest n with g' (e/(2n))^n <= g eps/(1+eps), evaluated in log space.

    This is the inequality choose_truncation is supposed to guarantee; the
    closed formula undershoots it at every finite ratio, so callers needing
    the certificate use this search instead.
    """
    if g <= 0 or eps <= 0 or eps >= 1:
        raise ParameterError(f"need g > 0 and eps in (0,1), got g={g}, eps={eps}")
    target = math.log(g * eps / (1.0 + eps)) - math.log(g_prime)
    for n in range(2, n_max + 1):
        if n * (1.0 - math.log(2.0 * n)) <= target:
            return n
    raise ParameterError(f"no certificate below n_max={n_max}")


def boundary_index_set(basis: str, n: int) -> frozenset:
    """Per-axis coefficient indices whose rows are closure rows."""
    plus, minus = boundary_row_indices(basis, n)
    return frozenset({plus, minus})


def _row_axis_indices(N: int, d: int) -> np.ndarray:
    """(d, N^d) array of per-axis indices in row order (axis 0 slowest)."""
    grids = np.meshgrid(*[np.arange(N)] * d, indexing="ij")
    return np.stack([g.reshape(-1) for g in grids])


def embed_boundary(basis: str, n: int, d: int, axis: int, side: str, coeffs) -> np.ndarray:
    """Place a (d-1)-dimensional coefficient vector on an axis's closure rows.

    side is "plus" or "minus" (the x = +1 / x = -1 face; identical for the
    periodic basis, whose single closure row serves both).  coeffs has length
    (n+1)^(d-1); for d = 1 a scalar.  Returns a full-length vector.
    """
    if side not in ("plus", "minus"):
        raise ParameterError(f"side must be 'plus' or 'minus', got {side!r}")
    if not 0 <= axis < d:
        raise ParameterError(f"axis {axis} out of range for d={d}")
    N = n + 1
    plus, minus = boundary_row_indices(basis, n)
    row = plus if side == "plus" else minus
    coeffs = np.atleast_1d(np.asarray(coeffs))
    if coeffs.size != N ** (d - 1):
        raise ParameterError(f"expected {N ** (d - 1)} coefficients, got {coeffs.size}")
    out = np.zeros(N ** d, dtype=complex)
    cube_shape = [N] * d
    cube = out.reshape(cube_shape)
    sel = [slice(None)] * d
    sel[axis] = row
    cube[tuple(sel)] = coeffs.reshape([N] * (d - 1)) if d > 1 else coeffs[0]
    return out


@dataclass
class SpectralSystem:
    """An assembled L c = b system plus the scalars the analysis tracks."""

    basis: str
    n: int
    d: int
    A: np.ndarray
    closure: str
    L: sp.csr_matrix
    rhs: np.ndarray
    gdd: dict
    q: float | None = None
    meta: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return (self.n + 1) ** self.d

    def dense(self) -> np.ndarray:
        return self.L.toarray()


def _place_source(basis: str, n: int, d: int, fhat: np.ndarray) -> np.ndarray:
    """f-hat with rows dropped where every axis sits on a closure index."""
    N = n + 1
    bset = boundary_index_set(basis, n)
    idx = _row_axis_indices(N, d)
    all_boundary = np.ones(N ** d, dtype=bool)
    for a in range(d):
        all_boundary &= np.isin(idx[a], sorted(bset))
    out = np.array(fhat, dtype=complex)
    out[all_boundary] = 0.0
    return out


def _closure_row_mask(basis: str, n: int, d: int) -> np.ndarray:
    """Boolean mask of rows having any axis on a closure index."""
    N = n + 1
    bset = boundary_index_set(basis, n)
    idx = _row_axis_indices(N, d)
    mask = np.zeros(N ** d, dtype=bool)
    for a in range(d):
        mask |= np.isin(idx[a], sorted(bset))
    return mask


def assemble_system(A, basis: str, n: int, fhat, boundary=None,
                    closure: str = "axes", point_value: complex = 0.0) -> SpectralSystem:
    """Build L and the right-hand side from coefficient-space data.

    A is the d x d coefficient matrix (the GDD margin is computed and
    attached; callers decide whether to proceed on rejected operators).
    fhat has length (n+1)^d.  boundary is a per-axis list of
    (plus_coeffs, minus_coeffs) pairs of (n+1)^(d-1)-vectors; None means
    homogeneous.  For the periodic basis the pair collapses to one vector per
    axis (the coefficients of the solution's x_j = 0 slice), passed in the
    plus slot with minus None; the alternative closures "point"/"pin" take
    the scalar point_value instead.
    """
    A = np.asarray(A)
    if basis not in BASES:
        raise ParameterError(f"basis must be one of {BASES}, got {basis!r}")
    d = A.shape[0]
    gdd = gdd_check(A)
    N = n + 1
    fhat = np.asarray(fhat, dtype=complex).reshape(-1)
    if fhat.size != N ** d:
        raise ParameterError(f"fhat has length {fhat.size}, expected {N ** d}")
    if basis == "chebyshev" and closure != "axes":
        raise ParameterError("closure variants exist for the periodic basis only")
    if closure not in ("axes", "point", "pin"):
        raise ParameterError(f"closure must be axes, point or pin, got {closure!r}")

    dtype = complex if basis == "fourier" else float
    L = sp.csr_matrix((N ** d, N ** d), dtype=dtype)
    for j in range(d):
        pat = [0] * d
        pat[j] = 2
        L = L + A[j, j] * multi_diff(pat, basis, n, d)
    mixed = None
    for j1 in range(d):
        for j2 in range(j1 + 1, d):
            w = A[j1, j2] + A[j2, j1]
            if w != 0:
                pat = [0] * d
                pat[j1] = pat[j2] = 1
                term = w * multi_diff(pat, basis, n, d)
                mixed = term if mixed is None else mixed + term
    if mixed is not None:
        # constraint rows must stay exact; zero the mixed action there
        keep = ~_closure_row_mask(basis, n, d)
        mask = sp.diags(keep.astype(float))
        L = L + mask @ mixed

    if closure in ("point", "pin"):
        m = n // 2
        center = 0
        for _ in range(d):
            center = center * N + m
        L = L.tolil()
        if closure == "point":
            L[center, :] = np.ones(N ** d)
        else:
            L[center, :] = 0.0
            L[center, center] = 1.0
        L = L.tocsr()
        rhs = np.array(fhat, dtype=complex)
        rhs[center] = point_value
        q = None
    else:
        rhs = _place_source(basis, n, d, fhat)
        plus_terms, minus_terms = [], []
        zeros = np.zeros(N ** (d - 1), dtype=complex) if d > 1 else 0.0
        for j in range(d):
            if boundary is None:
                gp = gm = zeros
            else:
                gp, gm = boundary[j]
                gp = zeros if gp is None else gp
                if basis == "fourier":
                    if gm is not None:
                        raise ParameterError(
                            "periodic closures take one data vector per axis (plus slot)")
                    gm = zeros if d > 1 else 0.0
                else:
                    gm = zeros if gm is None else gm
            ep = embed_boundary(basis, n, d, j, "plus", gp)
            em = embed_boundary(basis, n, d, j, "minus", gm)
            plus_terms.append(A[j, j] * ep)
            minus_terms.append(A[j, j] * em)
            rhs = rhs + A[j, j] * ep + (A[j, j] * em if basis == "chebyshev" else 0.0)
        q = state_prep_q(fhat, plus_terms, minus_terms)[0] if boundary is not None else 1.0

    if basis == "chebyshev":
        rhs_out = rhs.real if np.allclose(rhs.imag, 0.0) else rhs
    else:
        rhs_out = rhs
    return SpectralSystem(basis=basis, n=int(n), d=int(d), A=A, closure=closure,
                          L=L.tocsr(), rhs=rhs_out, gdd=gdd, q=q)


def poisson_system(basis: str, n: int, d: int, fhat, boundary=None,
                   closure: str = "axes", point_value: complex = 0.0) -> SpectralSystem:
    """assemble_system with the identity coefficient matrix."""
    return assemble_system(np.eye(d), basis, n, fhat, boundary=boundary,
                           closure=closure, point_value=point_value)


def state_prep_q(fhat, weighted_plus, weighted_minus=None):
    """Cancellation overhead q and the success probability 1/q^2.

    weighted_plus / weighted_minus are per-axis full-length vectors already
    scaled by A_jj (the embedding of the boundary coefficients onto closure
    rows).  q^2 is the ratio of the sum of squared magnitudes of the three
    ingredient families to the squared magnitudes of their row sums; exact
    cancellation raises DegenerateRhs.  The source coefficients enter
    unplaced, exactly as the overhead is defined.
    """
    fhat = np.asarray(fhat, dtype=complex).reshape(-1)
    if weighted_minus is None:
        weighted_minus = [np.zeros_like(fhat) for _ in weighted_plus]
    num = 0.0
    den = 0.0
    for gp, gm in zip(weighted_plus, weighted_minus):
        gp = np.asarray(gp, dtype=complex).reshape(-1)
        gm = np.asarray(gm, dtype=complex).reshape(-1)
        num += float((np.abs(fhat) ** 2 + np.abs(gp) ** 2 + np.abs(gm) ** 2).sum())
        den += float((np.abs(fhat + gp + gm) ** 2).sum())
    if num == 0.0:
        raise DegenerateRhs("all source and boundary coefficients vanish")
    if den == 0.0:
        raise DegenerateRhs("source and boundary terms cancel exactly")
    q = math.sqrt(num / den)
    return q, 1.0 / (q * q)


def condition_report(system, power_iters: int = 200, seed: int = 0) -> dict:
    """Extreme singular values of L and the bounds they are measured against.

    Dense SVD when the system fits the budget, otherwise a power iteration
    on L*L (and on the inverse through a sparse factorization), flagged
    approximate.  bound_poisson is (2n)^4; bound_general scales it by
    norm_sigma / (C * norm_star) when the operator is GDD-accepted.
    """
    L = system.L
    n = system.n
    size = L.shape[0]
    approximate = size > DENSE_SVD_LIMIT
    if not approximate:
        sv = np.linalg.svd(L.toarray(), compute_uv=False)
        smax, smin = float(sv[0]), float(sv[-1])
    else:
        rng = np.random.default_rng(seed)

        def draw():
            v = rng.normal(size=size)
            if np.iscomplexobj(L.data):
                v = v + 1j * rng.normal(size=size)
            return v / np.linalg.norm(v)

        v = draw()
        for _ in range(power_iters):
            w = L.conj().T @ (L @ v)
            nw = np.linalg.norm(w)
            v = w / nw
        smax = math.sqrt(nw)
        lu = sp.linalg.splu(L.tocsc())
        v = draw()
        for _ in range(power_iters):
            w = lu.solve(lu.solve(v), trans="H")
            nw = np.linalg.norm(w)
            v = w / nw
        smin = 1.0 / math.sqrt(nw)
    kappa = smax / smin if smin > 0 else math.inf
    bound_poisson = float((2 * n) ** 4)
    gdd = system.gdd
    bound_general = (
        gdd["norm_sigma"] / (gdd["C"] * gdd["norm_star"]) * bound_poisson
        if gdd["accepted"] else math.inf)
    return {
        "sigma_max": smax,
        "sigma_min": smin,
        "kappa": kappa,
        "bound_poisson": bound_poisson,
        "bound_general": bound_general,
        "within_poisson": kappa <= bound_poisson,
        "within_general": kappa <= bound_general,
        "approximate": approximate,
    }
