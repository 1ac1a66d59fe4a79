"""Shifted Fourier and weighted cosine transforms with their factorizations.

Conventions (N = n + 1, m = floor(n/2)):

  shifted Fourier (qsft):   v_hat_l = N^{-1/2} sum_k e^{2 pi i (k-m)(l-N/2)/N} v_k
  weighted cosine  (qct):   v_hat_l = sqrt(2/n) sum_k delta_k delta_l cos(k l pi / n) v_k
                            with delta_0 = delta_n = 1/sqrt(2), 1 otherwise

The qsft factors as (post phase) * (plain unitary DFT) * (pre phase), giving
an O(N log N) path through the FFT; the plain DFT here uses the +i kernel,
i.e. the orthonormal inverse FFT of numpy.  The qct is real symmetric
orthogonal (an involution), computed fast through the even extension of
length 2n.  Matrices are materialized only for tests and small systems.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError

__all__ = [
    "endpoint_weights",
    "dft_matrix",
    "qsft_matrix",
    "qct_matrix",
    "alternating_phase",
    "centering_phase",
    "twiddle_phase",
    "cyclic_permutation",
    "qsft_apply",
    "qct_apply",
    "UnitaryTransform",
    "tensor_apply",
]


def endpoint_weights(n: int) -> np.ndarray:
    """delta vector of length n+1: 1/sqrt(2) at both ends, 1 inside."""
    d = np.ones(n + 1)
    d[0] = d[n] = 1.0 / np.sqrt(2.0)
    return d


def dft_matrix(n: int) -> np.ndarray:
    """Unitary DFT with +i kernel: F[l,k] = e^{2 pi i k l / N} / sqrt(N)."""
    N = n + 1
    l = np.arange(N)[:, None]
    k = np.arange(N)[None, :]
    return np.exp(2j * np.pi * k * l / N) / np.sqrt(N)


def alternating_phase(n: int) -> np.ndarray:
    """Pre-phase diagonal e^{-i pi k} = (-1)^k, length n+1."""
    return np.exp(-1j * np.pi * np.arange(n + 1))


def centering_phase(n: int) -> np.ndarray:
    """Post-phase diagonal e^{-2 pi i m (l - N/2) / N}, length n+1."""
    N = n + 1
    m = n // 2
    return np.exp(-2j * np.pi * m * (np.arange(N) - N / 2.0) / N)


def twiddle_phase(n: int) -> np.ndarray:
    """Diagonal e^{-2 pi i k / N} that conjugates the DFT into a cyclic shift."""
    N = n + 1
    return np.exp(-2j * np.pi * np.arange(N) / N)


def cyclic_permutation(n: int) -> np.ndarray:
    """Permutation matrix sending basis vector e_k to e_{k+1 mod N}."""
    N = n + 1
    P = np.zeros((N, N))
    P[(np.arange(N) + 1) % N, np.arange(N)] = 1.0
    return P


def qsft_matrix(n: int) -> np.ndarray:
    """Materialized shifted-Fourier matrix (unitary)."""
    N = n + 1
    m = n // 2
    l = np.arange(N)[:, None]
    k = np.arange(N)[None, :]
    return np.exp(2j * np.pi * (k - m) * (l - N / 2.0) / N) / np.sqrt(N)


def qct_matrix(n: int) -> np.ndarray:
    """Materialized weighted cosine matrix (real symmetric orthogonal)."""
    if n < 1:
        raise ParameterError("qct needs n >= 1 (the formula divides by n)")
    d = endpoint_weights(n)
    l = np.arange(n + 1)[:, None]
    k = np.arange(n + 1)[None, :]
    return np.sqrt(2.0 / n) * d[l] * d[k] * np.cos(l * k * np.pi / n)


def qsft_apply(v: np.ndarray, inverse: bool = False) -> np.ndarray:
    """Apply the shifted Fourier transform (or its inverse) along a vector.

    Fast path: post * ifft_ortho * pre for the forward map; the inverse is
    the conjugate transpose, conj(pre) * fft_ortho * conj(post).
    """
    v = np.asarray(v, dtype=complex)
    n = v.size - 1
    if n < 0:
        raise ParameterError("empty vector")
    if n == 0:
        return v.copy()
    pre = alternating_phase(n)
    post = centering_phase(n)
    if inverse:
        return pre.conj() * np.fft.fft(post.conj() * v, norm="ortho")
    return post * np.fft.ifft(pre * v, norm="ortho")


def qct_apply(v: np.ndarray, inverse: bool = False) -> np.ndarray:
    """Apply the weighted cosine transform; it is an involution, so the
    inverse flag is accepted for interface symmetry and changes nothing.

    Fast path: weight the endpoints, extend evenly to length 2n, take one
    FFT, and fold the two boundary terms back in.
    """
    del inverse
    v = np.asarray(v)
    n = v.size - 1
    if n < 1:
        raise ParameterError("qct needs n >= 1 (the formula divides by n)")
    out_dtype = complex if np.iscomplexobj(v) else float
    d = endpoint_weights(n)
    z = d * v.astype(complex)
    ext = np.concatenate([z, z[-2:0:-1]])
    Y = np.fft.fft(ext)[: n + 1]
    A = 0.5 * (Y + z[0] + ((-1.0) ** np.arange(n + 1)) * z[n])
    res = np.sqrt(2.0 / n) * d * A
    if out_dtype is float:
        return res.real
    return res


_KINDS = (
    "qsft",
    "qct",
    "qft",
    "phase_pre",
    "phase_post",
    "phase_twiddle",
    "cyclic_shift",
)


class UnitaryTransform:
    """A named transform of size n+1 with fast apply and a test materializer."""

    def __init__(self, kind: str, n: int):
        if kind not in _KINDS:
            raise ParameterError(f"kind must be one of {_KINDS}, got {kind!r}")
        if n < 0 or (kind == "qct" and n < 1):
            raise ParameterError(f"invalid size for {kind}: n={n}")
        self.kind = kind
        self.n = int(n)
        self.size = self.n + 1

    def matrix(self) -> np.ndarray:
        n = self.n
        if self.kind == "qsft":
            return qsft_matrix(n)
        if self.kind == "qct":
            return qct_matrix(n)
        if self.kind == "qft":
            return dft_matrix(n)
        if self.kind == "phase_pre":
            return np.diag(alternating_phase(n))
        if self.kind == "phase_post":
            return np.diag(centering_phase(n))
        if self.kind == "phase_twiddle":
            return np.diag(twiddle_phase(n))
        return cyclic_permutation(n)

    def apply(self, v: np.ndarray, inverse: bool = False) -> np.ndarray:
        v = np.asarray(v)
        if v.size != self.size:
            raise ParameterError(f"expected length {self.size}, got {v.size}")
        if self.kind == "qsft":
            return qsft_apply(v, inverse=inverse)
        if self.kind == "qct":
            return qct_apply(v)
        if self.kind == "qft":
            f = np.fft.fft if inverse else np.fft.ifft
            return f(np.asarray(v, dtype=complex), norm="ortho")
        M = self.matrix()
        if inverse:
            M = M.conj().T
        return M @ np.asarray(v, dtype=complex)


def tensor_apply(t: UnitaryTransform, d: int, v: np.ndarray, axes=None,
                 inverse: bool = False) -> np.ndarray:
    """Apply a 1D transform along the chosen axes of a flattened d-cube.

    v must have length (n+1)^d, interpreted with axis 0 as the slowest
    (leftmost Kronecker factor).  axes defaults to all of them; an empty
    list is the identity.
    """
    v = np.asarray(v)
    N = t.size
    if v.size != N ** d:
        raise ParameterError(f"expected length {N ** d}, got {v.size}")
    if axes is None:
        axes = range(d)
    axes = sorted(set(int(a) for a in axes))
    if any(a < 0 or a >= d for a in axes):
        raise ParameterError(f"axes out of range for d={d}: {axes}")
    cube = v.reshape((N,) * d).astype(complex)
    for ax in axes:
        cube = np.apply_along_axis(lambda col: t.apply(col, inverse=inverse), ax, cube)
    return cube.reshape(-1)
