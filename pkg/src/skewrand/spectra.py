"""Skew-adjacency matrices and their spectra.

A real skew-symmetric ``S`` has eigenvalues ``i*lam`` with ``lam`` real and
coming in ``+/-`` pairs. We recover the ``lam`` from the real symmetric PSD
matrix ``S S^T = -S^2``: its eigenvalues are ``lam^2``, each nonzero one with
even multiplicity, so sorting their square roots and pairing neighbours
restores the signs.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NumericError, ParameterError
from .graphgen import OrientedGraph

__all__ = [
    "SkewAdjacency",
    "SkewSpectrum",
    "skew_adjacency",
    "skew_adjacency_batch",
    "skew_spectrum",
    "skew_spectra_batch",
    "skew_energy",
    "normalized_spectrum",
    "nuclear_norm",
    "PAIR_RTOL",
]

PAIR_RTOL = 1e-7


@dataclass(frozen=True, eq=False)
class SkewAdjacency:
    n: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.float64)
        if a.shape != (self.n, self.n):
            raise ParameterError(f"expected a {self.n}x{self.n} matrix, got shape {a.shape}")
        if not np.array_equal(a, -a.T):
            raise ParameterError("matrix is not skew-symmetric")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)


@dataclass(frozen=True, eq=False)
class SkewSpectrum:
    """Ascending eigenvalues of the Hermitian matrix ``-iS``."""

    values: np.ndarray

    def __post_init__(self):
        v = np.sort(np.asarray(self.values, dtype=np.float64))
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size


def skew_adjacency(g: OrientedGraph) -> SkewAdjacency:
    s = np.zeros((g.n, g.n))
    u, v = g.arcs[:, 0], g.arcs[:, 1]
    s[u, v] = 1.0
    s[v, u] = -1.0
    return SkewAdjacency(g.n, s)


def skew_adjacency_batch(n: int, signs: np.ndarray) -> np.ndarray:
    """Stack of skew matrices from per-pair signs in {-1, 0, +1}.

    ``signs`` has shape ``(batch, n*(n-1)/2)`` in ``np.triu_indices`` order.
    """
    iu, ju = np.triu_indices(n, k=1)
    s = np.zeros((signs.shape[0], n, n))
    s[:, iu, ju] = signs
    s[:, ju, iu] = -signs
    return s


def _default_tol(gram: np.ndarray) -> np.ndarray:
    n = gram.shape[-1]
    peak = np.abs(gram).max(axis=(-2, -1))
    return 1e-10 * n * peak


def _paired_roots(mu2: np.ndarray, tol: np.ndarray) -> np.ndarray:
    """Signed square roots of eigenvalues of ``-S^2`` (last axis ascending)."""
    tol = np.asarray(tol)[..., None]
    if np.any(mu2 < -tol):
        worst = float(mu2.min())
        raise NumericError(f"-S^2 has a negative eigenvalue {worst:.3e} beyond the clamp tolerance")
    roots = np.sqrt(np.clip(mu2, 0.0, None))[..., ::-1]  # descending
    n = roots.shape[-1]
    half = n // 2
    first = roots[..., 0 : 2 * half : 2]
    second = roots[..., 1 : 2 * half : 2]
    slack = PAIR_RTOL * (1.0 + roots[..., :1]) + np.sqrt(tol)
    if np.any(np.abs(first - second) > slack):
        raise NumericError("eigenvalues of -S^2 do not occur in equal pairs")
    mag = 0.5 * (first + second)
    parts = [mag, -mag]
    if n % 2:
        parts.append(np.zeros(mag.shape[:-1] + (1,)))
    return np.sort(np.concatenate(parts, axis=-1), axis=-1)


def _eigvalsh(gram: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.eigvalsh(gram)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"symmetric eigensolver failed on shape {gram.shape}: {exc}") from exc


def skew_spectrum(s: SkewAdjacency, tol: float | None = None) -> SkewSpectrum:
    """Real eigenvalues of ``-iS``.

    Eigenvalues of ``S S^T`` in ``[-tol, 0)`` are clamped to zero; the default
    ``tol`` is ``1e-10 * n * max|S S^T|``.
    """
    a = s.entries
    gram = a @ a.T
    gram = 0.5 * (gram + gram.T)
    if tol is None:
        tol = _default_tol(gram)
    return SkewSpectrum(_paired_roots(_eigvalsh(gram), tol))


def skew_spectra_batch(s: np.ndarray) -> np.ndarray:
    """Row-wise spectra for a stack of skew matrices, shape ``(batch, n)``."""
    gram = s @ np.swapaxes(s, -1, -2)
    gram = 0.5 * (gram + np.swapaxes(gram, -1, -2))
    return _paired_roots(_eigvalsh(gram), _default_tol(gram))


def skew_energy(spec: SkewSpectrum) -> float:
    return float(np.abs(spec.values).sum())


def normalized_spectrum(spec: SkewSpectrum, scale: float) -> SkewSpectrum:
    if not scale > 0:
        raise ParameterError(f"scale must be positive, got {scale}")
    return SkewSpectrum(spec.values / scale)


def nuclear_norm(s: SkewAdjacency) -> float:
    """Sum of singular values via SVD, independent of :func:`skew_spectrum`."""
    return float(np.linalg.svd(s.entries, compute_uv=False).sum())
