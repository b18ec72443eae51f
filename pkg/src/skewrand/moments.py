"""Moment-method machinery for the semicircle limit of G^sigma(n, p).

The normalised matrix ``M = -iS / sqrt(p)`` has i.i.d. upper entries ``xi``
taking ``+i/sqrt(p)``, ``-i/sqrt(p)``, ``0`` with probabilities ``p/2, p/2,
1-p``. Everything here is exact rational arithmetic except
:func:`empirical_trace_moment`, the Monte-Carlo counterpart.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import _kernels
from .errors import ParameterError
from .graphgen import GnpParams, derive_seed, make_rng
from .spectra import skew_adjacency_batch, skew_spectra_batch

__all__ = [
    "XiMoment",
    "WalkMoment",
    "as_fraction",
    "xi_moment_parts",
    "xi_moment",
    "expected_trace_moment_exact",
    "empirical_trace_moment",
    "empirical_trace_moments",
    "catalan_closed_walk_count",
    "MC_BLOCK",
]

MAX_ORACLE_N = 8
MAX_ORACLE_K = 8
MAX_CATALAN_M = 7
MC_BLOCK = 4096


def as_fraction(p) -> Fraction:
    """Exact rational from a Fraction, int, decimal string or float.

    Floats go through their shortest repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(p, Rational):
        return Fraction(p)
    if isinstance(p, float):
        return Fraction(repr(p))
    return Fraction(str(p))


@dataclass(frozen=True)
class XiMoment:
    """``E[xi^s] = coeff / p**exponent``."""

    s: int
    coeff: int
    exponent: int

    def value(self, p) -> Fraction:
        return Fraction(self.coeff) / as_fraction(p) ** self.exponent


def xi_moment_parts(s: int) -> XiMoment:
    if s < 0:
        raise ParameterError(f"exponent must be nonnegative, got {s}")
    if s == 0:
        return XiMoment(0, 1, 0)
    if s % 2:
        return XiMoment(s, 0, 0)
    sign = 1 if s % 4 == 0 else -1
    return XiMoment(s, sign, (s - 2) // 2)


def xi_moment(s: int, p) -> Fraction:
    """Exact ``E[xi^s]``. Note ``E[xi^2] = -1`` while ``E[xi conj(xi)] = 1``."""
    p = as_fraction(p)
    if not 0 < p <= 1:
        raise ParameterError(f"p must lie in (0, 1], got {p}")
    return xi_moment_parts(s).value(p)


@dataclass(frozen=True)
class WalkMoment:
    """``n**-(1 + k/2) * E[Trace(M^k)]``, exactly.

    For odd k the normalisation is irrational but every walk vanishes, so the
    value is the rational 0.
    """

    n: int
    k: int
    p: Fraction
    value: Fraction

    def __float__(self):
        return float(self.value)


def expected_trace_moment_exact(n: int, k: int, p) -> WalkMoment:
    """Sum the expectation of every closed walk of length ``k`` on ``n`` vertices.

    An edge ``{u, v}`` (u < v) walked ``a`` times forwards and ``b`` times
    backwards contributes ``(-1)**b * E[xi**(a+b)]``; independence multiplies
    these over distinct edges, and a stationary step contributes 0. For a
    surviving walk with ``e`` distinct edges and ``B`` backward steps the
    product collapses to ``(-1)**(B + k/2) * p**-(k/2 - e)``, so the kernel
    only needs to tally walks by ``(e, B mod 2)``.
    """
    p = as_fraction(p)
    if not (1 <= n <= MAX_ORACLE_N and 1 <= k <= MAX_ORACLE_K):
        raise ParameterError(f"oracle needs 1 <= n, k <= 8, got n={n}, k={k}")
    if not 0 < p <= 1:
        raise ParameterError(f"p must lie in (0, 1], got {p}")
    counts = _kernels.walk_class_counts(int(n), int(k))
    if k % 2:
        if counts.any():  # pragma: no cover - would contradict parity
            raise AssertionError("odd-length closed walk with all-even edge multiplicities")
        return WalkMoment(n, k, p, Fraction(0))
    half = k // 2
    total = Fraction(0)
    for e in range(half + 1):
        signed = int(counts[e, 0]) - int(counts[e, 1])
        if signed:
            total += signed * (-1) ** half / p ** (half - e)
    return WalkMoment(n, k, p, total / Fraction(n) ** (1 + half))


def _sample_signs(n: int, p: float, size: int, rng: np.random.Generator) -> np.ndarray:
    pairs = n * (n - 1) // 2
    present = rng.random((size, pairs)) < p
    flip = rng.random((size, pairs)) < 0.5
    return np.where(present, np.where(flip, -1.0, 1.0), 0.0)


def empirical_trace_moments(params: GnpParams, ks, trials: int) -> dict[int, tuple[float, float]]:
    """Monte-Carlo ``n**-(1 + k/2) * Trace(M^k)`` for several k from shared samples.

    Trials are drawn in blocks of ``MC_BLOCK``; block ``b`` uses the stream
    ``derive_seed(seed, b)``. Returns ``{k: (mean, stderr)}``.
    """
    trials = int(trials)
    if trials < 2:
        raise ParameterError(f"need at least 2 trials, got {trials}")
    n, p = int(params.n), float(params.p)
    if p <= 0:
        raise ParameterError("p must be positive to normalise by sqrt(p)")
    ks = [int(k) for k in ks]
    per_trial = {k: np.empty(trials) for k in ks}
    done = 0
    block = 0
    while done < trials:
        size = min(MC_BLOCK, trials - done)
        rng = make_rng(derive_seed(params.seed, block))
        s = skew_adjacency_batch(n, _sample_signs(n, p, size, rng))
        lam = skew_spectra_batch(s) / np.sqrt(p)
        for k in ks:
            per_trial[k][done : done + size] = (lam**k).sum(axis=1) / n ** (1 + k / 2)
        done += size
        block += 1
    out = {}
    for k, vals in per_trial.items():
        out[k] = (float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(trials)))
    return out


def empirical_trace_moment(params: GnpParams, k: int, trials: int) -> tuple[float, float]:
    """Sample mean and standard error of ``n**-(1 + k/2) * sum_j lambda_j(M)**k``."""
    return empirical_trace_moments(params, [k], trials)[k]


def catalan_closed_walk_count(m: int) -> int:
    """Count rooted closed walks of length 2m on m+1 distinct vertices that
    use every edge exactly once in each direction.

    Vertices are labelled in order of first visit, so each walk shape is
    counted once. The search is exhaustive; branches are cut only when they
    reuse a directed edge or can no longer close all open edges.
    """
    if not 1 <= m <= MAX_CATALAN_M:
        raise ParameterError(f"m must lie in [1, {MAX_CATALAN_M}], got {m}")
    length = 2 * m
    used: set[tuple[int, int]] = set()

    def open_edges() -> int:
        return sum(1 for (u, v) in used if (v, u) not in used)

    def walk(cur: int, step: int, nverts: int) -> int:
        remaining = length - step
        if remaining == 0:
            return int(cur == 0 and nverts == m + 1 and open_edges() == 0)
        if open_edges() > remaining or nverts + (remaining - open_edges()) // 2 < m + 1:
            return 0
        total = 0
        for nxt in range(nverts + 1):
            if nxt == cur or (cur, nxt) in used:
                continue
            used.add((cur, nxt))
            total += walk(nxt, step + 1, max(nverts, nxt + 1))
            used.remove((cur, nxt))
        return total

    return walk(0, 0, 1)
