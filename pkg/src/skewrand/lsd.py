"""Limiting spectral laws: the standard semicircle and McKay(d).

The McKay law is the limiting spectrum of random d-regular graphs with d
fixed; the semicircle is its d -> infinity limit after scaling by sqrt(d).
Both are symmetric, so odd moments vanish. Even moments are counted exactly:
Catalan numbers for the semicircle, closed walks from the root of the infinite
d-regular tree for McKay(d).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .errors import NumericError, ParameterError

__all__ = [
    "DensityModel",
    "SEMICIRCLE",
    "semicircle",
    "mckay",
    "support",
    "pdf",
    "cdf",
    "semicircle_cdf",
    "moment",
    "moment_exact",
    "catalan",
    "tree_closed_walks",
    "energy_constant",
    "energy_constant_quadrature",
]

QUAD_TOL = 1e-12


@dataclass(frozen=True)
class DensityModel:
    kind: str
    d: int | None = None

    def __post_init__(self):
        if self.kind == "semicircle":
            if self.d is not None:
                raise ParameterError("the semicircle law takes no degree")
        elif self.kind == "mckay":
            if self.d is None or int(self.d) != self.d or self.d < 2:
                raise ParameterError(f"McKay law needs an integer degree d >= 2, got {self.d}")
        else:
            raise ParameterError(f"unknown law {self.kind!r}")

    def __str__(self):
        return "semicircle" if self.kind == "semicircle" else f"mckay(d={self.d})"


SEMICIRCLE = DensityModel("semicircle")


def semicircle() -> DensityModel:
    return SEMICIRCLE


def mckay(d: int) -> DensityModel:
    return DensityModel("mckay", d)


def support(model: DensityModel) -> tuple[float, float]:
    r = 2.0 if model.kind == "semicircle" else 2.0 * math.sqrt(model.d - 1)
    return -r, r


def _scalar_or_array(x, out):
    return float(out) if np.ndim(x) == 0 else out


def pdf(model: DensityModel, x):
    """Density at ``x`` (scalar or array); zero outside the support."""
    xa = np.asarray(x, dtype=np.float64)
    _, r = support(model)
    inside = np.abs(xa) <= r
    rad = np.sqrt(np.clip(r * r - xa * xa, 0.0, None))
    if model.kind == "semicircle":
        out = rad / (2.0 * np.pi)
    else:
        d = model.d
        with np.errstate(divide="ignore", invalid="ignore"):
            out = d * rad / (2.0 * np.pi * (d * d - xa * xa))
    out = np.where(inside, out, 0.0)
    return _scalar_or_array(x, out)


def semicircle_cdf(x):
    xa = np.clip(np.asarray(x, dtype=np.float64), -2.0, 2.0)
    out = 0.5 + xa * np.sqrt(4.0 - xa * xa) / (4.0 * np.pi) + np.arcsin(xa / 2.0) / np.pi
    return _scalar_or_array(x, np.clip(out, 0.0, 1.0))


def _mckay_theta_density(theta: float, d: int) -> float:
    # x = 2 sqrt(d-1) sin(theta) turns rho_d(x) dx into this bounded integrand
    if d == 2:
        return 1.0 / math.pi
    c2 = math.cos(theta) ** 2
    return 2.0 * d * (d - 1) * c2 / (math.pi * ((d - 2) ** 2 + 4.0 * (d - 1) * c2))


def _quad(f, a, b, args=()):
    res = integrate.quad(f, a, b, args=args, epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=200, full_output=1)
    if len(res) > 3:
        raise NumericError(f"quadrature on [{a}, {b}] failed: {res[3]}")
    val, err = res[0], res[1]
    if err > 1e-9:
        raise NumericError(f"quadrature on [{a}, {b}] only reached error {err:.2e}")
    return val


def _mckay_cdf(xa: np.ndarray, d: int) -> np.ndarray:
    r = 2.0 * math.sqrt(d - 1)
    theta = np.arcsin(np.clip(xa / r, -1.0, 1.0))
    flat = theta.ravel()
    order = np.argsort(flat, kind="stable")
    out = np.empty_like(flat)
    # integrate segment by segment between sorted abscissae and accumulate
    acc, prev = 0.0, -math.pi / 2
    for i in order:
        t = flat[i]
        if t > prev:
            acc += _quad(_mckay_theta_density, prev, t, args=(d,))
            prev = t
        out[i] = acc
    return np.clip(out, 0.0, 1.0).reshape(xa.shape)


def cdf(model: DensityModel, x):
    if model.kind == "semicircle":
        return semicircle_cdf(x)
    xa = np.asarray(x, dtype=np.float64)
    return _scalar_or_array(x, _mckay_cdf(xa, model.d))


@lru_cache(maxsize=None)
def catalan(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)


@lru_cache(maxsize=None)
def tree_closed_walks(d: int, k: int) -> int:
    """Closed walks of length ``k`` from the root of the infinite d-regular tree."""
    counts = {0: 1}
    for _ in range(k):
        nxt: dict[int, int] = {}
        for depth, c in counts.items():
            if depth == 0:
                nxt[1] = nxt.get(1, 0) + d * c
            else:
                nxt[depth + 1] = nxt.get(depth + 1, 0) + (d - 1) * c
                nxt[depth - 1] = nxt.get(depth - 1, 0) + c
        counts = nxt
    return counts.get(0, 0)


def moment_exact(model: DensityModel, k: int) -> int:
    if k < 0:
        raise ParameterError(f"moment order must be nonnegative, got {k}")
    if k % 2:
        return 0
    if model.kind == "semicircle":
        return catalan(k // 2)
    return tree_closed_walks(model.d, k)


def moment(model: DensityModel, k: int) -> float:
    return float(moment_exact(model, k))


def energy_constant_quadrature(model: DensityModel) -> float:
    """Adaptive quadrature of the mean absolute value of the law."""
    if model.kind == "semicircle":
        f = lambda t: 2.0 * math.sin(t) * (2.0 / math.pi) * math.cos(t) ** 2
    else:
        r = 2.0 * math.sqrt(model.d - 1)
        f = lambda t: r * math.sin(t) * _mckay_theta_density(t, model.d)
    return 2.0 * _quad(f, 0.0, math.pi / 2)


@lru_cache(maxsize=None)
def energy_constant(model: DensityModel) -> float:
    """Mean of |x| under the law, in closed form.

    Semicircle gives 8/(3 pi). For McKay(d) with d >= 3 the value is
    ``2 d sqrt(d-1)/pi - d (d-2)/pi * arctan(2 sqrt(d-1)/(d-2))``; at d = 2 the
    second term is 0 * arctan(inf) and the limit 4/pi is used.
    """
    if model.kind == "semicircle":
        value = 8.0 / (3.0 * math.pi)
    elif model.d == 2:
        value = 4.0 / math.pi
    else:
        d = model.d
        root = math.sqrt(d - 1)
        value = 2 * d * root / math.pi - d * (d - 2) / math.pi * math.atan(2 * root / (d - 2))
    check = energy_constant_quadrature(model)
    if abs(check - value) > 1e-8 * max(1.0, abs(value)):
        raise NumericError(f"closed-form energy constant {value!r} disagrees with quadrature {check!r}")
    return value
