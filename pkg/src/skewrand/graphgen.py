"""Random oriented graphs: the G^sigma(n, p) model and random d-regular
oriented graphs, plus a plain-text edge-list format.

Randomness comes from numpy's counter-based Philox generator. Experiments
derive one 64-bit seed per trial with :func:`derive_seed`, so trials can run
in any order without changing results.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import IO, Union

import numpy as np

from . import _kernels
from .errors import EdgeListError, ParameterError, SamplingError

__all__ = [
    "OrientedGraph",
    "GnpParams",
    "RegularParams",
    "REGULAR_SAMPLERS",
    "make_rng",
    "derive_seed",
    "sample_gnp_oriented",
    "sample_regular_oriented",
    "degree_sequence",
    "is_simple_regular",
    "write_edge_list",
    "read_edge_list",
    "format_edge_list",
    "parse_edge_list",
]

_SEED_LIMIT = 2**64

PathOrStream = Union[str, os.PathLike, IO[str]]


def _check_seed(seed) -> int:
    seed = int(seed)
    if not 0 <= seed < _SEED_LIMIT:
        raise ParameterError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def make_rng(seed: int) -> np.random.Generator:
    """Philox-backed generator keyed by a 64-bit seed."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(_check_seed(seed))))


def derive_seed(seed: int, index: int) -> int:
    """Hash ``(seed, index)`` into an independent 64-bit seed."""
    ss = np.random.SeedSequence([_check_seed(seed), int(index)])
    lo, hi = ss.generate_state(2, dtype=np.uint32)
    return int(lo) | (int(hi) << 32)


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OrientedGraph:
    """An oriented simple graph on vertices ``0..n-1``.

    ``arcs`` is an ``(m, 2)`` int64 array of arcs ``u -> v`` (meaning
    ``s_uv = +1``), sorted lexicographically and read-only.
    """

    n: int
    arcs: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = int(self.n)
        if n < 1:
            raise ParameterError(f"vertex count must be positive, got {n}")
        arcs = np.asarray(self.arcs, dtype=np.int64).reshape(-1, 2)
        if arcs.size:
            if arcs.min() < 0 or arcs.max() >= n:
                raise ParameterError(f"vertex id out of range [0, {n})")
            if np.any(arcs[:, 0] == arcs[:, 1]):
                raise ParameterError("self-loop in arc set")
            order = np.lexsort((arcs[:, 1], arcs[:, 0]))
            arcs = arcs[order]
            lo = np.minimum(arcs[:, 0], arcs[:, 1])
            hi = np.maximum(arcs[:, 0], arcs[:, 1])
            codes = np.sort(lo * n + hi)
            if np.any(codes[1:] == codes[:-1]):
                raise ParameterError("more than one arc on an unordered vertex pair")
        arcs = np.ascontiguousarray(arcs)
        arcs.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "arcs", arcs)

    @property
    def num_arcs(self) -> int:
        return int(self.arcs.shape[0])

    def arc_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self.arcs}

    def __eq__(self, other):
        if not isinstance(other, OrientedGraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.arcs, other.arcs)

    def __hash__(self):
        return hash((self.n, self.arcs.tobytes()))

    def __repr__(self):
        return f"OrientedGraph(n={self.n}, arcs={self.num_arcs})"


@dataclass(frozen=True)
class GnpParams:
    n: int
    p: float
    seed: int = 0

    def __post_init__(self):
        if int(self.n) < 1:
            raise ParameterError(f"n must be >= 1, got {self.n}")
        if not 0.0 <= float(self.p) <= 1.0:
            raise ParameterError(f"p must lie in [0, 1], got {self.p}")
        _check_seed(self.seed)


REGULAR_SAMPLERS = ("pairing", "steger-wormald")


@dataclass(frozen=True)
class RegularParams:
    """Parameters for a random d-regular oriented graph.

    ``sampler="pairing"`` (default) is the configuration model with full
    rejection: exactly uniform, but the acceptance rate decays like
    ``exp(-(d^2 - 1) / 4)`` so it is only usable for small d.
    ``sampler="steger-wormald"`` pairs stubs sequentially while avoiding
    loops and multi-edges. It is fast for large d but only asymptotically
    uniform, so it must be requested explicitly.
    """

    n: int
    d: int
    seed: int = 0
    max_attempts: int = 1000
    sampler: str = "pairing"

    def __post_init__(self):
        n, d = int(self.n), int(self.d)
        if n < 1:
            raise ParameterError(f"n must be >= 1, got {n}")
        if not 0 <= d < n:
            raise ParameterError(f"degree must satisfy 0 <= d < n, got d={d}, n={n}")
        if (n * d) % 2:
            raise ParameterError(f"n*d must be even, got n={n}, d={d}")
        if int(self.max_attempts) < 1:
            raise ParameterError("max_attempts must be positive")
        if self.sampler not in REGULAR_SAMPLERS:
            raise ParameterError(f"unknown sampler {self.sampler!r}; choose from {REGULAR_SAMPLERS}")
        _check_seed(self.seed)


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------


def _orient(n: int, lo: np.ndarray, hi: np.ndarray, rng: np.random.Generator) -> OrientedGraph:
    flip = rng.random(lo.size) < 0.5
    src = np.where(flip, hi, lo)
    dst = np.where(flip, lo, hi)
    return OrientedGraph(n, np.column_stack([src, dst]))


def sample_gnp_oriented(params: GnpParams) -> OrientedGraph:
    """Sample G^sigma(n, p).

    Every unordered pair is present independently with probability ``p``;
    each present pair is then oriented either way with probability 1/2.
    """
    n, p = int(params.n), float(params.p)
    rng = make_rng(params.seed)
    iu, ju = np.triu_indices(n, k=1)
    present = rng.random(iu.size) < p
    return _orient(n, iu[present].astype(np.int64), ju[present].astype(np.int64), rng)


def _pairing_attempt(n: int, d: int, rng: np.random.Generator):
    stubs = rng.permutation(np.repeat(np.arange(n, dtype=np.int64), d))
    if not _kernels.pairing_is_simple(stubs, n):
        return None
    a, b = stubs[0::2], stubs[1::2]
    return np.minimum(a, b), np.maximum(a, b)


def _steger_wormald_attempt(n: int, d: int, rng: np.random.Generator):
    adj = np.zeros((n, n), dtype=np.bool_)
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    while stubs.size:
        stubs = _kernels.sw_round(rng.permutation(stubs), adj)
        if stubs.size and not _has_suitable_pair(stubs, adj):
            return None
    lo, hi = np.nonzero(np.triu(adj))
    return lo.astype(np.int64), hi.astype(np.int64)


def _has_suitable_pair(stubs: np.ndarray, adj: np.ndarray) -> bool:
    verts = np.unique(stubs)
    sub = adj[np.ix_(verts, verts)]
    np.fill_diagonal(sub, True)
    return not sub.all()


def sample_regular_oriented(params: RegularParams) -> OrientedGraph:
    """Sample a random d-regular graph and orient each edge uniformly.

    Raises :class:`SamplingError` once ``max_attempts`` samples have been
    rejected; the caller may raise the budget.
    """
    n, d = int(params.n), int(params.d)
    rng = make_rng(params.seed)
    attempt = _pairing_attempt if params.sampler == "pairing" else _steger_wormald_attempt
    for _ in range(int(params.max_attempts)):
        edges = attempt(n, d, rng)
        if edges is not None:
            lo, hi = edges
            order = np.lexsort((hi, lo))
            return _orient(n, lo[order], hi[order], rng)
    raise SamplingError(
        f"{params.sampler} sampler rejected {params.max_attempts} attempts for n={n}, d={d}; "
        "raise max_attempts or use a smaller degree"
    )


# ---------------------------------------------------------------------------
# inspection
# ---------------------------------------------------------------------------


def degree_sequence(g: OrientedGraph) -> list[tuple[int, int]]:
    """``(in_degree, out_degree)`` for every vertex."""
    out_deg = np.bincount(g.arcs[:, 0], minlength=g.n)
    in_deg = np.bincount(g.arcs[:, 1], minlength=g.n)
    return [(int(i), int(o)) for i, o in zip(in_deg, out_deg)]


def is_simple_regular(g: OrientedGraph, d: int) -> bool:
    # loops and digons are already excluded by OrientedGraph itself
    total = np.bincount(g.arcs.ravel(), minlength=g.n)
    return bool(np.all(total == d))


# ---------------------------------------------------------------------------
# edge-list I/O
# ---------------------------------------------------------------------------


def format_edge_list(g: OrientedGraph) -> str:
    lines = [f"{g.n} {g.num_arcs}"]
    lines.extend(f"{u} {v}" for u, v in g.arcs.tolist())
    return "\n".join(lines) + "\n"


def write_edge_list(g: OrientedGraph, sink: PathOrStream) -> None:
    """Write ``"n m"`` then one ``"u v"`` line per arc, LF-terminated."""
    text = format_edge_list(g)
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def _parse_ints(line: str, lineno: int, what: str) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise EdgeListError(lineno, f"expected two integers ({what}), got {line!r}")
    try:
        a, b = int(parts[0]), int(parts[1])
    except ValueError:
        raise EdgeListError(lineno, f"non-integer field in {line!r}") from None
    return a, b


def parse_edge_list(text: str) -> OrientedGraph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise EdgeListError(1, "missing header")
    n, m = _parse_ints(lines[0], 1, "n m")
    if n < 1 or m < 0:
        raise EdgeListError(1, f"invalid header n={n}, m={m}")
    if len(lines) - 1 != m:
        raise EdgeListError(len(lines), f"header declares {m} arcs, found {len(lines) - 1}")
    arcs = np.empty((m, 2), dtype=np.int64)
    seen = {}
    for i, line in enumerate(lines[1:]):
        lineno = i + 2
        u, v = _parse_ints(line, lineno, "u v")
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListError(lineno, f"vertex id out of range [0, {n})")
        if u == v:
            raise EdgeListError(lineno, f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise EdgeListError(lineno, f"pair {key} already given on line {seen[key]}")
        seen[key] = lineno
        arcs[i] = (u, v)
    return OrientedGraph(n, arcs)


def read_edge_list(source: PathOrStream) -> OrientedGraph:
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, encoding="ascii", newline="") as fh:
            text = fh.read()
    if "\r" in text:
        raise EdgeListError(1, "CR line endings are not allowed")
    return parse_edge_list(text)

