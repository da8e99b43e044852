"""Growth of conjugacy classes under iterated automorphisms.

Two instruments live here:

* an empirical stretch-factor estimator: iterate the map on seed words,
  record cyclically reduced lengths, and read the growth rate off the
  ratio L(n)/L(m) over the last half window (m = ceil(n/2)).  The plain
  n-th root converges like 1 + O(log n / n); the half-window ratio kills
  the constant prefactor, so useful accuracy arrives at small depth.

* a bounded periodic-conjugacy-class scanner: enumerate canonical cyclic
  words up to a length bound and test whether any returns to itself within
  a period bound.  An empty result is a bounded certificate ("no periodic
  class with length <= L and period <= K"), not a proof that none exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .automorphisms import FreeMap, NotAutomorphismError, apply, invert
from .words import (
    CapacityExceeded,
    CyclicWord,
    Word,
    _min_rotation,
    canonical_cyclic,
    cyclic_length,
    cyclic_reduce,
)

__all__ = [
    "PeriodicOrbit",
    "SeedEstimate",
    "StretchEstimate",
    "StretchPair",
    "enumerate_canonical_cyclic",
    "estimate_stretch",
    "scan_periodic_classes",
    "stretch_pair",
]

DEFAULT_DEPTH = 80
DEFAULT_LENGTH_CAP = 10**6
CONVERGENCE_RTOL = 1e-3


@dataclass(frozen=True)
class SeedEstimate:
    """Length history and growth estimate for a single seed word."""

    seed: Word
    lengths: tuple[int, ...]
    estimates: tuple[float, ...]
    lambda_raw: float
    window: tuple[int, int]
    converged: bool
    capped: bool


@dataclass(frozen=True)
class StretchEstimate:
    """Stretch-factor estimate: the max over seeds, with its winning seed's
    length history and estimation window attached."""

    seed: Word
    lengths: tuple[int, ...]
    lambda_hat: float
    window: tuple[int, int]
    converged: bool
    capped: bool
    per_seed: tuple[SeedEstimate, ...]


@dataclass(frozen=True)
class StretchPair:
    """Stretch estimates for a map and its inverse, reported (min, max)."""

    low: float
    high: float
    forward: StretchEstimate
    backward: StretchEstimate

    def __iter__(self):
        return iter((self.low, self.high))


@dataclass(frozen=True)
class PeriodicOrbit:
    """A conjugacy class returning to itself after ``period`` applications."""

    rep: CyclicWord
    period: int


def _track_seed(
    f: FreeMap, seed: Word, depth: int, length_cap: int
) -> SeedEstimate:
    # Iterating on the cyclic core is sound (images of conjugate words are
    # conjugate) and stops conjugator prefixes from piling up.
    w, _ = cyclic_reduce(seed)
    lengths = [len(w)]
    capped = False
    for _ in range(depth):
        try:
            w, _ = cyclic_reduce(apply(f, w))
        except CapacityExceeded:
            capped = True
            break
        lengths.append(len(w))
        if len(w) > length_cap:
            break
    estimates = []
    for k in range(2, len(lengths)):
        m = (k + 1) // 2
        if lengths[m] > 0 and lengths[k] > 0:
            estimates.append((lengths[k] / lengths[m]) ** (1.0 / (k - m)))
        else:
            estimates.append(1.0)
    if estimates:
        lambda_raw = estimates[-1]
        n = len(lengths) - 1
        window = ((n + 1) // 2, n)
    else:
        lambda_raw = 1.0
        window = (0, len(lengths) - 1)
    tail = estimates[-3:]
    converged = (
        len(tail) == 3
        and max(tail) - min(tail) <= CONVERGENCE_RTOL * max(tail[-1], 1.0)
    )
    return SeedEstimate(
        seed=seed,
        lengths=tuple(lengths),
        estimates=tuple(estimates),
        lambda_raw=lambda_raw,
        window=window,
        converged=converged,
        capped=capped,
    )


def estimate_stretch(
    f: FreeMap,
    depth: int = DEFAULT_DEPTH,
    seeds: Sequence[Word] | None = None,
    length_cap: int = DEFAULT_LENGTH_CAP,
) -> StretchEstimate:
    """Empirical stretch factor of ``f``: max growth rate over the seeds.

    Seeds default to the generators, which realizes the supremum for the
    fully irreducible maps this package targets (a heuristic in general).
    Iteration stops at ``depth`` or once a length passes ``length_cap``;
    running into the global letter cap truncates the history and sets
    ``capped`` instead of failing.  The reported value is clamped below at
    1.0, the true lower bound for automorphisms.
    """
    if depth < 2:
        raise ValueError("depth must be at least 2")
    if seeds is None:
        seeds = [Word._wrap(f.rank, (i,)) for i in range(1, f.rank + 1)]
    if not seeds:
        raise ValueError("need at least one seed")
    tracks = tuple(_track_seed(f, s, depth, length_cap) for s in seeds)
    winner = max(tracks, key=lambda t: t.lambda_raw)
    return StretchEstimate(
        seed=winner.seed,
        lengths=winner.lengths,
        lambda_hat=max(winner.lambda_raw, 1.0),
        window=winner.window,
        converged=all(t.converged for t in tracks),
        capped=any(t.capped for t in tracks),
        per_seed=tracks,
    )


def stretch_pair(
    f: FreeMap,
    depth: int = DEFAULT_DEPTH,
    length_cap: int = DEFAULT_LENGTH_CAP,
) -> StretchPair:
    """Stretch estimates for ``f`` and its inverse as an unordered pair.

    Raises :class:`NotAutomorphismError` when ``f`` is not invertible.
    """
    g = invert(f)
    if g is None:
        raise NotAutomorphismError("stretch pair needs an automorphism")
    forward = estimate_stretch(f, depth=depth, length_cap=length_cap)
    backward = estimate_stretch(g, depth=depth, length_cap=length_cap)
    low = min(forward.lambda_hat, backward.lambda_hat)
    high = max(forward.lambda_hat, backward.lambda_hat)
    return StretchPair(low=low, high=high, forward=forward, backward=backward)


def enumerate_canonical_cyclic(rank: int, max_len: int) -> Iterator[CyclicWord]:
    """All canonical cyclic words of length 1..max_len, in canonical order.

    Backtracks over letter strings with the no-adjacent-inverse and cyclic
    reduction constraints, keeping only the rotation-minimal form of each
    class.
    """
    alphabet = [x for g in range(1, rank + 1) for x in (g, -g)]

    def extend(prefix: list[int], length: int):
        if len(prefix) == length:
            if prefix[-1] != -prefix[0]:
                raw = tuple(prefix)
                if raw == _min_rotation(raw):
                    yield CyclicWord._wrap(rank, raw)
            return
        for x in alphabet:
            if prefix and prefix[-1] == -x:
                continue
            prefix.append(x)
            yield from extend(prefix, length)
            prefix.pop()

    for length in range(1, max_len + 1):
        for x in alphabet:
            yield from extend([x], length)


def scan_periodic_classes(
    f: FreeMap, max_len: int = 6, max_period: int = 6
) -> list[PeriodicOrbit]:
    """Periodic conjugacy classes with length <= max_len, period <= max_period.

    For each candidate class the orbit is followed for up to ``max_period``
    steps; the minimal period is reported.  A candidate is discarded early
    once its length passes max_len * s^(K-k), where s is the maximum
    one-step growth factor of the inverse map: lengths can dip back by at
    most a factor s per step, so such an orbit cannot return to length
    <= max_len within the remaining steps.  An empty list certifies only
    the scanned slice, not atoroidality.
    """
    g = invert(f)
    if g is None:
        raise NotAutomorphismError("periodic-class scan needs an automorphism")
    if max_len < 1 or max_period < 1:
        raise ValueError("max_len and max_period must be positive")
    shrink = max(len(img) for img in g.images)
    bounds = [max_len * shrink ** (max_period - k) for k in range(max_period + 1)]
    orbits = []
    for rep in enumerate_canonical_cyclic(f.rank, max_len):
        w = rep.to_word()
        target = len(rep)
        for k in range(1, max_period + 1):
            w, _ = cyclic_reduce(apply(f, w))
            if len(w) > bounds[k]:
                break
            if len(w) == target and canonical_cyclic(w) == rep:
                orbits.append(PeriodicOrbit(rep, k))
                break
    orbits.sort(key=lambda orbit: orbit.rep.sort_key())
    return orbits
