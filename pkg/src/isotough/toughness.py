"""Isolated toughness, its variant, and a fast stochastic upper bound.

Both exact parameters minimize |S| / f(i(G-S)) over vertex subsets S whose
deletion leaves at least two isolated vertices; the plain parameter divides
by i(G-S), the variant by i(G-S) - 1.  Complete graphs have no qualifying
S, so both parameters are INFINITY there.

The exact engine scans every subset bitmask in fixed-size chunks with
numpy.  Ratios are compared as scaled integers (|S| multiplied by
lcm(1..24) over the denominator), so all comparisons are exact and every
global minimizer is collected.

The estimator walks two deletion tracks, one driven by a degree-roulette
draw and one by the maximum degree, recording |deleted| / (isolated - 1)
whenever a deletion leaves at least two isolated vertices.  Its result is
always an upper bound on the exact variant value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import CapacityError
from .graphs import Graph
from .rational import INFINITY, Ratio

DEFAULT_EXACT_LIMIT = 24
_SCAN_CHUNK = 1 << 20

# lcm of every denominator that can appear up to the order limit
_LCM = math.lcm(*range(1, DEFAULT_EXACT_LIMIT + 1))

def _popcount_table() -> np.ndarray:
    bits = np.arange(1 << 16, dtype=np.int64)
    bits = (bits & 0x5555) + ((bits >> 1) & 0x5555)
    bits = (bits & 0x3333) + ((bits >> 2) & 0x3333)
    bits = (bits & 0x0F0F) + ((bits >> 4) & 0x0F0F)
    return (bits & 0x00FF) + ((bits >> 8) & 0x00FF)


_POPCOUNT16 = _popcount_table()


@dataclass(frozen=True)
class ToughnessResult:
    value: Ratio
    minimizers: tuple[tuple[int, ...], ...]
    witness_i: tuple[int, ...]


def _subset_scan(g: Graph, variant: bool, limit: int,
                 chunk: int = _SCAN_CHUNK) -> ToughnessResult:
    n = g.n
    if n < 1:
        raise ValueError("toughness needs at least one vertex")
    if n > limit:
        raise CapacityError(
            f"exact toughness is gated to order <= {limit}; "
            "use the pseudo-greedy estimator for larger graphs")
    if g.is_complete():
        return ToughnessResult(INFINITY, (), ())

    adj = np.array(g.adjacency, dtype=np.int64)
    # raising the limit past the default needs a wider common denominator
    scale = _LCM if n <= DEFAULT_EXACT_LIMIT \
        else math.lcm(*range(1, n + 1))
    lut = np.ones(n + 1, dtype=np.int64)
    for i in range(2, n + 1):
        lut[i] = scale // (i - 1 if variant else i)

    best_scaled: Optional[int] = None
    best_masks: list[int] = []
    total = 1 << n
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        iso = np.zeros(len(masks), dtype=np.int16)
        for v in range(n):
            outside = ((masks >> v) & 1) == 0
            covered = (adj[v] & masks) == adj[v]
            iso += outside & covered
        qualifies = iso >= 2
        if not qualifies.any():
            continue
        masks_q = masks[qualifies]
        sizes = _POPCOUNT16[masks_q & 0xFFFF] + _POPCOUNT16[masks_q >> 16]
        scaled = sizes * lut[iso[qualifies]]
        low = int(scaled.min())
        if best_scaled is None or low < best_scaled:
            best_scaled = low
            best_masks = [int(m) for m in masks_q[scaled == low]]
        elif low == best_scaled:
            best_masks.extend(int(m) for m in masks_q[scaled == low])

    if best_scaled is None:
        return ToughnessResult(INFINITY, (), ())
    value = Fraction(best_scaled, scale)
    minimizers = tuple(tuple(v for v in range(n) if (mask >> v) & 1)
                       for mask in best_masks)
    from .graphs import isolated_count
    witness = tuple(isolated_count(g, mask) for mask in best_masks)
    return ToughnessResult(value, minimizers, witness)


def exact_isolated_toughness(g: Graph, *,
                             limit: int = DEFAULT_EXACT_LIMIT,
                             chunk: int = _SCAN_CHUNK) -> ToughnessResult:
    """min |S| / i(G-S) over S with i(G-S) >= 2, with all minimizers."""
    return _subset_scan(g, variant=False, limit=limit, chunk=chunk)


def exact_isolated_toughness_variant(g: Graph, *,
                                     limit: int = DEFAULT_EXACT_LIMIT,
                                     chunk: int = _SCAN_CHUNK
                                     ) -> ToughnessResult:
    """min |S| / (i(G-S) - 1) over S with i(G-S) >= 2."""
    return _subset_scan(g, variant=True, limit=limit, chunk=chunk)


def roulette_select(degrees: Sequence[int], p: float) -> int:
    """Index j whose cumulative-degree interval contains p.

    The interval of vertex j is [sum(deg[:j])/T, sum(deg[:j+1])/T), so a
    zero-degree vertex is never selected.
    """
    if not 0.0 <= p < 1.0:
        raise ValueError(f"p must lie in [0, 1), got {p}")
    total = sum(degrees)
    if total <= 0:
        raise ValueError("no selectable vertex: all degrees are zero")
    target = p * total
    acc = 0
    last_positive = -1
    for j, d in enumerate(degrees):
        if d < 0:
            raise ValueError(f"negative degree at {j}")
        if d > 0:
            last_positive = j
        acc += d
        if target < acc:
            return j
    return last_positive  # float rounding pushed target to the top edge


@dataclass(frozen=True)
class PseudoGreedyStep:
    step: int
    roulette_deleted: int
    maxdeg_deleted: int
    roulette_isolated: int
    maxdeg_isolated: int
    roulette_ratio: Optional[Fraction]
    maxdeg_ratio: Optional[Fraction]
    reset: bool


@dataclass(frozen=True)
class PseudoGreedyTrace:
    estimate: Ratio
    deletion_sequence: tuple[int, ...]
    steps: tuple[PseudoGreedyStep, ...] = ()
    resets: int = 0
    delegated: bool = False


class _Track:
    __slots__ = ("remaining", "deg", "deleted", "adjacency")

    def __init__(self, g: Graph):
        self.remaining = (1 << g.n) - 1
        self.deg = list(g.degrees)
        self.deleted: list[int] = []
        self.adjacency = g.adjacency

    def clone_from(self, other: "_Track") -> None:
        self.remaining = other.remaining
        self.deg = list(other.deg)
        self.deleted = list(other.deleted)

    def delete(self, v: int) -> None:
        mask = self.adjacency[v] & self.remaining
        while mask:
            low = mask & -mask
            self.deg[low.bit_length() - 1] -= 1
            mask ^= low
        self.remaining &= ~(1 << v)
        self.deg[v] = 0
        self.deleted.append(v)

    def isolated(self) -> int:
        remaining = self.remaining
        return sum(1 for v, d in enumerate(self.deg)
                   if d == 0 and (remaining >> v) & 1)

    def pick_roulette(self, rng) -> int:
        if sum(self.deg) > 0:
            return roulette_select(self.deg, rng.random())
        return (self.remaining & -self.remaining).bit_length() - 1

    def pick_max_degree(self) -> int:
        best_v, best_d = -1, -1
        remaining = self.remaining
        for v, d in enumerate(self.deg):
            if (remaining >> v) & 1 and d > best_d:
                best_v, best_d = v, d
        return best_v


def pseudo_greedy_estimate(g: Graph, rng) -> PseudoGreedyTrace:
    """Two-track greedy upper bound for the variant toughness.

    One uniform draw is consumed per step while the roulette track still
    has an edge; with no edge left both tracks fall back to deleting the
    lowest remaining index.  Orders below 4 delegate to the exact engine.
    """
    n = g.n
    if n < 4:
        exact = exact_isolated_toughness_variant(g)
        witness = exact.minimizers[0] if exact.minimizers else ()
        return PseudoGreedyTrace(estimate=exact.value,
                                 deletion_sequence=witness,
                                 delegated=True)

    track_r = _Track(g)
    track_m = _Track(g)
    best_num, best_den = -1, 0  # -1/0 stands for INFINITY
    best_sequence: tuple[int, ...] = ()
    steps: list[PseudoGreedyStep] = []
    resets = 0

    def better(step: int, iso: int) -> bool:
        # step/(iso-1) < best, with the empty best treated as infinite
        if best_num < 0:
            return True
        return step * best_den < best_num * (iso - 1)

    for step in range(1, n - 2):
        v_r = track_r.pick_roulette(rng)
        v_m = track_m.pick_max_degree()
        track_r.delete(v_r)
        track_m.delete(v_m)
        iso_r = track_r.isolated()
        iso_m = track_m.isolated()

        ratio_r = Fraction(step, iso_r - 1) if iso_r >= 2 else None
        reset = False
        if iso_r >= 2 and better(step, iso_r):
            best_num, best_den = step, iso_r - 1
            best_sequence = tuple(track_r.deleted)
        else:
            reset = True
            resets += 1
            track_r.clone_from(track_m)

        ratio_m = Fraction(step, iso_m - 1) if iso_m >= 2 else None
        if iso_m >= 2 and better(step, iso_m):
            best_num, best_den = step, iso_m - 1
            best_sequence = tuple(track_m.deleted)

        steps.append(PseudoGreedyStep(
            step=step, roulette_deleted=v_r, maxdeg_deleted=v_m,
            roulette_isolated=iso_r, maxdeg_isolated=iso_m,
            roulette_ratio=ratio_r, maxdeg_ratio=ratio_m, reset=reset))

    estimate: Ratio = INFINITY if best_num < 0 else Fraction(best_num,
                                                             best_den)
    return PseudoGreedyTrace(estimate=estimate,
                             deletion_sequence=best_sequence,
                             steps=tuple(steps), resets=resets)
