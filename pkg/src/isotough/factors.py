"""Fractional [a,b]-factor feasibility and the acceptance requirement.

A fractional [a,b]-factor is an edge weighting h: E -> [0,1] whose sum at
every vertex lies in [a,b].  Feasibility is decided exactly by integral
max-flow on the bipartite double cover: source -> left copy with bounds
[a,b], one unit arc per edge direction between the copies, right copy ->
sink with bounds [a,b].  Lower bounds are removed with the standard
circulation transform.  Any feasible weighting can be rebalanced to that
form, with h recovered as half the sum of the two arc flows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .errors import ConsistencyError, ScopeError
from .graphs import Graph
from .rational import Ratio
from .toughness import exact_isolated_toughness_variant


@dataclass(frozen=True)
class FactorSpec:
    """Vertex-sum window for a fractional factor; a = b = k is a k-factor."""

    a: int
    b: int

    def __post_init__(self):
        if not (isinstance(self.a, int) and isinstance(self.b, int)):
            raise ValueError("factor bounds must be integers")
        if not 1 <= self.a <= self.b:
            raise ValueError(f"need 1 <= a <= b, got [{self.a}, {self.b}]")

    @classmethod
    def k_factor(cls, k: int) -> "FactorSpec":
        return cls(k, k)


def _solve_double_cover(g: Graph, spec: FactorSpec):
    """Max-flow on the transformed double cover; returns (feasible, flow)."""
    n = g.n
    if n == 0:
        return True, None
    a, b = spec.a, spec.b
    source, sink = 0, 1          # circulation super source / sink
    s, t = 2, 3                  # original terminals
    left = lambda v: 4 + v
    right = lambda v: 4 + n + v

    caps: dict[tuple[int, int], int] = {}

    def add(u: int, v: int, c: int) -> None:
        if c > 0:
            caps[u, v] = caps.get((u, v), 0) + c

    for v in range(n):
        add(s, left(v), b - a)       # arc s -> v_L with lower bound a
        add(source, left(v), a)
        add(s, sink, a)
        add(right(v), t, b - a)      # arc v_R -> t with lower bound a
        add(source, t, a)
        add(right(v), sink, a)
    for u, v in g.edges():
        add(left(u), right(v), 1)
        add(left(v), right(u), 1)
    add(t, s, n * b)                 # closes the circulation

    size = 4 + 2 * n
    rows = np.fromiter((u for u, _ in caps), dtype=np.int32, count=len(caps))
    cols = np.fromiter((v for _, v in caps), dtype=np.int32, count=len(caps))
    data = np.fromiter(caps.values(), dtype=np.int32, count=len(caps))
    matrix = csr_matrix((data, (rows, cols)), shape=(size, size))
    result = maximum_flow(matrix, source, sink)
    feasible = result.flow_value == 2 * n * a
    return feasible, (result.flow if feasible else None)


def has_fractional_factor(g: Graph, spec: FactorSpec) -> bool:
    feasible, _ = _solve_double_cover(g, spec)
    return feasible


def fractional_k_factor(g: Graph, k: int
                        ) -> Optional[dict[tuple[int, int], Fraction]]:
    """A concrete half-integral k-factor, or None when infeasible."""
    spec = FactorSpec.k_factor(k)
    feasible, flow = _solve_double_cover(g, spec)
    if not feasible:
        return None
    n = g.n
    assignment: dict[tuple[int, int], Fraction] = {}
    for u, v in g.edges():
        f1 = int(flow[4 + u, 4 + n + v])
        f2 = int(flow[4 + v, 4 + n + u])
        assignment[u, v] = Fraction(f1 + f2, 2)
    return assignment


def delta_scope(n: int, k: int) -> tuple[int, int]:
    """Minimum-degree interval worth searching at order n for capacity k.

    Once the minimum degree reaches n/2 (and n >= 4k-5), a fractional
    k-factor is guaranteed outright, so the search tops out just below.
    """
    if k < 1 or n < 1:
        raise ValueError("need n >= 1 and k >= 1")
    lo = k
    hi = (n + 1) // 2 - 1 if n >= 4 * k - 5 else n - 1
    if lo > hi:
        raise ScopeError(
            f"no admissible minimum degree for n={n}, k={k}"
            f" (interval [{lo}, {hi}] is empty)")
    return lo, hi


def requirement_bound(k: int, delta: int) -> Fraction:
    """Strict lower bound the variant toughness must exceed."""
    t = delta - k
    if t < 0:
        raise ValueError("bound undefined below minimum degree k")
    return Fraction(k) + Fraction(k - 1, t + 1)


@dataclass(frozen=True)
class RequirementVerdict:
    accepted: bool
    reason: str
    delta: int
    bound: Optional[Fraction]
    value: Optional[Ratio]


def requirement_check(g: Graph, k: int, scope: tuple[int, int],
                      value: Optional[Ratio] = None) -> RequirementVerdict:
    """Accept iff the minimum degree sits in scope and the variant
    toughness (screening or exact, as supplied) strictly exceeds the
    degree-dependent bound."""
    if k < 2:
        raise ValueError("capacity k must be at least 2")
    delta = g.min_degree
    if delta < k:
        return RequirementVerdict(False, "degree-below-k", delta, None, value)
    lo, hi = scope
    if not lo <= delta <= hi:
        return RequirementVerdict(False, "degree-out-of-scope", delta, None,
                                  value)
    if value is None:
        value = exact_isolated_toughness_variant(g).value
    bound = requirement_bound(k, delta)
    if value > bound:
        return RequirementVerdict(True, "accepted", delta, bound, value)
    return RequirementVerdict(False, "value-not-above-bound", delta, bound,
                              value)


@dataclass(frozen=True)
class FactorCertificate:
    delta: int
    i_prime: Ratio
    bound: Optional[Fraction]
    accepted: bool
    reason: str
    factor_exists: bool
    k: int


def certify_requirement(g: Graph, k: int,
                        scope: Optional[tuple[int, int]] = None
                        ) -> FactorCertificate:
    """Exact requirement check plus an independent factor-existence check.

    An accepted graph is guaranteed a fractional k-factor; if the flow
    checker disagrees the two routes are inconsistent and we fail loudly.
    """
    if scope is None:
        scope = (k, max(k, g.n - 1))
    exact = exact_isolated_toughness_variant(g)
    verdict = requirement_check(g, k, scope, value=exact.value)
    factor = has_fractional_factor(g, FactorSpec.k_factor(k))
    if verdict.accepted and not factor:
        raise ConsistencyError(
            "accepted graph lacks a fractional factor: "
            f"n={g.n} bits={g.bits()} k={k} delta={verdict.delta} "
            f"value={exact.value}")
    return FactorCertificate(delta=verdict.delta, i_prime=exact.value,
                             bound=verdict.bound, accepted=verdict.accepted,
                             reason=verdict.reason, factor_exists=factor,
                             k=k)
