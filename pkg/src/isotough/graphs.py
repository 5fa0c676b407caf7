"""Simple undirected graphs encoded as upper-triangular bit strings.

A graph on n vertices is a single integer whose bit p holds the presence of
the p-th vertex pair in row-major upper-triangular order:
(0,1), (0,2), ..., (0,n-1), (1,2), ..., (n-2,n-1).
The encoding doubles as the chromosome of the evolutionary solver, so all
operations here are pure functions on immutable values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

from .errors import CapacityError, GraphParseError

# Encoded graphs above this order are refused (quadratic bit strings grow
# fast and every exact routine downstream is exponential in n anyway).
MAX_ORDER = 64

VertexSetLike = Union[int, Iterable[int]]


def pair_count(n: int) -> int:
    """Number of encoded bits for order n."""
    return n * (n - 1) // 2


def edge_index(u: int, v: int, n: int) -> int:
    """Bit position of the unordered pair {u, v} at order n."""
    if not (0 <= u < n and 0 <= v < n):
        raise ValueError(f"vertex out of range for order {n}: {(u, v)}")
    if u == v:
        raise ValueError(f"self-loops are not encodable: {(u, v)}")
    if u > v:
        u, v = v, u
    row_start = u * (n - 1) - u * (u - 1) // 2
    return row_start + (v - u - 1)


def index_pair(position: int, n: int) -> tuple[int, int]:
    """Inverse of edge_index."""
    if not 0 <= position < pair_count(n):
        raise ValueError(f"bit position out of range for order {n}: {position}")
    u = 0
    row = n - 1
    while position >= row:
        position -= row
        u += 1
        row -= 1
    return u, u + 1 + position


@dataclass(frozen=True)
class Graph:
    """Immutable graph; `code` packs the upper-triangular bit string."""

    n: int
    code: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"order must be non-negative, got {self.n}")
        if self.n > MAX_ORDER:
            raise CapacityError(
                f"order {self.n} exceeds the supported maximum {MAX_ORDER}")
        if not 0 <= self.code < 1 << pair_count(self.n):
            raise ValueError("encoded bits do not fit the given order")

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbor bitmask per vertex."""
        masks = [0] * self.n
        position = 0
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if (self.code >> position) & 1:
                    masks[u] |= 1 << v
                    masks[v] |= 1 << u
                position += 1
        return tuple(masks)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(mask.bit_count() for mask in self.adjacency)

    @property
    def min_degree(self) -> int:
        if self.n == 0:
            raise ValueError("order-0 graph has no degrees")
        return min(self.degrees)

    @property
    def max_degree(self) -> int:
        if self.n == 0:
            raise ValueError("order-0 graph has no degrees")
        return max(self.degrees)

    @property
    def edge_count(self) -> int:
        return self.code.bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.code >> edge_index(u, v, self.n)) & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges in bit-position order."""
        for position in range(pair_count(self.n)):
            if (self.code >> position) & 1:
                yield index_pair(position, self.n)

    def bits(self) -> str:
        """The encoding as a 0/1 string, bit position 0 first."""
        return format(self.code, f"0{pair_count(self.n)}b")[::-1] \
            if self.n > 1 else ""

    def is_complete(self) -> bool:
        return self.code == (1 << pair_count(self.n)) - 1

    def neighbors(self, v: int) -> tuple[int, ...]:
        mask = self.adjacency[v]
        return tuple(u for u in range(self.n) if (mask >> u) & 1)


def from_bits(n: int, bits: Union[str, Sequence[int]]) -> Graph:
    """Build a graph from an explicit 0/1 sequence (position 0 first)."""
    if len(bits) != pair_count(n):
        raise GraphParseError(
            f"expected {pair_count(n)} bits for order {n}, got {len(bits)}")
    code = 0
    for position, bit in enumerate(bits):
        if isinstance(bit, str):
            if bit not in "01":
                raise GraphParseError(f"invalid bit {bit!r}", position)
            bit = int(bit)
        elif bit not in (0, 1):
            raise GraphParseError(f"invalid bit {bit!r}", position)
        code |= bit << position
    return Graph(n, code)


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    code = 0
    for u, v in edges:
        code |= 1 << edge_index(u, v, n)
    return Graph(n, code)


def vertex_mask(s: VertexSetLike, n: int) -> int:
    """Normalize a vertex collection (or ready-made bitmask) to a bitmask."""
    if isinstance(s, int):
        mask = s
    else:
        mask = 0
        for v in s:
            mask |= 1 << v
    if not 0 <= mask < 1 << n:
        raise ValueError(f"vertex set does not fit order {n}")
    return mask


def isolated_count(g: Graph, s: VertexSetLike) -> int:
    """Number of degree-zero vertices left after deleting the set s."""
    mask = vertex_mask(s, g.n)
    outside = ((1 << g.n) - 1) & ~mask
    adjacency = g.adjacency
    return sum(1 for v in range(g.n)
               if (outside >> v) & 1 and adjacency[v] & outside == 0)


def hamming_distance(g1: Graph, g2: Graph) -> int:
    if g1.n != g2.n:
        raise ValueError("hamming distance needs equal orders")
    return (g1.code ^ g2.code).bit_count()


def join(g1: Graph, g2: Graph, max_order: int = MAX_ORDER) -> Graph:
    """Graph join: disjoint union plus every cross edge."""
    n = g1.n + g2.n
    if n > max_order:
        raise CapacityError(f"joined order {n} exceeds the limit {max_order}")
    edges = list(g1.edges())
    edges += [(u + g1.n, v + g1.n) for u, v in g2.edges()]
    edges += [(u, v) for u in range(g1.n) for v in range(g1.n, n)]
    return from_edges(n, edges)


# ----- named families -------------------------------------------------------

def complete(n: int) -> Graph:
    return Graph(n, (1 << pair_count(n)) - 1)


def empty_graph(n: int) -> Graph:
    return Graph(n, 0)


def star(n: int) -> Graph:
    """K_{1,n-1}: vertex 0 joined to every other vertex."""
    if n < 1:
        raise ValueError("star needs at least one vertex")
    return from_edges(n, [(0, v) for v in range(1, n)])


def disjoint_cliques(m: int, k: int) -> Graph:
    """m disjoint copies of K_k."""
    if m < 1 or k < 1:
        raise ValueError("need m >= 1 and k >= 1")
    edges = []
    for block in range(m):
        base = block * k
        edges += [(base + u, base + v)
                  for u in range(k) for v in range(u + 1, k)]
    return from_edges(m * k, edges)


def clique_join_blocks(c: int, m: int, k: int) -> Graph:
    """K_c joined with m disjoint copies of K_k."""
    return join(complete(c), disjoint_cliques(m, k))


def clique_join_singles(c: int, d: int) -> Graph:
    """K_c joined with d isolated vertices."""
    if d < 1:
        raise ValueError("need d >= 1")
    return join(complete(c), empty_graph(d))


def counterexample_family(k: int, t: int) -> Graph:
    """K_{t+1} joined with (t+2) copies of K_k.

    Minimum degree k+t; the variant toughness sits exactly on the strict
    acceptance bound, and no fractional k-factor exists.
    """
    if k < 1 or t < 0:
        raise ValueError("need k >= 1 and t >= 0")
    return clique_join_blocks(t + 1, t + 2, k)


def extremal_family(k: int, l: int) -> Graph:
    """K_{l-1} joined with l copies of K_k (the tight family G_l)."""
    if k < 1 or l < 2:
        raise ValueError("need k >= 1 and l >= 2")
    return clique_join_blocks(l - 1, l, k)


# ----- serialization --------------------------------------------------------

def graph_to_json(g: Graph, i_prime: str | None = None) -> dict:
    """JSON-ready dict; computes the variant toughness unless supplied."""
    from .rational import format_ratio
    if i_prime is None:
        from .toughness import exact_isolated_toughness_variant
        i_prime = format_ratio(exact_isolated_toughness_variant(g).value)
    return {
        "n": g.n,
        "bits": g.bits(),
        "edges": [list(e) for e in g.edges()],
        "delta": g.min_degree if g.n else 0,
        "i_prime": i_prime,
    }


def graph_to_json_text(g: Graph, i_prime: str | None = None) -> str:
    return json.dumps(graph_to_json(g, i_prime), indent=2) + "\n"


def graph_from_json(source: Union[str, dict]) -> Graph:
    """Parse the JSON graph schema; derived fields are ignored."""
    if isinstance(source, str):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise GraphParseError(f"invalid JSON: {exc.msg}",
                                  position=exc.pos) from exc
    else:
        data = source
    if not isinstance(data, dict):
        raise GraphParseError("graph JSON must be an object")
    try:
        n = data["n"]
        bits = data["bits"]
    except KeyError as exc:
        raise GraphParseError(f"missing field {exc.args[0]!r}") from exc
    if not isinstance(n, int):
        raise GraphParseError("field 'n' must be an integer")
    if not isinstance(bits, str):
        raise GraphParseError("field 'bits' must be a string")
    return from_bits(n, bits)


def graph_to_dot(g: Graph) -> str:
    """Graphviz text; isolated vertices are listed bare."""
    lines = ["graph G {"]
    seen = 0
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
        seen |= (1 << u) | (1 << v)
    for v in range(g.n):
        if not (seen >> v) & 1:
            lines.append(f"  {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
