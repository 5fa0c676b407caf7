"""Canonical forms and isomorphism-aware deduplication.

Exact canonical labeling uses iterated degree refinement plus an
individualization search: branch on the vertices of the first smallest
non-singleton color class, keep the lexicographically smallest relabeled
encoding over all leaves, and prune sibling branches that an already
discovered automorphism maps onto a tried one.  Orders above the limit fall
back to a refinement-invariant hash flagged as approximate; deduplication
then confirms collisions pairwise.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from .graphs import Graph, edge_index

DEFAULT_CANONICAL_LIMIT = 16

# Soft cap on stored automorphisms; pruning with a subset stays correct.
_MAX_AUTOMORPHISMS = 512


def _refine(adj: Sequence[Sequence[int]], colors: list[int]) -> list[int]:
    """Iterated neighbor-color refinement with invariant class numbering."""
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v])))
                for v in range(len(colors))]
        palette = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [palette[sig] for sig in sigs]
        if new == colors:
            return colors
        colors = new


def _individualize(colors: Sequence[int], v: int) -> list[int]:
    # Split v's class with v ordered first; all other classes keep order.
    cv = colors[v]
    return [2 * c + (1 if c == cv and u != v else 0)
            for u, c in enumerate(colors)]


def _relabeled_code(edges: Sequence[tuple[int, int]], label: Sequence[int],
                    n: int) -> int:
    code = 0
    for u, v in edges:
        code |= 1 << edge_index(label[u], label[v], n)
    return code


def canonical_code(g: Graph) -> int:
    """Smallest encoding over all vertex relabelings."""
    n = g.n
    if n <= 1:
        return 0
    adj = tuple(g.neighbors(v) for v in range(n))
    edges = tuple(g.edges())
    colors = _refine(adj, [0] * n)

    best: dict = {"code": None, "inverse": None}
    autos: list[tuple[int, ...]] = []

    def record_leaf(colors: list[int]) -> None:
        order = sorted(range(n), key=lambda v: colors[v])
        label = [0] * n
        for position, v in enumerate(order):
            label[v] = position
        code = _relabeled_code(edges, label, n)
        if best["code"] is None or code < best["code"]:
            best["code"] = code
            best["inverse"] = order
        elif code == best["code"] and len(autos) < _MAX_AUTOMORPHISMS:
            inverse = best["inverse"]
            autos.append(tuple(inverse[label[v]] for v in range(n)))

    def same_orbit(a: int, b: int, prefix: list[int]) -> bool:
        gens = [p for p in autos
                if all(p[x] == x for x in prefix)]
        if not gens:
            return False
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for p in gens:
            for x in range(n):
                rx, ry = find(x), find(p[x])
                if rx != ry:
                    parent[rx] = ry
        return find(a) == find(b)

    prefix: list[int] = []

    def search(colors: list[int]) -> None:
        class_count = len(set(colors))
        if class_count == n:
            record_leaf(colors)
            return
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        target = min((size, c) for c, size in sizes.items() if size > 1)[1]
        cell = [v for v in range(n) if colors[v] == target]
        tried: list[int] = []
        for v in cell:
            if any(same_orbit(v, w, prefix) for w in tried):
                continue
            tried.append(v)
            prefix.append(v)
            search(_refine(adj, _individualize(colors, v)))
            prefix.pop()

    search(colors)
    return best["code"]


def invariant_hash(g: Graph) -> str:
    """Refinement-based isomorphism invariant (collisions possible)."""
    adj = tuple(g.neighbors(v) for v in range(g.n))
    colors = _refine(adj, [0] * g.n)
    profile = sorted((colors[v], tuple(sorted(colors[u] for u in adj[v])))
                     for v in range(g.n))
    payload = repr((g.n, profile)).encode()
    return hashlib.sha256(payload).hexdigest()


@dataclass(frozen=True)
class CanonicalForm:
    key: str
    exact: bool


def canonical_form(g: Graph, limit: int = DEFAULT_CANONICAL_LIMIT
                   ) -> CanonicalForm:
    """Equal keys iff isomorphic while `exact` holds; hash mode otherwise."""
    if g.n <= limit:
        canon = canonical_graph(g)
        return CanonicalForm(key=f"{g.n}:{canon.bits()}", exact=True)
    return CanonicalForm(key=f"{g.n}#{invariant_hash(g)}", exact=False)


def canonical_graph(g: Graph) -> Graph:
    return Graph(g.n, canonical_code(g))


def to_networkx(g: Graph) -> "nx.Graph":
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def are_isomorphic(g1: Graph, g2: Graph,
                   limit: int = DEFAULT_CANONICAL_LIMIT) -> bool:
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    if g1.n <= limit:
        return canonical_code(g1) == canonical_code(g2)
    return nx.is_isomorphic(to_networkx(g1), to_networkx(g2))


def deduplicate(graphs: Iterable[Graph], limit: int = DEFAULT_CANONICAL_LIMIT
                ) -> list[Graph]:
    """One representative per isomorphism class, smallest bit string wins.

    Output is ordered by first appearance of each class.
    """
    reps: list[Graph] = []
    exact_index: dict[str, int] = {}
    hash_index: dict[str, list[int]] = {}
    for g in graphs:
        form = canonical_form(g, limit=limit)
        if form.exact:
            at = exact_index.get(form.key)
            if at is None:
                exact_index[form.key] = len(reps)
                reps.append(g)
            elif g.bits() < reps[at].bits():
                reps[at] = g
        else:
            slot = None
            for at in hash_index.get(form.key, []):
                if nx.is_isomorphic(to_networkx(g), to_networkx(reps[at])):
                    slot = at
                    break
            if slot is None:
                hash_index.setdefault(form.key, []).append(len(reps))
                reps.append(g)
            elif g.bits() < reps[slot].bits():
                reps[slot] = g
    return reps
