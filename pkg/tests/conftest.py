"""Shared brute-force oracles and fixture graphs.

The oracles here deliberately avoid the package's own algorithms: the
matching oracle enumerates all pairings of the vertex set and filters by
edge membership, and the switch-edge recheck decomposes symmetric
differences into components instead of walking a single cycle, so either
side can catch the other out.
"""

from __future__ import annotations

import random
from collections import defaultdict

from matchlab.graphs import Graph, build_graph, complete_graph, cycle_graph, edge_set


def all_pairings(items: list[int]):
    """Every partition of `items` into unordered pairs."""
    if not items:
        yield []
        return
    first = items[0]
    rest = items[1:]
    for i, other in enumerate(rest):
        for tail in all_pairings(rest[:i] + rest[i + 1 :]):
            yield [(first, other)] + tail


def oracle_pm_sets(g: Graph) -> list[frozenset]:
    """All perfect matchings as frozen edge sets, by pairing enumeration."""
    if g.n % 2 != 0:
        return []
    out = []
    for pairing in all_pairings(list(range(g.n))):
        if all(g.has_edge(u, v) for u, v in pairing):
            out.append(frozenset((min(u, v), max(u, v)) for u, v in pairing))
    return out


def oracle_count(g: Graph) -> int:
    return len(oracle_pm_sets(g))


def gnp(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return build_graph(n, edges)


def two_triangles() -> Graph:
    return build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def small_zoo() -> list[Graph]:
    """Assorted small graphs with and without perfect matchings."""
    from matchlab.graphs import complete_multipartite

    return [
        complete_graph(4),
        complete_graph(6),
        cycle_graph(4),
        cycle_graph(6),
        cycle_graph(8),
        complete_multipartite(2, 3),
        complete_multipartite(3, 2),
        complete_multipartite(2, 4),
        two_triangles(),
        build_graph(4, [(0, 1), (2, 3)]),
        build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]),
        gnp(8, 0.5, 11),
        gnp(8, 0.7, 12),
        gnp(10, 0.5, 13),
        gnp(10, 0.3, 14),
        gnp(7, 0.6, 15),
    ]


# -- independent recheck of exchange-graph edges ------------------------------

def components_of(edges):
    adj = defaultdict(set)
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = set()
    comps = []
    for start in adj:
        if start in seen:
            continue
        comp = set()
        stack = [start]
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(adj[x] - comp)
        seen |= comp
        comps.append(comp)
    return comps, adj


def independent_switch_predicate(m_hi, m_lo, ref_edges, ell):
    """Component decomposition instead of the module's single traversal."""
    diff = m_hi.edge_set ^ m_lo.edge_set
    if len(diff) != 2 * ell:
        return False
    comps, adj = components_of(diff)
    if len(comps) != 1 or any(len(nbrs) != 2 for nbrs in adj.values()):
        return False
    if len(comps[0]) != 2 * ell:
        return False
    shared = diff & ref_edges
    return len(shared) == 1 and next(iter(shared)) in m_hi.edge_set


def assert_switch_graph_sound(g, ref, h):
    ref_edges = edge_set(ref)
    pairs = set(h.edges)
    for i, m in enumerate(h.left):
        for j, mp in enumerate(h.right):
            assert ((i, j) in pairs) == independent_switch_predicate(
                m, mp, ref_edges, h.ell
            )
    # double counting of the bipartite edge set
    assert sum(h.left_degrees()) == h.edge_count == sum(h.right_degrees())
    # every listed edge alternates between the two matchings around the cycle
    for i, j in h.edges:
        diff = h.left[i].edge_set ^ h.right[j].edge_set
        from_left = diff & h.left[i].edge_set
        from_right = diff & h.right[j].edge_set
        assert len(from_left) == len(from_right) == h.ell
