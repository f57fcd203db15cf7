"""Vertex-indexed graphs, digraphs, matchings, and instance generators.

Vertices are dense integers 0..n-1 throughout.  Every structure is
immutable after construction, so results are safe to share and the
per-graph memo caches used by the counting engine never go stale.
Generators emit canonical labellings (parts of a multipartite graph are
contiguous id blocks) so fixtures are reproducible byte for byte.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Optional

from .errors import (
    EdgeNotPresentError,
    GenerationTimeoutError,
    InfeasibleDegreeSequenceError,
    NotAMatchingError,
    SelfLoopError,
    VertexOutOfRangeError,
)

Edge = tuple[int, int]

DEFAULT_RESTART_CAP = 10_000


def _norm_edge(u: int, v: int) -> Edge:
    if u == v:
        raise SelfLoopError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def _check_vertex(v: int, n: int) -> None:
    if not 0 <= v < n:
        raise VertexOutOfRangeError(f"vertex {v} outside 0..{n - 1}")


class Graph:
    """Simple undirected graph: no loops, no parallel edges.

    `adjacency[v]` is the sorted tuple of neighbours of v and
    `neighbor_masks[v]` the same set as a bitmask, which is what the
    subset sweeps and the matching DP operate on.
    """

    __slots__ = ("n", "edges", "adjacency", "neighbor_masks", "_pm_cache", "_hash")

    def __init__(self, n: int, edges: Iterable[Edge]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for u, v in edges:
            _check_vertex(u, n)
            _check_vertex(v, n)
            norm.add(_norm_edge(u, v))
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(sorted(norm))
        adj: list[list[int]] = [[] for _ in range(n)]
        masks = [0] * n
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(a) for a in adj)
        self.neighbor_masks: tuple[int, ...] = tuple(masks)
        self._pm_cache: dict[int, int] = {}
        self._hash = hash((n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        u, v = (u, v) if u < v else (v, u)
        return bool(self.neighbor_masks[u] >> v & 1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class Digraph:
    """Directed graph without self-loops; in/out adjacency kept in sync."""

    __slots__ = ("n", "arcs", "out_adjacency", "in_adjacency", "out_masks", "in_masks")

    def __init__(self, n: int, arcs: Iterable[Edge]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for u, v in arcs:
            _check_vertex(u, n)
            _check_vertex(v, n)
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            norm.add((u, v))
        self.n = n
        self.arcs: tuple[Edge, ...] = tuple(sorted(norm))
        out: list[list[int]] = [[] for _ in range(n)]
        inn: list[list[int]] = [[] for _ in range(n)]
        omask = [0] * n
        imask = [0] * n
        for u, v in self.arcs:
            out[u].append(v)
            inn[v].append(u)
            omask[u] |= 1 << v
            imask[v] |= 1 << u
        self.out_adjacency = tuple(tuple(a) for a in out)
        self.in_adjacency = tuple(tuple(sorted(a)) for a in inn)
        self.out_masks = tuple(omask)
        self.in_masks = tuple(imask)

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self.out_adjacency[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self.in_adjacency[v]

    def out_degree(self, v: int) -> int:
        return len(self.out_adjacency[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_adjacency[v])

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_masks[u] >> v & 1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and self.arcs == other.arcs
        )

    def __hash__(self) -> int:
        return hash((self.n, self.arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={len(self.arcs)})"


class Matching:
    """A set of pairwise vertex-disjoint undirected edges."""

    __slots__ = ("pairs", "edge_set", "_partner")

    def __init__(self, edges: Iterable[Edge]):
        norm = sorted({_norm_edge(u, v) for u, v in edges})
        partner: dict[int, int] = {}
        for u, v in norm:
            if u in partner or v in partner:
                raise NotAMatchingError(f"vertex reused by edge ({u}, {v})")
            partner[u] = v
            partner[v] = u
        self.pairs: tuple[Edge, ...] = tuple(norm)
        self.edge_set: frozenset[Edge] = frozenset(norm)
        self._partner = partner

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._partner)

    def partner(self, v: int) -> Optional[int]:
        return self._partner.get(v)

    def partner_map(self) -> dict[int, int]:
        return dict(self._partner)

    def to_json_list(self) -> list[list[int]]:
        """Sorted list of sorted pairs, the wire shape for matchings."""
        return [[u, v] for u, v in self.pairs]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.pairs)

    def __contains__(self, edge: Edge) -> bool:
        u, v = edge
        return (min(u, v), max(u, v)) in self.edge_set

    def __eq__(self, other) -> bool:
        return isinstance(other, Matching) and self.edge_set == other.edge_set

    def __hash__(self) -> int:
        return hash(self.edge_set)

    def __repr__(self) -> str:
        return f"Matching({list(self.pairs)})"


class Bipartition:
    """Two disjoint vertex classes covering 0..n-1."""

    __slots__ = ("side_a", "side_b")

    def __init__(self, side_a: Iterable[int], side_b: Iterable[int]):
        a = frozenset(side_a)
        b = frozenset(side_b)
        if a & b:
            raise ValueError("bipartition sides overlap")
        n = len(a) + len(b)
        if a | b != frozenset(range(n)):
            raise ValueError("bipartition sides must cover 0..n-1")
        self.side_a = a
        self.side_b = b

    @property
    def n(self) -> int:
        return len(self.side_a) + len(self.side_b)

    def __repr__(self) -> str:
        return f"Bipartition(a={sorted(self.side_a)}, b={sorted(self.side_b)})"


# -- edge-set normalization ------------------------------------------------

def edge_set(obj) -> frozenset[Edge]:
    """Edge set of a Matching, Graph, or raw iterable of vertex pairs."""
    if isinstance(obj, Matching):
        return obj.edge_set
    if isinstance(obj, Graph):
        return frozenset(obj.edges)
    return frozenset(_norm_edge(u, v) for u, v in obj)


def is_matching_shaped(obj) -> bool:
    """True when the edge set touches no vertex twice."""
    if isinstance(obj, Matching):
        return True
    seen: set[int] = set()
    for u, v in edge_set(obj):
        if u in seen or v in seen:
            return False
        seen.add(u)
        seen.add(v)
    return True


def vertices_of(edges: Iterable[Edge]) -> frozenset[int]:
    return frozenset(v for e in edges for v in e)


# -- constructors and generators -------------------------------------------

def build_graph(n: int, edges: Iterable[Edge]) -> Graph:
    """Validated construction; duplicate edges collapse, self-loops raise."""
    return Graph(n, edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def complete_multipartite(a: int, b: int) -> Graph:
    """a parts of size b, parts are contiguous blocks; (a-1)b-regular."""
    if a < 1 or b < 1:
        raise ValueError("need at least one part of size at least one")
    n = a * b
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if u // b != v // b:
                edges.append((u, v))
    return Graph(n, edges)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def random_regular(
    n: int, d: int, seed: int, max_restarts: int = DEFAULT_RESTART_CAP
) -> Graph:
    """Uniform-ish d-regular graph via the pairing model with rejection.

    Each attempt pairs up n*d stubs uniformly; attempts producing a loop
    or a parallel edge are discarded wholesale.  Deterministic given the
    seed; raises after `max_restarts` failed attempts.
    """
    if d < 0 or d >= n or (n * d) % 2 != 0:
        raise InfeasibleDegreeSequenceError(f"no simple {d}-regular graph on {n} vertices")
    rng = random.Random(seed)
    stubs = [v for v in range(n) for _ in range(d)]
    for _ in range(max_restarts):
        rng.shuffle(stubs)
        edges: set[Edge] = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v:
                ok = False
                break
            e = (u, v) if u < v else (v, u)
            if e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return Graph(n, edges)
    raise GenerationTimeoutError(
        f"no simple pairing found for (n={n}, d={d}) in {max_restarts} restarts"
    )


def regularity(g: Graph) -> Optional[int]:
    """Common degree when the graph is regular, else None."""
    if g.n == 0:
        return 0
    degs = set(g.degrees())
    if len(degs) == 1:
        return degs.pop()
    return None


def remove_edge_set(g: Graph, removed) -> Graph:
    """Delete the given edges (all must be present); vertex set unchanged."""
    todel = edge_set(removed)
    have = frozenset(g.edges)
    missing = todel - have
    if missing:
        raise EdgeNotPresentError(f"edges not in graph: {sorted(missing)}")
    return Graph(g.n, have - todel)


# -- digraph constructors ---------------------------------------------------

def build_digraph(n: int, arcs: Iterable[Edge]) -> Digraph:
    return Digraph(n, arcs)


def complete_digraph(n: int) -> Digraph:
    return Digraph(n, ((u, v) for u in range(n) for v in range(n) if u != v))


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise ValueError("directed cycle needs at least 2 vertices")
    return Digraph(n, ((i, (i + 1) % n) for i in range(n)))


def to_bidirected(g: Graph) -> Digraph:
    """Each undirected edge becomes a pair of opposite arcs."""
    arcs = []
    for u, v in g.edges:
        arcs.append((u, v))
        arcs.append((v, u))
    return Digraph(g.n, arcs)


# -- edge-list text format ---------------------------------------------------
# First line "n m", then m lines "u v" with u < v.  Lines starting with "#"
# are comments.  An optional line "A: i1 i2 ..." names one side of a
# bipartition.

def parse_edge_list(text: str) -> tuple[Graph, Optional[Bipartition]]:
    header: Optional[tuple[int, int]] = None
    edges: list[Edge] = []
    side_a: Optional[list[int]] = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("A:"):
            side_a = [int(tok) for tok in line[2:].split()]
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise ValueError(f"bad header line: {raw!r}")
            header = (int(parts[0]), int(parts[1]))
            continue
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if header is None:
        raise ValueError("missing 'n m' header line")
    n, m = header
    if len(edges) != m:
        raise ValueError(f"header declares {m} edges, file has {len(edges)}")
    g = Graph(n, edges)
    part = None
    if side_a is not None:
        a = set(side_a)
        part = Bipartition(a, set(range(n)) - a)
    return g, part


def read_edge_list(path) -> tuple[Graph, Optional[Bipartition]]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Graph, part: Optional[Bipartition] = None) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    if part is not None:
        lines.append("A: " + " ".join(str(v) for v in sorted(part.side_a)))
    return "\n".join(lines) + "\n"


def write_edge_list(path, g: Graph, part: Optional[Bipartition] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g, part))
