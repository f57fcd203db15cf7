"""Exact enumeration, counting, stratification, and uniform sampling of
perfect matchings.

Everything here is the brute-force ground truth the rest of the package
is checked against.  The counting core is a dynamic program over the
bitmask of still-unmatched vertices: the lowest unmatched vertex is
matched against each unmatched neighbour, giving O(2^n * n) time at the
configured size cap.  Counts are Python ints, so arbitrary precision
comes for free, and each Graph carries its own memo table keyed by the
surviving-vertex bitmask, shared by counting, containment queries, and
the sampler.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import (
    EdgeNotPresentError,
    NoPerfectMatchingError,
    NotASubMatchingError,
    TooLargeError,
    TooManyMatchingsError,
)
from .graphs import Edge, Graph, Matching, edge_set

DEFAULT_DP_LIMIT = 26
DEFAULT_ENUM_CAP = 1_000_000
DEFAULT_K_CAP = 64


def _count_on_mask(g: Graph, mask: int) -> int:
    """Perfect matchings of the subgraph induced on the bitmask `mask`."""
    cache = g._pm_cache
    masks = g.neighbor_masks

    def rec(m: int) -> int:
        if m == 0:
            return 1
        got = cache.get(m)
        if got is not None:
            return got
        u = (m & -m).bit_length() - 1
        rest = m & (m - 1)
        avail = masks[u] & rest
        total = 0
        while avail:
            vbit = avail & -avail
            avail ^= vbit
            total += rec(rest ^ vbit)
        cache[m] = total
        return total

    return rec(mask)


def count_pm(g: Graph, limit: int = DEFAULT_DP_LIMIT) -> int:
    """Exact number of perfect matchings; 0 whenever n is odd."""
    if g.n > limit:
        raise TooLargeError(f"n={g.n} above the counting cap {limit}")
    return _count_on_mask(g, (1 << g.n) - 1)


def enumerate_pm(
    g: Graph, cap: int = DEFAULT_ENUM_CAP, limit: int = DEFAULT_DP_LIMIT
) -> Iterator[Matching]:
    """Yield every perfect matching once, in lexicographic order of the
    sorted edge list (the lowest unmatched vertex is matched first, its
    partner chosen in increasing order)."""
    total = count_pm(g, limit=limit)
    if total > cap:
        raise TooManyMatchingsError(f"{total} perfect matchings exceed the cap {cap}")

    n = g.n
    masks = g.neighbor_masks
    chosen: list[Edge] = []

    def rec(mask: int) -> Iterator[Matching]:
        if mask == 0:
            yield Matching(chosen)
            return
        u = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        avail = masks[u] & rest
        while avail:
            vbit = avail & -avail
            avail ^= vbit
            v = vbit.bit_length() - 1
            chosen.append((u, v))
            yield from rec(rest ^ vbit)
            chosen.pop()

    yield from rec((1 << n) - 1)


def first_pm(g: Graph) -> Optional[Matching]:
    """Lexicographically least perfect matching, or None.

    Same search order as enumerate_pm, stopping at the first leaf, so it
    works on graphs whose full matching count is far beyond the
    enumeration cap.
    """
    masks = g.neighbor_masks
    chosen: list[Edge] = []

    def rec(mask: int) -> bool:
        if mask == 0:
            return True
        u = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        avail = masks[u] & rest
        while avail:
            vbit = avail & -avail
            avail ^= vbit
            chosen.append((u, vbit.bit_length() - 1))
            if rec(rest ^ vbit):
                return True
            chosen.pop()
        return False

    if rec((1 << g.n) - 1):
        return Matching(chosen)
    return None


def count_pm_containing(g: Graph, forced, limit: int = DEFAULT_DP_LIMIT) -> int:
    """Perfect matchings containing every edge of `forced`.

    Equals the count on the graph with the forced endpoints deleted.
    `forced` must be a matching inside E(G).
    """
    edges = edge_set(forced)
    seen: set[int] = set()
    for u, v in edges:
        if not g.has_edge(u, v):
            raise NotASubMatchingError(f"edge ({u}, {v}) not in graph")
        if u in seen or v in seen:
            raise NotASubMatchingError(f"forced edges reuse vertex {u if u in seen else v}")
        seen.add(u)
        seen.add(v)
    if g.n > limit:
        raise TooLargeError(f"n={g.n} above the counting cap {limit}")
    mask = (1 << g.n) - 1
    for v in seen:
        mask ^= 1 << v
    return _count_on_mask(g, mask)


def sample_pm(g: Graph, rng: random.Random, limit: int = DEFAULT_DP_LIMIT) -> Matching:
    """Exactly uniform draw from the perfect matchings of g.

    Self-reducibility: repeatedly match the lowest unmatched vertex u,
    picking neighbour v with probability count(G - u - v)/count(G).  The
    per-graph memo makes repeated draws cheap.
    """
    if g.n > limit:
        raise TooLargeError(f"n={g.n} above the counting cap {limit}")
    mask = (1 << g.n) - 1
    total = _count_on_mask(g, mask)
    if total == 0:
        raise NoPerfectMatchingError("graph has no perfect matching")
    masks = g.neighbor_masks
    pairs: list[Edge] = []
    while mask:
        u = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        here = _count_on_mask(g, mask)
        r = rng.randrange(here)
        acc = 0
        avail = masks[u] & rest
        while avail:
            vbit = avail & -avail
            avail ^= vbit
            sub = _count_on_mask(g, rest ^ vbit)
            acc += sub
            if r < acc:
                pairs.append((u, vbit.bit_length() - 1))
                mask = rest ^ vbit
                break
    return Matching(pairs)


@dataclass(frozen=True)
class StrataCounts:
    """|{perfect matchings with exactly k reference edges}| for each k."""

    counts: dict[int, int]

    def total(self) -> int:
        return sum(self.counts.values())

    def get(self, k: int) -> int:
        return self.counts.get(k, 0)

    def max_k(self) -> int:
        return max(self.counts) if self.counts else 0

    def to_json_dict(self) -> dict:
        return {str(k): str(c) for k, c in sorted(self.counts.items())}


def stratify(
    g: Graph,
    reference,
    limit: int = DEFAULT_DP_LIMIT,
    k_cap: int = DEFAULT_K_CAP,
) -> StrataCounts:
    """Split the perfect matchings of g by the number of edges shared with
    `reference` (a matching, a graph, or a raw edge set inside E(G)).

    Same bitmask DP as count_pm with the state widened by the running
    intersection count; the tracked k is capped at k_cap, which is never
    reached below the size cap (k is at most n/2).
    """
    if g.n > limit:
        raise TooLargeError(f"n={g.n} above the counting cap {limit}")
    ref = edge_set(reference)
    for u, v in ref:
        if not g.has_edge(u, v):
            raise EdgeNotPresentError(f"reference edge ({u}, {v}) not in graph")

    kmax = min(g.n // 2, len(ref), k_cap)
    width = kmax + 1
    masks = g.neighbor_masks
    ref_masks = [0] * g.n
    for u, v in ref:
        ref_masks[u] |= 1 << v
        ref_masks[v] |= 1 << u
    memo: dict[int, tuple[int, ...]] = {}
    zero = (0,) * width
    base = (1,) + (0,) * kmax

    def rec(mask: int) -> tuple[int, ...]:
        if mask == 0:
            return base
        got = memo.get(mask)
        if got is not None:
            return got
        u = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        avail = masks[u] & rest
        acc = list(zero)
        while avail:
            vbit = avail & -avail
            avail ^= vbit
            child = rec(rest ^ vbit)
            if ref_masks[u] & vbit:
                for k in range(width - 1):
                    acc[k + 1] += child[k]
            else:
                for k in range(width):
                    acc[k] += child[k]
        out = tuple(acc)
        memo[mask] = out
        return out

    by_k = rec((1 << g.n) - 1)
    return StrataCounts({k: c for k, c in enumerate(by_k)})
