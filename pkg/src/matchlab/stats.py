"""Theorem-level quantities: exact edge-inclusion probabilities, the
distribution of the overlap between a random perfect matching and a
fixed reference, Poisson references, total-variation distance, and
avoidance/disjointness ratios.

Exact distributions are rational end to end; only Poisson references
and distances are floats.  A truncated Poisson records the mass it
dropped, and the distance computation adds half of that tail back, so
the reported value is the true distance whenever the exact support fits
inside the truncation window.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import (
    EdgeNotPresentError,
    ExactInfeasibleError,
    NoPerfectMatchingError,
    NotRegularError,
)
from .graphs import Edge, Graph, Matching, edge_set, regularity, remove_edge_set
from .pm import count_pm, count_pm_containing, enumerate_pm, sample_pm, stratify

DEFAULT_TUPLE_BUDGET = 10_000_000

Prob = Union[Fraction, float]


@dataclass(frozen=True)
class Pmf:
    """Probability mass function on non-negative integers.

    Exact PMFs hold Fractions summing to exactly one; float PMFs (the
    Poisson references) may be truncated, with the dropped tail recorded
    in `truncation_mass`.
    """

    probs: dict[int, Prob]
    exact: bool
    truncation_mass: float = 0.0

    def support(self) -> list[int]:
        return sorted(self.probs)

    def prob(self, k: int) -> Prob:
        return self.probs.get(k, Fraction(0) if self.exact else 0.0)

    def mean(self) -> Prob:
        return sum(k * p for k, p in self.probs.items())

    def total(self) -> Prob:
        return sum(self.probs.values())

    def to_json_dict(self) -> dict:
        out: dict = {"exact": self.exact, "truncation_mass": self.truncation_mass}
        if self.exact:
            out["probs"] = {
                str(k): {"num": str(p.numerator), "den": str(p.denominator)}
                for k, p in sorted(self.probs.items())
            }
            out["float_mirror"] = {str(k): float(p) for k, p in sorted(self.probs.items())}
        else:
            out["probs"] = {str(k): float(p) for k, p in sorted(self.probs.items())}
        return out


def edge_probability(g: Graph, e: Edge) -> Fraction:
    """Exact probability that a uniform perfect matching contains e."""
    u, v = e
    if not g.has_edge(u, v):
        raise EdgeNotPresentError(f"edge ({u}, {v}) not in graph")
    total = count_pm(g)
    if total == 0:
        raise NoPerfectMatchingError("graph has no perfect matching")
    return Fraction(count_pm_containing(g, [(u, v)]), total)


def intersection_pmf(g: Graph, reference) -> Pmf:
    """Exact distribution of |M intersect reference| for uniform M."""
    strata = stratify(g, reference)
    total = strata.total()
    if total == 0:
        raise NoPerfectMatchingError("graph has no perfect matching")
    return Pmf(
        probs={k: Fraction(c, total) for k, c in strata.counts.items()},
        exact=True,
    )


def poisson_pmf(lam: float, k_max: int) -> Pmf:
    """Poisson reference on 0..k_max, terms computed in log space; the
    dropped tail is recorded, never silently ignored."""
    lam = float(lam)
    if lam < 0:
        raise ValueError("rate must be non-negative")
    if lam == 0:
        return Pmf(probs={0: 1.0}, exact=False, truncation_mass=0.0)
    probs = {}
    loglam = math.log(lam)
    for k in range(k_max + 1):
        probs[k] = math.exp(-lam + k * loglam - math.lgamma(k + 1))
    trunc = max(0.0, 1.0 - sum(probs.values()))
    return Pmf(probs=probs, exact=False, truncation_mass=trunc)


def poisson_reference(lam: float, exact: Pmf) -> Pmf:
    """Poisson PMF truncated generously past the exact support."""
    top = max(exact.support()) if exact.probs else 0
    k_max = int(top + math.ceil(10 * lam) + 20)
    return poisson_pmf(lam, k_max)


def tv_distance(p: Pmf, q: Pmf) -> float:
    """Half the l1 distance over the union of supports.

    Truncated mass on either side is added at half weight: a truncated
    tail sits where the other PMF carries nothing, so this recovers the
    exact distance whenever supports fit the truncation windows.
    """
    keys = set(p.probs) | set(q.probs)
    acc = 0.0
    for k in keys:
        acc += abs(float(p.prob(k)) - float(q.prob(k)))
    return 0.5 * acc + 0.5 * (p.truncation_mass + q.truncation_mass)


def avoidance_ratio(g: Graph, reference) -> tuple[Fraction, float]:
    """Exact probability that a uniform perfect matching avoids the
    reference edges, next to the Poisson zero-term exp(-e(N)/d)."""
    d = regularity(g)
    if d is None:
        raise NotRegularError("graph must be regular")
    total = count_pm(g)
    if total == 0:
        raise NoPerfectMatchingError("graph has no perfect matching")
    ref = edge_set(reference)
    stripped = remove_edge_set(g, ref)
    exact = Fraction(count_pm(stripped), total)
    lam = len(ref) / d if d else 0.0
    return exact, math.exp(-lam)


def disjoint_probability(
    g: Graph,
    r: int,
    mode: str = "exact",
    samples: int = 100_000,
    seed: int = 0,
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
) -> tuple[Prob, float]:
    """Probability that r independent uniform perfect matchings are
    pairwise edge-disjoint, with the reference exp(-(n/2d) * C(r, 2)).

    Exact mode counts ordered r-tuples by nested enumeration (each next
    matching is a perfect matching of the host minus the union so far);
    it refuses politely once count^r exceeds the tuple budget.  Monte
    Carlo mode estimates the same probability from `samples` draws.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    d = regularity(g)
    if d is None:
        raise NotRegularError("graph must be regular")
    reference = math.exp(-(g.n / (2 * d)) * math.comb(r, 2)) if d else 1.0
    if r == 1:
        return Fraction(1), reference
    total = count_pm(g)
    if total == 0:
        raise NoPerfectMatchingError("graph has no perfect matching")

    if mode == "exact":
        # r = 2 reduces to averaging pma(G - M) over one enumeration and
        # needs no tuple budget; deeper nesting is gated by count^r.
        if r >= 3 and total**r > tuple_budget:
            raise ExactInfeasibleError(
                f"{total}^{r} ordered tuples exceed the exact budget {tuple_budget}"
            )

        def ordered_tuples(host: Graph, depth: int) -> int:
            if depth == 0:
                return 1
            acc = 0
            for m in enumerate_pm(host):
                acc += ordered_tuples(remove_edge_set(host, m), depth - 1)
            return acc

        good = ordered_tuples(g, r)
        return Fraction(good, total**r), reference

    if mode == "montecarlo":
        if samples < 1:
            raise ValueError("montecarlo mode needs at least one sample")
        rng = random.Random(seed)
        hits = 0
        for _ in range(samples):
            draws = [sample_pm(g, rng) for _ in range(r)]
            used: set[Edge] = set()
            ok = True
            for m in draws:
                if used & m.edge_set:
                    ok = False
                    break
                used |= m.edge_set
            if ok:
                hits += 1
        return hits / samples, reference

    raise ValueError(f"unknown mode {mode!r}")


def empirical_edge_freq(g: Graph, samples: int, seed: int = 0) -> dict[Edge, float]:
    """Per-edge inclusion frequency over exactly uniform draws; with
    zero samples every frequency is reported as 0."""
    if count_pm(g) == 0:
        raise NoPerfectMatchingError("graph has no perfect matching")
    freq = {e: 0 for e in g.edges}
    if samples <= 0:
        return {e: 0.0 for e in g.edges}
    rng = random.Random(seed)
    for _ in range(samples):
        for e in sample_pm(g, rng):
            freq[e] += 1
    return {e: c / samples for e, c in freq.items()}
