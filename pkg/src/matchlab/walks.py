"""Simple-random-walk transition matrices, exact walk and path counts,
and quantitative mixing checks.

Matrix arithmetic is exact rational throughout; floats appear only in
the logarithm of the mixing threshold and in reported deviations.  Walk
counts are plain integers from adjacency-matrix powering, so the
identity count = d^len * P^len(u, v) on regular digraphs is checked as a
rational identity, not numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    BudgetExceededError,
    NotRegularError,
    SinkVertexError,
    TooLargeError,
    ZeroEntryError,
)
from .graphs import Digraph, Matching
from .rational import as_fraction

DEFAULT_MATRIX_CAP = 64
DEFAULT_PATH_BUDGET = 100_000_000

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class StochasticMatrix:
    """Square matrix of exact rationals with unit row sums."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        for row in self.rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
            if any(x < 0 for x in row):
                raise ValueError("negative entry in stochastic matrix")
            if sum(row) != 1:
                raise ValueError("row sum differs from 1")

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def min_entry(self) -> Fraction:
        return min(min(row) for row in self.rows)

    def max_entry(self) -> Fraction:
        return max(max(row) for row in self.rows)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "rows": [
                [{"num": str(x.numerator), "den": str(x.denominator)} for x in row]
                for row in self.rows
            ],
        }


def transition_matrix(d: Digraph) -> StochasticMatrix:
    """One uniform step along out-arcs: P(u, v) = 1/outdeg(u)."""
    rows = []
    for u in range(d.n):
        deg = d.out_degree(u)
        if deg == 0:
            raise SinkVertexError(f"vertex {u} has out-degree 0")
        p = Fraction(1, deg)
        row = [ZERO] * d.n
        for v in d.out_neighbors(u):
            row[v] = p
        rows.append(tuple(row))
    return StochasticMatrix(tuple(rows))


def _matmul(a: StochasticMatrix, b: StochasticMatrix) -> StochasticMatrix:
    n = a.n
    bt = list(zip(*b.rows))
    rows = tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a.rows
    )
    return StochasticMatrix(rows)


def identity_matrix(n: int) -> StochasticMatrix:
    return StochasticMatrix(
        tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
    )


def matrix_power(p: StochasticMatrix, k: int, cap: int = DEFAULT_MATRIX_CAP) -> StochasticMatrix:
    """Exact P^k by repeated squaring; rows stay exactly stochastic."""
    if k < 0:
        raise ValueError("exponent must be non-negative")
    if p.n > cap:
        raise TooLargeError(f"dimension {p.n} above the exact-power cap {cap}")
    result = identity_matrix(p.n)
    base = p
    e = k
    while e:
        if e & 1:
            result = _matmul(result, base)
        e >>= 1
        if e:
            base = _matmul(base, base)
    return result


def count_walks(d: Digraph, u: int, v: int, length: int) -> int:
    """Exact number of directed (u, v)-walks of the given length."""
    if length < 0:
        raise ValueError("length must be non-negative")
    vec = [0] * d.n
    vec[u] = 1
    for _ in range(length):
        nxt = [0] * d.n
        for x in range(d.n):
            c = vec[x]
            if c:
                for y in d.out_neighbors(x):
                    nxt[y] += c
        vec = nxt
    return vec[v]


def count_paths(
    d: Digraph,
    u: int,
    v: int,
    length: int,
    matching_constraint: Optional[Matching] = None,
    budget: int = DEFAULT_PATH_BUDGET,
) -> int:
    """Simple directed (u, v)-paths of the given length, visiting at most
    one endpoint of each constraint edge.

    Depth-first enumeration; each extension attempt consumes budget.
    """
    if u == v:
        raise ValueError("endpoints must be distinct")
    if length == 0:
        return 0
    partner = matching_constraint.partner_map() if matching_constraint else {}
    visited = {u}
    steps = 0

    def blocked(x: int) -> bool:
        mate = partner.get(x)
        return mate is not None and mate in visited

    def rec(x: int, remaining: int) -> int:
        nonlocal steps
        if remaining == 0:
            return 1 if x == v else 0
        total = 0
        for y in d.out_neighbors(x):
            steps += 1
            if steps > budget:
                raise BudgetExceededError(f"path enumeration exceeded {budget} steps")
            if y in visited or blocked(y):
                continue
            visited.add(y)
            total += rec(y, remaining - 1)
            visited.discard(y)
        return total

    return rec(u, length)


def uniform_distribution(n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1, n) for _ in range(n))


@dataclass(frozen=True)
class MixingParams:
    """Entry-to-stationary ratio extremes and the convergence threshold.

    alpha and beta are the exact min and max of P(i, j)/sigma_k over all
    index triples; the threshold 2 + 2*log(beta)/alpha (natural log) is
    the step count past which geometric convergence is guaranteed.
    """

    alpha: Fraction
    beta: Fraction
    threshold: float

    def to_json_dict(self) -> dict:
        return {
            "alpha": {"num": str(self.alpha.numerator), "den": str(self.alpha.denominator)},
            "beta": {"num": str(self.beta.numerator), "den": str(self.beta.denominator)},
            "threshold": self.threshold,
        }


def _check_distribution(sigma: Sequence) -> tuple[Fraction, ...]:
    out = tuple(as_fraction(s) for s in sigma)
    if any(s <= 0 for s in out):
        raise ZeroEntryError("stationary distribution must be strictly positive")
    return out


def mixing_params(p: StochasticMatrix, sigma: Sequence) -> MixingParams:
    """Exact alpha and beta; requires every transition probability positive."""
    sig = _check_distribution(sigma)
    if len(sig) != p.n:
        raise ValueError("distribution length must match the matrix dimension")
    lo = p.min_entry()
    if lo == 0:
        raise ZeroEntryError("transition matrix has a zero entry")
    hi = p.max_entry()
    alpha = lo / max(sig)
    beta = hi / min(sig)
    threshold = 2.0 + 2.0 * float(1 / alpha) * math.log(float(beta))
    return MixingParams(alpha, beta, threshold)


@dataclass(frozen=True)
class MixingReport:
    """Outcome of checking |P^t(j, i) - sigma_i| <= (1 - alpha/2)^t sigma_i."""

    t: int
    threshold: float
    below_threshold: bool
    max_abs_dev: float
    max_rel_dev: float
    passes: bool
    exact_pass: bool

    def to_json_dict(self) -> dict:
        return {
            "t": self.t,
            "threshold": self.threshold,
            "below_threshold": self.below_threshold,
            "max_abs_dev": self.max_abs_dev,
            "max_rel_dev": self.max_rel_dev,
            "passes": self.passes,
            "exact_pass": self.exact_pass,
        }


def mixing_bound_check(
    p: StochasticMatrix, sigma: Sequence, t: int, slack: float = 1e-12
) -> MixingReport:
    """Verify the geometric-convergence envelope at time t.

    The deviations are computed exactly; `passes` compares floats with
    the documented slack while `exact_pass` reports the pure rational
    comparison.  Below the threshold the report is flagged but still
    computed.
    """
    params = mixing_params(p, sigma)
    sig = _check_distribution(sigma)
    below = t < params.threshold
    pt = matrix_power(p, t)
    factor = (1 - params.alpha / 2) ** t
    max_abs = ZERO
    max_rel = ZERO
    ok_float = True
    ok_exact = True
    for j in range(p.n):
        for i in range(p.n):
            dev = abs(pt.entry(j, i) - sig[i])
            bound = factor * sig[i]
            if dev > max_abs:
                max_abs = dev
            rel = dev / sig[i]
            if rel > max_rel:
                max_rel = rel
            if dev > bound:
                ok_exact = False
            if float(dev) > float(bound) + slack:
                ok_float = False
    return MixingReport(
        t=t,
        threshold=params.threshold,
        below_threshold=below,
        max_abs_dev=float(max_abs),
        max_rel_dev=float(max_rel),
        passes=ok_float,
        exact_pass=ok_exact,
    )


def sandwich_check(d: Digraph, k: int, nu, delta) -> bool:
    """Two-sided bound on the k-step chain of a regular digraph.

    True when every entry of n*P^k lies in [nu^(k-1) * delta^(-k),
    delta^(-1)], compared exactly.  The digraph must be delta*n-regular
    for the supplied delta.
    """
    nu = as_fraction(nu)
    delta = as_fraction(delta)
    n = d.n
    degs = {d.out_degree(v) for v in range(n)} | {d.in_degree(v) for v in range(n)}
    if len(degs) != 1:
        raise NotRegularError("digraph is not regular")
    deg = degs.pop()
    if delta * n != deg:
        raise NotRegularError(f"degree {deg} does not equal delta*n = {delta * n}")
    p = transition_matrix(d)
    pk = matrix_power(p, k)
    lower = nu ** (k - 1) * delta ** (-k)
    upper = 1 / delta
    for i in range(n):
        for j in range(n):
            scaled = n * pk.entry(i, j)
            if not lower <= scaled <= upper:
                return False
    return True
