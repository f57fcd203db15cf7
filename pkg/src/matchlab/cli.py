"""Command-line orchestration.

One binary with subcommands; every analysis loads or generates a graph,
runs the corresponding module operations, and emits JSON (stdout by
default) or CSV.  All randomness sits behind an explicit --seed, so
reports are byte-deterministic given the same invocation.

Exit codes: 0 success, 1 input error, 2 instance too large for the
configured exact caps.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import expansion, pm, stats, switching, walks
from .errors import MatchlabError, ResourceLimitError
from .graphs import (
    Bipartition,
    Graph,
    complete_graph,
    complete_multipartite,
    random_regular,
    read_edge_list,
    regularity,
    to_bidirected,
)
from .rational import as_fraction, fmt12, frac_str

DEFAULT_SUITE_CAP = 20

ANALYSES = (
    "count",
    "edge_prob",
    "pmf",
    "avoidance",
    "disjoint",
    "switching",
    "walks",
    "expander",
    "suite_multipartite",
    "suite_tv",
)


@dataclass
class ExperimentSpec:
    """Everything one invocation needs; mirrors the CLI flags."""

    analysis: str
    family: Optional[str] = None
    path: Optional[str] = None
    a: Optional[int] = None
    b: Optional[int] = None
    n: Optional[int] = None
    d: Optional[int] = None
    r: int = 2
    k: int = 1
    ell: Optional[int] = None
    nu: Optional[Fraction] = None
    tau: Optional[Fraction] = None
    seed: int = 0
    samples: int = 100_000
    trials: int = 1000
    mode: str = "exact"
    reference: str = "pm"
    sampled: bool = False
    bipartite: bool = False
    sizes: list[int] = field(default_factory=list)
    b_max: int = 6
    cap: int = DEFAULT_SUITE_CAP
    fmt: str = "json"
    out: Optional[str] = None


def build_graph_from_spec(spec: ExperimentSpec) -> tuple[Graph, Optional[Bipartition]]:
    if spec.family == "complete":
        if spec.n is None:
            raise ValueError("complete family needs -n")
        return complete_graph(spec.n), None
    if spec.family == "multipartite":
        if spec.a is None or spec.b is None:
            raise ValueError("multipartite family needs -a and -b")
        g = complete_multipartite(spec.a, spec.b)
        part = None
        if spec.a == 2:
            part = Bipartition(range(spec.b), range(spec.b, 2 * spec.b))
        return g, part
    if spec.family == "random_regular":
        if spec.n is None or spec.d is None:
            raise ValueError("random_regular family needs -n and -d")
        return random_regular(spec.n, spec.d, spec.seed), None
    if spec.family == "file" or spec.path:
        if not spec.path:
            raise ValueError("file family needs --file")
        return read_edge_list(spec.path)
    raise ValueError(f"unknown family {spec.family!r}")


def _reference_matching(g: Graph, kind: str):
    """Deterministic reference edge set: the canonical first perfect
    matching, or just its first edge."""
    first = pm.first_pm(g)
    if first is None:
        raise MatchlabError("graph has no perfect matching to use as reference")
    if kind == "edge":
        return [first.pairs[0]]
    return first


def _require_even(g: Graph) -> None:
    if g.n % 2 != 0:
        raise ValueError("matching analyses need an even number of vertices")


def _params(spec: ExperimentSpec) -> expansion.ExpansionParams:
    if spec.nu is None or spec.tau is None:
        raise ValueError("this analysis needs --nu and --tau")
    if spec.nu > spec.tau:
        print("warning: nu > tau is outside the usual hypothesis range", file=sys.stderr)
    return expansion.ExpansionParams(spec.nu, spec.tau)


# -- analysis runners (each returns a list of flat rows) --------------------

def run_count(spec: ExperimentSpec) -> list[dict]:
    g, _ = build_graph_from_spec(spec)
    return [{"n": g.n, "m": g.m, "count": str(pm.count_pm(g))}]


def run_edge_prob(spec: ExperimentSpec) -> list[dict]:
    g, _ = build_graph_from_spec(spec)
    _require_even(g)
    d = regularity(g)
    inv = 1.0 / d if d else float("nan")
    rows = []
    for u, v in g.edges:
        p = stats.edge_probability(g, (u, v))
        rows.append(
            {
                "u": u,
                "v": v,
                "exact": frac_str(p),
                "exact_float": float(p),
                "d": d,
                "one_over_d": inv,
                "abs_dev": abs(float(p) - inv) if d else float("nan"),
            }
        )
    return rows


def run_pmf(spec: ExperimentSpec) -> list[dict]:
    g, _ = build_graph_from_spec(spec)
    _require_even(g)
    d = regularity(g)
    if d is None:
        raise MatchlabError("pmf analysis needs a regular graph")
    ref = _reference_matching(g, spec.reference)
    dist = stats.intersection_pmf(g, ref)
    lam = len(list(ref)) / d
    pois = stats.poisson_reference(lam, dist)
    tv = stats.tv_distance(dist, pois)
    rows = []
    for k in sorted(set(dist.probs) | set(pois.probs)):
        p = dist.prob(k)
        rows.append(
            {
                "k": k,
                "exact": frac_str(p),
                "exact_float": float(p),
                "poisson": float(pois.prob(k)),
                "lambda": lam,
                "tv": tv,
                "poisson_truncation": pois.truncation_mass,
            }
        )
    return rows


def run_avoidance(spec: ExperimentSpec) -> list[dict]:
    g, _ = build_graph_from_spec(spec)
    _require_even(g)
    ref = _reference_matching(g, spec.reference)
    exact, reference = stats.avoidance_ratio(g, ref)
    d = regularity(g)
    return [
        {
            "n": g.n,
            "d": d,
            "reference_edges": len(list(ref)),
            "exact": frac_str(exact),
            "exact_float": float(exact),
            "reference": reference,
            "abs_diff": abs(float(exact) - reference),
        }
    ]


def run_disjoint(spec: ExperimentSpec) -> list[dict]:
    g, _ = build_graph_from_spec(spec)
    _require_even(g)
    value, reference = stats.disjoint_probability(
        g, spec.r, mode=spec.mode, samples=spec.samples, seed=spec.seed
    )
    exact = isinstance(value, Fraction)
    return [
        {
            "r": spec.r,
            "mode": spec.mode,
            "value": frac_str(value) if exact else float(value),
            "value_float": float(value),
            "reference": reference,
            "samples": spec.samples if spec.mode == "montecarlo" else None,
        }
    ]


def run_switching(spec: ExperimentSpec) -> list[dict]:
    g, _ = build_graph_from_spec(spec)
    _require_even(g)
    ref = _reference_matching(g, spec.reference)
    ells = [spec.ell] if spec.ell is not None else list(range(2, g.n // 2 + 1))
    rows = []
    for ell in ells:
        rep = switching.ratio_report(g, ref, spec.k, ell)
        lmin, lmax, lmean = rep.left_stats
        rmin, rmax, rmean = rep.right_stats
        rows.append(
            {
                "k": rep.k,
                "ell": rep.ell,
                "stratum_k": str(rep.size_k),
                "stratum_k_minus_1": str(rep.size_km1),
                "exact_ratio": frac_str(rep.exact_ratio),
                "exact_float": float(rep.exact_ratio),
                "predicted": frac_str(rep.predicted),
                "predicted_float": float(rep.predicted),
                "switch_edges": rep.edge_count,
                "left_min": lmin,
                "left_max": lmax,
                "left_mean": float(lmean) if lmean is not None else None,
                "right_min": rmin,
                "right_max": rmax,
                "right_mean": float(rmean) if rmean is not None else None,
                "double_count_ok": rep.double_count_ok,
            }
        )
    return rows


def run_walks(spec: ExperimentSpec) -> list[dict]:
    g, _ = build_graph_from_spec(spec)
    d = regularity(g)
    if d is None or d == 0:
        raise MatchlabError("walks analysis needs a regular graph with edges")
    params = _params(spec)
    dg = to_bidirected(g)
    cert = expansion.certify_exact(dg, params)
    n = g.n
    nu = params.nu
    ell = spec.ell if spec.ell is not None else min(n, math.ceil(1 / nu) + 1)
    counts = [
        walks.count_walks(dg, u, v, ell) for u in range(n) for v in range(n) if u != v
    ]
    lower = float((nu * n) ** (ell - 1))
    delta = Fraction(d, n)
    expected = float(delta**ell * n ** (ell - 1))
    rel_err = max(abs(c / expected - 1.0) for c in counts) if counts else 0.0
    k = spec.k if spec.k > 1 else math.ceil(1 / nu) + 1
    p = walks.transition_matrix(dg)
    pk = walks.matrix_power(p, k)
    sigma = walks.uniform_distribution(n)
    row: dict = {
        "nu": float(nu),
        "tau": float(params.tau),
        "certificate": cert.verdict.value,
        "ell": ell,
        "min_walks": min(counts) if counts else 0,
        "max_walks": max(counts) if counts else 0,
        "walk_lower_bound": lower,
        "walk_bound_ok": all(c >= (nu * n) ** (ell - 1) for c in counts),
        "max_rel_err_vs_regular_count": rel_err,
        "k": k,
        "sandwich_ok": walks.sandwich_check(dg, k, nu, delta),
    }
    try:
        mix = walks.mixing_params(pk, sigma)
        t = math.ceil(mix.threshold)
        rep = walks.mixing_bound_check(pk, sigma, t)
        row.update(
            {
                "alpha": float(mix.alpha),
                "beta": float(mix.beta),
                "mixing_threshold": mix.threshold,
                "mixing_t": t,
                "mixing_passes": rep.passes,
            }
        )
    except MatchlabError as exc:
        row.update({"mixing_error": str(exc)})
    return [row]


def run_expander(spec: ExperimentSpec) -> list[dict]:
    g, part = build_graph_from_spec(spec)
    params = _params(spec)
    if spec.sampled:
        cert = expansion.refute_sampled(g, params, spec.trials, spec.seed)
    elif spec.bipartite or part is not None:
        if part is None:
            raise ValueError("--bipartite needs a file with an 'A:' line or -a 2")
        cert = expansion.certify_bipartite(g, part, params)
    else:
        cert = expansion.certify_exact(g, params)
    out = cert.to_json_dict()
    out["witness"] = (
        " ".join(str(v) for v in cert.witness) if cert.witness is not None else None
    )
    return [out]


def suite_multipartite_limit(b_max: int, cap: int = DEFAULT_SUITE_CAP) -> list[dict]:
    """Avoidance ratios across the balanced complete multipartite family,
    from the bipartite end (two parts) to the complete graph (parts of
    size one)."""
    rows = []
    for b in range(1, b_max + 1):
        for parts in range(2, cap // b + 1):
            n = parts * b
            if n % 2 != 0 or n < 4:
                continue
            g = complete_multipartite(parts, b)
            ref = pm.first_pm(g)
            exact, reference = stats.avoidance_ratio(g, ref)
            d = (parts - 1) * b
            rows.append(
                {
                    "parts": parts,
                    "part_size": b,
                    "n": n,
                    "d": d,
                    "exact": frac_str(exact),
                    "exact_float": float(exact),
                    "reference": reference,
                    "abs_diff": abs(float(exact) - reference),
                }
            )
    rows.sort(key=lambda r: (r["n"], r["parts"]))
    return rows


def suite_tv_trend(family: str, sizes: list[int], a: Optional[int] = None) -> list[dict]:
    """Distance between the exact overlap distribution (reference: one
    fixed perfect matching) and its Poisson reference across sizes."""
    rows = []
    for size in sizes:
        if family == "complete":
            g = complete_graph(size)
        elif family == "multipartite":
            if a is None:
                raise ValueError("multipartite trend needs -a")
            g = complete_multipartite(a, size)
        else:
            raise ValueError(f"unknown family {family!r}")
        if g.n % 2 != 0:
            raise ValueError(f"size {size} gives an odd vertex count")
        d = regularity(g)
        ref = pm.first_pm(g)
        dist = stats.intersection_pmf(g, ref)
        lam = len(ref) / d
        pois = stats.poisson_reference(lam, dist)
        tv = stats.tv_distance(dist, pois)
        p0 = dist.prob(0)
        rows.append(
            {
                "family": family,
                "n": g.n,
                "d": d,
                "lambda": lam,
                "tv": tv,
                "p0_exact": frac_str(p0),
                "p0_float": float(p0),
                "poisson_truncation": pois.truncation_mass,
                "out_of_regime": g.n < 4,
            }
        )
    return rows


def run_suite_multipartite(spec: ExperimentSpec) -> list[dict]:
    return suite_multipartite_limit(spec.b_max, spec.cap)


def run_suite_tv(spec: ExperimentSpec) -> list[dict]:
    family = spec.family or "complete"
    sizes = spec.sizes or [6, 8, 10, 12]
    return suite_tv_trend(family, sizes, spec.a)


_RUNNERS = {
    "count": run_count,
    "edge_prob": run_edge_prob,
    "pmf": run_pmf,
    "avoidance": run_avoidance,
    "disjoint": run_disjoint,
    "switching": run_switching,
    "walks": run_walks,
    "expander": run_expander,
    "suite_multipartite": run_suite_multipartite,
    "suite_tv": run_suite_tv,
}


# -- output -----------------------------------------------------------------

def render_json(spec: ExperimentSpec, rows: list[dict]) -> str:
    doc = {"analysis": spec.analysis, "seed": spec.seed, "rows": rows}
    return json.dumps(doc, indent=2) + "\n"


def render_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    fields = list(rows[0].keys())
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        out = {}
        for key in fields:
            val = row.get(key)
            out[key] = fmt12(val) if isinstance(val, float) else val
        writer.writerow(out)
    return buf.getvalue()


def run(spec: ExperimentSpec) -> int:
    """Execute one experiment; returns the process exit code."""
    try:
        rows = _RUNNERS[spec.analysis](spec)
        text = render_csv(rows) if spec.fmt == "csv" else render_json(spec, rows)
    except ResourceLimitError as exc:
        print(f"error: instance too large: {exc}", file=sys.stderr)
        return 2
    except (MatchlabError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if spec.out:
        with open(spec.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matchlab",
        description="Exact perfect-matching experiments on small graphs.",
    )
    sub = parser.add_subparsers(dest="analysis", required=True)
    for name in ANALYSES:
        p = sub.add_parser(name)
        p.add_argument("--family", choices=["complete", "multipartite", "random_regular", "file"])
        p.add_argument("--file", dest="path")
        p.add_argument("-a", type=int)
        p.add_argument("-b", type=int)
        p.add_argument("-n", type=int)
        p.add_argument("-d", type=int)
        p.add_argument("--nu")
        p.add_argument("--tau")
        p.add_argument("--ell", type=int)
        p.add_argument("--k", type=int, default=1)
        p.add_argument("--r", type=int, default=2)
        p.add_argument("--samples", type=int, default=100_000)
        p.add_argument("--trials", type=int, default=1000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--mode", choices=["exact", "montecarlo"], default="exact")
        p.add_argument("--reference", choices=["pm", "edge"], default="pm")
        p.add_argument("--sampled", action="store_true")
        p.add_argument("--bipartite", action="store_true")
        p.add_argument("--sizes", type=int, nargs="*", default=[])
        p.add_argument("--b-max", dest="b_max", type=int, default=6)
        p.add_argument("--cap", type=int, default=DEFAULT_SUITE_CAP)
        p.add_argument("--out")
        p.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")
    return parser


def spec_from_args(ns: argparse.Namespace) -> ExperimentSpec:
    family = ns.family
    if family is None and ns.path:
        family = "file"
    return ExperimentSpec(
        analysis=ns.analysis,
        family=family,
        path=ns.path,
        a=ns.a,
        b=ns.b,
        n=ns.n,
        d=ns.d,
        r=ns.r,
        k=ns.k,
        ell=ns.ell,
        nu=as_fraction(ns.nu) if ns.nu is not None else None,
        tau=as_fraction(ns.tau) if ns.tau is not None else None,
        seed=ns.seed,
        samples=ns.samples,
        trials=ns.trials,
        mode=ns.mode,
        reference=ns.reference,
        sampled=ns.sampled,
        bipartite=ns.bipartite,
        sizes=list(ns.sizes),
        b_max=ns.b_max,
        cap=ns.cap,
        fmt=ns.fmt,
        out=ns.out,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        spec = spec_from_args(ns)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    return run(spec)


if __name__ == "__main__":
    sys.exit(main())
