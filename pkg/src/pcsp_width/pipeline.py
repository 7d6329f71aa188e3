"""Homomorphism extension over fibers and pendent edges, and the fooling-instance pipeline."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import __version__
from .aperiodicity import TauPattern, find_lambda_walk, is_aperiodic
from .consistency import DEFAULT_WORK_BUDGET, LCResourceError, lc
from .exact import as_fraction, fraction_str
from .generator import generate_verified
from .hypergraph import Fiber, fibrosity_report, fiber_decomposition
from .structures import (
    RelationalStructure,
    SearchBudgetExceeded,
    clique_structure,
    find_homomorphism,
    has_loop,
    is_oriented,
    is_partial_homomorphism,
    monic_product,
    orient,
    symmetrize,
)


class PreconditionError(ValueError):
    pass


class PipelineError(RuntimeError):
    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


def _tuple_for_edge(X: RelationalStructure) -> dict[frozenset, tuple[int, ...]]:
    return {frozenset(t): t for t in X.tuples}


def _mixing_time(A: RelationalStructure, mixing_time: int | None) -> int:
    if mixing_time is not None:
        return mixing_time
    rep = is_aperiodic(A)
    if rep.aperiodic is not True:
        raise PreconditionError("template is not aperiodic")
    return rep.mixing_time


def extend_over_fiber(
    X: RelationalStructure,
    A: RelationalStructure,
    fiber: Fiber,
    joint: Sequence[int],
    h: Mapping[int, int],
    mixing_time: int | None = None,
) -> dict[int, int]:
    """Extend ``h`` from the joint of ``fiber`` to all of the fiber's vertices.

    The orientation of the fiber's tuples gives a pattern; a walk realising
    it between the images of the two joint vertices is written onto the
    fiber tuple by tuple.
    """
    if not is_oriented(X):
        raise PreconditionError("instance must be oriented")
    tau = _mixing_time(A, mixing_time)
    if len(fiber) < tau:
        raise PreconditionError(f"fiber of length {len(fiber)} is shorter than the mixing time {tau}")
    path = fiber.path
    u, v = path[0], path[-1]
    if set(joint) != {u, v}:
        raise PreconditionError(f"joint {sorted(joint)} is not the boundary {sorted({u, v})} of the fiber")
    if u not in h or v not in h:
        raise PreconditionError("h must be defined on the joint")
    lookup = _tuple_for_edge(X)
    oriented = []
    rows = []
    for i, e in enumerate(fiber.edges):
        t = lookup.get(frozenset(e))
        if t is None:
            raise PreconditionError(f"edge {e} is not a tuple of the instance")
        oriented.append(t)
        rows.append((t.index(path[i]), t.index(path[i + 1])))
    walk = find_lambda_walk(A, TauPattern(tuple(rows)), h[u], h[v])
    if walk is None:
        raise AssertionError("no walk although the fiber is at least the mixing time long")
    interior = fiber.vertices - {u, v}
    out = {x: a for x, a in h.items() if x not in interior}
    for t, a in zip(oriented, walk.tuples):
        for x, val in zip(t, a):
            out[x] = val
    if not is_partial_homomorphism(X, A, out):
        raise AssertionError("extension over fiber failed verification")
    return out


def extend_over_pendent(
    X: RelationalStructure,
    A: RelationalStructure,
    edge: Sequence[int],
    joint: Sequence[int],
    h: Mapping[int, int],
) -> dict[int, int]:
    """Extend ``h`` from the joint vertex of a pendent edge to the whole edge."""
    if not is_oriented(X):
        raise PreconditionError("instance must be oriented")
    if len(joint) != 1:
        raise PreconditionError("a pendent edge has a one-vertex joint")
    (v,) = joint
    t = _tuple_for_edge(X).get(frozenset(edge))
    if t is None or v not in t:
        raise PreconditionError(f"{tuple(edge)} with joint {v} is not a tuple of the instance")
    if v not in h:
        raise PreconditionError("h must be defined on the joint")
    j = t.index(v)
    a = next((s for s in A.tuples if s[j] == h[v]), None)
    if a is None:
        raise PreconditionError(f"no template tuple has {h[v]} at position {j + 1}")
    out = {x: val for x, val in h.items() if x == v or x not in t}
    for x, val in zip(t, a):
        out[x] = val
    if not is_partial_homomorphism(X, A, out):
        raise AssertionError("extension over pendent edge failed verification")
    return out


def normalization_factor(r: int, tau: int, beta) -> Fraction:
    beta = as_fraction(beta, "beta")
    return (Fraction(1, 10 * r * tau) - beta + 1) * (r - 1) / beta


def epsilon_bound(n_A: int, r: int, tau: int, beta, delta, n0: int | None = None) -> Fraction:
    """``min(1/n0, (1/(10 r tau) - beta + 1)(r-1) delta / (beta n_A))``; ``n0=None`` drops the first term."""
    beta = as_fraction(beta, "beta")
    delta = as_fraction(delta, "delta")
    if not 1 < beta < 1 + Fraction(1, 10 * r * tau):
        raise PreconditionError("beta must lie strictly between 1 and 1 + 1/(10 r tau)")
    if delta <= 0:
        raise PreconditionError("delta must be positive")
    second = normalization_factor(r, tau, beta) * delta / n_A
    if n0 is None:
        return second
    if n0 < 1:
        raise PreconditionError("n0 must be at least 1")
    return min(Fraction(1, n0), second)


def colour_threshold(B: RelationalStructure, node_budget: int | None = 1_000_000) -> int:
    """Least ``c`` with ``B -> K_{r,c}`` for a monic ``B`` of arity ``r``."""
    r = B.arity
    for c in range(1, B.domain_size + 1):
        K = clique_structure(r, c).with_signature(B.signature)
        if find_homomorphism(B, K, node_budget=node_budget) is not None:
            return c
    raise PipelineError("weak-template", "template has a loop")


@dataclass
class FoolingReport:
    fooled: bool
    fooled_kappas: list[int]
    tau: int | None = None
    r: int | None = None
    colour_threshold: int | None = None
    instance: dict | None = None
    hypergraph_stats: dict = field(default_factory=dict)
    lc: dict = field(default_factory=dict)
    non_homomorphism: dict = field(default_factory=dict)
    epsilon: dict = field(default_factory=dict)
    hypotheses: dict = field(default_factory=dict)
    generation: dict = field(default_factory=dict)
    conversion: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    version: str = __version__
    timings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "fooled": self.fooled,
            "fooled_kappas": self.fooled_kappas,
            "tau": self.tau,
            "r": self.r,
            "colour_threshold": self.colour_threshold,
            "conversion": self.conversion,
            "generation": self.generation,
            "hypergraph_stats": self.hypergraph_stats,
            "lc": self.lc,
            "non_homomorphism": self.non_homomorphism,
            "epsilon": self.epsilon,
            "hypotheses": self.hypotheses,
            "instance": self.instance,
            "config": self.config,
            "timings": self.timings,
        }


DEFAULT_GEN_CONFIG = {
    "p": 0.08,
    "girth": None,  # None: the mixing time
    "beta": None,  # None: 1 + 1/(20 r tau)
    "delta": "1/20",
    "max_attempts": 10,
    "budget": None,
    "require_sparsity": False,
    "node_budget": 2_000_000,
}


def fooling_pipeline(
    A: RelationalStructure,
    B: RelationalStructure,
    n: int,
    gen_config: Mapping | None = None,
    kappas: Sequence[int] = (0, 1, 2, 3),
    seed: int = 0,
    work_budget: int = DEFAULT_WORK_BUDGET,
    declare_a_to_b: bool = False,
    timings: bool = True,
) -> FoolingReport:
    """Build an instance accepted by local consistency against ``A`` with no homomorphism to ``B``."""
    cfg = dict(DEFAULT_GEN_CONFIG)
    cfg.update(gen_config or {})
    clock = time.perf_counter
    t0 = clock()
    conversion = {"template_monic": A.is_monic, "weak_template_monic": B.is_monic}
    if A.signature != B.signature:
        raise PipelineError("input", "templates have different signatures")
    if has_loop(B):
        raise PipelineError("weak-template", "weak template has a loop; every instance maps to it")
    if not declare_a_to_b and find_homomorphism(A, B) is None:
        raise PipelineError("input", "no homomorphism from the template to the weak template")
    Am = A if A.is_monic else monic_product(A)
    Bm = B if B.is_monic else monic_product(B)
    rep = is_aperiodic(Am)
    if rep.aperiodic is not True:
        raise PipelineError("aperiodicity", f"template is not aperiodic: {rep.certificate}")
    tau = rep.mixing_time
    r = Am.arity
    c = colour_threshold(Bm)
    girth_target = max(tau, cfg["girth"] or 0)
    beta = as_fraction(cfg["beta"], "beta") if cfg["beta"] is not None else 1 + Fraction(1, 20 * r * tau)
    delta = as_fraction(cfg["delta"], "delta")
    config = {
        "n": n, "seed": seed, "kappas": list(kappas), "work_budget": work_budget,
        "gen_config": {**cfg, "girth": girth_target, "beta": fraction_str(beta), "delta": fraction_str(delta)},
    }
    report = FoolingReport(False, [], tau=tau, r=r, colour_threshold=c, conversion=conversion, config=config)
    t1 = clock()
    H, gen = generate_verified(
        n, cfg["p"], girth_target, c + 1, beta, delta,
        max_attempts=cfg["max_attempts"], seed=seed, r=r, budget=cfg["budget"],
        require_sparsity=cfg["require_sparsity"], node_budget=cfg["node_budget"],
    )
    report.generation = gen.to_dict()
    t2 = clock()
    if H is None or not gen.success:
        report.timings = {"generation_s": t2 - t1} if timings else {}
        return report
    X = orient(H, seed)
    report.instance = {"n": X.domain_size, "r": r, "tuples": [list(t) for t in X.tuples]}
    stats = fibrosity_report(H, tau).to_dict()
    report.hypergraph_stats = stats
    chrom = gen.verified["chromatic"]
    certified = chrom.get("value") is True and chrom.get("mode") == "exact"
    report.non_homomorphism = {
        "method": "chromatic-number",
        "certified": certified,
        "claim": f"chi(X^sym) >= {c + 1} so X has no homomorphism to K_(r,{c}) and hence none to the weak template",
        "chromatic_number": chrom.get("chromatic_number"),
    }
    if not certified:
        try:
            hom = find_homomorphism(X.with_signature(Bm.signature), Bm, node_budget=cfg["node_budget"])
            report.non_homomorphism = {"method": "exhaustive-search", "certified": hom is None, "found_map": hom is not None}
            certified = hom is None
        except SearchBudgetExceeded:
            report.non_homomorphism = {"method": "exhaustive-search", "certified": False, "reason": "budget"}
    t3 = clock()
    Xa = X.with_signature(Am.signature)
    for k in kappas:
        try:
            res = lc(Xa, Am, k, work_budget=work_budget)
            report.lc[str(k)] = res.to_dict()
        except LCResourceError as exc:
            report.lc[str(k)] = {"answer": "BUDGET", "kappa": k, "reason": str(exc)}
    t4 = clock()
    yes = [k for k in kappas if report.lc[str(k)]["answer"] == "YES"]
    report.fooled_kappas = yes if certified else []
    report.fooled = certified and any(k >= 1 for k in yes)
    best = max(report.fooled_kappas, default=0)
    eps: dict = {"empirical_kappa_over_n": fraction_str(Fraction(best, X.domain_size)), "n0": None,
                 "note": "no explicit existence threshold is available; only the second term is evaluated"}
    try:
        eps["formula_epsilon"] = fraction_str(epsilon_bound(Am.domain_size, r, tau, beta, delta))
    except PreconditionError as exc:
        eps["formula_epsilon"] = None
        eps["reason"] = str(exc)
    report.epsilon = eps
    ts = gen.verified.get("threshold_sparse", {})
    report.hypotheses = {
        "girth_at_least_tau": {"value": gen.verified["girth"]["value"], "mode": "exact"},
        "threshold_sparse": {"value": ts.get("value"), "mode": ts.get("mode")},
        "beta_in_range": 1 < beta < 1 + Fraction(1, 10 * r * tau),
        "lc_run_directly": True,
    }
    if timings:
        report.timings = {"setup_s": t1 - t0, "generation_s": t2 - t1, "certificate_s": t3 - t2, "lc_s": t4 - t3}
    return report
