"""Random uniform hypergraphs with certified girth, chromatic number and sparsity."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .exact import as_fraction, fraction_str
from .hypergraph import (
    BRUTE_FORCE_EDGE_LIMIT,
    Hypergraph,
    HypergraphError,
    HypergraphTooLarge,
    berge_cycles,
    brute_force_violation,
    densest_excess_witness,
    find_colouring,
    girth,
    independence_number,
    is_threshold_sparse,
)

PRECISION = 60  # decimal digits for the parameter formulas
MAX_CANDIDATE_EDGES = 10**8


class GeneratorError(ValueError):
    pass


class ShortCycleBudgetExceeded(RuntimeError):
    """The greedy hitting set for short cycles needs more vertices than allowed."""


def _mp(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, str):
        f = Fraction(x)
        return mpmath.mpf(f.numerator) / f.denominator
    return mpmath.mpf(x)


@dataclass(frozen=True)
class GeneratorParams:
    r: int
    g: int
    h: int
    beta: Fraction
    ell: mpmath.mpf
    nu: mpmath.mpf
    theta: mpmath.mpf
    mu: mpmath.mpf
    delta: mpmath.mpf
    n0: int | None = None
    checks: dict = field(default_factory=dict)

    def edge_probability(self, n: int) -> mpmath.mpf:
        """``p = ell * n^(1-r)``."""
        return self.ell * mpmath.mpf(n) ** (1 - self.r)

    def to_dict(self) -> dict:
        s = lambda x: mpmath.nstr(x, 17)  # noqa: E731
        return {
            "r": self.r,
            "g": self.g,
            "h": self.h,
            "beta": fraction_str(self.beta),
            "ell": s(self.ell),
            "nu": s(self.nu),
            "theta": s(self.theta),
            "mu": s(self.mu),
            "delta": s(self.delta),
            "n0": self.n0,
            "n0_note": "no explicit existence threshold is available",
            "checks": self.checks,
        }


def formula_params(g: int, h: int, beta, r: int) -> GeneratorParams:
    """The explicit constants of the random construction, in extended precision."""
    beta = as_fraction(beta, "beta")
    if g < 1 or h < 1:
        raise GeneratorError("g and h must be positive")
    if r < 2:
        raise GeneratorError("r must be at least 2")
    if beta <= 1:
        raise GeneratorError("beta must exceed 1")
    with mpmath.workdps(PRECISION):
        e = mpmath.e
        b = _mp(beta)
        ell = (3 * h * r) ** r / mpmath.mpf(2 * h) * mpmath.log(3 * e * h) + 1
        nu = b / (r - 1)
        theta = ell**nu * mpmath.exp(1 + (r + 1) * nu) * mpmath.mpf(r) ** (-r * nu) * nu ** (-nu)
        mu_walk = _mu_ceiling(r, ell, nu)
        mu_sum = (3 * theta) ** (-1 / (b - 1))
        mu = min(mu_walk, mu_sum)
        delta = b * mu / (r - 1)
        checks = {
            "mu_within_ceiling": bool(mu <= mu_walk),
            "ratio_at_most_third": bool(mu ** (b - 1) * theta <= mpmath.mpf(1) / 3 * (1 + mpmath.mpf(10) ** (-40))),
            "all_positive": bool(min(ell, nu, theta, mu, delta) > 0),
        }
    if not all(checks.values()):
        raise AssertionError(f"parameter side conditions failed: {checks}")
    return GeneratorParams(r, g, h, beta, ell, nu, theta, mu, delta, None, checks)


def _mu_ceiling(r: int, ell, nu):
    e = mpmath.e
    return (nu / ell) ** (mpmath.mpf(1) / (r - 1)) * (r / e) ** (mpmath.mpf(r) / (r - 1))


def _theta(r: int, ell, nu):
    return ell**nu * mpmath.exp(1 + (r + 1) * nu) * mpmath.mpf(r) ** (-r * nu) * nu ** (-nu)


def sparsity_failure_bound(r: int, ell, n: int, mu, nu) -> mpmath.mpf:
    """Upper bound on the probability that a random hypergraph is not vertex-threshold-sparse.

    Sum over ``i = 1..floor(mu n)`` of ``((n/i)^(1-(r-1)nu) * theta)^i``,
    each term evaluated through its logarithm.
    """
    with mpmath.workdps(PRECISION):
        ell, mu, nu = _mp(ell), _mp(mu), _mp(nu)
        if r < 2 or n < 1:
            raise GeneratorError("need r >= 2 and n >= 1")
        if not (1 <= ell <= mpmath.mpf(n) ** (r - 1)):
            raise GeneratorError("hypothesis violated: 1 <= ell <= n^(r-1)")
        if mu <= 0 or nu <= 0:
            raise GeneratorError("hypothesis violated: mu > 0 and nu > 0")
        if mu > _mu_ceiling(r, ell, nu):
            raise GeneratorError("hypothesis violated: mu <= (nu/ell)^(1/(r-1)) (r/e)^(r/(r-1))")
        log_theta = mpmath.log(_theta(r, ell, nu))
        expo = 1 - (r - 1) * nu
        top = int(mpmath.floor(mu * n))
        log_n = mpmath.log(n)
        terms = [mpmath.exp(i * (log_theta + expo * (log_n - mpmath.log(i)))) for i in range(1, top + 1)]
        return mpmath.fsum(terms)


# ---------------------------------------------------------------- sampling


def sample_er(n: int, p, r: int, seed: int) -> Hypergraph:
    """Each ``r``-subset becomes an edge independently with probability ``p``.

    Candidates are visited in lexicographic order, one uniform draw each.
    """
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise GeneratorError("p must lie in [0, 1]")
    if n < 1 or r < 2:
        raise GeneratorError("need n >= 1 and r >= 2")
    total = math.comb(n, r)
    if total > MAX_CANDIDATE_EDGES:
        raise GeneratorError(f"C({n},{r}) = {total} candidate edges exceeds the limit {MAX_CANDIDATE_EDGES}")
    rng = np.random.default_rng(seed)
    edges = []
    combos = itertools.combinations(range(n), r)
    chunk = 1 << 16
    remaining = total
    while remaining:
        k = min(chunk, remaining)
        draws = rng.random(k)
        for e, u in zip(itertools.islice(combos, k), draws):
            if u < p:
                edges.append(e)
        remaining -= k
    return Hypergraph(n, r, edges)


def short_cycle_hitting_set(H: Hypergraph, g: int) -> list[int]:
    """Greedy vertex set meeting every Berge cycle of length ``< g``.

    A cycle is destroyed once any vertex of one of its edges is deleted, so
    frequencies are counted over the union of each cycle's edges.
    """
    if g <= 2:
        return []
    by_edges: dict[frozenset, set[int]] = {}
    for _, es in berge_cycles(H, g - 1):
        key = frozenset(es)
        if key not in by_edges:
            by_edges[key] = set(itertools.chain.from_iterable(H.edges[i] for i in es))
    alive = list(by_edges.values())
    chosen = []
    while alive:
        freq = Counter(v for vs in alive for v in vs)
        v = min(freq, key=lambda u: (-freq[u], u))
        chosen.append(v)
        alive = [vs for vs in alive if v not in vs]
    return sorted(chosen)


def break_short_cycles(H: Hypergraph, g: int, budget: int, seed: int = 0, pad: bool = False) -> Hypergraph:
    """Delete a greedy hitting set of the cycles shorter than ``g``.

    With ``pad`` the deleted set is topped up with random vertices to exactly
    ``budget``. The result is re-indexed and has girth at least ``g``.
    """
    if budget >= H.n:
        raise GeneratorError("budget must leave at least one vertex")
    if budget < 0:
        raise GeneratorError("budget must be nonnegative")
    S = short_cycle_hitting_set(H, g)
    if len(S) > budget:
        raise ShortCycleBudgetExceeded(f"hitting set of size {len(S)} exceeds budget {budget}")
    removed = set(S)
    if pad and len(removed) < budget:
        rng = np.random.default_rng(seed)
        rest = np.array([v for v in range(H.n) if v not in removed])
        extra = rng.choice(rest, size=budget - len(removed), replace=False)
        removed.update(int(v) for v in extra)
    out, _ = H.induced(v for v in range(H.n) if v not in removed)
    if girth(out) < g:
        raise AssertionError("short cycle survived the hitting set")
    return out


# ---------------------------------------------------------------- sparsity


@dataclass(frozen=True)
class Verdict:
    value: bool | None
    mode: str  # exact | implied | unknown
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"value": self.value, "mode": self.mode, **self.detail}


def vertex_threshold_sparse(H: Hypergraph, mu, nu) -> Verdict:
    """Every subhypergraph on at most ``mu * n`` vertices has ``m' < nu * n'``."""
    mu = as_fraction(mu, "mu")
    nu = as_fraction(nu, "nu")
    if mu <= 0 or nu <= 0:
        raise GeneratorError("mu and nu must be positive")
    vmax = math.floor(mu * H.n)
    if H.m == 0 or vmax < H.r:
        return Verdict(True, "exact")
    if H.m <= BRUTE_FORCE_EDGE_LIMIT:
        hit = brute_force_violation(H, nu, H.m, vmax)
        return Verdict(hit is None, "exact", {} if hit is None else {"witness": [list(H.edges[i]) for i in hit]})
    w = densest_excess_witness(H, nu)
    if w is None:
        return Verdict(True, "implied")
    if len(set(itertools.chain.from_iterable(H.edges[i] for i in w))) <= vmax:
        return Verdict(False, "exact", {"witness": [list(H.edges[i]) for i in w]})
    return Verdict(None, "unknown")


def threshold_from_vertex_sparsity(n: int, r: int, gamma, beta, mu, nu) -> bool:
    """Numeric side conditions under which vertex-threshold sparsity gives (gamma, beta)-threshold sparsity."""
    gamma, beta, mu, nu = (as_fraction(x, nm) for x, nm in ((gamma, "gamma"), (beta, "beta"), (mu, "mu"), (nu, "nu")))
    return beta / nu >= r - 1 and n >= (r - 1) * gamma / (beta * mu)


# ---------------------------------------------------------------- verified generation


@dataclass
class GenerationReport:
    seed: int
    attempts: int = 0
    success: bool = False
    n: int | None = None
    m: int | None = None
    removed: int | None = None
    verified: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "attempts": self.attempts,
            "success": self.success,
            "n": self.n,
            "m": self.m,
            "removed": self.removed,
            "verified": self.verified,
            "failures": self.failures,
            "config": self.config,
        }


def certify_chromatic_lower_bound(H: Hypergraph, h: int, node_budget: int = 2_000_000) -> dict:
    """Certificate that ``chi(H) >= h``: exact colouring search, else the independence bound."""
    if h <= 1:
        return {"value": True, "mode": "exact", "method": "trivial"}
    out: dict = {}
    try:
        col = find_colouring(H, h - 1, node_budget)
        if col is not None:
            return {"value": False, "mode": "exact", "method": "colouring", "colours": h - 1}
        out = {"value": True, "mode": "exact", "method": "no-colouring", "colours": h - 1}
        # an h-colouring pins chi exactly
        try:
            col = find_colouring(H, h, node_budget)
            if col is not None:
                out["chromatic_number"] = h
                out["colouring"] = col
        except HypergraphTooLarge:
            pass
        return out
    except HypergraphTooLarge:
        pass
    try:
        ind = independence_number(H, node_budget)
        bound = -(-H.n // ind) if ind else math.inf
        return {"value": True if bound >= h else None, "mode": "exact" if bound >= h else "unknown",
                "method": "independence", "independence_number": ind}
    except HypergraphTooLarge:
        return {"value": None, "mode": "unknown", "method": "budget-exhausted"}


def generate_verified(
    n: int,
    p,
    g: int,
    h: int,
    beta,
    delta,
    max_attempts: int = 20,
    seed: int = 0,
    r: int = 2,
    budget: int | None = None,
    proof_faithful: bool = False,
    allow_unknown: bool = False,
    require_sparsity: bool = True,
    node_budget: int = 2_000_000,
) -> tuple[Hypergraph | None, GenerationReport]:
    """Rejection loop: sample, break short cycles, verify girth, chromatic number and sparsity.

    Attempt ``i`` draws from ``default_rng([seed, i])`` so attempts are
    independent of one another. On failure the best attempt (most checks
    passed) is returned with ``success = False``.
    """
    beta = as_fraction(beta, "beta")
    delta = as_fraction(delta, "delta")
    if proof_faithful:
        budget = n // 2
    if budget is None:
        budget = n // 2
    report = GenerationReport(seed=seed, config={
        "n": n, "p": float(p), "g": g, "h": h, "r": r, "beta": fraction_str(beta), "delta": fraction_str(delta),
        "budget": budget, "proof_faithful": proof_faithful, "max_attempts": max_attempts,
        "allow_unknown": allow_unknown, "require_sparsity": require_sparsity,
    })
    best: tuple[int, Hypergraph | None, dict] = (-1, None, {})
    for attempt in range(max_attempts):
        report.attempts = attempt + 1
        sub_seed = int(np.random.SeedSequence([seed, attempt]).generate_state(1)[0])
        H0 = sample_er(n, p, r, sub_seed)
        try:
            H = break_short_cycles(H0, g, budget, seed=sub_seed, pad=proof_faithful)
        except ShortCycleBudgetExceeded as exc:
            report.failures.append({"attempt": attempt, "stage": "short-cycles", "reason": str(exc)})
            continue
        verified: dict = {}
        gi = girth(H)
        verified["girth"] = {"value": gi >= g, "mode": "exact", "girth": None if gi == math.inf else gi}
        verified["chromatic"] = certify_chromatic_lower_bound(H, h, node_budget)
        gamma = delta * H.n
        ts = is_threshold_sparse(H, gamma, beta)
        verified["threshold_sparse"] = {**ts.to_dict(), "gamma": fraction_str(gamma), "beta": fraction_str(beta)}
        ok_values = [verified["girth"]["value"], verified["chromatic"]["value"]]
        if require_sparsity:
            ok_values.append(ts.value)
        passed = sum(v is True for v in ok_values)
        good = all(v is True or (allow_unknown and v is None) for v in ok_values)
        if passed > best[0]:
            best = (passed, H, verified)
        if good:
            report.success = True
            report.n, report.m, report.removed = H.n, H.m, n - H.n
            report.verified = _strip(verified)
            return H, report
        report.failures.append({"attempt": attempt, "stage": "verification",
                                "reason": {k: v["value"] for k, v in verified.items()}})
    _, H, verified = best
    if H is not None:
        report.n, report.m, report.removed = H.n, H.m, n - H.n
        report.verified = _strip(verified)
    return H, report


def _strip(verified: dict) -> dict:
    # colourings are bulky; keep them out of the report body
    out = {k: dict(v) for k, v in verified.items()}
    out.get("chromatic", {}).pop("colouring", None)
    return out
