"""The local-consistency algorithm, consistency checks and consistency gaps."""

from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exact import as_fraction, fraction_str
from .structures import (
    RelationalStructure,
    SearchBudgetExceeded,
    StructureError,
    _require_same_signature,
    find_homomorphism,
)

DEFAULT_WORK_BUDGET = 50_000_000

Key = tuple[tuple[int, ...], tuple[int, ...]]  # (sorted domain, values)


class LCResourceError(RuntimeError):
    """The local-consistency run would exceed (or exceeded) its work budget."""


@dataclass
class LCResult:
    answer: bool
    kappa: int
    effective_kappa: int
    deletions: int
    explicit_alive: int
    family: list[dict[int, int]] | None = None

    @property
    def verdict(self) -> str:
        return "YES" if self.answer else "NO"

    def to_dict(self) -> dict:
        out = {
            "answer": self.verdict,
            "kappa": self.kappa,
            "effective_kappa": self.effective_kappa,
            "deletions": self.deletions,
            "surviving_lower_maps": self.explicit_alive,
        }
        if self.family is not None:
            out["surviving_family_size"] = len(self.family)
        return out


def _insert(dom: tuple[int, ...], vals: tuple[int, ...], x: int, a: int) -> Key:
    i = bisect.bisect_left(dom, x)
    return dom[:i] + (x,) + dom[i:], vals[:i] + (a,) + vals[i:]


def _drop(dom: tuple[int, ...], vals: tuple[int, ...], i: int) -> Key:
    return dom[:i] + dom[i + 1 :], vals[:i] + vals[i + 1 :]


class _Engine:
    def __init__(self, X: RelationalStructure, A: RelationalStructure, kappa: int, budget: int, rng):
        _require_same_signature(X, A)
        self.X, self.A = X, A
        self.n, self.na = X.domain_size, A.domain_size
        self.k = min(kappa, self.n)
        self.budget = budget
        self.work = 0
        self.rng = rng
        self.targets = [set(rel) for rel in A.relations]
        by_vertex: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(self.n)]
        for rel_id, rel in enumerate(X.relations):
            for t in rel:
                for v in set(t):
                    by_vertex[v].append((rel_id, t))
        self.by_vertex = by_vertex
        self.alive: dict[Key, bool] = {}
        self.count: dict[tuple[Key, int], int] = {}
        self.queue: list[Key] = []
        self.deletions = 0

    def tick(self, amount: int = 1):
        self.work += amount
        if self.work > self.budget:
            raise LCResourceError(f"local consistency exceeded its work budget of {self.budget}")

    def extends_ok(self, dom, vals, x, a) -> bool:
        """``(dom -> vals) + {x: a}`` is a partial homomorphism, given that the base is one."""
        m = dict(zip(dom, vals))
        m[x] = a
        for rel_id, t in self.by_vertex[x]:
            img = []
            for v in t:
                w = m.get(v)
                if w is None:
                    break
                img.append(w)
            else:
                if tuple(img) not in self.targets[rel_id]:
                    return False
        return True

    def top_alive(self, dom, vals, x, a) -> bool:
        # a top-layer map lives iff it is a partial homomorphism whose
        # restrictions (dropping one old vertex) are all alive
        if not self.extends_ok(dom, vals, x, a):
            return False
        for i in range(len(dom)):
            d2, v2 = _drop(dom, vals, i)
            if not self.alive.get(_insert(d2, v2, x, a), False):
                return False
        return True

    def supported(self, key: Key, x: int) -> bool:
        dom, vals = key
        self.tick(self.na)
        return any(self.top_alive(dom, vals, x, a) for a in range(self.na))

    def kill(self, key: Key):
        if self.alive.get(key):
            self.alive[key] = False
            self.deletions += 1
            self.queue.append(key)

    def build(self):
        k, n, na = self.k, self.n, self.na
        estimate = sum(math.comb(n, s) * na**s for s in range(k)) * max(1, n) * na
        if estimate > self.budget:
            raise LCResourceError(f"estimated work {estimate} exceeds budget {self.budget}")
        empty: Key = ((), ())
        self.alive[empty] = True
        layer = [empty]
        for s in range(1, k):
            nxt = []
            for dom, vals in layer:
                start = dom[-1] + 1 if dom else 0
                for x in range(start, n):
                    for a in range(na):
                        self.tick()
                        if self.extends_ok(dom, vals, x, a):
                            key = _insert(dom, vals, x, a)
                            self.alive[key] = True
                            nxt.append(key)
            layer = nxt
        # support counts for layers below k-1
        for key in list(self.alive):
            dom, vals = key
            if len(dom) == 0:
                continue
            for i, y in enumerate(dom):
                g = _drop(dom, vals, i)
                if len(g[0]) < k - 1:
                    self.count[(g, y)] = self.count.get((g, y), 0) + 1
        for key in list(self.alive):
            dom, vals = key
            if len(dom) >= k:
                continue
            for x in range(n):
                if x in dom:
                    continue
                if len(dom) < k - 1:
                    ok = self.count.get((key, x), 0) > 0
                else:
                    ok = self.supported(key, x)
                if not ok:
                    self.kill(key)
                    break

    def pop(self) -> Key:
        if self.rng is None:
            return self._fifo_pop()
        i = int(self.rng.integers(len(self.queue)))
        self.queue[i], self.queue[-1] = self.queue[-1], self.queue[i]
        return self.queue.pop()

    def _fifo_pop(self) -> Key:
        key = self.queue[self.head]
        self.head += 1
        return key

    def propagate(self):
        k, n, na = self.k, self.n, self.na
        self.head = 0
        while (self.head < len(self.queue)) if self.rng is None else self.queue:
            dom, vals = self.pop()
            s = len(dom)
            self.tick()
            # restrictions lose one supporting extension
            for i, y in enumerate(dom):
                g = _drop(dom, vals, i)
                if len(g[0]) < k - 1:
                    c = self.count[(g, y)] - 1
                    self.count[(g, y)] = c
                    if c == 0:
                        self.kill(g)
            if s + 1 < k:
                for x in range(n):
                    if x in dom:
                        continue
                    for a in range(na):
                        self.tick()
                        ext = _insert(dom, vals, x, a)
                        if self.alive.get(ext):
                            self.kill(ext)
            elif s + 1 == k:
                # implicit top-layer maps through this one died; re-check the
                # other (k-1)-restrictions of each of them
                for x in range(n):
                    if x in dom:
                        continue
                    for a in range(na):
                        self.tick()
                        if not self.extends_ok(dom, vals, x, a):
                            continue
                        for i, y in enumerate(dom):
                            g = _insert(*_drop(dom, vals, i), x, a)
                            if self.alive.get(g) and not self.supported(g, y):
                                self.kill(g)

    def family(self) -> list[dict[int, int]]:
        out = [dict(zip(d, v)) for (d, v), ok in self.alive.items() if ok]
        for (dom, vals), ok in list(self.alive.items()):
            if not ok or len(dom) != self.k - 1:
                continue
            start = dom[-1] + 1 if dom else 0
            for x in range(start, self.n):
                for a in range(self.na):
                    if self.top_alive(dom, vals, x, a):
                        d2, v2 = _insert(dom, vals, x, a)
                        out.append(dict(zip(d2, v2)))
        return out


def lc(
    X: RelationalStructure,
    A: RelationalStructure,
    kappa: int,
    work_budget: int = DEFAULT_WORK_BUDGET,
    materialize: bool = False,
    rng: np.random.Generator | None = None,
) -> LCResult:
    """Run the ``kappa``-level local-consistency algorithm on ``(X, A)``.

    Starts from every partial homomorphism on at most ``kappa`` vertices and
    deletes maps that lack a one-point extension (when smaller than
    ``kappa``) or whose restrictions were deleted, until nothing changes.
    ``rng`` switches the deletion order from FIFO to random.
    """
    if kappa < 0:
        raise StructureError("kappa must be nonnegative")
    _require_same_signature(X, A)
    if kappa == 0:
        return LCResult(True, 0, 0, 0, 0, [{}] if materialize else None)
    eng = _Engine(X, A, kappa, work_budget, rng)
    eng.build()
    eng.propagate()
    answer = eng.alive[((), ())]
    fam = eng.family() if materialize else None
    alive = sum(eng.alive.values())
    return LCResult(answer, kappa, eng.k, eng.deletions, alive, fam)


# ---------------------------------------------------------------- strategy audits


def is_restriction_closed(family: Iterable[Mapping[int, int]]) -> bool:
    fam = {tuple(sorted(f.items())) for f in family}
    for f in fam:
        for i in range(len(f)):
            if f[:i] + f[i + 1 :] not in fam:
                return False
    return True


def has_extension_property(family: Iterable[Mapping[int, int]], n: int, kappa: int) -> bool:
    fam = {tuple(sorted(f.items())) for f in family}
    doms: dict[tuple[int, ...], set[tuple[int, ...]]] = {}
    for f in fam:
        doms.setdefault(tuple(v for v, _ in f), set()).add(f)
    for f in fam:
        if len(f) >= kappa:
            continue
        dom = {v for v, _ in f}
        for x in range(n):
            if x in dom:
                continue
            if not any(set(f) <= set(g) for g in doms.get(tuple(sorted(dom | {x})), ())):
                return False
    return True


# ---------------------------------------------------------------- consistency with substructures


def _tuple_structure(X: RelationalStructure, tuples: Sequence[tuple[int, tuple[int, ...]]]):
    """Compact structure on the vertices used by ``(rel_id, tuple)`` pairs."""
    verts = sorted({v for _, t in tuples for v in t})
    idx = {v: i for i, v in enumerate(verts)}
    rels = [[] for _ in X.relations]
    for rel_id, t in tuples:
        rels[rel_id].append(tuple(idx[v] for v in t))
    Y = RelationalStructure.build(
        max(1, len(verts)), [(name, ar, rel) for (name, ar), rel in zip(X.signature.symbols, rels)]
    )
    return Y, verts


def consistent_with_tuples(
    X: RelationalStructure,
    A: RelationalStructure,
    f: Mapping[int, int],
    tuples: Sequence[tuple[int, tuple[int, ...]]],
    node_budget: int | None = 1_000_000,
) -> bool:
    """Some homomorphism of the substructure made of ``tuples`` agrees with ``f``."""
    if not tuples:
        return True
    Y, verts = _tuple_structure(X, tuples)
    fixed = {i: f[v] for i, v in enumerate(verts) if v in f}
    return find_homomorphism(Y, A, fixed=fixed, node_budget=node_budget) is not None


def is_consistent_with(
    f: Mapping[int, int],
    Y: RelationalStructure,
    A: RelationalStructure,
    node_budget: int | None = 1_000_000,
) -> bool:
    """``f`` agrees with some homomorphism ``Y -> A`` on the common domain.

    ``Y`` is given on the vertex set of the ambient instance, so that its
    vertex indices are those of ``f``; vertices in no tuple are unconstrained.
    """
    _require_same_signature(Y, A)
    tuples = [(rel_id, t) for rel_id, rel in enumerate(Y.relations) for t in rel]
    return consistent_with_tuples(Y, A, f, tuples, node_budget)


@dataclass
class GapVerdict:
    holds: bool
    witness_map: dict[int, int] | None = None
    witness_tuples: list | None = None
    checked_maps: int = 0
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "witness": None
            if self.witness_map is None
            else {
                "map": {str(k): v for k, v in sorted(self.witness_map.items())},
                "tuples": [[rel, list(t)] for rel, t in self.witness_tuples],
            },
            "checked_maps": self.checked_maps,
            **self.detail,
        }


GAP_MAX_TUPLES = 16


def check_consistency_gap(
    X: RelationalStructure,
    A: RelationalStructure,
    kappa: int,
    gamma,
    max_evaluations: int = 2_000_000,
) -> GapVerdict:
    """Decide the ``(kappa, gamma)``-consistency gap by exhaustive search.

    Consistency with a substructure only depends on its tuples and is
    monotone in them, so it suffices to compare all tuple sets of size
    ``floor(gamma / n_A)`` with all of size ``floor(gamma)``. Every map on at
    most ``kappa`` vertices is quantified over: it is a homomorphism from
    the substructure with the same vertices and no tuples.
    """
    _require_same_signature(X, A)
    gamma = as_fraction(gamma, "gamma")
    all_tuples = [(rel_id, t) for rel_id, rel in enumerate(X.relations) for t in rel]
    m = len(all_tuples)
    if m > GAP_MAX_TUPLES:
        raise LCResourceError(f"consistency gap check supports at most {GAP_MAX_TUPLES} tuples, got {m}")
    if kappa < 0:
        raise StructureError("kappa must be nonnegative")
    small = min(m, max(0, math.floor(gamma / A.domain_size)))
    big = min(m, max(0, math.floor(gamma)))
    detail = {"gamma": fraction_str(gamma), "small_size": small, "large_size": big}
    small_sets = list(itertools.combinations(range(m), small))
    big_sets = list(itertools.combinations(range(m), big))
    evaluations = 0
    cache: dict = {}

    def consistent(f: dict, ids: tuple[int, ...]) -> bool:
        nonlocal evaluations
        used = {v for i in ids for v in all_tuples[i][1]}
        key = (ids, tuple(sorted((v, a) for v, a in f.items() if v in used)))
        hit = cache.get(key)
        if hit is None:
            evaluations += 1
            if evaluations > max_evaluations:
                raise LCResourceError(f"consistency gap check exceeded {max_evaluations} evaluations")
            hit = consistent_with_tuples(X, A, f, [all_tuples[i] for i in ids])
            cache[key] = hit
        return hit

    checked = 0
    for s in range(0, min(kappa, X.domain_size) + 1):
        for dom in itertools.combinations(range(X.domain_size), s):
            for vals in itertools.product(range(A.domain_size), repeat=s):
                f = dict(zip(dom, vals))
                checked += 1
                if not all(consistent(f, ids) for ids in small_sets):
                    continue  # second disjunct
                bad = next((ids for ids in big_sets if not consistent(f, ids)), None)
                if bad is None:
                    continue  # first disjunct
                ids = list(bad)
                # shrink to an inclusion-minimal inconsistent set
                for i in list(ids):
                    trial = tuple(j for j in ids if j != i)
                    if not consistent(f, trial):
                        ids = list(trial)
                return GapVerdict(False, f, [all_tuples[i] for i in ids], checked, detail)
    return GapVerdict(True, None, None, checked, detail)
