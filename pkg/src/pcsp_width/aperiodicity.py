"""Aperiodicity and exact mixing times via level sets of slice-matrix products."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .boolmat import (
    BoolMatrix,
    bool_product,
    digraph_matrix,
    is_irreducible,
    is_primitive,
    slice_matrices,
    transpose,
)
from .structures import RelationalStructure, StructureError, monic_product

DEFAULT_CAP = 1_000_000


def digraph_mixing_bound(n: int) -> int:
    """Upper bound ``n^4 - 2n^3 + 2n^2`` on the mixing time of an aperiodic digraph."""
    return n**4 - 2 * n**3 + 2 * n**2


@dataclass(frozen=True)
class TauPattern:
    """Rows ``(p, q)`` of 0-based positions with ``p != q``."""

    rows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.rows:
            raise StructureError("a pattern needs at least one row")
        for p, q in self.rows:
            if p == q or p < 0 or q < 0:
                raise StructureError(f"invalid pattern row {(p, q)}")

    def __len__(self):
        return len(self.rows)

    def to_list(self) -> list[list[int]]:
        # 1-based, as positions are usually written
        return [[p + 1, q + 1] for p, q in self.rows]


@dataclass(frozen=True)
class LambdaWalk:
    vertices: tuple[int, ...]
    tuples: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "tuples": [list(t) for t in self.tuples]}


@dataclass(frozen=True)
class AperiodicityReport:
    aperiodic: bool | None  # None: undecided at the cap
    mixing_time: int | None = None
    upper_bound_used: int | None = None
    certificate: dict = field(default_factory=dict)
    status: str = "decided"

    def to_dict(self) -> dict:
        return {
            "aperiodic": self.aperiodic,
            "mixing_time": self.mixing_time,
            "status": self.status,
            "upper_bound_used": self.upper_bound_used,
            "certificate": self.certificate,
        }


def _key(m: BoolMatrix) -> tuple[int, ...]:
    return m.rows


def mixing_time_monic(A: RelationalStructure, cap: int | None = None) -> AperiodicityReport:
    """Exact mixing time of a monic structure, or a certificate of non-aperiodicity.

    ``S_1`` is the set of slice matrices and ``S_{t+1} = {s m}``; the answer is
    the first ``t`` with ``S_t = {J}``. A repeated level set that is not
    ``{J}`` proves that no length works.
    """
    if not A.is_monic:
        raise StructureError("mixing_time_monic expects a monic structure")
    r = A.arity
    n = A.domain_size
    if cap is None:
        cap = 2 * digraph_mixing_bound(n) if r == 2 else DEFAULT_CAP
    if r < 2:
        return AperiodicityReport(
            False,
            upper_bound_used=cap,
            certificate={"reason": "arity-below-2", "detail": "no pattern exists over a single position"},
        )
    slices = slice_matrices(A)
    for (p, q), m in slices.items():
        if m.has_zero_row() or m.has_zero_column():
            bad = "row" if m.has_zero_row() else "column"
            zero = next(i for i in range(n) if m.rows[i] == 0) if bad == "row" else next(
                j for j in range(n) if all(not (row >> j) & 1 for row in m.rows)
            )
            return AperiodicityReport(
                False,
                upper_bound_used=cap,
                certificate={"reason": f"zero-slice-{bad}", "slice": [p + 1, q + 1], "index": zero},
            )
    names = list(slices)
    mats = [slices[k] for k in names]
    full = BoolMatrix.ones(n).rows
    # level set: support -> one pattern realising it
    level: dict[tuple[int, ...], tuple[int, ...]] = {}
    for idx, m in enumerate(mats):
        level.setdefault(_key(m), (idx,))
    seen: dict[frozenset, int] = {}
    t = 1
    while True:
        if set(level) == {full}:
            return AperiodicityReport(True, mixing_time=t, upper_bound_used=cap)
        fs = frozenset(level)
        if fs in seen:
            key, pat = next((k, v) for k, v in sorted(level.items()) if k != full)
            pair = _zero_entry(key, n)
            return AperiodicityReport(
                False,
                upper_bound_used=cap,
                certificate={
                    "reason": "level-set-cycle",
                    "first_seen": seen[fs],
                    "repeated_at": t,
                    "pattern": TauPattern(tuple(names[i] for i in pat)).to_list(),
                    "pair": list(pair),
                },
            )
        seen[fs] = t
        if t >= cap:
            return AperiodicityReport(None, upper_bound_used=cap, status="undecided-at-cap")
        nxt: dict[tuple[int, ...], tuple[int, ...]] = {}
        for key, pat in level.items():
            s = BoolMatrix(n, key)
            for idx, m in enumerate(mats):
                k2 = _key(bool_product(s, m))
                if k2 not in nxt:
                    nxt[k2] = pat + (idx,)
        level = nxt
        t += 1


def _zero_entry(rows: Sequence[int], n: int) -> tuple[int, int]:
    for a, row in enumerate(rows):
        for b in range(n):
            if not (row >> b) & 1:
                return a, b
    raise AssertionError("matrix is full")


def is_aperiodic(A: RelationalStructure, cap: int | None = None) -> AperiodicityReport:
    """Aperiodicity of ``A`` through its monic product."""
    mon = A if A.is_monic else monic_product(A)
    return mixing_time_monic(mon, cap)


def digraph_aperiodicity(M: BoolMatrix) -> AperiodicityReport:
    """Matrix test for digraphs: ``M`` primitive and ``M M^T`` irreducible."""
    n = M.n
    primitive = is_primitive(M)
    irreducible = is_irreducible(bool_product(M, transpose(M)))
    bound = digraph_mixing_bound(n)
    if not (primitive and irreducible):
        return AperiodicityReport(
            False,
            upper_bound_used=bound,
            certificate={"reason": "matrix-criterion", "primitive": primitive, "mmt_irreducible": irreducible},
        )
    A = RelationalStructure.build(n, [("R", 2, M.pairs())])
    rep = mixing_time_monic(A)
    if rep.aperiodic is not True or rep.mixing_time > bound:
        raise AssertionError(f"matrix criterion and level-set search disagree on {M.rows}")
    return AperiodicityReport(True, mixing_time=rep.mixing_time, upper_bound_used=bound,
                              certificate={"reason": "matrix-criterion", "primitive": True, "mmt_irreducible": True})


def digraph_structure_aperiodicity(A: RelationalStructure) -> AperiodicityReport:
    return digraph_aperiodicity(digraph_matrix(A))


def find_lambda_walk(A: RelationalStructure, pattern: TauPattern | Sequence[tuple[int, int]], a: int, b: int) -> LambdaWalk | None:
    """A walk realising ``pattern`` from ``a`` to ``b`` (0-based positions).

    Forward reachability layers with back-pointers; ties go to the least
    vertex and then the least tuple index.
    """
    if not isinstance(pattern, TauPattern):
        pattern = TauPattern(tuple(tuple(row) for row in pattern))
    if not A.is_monic:
        raise StructureError("lambda walks are defined on monic structures")
    r = A.arity
    for p, q in pattern.rows:
        if p >= r or q >= r:
            raise StructureError(f"pattern row {(p + 1, q + 1)} exceeds arity {r}")
    tuples = A.tuples
    # back[i][v] = (previous vertex, tuple index) for the step into layer i+1
    back: list[dict[int, tuple[int, int]]] = []
    layer = {a}
    for p, q in pattern.rows:
        step: dict[int, tuple[int, int]] = {}
        for k, t in enumerate(tuples):
            u, v = t[p], t[q]
            if u in layer:
                old = step.get(v)
                if old is None or (u, k) < old:
                    step[v] = (u, k)
        back.append(step)
        layer = set(step)
        if not layer:
            return None
    if b not in layer:
        return None
    verts = [b]
    used = []
    cur = b
    for step in reversed(back):
        u, k = step[cur]
        used.append(tuples[k])
        verts.append(u)
        cur = u
    verts.reverse()
    used.reverse()
    return LambdaWalk(tuple(verts), tuple(used))


def verify_lambda_walk(A: RelationalStructure, pattern: TauPattern, walk: LambdaWalk) -> bool:
    rel = set(A.tuples)
    if len(walk.tuples) != len(pattern) or len(walk.vertices) != len(pattern) + 1:
        return False
    for i, ((p, q), t) in enumerate(zip(pattern.rows, walk.tuples)):
        if t not in rel or t[p] != walk.vertices[i] or t[q] != walk.vertices[i + 1]:
            return False
    return True
