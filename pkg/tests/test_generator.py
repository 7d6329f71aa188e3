from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import direct_failure_sum

from pcsp_width.generator import (
    GeneratorError,
    ShortCycleBudgetExceeded,
    break_short_cycles,
    certify_chromatic_lower_bound,
    generate_verified,
    formula_params,
    sample_er,
    short_cycle_hitting_set,
    sparsity_failure_bound,
    threshold_from_vertex_sparsity,
    vertex_threshold_sparse,
)
from pcsp_width.hypergraph import Hypergraph, berge_cycles, chromatic_number, girth


def test_sample_er_is_deterministic_and_uniform():
    a = sample_er(30, 0.2, 2, seed=5)
    b = sample_er(30, 0.2, 2, seed=5)
    assert a == b
    assert a != sample_er(30, 0.2, 2, seed=6)
    assert sample_er(10, 0.0, 3, seed=1).m == 0
    assert sample_er(6, 1.0, 3, seed=1).m == 20


def test_sample_er_edge_count_is_plausible():
    counts = [sample_er(40, 0.1, 2, seed=s).m for s in range(20)]
    mean = sum(counts) / len(counts)
    expected = 0.1 * 40 * 39 / 2
    assert abs(mean - expected) < 4 * math.sqrt(expected * 0.9 / len(counts)) + 1


def test_sample_er_rejects_bad_probability():
    with pytest.raises(GeneratorError):
        sample_er(10, 1.5, 2, seed=0)


@given(st.integers(0, 10_000), st.integers(3, 5))
def test_hitting_set_meets_every_short_cycle(seed, g):
    H = sample_er(14, 0.25, 2, seed)
    hit = set(short_cycle_hitting_set(H, g))
    for verts, _ in berge_cycles(H, g - 1):
        assert hit & set(verts) or any(hit & set(H.edges[i]) for i in _)


def test_break_short_cycles_reaches_girth():
    H = sample_er(60, 0.08, 2, seed=3)
    G = break_short_cycles(H, 5, budget=30, seed=3)
    assert girth(G) >= 5
    with pytest.raises(ShortCycleBudgetExceeded):
        break_short_cycles(sample_er(30, 0.5, 2, seed=1), 5, budget=2)


def test_break_short_cycles_three_uniform():
    H = sample_er(30, 0.01, 3, seed=2)
    G = break_short_cycles(H, 4, budget=15, seed=2)
    assert girth(G) >= 4


def test_formula_params_satisfy_side_conditions():
    P = formula_params(4, 4, Fraction(11, 10), 2)
    assert all(P.checks.values())
    b = mpmath.mpf(P.beta.numerator) / P.beta.denominator
    assert P.mu ** (b - 1) * P.theta <= mpmath.mpf(1) / 3 * (1 + mpmath.mpf(10) ** -30)
    assert abs(P.nu - mpmath.mpf("1.1")) < mpmath.mpf(10) ** -14
    d = P.to_dict()
    assert d["n0"] is None and d["beta"] == "11/10"


def test_formula_params_reject_bad_input():
    with pytest.raises(GeneratorError):
        formula_params(3, 3, 1, 2)
    with pytest.raises(TypeError):
        formula_params(3, 3, 1.1, 2)


def test_failure_bound_matches_direct_sum():
    for r, ell, n, mu, nu in [(2, Fraction(3, 2), 100, Fraction(3, 100), Fraction(3, 2)),
                              (3, Fraction(2), 400, Fraction(1, 100), Fraction(1))]:
        got = sparsity_failure_bound(r, ell, n, mu, nu)
        want, _ = direct_failure_sum(r, ell, n, mu, nu)
        assert abs(got - want) <= mpmath.mpf("1e-40") * abs(want)


def test_failure_bound_checks_hypotheses():
    with pytest.raises(GeneratorError):
        sparsity_failure_bound(2, Fraction(1, 2), 10, Fraction(1, 10), Fraction(3, 2))
    with pytest.raises(GeneratorError):
        sparsity_failure_bound(2, Fraction(3, 2), 10, Fraction(10), Fraction(3, 2))


def test_vertex_threshold_sparsity():
    K4 = Hypergraph(8, 2, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    assert vertex_threshold_sparse(K4, Fraction(1, 2), Fraction(3, 2)).value is False
    assert vertex_threshold_sparse(K4, Fraction(1, 2), Fraction(2)).value is True
    assert threshold_from_vertex_sparsity(100, 2, 5, Fraction(11, 10), Fraction(1, 10), Fraction(11, 10))


def test_chromatic_certificate():
    C5 = Hypergraph(5, 2, [(i, (i + 1) % 5) for i in range(5)])
    cert = certify_chromatic_lower_bound(C5, 3)
    assert cert["value"] is True and cert["chromatic_number"] == 3
    assert certify_chromatic_lower_bound(C5, 4)["value"] is False


def test_generate_verified_triangle_free_four_chromatic():
    H, rep = generate_verified(100, 0.08, 4, 4, Fraction(41, 40), Fraction(1, 20), max_attempts=10,
                               seed=0, require_sparsity=False)
    assert rep.success
    assert girth(H) >= 4
    assert chromatic_number(H) == 4
    assert rep.verified["chromatic"]["chromatic_number"] == 4
    again, rep2 = generate_verified(100, 0.08, 4, 4, Fraction(41, 40), Fraction(1, 20), max_attempts=10,
                                    seed=0, require_sparsity=False)
    assert again == H and rep2.to_dict() == rep.to_dict()


def test_generate_verified_reports_failure_honestly():
    H, rep = generate_verified(20, 0.05, 3, 6, Fraction(11, 10), Fraction(1, 20), max_attempts=3, seed=1)
    assert not rep.success
    assert rep.attempts == 3 and len(rep.failures) == 3
