import math

import numpy as np
import pytest

from taylorzeros.coeffs import CoefficientSequence
from taylorzeros.diagnostics import (
    TruncationError,
    check_weight_inequalities,
    rearrange,
    tail_pair,
    weights,
)

FLAT = CoefficientSequence(1.0)


class TestWeights:
    def test_first_scale_frozen_value(self):
        w = weights(FLAT, 1, 0.5)
        assert w.a_sq[0] == 0.0
        assert w.a_sq[1] == pytest.approx(0.75, rel=1e-12)

    def test_normalization_with_tail(self):
        for seq in (FLAT, CoefficientSequence(0.5), CoefficientSequence(2.0)):
            for n in (1, 4, 8):
                w = weights(seq, n, 0.5)
                assert abs(float(np.sum(w.a_sq)) + w.tail_mass - 1.0) <= 1e-10

    def test_undersized_K_rejected(self):
        with pytest.raises(TruncationError):
            weights(FLAT, 6, 0.5, K=3)

    def test_validation(self):
        with pytest.raises(ValueError):
            weights(FLAT, 0, 0.5)
        with pytest.raises(ValueError):
            weights(FLAT, 2, 1.0)
        with pytest.raises(ValueError):
            weights(FLAT, 2, 0.5, K=0)


class TestRearrange:
    def test_sorted_and_same_multiset(self):
        w = weights(CoefficientSequence(3.0), 5, 0.5)
        b = rearrange(w)
        assert np.all(np.diff(b) <= 0.0)
        assert np.array_equal(np.sort(b), np.sort(w.a_sq))
        assert b[0] == np.max(w.a_sq)

    def test_tail_pair_shapes(self):
        w = weights(FLAT, 4, 0.5)
        pair = tail_pair(w)
        for tails in (pair.tilde, pair.sorted):
            assert tails.shape == w.a_sq.shape
            assert np.all(np.diff(tails) <= 1e-18)
            assert tails[0] == pytest.approx(1.0, abs=1e-10)
            assert tails[-1] < 1e-6
        # rearranged tails never exceed natural tails
        assert np.all(pair.sorted <= pair.tilde + 1e-12)


class TestInequalityReport:
    def test_flat_family(self):
        rep = check_weight_inequalities(FLAT, 0.5, range(1, 11))
        assert rep.all_sorted_dominated()
        assert rep.n0_largest_weight() == 2  # n=1 genuinely violates the bound
        assert not rep.rows[0].b0_ok
        assert rep.n0_corridor() == 1
        chats = [c for _, c in rep.chat_values()]
        assert all(c1 > c2 for c1, c2 in zip(chats, chats[1:]))
        ratios = [r.lower_ratio for r in rep.rows]
        assert all(r > 0 for r in ratios)

    def test_other_indices(self):
        for gamma in (0.5, 2.0):
            rep = check_weight_inequalities(
                CoefficientSequence(gamma), 0.5, range(1, 9)
            )
            assert rep.n0_largest_weight() == 1
            assert rep.all_sorted_dominated()
            assert rep.n0_corridor() == 1

    def test_budget_skip(self):
        rep = check_weight_inequalities(FLAT, 0.5, [2, 30])
        assert not rep.rows[0].skipped
        assert rep.rows[1].skipped
        assert "budget" in rep.rows[1].note
        assert rep.n0_largest_weight() == 2
        table = rep.format_table()
        assert "skipped" in table

    def test_largest_weight_bound_values(self):
        rep = check_weight_inequalities(FLAT, 0.5, [4])
        row = rep.rows[0]
        assert row.b0_bound == pytest.approx(0.5**2.0)
        assert row.b0_sq == pytest.approx(weights(FLAT, 4, 0.5).a_sq[1], rel=1e-12)
        assert row.max_sorted_excess <= 1e-12
