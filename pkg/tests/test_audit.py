import random
from fractions import Fraction

import pytest

from couplingkit import (
    Alphabet,
    DistributionError,
    EpsilonAuditInput,
    Pmf,
    coupling_independent,
    epsilon_audit,
    example4_report,
    mismatch_prob,
)

from .conftest import random_pmf

F = Fraction


class TestUniformKeyReport:
    @pytest.mark.parametrize("n,expected", [(2, F(1, 2)), (3, F(2, 3)), (4, F(3, 4))])
    def test_small_sizes(self, n, expected):
        report = example4_report(n)
        assert report.v == F(0)
        assert report.independent_mismatch == expected
        assert report.maximal_mismatch == F(0)
        assert report.oracle_min_mismatch == F(0)

    def test_large_size_closed_form_vs_matrix(self):
        n = 256
        report = example4_report(n)
        assert report.independent_mismatch == 1 - F(1, n)
        # recompute through the full product matrix as a second route
        u = Pmf.uniform(Alphabet.of_size(n))
        assert mismatch_prob(coupling_independent(u, u)) == 1 - F(1, n)

    def test_flags(self):
        report = example4_report(4)
        assert report.interior_hypothesis
        assert report.strict_gap_holds
        assert report.fact_maximal_requires_correlation
        assert report.fact_lower_bound_over_all_couplings
        assert report.fact_independent_strict_gap
        assert not report.degenerate_key
        assert report.epsilon is None and report.epsilon_consistent is None

    def test_too_small(self):
        with pytest.raises(DistributionError):
            example4_report(1)


class TestEpsilonAudit:
    def test_worked_pair_with_epsilon(self, ramp):
        report = epsilon_audit(EpsilonAuditInput(pk=ramp, epsilon=F(1, 4)))
        assert report.v == F(1, 5)
        assert report.independent_mismatch == F(3, 4)
        assert report.maximal_mismatch == F(1, 5)
        assert report.oracle_min_mismatch == F(1, 5)
        assert report.strict_gap_holds
        assert report.epsilon_consistent is True

    def test_uniform_key_reduces_to_closed_form(self):
        pk = Pmf.uniform(Alphabet.of_size(6))
        report = epsilon_audit(EpsilonAuditInput(pk=pk))
        assert report.v == F(0)
        assert report.independent_mismatch == F(5, 6)

    def test_point_mass_key_is_degenerate(self):
        pk = Pmf.point_mass(Alphabet.of_size(4), "1")
        report = epsilon_audit(EpsilonAuditInput(pk=pk))
        assert report.degenerate_key
        assert not report.interior_hypothesis
        assert not report.strict_gap_holds
        # independence attains the bound here, so no correlation is needed
        assert report.v == report.independent_mismatch == F(3, 4)
        assert not report.fact_maximal_requires_correlation
        assert not report.fact_independent_strict_gap
        assert report.fact_lower_bound_over_all_couplings
        assert any("cannot serve as a secret key" in note for note in report.notes)

    def test_epsilon_below_v_is_flagged(self, ramp):
        report = epsilon_audit(EpsilonAuditInput(pk=ramp, epsilon=F(1, 10)))
        assert report.epsilon_consistent is False
        assert any("inconsistent" in note for note in report.notes)

    def test_epsilon_out_of_range(self, ramp):
        with pytest.raises(DistributionError):
            EpsilonAuditInput(pk=ramp, epsilon=F(3, 2))

    def test_single_symbol_alphabet(self):
        pk = Pmf(Alphabet(["k"]), (F(1),))
        report = epsilon_audit(EpsilonAuditInput(pk=pk))
        assert report.v == F(0)
        assert report.independent_mismatch == F(0)
        assert not report.interior_hypothesis
        assert not report.fact_maximal_requires_correlation

    def test_invariant_chain_on_random_keys(self):
        rng = random.Random(2718)
        for _ in range(50):
            pk = random_pmf(rng, rng.randint(1, 6))
            report = epsilon_audit(EpsilonAuditInput(pk=pk))
            assert (
                report.v
                == report.maximal_mismatch
                == report.oracle_min_mismatch
                <= report.independent_mismatch
            )
            if report.interior_hypothesis:
                assert report.v < report.independent_mismatch

    def test_never_equates_epsilon_with_mismatch(self, ramp):
        report = epsilon_audit(EpsilonAuditInput(pk=ramp, epsilon=F(1, 4)))
        assert any("lower" in note or "minimum" in note for note in report.notes)


class TestReportSerialization:
    def test_json_dict_shape(self, ramp):
        report = epsilon_audit(EpsilonAuditInput(pk=ramp, epsilon=F(1, 4)))
        obj = report.to_json_dict()
        assert obj["v"] == "1/5"
        assert obj["independentMismatch"] == "3/4"
        assert obj["maximalMismatch"] == "1/5"
        assert obj["oracleMinMismatch"] == "1/5"
        assert obj["strictGapHolds"] is True
        assert obj["verdictFacts"] == {
            "maximalRequiresCorrelation": True,
            "lowerBoundOverAllCouplings": True,
            "independentStrictGap": True,
        }
        assert obj["epsilon"] == "1/4"
        assert obj["epsilonConsistent"] is True

    def test_json_dict_without_epsilon(self):
        obj = example4_report(2).to_json_dict()
        assert obj["epsilon"] is None and obj["epsilonConsistent"] is None

    def test_render_table_contains_quantities(self, ramp):
        text = epsilon_audit(EpsilonAuditInput(pk=ramp, epsilon=F(1, 4))).render_table()
        assert "1/5 (0.20000)" in text
        assert "3/4 (0.75000)" in text
        assert "consistent (v <= epsilon): True" in text
