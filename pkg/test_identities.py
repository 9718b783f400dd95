"""
Tests for the identity catalog, the oracle paths, the grid runner and the
discrepancy ledger.
"""
from fractions import Fraction

import pytest

from fibbern.utils import oracles
from fibbern.utils.bernoulli import bernoulli_poly
from fibbern.utils.catalog import (
    CATALOG,
    SequenceKind,
    bernoulli_shift_coeffs,
    ex_q2_intermediate,
)
from fibbern.utils.egf import HyperbolicKind, egf_exp
from fibbern.utils.exact import ALPHA, SQRT5, DensePoly, QuadExt, poly_eval
from fibbern.utils.grid import expand_entry, expand_grid, resolve_sample, verify_grid
from fibbern.utils.identities import (
    NoOracleError,
    ParameterError,
    evaluate_identity,
    golden_value,
    lucas_transform,
    lucas_transform_closed,
    oracle_agrees,
    oracle_check,
    oracle_path,
    rationality_split,
)
from fibbern.utils.ledger_loader import collect_evidence, load_ledger
from fibbern.utils.models import (
    DiscrepancyEntry,
    GridSpec,
    IdentityId,
    IdentityParams,
    VerdictStatus,
)
from fibbern.utils.report_serializer import render_report
from fibbern.utils.sequences import fib, lucas

I = IdentityId
EQUAL = VerdictStatus.EQUAL
UNEQUAL = VerdictStatus.UNEQUAL
NOT_APPLICABLE = VerdictStatus.NOT_APPLICABLE

SMALL_GRID = GridSpec(
    n_max=8, j_max=3, m_min=-2, m_max=2, q_max=4,
    x_samples=["0", "1/2", "alpha"], z_samples=["1/L", "-1/L", "1"],
)


def p(**kwargs) -> IdentityParams:
    return IdentityParams(**kwargs)


class TestEvaluateIdentity:
    def test_mixed_convolution_example(self):
        verdict = evaluate_identity(I.L1C, p(n=1, j=1))
        assert verdict.status is EQUAL
        assert verdict.lhs == 2 and verdict.rhs == 2

    def test_even_only_identity(self):
        verdict = evaluate_identity(I.T12A, p(n=2, j=1))
        assert verdict.status is EQUAL
        assert verdict.lhs == 2

        skipped = evaluate_identity(I.T12A, p(n=3, j=1))
        assert skipped.status is NOT_APPLICABLE
        assert skipped.lhs is None and skipped.rhs is None
        assert "even" in skipped.note

    def test_ratio_sum_odd_branch(self):
        verdict = evaluate_identity(I.T9A, p(n=1, j=1, m=0))
        assert verdict.status is EQUAL
        assert verdict.lhs == 1

    def test_vanishing_ratio_sum(self):
        verdict = evaluate_identity(I.C10B, p(n=2, j=1))
        assert verdict.status is EQUAL
        assert verdict.lhs == 0

    def test_accepts_string_tags(self):
        assert evaluate_identity("L1A", p(n=3, j=2)).status is EQUAL

    def test_unused_fields_are_ignored(self):
        assert evaluate_identity(I.L1A, p(n=3, j=2, m=4, q=3)).status is EQUAL

    def test_polynomial_identity_degenerates_to_constant(self):
        for j in range(1, 5):
            verdict = evaluate_identity(I.T13, p(n=1, j=j, sign="+"))
            assert verdict.status is EQUAL
            assert verdict.lhs == DensePoly.constant(2 * fib(j))

    def test_polynomial_identities_compare_as_polynomials(self):
        verdict = evaluate_identity(I.T7A, p(n=4, j=2, m=-1, z=resolve_sample("1/L", 2)))
        assert isinstance(verdict.lhs, DensePoly)
        assert verdict.lhs.degree == 4
        assert verdict.status is EQUAL

    def test_consequence_domain(self):
        assert evaluate_identity(I.T2_CONSEQ, p(n=2)).lhs == 0
        assert evaluate_identity(I.T2_CONSEQ, p(n=0)).status is NOT_APPLICABLE
        assert evaluate_identity(I.T2_CONSEQ, p(n=5)).status is NOT_APPLICABLE

    @pytest.mark.parametrize(
        "tag,params",
        [
            (I.C23, p(n=2, j=1, q=1, sign="+")),
            (I.C22B, p(n=2, j=2)),
            (I.L1A, p(n=2)),
            (I.LEM6_F, p(n=2, j=1, m=0, x=QuadExt(0))),
        ],
    )
    def test_domain_violations_raise(self, tag, params):
        with pytest.raises(ParameterError):
            evaluate_identity(tag, params)

    def test_unknown_tag_raises(self):
        with pytest.raises(ParameterError):
            evaluate_identity("NOT_AN_ID", p(n=1, j=1))

    def test_printed_variant_must_exist(self):
        with pytest.raises(ParameterError):
            evaluate_identity(I.L1A, p(n=1, j=1), printed=True)
        with pytest.raises(ParameterError):
            evaluate_identity(I.C22A, p(n=1, j=1), printed=True)

    def test_negative_n_is_rejected_by_the_model(self):
        with pytest.raises(ValueError):
            IdentityParams(n=-1, j=1)


class TestPrintedForms:
    def test_exponent_typo_fails_everywhere(self):
        for n in range(6):
            assert evaluate_identity(I.T1C, p(n=n, j=2), printed=True).status is UNEQUAL

    def test_index_typo_fails_for_even_n(self):
        verdict = evaluate_identity(I.T11B, p(n=2, j=1, m=1), printed=True)
        assert verdict.status is UNEQUAL
        assert verdict.note == "printed form"

    def test_consequence_fails_at_zero(self):
        verdict = evaluate_identity(I.T2_CONSEQ, p(n=0), printed=True)
        assert verdict.status is UNEQUAL
        assert verdict.lhs == 1

    def test_stray_factor_only_matters_away_from_one(self):
        assert evaluate_identity(I.EX_Q3_GEN, p(n=1, j=1, x=QuadExt(1)), printed=True).status is EQUAL
        verdict = evaluate_identity(I.EX_Q3_GEN, p(n=1, j=1, x=QuadExt(2)), printed=True)
        assert verdict.status is UNEQUAL
        assert verdict.lhs == 4 and verdict.rhs == 8

    @pytest.mark.parametrize("tag", [I.LEM6_F, I.LEM6_L])
    def test_swapped_signs_fail(self, tag):
        params = p(n=2, j=1, m=1, x=QuadExt(0), z=QuadExt(1))
        assert evaluate_identity(tag, params).status is EQUAL
        assert evaluate_identity(tag, params, printed=True).status is UNEQUAL


class TestOracles:
    def test_every_identity_has_an_oracle_path(self):
        for tag in IdentityId:
            assert oracle_path(tag) in ("egf", "binet")

    def test_convolutions_use_generating_functions(self):
        for tag in (I.L1A, I.T1A, I.SPEC_J1_B, I.REM1_C, I.T2A, I.T2B_PART, I.T3A_EVEN, I.T3B):
            assert oracle_path(tag) == "egf"
        assert oracle_path(I.T2_CONSEQ) == "binet"

    @pytest.mark.parametrize(
        "tag",
        [I.T1A, I.REM1_A, I.REM1_B, I.REM1_C, I.T2A, I.T2A_PART, I.T2B, I.T2B_PART, I.T3A, I.T3B, I.T3A_EVEN],
    )
    def test_convolution_oracles_read_laurent_products(self, tag, monkeypatch):
        genuine = oracles.cached_hyperbolic

        def exp_for_bernoulli_kinds(kind, c, order):
            if kind in (HyperbolicKind.SINH, HyperbolicKind.COSH):
                return genuine(kind, c, order)
            return egf_exp(7, order)

        oracles.egf_tables.cache_clear()
        monkeypatch.setattr(oracles, "cached_hyperbolic", exp_for_bernoulli_kinds)
        try:
            points = [p(n=n, j=j) for n in range(1, 9) for j in range(1, 4)]
            assert not all(oracle_agrees(tag, params) for params in points)
        finally:
            oracles.egf_tables.cache_clear()

    @pytest.mark.parametrize("tag", [I.REM1_A, I.T2A, I.T2B, I.T3B])
    def test_convolution_oracles_on_full_range(self, tag):
        for n in range(31):
            for j in range(1, 7):
                params = p(n=n, j=j)
                if evaluate_identity(tag, params).status is not NOT_APPLICABLE:
                    assert oracle_check(tag, params).status is EQUAL, f"{tag.value} at {params.label()}"

    def test_convolution_example(self):
        verdict = oracle_check(I.L1A, p(n=2, j=1))
        assert verdict.lhs == 2 and verdict.rhs == 2
        assert verdict.status is EQUAL
        assert "agrees" in verdict.note

    def test_binet_at_zero(self):
        for j in (1, 3):
            for m in (-3, 0, 4):
                verdict = oracle_check(I.C8A, p(n=0, j=j, m=m))
                assert verdict.lhs == DensePoly.constant(fib(m))

    def test_consequence_oracle(self):
        verdict = oracle_check(I.T2_CONSEQ, p(n=2))
        assert verdict.lhs == 0
        assert oracle_agrees(I.T2_CONSEQ, p(n=2))

    def test_not_applicable_passes_through(self):
        assert oracle_check(I.T12A, p(n=3, j=1)).status is NOT_APPLICABLE

    def test_missing_oracle(self, monkeypatch):
        monkeypatch.delitem(oracles.ORACLES, I.L1A)
        with pytest.raises(NoOracleError):
            oracle_check(I.L1A, p(n=2, j=1))

    @pytest.mark.parametrize("tag", list(IdentityId))
    def test_oracle_agrees_on_small_grid(self, tag):
        entry = CATALOG[tag]
        for params in expand_entry(entry, SMALL_GRID):
            assert oracle_agrees(tag, params), f"{tag.value} at {params.label()}"


class TestLucasTransform:
    def test_square(self):
        coeffs = [(1, 2)]
        assert lucas_transform(coeffs, 1, 0, 1, SequenceKind.F) == 1
        assert lucas_transform_closed(coeffs, 1, 0, 1, SequenceKind.F) == 1

    def test_constant(self):
        assert lucas_transform([(1, 0)], 5, 3, 1, SequenceKind.L) == 4
        assert lucas_transform_closed([(1, 0)], 5, 3, 1, SequenceKind.L) == 4

    def test_matches_polynomial_identity_at_zero(self):
        coeffs = bernoulli_shift_coeffs(2, 0)
        t7a = evaluate_identity(I.T7A, p(n=2, j=1, m=0, z=QuadExt(1)))
        assert lucas_transform(coeffs, 1, 0, 1, SequenceKind.F) == poly_eval(t7a.lhs, 0)

    def test_negative_exponents(self):
        coeffs = [(Fraction(1, 2), -1), (3, 2)]
        z = QuadExt(Fraction(2, 3))
        for kind in SequenceKind:
            assert lucas_transform(coeffs, 2, -1, z, kind) == lucas_transform_closed(coeffs, 2, -1, z, kind)

    def test_printed_signs_disagree(self):
        coeffs = [(1, 1)]
        assert lucas_transform_closed(coeffs, 1, 0, 1, SequenceKind.F, printed=True) != fib(1)


class TestRationality:
    def test_golden_value_components(self):
        for n in range(31):
            for j in range(1, 9):
                value = golden_value(n, j)
                if n % 2 == 0:
                    assert value.irr == 0
                else:
                    assert value.rat == 0

    def test_first_odd_value(self):
        assert golden_value(1, 1) == SQRT5 / 2

    def test_split_reproduces_even_corollaries(self):
        for n in range(0, 13, 2):
            for j in range(1, 5):
                x_sum, y_sum = rationality_split(n, j)
                assert y_sum == 0
                assert x_sum == golden_value(n, j).rat
                assert evaluate_identity(I.C10A, p(n=n, j=j)).rhs == x_sum

    def test_split_reassembles_value(self):
        for n in range(1, 9):
            x_sum, y_sum = rationality_split(n, 2)
            assert ALPHA * y_sum + x_sum == golden_value(n, 2)

    def test_split_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            rationality_split(2, 0)

    def test_even_rhs_is_rational(self):
        report = verify_grid([I.C10A], GridSpec(n_max=16, j_max=6))
        assert report.total_unequal == 0
        for record in report.records:
            if record.status is EQUAL:
                assert record.rhs.is_rational()


class TestProofSteps:
    def test_q2_intermediate_matches_closed_form(self):
        for n in range(10):
            for j in range(1, 5):
                direct = evaluate_identity(I.EX_Q2_GEN, p(n=n, j=j))
                assert direct.rhs == ex_q2_intermediate(n, j)

    def test_mod_free_forms_match(self):
        pairs = [(I.REM1_A, I.T1A), (I.REM1_B, I.T1B), (I.REM1_C, I.T1C)]
        for n in range(0, 11, 2):
            for j in range(1, 4):
                for rem, thm in pairs:
                    assert evaluate_identity(rem, p(n=n, j=j)).status is evaluate_identity(thm, p(n=n, j=j)).status

    def test_golden_ratio_reflection(self):
        for n in range(8):
            for j in range(1, 4):
                beta_point = (ALPHA.conj() ** j) / lucas(j)
                reflected = bernoulli_poly(n)(beta_point)
                assert reflected == golden_value(n, j) * (-1) ** n


class TestGrid:
    def test_resolve_sample(self):
        assert resolve_sample("1/L", 2) == Fraction(1, 3)
        assert resolve_sample(" -2 / L ", 3) == Fraction(-1, 2)
        assert resolve_sample("alpha") == ALPHA
        with pytest.raises(ValueError):
            resolve_sample("1/L")

    def test_expand_respects_family_caps(self):
        grid = GridSpec()
        pointwise = list(expand_entry(CATALOG[I.LEM6_F], grid))
        assert max(params.n for params in pointwise) == 8
        assert max(params.j for params in pointwise) == 4
        polynomial = list(expand_entry(CATALOG[I.T13], grid))
        assert max(params.n for params in polynomial) == 20

    def test_expand_skips_j_below_minimum(self):
        js = {params.j for params in expand_entry(CATALOG[I.C22B], GridSpec(n_max=2, j_max=5))}
        assert js == {3, 4, 5}

    def test_expand_grid_is_in_catalog_order(self):
        tasks = expand_grid([I.T9A, I.L1A], GridSpec(n_max=1, j_max=1, m_min=0, m_max=0))
        assert [tag for tag, _ in tasks] == ["L1A", "L1A", "T9A", "T9A"]

    def test_lemma_convolutions_default_grid(self):
        report = verify_grid([I.L1A, I.L1B, I.L1C])
        assert report.total_unequal == 0
        assert report.total_equal == 3 * 31 * 8

    def test_even_identity_counts(self):
        report = verify_grid([I.T12A], GridSpec(n_max=30, j_max=8))
        summary = report.summaries[0]
        assert summary.unequal == 0
        assert summary.equal == 16 * 8
        assert summary.not_applicable == 15 * 8

    def test_whole_catalog_on_reduced_grid(self):
        report = verify_grid(list(IdentityId), SMALL_GRID)
        assert len(report.summaries) == len(IdentityId)
        assert report.total_unequal == 0, [r.params.label() for r in report.unequal_records()]
        assert not report.has_failures()

    def test_parallel_run_is_deterministic(self):
        ids = [I.T9A, I.L1A, I.L1B, I.L1C]
        grid = GridSpec(n_max=20, j_max=8, m_min=-5, m_max=5)
        # more 256-task chunks than workers
        assert len(expand_grid(ids, grid)) > 8 * 256
        serial = render_report(verify_grid(ids, grid, jobs=1), "json")
        parallel = render_report(verify_grid(ids, grid, jobs=8), "json")
        assert serial == parallel

    def test_records_are_sorted(self):
        report = verify_grid([I.T9A, I.L1A], GridSpec(n_max=3, j_max=2, m_min=-1, m_max=1))
        keys = [record.sort_key() for record in report.records]
        assert keys == sorted(keys)


class TestLedger:
    def test_ledger_file_loads(self):
        entries = load_ledger()
        tags = [entry.id for entry, _ in entries]
        assert I.LEM6_F in tags and I.T2_CONSEQ in tags and I.C22A in tags
        for entry, grid in entries:
            assert entry.printed_form and entry.corrected_form
            assert isinstance(grid, GridSpec)

    def test_collect_evidence(self):
        entry = DiscrepancyEntry(id=I.T1C, kind="exponent", printed_form="2^(n+3)", corrected_form="2^(n+2)")
        evidenced = collect_evidence(entry, GridSpec(n_max=6, j_max=3))
        evidence = evidenced.evidence
        assert evidence.confirmed
        assert evidence.corrected_equal == evidence.corrected_total == 7 * 3
        assert evidence.printed_unequal == evidence.printed_total == 7 * 3
        assert evidence.first_printed_failure == "n=0;j=1"
        assert evidenced.oracle_evidence.startswith("egf path agrees at 21/21")

    def test_missing_equality_has_no_printed_total(self):
        entry = DiscrepancyEntry(id=I.C22A, kind="missing-equality", printed_form="a b", corrected_form="a = b")
        evidence = collect_evidence(entry, GridSpec(n_max=5, j_max=2)).evidence
        assert evidence.printed_total == 0
        assert evidence.confirmed

    def test_unconfirmed_entry_raises(self, monkeypatch):
        import dataclasses

        broken = dataclasses.replace(CATALOG[I.T1C], rhs=lambda params: 0)
        monkeypatch.setitem(CATALOG, I.T1C, broken)
        entry = DiscrepancyEntry(id=I.T1C, kind="exponent", printed_form="x", corrected_form="y")
        with pytest.raises(RuntimeError):
            collect_evidence(entry, GridSpec(n_max=2, j_max=1))
