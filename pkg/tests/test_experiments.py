"""Tests for .exp parsing, bundled data, and deterministic run records."""
from __future__ import annotations

import json
from fractions import Fraction

import pytest

from qchoice import (
    ExperimentFormatError,
    RunRecord,
    SignDomainError,
    bundled_experiment,
    bundled_experiment_text,
    derive_utility_factors,
    input_digest,
    list_bundled_experiments,
    load_experiment,
    parse_experiment,
    run_prediction,
)

F = Fraction

MINIMAL = """\
name: demo
prospects:
  - id: a
    f: 0.4
  - id: b
    f: 0.6
attractiveness_rank: [a, b]
"""


def perturb(field: str, replacement: str) -> str:
    assert field in MINIMAL
    return MINIMAL.replace(field, replacement)


class TestExactNumbers:
    def test_decimal_literals_become_rationals(self):
        exp = parse_experiment(MINIMAL)
        assert exp.utility_factors == (F(2, 5), F(3, 5))
        assert all(isinstance(v, Fraction) for v in exp.utility_factors)

    def test_tenth_is_exact(self):
        text = MINIMAL.replace("0.4", "0.1").replace("0.6", "0.9")
        exp = parse_experiment(text)
        assert exp.utility_factors == (F(1, 10), F(9, 10))

    def test_scientific_notation(self):
        text = MINIMAL.replace("0.4", "2.5e-3").replace("0.6", "0.9975")
        exp = parse_experiment(text)
        assert exp.utility_factors == (F(1, 400), F(399, 400))

    def test_integers_stay_exact(self):
        text = MINIMAL.replace("f: 0.4", "utility: 1").replace("f: 0.6", "utility: 3")
        exp = parse_experiment(text)
        assert exp.utilities == (F(1), F(3))

    def test_infinity_literal_rejected(self):
        text = perturb("f: 0.4", "f: .inf")
        with pytest.raises(ExperimentFormatError, match="unsupported numeric literal"):
            parse_experiment(text)

    def test_nan_literal_rejected(self):
        text = perturb("f: 0.4", "f: .nan")
        with pytest.raises(ExperimentFormatError, match="unsupported numeric literal"):
            parse_experiment(text)


class TestBundledData:
    def test_listing(self):
        assert list_bundled_experiments() == ["frogs.exp", "microwave.exp"]

    def test_microwave_parses_exactly(self):
        exp = bundled_experiment("microwave")
        assert exp.name == "microwave-ovens"
        assert exp.prospect_ids == ("target", "competitor")
        assert exp.utility_factors == (F(2, 5), F(3, 5))
        assert exp.attractiveness_rank == ("target", "competitor")
        assert exp.empirical == (F(61, 100), F(39, 100))

    def test_frogs_parses_exactly(self):
        exp = bundled_experiment("frogs.exp")
        assert exp.name == "tungara-frogs"
        assert exp.utility_factors == (F(7, 20), F(13, 20))
        assert exp.empirical == (F(3, 5), F(2, 5))

    def test_text_with_and_without_suffix(self):
        assert bundled_experiment_text("frogs") == bundled_experiment_text("frogs.exp")

    def test_unknown_name_lists_options(self):
        with pytest.raises(ExperimentFormatError, match="frogs.exp, microwave.exp"):
            bundled_experiment_text("toasters")

    def test_parse_is_deterministic(self):
        text = bundled_experiment_text("microwave")
        assert parse_experiment(text) == parse_experiment(text)


class TestRunPrediction:
    def test_microwave_prediction(self):
        report = run_prediction(bundled_experiment("microwave"))
        assert report.probabilities == (F(13, 20), F(7, 20))
        assert report.abs_errors == (F(1, 25), F(1, 25))
        assert report.max_abs_error == F(1, 25)

    def test_frogs_prediction_is_exact_match(self):
        report = run_prediction(bundled_experiment("frogs"))
        assert report.probabilities == (F(3, 5), F(2, 5))
        assert report.max_abs_error == 0

    def test_no_empirical_leaves_errors_unset(self):
        report = run_prediction(parse_experiment(MINIMAL))
        assert report.probabilities == (F(13, 20), F(7, 20))
        assert report.empirical is None and report.max_abs_error is None


class TestUtilityPaths:
    def test_linear_gains(self):
        text = MINIMAL.replace("f: 0.4", "utility: 1").replace("f: 0.6", "utility: 3")
        assert derive_utility_factors(parse_experiment(text)) == [F(1, 4), F(3, 4)]

    def test_gains_with_alpha(self):
        text = (
            "name: x\n"
            "prospects:\n"
            "  - {id: a, utility: 10}\n"
            "  - {id: b, utility: 20}\n"
            "  - {id: c, utility: 40}\n"
            "attractiveness_rank: [a, b, c]\n"
            "config: {alpha: 2}\n"
        )
        exp = parse_experiment(text)
        assert exp.alpha == F(2)
        assert derive_utility_factors(exp) == [F(1, 21), F(4, 21), F(16, 21)]

    def test_losses(self):
        text = MINIMAL.replace("f: 0.4", "utility: -1").replace("f: 0.6", "utility: -3")
        assert derive_utility_factors(parse_experiment(text)) == [F(3, 4), F(1, 4)]

    def test_mixed_signs_rejected(self):
        text = MINIMAL.replace("f: 0.4", "utility: -1").replace("f: 0.6", "utility: 3")
        exp = parse_experiment(text)
        with pytest.raises(SignDomainError, match="sign-homogeneous"):
            derive_utility_factors(exp)

    def test_power_utility(self):
        text = (
            MINIMAL.replace("f: 0.4", "utility: 4").replace("f: 0.6", "utility: 16")
            + "config: {utility_kind: power, utility_exponent: 0.5}\n"
        )
        exp = parse_experiment(text)
        assert exp.utility(F(4)) == pytest.approx(2.0)
        factors = derive_utility_factors(exp)
        assert factors == pytest.approx([1 / 3, 2 / 3])

    def test_given_factors_pass_through(self):
        assert derive_utility_factors(parse_experiment(MINIMAL)) == [F(2, 5), F(3, 5)]


class TestParseErrors:
    def test_unknown_top_level_field(self):
        with pytest.raises(ExperimentFormatError, match=r"unknown field\(s\) \['extra'\]"):
            parse_experiment(MINIMAL + "extra: 1\n")

    def test_top_level_must_be_mapping(self):
        with pytest.raises(ExperimentFormatError, match="top level must be a mapping"):
            parse_experiment("- 1\n- 2\n")

    def test_invalid_yaml_reports_line(self):
        with pytest.raises(ExperimentFormatError, match=r"invalid YAML \(line"):
            parse_experiment("name: x\nprospects: [\n  {id: a\n")

    def test_missing_name(self):
        text = perturb("name: demo", "name: ''")
        with pytest.raises(ExperimentFormatError, match="'name' must be a non-empty string"):
            parse_experiment(text)

    def test_source_appears_in_errors(self):
        with pytest.raises(ExperimentFormatError, match="my-file.exp"):
            parse_experiment("name: 3\nprospects: []\nattractiveness_rank: []\n", source="my-file.exp")

    def test_prospects_must_be_nonempty(self):
        with pytest.raises(ExperimentFormatError, match="non-empty list"):
            parse_experiment("name: x\nprospects: []\nattractiveness_rank: []\n")

    def test_prospect_entry_must_be_mapping(self):
        with pytest.raises(ExperimentFormatError, match=r"prospects\[0\] must be a mapping"):
            parse_experiment("name: x\nprospects: [7]\nattractiveness_rank: []\n")

    def test_prospect_unknown_field(self):
        text = perturb("f: 0.4", "f: 0.4\n    weight: 2")
        with pytest.raises(ExperimentFormatError, match=r"unknown field\(s\) \['weight'\]"):
            parse_experiment(text)

    def test_duplicate_prospect_id(self):
        text = perturb("id: b", "id: a")
        with pytest.raises(ExperimentFormatError, match="duplicate prospect id 'a'"):
            parse_experiment(text)

    def test_prospect_needs_exactly_one_kind(self):
        text = perturb("f: 0.4", "f: 0.4\n    utility: 1")
        with pytest.raises(ExperimentFormatError, match="exactly one of 'utility' or 'f'"):
            parse_experiment(text)
        text = perturb("f: 0.4", "note: ''")
        with pytest.raises(ExperimentFormatError):
            parse_experiment(text)

    def test_mixed_kinds_rejected(self):
        text = perturb("f: 0.6", "utility: 3")
        with pytest.raises(ExperimentFormatError, match="mix 'utility' and 'f'"):
            parse_experiment(text)

    def test_bool_is_not_a_number(self):
        text = perturb("f: 0.4", "f: true")
        with pytest.raises(ExperimentFormatError, match="must be a number, got True"):
            parse_experiment(text)

    def test_f_out_of_range(self):
        text = perturb("f: 0.4", "f: 1.4")
        with pytest.raises(ExperimentFormatError, match=r"must lie in \[0, 1\]"):
            parse_experiment(text)

    def test_f_must_sum_to_one(self):
        text = perturb("f: 0.6", "f: 0.7")
        with pytest.raises(ExperimentFormatError, match="'f' values must sum to 1"):
            parse_experiment(text)

    def test_rank_must_cover_all_ids(self):
        text = perturb("attractiveness_rank: [a, b]", "attractiveness_rank: [a]")
        with pytest.raises(ExperimentFormatError, match="every prospect id exactly once"):
            parse_experiment(text)
        text = perturb("attractiveness_rank: [a, b]", "attractiveness_rank: [a, a]")
        with pytest.raises(ExperimentFormatError, match="every prospect id exactly once"):
            parse_experiment(text)

    def test_missing_rank(self):
        text = perturb("attractiveness_rank: [a, b]", "")
        with pytest.raises(ExperimentFormatError, match="attractiveness_rank"):
            parse_experiment(text)


class TestEmpiricalSection:
    def with_empirical(self, body: str) -> str:
        return MINIMAL + "empirical:\n" + body

    def test_valid(self):
        exp = parse_experiment(
            self.with_empirical("  - {id: a, frequency: 0.45}\n  - {id: b, frequency: 0.55}\n")
        )
        assert exp.empirical == (F(9, 20), F(11, 20))

    def test_order_follows_prospects_not_file(self):
        exp = parse_experiment(
            self.with_empirical("  - {id: b, frequency: 0.55}\n  - {id: a, frequency: 0.45}\n")
        )
        assert exp.empirical == (F(9, 20), F(11, 20))

    def test_must_be_list(self):
        with pytest.raises(ExperimentFormatError, match="'empirical' must be a list"):
            parse_experiment(MINIMAL + "empirical: 3\n")

    def test_entry_shape(self):
        with pytest.raises(ExperimentFormatError, match="fields 'id' and 'frequency'"):
            parse_experiment(self.with_empirical("  - {id: a}\n"))

    def test_unknown_id(self):
        with pytest.raises(ExperimentFormatError, match="does not match any prospect"):
            parse_experiment(self.with_empirical("  - {id: zz, frequency: 1}\n"))

    def test_duplicate_id(self):
        body = "  - {id: a, frequency: 0.5}\n  - {id: a, frequency: 0.5}\n"
        with pytest.raises(ExperimentFormatError, match="duplicate empirical id"):
            parse_experiment(self.with_empirical(body))

    def test_partial_coverage_rejected(self):
        with pytest.raises(ExperimentFormatError, match=r"missing for \['b'\]"):
            parse_experiment(self.with_empirical("  - {id: a, frequency: 1}\n"))

    def test_negative_frequency(self):
        body = "  - {id: a, frequency: -0.1}\n  - {id: b, frequency: 1.1}\n"
        with pytest.raises(ExperimentFormatError, match="must be >= 0"):
            parse_experiment(self.with_empirical(body))

    def test_sum_window(self):
        ok = "  - {id: a, frequency: 0.49}\n  - {id: b, frequency: 0.49}\n"
        parse_experiment(self.with_empirical(ok))
        bad = "  - {id: a, frequency: 0.4}\n  - {id: b, frequency: 0.4}\n"
        with pytest.raises(ExperimentFormatError, match="must sum to 1 within"):
            parse_experiment(self.with_empirical(bad))


class TestConfigSection:
    def test_unknown_config_field(self):
        with pytest.raises(ExperimentFormatError, match=r"config has unknown field\(s\)"):
            parse_experiment(MINIMAL + "config: {beta: 1}\n")

    def test_config_must_be_mapping(self):
        with pytest.raises(ExperimentFormatError, match="'config' must be a mapping"):
            parse_experiment(MINIMAL + "config: [1]\n")

    def test_alpha_positive(self):
        with pytest.raises(ExperimentFormatError, match="config.alpha must be positive"):
            parse_experiment(MINIMAL + "config: {alpha: 0}\n")

    def test_gamma_positive(self):
        with pytest.raises(ExperimentFormatError, match="config.gamma must be positive"):
            parse_experiment(MINIMAL + "config: {gamma: -1}\n")

    def test_utility_kind_restricted(self):
        with pytest.raises(ExperimentFormatError, match="'linear' or 'power'"):
            parse_experiment(MINIMAL + "config: {utility_kind: cubic}\n")

    def test_exponent_requires_power(self):
        with pytest.raises(ExperimentFormatError, match="requires utility_kind: power"):
            parse_experiment(MINIMAL + "config: {utility_exponent: 2}\n")

    def test_exponent_positive(self):
        text = MINIMAL + "config: {utility_kind: power, utility_exponent: 0}\n"
        with pytest.raises(ExperimentFormatError, match="utility_exponent must be positive"):
            parse_experiment(text)

    def test_defaults(self):
        exp = parse_experiment(MINIMAL)
        assert exp.alpha == 1 and exp.gamma == 1
        assert exp.utility(F(-7, 2)) == F(-7, 2)


class TestLoadExperiment:
    def test_round_trip_through_disk(self, tmp_path):
        p = tmp_path / "demo.exp"
        p.write_text(MINIMAL, encoding="utf-8")
        exp = load_experiment(p)
        assert exp == parse_experiment(MINIMAL)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ExperimentFormatError, match="cannot read experiment file"):
            load_experiment(tmp_path / "absent.exp")

    def test_error_names_the_file(self, tmp_path):
        p = tmp_path / "broken.exp"
        p.write_text("name: 3\n", encoding="utf-8")
        with pytest.raises(ExperimentFormatError, match="broken.exp"):
            load_experiment(p)


class TestInputDigest:
    def test_empty_input_frozen_value(self):
        assert (
            input_digest(b"")
            == "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        )

    def test_str_and_bytes_agree(self):
        assert input_digest("abc") == input_digest(b"abc")

    def test_distinct_inputs_distinct_digests(self):
        assert input_digest("a") != input_digest("b")


class TestRunRecord:
    def _record(self, **kw):
        report = run_prediction(bundled_experiment("microwave"))
        defaults = dict(
            command="predict",
            input_digest=input_digest(bundled_experiment_text("microwave")),
            seeds=(),
            report=report,
        )
        defaults.update(kw)
        return RunRecord(**defaults)

    def test_json_is_byte_deterministic(self):
        a = self._record(created_at="2026-01-01T00:00:00Z")
        b = self._record(created_at="2026-06-30T23:59:59Z")
        assert a.to_json() == b.to_json()

    def test_json_has_no_timestamp(self):
        payload = json.loads(self._record(created_at="now").to_json())
        flat = json.dumps(payload)
        assert "created_at" not in flat and "now" not in flat

    def test_json_carries_exact_fields(self):
        payload = json.loads(self._record().to_json())
        row = payload["report"]["prospects"][0]
        assert row["id"] == "target"
        assert row["f"] == 0.4 and row["f_exact"] == "2/5"
        assert row["q"] == 0.25 and row["q_exact"] == "1/4"
        assert row["p"] == 0.65 and row["p_exact"] == "13/20"
        assert row["p_exp_exact"] == "61/100"
        assert row["abs_error_exact"] == "1/25"
        assert payload["report"]["max_abs_error"] == 0.04
        assert payload["report"]["clamping_applied"] is False

    def test_json_statistics_are_plain(self):
        rec = RunRecord(
            command="verify",
            input_digest=None,
            seeds=(0,),
            statistics={"estimate": F(1, 4), "trail": [F(1, 2), 3]},
        )
        payload = json.loads(rec.to_json())
        assert payload["statistics"] == {"estimate": 0.25, "trail": [0.5, 3]}
        assert payload["seeds"] == [0]

    def test_csv_frozen_text(self):
        assert self._record().to_csv() == (
            "id,f,q,p,p_exp,abs_error\n"
            "target,0.4,0.25,0.65,0.61,0.04\n"
            "competitor,0.6,-0.25,0.35,0.39,0.04\n"
        )

    def test_csv_without_empirical_leaves_cells_blank(self):
        report = run_prediction(parse_experiment(MINIMAL))
        rec = RunRecord(command="predict", input_digest=None, seeds=(), report=report)
        lines = rec.to_csv().splitlines()
        assert lines[0] == "id,f,q,p,p_exp,abs_error"
        assert lines[1] == "a,0.4,0.25,0.65,,"
        assert lines[2] == "b,0.6,-0.25,0.35,,"

    def test_csv_needs_a_report(self):
        rec = RunRecord(command="verify", input_digest=None, seeds=(0,), statistics={})
        with pytest.raises(ExperimentFormatError, match="no per-prospect table"):
            rec.to_csv()
