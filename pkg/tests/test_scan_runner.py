import pytest

from models import ScanConfig, ScanFamily, ScanRecord, ScanReport
from reporting import render_json
from reporting.serializers import scan_report
from runners import ScanRunner, generate_instances, rebuild_record, scan_run
from runners.scan_runner import variable_names

SMALL = dict(seed=7, count=12, k_range=(2, 2), r_range=(3, 4))


class TestGeneration:
    def test_same_seed_same_instances(self):
        first = [spec.to_text() for spec in generate_instances(ScanConfig(**SMALL))]
        second = [spec.to_text() for spec in generate_instances(ScanConfig(**SMALL))]
        assert first == second
        assert len(first) == 12

    def test_different_seed(self):
        first = [spec.to_text() for spec in generate_instances(ScanConfig(**SMALL))]
        other = [spec.to_text() for spec in generate_instances(ScanConfig(**{**SMALL, 'seed': 8}))]
        assert first != other

    def test_instance_names(self):
        specs = generate_instances(ScanConfig(**SMALL))
        assert [spec.name for spec in specs[:2]] == ["scan-7-0", "scan-7-1"]

    def test_generators_respect_ranges(self):
        config = ScanConfig(**{**SMALL, 'count': 50})
        for spec in generate_instances(config):
            assert spec.context.k == 2
            assert 3 <= spec.context.r <= 4
            assert len(spec.generators) <= 3
            for generator in spec.generators:
                assert not generator.is_zero()
                assert all(sum(m) >= 2 for m in generator.terms)
                # repeated monomials add up
                assert all(c.denominator == 1 and 0 < abs(c) <= 6 for c in generator.terms.values())

    def test_monomial_family(self):
        config = ScanConfig(**{**SMALL, 'family': ScanFamily.MONOMIAL})
        for spec in generate_instances(config):
            assert all(len(g.terms) == 1 and list(g.terms.values()) == [1] for g in spec.generators)

    def test_homogeneous_family(self):
        config = ScanConfig(**{**SMALL, 'family': 'homogeneous', 'count': 30})
        for spec in generate_instances(config):
            for generator in spec.generators:
                assert len({sum(m) for m in generator.terms}) == 1

    def test_variable_names(self):
        assert variable_names(2) == ("x", "y")
        assert variable_names(4) == ("x1", "x2", "x3", "x4")


class TestScanRun:
    def test_records_in_order(self):
        report = scan_run(ScanConfig(**SMALL))
        assert [r.index for r in report.records] == list(range(12))
        for record in report.records:
            assert record.ok
            assert record.verdict in ("Trivial", "Unknown")
            assert record.status in ("TrivialCertified", "UpperBoundOnly")
            assert 1 <= record.refined_dim <= record.kernel_dim <= record.dim

    def test_worker_count_does_not_change_output(self):
        serial = scan_run(ScanConfig(**SMALL, workers=1))
        parallel = scan_run(ScanConfig(**SMALL, workers=4))
        assert render_json(scan_report(serial)) == render_json(scan_report(parallel))

    def test_summary_adds_up(self):
        summary = scan_run(ScanConfig(**SMALL)).summary()
        assert summary['seed'] == 7
        assert summary['instances'] == 12
        assert summary['processed'] + summary['skipped'] + summary['failed'] == 12
        assert sum(summary['verdicts'].values()) == summary['processed']
        assert sum(summary['status'].values()) == summary['processed']

    def test_dimension_cap_skips(self):
        report = scan_run(ScanConfig(**SMALL, dim_cap=1))
        assert all(r.skipped and r.dim is None for r in report.records)
        summary = report.summary()
        assert summary['skipped'] == 12
        assert summary['verdicts'] == {}

    def test_timing_is_opt_in(self):
        report = scan_run(ScanConfig(**{**SMALL, 'count': 2}))
        assert 'elapsed_ms' not in scan_report(report)['records'][0]
        assert 'elapsed_ms' in scan_report(report, include_timing=True)['records'][0]
        assert 'workers' not in scan_report(report)['config']

    def test_graded_instances_are_trivial(self):
        report = scan_run(ScanConfig(**{**SMALL, 'family': 'monomial'}))
        assert all(r.verdict == "Trivial" for r in report.records)
        assert all("Monomial" in r.certificates for r in report.records)
        assert all(r.status == "TrivialCertified" and r.conjecture == "CertifiedYes" for r in report.records)
        assert report.summary()["overshoot"] == 0

    def test_example_one_as_instance(self, example1):
        record = ScanRunner(ScanConfig()).process_spec(0, example1.spec)
        assert record.verdict == "Unknown"
        assert record.certificates == []
        assert (record.dim, record.refined_dim, record.ma_dim) == (9, 2, 3)
        assert record.conjecture == "CertifiedYes"

    def test_certified_records_reproduce(self):
        report = scan_run(ScanConfig(**SMALL))
        for record in report.records:
            if record.conjecture == "CertifiedYes":
                rebuilt = rebuild_record(record)
                assert rebuilt.conjecture == "CertifiedYes"
                assert rebuilt.refined_dim == record.refined_dim

    def test_rebuild_record(self):
        record = scan_run(ScanConfig(**{**SMALL, 'count': 3})).records[2]
        rebuilt = rebuild_record(record)
        assert rebuilt.verdict == record.verdict
        assert rebuilt.refined_dim == record.refined_dim


class TestScanConfig:
    @pytest.mark.parametrize("overrides", [
        {'count': 0},
        {'seed': -1},
        {'k_range': (3, 2)},
        {'r_range': (0, 2)},
        {'coefficient_pool': (0, 1)},
        {'coefficient_pool': ()},
        {'workers': 0},
        {'weight_bound': 0},
        {'min_degree': 0},
    ])
    def test_invalid(self, overrides):
        with pytest.raises(ValueError):
            ScanConfig(**overrides)

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            ScanConfig(family="dense")

    def test_round_trip(self):
        config = ScanConfig(seed=3, k_range=(1, 3), count=5, family=ScanFamily.HOMOGENEOUS, weight_bound=9)
        assert ScanConfig.from_dict(config.to_dict()) == config

    def test_single_value_range(self):
        assert ScanConfig.from_dict({'k_range': 3}).k_range == (3, 3)

    def test_overrides_take_precedence(self):
        runner = ScanRunner.from_overrides(seed=11, count=4, workers=None)
        assert runner.config.seed == 11
        assert runner.config.count == 4
        assert runner.config.workers == 1


class TestScanRecord:
    def test_round_trip(self):
        report = scan_run(ScanConfig(**{**SMALL, 'count': 2}))
        record = report.records[1]
        restored = ScanRecord.from_dict(record.to_dict())
        assert restored.to_dict() == record.to_dict()
        assert restored.spec.to_text() == record.spec.to_text()

    def test_empty_report(self):
        report = ScanReport(ScanConfig(count=1))
        assert report.summary()['processed'] == 0
