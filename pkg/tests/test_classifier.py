import pytest
from hypothesis import given, settings

from algebra.weil import build
from analyzers.classifier import (
    TrivialityClassifier,
    find_grading_weights,
    is_homogeneous_ideal,
    is_monomial_ideal,
)
from models import AlgebraSpec, CertificateKind, Outcome, ScanConfig, ScanFamily, Verdict
from runners import generate_instances
from tests.strategies import algebras, graded_algebras

PROPERTY = settings(max_examples=100, derandomize=True, deadline=None)


def algebra(text: str):
    return build(AlgebraSpec.from_text(text, name="test"))


MONOMIAL = "vars: x y\norder: 4\ngen: x^2\ngen: y^3\n"
HOMOGENEOUS = "vars: x y\norder: 4\ngen: x^2 - y^2\ngen: x*y\n"
QUASI_HOMOGENEOUS = "vars: x y\norder: 4\ngen: x^2 - y^3\n"


class TestIdealShape:
    def test_monomial_ideal(self):
        a = algebra(MONOMIAL)
        assert is_monomial_ideal(a)
        assert is_homogeneous_ideal(a)

    def test_homogeneous_ideal(self):
        a = algebra(HOMOGENEOUS)
        assert not is_monomial_ideal(a)
        assert is_homogeneous_ideal(a)

    def test_example_one_is_neither(self, example1):
        assert not is_monomial_ideal(example1)
        assert not is_homogeneous_ideal(example1)

    def test_slice_dimensions_sum_to_ideal(self):
        a = algebra(HOMOGENEOUS)
        slices = TrivialityClassifier().graded_slice_dimensions(a, [1, 1])
        assert sum(slices.values()) == a.ideal.dim
        assert slices[2] == 2


class TestWeights:
    def test_quasi_homogeneous(self):
        a = algebra(QUASI_HOMOGENEOUS)
        assert find_grading_weights(a, 16) == [3, 2]
        assert TrivialityClassifier().weight_lattice(a).dim == 1

    def test_bound_too_small(self):
        assert find_grading_weights(algebra(QUASI_HOMOGENEOUS), 2) is None

    def test_homogeneous_gets_unit_weights(self):
        assert find_grading_weights(algebra(MONOMIAL), 5) == [1, 1]

    def test_invalid_bound(self):
        with pytest.raises(ValueError):
            TrivialityClassifier().find_grading_weights(algebra(MONOMIAL), 0)

    @pytest.mark.parametrize("name", ["example1", "counterexample", "nondwindlable"])
    def test_no_weights_up_to_100(self, name, request):
        a = request.getfixturevalue(name)
        assert find_grading_weights(a, 100) is None

    def test_default_bound_scales_with_order(self, example1):
        assert TrivialityClassifier().bound_for(example1) == 16
        assert TrivialityClassifier(weight_bound=7).bound_for(example1) == 7


class TestGradedIdeals:
    @PROPERTY
    @given(graded_algebras(monomial=True))
    def test_monomial_ideals_get_unit_weights(self, a):
        assert is_monomial_ideal(a)
        assert is_homogeneous_ideal(a)
        assert find_grading_weights(a, 3) == [1] * a.k

    @PROPERTY
    @given(graded_algebras())
    def test_homogeneous_ideals_get_unit_weights(self, a):
        assert is_homogeneous_ideal(a)
        assert find_grading_weights(a, 3) == [1] * a.k
        assert TrivialityClassifier().homogeneous_certificate(a).granted

    @PROPERTY
    @given(algebras())
    def test_weight_search_is_deterministic(self, a):
        first = TrivialityClassifier().find_grading_weights(a, 8)
        assert TrivialityClassifier().find_grading_weights(a, 8) == first
        assert TrivialityClassifier().weight_lattice(a) == TrivialityClassifier().weight_lattice(a)
        if is_homogeneous_ideal(a):
            assert first == [1] * a.k


class TestReport:
    def test_certificate_order(self, example1):
        report = TrivialityClassifier().triviality_report(example1)
        assert [c.kind for c in report.certificates] == [
            CertificateKind.MONOMIAL, CertificateKind.HOMOGENEOUS, CertificateKind.WEIGHT_GRADING,
            CertificateKind.DWINDLABLE, CertificateKind.ORDER_THEOREM, CertificateKind.DERIVATION_KERNEL,
        ]

    def test_example_one_is_undecided(self, example1):
        report = TrivialityClassifier().triviality_report(example1)
        assert report.verdict == Verdict.UNKNOWN
        assert report.granted_kinds() == []
        derivation = report.get(CertificateKind.DERIVATION_KERNEL)
        assert derivation.witness == {'kernel_dim': 3, 'refined_dim': 2}

    def test_counterexample_is_trivial_through_derivations(self, counterexample):
        report = TrivialityClassifier(weight_bound=100).triviality_report(counterexample)
        assert report.verdict == Verdict.TRIVIAL
        assert report.get(CertificateKind.WEIGHT_GRADING).outcome == Outcome.FAILED
        assert report.get(CertificateKind.DERIVATION_KERNEL).granted

    def test_nondwindlable_gets_no_dwindlable_certificate(self, nondwindlable):
        classifier = TrivialityClassifier(weight_bound=100)
        assert classifier.dwindlable_certificate(nondwindlable) is None
        report = classifier.triviality_report(nondwindlable)
        assert not report.get(CertificateKind.DWINDLABLE).granted
        assert report.get(CertificateKind.DERIVATION_KERNEL).granted

    def test_weight_certificate_carries_weights(self):
        report = TrivialityClassifier().triviality_report(algebra(QUASI_HOMOGENEOUS), include_derivations=False)
        assert report.get(CertificateKind.WEIGHT_GRADING).weights == [3, 2]
        assert report.get(CertificateKind.DWINDLABLE).weights == [3, 2]
        assert report.get(CertificateKind.DERIVATION_KERNEL).outcome == Outcome.NOT_APPLICABLE

    def test_order_theorem(self):
        a = algebra("vars: x\norder: 5\ngen: x^4\n")
        assert TrivialityClassifier().order_theorem_precheck(a).granted
        assert TrivialityClassifier().order_theorem_precheck(algebra("vars: x y\norder: 4\n")) is None

    def test_order_theorem_can_be_disabled(self):
        a = algebra("vars: x\norder: 5\ngen: x^4\n")
        report = TrivialityClassifier(trust_order_theorem=False).triviality_report(a)
        assert report.get(CertificateKind.ORDER_THEOREM).outcome == Outcome.NOT_APPLICABLE

    @pytest.mark.parametrize("name", ["example1", "counterexample", "nondwindlable", "nontrivial_d33"])
    def test_certificates_verify(self, name, request):
        a = request.getfixturevalue(name)
        classifier = TrivialityClassifier()
        report = classifier.triviality_report(a)
        assert all(classifier.verify_certificate(a, c) for c in report.certificates)

    def test_tampered_certificate_fails_verification(self, example1):
        classifier = TrivialityClassifier()
        certificate = classifier.weight_certificate(algebra(QUASI_HOMOGENEOUS))
        assert certificate.granted
        assert not classifier.verify_certificate(example1, certificate)


class TestSoundnessSweeps:
    @pytest.mark.parametrize("family, kind", [
        (ScanFamily.MONOMIAL, CertificateKind.MONOMIAL),
        (ScanFamily.HOMOGENEOUS, CertificateKind.HOMOGENEOUS),
    ])
    def test_graded_families_are_certified_by_their_shape(self, family, kind):
        config = ScanConfig(seed=7, count=200, family=family, k_range=(2, 3), r_range=(2, 4))
        classifier = TrivialityClassifier(trust_order_theorem=False)
        for spec in generate_instances(config):
            report = classifier.triviality_report(build(spec), include_derivations=False)
            assert report.get(kind).granted, spec.to_text()
            assert report.verdict == Verdict.TRIVIAL

    def test_one_variable_is_always_trivial(self):
        config = ScanConfig(seed=11, count=50, k_range=(1, 1), r_range=(2, 6), min_degree=1)
        classifier = TrivialityClassifier()
        for spec in generate_instances(config):
            report = classifier.triviality_report(build(spec), include_derivations=False)
            assert CertificateKind.ORDER_THEOREM in report.granted_kinds()
