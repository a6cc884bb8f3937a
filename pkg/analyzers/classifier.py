from fractions import Fraction
from itertools import product
from math import gcd
from typing import Dict, List, Optional, Sequence

from algebra.linalg import (
    Subspace,
    coordinate_subspace,
    intersect,
    kernel,
    rref,
    unit_vector,
)
from algebra.weil import WeilAlgebra
from analyzers.derivations import DerivationAnalyzer
from models.certificates import Certificate, CertificateKind, Outcome, TrivialityReport
from models.estimates import FixedPointEstimate, FixedPointStatus
from utils import get_config_loader, setup_logger


class TrivialityClassifier:
    """Sufficient conditions for SA = R, each producing a re-checkable certificate"""

    def __init__(self, weight_bound: Optional[int] = None, trust_order_theorem: Optional[bool] = None,
                 derivations: Optional[DerivationAnalyzer] = None):
        """
        Initialize the classifier

        :param weight_bound: Weight search bound; defaults to weight_bound_factor * r from the config
        :param trust_order_theorem: Grant the order-theorem certificate; defaults to the config value
        :param derivations: analyzer for the derivation-kernel route
        """
        self.logger = setup_logger("Triviality Classifier")
        self.config_loader = get_config_loader()
        classify_config = self.config_loader.get_classify_config()
        self.weight_bound = weight_bound
        if trust_order_theorem is None:
            trust_order_theorem = bool(classify_config.get('trust_order_theorem', True))
        self.trust_order_theorem = trust_order_theorem
        self.derivations = derivations or DerivationAnalyzer()

    def bound_for(self, algebra: WeilAlgebra) -> int:
        """Weight search bound: the explicit argument, else the config value for this truncation order"""
        if self.weight_bound is not None:
            return self.weight_bound
        return self.config_loader.get_weight_bound(algebra.context.r)

    # Monomial and homogeneous ideals

    def is_monomial_ideal(self, algebra: WeilAlgebra) -> bool:
        """The ideal closure is spanned by the monomials it contains"""
        ideal = algebra.ideal
        n = ideal.ambient
        inside = [i for i in range(n) if ideal.contains(unit_vector(n, i))]
        return len(inside) == ideal.dim

    def is_homogeneous_ideal(self, algebra: WeilAlgebra) -> bool:
        """Every degree component of every ideal basis vector lies in the ideal"""
        return self._components_in_ideal(algebra, [1] * algebra.k)

    def _components_in_ideal(self, algebra: WeilAlgebra, weights: Sequence[int]) -> bool:
        ideal = algebra.ideal
        labels = ideal.labels
        for row in ideal.rows:
            components: Dict[int, List[Fraction]] = {}
            for j, c in enumerate(row):
                if c:
                    w = _weighted_degree(labels[j], weights)
                    components.setdefault(w, [Fraction(0)] * len(row))[j] = c
            if len(components) > 1 and not all(ideal.contains(v) for v in components.values()):
                return False
        return True

    # Weight gradings

    def graded_slice_dimensions(self, algebra: WeilAlgebra, weights: Sequence[int]) -> Dict[int, int]:
        """
        Dimensions of ideal ∩ (span of monomials of weighted degree d)

        :param weights: positive weight per variable
        :return: {weighted degree: slice dimension} for the nonzero slices
        """
        ideal = algebra.ideal
        by_degree: Dict[int, List[int]] = {}
        for j, m in enumerate(ideal.labels):
            by_degree.setdefault(_weighted_degree(m, weights), []).append(j)
        result = {}
        for d in sorted(by_degree):
            dim = intersect(ideal, coordinate_subspace(ideal.labels, by_degree[d])).dim
            if dim:
                result[d] = dim
        return result

    def weight_lattice(self, algebra: WeilAlgebra) -> Subspace:
        """
        Weight vectors w whose Euler operator Σ w_i x_i ∂/∂x_i preserves the ideal

        The operator acts diagonally on monomials, so an invariant ideal is the
        direct sum of its w-graded slices. Preservation is linear in w.
        """
        ideal = algebra.ideal
        k = algebra.k
        labels = tuple(range(k))
        rows = []
        for row in ideal.rows:
            residuals = []
            for i in range(k):
                euler = [c * m[i] for c, m in zip(row, ideal.labels)]
                residuals.append(ideal.reduce(euler))
            for j in range(ideal.ambient):
                equation = [residuals[i][j] for i in range(k)]
                if any(equation):
                    rows.append(equation)
        return kernel(rows, labels)

    def find_grading_weights(self, algebra: WeilAlgebra, bound: Optional[int] = None) -> Optional[List[int]]:
        """
        Lexicographically smallest positive integer weight vector with entries <= bound grading the ideal

        :param algebra: the Weil algebra
        :param bound: weight search bound (>= 1)
        :return: the weights, or None when there is none within the bound
        """
        if bound is None:
            bound = self.bound_for(algebra)
        if bound < 1:
            raise ValueError(f"Weight bound must be >= 1, got {bound}")
        lattice = self.weight_lattice(algebra)
        k = algebra.k
        if lattice.is_zero():
            self.logger.debug(f"{algebra.name}: no grading weights at all")
            return None
        if lattice.dim == k:
            return [1] * k
        if lattice.dim == 1:
            return _primitive_positive(lattice.rows[0], bound)
        for candidate in product(range(1, bound + 1), repeat=k):
            if lattice.contains([Fraction(w) for w in candidate]):
                return list(candidate)
        return None

    # Certificates

    def monomial_certificate(self, algebra: WeilAlgebra) -> Certificate:
        """Granted when the ideal is spanned by the monomials it contains"""
        ideal = algebra.ideal
        n = ideal.ambient
        inside = sum(1 for i in range(n) if ideal.contains(unit_vector(n, i)))
        outcome = Outcome.GRANTED if inside == ideal.dim else Outcome.FAILED
        return Certificate(CertificateKind.MONOMIAL, outcome,
                           {'ideal_dim': ideal.dim, 'monomial_dim': inside})

    def homogeneous_certificate(self, algebra: WeilAlgebra) -> Certificate:
        """Granted when every standard-grading slice of a generator lies in the ideal"""
        slices = self.graded_slice_dimensions(algebra, [1] * algebra.k)
        granted = self.is_homogeneous_ideal(algebra)
        return Certificate(CertificateKind.HOMOGENEOUS, Outcome.GRANTED if granted else Outcome.FAILED,
                           {'ideal_dim': algebra.ideal.dim,
                            'slice_dimensions': {str(d): dim for d, dim in slices.items()}})

    def weight_certificate(self, algebra: WeilAlgebra, bound: Optional[int] = None,
                           weights: Optional[List[int]] = None) -> Certificate:
        """Diagonal scaling x_i -> t^(w_i) x_i maps the ideal into itself"""
        if bound is None:
            bound = self.bound_for(algebra)
        if weights is None:
            weights = self.find_grading_weights(algebra, bound)
        if weights is None:
            return Certificate(CertificateKind.WEIGHT_GRADING, Outcome.FAILED, {'bound': bound})
        return Certificate(CertificateKind.WEIGHT_GRADING, Outcome.GRANTED, {'bound': bound, 'weights': weights})

    def dwindlable_certificate(self, algebra: WeilAlgebra, bound: Optional[int] = None,
                               weights: Optional[List[int]] = None) -> Optional[Certificate]:
        """
        The family t -> (x_i -> t^(w_i) x_i) tends to the augmentation as t -> 0

        :return: a granted certificate, or None (which proves nothing)
        """
        if bound is None:
            bound = self.bound_for(algebra)
        if weights is None:
            weights = self.find_grading_weights(algebra, bound)
        if weights is None:
            return None
        return Certificate(CertificateKind.DWINDLABLE, Outcome.GRANTED, {'bound': bound, 'weights': weights})

    def order_theorem_precheck(self, algebra: WeilAlgebra) -> Optional[Certificate]:
        """Width <= 1, or width 2 with order <= 3, or width >= 3 with order <= 2"""
        width, order = algebra.width(), algebra.order()
        if _order_theorem_applies(width, order):
            return Certificate(CertificateKind.ORDER_THEOREM, Outcome.GRANTED, {'width': width, 'order': order})
        return None

    def derivation_certificate(self, algebra: WeilAlgebra,
                               estimate: Optional[FixedPointEstimate] = None) -> Certificate:
        """
        Granted when the refined derivation kernel is the scalars

        :param algebra: the Weil algebra
        :param estimate: a precomputed estimate, computed here when None
        :return: DERIVATION_KERNEL certificate with both kernel dimensions
        """
        if estimate is None:
            estimate = self.derivations.fixed_subalgebra_estimate(algebra)
        granted = estimate.status == FixedPointStatus.TRIVIAL_CERTIFIED
        return Certificate(CertificateKind.DERIVATION_KERNEL, Outcome.GRANTED if granted else Outcome.FAILED,
                           {'kernel_dim': estimate.kernel.dim, 'refined_dim': estimate.refined.dim})

    def triviality_report(self, algebra: WeilAlgebra, bound: Optional[int] = None,
                          estimate: Optional[FixedPointEstimate] = None,
                          include_derivations: bool = True) -> TrivialityReport:
        """
        Run every certificate

        :param algebra: the Weil algebra
        :param bound: weight search bound
        :param estimate: precomputed fixed-point estimate to reuse
        :param include_derivations: run the derivation-kernel route
        :return: TrivialityReport, verdict Trivial iff a certificate is granted
        """
        if bound is None:
            bound = self.bound_for(algebra)
        weights = self.find_grading_weights(algebra, bound)

        certificates = [
            self.monomial_certificate(algebra),
            self.homogeneous_certificate(algebra),
            self.weight_certificate(algebra, bound, weights),
        ]
        dwindlable = self.dwindlable_certificate(algebra, bound, weights)
        certificates.append(dwindlable or Certificate(CertificateKind.DWINDLABLE, Outcome.FAILED, {'bound': bound}))

        if not self.trust_order_theorem:
            certificates.append(Certificate(CertificateKind.ORDER_THEOREM, Outcome.NOT_APPLICABLE,
                                            note="disabled"))
        else:
            order_certificate = self.order_theorem_precheck(algebra)
            certificates.append(order_certificate or Certificate(
                CertificateKind.ORDER_THEOREM, Outcome.FAILED,
                {'width': algebra.width(), 'order': algebra.order()}))

        if include_derivations:
            certificates.append(self.derivation_certificate(algebra, estimate))
        else:
            certificates.append(Certificate(CertificateKind.DERIVATION_KERNEL, Outcome.NOT_APPLICABLE,
                                            note="disabled"))

        report = TrivialityReport(algebra.name, certificates)
        self.logger.info(f"{algebra.name}: verdict {report.verdict.value} "
                         f"({', '.join(k.value for k in report.granted_kinds()) or 'no certificate'})")
        return report

    def verify_certificate(self, algebra: WeilAlgebra, certificate: Certificate) -> bool:
        """
        Recompute the certificate's condition from scratch

        Gradings are re-checked through slice dimensions rather than the weight
        lattice used to find them.

        :return: True when the recomputed outcome matches the recorded one
        """
        if certificate.outcome == Outcome.NOT_APPLICABLE:
            return True
        granted = certificate.granted
        kind = certificate.kind
        ideal_dim = algebra.ideal.dim

        if kind == CertificateKind.MONOMIAL:
            ideal = algebra.ideal
            n = ideal.ambient
            monomials = rref([unit_vector(n, i) for i in range(n) if ideal.contains(unit_vector(n, i))],
                             ideal.labels)
            return (monomials == ideal) == granted
        if kind == CertificateKind.HOMOGENEOUS:
            total = sum(self.graded_slice_dimensions(algebra, [1] * algebra.k).values())
            return (total == ideal_dim) == granted
        if kind in (CertificateKind.WEIGHT_GRADING, CertificateKind.DWINDLABLE):
            weights = certificate.weights
            if not granted:
                bound = int(certificate.witness.get('bound', self.bound_for(algebra)))
                return self.find_grading_weights(algebra, bound) is None
            if weights is None or len(weights) != algebra.k or min(weights) < 1:
                return False
            return sum(self.graded_slice_dimensions(algebra, weights).values()) == ideal_dim
        if kind == CertificateKind.ORDER_THEOREM:
            return _order_theorem_applies(algebra.width(), algebra.order()) == granted
        if kind == CertificateKind.DERIVATION_KERNEL:
            estimate = self.derivations.fixed_subalgebra_estimate(algebra)
            return (estimate.refined == algebra.constants()) == granted
        return False


def _weighted_degree(m, weights: Sequence[int]) -> int:
    return sum(e * w for e, w in zip(m, weights))


def _order_theorem_applies(width: int, order: int) -> bool:
    if width <= 1:
        return True
    if width == 2:
        return order <= 3
    return order <= 2


def _primitive_positive(v: Sequence[Fraction], bound: int) -> Optional[List[int]]:
    """Smallest positive integer multiple of v, if v has entries of one sign"""
    if any(c == 0 for c in v):
        return None
    if not (all(c > 0 for c in v) or all(c < 0 for c in v)):
        return None
    denominator = 1
    for c in v:
        denominator = denominator * c.denominator // gcd(denominator, c.denominator)
    integers = [abs(int(c * denominator)) for c in v]
    common = 0
    for x in integers:
        common = gcd(common, x)
    weights = [x // common for x in integers]
    return weights if max(weights) <= bound else None


def is_monomial_ideal(algebra: WeilAlgebra) -> bool:
    return TrivialityClassifier().is_monomial_ideal(algebra)


def is_homogeneous_ideal(algebra: WeilAlgebra) -> bool:
    return TrivialityClassifier().is_homogeneous_ideal(algebra)


def find_grading_weights(algebra: WeilAlgebra, bound: int) -> Optional[List[int]]:
    return TrivialityClassifier(weight_bound=bound).find_grading_weights(algebra, bound)
