"""
Derivations of a Weil algebra and the fixed-point bound they give.

Der(A) is the Lie algebra of Aut(A); its joint kernel is the fixed space of the
identity component, which contains SA. Intersecting with the fixed spaces of
the sign-diagonal automorphisms refines the bound.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

from algebra.exceptions import ContextMismatchError
from algebra.linalg import Subspace, intersect, kernel, mat_vec, rref, unit_vector
from algebra.polynomials import Monomial, monomial_partial, monomials_of_degree, partial_derivative
from algebra.weil import Element, WeilAlgebra
from analyzers.automorphisms import AutomorphismAnalyzer
from models.estimates import ConjectureStatus, FixedPointEstimate
from utils import get_config_loader, setup_logger

Matrix = List[List[Fraction]]


@dataclass(frozen=True, eq=False)
class Derivation:
    """A derivation fixed by its values on the variable classes"""

    algebra: WeilAlgebra
    images: Tuple[Element, ...]

    def __post_init__(self):
        if len(self.images) != self.algebra.k:
            raise ContextMismatchError(f"Expected {self.algebra.k} images, got {len(self.images)}")

    @cached_property
    def matrix(self) -> Matrix:
        return derivation_matrix(self)

    def __call__(self, a: Element) -> Element:
        return self.algebra.element(mat_vec(self.matrix, a.coords))

    def coordinates(self) -> Tuple[Fraction, ...]:
        """Stacked coordinates of the images, the unknown vector of the linear solve"""
        return tuple(c for image in self.images for c in image.coords)

    def describe(self) -> str:
        names = self.algebra.context.variables
        return "; ".join(f"D({name}) = {image}" for name, image in zip(names, self.images))


def _partials(algebra: WeilAlgebra, m: Monomial) -> List[Optional[Element]]:
    """Classes of ∂m/∂x_i for a bare monomial (degree up to r+1)"""
    result = []
    for i in range(algebra.k):
        d = monomial_partial(m, i)
        if d is None:
            result.append(None)
        else:
            factor, mm = d
            result.append(algebra.class_of_monomial(mm).scale(Fraction(factor)))
    return result


def _constraint_rows(algebra: WeilAlgebra, gradient: Sequence[Optional[Element]]) -> List[List[Fraction]]:
    """Rows of Σ_i g_i * D(x̄_i) = 0 over the k*dim unknowns"""
    n = algebra.dim
    blocks = []
    for g in gradient:
        if g is None or g.is_zero():
            blocks.append(None)
        else:
            blocks.append(algebra.multiplication_matrix(g))
    rows = []
    for s in range(n):
        row: List[Fraction] = []
        for block in blocks:
            row.extend(block[s] if block is not None else [Fraction(0)] * n)
        if any(row):
            rows.append(row)
    return rows


def derivation_matrix(d: Derivation) -> Matrix:
    """Columns are D(b_t) = Σ_i ∂b_t/∂x_i * D(x̄_i) for the standard basis b_t"""
    algebra = d.algebra
    n = algebra.dim
    matrix = [[Fraction(0)] * n for _ in range(n)]
    for t, b in enumerate(algebra.basis):
        value = algebra.zero()
        for g, image in zip(_partials(algebra, b), d.images):
            if g is not None:
                value = value + g * image
        for s, c in enumerate(value.coords):
            matrix[s][t] = c
    return matrix


def commutator(d1: Derivation, d2: Derivation) -> Derivation:
    """
    [D1, D2] = D1∘D2 - D2∘D1

    :raises ContextMismatchError: for derivations of different algebras
    """
    if d1.algebra is not d2.algebra:
        raise ContextMismatchError("Derivations belong to different algebras")
    images = tuple(d1(b) - d2(a) for a, b in zip(d1.images, d2.images))
    return Derivation(d1.algebra, images)


def in_span(derivations: Sequence[Derivation], d: Derivation) -> bool:
    """Whether d is a linear combination of the given derivations"""
    algebra = d.algebra
    labels = tuple((i, b) for i in range(algebra.k) for b in algebra.basis)
    return rref([x.coordinates() for x in derivations], labels).contains(d.coordinates())


class DerivationAnalyzer:
    """Der(A), its joint kernel and the certified upper bound on SA"""

    def __init__(self, automorphisms: Optional[AutomorphismAnalyzer] = None):
        """
        Initialize the analyzer

        :param automorphisms: analyzer used for the sign-diagonal refinement
        """
        self.logger = setup_logger("Derivation Analyzer")
        self.config_loader = get_config_loader()
        self.automorphisms = automorphisms or AutomorphismAnalyzer()

    def derivation_space(self, algebra: WeilAlgebra) -> List[Derivation]:
        """
        Basis of Der(A)

        Unknowns are the coordinates of D(x̄_i). Each generator Q of the ideal of
        relations (the P_j and the monomials of degree r+1) gives the condition
        Σ_i ∂Q/∂x_i(x̄) * D(x̄_i) = 0 in A.

        :param algebra: the Weil algebra
        :return: list of basis derivations (empty when Der(A) = 0)
        """
        context = algebra.context
        n = algebra.dim
        rows: List[List[Fraction]] = []
        for generator in algebra.spec.generators:
            gradient = [algebra.normal_form(partial_derivative(generator, i)) for i in range(context.k)]
            rows.extend(_constraint_rows(algebra, gradient))
        for m in monomials_of_degree(context.k, context.r + 1):
            rows.extend(_constraint_rows(algebra, _partials(algebra, m)))

        labels = tuple((i, b) for i in range(context.k) for b in algebra.basis)
        solutions = kernel(rows, labels)
        derivations = []
        for vector in solutions.rows:
            images = tuple(algebra.element(vector[i * n:(i + 1) * n]) for i in range(context.k))
            derivations.append(Derivation(algebra, images))
        self.logger.info(f"{algebra.name}: Der(A) has dimension {len(derivations)} ({len(rows)} constraint rows)")
        return derivations

    def derivation_kernel(self, algebra: WeilAlgebra,
                          derivations: Optional[Sequence[Derivation]] = None) -> Subspace:
        """
        Joint kernel of Der(A): the fixed space of the identity component of Aut(A)

        :param derivations: a computed basis of Der(A) to reuse
        """
        if derivations is None:
            derivations = self.derivation_space(algebra)
        rows = [row for d in derivations for row in d.matrix]
        return kernel(rows, algebra.labels)

    def fixed_subalgebra_estimate(self, algebra: WeilAlgebra) -> FixedPointEstimate:
        """
        Certified upper bound K' on SA

        :param algebra: the Weil algebra
        :return: estimate with K = Fix(G_A) and K' = K ∩ fixed spaces of the sign diagonals
        """
        derivations = self.derivation_space(algebra)
        kernel_space = self.derivation_kernel(algebra, derivations)
        signs = self.automorphisms.sign_diagonal_automorphisms(algebra)
        refined = intersect(kernel_space, self.automorphisms.fixed_subspace(algebra, signs))
        estimate = FixedPointEstimate(
            algebra_name=algebra.name,
            context=algebra.context,
            kernel=kernel_space,
            refined=refined,
            sign_vectors=[e.signs for e in signs],
            derivation_count=len(derivations)
        )
        self.logger.info(f"{algebra.name}: dim K = {kernel_space.dim}, dim K' = {refined.dim}, "
                         f"{estimate.status.value}")
        return estimate

    def verify_subalgebra(self, algebra: WeilAlgebra, s: Subspace) -> bool:
        """
        S contains 1 and is closed under multiplication

        :raises ContextMismatchError: when S is not in A's coordinates
        """
        if s.labels != algebra.labels:
            raise ContextMismatchError("Subspace does not live in the algebra's coordinates")
        if not s.contains(unit_vector(algebra.dim, 0)):
            return False
        elements = [algebra.element(row) for row in s.rows]
        for i, a in enumerate(elements):
            for b in elements[i:]:
                if not s.contains((a * b).coords):
                    self.logger.debug(f"{algebra.name}: product {a * b} leaves the subspace")
                    return False
        return True

    def conjecture_status(self, algebra: WeilAlgebra,
                          estimate: Optional[FixedPointEstimate] = None) -> ConjectureStatus:
        """
        CertifiedYes when K' lies in MA = R*1 + soc(A); SA ⊆ K' then gives SA ⊆ MA

        :param estimate: reuse a computed estimate
        """
        if estimate is None:
            estimate = self.fixed_subalgebra_estimate(algebra)
        if estimate.refined.issubset(algebra.ma_subalgebra()):
            return ConjectureStatus.CERTIFIED_YES
        self.logger.info(f"{algebra.name}: K' is not inside MA, conjecture inconclusive")
        return ConjectureStatus.INCONCLUSIVE


def derivation_space(algebra: WeilAlgebra) -> List[Derivation]:
    return DerivationAnalyzer().derivation_space(algebra)


def derivation_kernel(algebra: WeilAlgebra, derivations: Optional[Sequence[Derivation]] = None) -> Subspace:
    return DerivationAnalyzer().derivation_kernel(algebra, derivations)


def fixed_subalgebra_estimate(algebra: WeilAlgebra) -> FixedPointEstimate:
    return DerivationAnalyzer().fixed_subalgebra_estimate(algebra)


def verify_subalgebra(algebra: WeilAlgebra, s: Subspace) -> bool:
    return DerivationAnalyzer().verify_subalgebra(algebra, s)


def conjecture_status(algebra: WeilAlgebra, estimate: Optional[FixedPointEstimate] = None) -> ConjectureStatus:
    return DerivationAnalyzer().conjecture_status(algebra, estimate)
