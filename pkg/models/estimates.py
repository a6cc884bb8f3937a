from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Sequence, Tuple

from algebra.linalg import Subspace, rref
from algebra.polynomials import Monomial, RingContext, TruncPoly, parse_poly, render_poly


class FixedPointStatus(str, Enum):
    TRIVIAL_CERTIFIED = "TrivialCertified"
    UPPER_BOUND_ONLY = "UpperBoundOnly"


class ConjectureStatus(str, Enum):
    CERTIFIED_YES = "CertifiedYes"
    INCONCLUSIVE = "Inconclusive"


def subspace_to_strings(context: RingContext, s: Subspace) -> List[str]:
    """Render each RREF basis row as a polynomial in the standard monomials"""
    return [render_poly(TruncPoly.from_terms(context, ((m, c) for m, c in zip(s.labels, row) if c)))
            for row in s.rows]


def subspace_from_strings(context: RingContext, labels: Sequence[Monomial], texts: Sequence[str]) -> Subspace:
    """Inverse of subspace_to_strings for a known coordinate basis"""
    labels = tuple(labels)
    rows = []
    for text in texts:
        poly = parse_poly(text, context)
        rows.append(tuple(poly.terms.get(m, 0) for m in labels))
    return rref(rows, labels)


@dataclass
class FixedPointEstimate:
    """
    Certified upper bound on the fixed-point subalgebra SA.

    `kernel` is the joint kernel of the derivations (the fixed space of the
    identity component), `refined` additionally intersects the fixed spaces of
    the sign-diagonal automorphisms. SA is always contained in `refined`.
    """

    algebra_name: str
    context: RingContext
    kernel: Subspace
    refined: Subspace
    sign_vectors: List[Tuple[int, ...]] = field(default_factory=list)
    derivation_count: int = 0

    @property
    def status(self) -> FixedPointStatus:
        if self.refined.dim == 1:
            return FixedPointStatus.TRIVIAL_CERTIFIED
        return FixedPointStatus.UPPER_BOUND_ONLY

    @property
    def basis(self) -> Tuple[Monomial, ...]:
        return self.kernel.labels

    def refined_strings(self) -> List[str]:
        return subspace_to_strings(self.context, self.refined)

    def kernel_strings(self) -> List[str]:
        return subspace_to_strings(self.context, self.kernel)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'FixedPointEstimate':
        """Create an estimate from a dictionary

        :param data: Dictionary produced by to_dict
        :return: FixedPointEstimate instance
        """
        context = RingContext.from_dict(data)
        labels = [next(iter(parse_poly(text, context).terms)) for text in data['basis']]
        return cls(
            algebra_name=data['algebra'],
            context=context,
            kernel=subspace_from_strings(context, labels, data['kernel']['basis']),
            refined=subspace_from_strings(context, labels, data['refined']['basis']),
            sign_vectors=[tuple(v) for v in data.get('sign_automorphisms', [])],
            derivation_count=int(data.get('derivation_count', 0))
        )

    def to_dict(self) -> Dict[str, Any]:
        """Convert object to dictionary representation

        :return: Dictionary representation of the estimate
        """
        result = {'algebra': self.algebra_name}
        result.update(self.context.to_dict())
        result.update({
            'basis': [self.context.format_monomial(m) for m in self.basis],
            'derivation_count': self.derivation_count,
            'sign_automorphisms': [list(v) for v in self.sign_vectors],
            'kernel': {'dim': self.kernel.dim, 'basis': self.kernel_strings()},
            'refined': {'dim': self.refined.dim, 'basis': self.refined_strings()},
            'status': self.status.value
        })
        return result
