"""
Structured reports for every command and their JSON rendering.

The human formatters read the same dictionaries, so text and JSON output
always carry identical numbers.
"""
import json
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence

from algebra.linalg import Subspace, determinant
from algebra.polynomials import format_rational, render_poly
from algebra.weil import Element, WeilAlgebra
from analyzers.automorphisms import AutomorphismAnalyzer, Endo
from analyzers.constraints import ConstraintSystem
from analyzers.derivations import Derivation
from models import FixedPointEstimate, ScanReport, TrivialityReport
from models.estimates import ConjectureStatus, subspace_to_strings


def to_jsonable(value: Any) -> Any:
    """Fractions become "p/q" strings, enums their values, tuples lists"""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


def render_json(report: Dict[str, Any]) -> str:
    """Stable JSON text: insertion-ordered fields, exact rationals as strings"""
    return json.dumps(to_jsonable(report), ensure_ascii=False, indent=2)


def subspace_report(algebra: WeilAlgebra, s: Subspace) -> Dict[str, Any]:
    return {'dim': s.dim, 'basis': subspace_to_strings(algebra.context, s)}


def info_report(algebra: WeilAlgebra) -> Dict[str, Any]:
    result = {'algebra': algebra.name}
    result.update(algebra.context.to_dict())
    result.update({
        'generators': [render_poly(g) for g in algebra.spec.generators],
        'dim': algebra.dim,
        'ideal_dim': algebra.ideal.dim,
        'order': algebra.order(),
        'width': algebra.width(),
        'socle_dim': algebra.socle().dim,
        'ma_dim': algebra.ma_subalgebra().dim,
        'width_deficit': algebra.width() < algebra.k
    })
    return result


def basis_report(algebra: WeilAlgebra) -> Dict[str, Any]:
    return {
        'algebra': algebra.name,
        'dim': algebra.dim,
        'basis': [algebra.context.format_monomial(b) for b in algebra.basis]
    }


def multable_report(algebra: WeilAlgebra) -> Dict[str, Any]:
    """Nonzero products of nilradical basis pairs"""
    fmt = algebra.context.format_monomial
    products = []
    for i in range(1, algebra.dim):
        for j in range(i, algebra.dim):
            value = algebra.basis_element(i) * algebra.basis_element(j)
            if not value.is_zero():
                products.append({'left': fmt(algebra.basis[i]), 'right': fmt(algebra.basis[j]),
                                 'product': str(value)})
    return {'algebra': algebra.name, 'dim': algebra.dim, 'products': products}


def element_report(algebra: WeilAlgebra, source: str, element: Element) -> Dict[str, Any]:
    return {
        'algebra': algebra.name,
        'input': source,
        'normal_form': str(element),
        'coordinates': list(element.coords)
    }


def socle_report(algebra: WeilAlgebra) -> Dict[str, Any]:
    return {
        'algebra': algebra.name,
        'socle': subspace_report(algebra, algebra.socle()),
        'ma': subspace_report(algebra, algebra.ma_subalgebra())
    }


def classify_report(report: TrivialityReport) -> Dict[str, Any]:
    return report.to_dict()


def weights_report(algebra: WeilAlgebra, bound: int, weights: Optional[Sequence[int]],
                   lattice: Subspace) -> Dict[str, Any]:
    return {
        'algebra': algebra.name,
        'bound': bound,
        'weights': list(weights) if weights is not None else None,
        'lattice': {'dim': lattice.dim, 'basis': [list(row) for row in lattice.rows]}
    }


def derivations_report(algebra: WeilAlgebra, derivations: Sequence[Derivation]) -> Dict[str, Any]:
    names = algebra.context.variables
    return {
        'algebra': algebra.name,
        'dim': len(derivations),
        'basis': [{name: str(image) for name, image in zip(names, d.images)} for d in derivations]
    }


def fixed_report(estimate: FixedPointEstimate) -> Dict[str, Any]:
    return estimate.to_dict()


def conjecture_report(algebra: WeilAlgebra, estimate: FixedPointEstimate,
                      status: ConjectureStatus) -> Dict[str, Any]:
    return {
        'algebra': algebra.name,
        'refined': subspace_report(algebra, estimate.refined),
        'ma': subspace_report(algebra, algebra.ma_subalgebra()),
        'contained': status == ConjectureStatus.CERTIFIED_YES,
        'conjecture': status.value
    }


def endo_report(algebra: WeilAlgebra, e: Endo) -> Dict[str, Any]:
    """Well-definedness, automorphism status, ε_A, det sign and unipotence"""
    analyzer = AutomorphismAnalyzer()
    names = algebra.context.variables
    result: Dict[str, Any] = {
        'algebra': algebra.name,
        'images': {name: str(image) for name, image in zip(names, e.images)},
        'well_defined': analyzer.is_well_defined(algebra, e)
    }
    automorphism = result['well_defined'] and analyzer.is_automorphism(algebra, e)
    result['automorphism'] = automorphism
    if result['well_defined']:
        matrix = analyzer.linear_part(algebra, e)
        result['linear_part'] = [list(row) for row in matrix]
        result['det'] = determinant(matrix)
    if automorphism:
        result['orientation_preserving'] = analyzer.is_orientation_preserving(algebra, e)
        result['unipotent'] = analyzer.is_unipotent(algebra, e)
    return result


def constraints_report(cs: ConstraintSystem) -> Dict[str, Any]:
    return cs.to_dict()


def scan_report(report: ScanReport, include_timing: bool = False) -> Dict[str, Any]:
    return report.to_dict(include_timing)
