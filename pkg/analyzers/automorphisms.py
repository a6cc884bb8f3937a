"""
Concrete endomorphisms of a Weil algebra.

An endomorphism is fixed by the images of the variable classes; the unit is
always sent to the unit. Checks that need a well-defined map take a
``WellDefinedEndo``, which is only produced by ``AutomorphismAnalyzer.validate``.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.exceptions import (
    ContextMismatchError,
    EndoNotWellDefinedError,
    NotAnAutomorphismError,
    PolyParseError,
    UnknownVariableError,
)
from algebra.linalg import (
    Subspace,
    determinant,
    full_space,
    intersect_all,
    is_nilpotent,
    kernel,
    mat_vec,
)
from algebra.polynomials import TruncPoly, parse_poly, substitute
from algebra.weil import Element, WeilAlgebra
from utils import get_config_loader, setup_logger

Matrix = List[List[Fraction]]


@dataclass(frozen=True, eq=False)
class Endo:
    """Candidate algebra endomorphism x̄_i -> images[i]"""

    algebra: WeilAlgebra
    images: Tuple[Element, ...]
    # Set for sign-diagonal maps
    signs: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if len(self.images) != self.algebra.k:
            raise ContextMismatchError(f"Expected {self.algebra.k} images, got {len(self.images)}")
        for image in self.images:
            if image.algebra is not self.algebra:
                raise ContextMismatchError("Image does not belong to the algebra")

    def image_polys(self) -> List[TruncPoly]:
        return [image.to_poly() for image in self.images]

    def describe(self) -> str:
        names = self.algebra.context.variables
        return "; ".join(f"{name} -> {image}" for name, image in zip(names, self.images))


@dataclass(frozen=True, eq=False)
class WellDefinedEndo(Endo):
    """An Endo that passed is_well_defined"""

    @cached_property
    def matrix(self) -> Matrix:
        return _endo_matrix(self.algebra, self)


def identity(algebra: WeilAlgebra) -> WellDefinedEndo:
    """
    The identity map x̄_i -> x̄_i

    :param algebra: the Weil algebra
    :return: identity, already validated
    """
    return WellDefinedEndo(algebra, tuple(algebra.variable_class(i) for i in range(algebra.k)))


def diagonal(algebra: WeilAlgebra, scalars: Sequence[Fraction]) -> Endo:
    """x̄_i -> scalars[i] * x̄_i"""
    images = tuple(algebra.variable_class(i).scale(Fraction(c)) for i, c in enumerate(scalars))
    return Endo(algebra, images)


def _endo_matrix(algebra: WeilAlgebra, e: Endo) -> Matrix:
    """Columns are the images of the standard basis monomials"""
    n = algebra.dim
    polys = e.image_polys()
    matrix = [[Fraction(0)] * n for _ in range(n)]
    for t, b in enumerate(algebra.basis):
        image = algebra.normal_form(substitute(TruncPoly.monomial(algebra.context, b), polys))
        for s, c in enumerate(image.coords):
            matrix[s][t] = c
    return matrix


def linear_indices(algebra: WeilAlgebra) -> List[int]:
    """
    Basis positions spanning n/n^2

    For I inside m^2 these are exactly the variable classes, in declared order.
    """
    square = set(algebra.nilradical_power(2).pivots)
    return [i for i in range(1, algebra.dim) if i not in square]


class AutomorphismAnalyzer:
    """Well-definedness, linear part, orientation and unipotence of concrete endomorphisms"""

    def __init__(self, verify_full_matrix: Optional[bool] = None):
        """
        Initialize the analyzer

        :param verify_full_matrix: Also invert the full matrix on A in automorphism checks;
            defaults to `autos.verify_full_matrix` from the config
        """
        self.logger = setup_logger("Automorphism Analyzer")
        self.config_loader = get_config_loader()
        if verify_full_matrix is None:
            autos_config = self.config_loader.get_autos_config()
            verify_full_matrix = bool(autos_config.get('verify_full_matrix', False))
        self.verify_full_matrix = verify_full_matrix

    def is_well_defined(self, algebra: WeilAlgebra, e: Endo) -> bool:
        """
        Check that every relation is mapped into the ideal

        :param algebra: the Weil algebra
        :param e: candidate endomorphism
        :return: True when the images lie in the nilradical and every generator maps to zero
        """
        if e.algebra is not algebra:
            raise ContextMismatchError("Endomorphism belongs to a different algebra")
        if any(image.unit_coordinate for image in e.images):
            self.logger.debug("Image with a nonzero constant term; not a local endomorphism")
            return False
        polys = e.image_polys()
        for generator in algebra.spec.generators:
            if not algebra.normal_form(substitute(generator, polys)).is_zero():
                self.logger.debug(f"Relation {generator} is not preserved by {e.describe()}")
                return False
        return True

    def validate(self, algebra: WeilAlgebra, e: Endo) -> WellDefinedEndo:
        """
        Wrap a well-defined map

        :param algebra: the Weil algebra
        :param e: candidate endomorphism
        :return: WellDefinedEndo with the same images
        :raises EndoNotWellDefinedError: when a relation is not preserved
        """
        if isinstance(e, WellDefinedEndo) and e.algebra is algebra:
            return e
        if not self.is_well_defined(algebra, e):
            raise EndoNotWellDefinedError(f"Map {e.describe()} does not preserve the relations of {algebra.name}")
        return WellDefinedEndo(algebra, e.images, e.signs)

    def endo_matrix(self, algebra: WeilAlgebra, e: Endo) -> Matrix:
        """
        Matrix of a well-defined map on A

        :return: dim x dim matrix, column t is the image of basis element t
        """
        return self.validate(algebra, e).matrix

    def linear_part(self, algebra: WeilAlgebra, e: Endo) -> Matrix:
        """
        The induced map on n/n^2 (the group morphism ε_A on automorphisms)

        :param algebra: the Weil algebra
        :param e: endomorphism; not required to be well defined
        :return: width x width matrix; column j holds the class of the j-th image mod n^2
        """
        indices = linear_indices(algebra)
        square = algebra.nilradical_power(2)
        matrix = e.matrix if isinstance(e, WellDefinedEndo) else _endo_matrix(algebra, e)
        columns = []
        for i in indices:
            residual = square.reduce([row[i] for row in matrix])
            columns.append([residual[j] for j in indices])
        return [[columns[j][i] for j in range(len(indices))] for i in range(len(indices))]

    def is_automorphism(self, algebra: WeilAlgebra, e: Endo, verify_full_matrix: Optional[bool] = None) -> bool:
        """
        Well-defined with invertible linear part

        :param algebra: the Weil algebra
        :param e: candidate endomorphism
        :param verify_full_matrix: override the analyzer's full-matrix check for this call
        :return: True for an automorphism
        """
        if not self.is_well_defined(algebra, e):
            return False
        invertible = determinant(self.linear_part(algebra, e)) != 0
        if verify_full_matrix is None:
            verify_full_matrix = self.verify_full_matrix
        if verify_full_matrix:
            full = self.full_matrix_invertible(algebra, e)
            if full != invertible:
                self.logger.error(f"Linear-part and full-matrix invertibility disagree for {e.describe()}")
            return invertible and full
        return invertible

    def full_matrix_invertible(self, algebra: WeilAlgebra, e: Endo) -> bool:
        """
        Invertibility of the full dim x dim matrix

        :return: True when det of the matrix on A is nonzero
        """
        return determinant(self.endo_matrix(algebra, e)) != 0

    def _require_automorphism(self, algebra: WeilAlgebra, e: Endo) -> WellDefinedEndo:
        if not self.is_automorphism(algebra, e, verify_full_matrix=False):
            raise NotAnAutomorphismError(f"Map {e.describe()} is not an automorphism of {algebra.name}")
        return self.validate(algebra, e)

    def is_orientation_preserving(self, algebra: WeilAlgebra, e: Endo) -> bool:
        """det ε_A(e) > 0; raises NotAnAutomorphismError for other maps"""
        self._require_automorphism(algebra, e)
        return determinant(self.linear_part(algebra, e)) > 0

    def is_unipotent(self, algebra: WeilAlgebra, e: Endo) -> bool:
        """id - e is nilpotent on A; raises NotAnAutomorphismError for other maps"""
        valid = self._require_automorphism(algebra, e)
        n = algebra.dim
        difference = [[(Fraction(1) if s == t else Fraction(0)) - valid.matrix[s][t] for t in range(n)]
                      for s in range(n)]
        return is_nilpotent(difference)

    def apply(self, algebra: WeilAlgebra, e: Endo, a: Element, check: bool = True) -> Element:
        """
        Image of a under the algebra map

        :param check: validate e first; without it a map that is not well defined gives
            the image of the standard representative
        """
        if a.algebra is not algebra:
            raise ContextMismatchError("Element belongs to a different algebra")
        if check:
            matrix = self.validate(algebra, e).matrix
        elif isinstance(e, WellDefinedEndo):
            matrix = e.matrix
        else:
            matrix = _endo_matrix(algebra, e)
        return algebra.element(mat_vec(matrix, a.coords))

    def sign_diagonal_automorphisms(self, algebra: WeilAlgebra) -> List[WellDefinedEndo]:
        """All sign maps x̄_i -> ±x̄_i that are well defined, identity first"""
        result = []
        for signs in product((1, -1), repeat=algebra.k):
            candidate = diagonal(algebra, signs)
            if self.is_well_defined(algebra, candidate):
                result.append(WellDefinedEndo(algebra, candidate.images, tuple(signs)))
        self.logger.debug(f"{algebra.name}: {len(result)} of {2 ** algebra.k} sign diagonals are automorphisms")
        return result

    def fixed_subspace(self, algebra: WeilAlgebra, endos: Sequence[Endo]) -> Subspace:
        """
        Common fixed vectors of the maps

        :param endos: well-defined maps
        :return: Subspace of A's coordinates; the whole algebra for an empty list
        """
        spaces = []
        n = algebra.dim
        for e in endos:
            matrix = self.validate(algebra, e).matrix
            rows = [[matrix[s][t] - (1 if s == t else 0) for t in range(n)] for s in range(n)]
            spaces.append(kernel(rows, algebra.labels))
        if not spaces:
            return full_space(algebra.labels)
        return intersect_all(spaces, algebra.labels)


def compose(algebra: WeilAlgebra, e1: Endo, e2: Endo) -> Endo:
    """e1 ∘ e2: x̄_i -> e1(e2(x̄_i))"""
    outer = e1.image_polys()
    images = tuple(algebra.normal_form(substitute(p, outer)) for p in e2.image_polys())
    if isinstance(e1, WellDefinedEndo) and isinstance(e2, WellDefinedEndo):
        return WellDefinedEndo(algebra, images)
    return Endo(algebra, images)


def power(algebra: WeilAlgebra, e: Endo, n: int) -> Endo:
    """
    n-fold composite of e, the identity for n = 0

    :raises ValueError: for negative n
    """
    if n < 0:
        raise ValueError("Only non-negative powers of an endomorphism are defined")
    result: Endo = identity(algebra)
    for _ in range(n):
        result = compose(algebra, e, result)
    return result


_MAP_ENTRY = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*->(.*)$")


def endo_from_map_text(algebra: WeilAlgebra, text: str) -> Endo:
    """
    Parse "x -> -x; y -> y + x^2"

    Variables not mentioned are sent to themselves.
    """
    context = algebra.context
    names = {name: i for i, name in enumerate(context.variables)}
    images: Dict[int, Element] = {}
    offset = 0
    for chunk in re.split(r"[;\n]", text):
        position = offset
        offset += len(chunk) + 1
        if not chunk.strip():
            continue
        match = _MAP_ENTRY.match(chunk)
        if match is None:
            raise PolyParseError(f"Expected 'var -> polynomial', got {chunk.strip()!r}", position)
        name, body = match.group(1), match.group(2)
        if name not in names:
            raise UnknownVariableError(f"Unknown variable {name!r}", position + match.start(1))
        if names[name] in images:
            raise PolyParseError(f"Variable {name!r} is mapped twice", position + match.start(1))
        try:
            poly = parse_poly(body, context)
        except PolyParseError as e:
            raise type(e)(str(e).rsplit(" at position", 1)[0], position + match.start(2) + e.position)
        images[names[name]] = algebra.normal_form(poly)
    return Endo(algebra, tuple(images.get(i, algebra.variable_class(i)) for i in range(algebra.k)))


def is_well_defined(algebra: WeilAlgebra, e: Endo) -> bool:
    return AutomorphismAnalyzer().is_well_defined(algebra, e)


def linear_part(algebra: WeilAlgebra, e: Endo) -> Matrix:
    return AutomorphismAnalyzer().linear_part(algebra, e)


def is_automorphism(algebra: WeilAlgebra, e: Endo) -> bool:
    return AutomorphismAnalyzer().is_automorphism(algebra, e)


def is_orientation_preserving(algebra: WeilAlgebra, e: Endo) -> bool:
    return AutomorphismAnalyzer().is_orientation_preserving(algebra, e)


def is_unipotent(algebra: WeilAlgebra, e: Endo) -> bool:
    return AutomorphismAnalyzer().is_unipotent(algebra, e)


def apply(algebra: WeilAlgebra, e: Endo, a: Element) -> Element:
    return AutomorphismAnalyzer().apply(algebra, e, a)


def sign_diagonal_automorphisms(algebra: WeilAlgebra) -> List[WellDefinedEndo]:
    return AutomorphismAnalyzer().sign_diagonal_automorphisms(algebra)


def fixed_subspace(algebra: WeilAlgebra, endos: Sequence[Endo]) -> Subspace:
    return AutomorphismAnalyzer().fixed_subspace(algebra, endos)
