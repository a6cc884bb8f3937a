"""
Weil algebras A = D^r_k / I built from a presentation.

The ideal is closed by spanning every monomial multiple of the generators
inside the finite-dimensional truncated ring, so all questions about A become
linear algebra on the monomial coordinates.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from algebra.exceptions import ContextMismatchError, DimensionCapExceeded, NonLocalAlgebraError
from algebra.linalg import (
    Subspace,
    Vector,
    coordinate_subspace,
    kernel,
    rref,
    standard_complement,
    unit_vector,
    zero_subspace,
)
from algebra.polynomials import (
    Monomial,
    TruncPoly,
    monomial_degree,
    monomial_mul,
    render_poly,
)
from models.algebra_spec import AlgebraSpec
from utils import get_config_loader, setup_logger

logger = setup_logger("Weil Algebra")

Sparse = Tuple[Tuple[int, Fraction], ...]


def poly_to_vector(p: TruncPoly) -> Vector:
    """Coordinates of p in the monomial index of its context"""
    index = p.context.index
    v = [Fraction(0)] * len(index)
    for m, c in p.terms.items():
        v[index[m]] = c
    return tuple(v)


def ideal_closure(spec: AlgebraSpec) -> Subspace:
    """
    Span of all M * P_j truncated at degree r, as a canonical subspace of D^r_k

    :param spec: the presentation
    :return: the ideal generated by the P_j inside D^r_k
    """
    context = spec.context
    rows = []
    for generator in spec.generators:
        low = generator.low_degree()
        for m in context.monomials:
            if monomial_degree(m) + low > context.r:
                continue
            shifted = TruncPoly.from_terms(
                context, ((monomial_mul(m, mm), c) for mm, c in generator.terms.items()), truncate=True)
            if not shifted.is_zero():
                rows.append(poly_to_vector(shifted))
    return rref(rows, context.monomials)


@dataclass(frozen=True, eq=False)
class Element:
    """A class in A, as coordinates over the standard monomial basis"""

    algebra: 'WeilAlgebra'
    coords: Tuple[Fraction, ...]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Element) and other.algebra is self.algebra
                and other.coords == self.coords)

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.coords))

    def _check(self, other: 'Element') -> None:
        if other.algebra is not self.algebra:
            raise ContextMismatchError("Elements belong to different algebras")

    def __add__(self, other: 'Element') -> 'Element':
        self._check(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: 'Element') -> 'Element':
        self._check(other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> 'Element':
        return Element(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other: 'Element') -> 'Element':
        return self.algebra.multiply(self, other)

    def scale(self, c: Fraction) -> 'Element':
        return Element(self.algebra, tuple(c * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def unit_coordinate(self) -> Fraction:
        return self.coords[0]

    def to_poly(self) -> TruncPoly:
        """Standard-monomial representative"""
        return TruncPoly.from_terms(
            self.algebra.context, ((b, c) for b, c in zip(self.algebra.basis, self.coords) if c))

    def __str__(self) -> str:
        return render_poly(self.to_poly())


class WeilAlgebra:
    """
    The quotient D^r_k / I with its standard monomial basis.

    Normal forms of every monomial of D^r_k and the products of basis pairs are
    precomputed at build time; the object is never mutated afterwards.
    """

    def __init__(self, spec: AlgebraSpec, ideal: Subspace, basis: Sequence[Monomial],
                 monomial_forms: Dict[Monomial, Sparse]):
        self.spec = spec
        self.ideal = ideal
        self.basis: Tuple[Monomial, ...] = tuple(basis)
        self.basis_index: Dict[Monomial, int] = {b: i for i, b in enumerate(self.basis)}
        self._monomial_forms = monomial_forms
        self._products: Dict[Tuple[int, int], Sparse] = {}
        r = self.context.r
        for i, bi in enumerate(self.basis):
            for j in range(i, len(self.basis)):
                m = monomial_mul(bi, self.basis[j])
                if monomial_degree(m) <= r:
                    form = monomial_forms[m]
                    if form:
                        self._products[(i, j)] = form

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def context(self):
        return self.spec.context

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def k(self) -> int:
        return self.context.k

    @property
    def labels(self) -> Tuple[Monomial, ...]:
        """Coordinate labels of A"""
        return self.basis

    # Elements

    def element(self, coords: Sequence[Fraction]) -> Element:
        if len(coords) != self.dim:
            raise ContextMismatchError(f"Expected {self.dim} coordinates, got {len(coords)}")
        return Element(self, tuple(Fraction(c) for c in coords))

    def zero(self) -> Element:
        return Element(self, (Fraction(0),) * self.dim)

    def one(self) -> Element:
        return Element(self, unit_vector(self.dim, 0))

    def basis_element(self, i: int) -> Element:
        return Element(self, unit_vector(self.dim, i))

    def class_of_monomial(self, m: Monomial) -> Element:
        if monomial_degree(m) > self.context.r:
            return self.zero()
        return self._dense(self._monomial_forms[m])

    def variable_class(self, i: int) -> Element:
        return self.class_of_monomial(self.context.variable(i))

    def _dense(self, sparse: Sparse) -> Element:
        coords = [Fraction(0)] * self.dim
        for idx, c in sparse:
            coords[idx] = c
        return Element(self, tuple(coords))

    # Operations

    def normal_form(self, p: TruncPoly) -> Element:
        """Coordinates of the class of p in the standard basis"""
        if p.context != self.context:
            raise ContextMismatchError("Polynomial does not belong to this algebra's ring")
        coords = [Fraction(0)] * self.dim
        for m, c in p.terms.items():
            for idx, v in self._monomial_forms[m]:
                coords[idx] += c * v
        return Element(self, tuple(coords))

    def reduce_coefficients(self, p: TruncPoly, lift: Callable[[Fraction], Any], zero: Any) -> List[Any]:
        """
        Normal form for polynomials whose coefficients live in another ring

        Reduction is linear, so coefficient ci * lift(v) replaces c * v.
        """
        if p.context != self.context:
            raise ContextMismatchError("Polynomial does not belong to this algebra's ring")
        coords = [zero] * self.dim
        for m, c in p.terms.items():
            for idx, v in self._monomial_forms[m]:
                coords[idx] = coords[idx] + c * lift(v)
        return coords

    def basis_product(self, i: int, j: int) -> Sparse:
        """Structure constants of b_i * b_j"""
        if i > j:
            i, j = j, i
        return self._products.get((i, j), ())

    def multiply(self, a: Element, b: Element) -> Element:
        if a.algebra is not self or b.algebra is not self:
            raise ContextMismatchError("Elements belong to a different algebra")
        coords = [Fraction(0)] * self.dim
        for i, ai in enumerate(a.coords):
            if not ai:
                continue
            for j, bj in enumerate(b.coords):
                if not bj:
                    continue
                for idx, c in self.basis_product(i, j):
                    coords[idx] += ai * bj * c
        return Element(self, tuple(coords))

    def multiplication_matrix(self, a: Element) -> List[List[Fraction]]:
        """Rows of the map x -> a * x in the standard basis"""
        n = self.dim
        matrix = [[Fraction(0)] * n for _ in range(n)]
        for t in range(n):
            for u, au in enumerate(a.coords):
                if not au:
                    continue
                for idx, c in self.basis_product(u, t):
                    matrix[idx][t] += au * c
        return matrix

    def subspace(self, vectors: Sequence[Sequence[Fraction]]) -> Subspace:
        return rref(vectors, self.labels)

    def span_of(self, elements: Sequence[Element]) -> Subspace:
        return rref([e.coords for e in elements], self.labels)

    @cached_property
    def _nilradical_powers(self) -> Tuple[Subspace, ...]:
        powers = [coordinate_subspace(self.labels, range(1, self.dim))]
        variable_maps = [self.multiplication_matrix(self.variable_class(i)) for i in range(self.k)]
        while not powers[-1].is_zero():
            products = []
            for row in powers[-1].rows:
                for matrix in variable_maps:
                    products.append(tuple(sum((a * b for a, b in zip(mrow, row)), Fraction(0))
                                          for mrow in matrix))
            powers.append(self.subspace(products))
        return tuple(powers)

    def nilradical_power(self, n: int) -> Subspace:
        """n_A^n as a subspace of A's coordinates; n = 1 is the nilradical"""
        if n < 1:
            raise ValueError("Nilradical powers start at n = 1")
        powers = self._nilradical_powers
        if n <= len(powers):
            return powers[n - 1]
        return zero_subspace(self.labels)

    def order(self) -> int:
        """Least r' with n_A^(r'+1) = 0"""
        return sum(1 for p in self._nilradical_powers if not p.is_zero())

    def width(self) -> int:
        """dim n_A / n_A^2"""
        return self.nilradical_power(1).dim - self.nilradical_power(2).dim

    @cached_property
    def _socle(self) -> Subspace:
        rows = []
        for i in range(self.k):
            rows.extend(self.multiplication_matrix(self.variable_class(i)))
        return kernel(rows, self.labels)

    def socle(self) -> Subspace:
        """Joint kernel of multiplication by the variable classes"""
        return self._socle

    def ma_subalgebra(self) -> Subspace:
        """R * 1 + soc(A)"""
        return rref([unit_vector(self.dim, 0)] + list(self._socle.rows), self.labels)

    def constants(self) -> Subspace:
        return coordinate_subspace(self.labels, [0])

    def render_subspace(self, s: Subspace) -> List[str]:
        return [str(self.element(row)) for row in s.rows]

    def __repr__(self) -> str:
        return f"WeilAlgebra({self.name!r}, dim={self.dim})"


def build(spec: AlgebraSpec, dim_cap: Optional[int] = None) -> WeilAlgebra:
    """
    Build the quotient D^r_k / I

    :param spec: the presentation
    :param dim_cap: maximum quotient dimension (configuration default when None)
    :return: WeilAlgebra with precomputed normal forms and structure constants
    """
    context = spec.context
    for generator in spec.generators:
        if generator.constant_term:
            raise NonLocalAlgebraError(
                f"Generator {render_poly(generator)} has a nonzero constant term; the quotient is not local")

    ideal = ideal_closure(spec)
    if context.index[context.unit] in ideal.pivots:
        raise NonLocalAlgebraError("The ideal contains 1")

    dim = len(context.monomials) - ideal.dim
    cap = dim_cap if dim_cap is not None else get_config_loader().get_dim_cap()
    if dim > cap:
        raise DimensionCapExceeded(dim, cap)

    standard = standard_complement(ideal)
    basis = sorted(standard, key=context.display_key)
    position = {b: i for i, b in enumerate(basis)}

    # Normal form of each monomial: itself when standard, minus the rest of its
    # RREF row when it is a pivot (RREF rows vanish on every other pivot).
    forms: Dict[Monomial, Sparse] = {b: ((position[b], Fraction(1)),) for b in basis}
    for row, p in zip(ideal.rows, ideal.pivots):
        pivot_monomial = context.monomials[p]
        forms[pivot_monomial] = tuple(
            (position[context.monomials[j]], -c) for j, c in enumerate(row) if c and j != p)

    algebra = WeilAlgebra(spec, ideal, basis, forms)
    logger.info(f"Built {spec.name}: k={context.k} r={context.r} dim={algebra.dim} ideal_dim={ideal.dim}")
    width = algebra.width()
    if width < context.k:
        logger.warning(f"{spec.name}: effective width {width} is smaller than k={context.k}; "
                       f"the ideal is not contained in m^2")
    return algebra
