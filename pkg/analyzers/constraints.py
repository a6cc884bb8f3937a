"""
Automorphism constraint systems.

A fully general endomorphism ansatz sends x̄_i to Σ a_<i>_<b> * b over the
nilradical basis monomials b, with unknown scalars a_<i>_<b>. Substituting
the ansatz into the relations and reducing modulo the ideal gives polynomial
equations on the unknowns. The system is generated, evaluated and exported;
it is never solved symbolically.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ
from sympy.polys.rings import PolyElement, PolyRing, ring

from algebra.exceptions import DegenerateAlgebraError, MissingUnknownError
from algebra.linalg import Subspace, determinant, from_qq, full_space, intersect, kernel, to_qq
from algebra.polynomials import TruncPoly, format_rational, substitute
from algebra.weil import WeilAlgebra
from analyzers.automorphisms import AutomorphismAnalyzer, Endo, linear_indices
from utils import get_config_loader, setup_logger

UnknownPoly = PolyElement
Sampler = Callable[[np.random.Generator], Dict[str, Fraction]]


def unknown_name(algebra: WeilAlgebra, i: int, b) -> str:
    """a_<variable number>_<monomial tag>, e.g. a_1_x2y"""
    return f"a_{i + 1}_{algebra.context.monomial_tag(b)}"


@dataclass(eq=False)
class SymbolicEndo:
    """Endomorphism ansatz with unknown coefficients in a sympy polynomial ring"""

    algebra: WeilAlgebra
    ring: PolyRing
    unknowns: Tuple[str, ...]
    images: Tuple[TruncPoly, ...]
    linear_unknowns: Tuple[str, ...] = ()

    def describe(self) -> List[str]:
        return [f"{name} -> {render_unknown_image(image)}"
                for name, image in zip(self.algebra.context.variables, self.images)]


@dataclass(eq=False)
class ConstraintSystem:
    """Equations on the ansatz unknowns; every equation must vanish"""

    algebra: WeilAlgebra
    ring: PolyRing
    unknowns: Tuple[str, ...]
    linear_unknowns: Tuple[str, ...]
    equations: List[UnknownPoly] = field(default_factory=list)
    # Relation and basis coordinate each equation comes from
    sources: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'algebra': self.algebra.name,
            'unknowns': list(self.unknowns),
            'linear_unknowns': list(self.linear_unknowns),
            'equations': [
                {'source': source, 'equation': f"0 = {render_unknown_poly(eq)}"}
                for source, eq in zip(self.sources, self.equations)
            ]
        }


@dataclass(eq=False)
class FixedPointSystem:
    """Coordinates of φ(Σ k_t b_t) - Σ k_t b_t for the ansatz φ"""

    ring: PolyRing
    unknowns: Tuple[str, ...]
    parameters: Tuple[str, ...]
    equations: List[UnknownPoly] = field(default_factory=list)


def _ansatz_images(algebra: WeilAlgebra, R: PolyRing) -> Tuple[TruncPoly, ...]:
    generators = {str(symbol): g for symbol, g in zip(R.symbols, R.gens)}
    images = []
    for i in range(algebra.k):
        terms = [(b, generators[unknown_name(algebra, i, b)]) for b in algebra.basis[1:]]
        images.append(TruncPoly.from_terms(algebra.context, terms))
    return tuple(images)


def _names(algebra: WeilAlgebra) -> List[str]:
    return [unknown_name(algebra, i, b) for i in range(algebra.k) for b in algebra.basis[1:]]


def _lift(R: PolyRing) -> Callable[[Fraction], UnknownPoly]:
    return lambda c: R(to_qq(Fraction(c)))


def _values(unknowns: Sequence[str], assignment: Mapping[str, Any]) -> List[Fraction]:
    missing = [u for u in unknowns if u not in assignment]
    if missing:
        raise MissingUnknownError(f"Assignment is missing {len(missing)} unknowns: {', '.join(missing)}")
    return [Fraction(assignment[u]) for u in unknowns]


def evaluate(poly: UnknownPoly, values: Sequence[Fraction]) -> Fraction:
    """Value of an UnknownPoly at a point, generators in ring order"""
    total = Fraction(0)
    for exps, coeff in poly.terms():
        term = from_qq(coeff)
        for value, e in zip(values, exps):
            if e:
                term *= value ** e
        total += term
    return total


def assignment_to_endo(algebra: WeilAlgebra, cs: ConstraintSystem, assignment: Mapping[str, Any]) -> Endo:
    """
    Concrete endomorphism for numeric values of the unknowns

    :raises MissingUnknownError: when an unknown has no value
    """
    values = dict(zip(cs.unknowns, _values(cs.unknowns, assignment)))
    images = []
    for i in range(algebra.k):
        coords = [Fraction(0)] + [values[unknown_name(algebra, i, b)] for b in algebra.basis[1:]]
        images.append(algebra.element(coords))
    return Endo(algebra, tuple(images))


def _instantiate(system: FixedPointSystem, values: Sequence[Fraction]) -> List[List[Fraction]]:
    """Linear rows in the k_t after fixing the unknowns"""
    n_unknowns = len(system.unknowns)
    rows = []
    for equation in system.equations:
        row = [Fraction(0)] * len(system.parameters)
        for exps, coeff in equation.terms():
            term = from_qq(coeff)
            for value, e in zip(values, exps[:n_unknowns]):
                if e:
                    term *= value ** e
            parameter_exps = exps[n_unknowns:]
            row[parameter_exps.index(1)] += term
        if any(row):
            rows.append(row)
    return rows


def random_rational(rng: np.random.Generator, magnitude: int) -> Fraction:
    """Rational with |value| <= magnitude and a small denominator"""
    denominator = int(rng.integers(1, 5))
    numerator = int(rng.integers(-magnitude * denominator, magnitude * denominator + 1))
    return Fraction(numerator, denominator)


class ConstraintGenerator:
    """Builds, evaluates and samples the constraint system of the general endomorphism ansatz"""

    def __init__(self, stable_rounds: Optional[int] = None, max_rounds: Optional[int] = None,
                 sample_magnitude: Optional[int] = None, automorphisms: Optional[AutomorphismAnalyzer] = None):
        """
        Initialize the generator

        :param stable_rounds: Unchanged rounds that end family sampling; config default when None
        :param max_rounds: Upper limit on sampled family points; config default when None
        :param sample_magnitude: Bound on sampled rational values; config default when None
        :param automorphisms: analyzer used for linear parts
        """
        self.logger = setup_logger("Constraint Generator")
        self.config_loader = get_config_loader()
        constraints_config = self.config_loader.get_constraints_config()
        self.stable_rounds = int(stable_rounds if stable_rounds is not None
                                 else constraints_config.get('stable_rounds', 3))
        self.max_rounds = int(max_rounds if max_rounds is not None
                              else constraints_config.get('max_rounds', 200))
        self.sample_magnitude = int(sample_magnitude if sample_magnitude is not None
                                    else constraints_config.get('sample_magnitude', 10))
        self.automorphisms = automorphisms or AutomorphismAnalyzer()

    def general_ansatz(self, algebra: WeilAlgebra) -> SymbolicEndo:
        """
        x̄_i -> Σ_b a_<i>_<b> * b over the nilradical basis

        :param algebra: the Weil algebra
        :return: SymbolicEndo with k * (dim - 1) unknowns
        :raises DegenerateAlgebraError: when the nilradical is zero
        """
        if algebra.dim < 2:
            raise DegenerateAlgebraError(f"{algebra.name} has a zero nilradical; there is nothing to map")
        names = _names(algebra)
        R = ring(names, QQ)[0]
        linear = set(linear_indices(algebra))
        linear_unknowns = tuple(unknown_name(algebra, i, algebra.basis[t])
                                for i in range(algebra.k) for t in range(1, algebra.dim) if t in linear)
        return SymbolicEndo(algebra, R, tuple(names), _ansatz_images(algebra, R), linear_unknowns)

    def generate_constraints(self, algebra: WeilAlgebra) -> ConstraintSystem:
        """
        Substitute the ansatz into every relation and keep the surviving coordinates

        The monomials of degree r+1 need no equations: every ansatz image lies in
        the nilradical, so their images vanish in the truncated ring.

        :param algebra: the Weil algebra
        :return: ConstraintSystem
        """
        ansatz = self.general_ansatz(algebra)
        R = ansatz.ring
        lift = _lift(R)
        equations: List[UnknownPoly] = []
        sources: List[str] = []
        for j, generator in enumerate(algebra.spec.generators, 1):
            image = substitute(generator.map_coefficients(lift), ansatz.images)
            coords = algebra.reduce_coefficients(image, lift, R.zero)
            for b, value in zip(algebra.basis, coords):
                if value:
                    equations.append(value)
                    sources.append(f"gen {j} @ {algebra.context.format_monomial(b)}")
        self.logger.info(f"{algebra.name}: {len(equations)} equations in {len(ansatz.unknowns)} unknowns")
        return ConstraintSystem(algebra, R, ansatz.unknowns, ansatz.linear_unknowns, equations, sources)

    def verify_assignment(self, cs: ConstraintSystem, assignment: Mapping[str, Any]) -> bool:
        """
        Every equation vanishes and the linear part is non-singular

        :param cs: the constraint system
        :param assignment: value for every unknown
        :return: True for an automorphism
        """
        values = _values(cs.unknowns, assignment)
        for equation, source in zip(cs.equations, cs.sources):
            if evaluate(equation, values) != 0:
                self.logger.debug(f"Equation from {source} does not vanish")
                return False
        endo = assignment_to_endo(cs.algebra, cs, assignment)
        return determinant(self.automorphisms.linear_part(cs.algebra, endo)) != 0

    def fixed_point_equations(self, algebra: WeilAlgebra, cs: ConstraintSystem) -> FixedPointSystem:
        """
        Coordinates of φ(Σ k_t b_t) - Σ k_t b_t, bilinear in the unknowns and the k_t

        :param algebra: the Weil algebra
        :param cs: constraint system whose unknowns parametrize φ
        :return: FixedPointSystem over the unknowns and k_1..k_dim
        """
        parameters = tuple(f"k_{t + 1}" for t in range(algebra.dim))
        R, *generators = ring(list(cs.unknowns) + list(parameters), QQ)
        ks = generators[len(cs.unknowns):]
        lift = _lift(R)
        images = _ansatz_images(algebra, R)

        coordinates = [R.zero] * algebra.dim
        for t, b in enumerate(algebra.basis):
            image = substitute(TruncPoly.monomial(algebra.context, b, R.one), images)
            reduced = algebra.reduce_coefficients(image, lift, R.zero)
            for s in range(algebra.dim):
                if reduced[s]:
                    coordinates[s] = coordinates[s] + ks[t] * reduced[s]
        equations = [coordinates[s] - ks[s] for s in range(algebra.dim)]
        return FixedPointSystem(R, cs.unknowns, parameters, equations)

    def family_fixed_space(self, algebra: WeilAlgebra, cs: ConstraintSystem, sampler: Sampler,
                           seed: Optional[int] = None) -> Subspace:
        """
        Elements fixed by every automorphism of a sampled family

        Family points are drawn until the intersected fixed space stays unchanged
        for `stable_rounds` consecutive rounds.

        :param sampler: draws one assignment of the unknowns from a numpy Generator
        :param seed: seed of the numpy Generator
        :return: Subspace of A's coordinates
        """
        rng = np.random.default_rng(seed)
        system = self.fixed_point_equations(algebra, cs)
        space = full_space(algebra.labels)
        stable = 0
        for round_number in range(1, self.max_rounds + 1):
            assignment = sampler(rng)
            if not self.verify_assignment(cs, assignment):
                self.logger.warning(f"Round {round_number}: sampled point is not an automorphism, skipped")
                continue
            values = _values(cs.unknowns, assignment)
            updated = intersect(space, kernel(_instantiate(system, values), algebra.labels))
            stable = stable + 1 if updated == space else 0
            space = updated
            if stable >= self.stable_rounds:
                self.logger.debug(f"Fixed space stable at dim {space.dim} after {round_number} rounds")
                break
        else:
            self.logger.warning(f"Fixed space did not stabilize within {self.max_rounds} rounds")
        return space


def render_unknown_poly(poly: UnknownPoly) -> str:
    """Render in the polynomial grammar, terms in the ring's order"""
    if not poly:
        return "0"
    names = [str(g) for g in poly.ring.symbols]
    parts = []
    for exps, coeff in poly.terms():
        c = from_qq(coeff)
        negative = c < 0
        magnitude = -c if negative else c
        factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(names, exps) if e]
        if not factors:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = f"{format_rational(magnitude)}*{'*'.join(factors)}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)


def render_unknown_image(image: TruncPoly) -> str:
    context = image.context
    parts = []
    for m in sorted(image.terms, key=context.display_key):
        parts.append(f"({render_unknown_poly(image.terms[m])})*{context.format_monomial(m)}")
    return " + ".join(parts) if parts else "0"


def export_constraints(cs: ConstraintSystem) -> str:
    """One `0 = <polynomial>` line per equation"""
    return "".join(f"0 = {render_unknown_poly(eq)}\n" for eq in cs.equations)


def general_ansatz(algebra: WeilAlgebra) -> SymbolicEndo:
    return ConstraintGenerator().general_ansatz(algebra)


def generate_constraints(algebra: WeilAlgebra) -> ConstraintSystem:
    return ConstraintGenerator().generate_constraints(algebra)


def verify_assignment(cs: ConstraintSystem, assignment: Mapping[str, Any]) -> bool:
    return ConstraintGenerator().verify_assignment(cs, assignment)


def fixed_point_equations(algebra: WeilAlgebra, cs: ConstraintSystem) -> FixedPointSystem:
    return ConstraintGenerator().fixed_point_equations(algebra, cs)
