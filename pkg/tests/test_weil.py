from fractions import Fraction

import pytest
from hypothesis import given, settings

from algebra.exceptions import ContextMismatchError, DimensionCapExceeded, NonLocalAlgebraError
from algebra.polynomials import RingContext, TruncPoly, parse_poly
from algebra.weil import build
from models import AlgebraSpec
from tests.strategies import algebra_poly_pairs, algebras

PROPERTY = settings(max_examples=100, derandomize=True, deadline=None)


def spec(text: str, name: str = "test") -> AlgebraSpec:
    return AlgebraSpec.from_text(text, name=name)


def basis_strings(algebra):
    return [algebra.context.format_monomial(b) for b in algebra.basis]


class TestExampleOne:
    def test_basis(self, example1):
        assert example1.dim == 9
        assert basis_strings(example1) == ["1", "x", "y", "x^2", "x*y", "y^2", "x^3", "x^2*y", "y^3"]
        assert example1.ideal.dim == 6

    def test_invariants(self, example1):
        assert example1.order() == 4
        assert example1.width() == 2
        assert example1.nilradical_power(4).dim == 1
        assert example1.nilradical_power(5).is_zero()

    @pytest.mark.parametrize("text, normal_form", [
        ("y^4", "-x^2*y"),
        ("x*y^2", "-x^3"),
        ("x^4 + x^3*y + x^2*y^2 + x*y^3", "0"),
        ("1 + x^2*y + y^4", "1"),
    ])
    def test_normal_forms(self, example1, text, normal_form):
        assert str(example1.normal_form(parse_poly(text, example1.context))) == normal_form

    def test_socle(self, example1):
        assert example1.render_subspace(example1.socle()) == ["x^3", "x^2*y"]
        assert example1.ma_subalgebra().dim == 3

    def test_products(self, example1):
        y = example1.variable_class(1)
        x = example1.variable_class(0)
        assert str(y * y * y * y) == "-x^2*y"
        assert str(x * y * y) == "-x^3"
        assert (x * x * y * y).is_zero()


class TestExampleTwo:
    def test_basis(self, example2):
        assert example2.dim == 18
        assert set(basis_strings(example2)) == {
            "1", "x", "y", "z", "x^2", "x*y", "y^2", "x*z", "y*z", "z^2",
            "x^2*y", "x*y^2", "x^2*z", "y^2*z", "x*z^2", "y*z^2", "z^3", "y^2*z^2",
        }

    def test_basis_is_graded(self, example2):
        degrees = [sum(b) for b in example2.basis]
        assert degrees == sorted(degrees)

    def test_relations_vanish(self, example2):
        for generator in example2.spec.generators:
            assert example2.normal_form(generator).is_zero()


class TestBuild:
    def test_constant_term_is_not_local(self):
        with pytest.raises(NonLocalAlgebraError):
            build(spec("vars: x y\norder: 3\ngen: 1 + x\n"))

    def test_free_truncated_algebra(self):
        algebra = build(spec("vars: x y\norder: 3\n"))
        assert algebra.dim == 10
        assert algebra.order() == 3
        assert algebra.width() == 2
        assert algebra.socle().dim == 4

    def test_degenerate_quotient(self):
        algebra = build(spec("vars: x\norder: 3\ngen: x\n"))
        assert algebra.dim == 1
        assert algebra.order() == 0
        assert algebra.width() == 0

    def test_width_below_k(self):
        algebra = build(spec("vars: x y\norder: 3\ngen: y - x^2\n"))
        assert algebra.width() == 1
        assert algebra.dim == 4

    def test_dimension_cap(self):
        with pytest.raises(DimensionCapExceeded) as info:
            build(spec("vars: x y\norder: 4\n"), dim_cap=10)
        assert info.value.dim == 15
        assert info.value.cap == 10

    def test_dimension_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv("WEILAB_DIM_CAP", "5")
        with pytest.raises(DimensionCapExceeded):
            build(spec("vars: x y\norder: 2\n"))

    def test_foreign_polynomial(self, example1):
        other = RingContext(("x", "y"), 3)
        with pytest.raises(ContextMismatchError):
            example1.normal_form(TruncPoly.variable(other, 0))

    def test_element_round_trip(self, example1):
        element = example1.element([Fraction(i, 3) for i in range(9)])
        assert example1.normal_form(element.to_poly()) == element

    def test_multiplication_matrix(self, example1):
        x = example1.variable_class(0)
        matrix = example1.multiplication_matrix(x)
        for t in range(example1.dim):
            column = tuple(row[t] for row in matrix)
            assert column == (x * example1.basis_element(t)).coords


class TestAlgebraProperties:
    @PROPERTY
    @given(algebras())
    def test_multiplication_is_associative(self, algebra):
        elements = [algebra.basis_element(i) for i in range(algebra.dim)]
        for a in elements:
            for b in elements:
                ab = a * b
                for c in elements:
                    assert ab * c == a * (b * c)

    @PROPERTY
    @given(algebras())
    def test_multiplication_commutes_and_has_unit(self, algebra):
        one = algebra.one()
        for i in range(algebra.dim):
            a = algebra.basis_element(i)
            assert one * a == a
            for j in range(i, algebra.dim):
                b = algebra.basis_element(j)
                assert a * b == b * a

    @PROPERTY
    @given(algebras())
    def test_generators_vanish_and_dimension_adds_up(self, algebra):
        for generator in algebra.spec.generators:
            assert algebra.normal_form(generator).is_zero()
        assert algebra.dim + algebra.ideal.dim == len(algebra.context.monomials)

    @PROPERTY
    @given(algebras())
    def test_socle_is_annihilated_by_nilradical(self, algebra):
        for row in algebra.socle().rows:
            s = algebra.element(row)
            for i in range(1, algebra.dim):
                assert (s * algebra.basis_element(i)).is_zero()

    @PROPERTY
    @given(algebra_poly_pairs())
    def test_normal_form_is_multiplicative(self, data):
        algebra, p, q = data
        assert algebra.normal_form(p * q) == algebra.multiply(algebra.normal_form(p), algebra.normal_form(q))
        assert algebra.normal_form(p + q) == algebra.normal_form(p) + algebra.normal_form(q)

    @PROPERTY
    @given(algebras())
    def test_nilradical_powers_descend_to_zero(self, algebra):
        order = algebra.order()
        for n in range(1, order + 2):
            assert algebra.nilradical_power(n + 1).issubset(algebra.nilradical_power(n))
        assert algebra.nilradical_power(order + 1).is_zero()
        assert not algebra.nilradical_power(order).is_zero()
        assert order <= algebra.context.r

    @PROPERTY
    @given(algebras())
    def test_width_is_bounded_by_the_variables(self, algebra):
        assert 1 <= algebra.width() <= algebra.k
        # generators inside m^2 keep every variable class independent mod n^2
        assert algebra.width() == algebra.k
