"""
Exact arithmetic in the truncated polynomial ring D^r_k = Q[x_1..x_k] / m^(r+1).

Coefficients are ``fractions.Fraction`` for everything parsed or computed by the
tool. The ring operations only use ``+``, ``*`` and truthiness on coefficients,
so the same code also runs with coefficients taken from a sympy polynomial ring
(the automorphism ansatz in ``analyzers.constraints``).
"""
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from algebra.exceptions import (
    ContextMismatchError,
    DegreeExceededError,
    PolyParseError,
    UnknownVariableError,
)

Monomial = Tuple[int, ...]
Rational = Fraction

_IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomials_of_degree(k: int, d: int) -> List[Monomial]:
    """All exponent tuples of total degree d in k variables (unsorted)"""
    result = []
    for combo in combinations_with_replacement(range(k), d):
        exps = [0] * k
        for i in combo:
            exps[i] += 1
        result.append(tuple(exps))
    return result


def monomial_partial(m: Monomial, i: int) -> Optional[Tuple[int, Monomial]]:
    """
    Formal derivative of a bare monomial with respect to x_i.

    Works for monomials of any degree (including r+1, which has no TruncPoly).

    :return: (factor, monomial) or None when the derivative is zero
    """
    if m[i] == 0:
        return None
    exps = list(m)
    exps[i] -= 1
    return m[i], tuple(exps)


@dataclass(frozen=True)
class RingContext:
    """The ambient ring D^r_k: variable names, truncation order and monomial order"""

    variables: Tuple[str, ...]
    r: int
    # Tie-break priority inside a degree, as variable indices; None = declared order
    ranking: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if len(self.variables) < 1:
            raise ValueError("A ring context needs at least one variable")
        if self.r < 1:
            raise ValueError(f"Truncation order must be >= 1, got {self.r}")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"Variable names must be distinct: {' '.join(self.variables)}")
        for name in self.variables:
            if not _IDENTIFIER.match(name):
                raise ValueError(f"Invalid variable name: {name!r}")
        if self.ranking is not None and sorted(self.ranking) != list(range(len(self.variables))):
            raise ValueError("Ranking must be a permutation of the variables")

    @property
    def k(self) -> int:
        return len(self.variables)

    @property
    def rank_order(self) -> Tuple[int, ...]:
        return self.ranking if self.ranking is not None else tuple(range(self.k))

    def sort_key(self, m: Monomial) -> Tuple[int, Tuple[int, ...]]:
        """Graded lexicographic key: larger key = larger monomial"""
        return monomial_degree(m), tuple(m[i] for i in self.rank_order)

    @cached_property
    def monomials(self) -> Tuple[Monomial, ...]:
        """Coordinate index of D^r_k: every monomial of degree <= r, largest first"""
        monos = []
        for d in range(self.r + 1):
            monos.extend(monomials_of_degree(self.k, d))
        return tuple(sorted(monos, key=self.sort_key, reverse=True))

    @cached_property
    def index(self) -> Dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.monomials)}

    @property
    def unit(self) -> Monomial:
        return (0,) * self.k

    def variable(self, i: int) -> Monomial:
        exps = [0] * self.k
        exps[i] = 1
        return tuple(exps)

    def display_key(self, m: Monomial) -> Tuple[int, Tuple[int, ...]]:
        """Rendering order: ascending degree, then lexicographic in the declared variable order"""
        return monomial_degree(m), tuple(-e for e in m)

    def format_monomial(self, m: Monomial) -> str:
        factors = []
        for name, e in zip(self.variables, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        return "*".join(factors) if factors else "1"

    def monomial_tag(self, m: Monomial) -> str:
        """Identifier-safe monomial name, e.g. x^2*y -> x2y"""
        parts = []
        for name, e in zip(self.variables, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}{e}")
        return "".join(parts) if parts else "1"

    def to_dict(self) -> Dict[str, Any]:
        result = {'variables': list(self.variables), 'order': self.r}
        if self.ranking is not None:
            result['rank'] = [self.variables[i] for i in self.ranking]
        return result

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RingContext':
        variables = tuple(data['variables'])
        ranking = None
        if data.get('rank'):
            ranking = tuple(variables.index(name) for name in data['rank'])
        return cls(variables=variables, r=int(data['order']), ranking=ranking)


@dataclass(frozen=True)
class TruncPoly:
    """An element of D^r_k as a sparse map monomial -> nonzero coefficient"""

    context: RingContext
    terms: Mapping[Monomial, Any] = field(default_factory=dict)

    @classmethod
    def from_terms(cls, context: RingContext, terms: Iterable[Tuple[Monomial, Any]],
                   truncate: bool = False) -> 'TruncPoly':
        """
        Build a polynomial, summing repeated monomials and dropping zeros

        :param truncate: drop terms of degree > r instead of rejecting them
        """
        acc: Dict[Monomial, Any] = {}
        for m, c in terms:
            if monomial_degree(m) > context.r:
                if truncate:
                    continue
                raise ValueError(f"Monomial {context.format_monomial(m)} exceeds order {context.r}")
            if m in acc:
                acc[m] = acc[m] + c
            else:
                acc[m] = c
        return cls(context, {m: c for m, c in acc.items() if c})

    @classmethod
    def zero(cls, context: RingContext) -> 'TruncPoly':
        return cls(context, {})

    @classmethod
    def constant(cls, context: RingContext, c: Any = 1) -> 'TruncPoly':
        if isinstance(c, int):
            c = Fraction(c)
        return cls(context, {context.unit: c} if c else {})

    @classmethod
    def monomial(cls, context: RingContext, m: Monomial, c: Any = 1) -> 'TruncPoly':
        if isinstance(c, int):
            c = Fraction(c)
        return cls.from_terms(context, [(m, c)])

    @classmethod
    def variable(cls, context: RingContext, i: int) -> 'TruncPoly':
        return cls.monomial(context, context.variable(i))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def constant_term(self) -> Any:
        return self.terms.get(self.context.unit, Fraction(0))

    def degree(self) -> int:
        return max((monomial_degree(m) for m in self.terms), default=-1)

    def low_degree(self) -> int:
        """Smallest degree present (order of vanishing), -1 for zero"""
        return min((monomial_degree(m) for m in self.terms), default=-1)

    def map_coefficients(self, fn: Callable[[Any], Any]) -> 'TruncPoly':
        return TruncPoly.from_terms(self.context, ((m, fn(c)) for m, c in self.terms.items()))

    def scale(self, c: Any) -> 'TruncPoly':
        if not c:
            return TruncPoly.zero(self.context)
        return TruncPoly.from_terms(self.context, ((m, c * v) for m, v in self.terms.items()))

    def __add__(self, other: 'TruncPoly') -> 'TruncPoly':
        return add(self, other)

    def __sub__(self, other: 'TruncPoly') -> 'TruncPoly':
        return add(self, -other)

    def __neg__(self) -> 'TruncPoly':
        return TruncPoly(self.context, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: 'TruncPoly') -> 'TruncPoly':
        return mul_trunc(self, other)

    def __hash__(self) -> int:
        return hash((self.context, frozenset(self.terms.items())))

    def __str__(self) -> str:
        return render_poly(self)


def _check_context(p: TruncPoly, q: TruncPoly) -> None:
    if p.context != q.context:
        raise ContextMismatchError("Polynomials belong to different ring contexts")


def add(p: TruncPoly, q: TruncPoly) -> TruncPoly:
    """Coefficient-wise sum"""
    _check_context(p, q)
    return TruncPoly.from_terms(p.context, list(p.terms.items()) + list(q.terms.items()))


def mul_trunc(p: TruncPoly, q: TruncPoly) -> TruncPoly:
    """Convolution product with every term of degree > r discarded"""
    _check_context(p, q)
    r = p.context.r
    acc: Dict[Monomial, Any] = {}
    for m1, c1 in p.terms.items():
        d1 = monomial_degree(m1)
        for m2, c2 in q.terms.items():
            if d1 + monomial_degree(m2) > r:
                continue
            m = monomial_mul(m1, m2)
            if m in acc:
                acc[m] = acc[m] + c1 * c2
            else:
                acc[m] = c1 * c2
    return TruncPoly(p.context, {m: c for m, c in acc.items() if c})


def substitute(p: TruncPoly, images: Sequence[TruncPoly]) -> TruncPoly:
    """
    Evaluate p at (images[0], ..., images[k-1]) in the truncated ring.

    The constant term of p passes through unchanged.
    """
    context = p.context
    if len(images) != context.k:
        raise ContextMismatchError(f"Expected {context.k} images, got {len(images)}")
    for image in images:
        _check_context(p, image)

    powers: Dict[Tuple[int, int], TruncPoly] = {}

    def power(i: int, e: int) -> TruncPoly:
        if e == 1:
            return images[i]
        if (i, e) not in powers:
            powers[(i, e)] = mul_trunc(power(i, e - 1), images[i])
        return powers[(i, e)]

    acc: List[Tuple[Monomial, Any]] = []
    for m, c in p.terms.items():
        product: Optional[TruncPoly] = None
        for i, e in enumerate(m):
            if e == 0:
                continue
            factor = power(i, e)
            product = factor if product is None else mul_trunc(product, factor)
        if product is None:
            acc.append((context.unit, c))
        else:
            acc.extend((mm, c * cc) for mm, cc in product.terms.items())
    return TruncPoly.from_terms(context, acc)


def partial_derivative(p: TruncPoly, i: int) -> TruncPoly:
    """Formal partial derivative with respect to the variable at 0-based index i"""
    if not 0 <= i < p.context.k:
        raise IndexError(f"Variable index {i} out of range for k={p.context.k}")
    acc = []
    for m, c in p.terms.items():
        d = monomial_partial(m, i)
        if d is not None:
            factor, mm = d
            acc.append((mm, c * factor))
    return TruncPoly.from_terms(p.context, acc)


def format_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def render_poly(p: TruncPoly) -> str:
    """Render in the input grammar; parse_poly(render_poly(p)) == p"""
    if p.is_zero():
        return "0"
    context = p.context
    parts = []
    for m in sorted(p.terms, key=context.display_key):
        c = Fraction(p.terms[m])
        negative = c < 0
        magnitude = -c if negative else c
        if m == context.unit:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = context.format_monomial(m)
        else:
            body = f"{format_rational(magnitude)}*{context.format_monomial(m)}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolyParseError(f"Unexpected character {text[offset]!r}", offset)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append((kind, match.group(kind), start))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _PolyParser:
    """Recursive-descent parser for the polynomial grammar"""

    def __init__(self, text: str, context: RingContext):
        self.context = context
        self.tokens = _tokenize(text)
        self.pos = 0
        self.names = {name: i for i, name in enumerate(context.variables)}

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> Tuple[str, str, int]:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind: str, value: Optional[str] = None) -> Tuple[str, str, int]:
        token = self.take()
        if token[0] != kind or (value is not None and token[1] != value):
            wanted = value if value is not None else kind
            found = token[1] if token[0] != "end" else "end of input"
            raise PolyParseError(f"Expected {wanted}, found {found!r}", token[2])
        return token

    def parse(self) -> TruncPoly:
        acc: List[Tuple[Monomial, Fraction]] = []
        sign = 1
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            self.take()
            sign = -1 if value == "-" else 1
        acc.append(self.term(sign))
        while True:
            kind, value, position = self.peek()
            if kind == "end":
                break
            if kind == "op" and value in "+-":
                self.take()
                acc.append(self.term(-1 if value == "-" else 1))
            else:
                raise PolyParseError(f"Unexpected token {value!r}", position)
        return TruncPoly.from_terms(self.context, acc)

    def term(self, sign: int) -> Tuple[Monomial, Fraction]:
        kind, _, start = self.peek()
        coeff = Fraction(sign)
        exps = [0] * self.context.k
        if kind == "int":
            coeff *= self.coefficient()
            if self.peek()[:2] != ("op", "*"):
                return self.context.unit, coeff
            self.take()
            self.factor(exps)
        elif kind == "ident":
            self.factor(exps)
        else:
            token = self.peek()
            found = token[1] if token[0] != "end" else "end of input"
            raise PolyParseError(f"Expected a term, found {found!r}", start)
        while self.peek()[:2] == ("op", "*"):
            self.take()
            self.factor(exps)
        m = tuple(exps)
        if monomial_degree(m) > self.context.r:
            raise DegreeExceededError(
                f"Term {self.context.format_monomial(m)} has degree {monomial_degree(m)} "
                f"above the truncation order {self.context.r}", start)
        return m, coeff

    def coefficient(self) -> Fraction:
        _, numerator, _ = self.expect("int")
        if self.peek()[:2] == ("op", "/"):
            self.take()
            _, denominator, position = self.expect("int")
            if int(denominator) == 0:
                raise PolyParseError("Zero denominator", position)
            return Fraction(int(numerator), int(denominator))
        return Fraction(int(numerator))

    def factor(self, exps: List[int]) -> None:
        _, name, position = self.expect("ident")
        if name not in self.names:
            raise UnknownVariableError(f"Unknown variable {name!r}", position)
        e = 1
        if self.peek()[:2] == ("op", "^"):
            self.take()
            _, power, _ = self.expect("int")
            e = int(power)
        exps[self.names[name]] += e


def parse_poly(text: str, context: RingContext) -> TruncPoly:
    """
    Parse a polynomial in the declared variables

    :param text: e.g. "1/2*x - 3*y^2"
    :param context: ring context declaring the variable names and the order r
    :return: the exact polynomial
    """
    return _PolyParser(text, context).parse()
