"""
Exact rational linear algebra on labelled coordinate spaces.

A coordinate space is a tuple of labels (monomials of D^r_k, standard basis
monomials of a Weil algebra, or variable indices for weight vectors). Subspaces
are kept in canonical reduced row-echelon form, so two subspaces are equal
exactly when their bases are equal. Row reduction is delegated to sympy's
``DomainMatrix`` over ``QQ``.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, List, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from algebra.exceptions import ContextMismatchError

Vector = Tuple[Fraction, ...]
Labels = Tuple[Hashable, ...]


def to_qq(c: Fraction):
    return QQ(c.numerator, c.denominator)


def from_qq(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _row_reduce(rows: Sequence[Sequence[Fraction]], ncols: int) -> Tuple[List[Vector], Tuple[int, ...]]:
    """Nonzero RREF rows and their pivot columns"""
    rows = [row for row in rows if any(row)]
    if not rows or ncols == 0:
        return [], ()
    matrix = DomainMatrix([[to_qq(Fraction(c)) for c in row] for row in rows], (len(rows), ncols), QQ)
    reduced, pivots = matrix.rref()
    data = reduced.to_list()
    basis = [tuple(from_qq(c) for c in data[i]) for i in range(len(pivots))]
    return basis, tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^labels with a canonical RREF basis"""

    labels: Labels
    rows: Tuple[Vector, ...]
    pivots: Tuple[int, ...]

    @property
    def ambient(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        """Residual of v after elimination against the basis"""
        if len(v) != self.ambient:
            raise ContextMismatchError(f"Vector of length {len(v)} in a space of dimension {self.ambient}")
        residual = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = residual[p]
            if c:
                residual = [a - c * b for a, b in zip(residual, row)]
        return tuple(residual)

    def contains(self, v: Sequence[Fraction]) -> bool:
        """Whether v reduces to zero against the basis"""
        return not any(self.reduce(v))

    def issubset(self, other: 'Subspace') -> bool:
        """Every basis row of self lies in other; labels must agree"""
        _check_labels(self, other)
        return all(other.contains(row) for row in self.rows)

    def pivot_labels(self) -> List[Hashable]:
        return [self.labels[p] for p in self.pivots]


def _check_labels(s1: Subspace, s2: Subspace) -> None:
    if s1.labels != s2.labels:
        raise ContextMismatchError("Subspaces live in different coordinate spaces")


def zero_subspace(labels: Labels) -> Subspace:
    return Subspace(tuple(labels), (), ())


def full_space(labels: Labels) -> Subspace:
    labels = tuple(labels)
    n = len(labels)
    rows = tuple(unit_vector(n, i) for i in range(n))
    return Subspace(labels, rows, tuple(range(n)))


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))


def rref(rows: Iterable[Sequence[Fraction]], labels: Labels) -> Subspace:
    """Canonical span of the rows"""
    labels = tuple(labels)
    rows = list(rows)
    for row in rows:
        if len(row) != len(labels):
            raise ContextMismatchError(f"Row of length {len(row)} in a space of dimension {len(labels)}")
    basis, pivots = _row_reduce(rows, len(labels))
    return Subspace(labels, tuple(basis), pivots)


def span(vectors: Iterable[Sequence[Fraction]], labels: Labels) -> Subspace:
    """
    Subspace spanned by the vectors

    :param vectors: coordinate vectors, dependent or zero ones allowed
    :param labels: coordinate labels of the ambient space
    :return: Subspace in canonical RREF form
    """
    return rref(vectors, labels)


def contains(s: Subspace, v: Sequence[Fraction]) -> bool:
    """Whether v lies in s"""
    return s.contains(v)


def kernel(rows: Sequence[Sequence[Fraction]], labels: Labels) -> Subspace:
    """
    Null space {v : row . v = 0 for every row}

    :param rows: matrix rows; their length is the number of labels
    :param labels: labels of the column (domain) space
    """
    labels = tuple(labels)
    n = len(labels)
    for row in rows:
        if len(row) != n:
            raise ContextMismatchError(f"Row of length {len(row)} for {n} columns")
    basis, pivots = _row_reduce(rows, n)
    if not basis:
        return full_space(labels)
    pivot_set = set(pivots)
    null_vectors = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(basis, pivots):
            v[p] = -row[f]
        null_vectors.append(v)
    return rref(null_vectors, labels)


def orthogonal_complement(s: Subspace) -> Subspace:
    """Vectors orthogonal to every row of s under the standard pairing"""
    return kernel(s.rows, s.labels)


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    """Canonical basis of s1 ∩ s2, computed as the complement of the summed complements"""
    _check_labels(s1, s2)
    if s1.is_zero() or s2.is_zero():
        return zero_subspace(s1.labels)
    complement_rows = orthogonal_complement(s1).rows + orthogonal_complement(s2).rows
    if not complement_rows:
        return full_space(s1.labels)
    return kernel(complement_rows, s1.labels)


def intersect_all(spaces: Sequence[Subspace], labels: Labels) -> Subspace:
    """Intersection of all the spaces; the full space when there are none"""
    result = full_space(labels)
    for s in spaces:
        result = intersect(result, s)
    return result


def subspace_sum(s1: Subspace, s2: Subspace) -> Subspace:
    """s1 + s2"""
    _check_labels(s1, s2)
    return rref(s1.rows + s2.rows, s1.labels)


def standard_complement(s: Subspace) -> List[Hashable]:
    """Labels that are not pivot columns; they index a basis of the quotient"""
    pivot_set = set(s.pivots)
    return [label for i, label in enumerate(s.labels) if i not in pivot_set]


def coordinate_subspace(labels: Labels, selected: Iterable[int]) -> Subspace:
    """Span of the unit vectors at the selected indices"""
    labels = tuple(labels)
    n = len(labels)
    indices = sorted(set(selected))
    return Subspace(labels, tuple(unit_vector(n, i) for i in indices), tuple(indices))


def mat_vec(matrix: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    """
    Exact product M v

    :param matrix: rows of M
    :param v: column vector with one entry per column of M
    :return: M v as a tuple of Fractions
    """
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in matrix)


def determinant(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant; the empty matrix has determinant 1"""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    dm = DomainMatrix([[to_qq(c) for c in row] for row in matrix], (n, n), QQ)
    return from_qq(dm.det())


def is_nilpotent(matrix: Sequence[Sequence[Fraction]]) -> bool:
    """N^n == 0 for an n x n matrix"""
    n = len(matrix)
    if n == 0:
        return True
    dm = DomainMatrix([[to_qq(c) for c in row] for row in matrix], (n, n), QQ)
    return (dm ** n).is_zero_matrix


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    """
    Number of pivots after exact row reduction

    :param matrix: rows of equal length, possibly none
    :return: rank over Q
    """
    if not matrix:
        return 0
    return len(_row_reduce(matrix, len(matrix[0]))[1])
