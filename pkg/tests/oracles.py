"""
Brute-force reference computations.

Derivations are solved from the full Leibniz rule on every pair of basis
elements, with the dim x dim matrix of D as unknowns. This shares nothing with
the generator-based solve except the multiplication table.
"""
from fractions import Fraction
from typing import List

from sympy import QQ, Matrix
from sympy.polys.matrices import DomainMatrix

from algebra.weil import WeilAlgebra


def _nullspace(rows: List[List[Fraction]], ncols: int) -> List[List[Fraction]]:
    if not rows:
        return [[Fraction(1) if i == j else Fraction(0) for i in range(ncols)] for j in range(ncols)]
    matrix = DomainMatrix.from_Matrix(Matrix(rows)).convert_to(QQ)
    basis = matrix.nullspace().to_Matrix()
    return [[Fraction(int(c.p), int(c.q)) for c in basis.row(i)] for i in range(basis.rows)]


def derivation_matrices(algebra: WeilAlgebra) -> List[List[List[Fraction]]]:
    """
    Basis of Der(A) as dim x dim matrices, entry [s][t] = coefficient of b_s in D(b_t)

    Unknown u(s, t) sits at column s * dim + t.
    """
    n = algebra.dim
    table = {}
    for p in range(n):
        for q in range(n):
            table[(p, q)] = dict(algebra.basis_product(p, q))

    rows = []
    for p in range(n):
        for q in range(p, n):
            for s in range(n):
                row = [Fraction(0)] * (n * n)
                # D(b_p b_q)
                for t, c in table[(p, q)].items():
                    row[s * n + t] += c
                # - D(b_p) b_q - b_p D(b_q)
                for m in range(n):
                    c = table[(m, q)].get(s)
                    if c:
                        row[m * n + p] -= c
                    c = table[(p, m)].get(s)
                    if c:
                        row[m * n + q] -= c
                if any(row):
                    rows.append([Fraction(v) for v in row])

    matrices = []
    for vector in _nullspace(rows, n * n):
        matrices.append([[vector[s * n + t] for t in range(n)] for s in range(n)])
    return matrices


def derivation_dimension(algebra: WeilAlgebra) -> int:
    return len(derivation_matrices(algebra))


def derivation_kernel_dimension(algebra: WeilAlgebra) -> int:
    """dim of the joint kernel of every derivation"""
    n = algebra.dim
    rows = [row for matrix in derivation_matrices(algebra) for row in matrix if any(row)]
    return len(_nullspace(rows, n))
