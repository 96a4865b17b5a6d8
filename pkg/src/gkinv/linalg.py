"""Dense exact linear algebra over the rationals for small matrices."""

from __future__ import annotations

from fractions import Fraction

Matrix = tuple[tuple[Fraction, ...], ...]


def mat(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    )


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def congruence(b: Matrix, u: Matrix) -> Matrix:
    """t(U) B U."""
    return matmul(transpose(u), matmul(b, u))


def det(m: Matrix) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = [list(row) for row in m]
    d = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            d = -d
        d *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] * inv
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return d


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    a = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(m)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return tuple(tuple(row[n:]) for row in a)


def perm_matrix(new_to_old: tuple[int, ...]) -> Matrix:
    """Column permutation: congruence(B, P)[k][l] == B[pi(k)][pi(l)]."""
    n = len(new_to_old)
    return tuple(
        tuple(Fraction(1 if i == new_to_old[k] else 0) for k in range(n))
        for i in range(n)
    )


def submatrix(m: Matrix, rows, cols) -> Matrix:
    return tuple(tuple(m[i][j] for j in cols) for i in rows)


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    na, nb = len(a), len(b)
    zero = Fraction(0)
    top = tuple(row + (zero,) * nb for row in a)
    bot = tuple((zero,) * na + row for row in b)
    return top + bot
