"""Sylvester resultants and divisibility for ``MPoly``."""

from __future__ import annotations

from .poly import MPoly


def sylvester_matrix(f: MPoly, g: MPoly, var: str) -> list:
    """Sylvester matrix of f, g in ``var``; the deg(g) rows of f come first."""
    fc = f.coeffs(var)[::-1]  # highest power first
    gc = g.coeffs(var)[::-1]
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    zero = MPoly.zero(f.vars)
    rows = []
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(matrix: list) -> MPoly:
    """Fraction-free determinant; every division in the recurrence is exact."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    vars = matrix[0][0].vars
    m = [list(row) for row in matrix]
    sign = 1
    prev = MPoly.const(1, vars)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return MPoly.zero(vars)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * pivot - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev) if not prev.is_constant() else num.scale(1 / prev.constant_value())
            m[i][k] = MPoly.zero(vars)
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Res_var(f, g) as the determinant of the Sylvester matrix (f rows first).

    The result lives in the same ring as f and g and is free of ``var``.
    """
    if f.vars != g.vars:
        raise ValueError("resultant operands must share their variables")
    if f.is_zero() and g.is_zero():
        raise ValueError("undefined resultant")
    if f.is_zero() or g.is_zero():
        return MPoly.zero(f.vars)
    df, dg = f.degree(var), g.degree(var)
    if df == 0:
        return f ** dg
    if dg == 0:
        return g ** df
    return bareiss_det(sylvester_matrix(f, g, var))


def divides(f: MPoly, g: MPoly):
    """(True, q) if g == f*q exactly, else (False, None)."""
    if f.is_zero():
        raise ValueError("divisor must be nonzero")
    q, r = g.divmod(f)
    if r.is_zero():
        return True, q
    return False, None


def det3(m) -> object:
    """Cofactor determinant of a 3x3 matrix over any commutative ring."""
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
