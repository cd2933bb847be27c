"""Matrix actions on modular symbol paths via unimodular decomposition.

A Manin symbol [X^i Y^(k-2-i), (c:d)] stands for the modular symbol
(P|g^-1){g0, g_inf} where g in SL_2(Z) has bottom row (c, d) and
(P|m)(X, Y) := P(aX + bY, cX + dY) for m = (a, b; c, d).  A matrix delta of
positive determinant acts on the left by

    delta . (Q{alpha, beta}) = (Q|adj(delta)) {delta alpha, delta beta},

and the resulting path is re-expressed in Manin symbols through the
continued-fraction (Manin trick) decomposition of each endpoint.  All
polynomial transport happens by composing 2x2 integer matrices first, so
every expansion is a single monomial substitution with integer output.
"""

from __future__ import annotations

from functools import lru_cache

Mat2 = tuple[tuple[int, int], tuple[int, int]]


def mat_mul2(a: Mat2, b: Mat2) -> Mat2:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def mat_adjugate(m: Mat2) -> Mat2:
    return ((m[1][1], -m[0][1]), (-m[1][0], m[0][0]))


def mat_det(m: Mat2) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


@lru_cache(maxsize=None)
def _binomials(n: int) -> tuple:
    row = [1]
    rows = [tuple(row)]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
        rows.append(tuple(row))
    return tuple(rows)


def expand_monomial(i: int, deg: int, m: Mat2) -> list[int]:
    """Coefficients (by X-degree 0..deg) of (aX+bY)^i (cX+dY)^(deg-i),
    i.e. of X^i Y^(deg-i) | m."""
    if deg == 0:
        return [1]
    (a, b), (c, d) = m
    binom = _binomials(deg)
    first = [binom[i][j] * a**j * b ** (i - j) for j in range(i + 1)]
    second = [binom[deg - i][j] * c**j * d ** (deg - i - j) for j in range(deg - i + 1)]
    out = [0] * (deg + 1)
    for j1, x in enumerate(first):
        if x:
            for j2, y in enumerate(second):
                if y:
                    out[j1 + j2] += x * y
    return out


def unimodular_path_matrices(num: int, den: int) -> list[Mat2]:
    """SL_2(Z) matrices M_0..M_r with {inf, num/den} = sum_j M_j {0, inf},
    from the continued-fraction convergents of num/den (den > 0)."""
    mats: list[Mat2] = []
    p_prev2, q_prev2 = 0, 1  # convergent p_{-2}/q_{-2}
    p_prev, q_prev = 1, 0  # convergent p_{-1}/q_{-1} = infinity
    x, y = num, den
    j = 0
    while y != 0:
        a = x // y
        x, y = y, x - a * y
        p, q = a * p_prev + p_prev2, a * q_prev + q_prev2
        s = 1 if j % 2 else -1  # (-1)^(j-1)
        mats.append(((p, s * p_prev), (q, s * q_prev)))
        p_prev2, q_prev2 = p_prev, q_prev
        p_prev, q_prev = p, q
        j += 1
    return mats


def act_path(
    poly_transport: Mat2,
    monomial_degree: int,
    weight_degree: int,
    endpoint_from: tuple[int, int],
    endpoint_to: tuple[int, int],
) -> list[tuple[int, tuple[int, int], int]]:
    """Expand (P|poly_transport){from, to} over Manin symbols.

    Endpoints are projective integer pairs (num, den), den = 0 meaning the
    cusp at infinity.  Returns triples (X-degree, bottom row, coefficient);
    callers reduce the bottom row into P^1(Z/NZ).
    """
    terms: list[tuple[int, tuple[int, int], int]] = []
    for (num, den), outer_sign in ((endpoint_to, 1), (endpoint_from, -1)):
        if den == 0:
            continue  # {inf, inf} contributes nothing
        if den < 0:
            num, den = -num, -den
        g = _gcd(abs(num), den)
        if g > 1:
            num, den = num // g, den // g
        for m in unimodular_path_matrices(num, den):
            w = mat_mul2(poly_transport, m)
            coeffs = expand_monomial(monomial_degree, weight_degree, w)
            bottom = (m[1][0], m[1][1])
            for deg_x, coeff in enumerate(coeffs):
                if coeff:
                    terms.append((deg_x, bottom, outer_sign * coeff))
    return terms


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
