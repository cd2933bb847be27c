"""The operator stack on q-expansions of S_k(Gamma_0(pN)).

U_p and V_p act coefficientwise.  The Atkin-Lehner involution W_p is
assembled blockwise from the old/new decomposition: on an old pair
(g, V_p g) coming from level N it swaps the two (with factors p^(k/2) and
p^(-k/2)), and on the p-new block it is -p^(1-k/2) U_p.  A q-expansion at
infinity does not determine the slash action of the defining matrix
directly, so this assembly is the computational route; the exact identity
W_p^2 = 1 is verified and failure aborts.  The trace map to level N is
Tr(f) = f + p^(1-k/2) (f|W_p)|U_p, and S is the kernel of
f -> f|W_p + p^(1-k/2) f|U_p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import primes_up_to
from .errors import AssemblyError, EngineError
from .invariants import (
    check_level,
    check_odd_prime,
    check_weight,
    sturm_bound,
    valence_bound,
)
from .linalg import (
    Echelonizer,
    charpoly,
    identity,
    kernel_basis,
    mat_inverse,
    mat_mul,
    mat_vec,
    poly_eval_matrix,
    rank,
    solve,
)
from .msengine import SpaceBasis, qexpansion_basis
from .qexp import QExpansion

INFINITE_VALUATION = math.inf


# -- coefficient operators ---------------------------------------------------

def apply_Up(f: QExpansion, p: int) -> QExpansion:
    """U_p: a_n -> a_(pn); output precision floor(B/p)."""
    if f.precision < p:
        raise ValueError(f"U_{p} needs precision >= {p}, got {f.precision}")
    out = tuple(f.coefficient(p * n) for n in range(1, f.precision // p + 1))
    return QExpansion(out, f.weight, f.level)


def apply_Vp(f: QExpansion, p: int) -> QExpansion:
    """V_p: q -> q^p; output precision p*B."""
    out = [0] * (p * f.precision)
    for n in range(1, f.precision + 1):
        out[p * n - 1] = f.coefficient(n)
    return QExpansion(tuple(out), f.weight, f.level * p)


def coefficient_valuation(f: QExpansion, p: int):
    """v_p(f) = min over known coefficients of v_p(a_n); +inf for the zero
    truncation.  Computed over the finitely many known coefficients, which
    determines the true infimum once the precision reaches the Sturm bound
    of an ambient space containing f."""
    best = None
    for c in f.coeffs:
        if c == 0:
            continue
        frac = Fraction(c)
        v = _int_valuation(frac.numerator, p) - _int_valuation(frac.denominator, p)
        if best is None or v < best:
            best = v
    return INFINITE_VALUATION if best is None else best


def _int_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def normalize_p(f: QExpansion, p: int) -> QExpansion:
    """Rescale f to primitive integer coefficients (so v_p(f) = 0)."""
    if f.is_zero():
        raise ValueError("cannot normalize the zero expansion")
    from .linalg import make_primitive

    ints = make_primitive(list(f.coeffs))
    return QExpansion(tuple(ints), f.weight, f.level)


# -- operators in basis coordinates -------------------------------------------

@dataclass(frozen=True)
class OperatorMatrix:
    """Exact rational matrix acting on coordinate columns of a SpaceBasis."""

    label: str
    matrix: tuple[tuple[Fraction, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    def apply(self, coords):
        return mat_vec(self.matrix, list(coords))


def up_matrix(ambient: SpaceBasis, p: int) -> OperatorMatrix:
    """U_p on the ambient basis; requires precision >= p*(max pivot + 1)."""
    need = p * ((ambient.pivots[-1] if ambient.pivots else 0) + 1)
    if ambient.precision < need:
        raise ValueError(f"U_{p} on this basis needs ambient precision >= {need}")
    cols = [ambient.coordinates(apply_Up(row, p)) for row in ambient.rows]
    d = ambient.dimension
    mat = tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))
    return OperatorMatrix(f"U_{p}", mat)


def hecke_matrix_on_basis(basis: SpaceBasis, ell: int) -> OperatorMatrix:
    """T_ell (prime ell) on basis coordinates via the coefficient rule
    a_n(T_ell f) = a_(ell n)(f) + [ell coprime to N] ell^(k-1) a_(n/ell)(f)."""
    k, level = basis.weight, basis.level
    max_pivot = basis.pivots[-1] if basis.pivots else 0
    prec = basis.precision // ell
    if prec < max_pivot:
        raise ValueError(f"T_{ell} needs precision >= {ell * max_pivot}")
    cols = []
    for row in basis.rows:
        img = []
        for n in range(1, prec + 1):
            c = row.coefficient(ell * n)
            if n % ell == 0 and level % ell != 0:
                c += ell ** (k - 1) * row.coefficient(n // ell)
            img.append(c)
        cols.append(basis.coordinates(QExpansion(tuple(img), k, level)))
    d = basis.dimension
    mat = tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))
    return OperatorMatrix(f"T_{ell}", mat)


# -- old/new decomposition ----------------------------------------------------

@dataclass(frozen=True)
class OldNewSplit:
    """Coordinates (in the ambient echelon basis of S_k(pN)) of the oldform
    span {g_i, V_p g_i} and of the p-new complement."""

    level: int  # lower level N
    weight: int
    prime: int
    ambient: SpaceBasis
    lower: SpaceBasis
    old_pairs: tuple  # ((coords g_i, coords V_p g_i), ...)
    new_vectors: tuple

    @property
    def old_dimension(self) -> int:
        return 2 * len(self.old_pairs)

    @property
    def new_dimension(self) -> int:
        return len(self.new_vectors)


def _charpoly_factors(matrix):
    """Irreducible factors over Q of the characteristic polynomial, as
    (descending coefficient lists, multiplicity)."""
    from sympy import Poly, Rational, symbols

    cp = charpoly(matrix)
    x = symbols("x")
    poly = Poly([Rational(c.numerator, c.denominator) for c in cp], x)
    out = []
    for factor, mult in poly.factor_list()[1]:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in factor.all_coeffs()]
        out.append((coeffs, mult))
    return out


def old_new_split(level: int, weight: int, p: int, ambient: SpaceBasis,
                  lower: SpaceBasis | None = None) -> OldNewSplit:
    """Split S_k(pN) into the old span {g, V_p g} and the p-new complement.

    The new part is accumulated as the sum of rational generalized
    T_ell-isotypic components (ell running over primes coprime to pN, in
    increasing order) that meet the old space trivially; components lying
    inside the old space are old, and by strong multiplicity one no
    component may straddle both.  A straddling component raises EngineError.
    """
    check_level(level)
    check_weight(weight)
    check_odd_prime(level, p)
    big = ambient
    if big.level != p * level or big.weight != weight:
        raise ValueError("ambient basis does not match (p*N, k)")
    c_max = big.pivots[-1] if big.pivots else 0
    if lower is None:
        lower = qexpansion_basis(level, weight, max(sturm_bound(level, weight), c_max + 1))
    dim_n = lower.dimension
    dim_pn = big.dimension

    old_pairs = []
    old_ech = Echelonizer(dim_pn)
    for g in lower.rows:
        cg = big.coordinates(g)
        cvg = big.coordinates(apply_Vp(g, p))
        old_pairs.append((tuple(cg), tuple(cvg)))
        if old_ech.add(list(cg)) is None or old_ech.add(list(cvg)) is None:
            raise EngineError("oldform vectors are dependent")

    if dim_pn == 0:
        return OldNewSplit(level, weight, p, big, lower, tuple(old_pairs), ())

    full = [[Fraction(i == j) for j in range(dim_pn)] for i in range(dim_pn)]
    components = [full]  # list of lists of coordinate vectors
    new_vectors: list = []
    old_rank = old_ech.rank

    def old_overlap(vectors) -> tuple[int, bool]:
        """(dim of intersection with old, contained in old?)"""
        ech = Echelonizer(dim_pn)
        for pair in old_pairs:
            ech.add(list(pair[0]))
            ech.add(list(pair[1]))
        added = 0
        for v in vectors:
            if ech.add(list(v)) is not None:
                added += 1
        inter = len(vectors) - added
        return inter, added == 0

    max_ell = min(sturm_bound(p * level, weight), big.precision // max(c_max, 1))
    separating_primes = [ell for ell in primes_up_to(max_ell) if (p * level) % ell != 0]
    for ell in separating_primes:
        if not components:
            break
        t_op = hecke_matrix_on_basis(big, ell)
        next_components = []
        for comp in components:
            # restrict T_ell to the component
            basis_cols = [[v[i] for v in comp] for i in range(dim_pn)]  # dim_pn x c
            restricted_cols = []
            for v in comp:
                image = t_op.apply(v)
                sol = solve(basis_cols, image)
                if sol is None:
                    raise EngineError("isotypic component is not Hecke stable")
                restricted_cols.append(sol)
            c = len(comp)
            restricted = [[restricted_cols[j][i] for j in range(c)] for i in range(c)]
            for coeffs, mult in _charpoly_factors(restricted):
                powered = [Fraction(1)]
                for _ in range(mult):
                    powered = _poly_mul_local(powered, coeffs)
                op = poly_eval_matrix(powered, restricted)
                piece_local = kernel_basis(op, width=c)
                piece = [
                    tuple(sum(w[j] * comp[j][i] for j in range(c)) for i in range(dim_pn))
                    for w in piece_local
                ]
                inter, contained = old_overlap(piece)
                if inter == 0:
                    new_vectors.extend(piece)
                elif contained:
                    pass  # old component, already spanned by old_pairs
                else:
                    next_components.append(piece)
        components = next_components
    if components:
        raise EngineError(
            f"old/new separation failed at ({level}, {weight}, {p}): a T-isotypic "
            "component meets the old space properly"
        )
    if len(new_vectors) != dim_pn - 2 * dim_n:
        raise EngineError(
            f"new space dimension {len(new_vectors)} != {dim_pn} - 2*{dim_n}"
        )
    whole = Echelonizer(dim_pn)
    for pair in old_pairs:
        whole.add(list(pair[0]))
        whole.add(list(pair[1]))
    for v in new_vectors:
        if whole.add(list(v)) is None:
            raise EngineError("old + new is not a direct sum")
    if whole.rank != dim_pn:
        raise EngineError("old + new does not span the ambient space")
    return OldNewSplit(level, weight, p, big, lower, tuple(old_pairs), tuple(new_vectors))


def _poly_mul_local(p_coeffs, q_coeffs):
    out = [Fraction(0)] * (len(p_coeffs) + len(q_coeffs) - 1)
    for i, a in enumerate(p_coeffs):
        if a:
            for j, b in enumerate(q_coeffs):
                out[i + j] += a * b
    return out


# -- Atkin-Lehner, trace, and the subspace S ----------------------------------

def atkin_lehner(split: OldNewSplit, up: OperatorMatrix | None = None) -> OperatorMatrix:
    """W_p on ambient coordinates, assembled blockwise from the split.

    Aborts with AssemblyError("Atkin-Lehner assembly failed") if the result
    is not an exact involution (which would signal a wrong split or a
    failure of U_p^2 = p^(k-2) on the new block).
    """
    k, p = split.weight, split.prime
    big = split.ambient
    if up is None:
        up = up_matrix(big, p)
    d = big.dimension
    if d == 0:
        return OperatorMatrix(f"W_{p}", ())
    half = p ** (k // 2)
    cob_cols = []
    for cg, cvg in split.old_pairs:
        cob_cols.append(list(cg))
        cob_cols.append(list(cvg))
    cob_cols.extend(list(v) for v in split.new_vectors)
    cob = [[cob_cols[j][i] for j in range(d)] for i in range(d)]  # columns -> matrix
    cob_inv = mat_inverse(cob)

    u_in_block = mat_mul(cob_inv, mat_mul([list(r) for r in up.matrix], cob))
    old_dim = split.old_dimension
    # U_p must be block diagonal with respect to old/new
    for i in range(d):
        for j in range(d):
            if (i < old_dim) != (j < old_dim) and u_in_block[i][j] != 0:
                raise AssemblyError("Atkin-Lehner assembly failed: U_p mixes old and new")

    w_block = [[Fraction(0)] * d for _ in range(d)]
    for idx in range(len(split.old_pairs)):
        i = 2 * idx
        w_block[i][i + 1] = Fraction(1, half)
        w_block[i + 1][i] = Fraction(half)
    scale = -Fraction(p, half)  # -p^(1-k/2)
    for i in range(old_dim, d):
        for j in range(old_dim, d):
            w_block[i][j] = scale * u_in_block[i][j]

    w = mat_mul(cob, mat_mul(w_block, cob_inv))
    if mat_mul(w, w) != identity(d):
        raise AssemblyError("Atkin-Lehner assembly failed")
    return OperatorMatrix(f"W_{p}", tuple(tuple(row) for row in w))


def trace_matrix(split: OldNewSplit, w: OperatorMatrix, up: OperatorMatrix) -> OperatorMatrix:
    """Tr = 1 + p^(1-k/2) U_p W_p on ambient coordinates."""
    k, p = split.weight, split.prime
    scale = Fraction(p, p ** (k // 2))
    uw = mat_mul([list(r) for r in up.matrix], [list(r) for r in w.matrix])
    d = split.ambient.dimension
    mat = [[(Fraction(i == j) + scale * uw[i][j]) for j in range(d)] for i in range(d)]
    return OperatorMatrix(f"Tr^{p * split.level}_{split.level}", tuple(tuple(r) for r in mat))


def subspace_s_basis(split: OldNewSplit, w: OperatorMatrix, up: OperatorMatrix) -> tuple:
    """Exact kernel basis of f -> f|W_p + p^(1-k/2) f|U_p in ambient
    coordinates; its dimension must be dim S_k(pN) - dim S_k(N)."""
    k, p = split.weight, split.prime
    scale = Fraction(p, p ** (k // 2))
    d = split.ambient.dimension
    mat = [
        [w.matrix[i][j] + scale * up.matrix[i][j] for j in range(d)]
        for i in range(d)
    ]
    kernel = kernel_basis(mat, width=d)
    expected = split.ambient.dimension - split.lower.dimension
    if len(kernel) != expected:
        raise EngineError(f"dim S = {len(kernel)} != {expected}")
    return tuple(tuple(v) for v in kernel)


# -- the assembled stack -------------------------------------------------------

@dataclass(frozen=True)
class OperatorStack:
    level: int
    weight: int
    prime: int
    ambient: SpaceBasis
    lower: SpaceBasis
    split: OldNewSplit
    up: OperatorMatrix
    atkin_lehner: OperatorMatrix
    trace: OperatorMatrix
    s_basis: tuple

    def trace_expansion(self, f: QExpansion) -> QExpansion:
        """Tr(f) as a q-expansion, certified to lie in the level-N span."""
        coords = self.ambient.coordinates(f)
        image = self.ambient.linear_combination(self.trace.apply(coords))
        self.lower.coordinates(image.truncate(min(image.precision, self.lower.precision)))
        return QExpansion(image.coeffs, self.weight, self.level)

    def s_basis_expansions(self) -> list[QExpansion]:
        return [normalize_p(self.ambient.linear_combination(v), self.prime) for v in self.s_basis]


def required_ambient_precision(level: int, weight: int, p: int) -> int:
    """Operator work needs U_p images pinned in echelon coordinates:
    precision p * (valence bound of S_k(pN) + 1)."""
    return p * (valence_bound(p * level, weight) + 1)


@lru_cache(maxsize=16)
def build_operator_stack(level: int, weight: int, p: int) -> OperatorStack:
    """Compute bases, the old/new split, W_p, U_p, Tr and S for (N, k, p),
    verifying the defining exact identities along the way."""
    check_level(level)
    check_weight(weight)
    check_odd_prime(level, p)
    pn = p * level
    b_amb = required_ambient_precision(level, weight, p)
    ambient = qexpansion_basis(pn, weight, b_amb)
    c_max = ambient.pivots[-1] if ambient.pivots else 0
    b_low = max(sturm_bound(level, weight) + 10, c_max + 1)
    lower = qexpansion_basis(level, weight, b_low)
    split = old_new_split(level, weight, p, ambient, lower)
    up = up_matrix(ambient, p) if ambient.dimension else OperatorMatrix(f"U_{p}", ())
    w = atkin_lehner(split, up)
    tr = trace_matrix(split, w, up)
    s_vecs = subspace_s_basis(split, w, up)

    # exact sanity identities
    d = ambient.dimension
    if d:
        # U_p V_p = 1 on the lower basis, and Tr(g) = (p+1) g
        for g in lower.rows:
            if not apply_Up(apply_Vp(g, p), p).agrees_with(g):
                raise EngineError("U_p V_p != identity")
            coords = ambient.coordinates(g)
            traced = tr.apply(coords)
            if list(traced) != [(p + 1) * c for c in coords]:
                raise EngineError("Tr does not act by p+1 on level-N forms")
        if rank([list(r) for r in tr.matrix]) != lower.dimension:
            raise EngineError("trace map is not surjective onto S_k(N)")
    return OperatorStack(level, weight, p, ambient, lower, split, up, w, tr, s_vecs)
