"""U_p, V_p, old/new splits, Atkin-Lehner, trace, the subspace S, and v_p."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspgaps.heckeops import (
    apply_Up,
    apply_Vp,
    build_operator_stack,
    coefficient_valuation,
    hecke_matrix_on_basis,
    normalize_p,
    old_new_split,
    up_matrix,
)
from cuspgaps.linalg import Echelonizer, identity, mat_mul, rank
from cuspgaps.msengine import qexpansion_basis
from cuspgaps.oracles import delta_expansion
from cuspgaps.qexp import QExpansion

series = st.lists(st.integers(min_value=-30, max_value=30), min_size=6, max_size=40)


# -- U_p and V_p ------------------------------------------------------------------

def test_up_monomial():
    f = QExpansion((0, 0, 0, 0, 1, 0, 0, 0, 0, 0), 12, 1)  # q^5
    assert apply_Up(f, 5).coeffs == (1, 0)


@given(series, st.sampled_from([2, 3, 5, 7]))
@settings(max_examples=150, deadline=None)
def test_up_vp_inverse(coeffs, p):
    f = QExpansion(tuple(coeffs), 4, 1)
    assert apply_Up(apply_Vp(f, p), p).coeffs == f.coeffs


@given(series, st.sampled_from([2, 3, 5]))
@settings(max_examples=100, deadline=None)
def test_vp_order_and_precision(coeffs, p):
    f = QExpansion(tuple(coeffs), 4, 1)
    vf = apply_Vp(f, p)
    assert vf.precision == p * f.precision
    if f.order() is not None:
        assert vf.order() == p * f.order()


def test_up_precision_guard():
    with pytest.raises(ValueError):
        apply_Up(QExpansion((1, 2), 4, 1), 3)


def test_u2_delta():
    assert apply_Up(delta_expansion(20), 2).coefficient(1) == -24


def test_v5_delta_in_level5_span():
    basis = qexpansion_basis(5, 12, 60)
    v5d = apply_Vp(delta_expansion(12), 5)
    coords = basis.coordinates(v5d)  # raises NotInSpanError on failure
    assert any(c != 0 for c in coords)


# -- valuations ---------------------------------------------------------------------

def test_valuation_example():
    f = QExpansion((5, 25), 2, 1)
    assert coefficient_valuation(f, 5) == 1
    assert normalize_p(f, 5).coeffs == (1, 5)


def test_valuation_zero_series():
    assert coefficient_valuation(QExpansion((0, 0), 2, 1), 5) == math.inf
    with pytest.raises(ValueError):
        normalize_p(QExpansion((0, 0), 2, 1), 5)


@given(series, st.sampled_from([2, 3, 5]))
@settings(max_examples=150, deadline=None)
def test_normalize_p_properties(coeffs, p):
    f = QExpansion(tuple(coeffs), 6, 1)
    if f.is_zero():
        return
    g = normalize_p(f, p)
    assert coefficient_valuation(g, p) == 0
    assert all(isinstance(c, int) for c in g.coeffs)


def test_valuation_ultrametric():
    f = QExpansion((Fraction(1, 5), 1), 2, 1)
    g = QExpansion((Fraction(-1, 5), 25), 2, 1)
    vf, vg = coefficient_valuation(f, 5), coefficient_valuation(g, 5)
    assert coefficient_valuation(f + g, 5) >= min(vf, vg)
    assert coefficient_valuation(5 * f, 5) == vf + 1


# -- operator stack at (1, 12, 5) ----------------------------------------------------

@pytest.fixture(scope="module")
def stack5():
    return build_operator_stack(1, 12, 5)


def test_split_dimensions(stack5):
    assert stack5.split.old_dimension == 2
    assert stack5.split.new_dimension == 3
    assert len(stack5.s_basis) == 4  # dim S = 5 - 1


def test_atkin_lehner_involution(stack5):
    w = [list(r) for r in stack5.atkin_lehner.matrix]
    assert mat_mul(w, w) == identity(5)


def test_atkin_lehner_eigenvalues(stack5):
    w = [list(r) for r in stack5.atkin_lehner.matrix]
    d = len(w)
    w_minus = [[w[i][j] - (1 if i == j else 0) for j in range(d)] for i in range(d)]
    w_plus = [[w[i][j] + (1 if i == j else 0) for j in range(d)] for i in range(d)]
    assert rank(w_minus) + rank(w_plus) == d  # eigenvalues are all +-1


def test_atkin_lehner_old_block(stack5):
    """On the old pair (Delta, V_5 Delta): W(Delta) = 5^6 V_5 Delta and
    W(V_5 Delta) = 5^-6 Delta."""
    amb = stack5.ambient
    delta = delta_expansion(amb.precision)
    w_delta = amb.linear_combination(stack5.atkin_lehner.apply(amb.coordinates(delta)))
    v5_delta = apply_Vp(delta_expansion(amb.precision), 5)
    assert w_delta.agrees_with(5**6 * v5_delta)
    w_v5 = amb.linear_combination(stack5.atkin_lehner.apply(amb.coordinates(v5_delta)))
    assert (5**6 * w_v5).agrees_with(delta)


def test_trace_on_lower_forms(stack5):
    """Tr(Delta seen in S_12(Gamma_0(5))) = 6 Delta."""
    delta = delta_expansion(stack5.ambient.precision)
    traced = stack5.trace_expansion(delta)
    assert traced.agrees_with(6 * delta)
    assert traced.level == 1


def test_trace_rank_and_new_block(stack5):
    tr = [list(r) for r in stack5.trace.matrix]
    assert rank(tr) == 1  # dim S_12(1)
    for v in stack5.split.new_vectors:
        assert all(x == 0 for x in stack5.trace.apply(v))


def test_kernel_of_trace_maps_onto_s(stack5):
    """f -> f|W_p carries ker(Tr) bijectively onto S."""
    from cuspgaps.linalg import kernel_basis

    tr = [list(r) for r in stack5.trace.matrix]
    ker = kernel_basis(tr)
    assert len(ker) == len(stack5.s_basis)
    ech = Echelonizer(stack5.ambient.dimension)
    for v in stack5.s_basis:
        ech.add(list(v))
    s_rank = ech.rank
    for v in ker:
        image = stack5.atkin_lehner.apply(v)
        assert ech.add(list(image)) is None  # lands inside S
    assert s_rank == len(stack5.s_basis)


def test_up_squared_on_new_block(stack5):
    """U_p^2 = p^(k-2) on the p-new subspace."""
    u = [list(r) for r in stack5.up.matrix]
    u2 = mat_mul(u, u)
    for v in stack5.split.new_vectors:
        image = [sum(u2[i][j] * v[j] for j in range(len(v))) for i in range(len(v))]
        assert image == [5**10 * x for x in v]


def test_w_commutes_with_hecke(stack5):
    """W_p T_ell = T_ell W_p for primes ell coprime to p, ell <= 20.

    The stack's ambient precision only pins T_ell for small ell, so the
    operators for larger ell are read off a higher-precision build of the
    same canonical basis (same coordinates)."""
    big = qexpansion_basis(5, 12, 21 * 6)
    w = [list(r) for r in stack5.atkin_lehner.matrix]
    for ell in (2, 3, 7, 11, 13, 17, 19):
        t = [list(r) for r in hecke_matrix_on_basis(big, ell).matrix]
        assert mat_mul(w, t) == mat_mul(t, w), f"W does not commute with T_{ell}"


def test_s_basis_hypotheses(stack5):
    for f in stack5.s_basis_expansions():
        assert coefficient_valuation(f, 5) == 0
        coords = stack5.ambient.coordinates(f)
        fw = stack5.ambient.linear_combination(stack5.atkin_lehner.apply(coords))
        assert coefficient_valuation(fw, 5) >= 1 - 12 // 2
        assert f.order() is not None and f.order() <= 4  # sharp bound at (1,12,5)


# -- a split with an empty lower space ------------------------------------------------

def test_stack_2_4_7():
    stack = build_operator_stack(2, 4, 7)
    assert stack.lower.dimension == 0
    assert stack.split.old_dimension == 0
    assert stack.split.new_dimension == 4
    assert len(stack.s_basis) == 4
    u = [list(r) for r in stack.up.matrix]
    assert mat_mul(u, u) == [[49 * x for x in row] for row in identity(4)]
    w = [list(r) for r in stack.atkin_lehner.matrix]
    assert mat_mul(w, w) == identity(4)


def test_old_new_split_requires_matching_ambient():
    basis = qexpansion_basis(5, 12, 40)
    with pytest.raises(ValueError):
        old_new_split(1, 12, 7, basis)  # ambient is for p = 5, not 7


def test_up_matrix_precision_guard():
    basis = qexpansion_basis(5, 12, 13)
    with pytest.raises(ValueError):
        up_matrix(basis, 5)  # needs 5 * (5 + 1) = 30
