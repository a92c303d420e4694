import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affszabo.homogeneous import (
    TYPE_A_RESIDUAL_NAMES,
    TypeAParams,
    TypeBAsymmetric,
    TypeBParams,
    is_affine_killing,
    killing_residual,
    type_a_connection,
    type_a_parallel_ricci,
    type_b_check,
    type_b_connection,
    type_b_szabo_residuals,
)
from affszabo.symexpr import ONE, ZERO, RatFn, param
from affszabo.szabo import is_affine_szabo
from affszabo.tensorcalc import Connection, cov_deriv_ricci, curvature, ricci
from helpers import U

a, b, c, d, e, f = (RatFn.var(param(x)) for x in "abcdef")
SYM_A = TypeAParams(a, b, c, d, e, f)
u1 = U[0]

small = st.integers(-3, 3)
tuples6 = st.tuples(small, small, small, small, small, small)


class TestConstructors:
    def test_type_a_zero(self):
        c = type_a_connection(TypeAParams())
        assert all(c[k, i, j].is_zero() for k, i, j in product(range(2), repeat=3))

    def test_type_a_placement(self):
        c = type_a_connection(TypeAParams(c=1))
        nonzero = {kij for kij in product(range(2), repeat=3) if not c[kij].is_zero()}
        assert nonzero == {(0, 0, 1), (0, 1, 0)}
        assert c[0, 0, 1] == ONE

    def test_type_a_curvature_functions(self):
        # R(d1,d2)d1 = a d1 + b d2, R(d1,d2)d2 = c d1 + d d2 with (a,b,c,d) = (0,0,-1,0)
        R = curvature(type_a_connection(TypeAParams(c=1)))
        assert [R[0, 0, 0, 1], R[1, 0, 0, 1], R[0, 1, 0, 1], R[1, 1, 0, 1]] == [ZERO, ZERO, -ONE, ZERO]

    def test_type_b_zero_and_placement(self):
        assert all(x.is_zero() for row in type_b_connection(TypeBParams()).gamma for r in row for x in r)
        c = type_b_connection(TypeBParams(a=1))
        assert c[0, 0, 0] == 1 / u1
        assert sum(not c[kij].is_zero() for kij in product(range(2), repeat=3)) == 1

    def test_type_a_ricci_components(self):
        R = ricci(type_a_connection(SYM_A))
        assert R[0, 0] == a * d - d * d + b * f - b * c
        assert R[0, 1] == R[1, 0] == c * d - b * e
        assert R[1, 1] == a * e - d * e + c * f - c * c

    def test_type_b_ricci_components(self):
        R = ricci(type_b_connection(TypeBParams(a, b, c, d, e, f)))
        s = u1**2
        assert R[0, 0] * s == d + d * (a - d) + b * (f - c)
        assert R[0, 1] * s == f + c * d - b * e
        assert R[1, 0] * s == -c + c * d - b * e
        assert R[1, 1] * s == -e + e * (a - d) + c * (f - c)


class TestTypeAParallelRicci:
    def test_non_flat_parallel_witness(self):
        r = type_a_parallel_ricci(TypeAParams(c=1))
        assert r.parallel and r.agrees
        assert ricci(type_a_connection(TypeAParams(c=1)))[1, 1] == -ONE

    def test_non_parallel_example(self):
        r = type_a_parallel_ricci(TypeAParams(d=1, e=1))
        assert not r.parallel and r.agrees
        assert r.residuals["(nabla_1 Ric)(d2,d2)"] == RatFn.const(2)
        assert not bool(r)

    def test_all_zero(self):
        assert type_a_parallel_ricci(TypeAParams()).parallel

    def test_closed_form_matches_direct_symbolically(self):
        r = type_a_parallel_ricci(SYM_A)
        assert r.agrees
        assert list(r.residuals) == list(TYPE_A_RESIDUAL_NAMES)

    def test_printed_formulas(self):
        D = cov_deriv_ricci(type_a_connection(SYM_A))
        assert D[0, 0, 0] == 2 * (a * b * c + a * d * d - a * a * d - a * b * f + b * b * e - b * c * d)
        assert D[0, 0, 1] == D[1, 0, 0] == 2 * (b * c * c + b * d * e - a * c * d - b * c * f)
        assert D[0, 1, 1] == D[1, 0, 1] == 2 * (b * c * e - a * d * e - c * d * f + d * d * e)
        assert D[1, 1, 1] == 2 * (b * e * e + c * c * f - c * f * f - a * e * f - c * d * e + d * e * f)


class TestTypeB:
    def test_example_vanishing(self):
        assert all(r.is_zero() for r in type_b_szabo_residuals(TypeBParams(a=1, b=2)))

    def test_d_family(self):
        assert all(r.is_zero() for r in type_b_szabo_residuals(TypeBParams(d=1)))

    def test_nonzero_example(self):
        res = type_b_szabo_residuals(TypeBParams(c=1, f=-1))
        assert res[1] == RatFn.const(2)
        assert any(not r.is_zero() for r in res)

    def test_asymmetric_rejected(self):
        with pytest.raises(TypeBAsymmetric):
            type_b_szabo_residuals(TypeBParams(c=1, f=0))

    def test_reference_second_condition_differs_from_derived(self):
        p = TypeBParams(a, b, c, d, e, -c)
        printed = type_b_szabo_residuals(p)[1]
        derived = type_b_szabo_residuals(p, corrected=True)[1]
        assert printed - derived == 2 * b * c * e - 2 * b * c * c

    def test_derived_cov_ricci(self):
        D = cov_deriv_ricci(type_b_connection(TypeBParams(a, b, c, d, e, -c)))
        k = 1 / u1**3
        assert D[0, 0, 1] == k * (2 * c + a * c + 4 * b * c * c - 2 * c * d - 2 * a * c * d + 3 * b * e + 2 * b * d * e)
        assert D[1, 0, 0] == 2 * k * (2 * b * c * c - a * c * d + b * d * e)
        assert D[1, 1, 1] == 2 * k * (-2 * c**3 + a * c * e - 2 * c * d * e + b * e * e)

    def test_known_disagreement_with_reference_condition(self):
        p = TypeBParams(-1, -1, 2, 2, -2, -2)
        assert not type_b_check(p)["agree"]
        assert type_b_check(p, corrected=True)["agree"]


class TestKilling:
    def test_type_a_coordinate_fields(self):
        c = type_a_connection(TypeAParams(1, 2, -1, 3, 0, 2))
        assert is_affine_killing(c, [ONE, ZERO])
        assert is_affine_killing(c, [ZERO, ONE])

    def test_linear_field_on_flat_space(self):
        assert is_affine_killing(Connection.zero(2), [u1, ZERO])

    def test_quadratic_field_on_flat_space(self):
        r = killing_residual(Connection.zero(2), [u1**2, ZERO])
        assert r[0, 0, 0] == RatFn.const(2)
        assert [k for k, _ in r.nonzero()] == [(0, 0, 0)]

    def test_dimension_check(self):
        with pytest.raises(ValueError):
            killing_residual(Connection.zero(2), [ONE])

    def test_type_b_dilation(self):
        # u -> t u preserves every Type B connection
        c = type_b_connection(TypeBParams(1, -2, 1, 0, 3, -1))
        assert is_affine_killing(c, [u1, U[1]])
        assert is_affine_killing(c, [ZERO, ONE])


# -- properties ----------------------------------------------------------------


def test_type_a_ricci_symmetric_symbolically():
    R = ricci(type_a_connection(SYM_A))
    assert R[0, 1] == R[1, 0] == c * d - b * e


@settings(max_examples=80, deadline=None)
@given(tuples6)
def test_type_b_ricci_symmetric_iff_f_is_minus_c(p):
    R = ricci(type_b_connection(TypeBParams(*p)))
    assert (R[0, 1] == R[1, 0]) == (p[5] == -p[2])


@settings(max_examples=60, deadline=None)
@given(tuples6)
def test_killing_coordinate_fields_on_type_a(p):
    conn = type_a_connection(TypeAParams(*p))
    assert is_affine_killing(conn, [ONE, ZERO]) and is_affine_killing(conn, [ZERO, ONE])


@settings(max_examples=80, deadline=None)
@given(tuples6)
def test_type_a_szabo_iff_parallel_ricci(p):
    r = type_a_parallel_ricci(TypeAParams(*p))
    assert r.agrees
    assert is_affine_szabo(type_a_connection(TypeAParams(*p))).holds == r.parallel


@settings(max_examples=60, deadline=None)
@given(st.tuples(small, small, small, small, small))
def test_type_b_derived_conditions_match_szabo(p):
    a_, b_, c_, d_, e_ = p
    assert type_b_check(TypeBParams(a_, b_, c_, d_, e_, -c_), corrected=True)["agree"]


def test_type_a_with_symbolic_parameters_is_not_szabo():
    assert not is_affine_szabo(type_a_connection(SYM_A)).holds


def test_type_b_params_is_type_a_params():
    assert isinstance(TypeBParams(), TypeAParams)
    rng = random.Random(0)
    p = TypeBParams(*(rng.randint(-2, 2) for _ in range(6)))
    assert p.values() == tuple(RatFn.const(x) for x in (p.a, p.b, p.c, p.d, p.e, p.f))
