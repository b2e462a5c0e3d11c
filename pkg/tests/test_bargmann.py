import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tfcompact import (EntireFn, FockGrid, NormSpec, PreconditionError, SpecError, beta_shift, eval_entire,
                       fock_field, fock_inner, fock_norm, fock_rep_coeff, kernel_fn, mixed_norm)

ONE = EntireFn.one()
GRID = FockGrid()

coef = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)
entire = st.lists(coef, min_size=1, max_size=5).filter(lambda c: any(abs(x) > 1e-3 for x in c)).map(EntireFn)
disk = lambda rmax: st.tuples(st.floats(0, rmax), st.floats(0, 2 * math.pi)).map(  # noqa: E731
    lambda ra: ra[0] * cmath.exp(1j * ra[1]))
phase = st.floats(0, 2 * math.pi).map(lambda a: cmath.exp(1j * a))


# --- EntireFn --------------------------------------------------------------------------

def test_json_round_trip():
    F = EntireFn([1, 2j, -0.5 + 0.25j])
    doc = F.to_json()
    assert doc == {"degree": 2, "coeffs": [[1.0, 0.0], [0.0, 2.0], [-0.5, 0.25]]}
    assert np.array_equal(EntireFn.from_json(doc).coeffs, F.coeffs)


@pytest.mark.parametrize("doc", [{"degree": 2, "coeffs": [[1, 0]]}, {"coeffs": [[1, 0]]},
                                 {"degree": 0, "coeffs": [[1]]}, {"degree": -1, "coeffs": []}])
def test_json_rejects(doc):
    with pytest.raises(SpecError):
        EntireFn.from_json(doc)


def test_rejects_non_finite():
    with pytest.raises(SpecError):
        EntireFn([1, np.inf])


# --- evaluation ---------------------------------------------------------------------------

@pytest.mark.parametrize("z", [0, 1, 2.5j, -3 + 1j])
def test_eval_constant(z):
    assert eval_entire(ONE, z) == 1


def test_eval_e1_at_origin():
    assert eval_entire(EntireFn.basis(1), 0) == 0


def test_eval_e2_at_one():
    assert eval_entire(EntireFn.basis(2), 1) == pytest.approx(math.sqrt(math.pi ** 2 / 2), rel=1e-15)


def test_eval_vectorised():
    z = np.array([0.5, 1j, -1])
    F = EntireFn([1, 1, 1])
    out = eval_entire(F, z)
    assert np.allclose(out, [eval_entire(F, w) for w in z], rtol=1e-15)


def test_eval_overflow_guard():
    with pytest.raises(PreconditionError):
        eval_entire(ONE, 8.5)
    eval_entire(ONE, 8.0)


# --- quadrature ------------------------------------------------------------------------------

def test_basis_orthonormal():
    basis = [EntireFn.basis(n) for n in range(7)]
    gram = np.array([[fock_inner(a, b) for b in basis] for a in basis])
    assert np.max(np.abs(gram - np.eye(7))) <= 1e-8


def test_fock_norm_zero():
    assert fock_norm(EntireFn([0, 0]), 2) == 0.0


@pytest.mark.parametrize("n", [0, 1, 4, 6])
def test_fock_norm_basis(n):
    # int_0^inf e^{-pi r^2} r^{2n} pi^n/n! 2 pi r dr = 1
    assert fock_norm(EntireFn.basis(n), 2) == pytest.approx(1.0, abs=1e-8)


def test_fock_norm_constant_p():
    # int e^{-p pi |z|^2 / 2} dz = 2 / p
    for p in (1.0, 2.0, 3.5):
        assert fock_norm(ONE, p) == pytest.approx((2 / p) ** (1 / p), rel=1e-9)


def test_fock_norm_tail_guard():
    with pytest.raises(PreconditionError):
        fock_norm(ONE, 2, FockGrid(r_max=2.0))


def test_fock_norm_rejects_p():
    with pytest.raises(SpecError):
        fock_norm(ONE, 0.5)


@given(entire)
def test_fock_norm_two_is_coefficient_norm(F):
    assert fock_norm(F, 2) == pytest.approx(F.l2(), rel=1e-8)


# --- beta ------------------------------------------------------------------------------------------

def test_beta_identity():
    F = EntireFn([1, -2j, 0.5])
    assert np.allclose(beta_shift(F, 0, 1, degree=2).coeffs, F.coeffs, rtol=0, atol=1e-15)


@pytest.mark.parametrize("z", [1, 1j, cmath.exp(0.4j)])
def test_beta_unitary_on_one(z):
    assert fock_norm(beta_shift(ONE, z, 1, degree=48), 2) == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_beta_coefficient_of_one(r):
    B = beta_shift(ONE, r * cmath.exp(0.9j), cmath.exp(0.3j), degree=80)
    assert abs(fock_inner(ONE, B)) == pytest.approx(math.exp(-math.pi * r * r / 2), abs=1e-8)


def test_beta_matches_formula():
    rng = np.random.default_rng(7)
    F = EntireFn(rng.normal(size=5) + 1j * rng.normal(size=5))
    z, tau = 0.6 - 0.8j, cmath.exp(2.1j)
    B = beta_shift(F, z, tau, degree=64)
    w = np.sqrt(rng.uniform(0, 4, 10)) * np.exp(2j * np.pi * rng.uniform(size=10))
    direct = tau * np.exp(np.pi * z * w) * eval_entire(F, w - np.conj(z)) * math.exp(-math.pi * abs(z) ** 2 / 2)
    assert np.max(np.abs(eval_entire(B, w) - direct)) <= 1e-6


def test_beta_truncation_guard():
    with pytest.raises(PreconditionError):
        beta_shift(ONE, 1.0, 1, degree=5)


@pytest.mark.parametrize("kwargs", [dict(degree=1), dict(degree=None), dict(degree=8, tau=2.0)])
def test_beta_rejects(kwargs):
    with pytest.raises(SpecError):
        beta_shift(EntireFn([1, 1, 1]), 0.1, **kwargs)


@given(entire, disk(1.0), phase)
def test_beta_unitary(F, z, tau):
    B = beta_shift(F, z, tau, degree=F.degree + 48)
    assert fock_norm(B, 2) == pytest.approx(fock_norm(F, 2), abs=1e-6 * max(1.0, F.l2()))


# --- representation coefficient and kernel -----------------------------------------------------------

def test_rep_coeff_closed_forms():
    assert fock_rep_coeff(ONE, 0) == 1.0
    assert fock_rep_coeff(ONE, cmath.exp(1.1j)) == pytest.approx(math.exp(-math.pi / 2), rel=1e-15)


def test_rep_coeff_is_beta_coefficient():
    # |<F, beta(conj z, 1) 1>| by quadrature equals |F(z)| e^{-pi |z|^2 / 2}
    rng = np.random.default_rng(11)
    F = EntireFn(rng.normal(size=5) + 1j * rng.normal(size=5))
    for _ in range(5):
        z = complex(*rng.uniform(-1.0, 1.0, 2))
        quad = abs(fock_inner(F, beta_shift(ONE, np.conj(z), 1, degree=64)))
        assert fock_rep_coeff(F, z) == pytest.approx(quad, abs=1e-6)


@given(entire, st.lists(disk(1.5), min_size=5, max_size=5))
def test_reproducing_kernel(F, xis):
    for xi in xis:
        assert fock_inner(F, kernel_fn(xi, 64)) == pytest.approx(eval_entire(F, xi), abs=1e-6 * max(1, F.l2()))


@settings(max_examples=25)
@given(entire, st.sampled_from([2.0, 3.0, 4.0]))
def test_field_norm_equals_fock_norm(F, p):
    field = fock_field(F, GRID)
    ref = fock_rep_coeff(F, GRID.points())
    assert np.max(np.abs(np.abs(field.values) - ref)) <= 1e-12 * np.max(ref)
    assert mixed_norm(field, NormSpec(p, p)) == pytest.approx(fock_norm(F, p), rel=1e-6)
