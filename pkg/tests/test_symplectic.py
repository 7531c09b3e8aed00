import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from antilinear import core, symplectic
from antilinear import sampling as smp
from antilinear.core import LinOp
from antilinear.decomp import OpClass, classify, fixed_real_subspace
from antilinear.errors import (
    CommutationError,
    NotClosedError,
    NotConjugationError,
    NotLagrangianError,
    SamplingTooCoarse,
)

TAU = core.pauli_basis().tau
seeds = st.integers(0, 2**32 - 1)
P = LinOp([[1, 0], [0, 0]])


def _line(h):
    h = LinOp(np.asarray(h, dtype=complex))
    return symplectic.make_acq_line(core.standard_conjugation(h.dim), h)


def _real_symmetric(d, rng):
    a = rng.normal(size=(d, d))
    return LinOp(a + a.T)


# --- acq-lines --------------------------------------------------------------------

def test_half_identity_is_phase_line():
    line = _line(np.eye(3) / 2)
    for t in (0.3, 1.1, 2.9):
        assert line(t).allclose(line.base * np.exp(1j * t))


def test_zero_generator_is_constant():
    line = _line(np.zeros((2, 2)))
    assert line(1.234).allclose(line.base)


def test_generator_loop_formula():
    line = _line(P.mat)
    t = 0.8
    np.testing.assert_allclose(line(t).mat, np.diag([np.exp(2j * t), 1]), atol=1e-14)
    assert symplectic.is_closed_line(line)


@given(seeds, st.integers(1, 5))
def test_samples_are_conjugations(seed, d):
    rng = np.random.default_rng(seed)
    line = _line(_real_symmetric(d, rng).mat)
    for t in rng.uniform(-3, 3, size=3):
        assert classify(line(t), 1e-8) is OpClass.CONJUGATION


@given(seeds, st.integers(1, 5))
def test_acq_line_agrees_with_unitary_transport(seed, d):
    rng = np.random.default_rng(seed)
    h = _real_symmetric(d, rng)
    line = _line(h.mat)
    t = rng.uniform(-2, 2)
    u = LinOp(core.funm_hermitian(h.mat, lambda w: np.exp(1j * t * w)))
    transported = core.compose(core.compose(u, line.base), u.H)
    assert transported.allclose(line(t), 1e-9)


def test_derivative_matches_finite_difference(rng):
    line = _line(_real_symmetric(3, rng).mat)
    t, h = 0.4, 1e-6
    fd = (line(t + h).mat - line(t - h).mat) / (2 * h)
    np.testing.assert_allclose(line.derivative(t).mat, fd, atol=1e-6)


def test_make_acq_line_validation(rng):
    with pytest.raises(NotConjugationError):
        symplectic.make_acq_line(TAU[0], P)
    with pytest.raises(CommutationError):
        symplectic.make_acq_line(core.standard_conjugation(2), LinOp([[0, 1j], [-1j, 0]]))
    with pytest.raises(CommutationError):
        symplectic.make_acq_line(core.standard_conjugation(2), LinOp([[0, 1], [0, 0]]))


# --- quandle relation -------------------------------------------------------------

@given(seeds, st.floats(-3, 3), st.floats(-3, 3))
def test_quandle_on_acq_line(seed, r, s):
    rng = np.random.default_rng(seed)
    line = _line(_real_symmetric(3, rng).mat)
    assert symplectic.quandle_check(line(r), line((r + s) / 2), line(s), 1e-9)


def test_quandle_trivial(rng):
    c = smp.random_conjugation(3, rng)
    assert symplectic.quandle_check(c, c, c)


def test_quandle_generic_false(rng):
    hits = sum(
        symplectic.quandle_check(*(smp.random_conjugation(3, rng) for _ in range(3)), 1e-6) for _ in range(20)
    )
    assert hits == 0


# --- Maslov index -----------------------------------------------------------------

def test_generator_loop_index_one():
    curve = _line(P.mat).curve(0, np.pi, 400, closed=True)
    value = symplectic.maslov_integral(curve)
    assert abs(value - 1) < 0.02
    assert symplectic.maslov_index(curve) == 1


def test_repeated_endpoint_is_ignored():
    line = _line(P.mat)
    ts = np.linspace(0, np.pi, 401)
    curve = symplectic.ConjugationCurve(tuple(line(t) for t in ts), True)
    assert symplectic.maslov_index(curve) == 1


def test_constant_loop_zero(rng):
    c = smp.random_conjugation(4, rng)
    assert symplectic.maslov_index(symplectic.ConjugationCurve((c,) * 10)) == 0


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4))
def test_integer_loops(ns):
    curve = _line(np.diag(ns)).curve(0, np.pi, 400, closed=True)
    assert symplectic.maslov_index(curve, max_residual=0.02) == sum(ns)


def _det_winding(curve):
    # oracle: the winding of det(M_t) divided by 2 counts the index
    dets = np.array([np.linalg.det(s.mat) for s in curve.samples] + [np.linalg.det(curve.samples[0].mat)])
    steps = np.angle(dets[1:] / dets[:-1])
    return steps.sum() / (2 * np.pi)


def test_index_matches_det_winding(rng):
    for _ in range(5):
        u = smp.random_unitary(3, rng)
        theta0 = core.AntiOp(u @ u.T)
        n = rng.integers(-2, 3, size=3)
        h = LinOp(u @ np.diag(n) @ u.conj().T)
        curve = symplectic.make_acq_line(theta0, h).curve(0, np.pi, 300, closed=True)
        assert symplectic.maslov_index(curve) == round(_det_winding(curve)) == n.sum()


def test_coarse_sampling_is_reported():
    curve = _line(np.diag([5])).curve(0, np.pi, 12, closed=True)
    with pytest.raises(SamplingTooCoarse):
        symplectic.maslov_index(curve, max_residual=0.02)


def test_open_curve_rejected():
    curve = _line(P.mat).curve(0, 1, 10, closed=False)
    with pytest.raises(NotClosedError):
        symplectic.maslov_integral(curve)


# --- lengths ----------------------------------------------------------------------

def test_shortest_closed_line_length():
    assert np.isclose(symplectic.curve_length(_line(P.mat), 0, np.pi), 2 * np.pi)


def test_zero_generator_length():
    assert symplectic.curve_length(_line(np.zeros((2, 2))), 0, np.pi) == 0


def test_diag_3_4_length():
    assert np.isclose(symplectic.curve_length(_line(np.diag([3, 4, 0])), 0, np.pi), 10 * np.pi)


def test_length_matches_polygon(rng):
    line = _line(_real_symmetric(3, rng).mat)
    pts = [line(t).mat for t in np.linspace(0, 1, 4001)]
    poly = sum(np.linalg.norm(b - a) for a, b in zip(pts, pts[1:]))
    assert np.isclose(poly, symplectic.curve_length(line, 0, 1), rtol=1e-6)


# --- conjugations and real subspaces ----------------------------------------------

def test_standard_basis_gives_standard_conjugation():
    assert symplectic.conjugation_from_real_subspace(list(np.eye(3))).allclose(core.standard_conjugation(3))


def test_tau3_from_its_real_subspace():
    basis = [np.array([1, 1]), np.array([1j, -1j])]
    assert symplectic.conjugation_from_real_subspace(basis).allclose(TAU[3])


@given(seeds, st.integers(1, 5))
def test_round_trip_via_real_subspace(seed, d):
    rng = np.random.default_rng(seed)
    c = smp.random_conjugation(d, rng)
    back = symplectic.conjugation_from_real_subspace(fixed_real_subspace(c))
    assert back.allclose(c, 1e-8)


def test_real_gram_basis_is_accepted():
    # (1, i) and (1, 0) have a real scalar product, so their real span is Lagrangian
    c = symplectic.conjugation_from_real_subspace([np.array([1, 1j]), np.array([1, 0])])
    np.testing.assert_allclose(c(np.array([1, 1j])), [1, 1j], atol=1e-12)


def test_non_lagrangian_rejected():
    with pytest.raises(NotLagrangianError):
        symplectic.conjugation_from_real_subspace([np.array([1, 0]), np.array([1j, 0])])
    with pytest.raises(NotLagrangianError):
        symplectic.conjugation_from_real_subspace([np.array([1, 0]), np.array([2, 0])])
    with pytest.raises(NotLagrangianError):
        symplectic.conjugation_from_real_subspace([np.array([1, 0])])
