import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from antilinear import core, modular
from antilinear import sampling as smp
from antilinear.core import LinOp, compose
from antilinear.decomp import OpClass, classify
from antilinear.epr_teleport import BipartiteVector, jmaps, reduced_densities, smap_ab, smap_ba, twisted_product
from antilinear.errors import IncompatibleError, NotPositiveError, NotSeparatingError, NotUnimodularError

seeds = st.integers(0, 2**32 - 1)


def _psi(d, rng):
    return BipartiteVector(smp.random_matrix(d, rng=rng))


# --- geometric mean ---------------------------------------------------------------

def test_mean_with_itself(rng):
    a = smp.random_positive(4, rng)
    assert modular.geometric_mean(a, a).allclose(a, 1e-9)


def test_mean_with_identity(rng):
    b = smp.random_positive(3, rng)
    want = core.funm_hermitian(b.mat, np.sqrt)
    np.testing.assert_allclose(modular.geometric_mean(core.identity(3), b).mat, want, atol=1e-10)


@given(seeds, st.integers(1, 6))
def test_mean_properties(seed, d):
    rng = np.random.default_rng(seed)
    a, b = smp.random_positive(d, rng), smp.random_positive(d, rng)
    c = modular.geometric_mean(a, b)
    # C A^{-1} C = B, symmetry and the determinant identity
    np.testing.assert_allclose(c.mat @ np.linalg.solve(a.mat, c.mat), b.mat, atol=1e-9)
    assert modular.geometric_mean(b, a).allclose(c, 1e-9)
    want = np.sqrt(np.linalg.det(a.mat).real * np.linalg.det(b.mat).real)
    assert np.isclose(np.linalg.det(c.mat).real, want, rtol=1e-9)


def test_mean_rejects_non_positive():
    with pytest.raises(NotPositiveError):
        modular.geometric_mean(np.diag([1.0, -1.0]), np.eye(2))
    with pytest.raises(NotPositiveError):
        modular.geometric_mean(np.array([[1.0, 1.0], [0.0, 1.0]]), np.eye(2))


# --- metric involutions -----------------------------------------------------------

def test_metric_involution_identity_is_adjoint(rng):
    x = smp.random_matrix(3, rng=rng)
    np.testing.assert_allclose(modular.metric_involution(np.eye(3))(x).mat, x.conj().T)


@given(seeds, st.integers(1, 5))
def test_metric_involution_is_involution(seed, d):
    rng = np.random.default_rng(seed)
    s = modular.metric_involution(smp.random_positive(d, rng))
    x = smp.random_matrix(d, rng=rng)
    np.testing.assert_allclose(s(s(x)).mat, x, atol=1e-9)


@given(seeds, st.integers(1, 6))
def test_quandle_relation(seed, d):
    rng = np.random.default_rng(seed)
    a, b = smp.random_positive(d, rng), smp.random_positive(d, rng)
    sa, sb = modular.metric_involution(a), modular.metric_involution(b)
    sc = modular.metric_involution(modular.geometric_mean(a, b))
    x = smp.random_matrix(d, rng=rng)
    lhs, rhs = sa(sc(x)).mat, sc(sb(x)).mat
    assert np.linalg.norm(lhs - rhs) <= 1e-9 * np.linalg.norm(lhs)


def test_metric_line_endpoints_and_midpoint(rng):
    a, b = smp.random_positive(3, rng), smp.random_positive(3, rng)
    x = smp.random_matrix(3, rng=rng)
    np.testing.assert_allclose(modular.metric_acq_line(a, b, 0)(x).mat, modular.metric_involution(a)(x).mat, atol=1e-9)
    np.testing.assert_allclose(modular.metric_acq_line(a, b, 1)(x).mat, modular.metric_involution(b)(x).mat, atol=1e-9)
    assert modular.metric_acq_point(a, b, 0.5).allclose(modular.geometric_mean(a, b), 1e-9)
    r, t = 0.2, 1.3
    mid = modular.metric_acq_point(a, b, (r + t) / 2)
    cr, ct = modular.metric_acq_point(a, b, r), modular.metric_acq_point(a, b, t)
    assert mid.allclose(modular.geometric_mean(cr, ct), 1e-9)


def test_metric_line_constant_for_equal_ends(rng):
    a = smp.random_positive(3, rng)
    assert modular.metric_acq_point(a, a, 0.7).allclose(a, 1e-9)


# --- modular objects of bipartite vectors -----------------------------------------

def test_maximally_entangled():
    t = modular.modular_from_bipartite(BipartiteVector.maximally_entangled(3))
    np.testing.assert_allclose(t.delta.mat, np.eye(9), atol=1e-12)
    assert t.s.allclose(t.j)


@pytest.mark.parametrize("p", [0.1, 0.3, 0.45])
def test_two_level_spectrum(p, rng):
    u, w = smp.random_unitary(2, rng), smp.random_unitary(2, rng)
    c = u @ np.diag(np.sqrt([p, 1 - p])) @ w
    t = modular.modular_from_bipartite(BipartiteVector(c))
    want = sorted([1, p / (1 - p), (1 - p) / p, 1])
    np.testing.assert_allclose(np.linalg.eigvalsh(t.delta.mat), want, rtol=1e-9)


@given(seeds, st.integers(1, 5))
def test_modular_identities(seed, d):
    rng = np.random.default_rng(seed)
    psi = _psi(d, rng)
    t = modular.modular_from_bipartite(psi)
    assert classify(t.j, 1e-8) is OpClass.CONJUGATION
    assert compose(t.j, t.delta.power(0.5)).allclose(t.s, 1e-9)
    np.testing.assert_allclose(compose(t.s, t.s).mat, np.eye(d * d), atol=1e-8)
    ra, rb = reduced_densities(psi)
    np.testing.assert_allclose(t.delta.mat, np.kron(ra.mat, np.linalg.inv(rb.mat)), rtol=1e-9, atol=1e-9)
    assert t.s.allclose(modular.modular_involution_closed_form(psi), 1e-8)
    a = smp.random_matrix(d, rng=rng)
    np.testing.assert_allclose(t.s((a @ psi.coeffs).reshape(-1)), (a.conj().T @ psi.coeffs).reshape(-1), atol=1e-8)


def test_normalisation_does_not_matter(rng):
    psi = _psi(3, rng)
    t1 = modular.modular_from_bipartite(psi)
    t2 = modular.modular_from_bipartite(BipartiteVector(5 * psi.coeffs))
    assert t1.s.allclose(t2.s, 1e-9)


def test_singular_vector_rejected():
    with pytest.raises(NotSeparatingError):
        modular.modular_from_bipartite(BipartiteVector(np.diag([1.0, 0.0])))
    with pytest.raises(NotSeparatingError):
        modular.modular_from_bipartite(BipartiteVector(np.ones((2, 3))))


@given(seeds, st.integers(1, 4))
def test_twisted_products_reproduce_modular_objects(seed, d):
    rng = np.random.default_rng(seed)
    psi = _psi(d, rng)
    t = modular.modular_from_bipartite(psi)
    jba, jab = jmaps(psi)
    assert twisted_product(jab, jba).allclose(t.j, 1e-9)
    ra, rb = reduced_densities(psi)
    ss = twisted_product(smap_ab(psi), smap_ba(psi))
    root = LinOp(core.funm_hermitian(np.kron(ra.mat, rb.mat), np.sqrt))
    assert ss.allclose(compose(root, t.j), 1e-9)
    # (1 (x) rho_B) Delta^{1/2} J, and Delta^{1/2} J is the adjoint of S
    one_rb = LinOp(np.kron(np.eye(d), rb.mat))
    assert ss.allclose(compose(one_rb, compose(t.delta.power(0.5), t.j)), 1e-9)
    assert ss.allclose(compose(one_rb, t.s.H), 1e-9)


# --- commutative case -------------------------------------------------------------

def test_commutative_all_ones():
    t = modular.modular_commutative([1, 1, 1])
    assert t.s.allclose(core.standard_conjugation(3))
    np.testing.assert_allclose(t.delta.mat, np.eye(3))


def test_commutative_rejects_non_unimodular():
    with pytest.raises(NotUnimodularError):
        modular.modular_commutative([1, 2])


@given(st.lists(st.floats(-np.pi, np.pi), min_size=1, max_size=5), st.data())
def test_commutative_midpoint(a1, data):
    a2 = data.draw(st.lists(st.floats(-np.pi, np.pi), min_size=len(a1), max_size=len(a1)))
    e1, e2 = np.exp(1j * np.array(a1)), np.exp(1j * np.array(a2))
    s1, s2 = modular.modular_commutative(e1).s, modular.modular_commutative(e2).s
    s = modular.commutative_midpoint(e1, e2).s
    assert compose(s1, s).allclose(compose(s, s2), 1e-9)
    np.testing.assert_allclose(modular.commutative_midpoint(e1, e2).delta.mat, np.eye(len(a1)))


# --- mean of modular triples ------------------------------------------------------

def test_geomean_equal_triples(rng):
    t = modular.modular_from_bipartite(_psi(2, rng))
    g = modular.modular_geomean(t, t)
    assert g.s.allclose(t.s, 1e-9)


def _shared_schmidt_pair(d, rng):
    u, w = smp.random_unitary(d, rng), smp.random_unitary(d, rng)
    p1, p2 = rng.uniform(0.2, 1, size=d), rng.uniform(0.2, 1, size=d)
    return (
        modular.modular_from_bipartite(BipartiteVector(u @ np.diag(p1) @ w)),
        modular.modular_from_bipartite(BipartiteVector(u @ np.diag(p2) @ w)),
    )


@pytest.mark.parametrize("d", [2, 3])
def test_geomean_commuting(d, rng):
    t1, t2 = _shared_schmidt_pair(d, rng)
    g = modular.modular_geomean(t1, t2)
    root = core.funm_hermitian(t1.delta.mat @ t2.delta.mat, np.sqrt)
    np.testing.assert_allclose(g.delta.mat, root, atol=1e-9)
    assert compose(t1.s, g.s).allclose(compose(g.s, t2.s), 1e-9)


@given(seeds, st.integers(2, 3))
def test_geomean_non_commuting(seed, d):
    rng = np.random.default_rng(seed)
    t1 = modular.modular_from_bipartite(_psi(d, rng))
    j = t1.j
    k = smp.random_hermitian(d * d, rng).mat * 0.5
    # H = K - J K J is Hermitian with J H J = -H, so exp(H) fits with J
    h = k - compose(compose(j, LinOp(k)), j).mat
    t2 = modular.triple_from_delta(j, core.funm_hermitian(h, np.exp))
    assert np.max(np.abs(t1.delta.mat @ t2.delta.mat - t2.delta.mat @ t1.delta.mat)) > 1e-3
    g = modular.modular_geomean(t1, t2)
    lhs, rhs = compose(t1.s, g.s).mat, compose(g.s, t2.s).mat
    assert np.max(np.abs(lhs - rhs)) <= 1e-9 * max(1.0, np.max(np.abs(lhs)))
    np.testing.assert_allclose(compose(g.s, g.s).mat, np.eye(d * d), atol=1e-9)


def test_geomean_needs_common_conjugation(rng):
    t1 = modular.modular_from_bipartite(_psi(2, rng))
    t2 = modular.modular_from_bipartite(_psi(2, rng))
    with pytest.raises(IncompatibleError):
        modular.modular_geomean(t1, t2)
