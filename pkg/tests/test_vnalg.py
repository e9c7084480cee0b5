import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orbitframe import vnalg
from orbitframe.errors import GroupMismatch, NotHermitian, NotInAlgebra, NotPSD
from orbitframe.groups import build_cyclic, build_dihedral, build_direct_product

D3 = build_dihedral(3)
Z2 = build_cyclic(2)
Z4 = build_cyclic(4)
GROUPS = [build_cyclic(5), D3, build_dihedral(4), build_direct_product(build_cyclic(2), build_cyclic(3)),
          build_direct_product(D3, build_cyclic(4))]
IDS = ["Z5", "D3", "D4", "Z2xZ3", "D3xZ4"]

# adjoint right regular matrices of a and b, written out by hand in the order e, a, a2, b, ab, a2b
RHO_A_STAR = np.array([
    [0, 0, 1, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
    [0, 0, 0, 1, 0, 0]])
RHO_B_STAR = np.array([
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0]])


def rand_seq(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def rand_alg(rng, G):
    return vnalg.fourier_transform(G, rand_seq(rng, G.order))


def rand_psd_alg(rng, G):
    F = rand_alg(rng, G)
    return F.conj().T @ F


def test_regular_matrices_small():
    assert np.array_equal(vnalg.rho(Z2, 1), [[0, 1], [1, 0]])
    assert np.array_equal(vnalg.rho(D3, D3.identity), np.eye(6))
    assert np.array_equal(vnalg.rho(D3, 1).T, RHO_A_STAR)
    assert np.array_equal(vnalg.rho(D3, 3).T, RHO_B_STAR)


def test_rho_entries_follow_definition():
    for g in range(D3.order):
        R, L = vnalg.rho(D3, g), vnalg.lambda_(D3, g)
        for x in range(D3.order):
            assert R[D3.mul(x, D3.inv(g)), x] == 1
            assert L[D3.mul(g, x), x] == 1


@pytest.mark.parametrize("G", GROUPS, ids=IDS)
def test_homomorphism_and_commutant(G):
    R, L = vnalg.rho_all(G), vnalg.lambda_all(G)
    for g in range(G.order):
        for h in range(G.order):
            assert np.array_equal(R[g] @ R[h], R[G.mul(g, h)])
            assert np.array_equal(L[g] @ L[h], L[G.mul(g, h)])
            assert np.array_equal(R[g] @ L[h], L[h] @ R[g])


def test_fourier_transform_examples():
    assert np.array_equal(vnalg.fourier_transform(D3, vnalg.delta(D3, 0)), np.eye(6))
    for g in range(6):
        assert np.array_equal(vnalg.fourier_transform(D3, vnalg.delta(D3, g)), vnalg.rho(D3, g).T)
    assert np.array_equal(vnalg.fourier_transform(Z2, [2, 1]), [[2, 1], [1, 2]])


@pytest.mark.parametrize("G", GROUPS, ids=IDS)
def test_fourier_transform_equals_literal_sum(G):
    rng = np.random.default_rng(1)
    f = rand_seq(rng, G.order)
    literal = sum(f[g] * vnalg.rho(G, g).conj().T for g in range(G.order))
    assert np.allclose(vnalg.fourier_transform(G, f), literal, atol=1e-13)


def test_fourier_coefficients_examples():
    for g in range(6):
        assert np.allclose(vnalg.fourier_coefficients(D3, vnalg.rho(D3, g).T), vnalg.delta(D3, g))
    assert np.allclose(vnalg.fourier_coefficients(D3, np.eye(6)), vnalg.delta(D3, 0))
    assert np.allclose(vnalg.fourier_coefficients(D3, np.ones((6, 6))), np.ones(6))
    with pytest.raises(NotInAlgebra):
        vnalg.fourier_coefficients(D3, vnalg.lambda_(D3, 1))


def test_trace_examples():
    assert vnalg.trace_tau(D3, np.eye(6)) == 1
    for g in range(1, 6):
        assert vnalg.trace_tau(D3, vnalg.rho(D3, g)) == 0
    rng = np.random.default_rng(2)
    f = rand_seq(rng, 6)
    F = vnalg.fourier_transform(D3, f)
    assert np.isclose(vnalg.trace_tau(D3, F.conj().T @ F), np.vdot(f, f))


def test_convolution_examples():
    rng = np.random.default_rng(3)
    g = rand_seq(rng, 6)
    assert np.allclose(vnalg.convolve(D3, g, vnalg.delta(D3, 0)), g)
    Z3 = build_cyclic(3)
    assert np.allclose(vnalg.convolve(Z3, vnalg.delta(Z3, 1), vnalg.delta(Z3, 1)), vnalg.delta(Z3, 2))
    with pytest.raises(GroupMismatch):
        vnalg.convolve(D3, g, np.ones(5))


@pytest.mark.parametrize("G", [Z4] + GROUPS, ids=["Z4"] + IDS)
def test_composition_and_convolution(G):
    rng = np.random.default_rng(4)
    for _ in range(5):
        F, H = rand_alg(rng, G), rand_alg(rng, G)
        Fh, Hh = vnalg.fourier_coefficients(G, F), vnalg.fourier_coefficients(G, H)
        assert np.allclose(vnalg.fourier_coefficients(G, F @ H), vnalg.convolve(G, Hh, Fh), atol=1e-10)
        g = rand_seq(rng, G.order)
        assert np.allclose(F @ g, vnalg.convolve(G, g, Fh), atol=1e-10)


@pytest.mark.parametrize("G", GROUPS, ids=IDS)
def test_plancherel_round_trip_and_intertwining(G):
    rng = np.random.default_rng(5)
    f = rand_seq(rng, G.order)
    F = vnalg.fourier_transform(G, f)
    assert np.isclose(vnalg.lp_norm(G, F, 2), np.linalg.norm(f))
    assert np.allclose(vnalg.fourier_coefficients(G, F), f)
    assert vnalg.is_in_algebra(G, F)
    for g in range(G.order):
        lhs = vnalg.fourier_transform(G, vnalg.lambda_(G, g) @ f)
        assert np.allclose(lhs, F @ vnalg.rho(G, g).conj().T)


def test_algebra_membership():
    assert all(vnalg.is_in_algebra(D3, vnalg.rho(D3, g)) for g in range(6))
    assert not vnalg.is_in_algebra(D3, vnalg.lambda_(D3, 1))
    assert not vnalg.is_in_algebra(Z2, np.diag([1.0, 2.0]))


def test_lp_norm_examples():
    for p in (1, 2, 3.5, np.inf):
        assert np.isclose(vnalg.lp_norm(D3, vnalg.rho(D3, 4), p), 1)
    J = np.ones((6, 6))
    assert np.isclose(vnalg.lp_norm(D3, J, 1), 1)
    assert np.isclose(vnalg.lp_norm(D3, J, 2), np.sqrt(6))
    assert np.isclose(vnalg.lp_norm(D3, J, np.inf), 6)
    rng = np.random.default_rng(6)
    F = rand_alg(rng, D3)
    assert np.isclose(vnalg.lp_norm(D3, F, 2) ** 2, np.sum(np.abs(vnalg.fourier_coefficients(D3, F)) ** 2))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_norm_monotonicity(seed):
    rng = np.random.default_rng(seed)
    F = rand_alg(rng, D3)
    H = F + F.conj().T
    norms = [vnalg.lp_norm(D3, H, p) for p in (1, 1.5, 2, 4, np.inf)]
    assert all(a <= b * (1 + 1e-10) for a, b in zip(norms, norms[1:]))


def test_support_projection_examples():
    assert np.allclose(vnalg.support_projection(np.eye(6)), np.eye(6))
    assert np.allclose(vnalg.support_projection(np.zeros((6, 6))), 0)
    assert np.allclose(vnalg.support_projection(np.ones((6, 6))), np.ones((6, 6)) / 6)
    with pytest.raises(NotHermitian):
        vnalg.support_projection(vnalg.rho(D3, 1))


@pytest.mark.parametrize("G", GROUPS, ids=IDS)
def test_support_minimality(G):
    rng = np.random.default_rng(7)
    f = rand_seq(rng, G.order)
    f[G.order // 2:] = 0  # typically rank deficient for nonabelian pieces
    F = vnalg.fourier_transform(G, f)
    F = F.conj().T @ F
    s = vnalg.support_projection(F)
    assert np.allclose(s @ F, F, atol=1e-10) and np.allclose(F @ s, F, atol=1e-10)
    assert round(np.trace(s).real) == vnalg.numerical_rank(F)
    assert vnalg.is_in_algebra(G, s)


def test_psd_sqrt_examples():
    assert np.allclose(vnalg.psd_sqrt(4 * np.eye(3), "sqrt"), 2 * np.eye(3))
    q = np.ones((6, 6)) / 6
    assert np.allclose(vnalg.psd_sqrt(q, "pinv"), q)
    assert np.allclose(vnalg.psd_sqrt([[5, 4], [4, 5]], "pinv"), np.array([[5, -4], [-4, 5]]) / 9)
    with pytest.raises(NotPSD):
        vnalg.psd_sqrt(np.diag([1.0, -1.0]))
    with pytest.raises(ValueError):
        vnalg.psd_sqrt(np.eye(2), "cube")


@pytest.mark.parametrize("G", GROUPS, ids=IDS)
def test_psd_sqrt_identities(G):
    rng = np.random.default_rng(8)
    W = rand_psd_alg(rng, G)
    r = vnalg.psd_sqrt(W, "sqrt")
    assert np.allclose(r @ r, W, atol=1e-10 * np.linalg.norm(W, 2))
    ip = vnalg.psd_sqrt(W, "pinv_sqrt")
    assert np.allclose(ip @ W @ ip, vnalg.support_projection(W), atol=1e-9)
    for M in (r, ip, vnalg.psd_sqrt(W, "pinv")):
        assert vnalg.is_in_algebra(G, M, 1e-9 * max(1, np.linalg.norm(M, 2)))
        assert np.allclose(M @ W, W @ M, atol=1e-9 * np.linalg.norm(W, 2) * max(1, np.linalg.norm(M, 2)))


def test_weighted_inner():
    rng = np.random.default_rng(9)
    F, H = rand_alg(rng, Z4), rand_alg(rng, Z4)
    assert np.isclose(vnalg.weighted_inner(Z4, np.eye(4), F, H), vnalg.l2_inner(Z4, F, H))
    W = rand_psd_alg(rng, Z4)
    root = vnalg.psd_sqrt(W, "sqrt")
    assert np.isclose(vnalg.weighted_norm(Z4, W, F) ** 2, vnalg.lp_norm(Z4, root @ F, 2) ** 2)
    q = np.ones((4, 4)) / 4
    X = q @ rand_alg(rng, Z4)
    assert vnalg.weighted_norm(Z4, q, X) > 0
    assert np.isclose(vnalg.weighted_norm(Z4, q, (np.eye(4) - q) @ F), 0)
    with pytest.raises(NotPSD):
        vnalg.weighted_inner(Z4, -np.eye(4), F, H)


def test_spectral_decomposition_reconstructs():
    rng = np.random.default_rng(10)
    W = rand_psd_alg(rng, D3)
    dec = vnalg.spectral_decomposition(W)
    assert np.all(np.diff(dec.eigenvalues) <= 0)
    assert np.allclose(dec.apply(lambda w: w), W)
    assert dec.rank == vnalg.numerical_rank(W)
