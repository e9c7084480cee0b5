import numpy as np
import pytest

from orbitframe import frames, oracle, vnalg
from orbitframe.errors import NotCyclic
from orbitframe.groups import build_cyclic, build_dihedral, build_direct_product
from orbitframe.models import d3_model
from orbitframe.representations import bracket, left_regular, random_representation, random_vector

Z2 = build_cyclic(2)


def test_gram_examples():
    G = build_dihedral(3)
    g = oracle.gram_bounds(frames.orbit_system(left_regular(G), [vnalg.delta(G, 0)]))
    assert np.allclose(g.eigenvalues, 1) and g.rank == 6
    m = d3_model()
    g = oracle.gram_bounds(frames.orbit_system(m.rep, [m.fixed]))
    assert np.allclose(g.eigenvalues, [6, 0, 0, 0, 0, 0]) and g.rank == 1 and np.isclose(g.A, 6)
    g = oracle.gram_bounds(frames.orbit_system(left_regular(Z2), [np.array([2.0, 1.0])]))
    assert np.allclose(g.eigenvalues, [9, 1])


def test_gram_matrix_is_psd_and_literal():
    rng = np.random.default_rng(0)
    rep = random_representation(build_dihedral(4), rng)
    s = frames.orbit_system(rep, [random_vector(rng, rep.dim) for _ in range(2)])
    G = oracle.gram_matrix(s)
    assert np.allclose(G, s.synthesis.conj().T @ s.synthesis)
    assert oracle.gram_bounds(s).eigenvalues.min() >= -1e-10


def test_dft_examples():
    Z8 = build_cyclic(8)
    assert np.allclose(oracle.dft_fiberization_bounds(Z8, vnalg.delta(Z8, 0)).fibers, 1)
    Z12 = build_cyclic(12)
    f = 2 * vnalg.delta(Z12, 0) + vnalg.delta(Z12, 1)
    k = np.arange(12)
    assert np.allclose(oracle.dft_fiberization_bounds(Z12, f).fibers, 5 + 4 * np.cos(2 * np.pi * k / 12))
    # (1, 1)/sqrt(2) has bracket 1 + rho(a): spectrum {2, 0}
    f = np.array([1.0, 1.0]) / np.sqrt(2)
    fib = oracle.dft_fiberization_bounds(Z2, f).fibers
    assert np.allclose(sorted(fib), [0, 2])
    assert np.allclose(sorted(fib), np.linalg.eigvalsh(bracket(left_regular(Z2), f, f)))


def test_dft_uses_abstract_generator():
    # Z2 x Z3 is cyclic but its element 1 does not generate it
    G = build_direct_product(build_cyclic(2), build_cyclic(3))
    rng = np.random.default_rng(1)
    f = random_vector(rng, 6)
    rep = oracle.dft_fiberization_bounds(G, f)
    assert G.element_order(rep.generator) == 6
    assert np.allclose(np.sort(rep.fibers), np.linalg.eigvalsh(bracket(left_regular(G), f, f)))
    with pytest.raises(NotCyclic):
        oracle.dft_fiberization_bounds(build_dihedral(3), np.ones(6))
    with pytest.raises(NotCyclic):
        oracle.dft_fiberization_bounds(build_direct_product(Z2, Z2), np.ones(4))


def test_biorthogonal_examples():
    m = d3_model()
    x = oracle.biorthogonal_oracle(frames.orbit_system(m.rep, [m.interior]))
    assert np.allclose(x, m.interior)
    L = left_regular(Z2)
    f = np.array([2.0, 1.0])
    x = oracle.biorthogonal_oracle(frames.orbit_system(L, [f]))
    assert np.abs(x - frames.dual_generator(L, f)).max() <= 1e-10
    assert oracle.biorthogonal_oracle(frames.orbit_system(L, [np.array([1.0, 1.0])])) is None
    with pytest.raises(ValueError):
        oracle.biorthogonal_oracle(frames.orbit_system(L, [f, f]))
