"""Unitary representations of finite groups and the bracket map.

Vectors of H are plain length-``d`` complex arrays.  For representations
coming from a group action on a weighted finite set, vectors are stored in
measure-flattened coordinates ``u(x) = sqrt(mu(x)) phi(x)`` so that every
inner product is the standard one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import vnalg
from .errors import InvalidAction, NotHomomorphism, NotUnitary, OrbitFrameError
from .groups import FiniteGroup

TOL = vnalg.TOL


def inner(x, y) -> complex:
    """``<x, y>``, linear in ``x`` and conjugate-linear in ``y``."""
    return complex(np.vdot(y, x))


@dataclass(frozen=True, eq=False)
class Representation:
    group: FiniteGroup
    matrices: np.ndarray  # (n, d, d)
    unitarity_defect: float = 0.0
    homomorphism_defect: float = 0.0

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]

    def __call__(self, g) -> np.ndarray:
        return self.matrices[int(g)]

    def act(self, g, v) -> np.ndarray:
        return self.matrices[int(g)] @ np.asarray(v, dtype=complex)

    def orbit(self, v) -> np.ndarray:
        """``(d, n)`` matrix whose column ``g`` is ``Pi(g) v``."""
        return np.einsum("gij,j->ig", self.matrices, np.asarray(v, dtype=complex))


def make_representation(group: FiniteGroup, matrices, tol: float = TOL) -> Representation:
    """Validate unitarity and the homomorphism law.

    Raises :class:`NotUnitary` or :class:`NotHomomorphism` with the offending
    element(s) and defect.
    """
    mats = np.asarray(matrices, dtype=complex)
    n = group.order
    if mats.ndim != 3 or mats.shape[0] != n or mats.shape[1] != mats.shape[2]:
        raise OrbitFrameError(f"expected {n} square matrices of equal size, got shape {mats.shape}")
    d = mats.shape[1]
    eye = np.eye(d)
    worst_u = 0.0
    for g in range(n):
        defect = float(np.linalg.norm(mats[g].conj().T @ mats[g] - eye, 2))
        worst_u = max(worst_u, defect)
        if defect > tol:
            raise NotUnitary(group.labels[g], defect)
    worst_h = float(np.linalg.norm(mats[group.identity] - eye, 2))
    if worst_h > tol:
        raise NotHomomorphism(group.labels[group.identity], group.labels[group.identity], worst_h)
    prods = np.einsum("aij,bjk->abik", mats, mats)
    target = mats[group.cayley]
    defects = np.abs(prods - target).max(axis=(2, 3))
    a, b = np.unravel_index(np.argmax(defects), defects.shape)
    worst_h = max(worst_h, float(defects[a, b]))
    if defects[a, b] > tol:
        raise NotHomomorphism(group.labels[a], group.labels[b], defects[a, b])
    mats.setflags(write=False)
    return Representation(group, mats, worst_u, worst_h)


def left_regular(group: FiniteGroup) -> Representation:
    return make_representation(group, vnalg.lambda_all(group))


def right_regular(group: FiniteGroup) -> Representation:
    return make_representation(group, vnalg.rho_all(group))


def trivial_representation(group: FiniteGroup, dim: int = 1) -> Representation:
    return make_representation(group, np.broadcast_to(np.eye(dim), (group.order, dim, dim)))


def direct_sum(*reps: Representation) -> Representation:
    group = reps[0].group
    d = sum(r.dim for r in reps)
    mats = np.zeros((group.order, d, d), dtype=complex)
    k = 0
    for r in reps:
        mats[:, k:k + r.dim, k:k + r.dim] = r.matrices
        k += r.dim
    return make_representation(group, mats)


def conjugate(rep: Representation, unitary) -> Representation:
    """``U Pi(g) U^*`` for a unitary ``U``."""
    U = np.asarray(unitary, dtype=complex)
    return make_representation(rep.group, U[None] @ rep.matrices @ U.conj().T[None])


# --- group actions ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GroupAction:
    """Action ``sigma`` of a finite group on ``{0..m-1}`` with weights.

    ``perms[g, x] = sigma_g(x)``; ``jacobian[g, x] = J(g, x)`` with
    ``mu(sigma_g(x)) = J(g, x) mu(x)``.
    """
    group: FiniteGroup
    perms: np.ndarray
    jacobian: np.ndarray
    measure: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.perms.shape[1]

    def orbits(self) -> list[list[int]]:
        return _orbits(self.perms)

    def to_flat(self, phi) -> np.ndarray:
        """Function values -> measure-flattened coordinates."""
        return np.sqrt(self.measure) * np.asarray(phi, dtype=complex)

    def from_flat(self, u) -> np.ndarray:
        return np.asarray(u, dtype=complex) / np.sqrt(self.measure)


def make_action(group: FiniteGroup, perms, jacobian=None, measure=None, tol: float = TOL) -> GroupAction:
    """Validate a finite action and its Jacobian cocycle.

    With only ``jacobian`` given, the measure is reconstructed orbitwise from
    the cocycle (value 1 at the smallest point of each orbit).  With only
    ``measure`` given the Jacobian is its Radon-Nikodym ratio.  Neither means
    counting measure.
    """
    P = np.asarray(perms, dtype=np.int64)
    n = group.order
    if P.ndim != 2 or P.shape[0] != n:
        raise InvalidAction(f"perms must have one row per group element, got shape {P.shape}")
    m = P.shape[1]
    target = np.arange(m)
    for g in range(n):
        if not np.array_equal(np.sort(P[g]), target):
            raise InvalidAction(f"sigma_{group.labels[g]} is not a permutation")
    if not np.array_equal(P[group.identity], target):
        raise InvalidAction("identity does not act trivially")
    # sigma_a(sigma_b(x)) == sigma_ab(x)
    comp = np.take_along_axis(np.broadcast_to(P[:, None, :], (n, n, m)), np.broadcast_to(P[None, :, :], (n, n, m)), axis=2)
    bad = np.argwhere(comp != P[group.cayley])
    if bad.size:
        a, b, x = bad[0]
        raise InvalidAction(f"composition law fails for ({group.labels[a]}, {group.labels[b]}) at point {x}")

    if measure is not None:
        mu = np.asarray(measure, dtype=float)
        if mu.shape != (m,) or np.any(mu <= 0):
            raise InvalidAction("measure must be strictly positive with one entry per point")
    if jacobian is None:
        if measure is None:
            mu = np.ones(m)
        J = mu[P] / mu[None, :]
    else:
        J = np.asarray(jacobian, dtype=float)
        if J.shape != (n, m) or np.any(J <= 0):
            raise InvalidAction("jacobian must be strictly positive with shape (n, m)")
        if measure is None:
            mu = np.empty(m)
            for orb in _orbits(P):
                x0 = orb[0]
                for g in range(n):
                    mu[P[g, x0]] = J[g, x0]
    # J(ab, x) = J(a, sigma_b x) J(b, x)
    lhs = J[group.cayley]  # (n, n, m): J(ab, x)
    rhs = np.take_along_axis(np.broadcast_to(J[:, None, :], (n, n, m)), np.broadcast_to(P[None, :, :], (n, n, m)), axis=2) * J[None, :, :]
    d = np.abs(lhs - rhs)
    if d.max() > tol * max(1.0, float(np.abs(J).max()) ** 2):
        a, b, x = np.unravel_index(np.argmax(d), d.shape)
        raise InvalidAction(f"Jacobian cocycle fails for ({group.labels[a]}, {group.labels[b]}) at point {x}")
    ratio = np.abs(mu[P] / mu[None, :] - J)
    if ratio.max() > tol * max(1.0, float(np.abs(J).max())):
        raise InvalidAction("Jacobian is inconsistent with the measure")
    for arr in (P, J, mu):
        arr.setflags(write=False)
    return GroupAction(group, P, J, mu)


def _orbits(P):
    seen: set[int] = set()
    out = []
    for x in range(P.shape[1]):
        if x not in seen:
            orb = sorted(set(int(v) for v in P[:, x]))
            seen.update(orb)
            out.append(orb)
    return out


def left_translation_action(group: FiniteGroup) -> GroupAction:
    """``sigma_g(x) = g x`` on the group itself."""
    return make_action(group, group.cayley)


def coset_action(group: FiniteGroup, subgroup) -> GroupAction:
    """Left multiplication on the left cosets of ``subgroup``."""
    cosets = group.left_cosets(subgroup)
    where = {}
    for k, cs in enumerate(cosets):
        for x in cs:
            where[x] = k
    perms = np.array([[where[group.mul(g, cs[0])] for cs in cosets] for g in range(group.order)])
    return make_action(group, perms)


def action_representation(action: GroupAction, tol: float = TOL) -> Representation:
    """Representation ``Pi(g) phi(x) = J(g^-1, x)^(1/2) phi(sigma_{g^-1}(x))`` in flattened coordinates."""
    group = action.group
    m = action.size
    P, J = action.perms, action.jacobian
    root = np.sqrt(action.measure)
    mats = np.zeros((group.order, m, m), dtype=complex)
    xs = np.arange(m)
    for g in range(group.order):
        gi = group.inv(g)
        fn = np.zeros((m, m))
        fn[xs, P[gi, xs]] = np.sqrt(J[gi, xs])
        mats[g] = (root[:, None] * fn) / root[None, :]
    return make_representation(group, mats, tol)


# --- bracket ---------------------------------------------------------------

def correlation(rep: Representation, phi, psi) -> np.ndarray:
    """Sequence ``g -> <phi, Pi(g) psi>``."""
    phi = np.asarray(phi, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    if phi.shape != (rep.dim,) or psi.shape != (rep.dim,):
        raise OrbitFrameError(f"vectors must have length {rep.dim}")
    return rep.orbit(psi).conj().T @ phi


def bracket(rep: Representation, phi, psi) -> np.ndarray:
    """The operator ``[phi, psi]`` in R(G) with ``tau([phi, psi] rho(g)) = <phi, Pi(g) psi>``."""
    return vnalg.fourier_transform(rep.group, correlation(rep, phi, psi))


def random_vector(rng: np.random.Generator, d: int) -> np.ndarray:
    return rng.standard_normal(d) + 1j * rng.standard_normal(d)


def verify_bracket_properties(rep: Representation, sample_count: int = 100, tol: float = TOL, seed: int = 0) -> dict:
    """Check bracket properties I-III on seeded random vectors.

    Returns the max defect per property and an overall ``passed`` flag; all
    defects are relative to the squared norms of the vectors involved.
    """
    group = rep.group
    rng = np.random.default_rng(seed)
    rhos = vnalg.rho_all(group)
    worst = {"adjoint": 0.0, "equivariance_right": 0.0, "equivariance_left": 0.0, "positivity": 0.0, "trace_norm": 0.0, "in_algebra": 0.0}
    for _ in range(sample_count):
        x, y = random_vector(rng, rep.dim), random_vector(rng, rep.dim)
        scale = np.linalg.norm(x) * np.linalg.norm(y)
        bxy = bracket(rep, x, y)
        worst["adjoint"] = max(worst["adjoint"], np.abs(bxy.conj().T - bracket(rep, y, x)).max() / scale)
        worst["in_algebra"] = max(worst["in_algebra"], vnalg.commutator_defect(group, bxy) / scale)
        for g in range(group.order):
            r = rhos[g]
            d1 = np.abs(bracket(rep, x, rep.act(g, y)) - r @ bxy).max()
            d2 = np.abs(bracket(rep, rep.act(g, x), y) - bxy @ r.T).max()
            worst["equivariance_right"] = max(worst["equivariance_right"], d1 / scale)
            worst["equivariance_left"] = max(worst["equivariance_left"], d2 / scale)
        bxx = bracket(rep, x, x)
        nx2 = np.linalg.norm(x) ** 2
        min_eig = np.linalg.eigvalsh((bxx + bxx.conj().T) / 2)[0]
        worst["positivity"] = max(worst["positivity"], max(0.0, -min_eig) / nx2)
        worst["trace_norm"] = max(worst["trace_norm"], abs(vnalg.lp_norm(group, bxx, 1) - nx2) / nx2)
    worst = {k: float(v) for k, v in worst.items()}
    return {"samples": sample_count, "defects": worst, "passed": all(v <= tol for v in worst.values())}


def random_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    """Haar-distributed unitary via QR with phase correction."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph[None, :]


def random_representation(group: FiniteGroup, rng: np.random.Generator, max_dim: int = 16) -> Representation:
    """Random unitary representation of dimension at most ``max_dim``.

    A direct sum of permutation representations on cosets of random cyclic
    subgroups (and trivial pieces), conjugated by a Haar-random unitary.
    """
    pieces = []
    d = 0
    for _ in range(8):
        g = int(rng.integers(group.order))
        act = coset_action(group, group.cyclic_subgroup(g))
        if act.size == 1 or d + act.size > max_dim:
            continue
        pieces.append(action_representation(act))
        d += act.size
        if rng.random() < 0.4:
            break
    if d < max_dim and (not pieces or rng.random() < 0.5):
        pieces.append(trivial_representation(group))
        d += 1
    rep = direct_sum(*pieces)
    return conjugate(rep, random_unitary(rng, rep.dim))
