"""Helson maps: the principal isometry S_psi, orthogonal decomposition into
principal spaces, the global map U_Psi, and the Zak transform of a free action.

A Helson map sends ``phi`` in H to a finite family of operators in R(G)
(one per fiber, each with a positive weight) such that
``T[Pi(g) phi] = T[phi] rho(g)^*`` and ``||T[phi]|| = ||phi||``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import vnalg
from .errors import FiberMismatch, InvalidTiling, NotFree, NotInvariant, ZeroGenerator
from .groups import FiniteGroup
from .representations import GroupAction, Representation, action_representation, bracket, random_vector

RANK_CUTOFF = vnalg.RANK_CUTOFF
TOL = vnalg.TOL


@dataclass(frozen=True, eq=False)
class HelsonImage:
    group: FiniteGroup
    labels: tuple
    weights: np.ndarray  # (k,)
    values: np.ndarray  # (k, n, n)

    def __post_init__(self):
        if len(self.labels) < 1:
            raise FiberMismatch("a Helson image needs at least one fiber")
        if self.values.shape[0] != len(self.labels) or self.weights.shape != (len(self.labels),):
            raise FiberMismatch("labels, weights and values disagree in length")

    def norm(self) -> float:
        n = self.group.order
        # ||X||_2^2 = tau(X^* X); for X in R(G) that is ||X||_F^2 / n
        sq = [vnalg.trace_tau(self.group, v.conj().T @ v).real for v in self.values]
        return float(np.sqrt(max(np.dot(self.weights, sq), 0.0)))

    def right_multiply(self, F) -> "HelsonImage":
        return HelsonImage(self.group, self.labels, self.weights, self.values @ np.asarray(F, dtype=complex))

    def __sub__(self, other: "HelsonImage") -> "HelsonImage":
        return HelsonImage(self.group, self.labels, self.weights, self.values - other.values)

    def __add__(self, other: "HelsonImage") -> "HelsonImage":
        return HelsonImage(self.group, self.labels, self.weights, self.values + other.values)

    def pair(self, other: "HelsonImage") -> np.ndarray:
        """``sum_x w(x) other(x)^* self(x)``, the bracket recovered from two images."""
        return np.einsum("k,kji,kjl->il", self.weights, other.values.conj(), self.values)

    def flat(self) -> np.ndarray:
        """Coordinates in which the image norm is the Euclidean norm."""
        e = self.group.identity
        # tau(X^* X) = sum_j |X[j, e]|^2 for X in R(G): the column at e holds all coefficients
        return (np.sqrt(self.weights)[:, None] * self.values[:, :, e]).ravel()


# --- principal spaces ----------------------------------------------------

def _nonzero(psi, tol=1e-14):
    psi = np.asarray(psi, dtype=complex)
    if np.linalg.norm(psi) <= tol:
        raise ZeroGenerator("generator must be nonzero")
    return psi


def orbit_span_basis(rep: Representation, vectors, rel_cutoff: float = RANK_CUTOFF) -> np.ndarray:
    """Orthonormal basis (columns) of the span of all ``Pi(g) v``."""
    vectors = [np.asarray(v, dtype=complex) for v in vectors]
    if not vectors:
        return np.zeros((rep.dim, 0), dtype=complex)
    S = np.hstack([rep.orbit(v) for v in vectors])
    U, s, _ = np.linalg.svd(S, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return np.zeros((rep.dim, 0), dtype=complex)
    return U[:, s > rel_cutoff * s[0]]


def projector(basis) -> np.ndarray:
    Q = np.asarray(basis, dtype=complex)
    return Q @ Q.conj().T


def s_psi_forward(rep: Representation, psi, f, rel_cutoff: float = RANK_CUTOFF) -> np.ndarray:
    """``S_psi[sum_g f(g) Pi(g) psi] = s_[psi,psi] F_G f``."""
    psi = _nonzero(psi)
    s = vnalg.support_projection(bracket(rep, psi, psi), rel_cutoff)
    return s @ vnalg.fourier_transform(rep.group, f)


def s_psi_inverse(rep: Representation, psi, F, rel_cutoff: float = RANK_CUTOFF, tol: float = TOL) -> np.ndarray:
    """Vector ``sum_g G^(g) Pi(g) psi`` with ``G = s_[psi,psi] F``."""
    psi = _nonzero(psi)
    s = vnalg.support_projection(bracket(rep, psi, psi), rel_cutoff)
    coeffs = vnalg.fourier_coefficients(rep.group, s @ np.asarray(F, dtype=complex), tol)
    return rep.orbit(psi) @ coeffs


def s_psi_apply(rep: Representation, psi, phi, rel_cutoff: float = RANK_CUTOFF) -> np.ndarray:
    """``S_psi`` applied to the projection of ``phi`` onto the principal space of ``psi``.

    Coefficients come from a least-squares fit of ``phi`` by the orbit, which
    already lands on the orthogonal projection.
    """
    psi = _nonzero(psi)
    O = rep.orbit(psi)
    f, *_ = np.linalg.lstsq(O, np.asarray(phi, dtype=complex), rcond=rel_cutoff)
    return s_psi_forward(rep, psi, f, rel_cutoff)


@dataclass(frozen=True, eq=False)
class PrincipalDecomposition:
    generators: list
    bases: list  # orthonormal bases (d, r_i) of each principal space
    consumed: list  # index into the orthonormalized input basis that seeded each generator

    @property
    def dims(self) -> list[int]:
        return [b.shape[1] for b in self.bases]


def orthonormalize(vectors, rel_cutoff: float = RANK_CUTOFF) -> np.ndarray:
    """Gram-Schmidt in input order, dropping dependent vectors."""
    vecs = [np.asarray(v, dtype=complex) for v in vectors]
    if not vecs:
        raise ValueError("no vectors given")
    scale = max(np.linalg.norm(v) for v in vecs)
    out: list[np.ndarray] = []
    for v in vecs:
        w = v.copy()
        for _ in range(2):  # second pass restores orthogonality lost to rounding
            for q in out:
                w -= np.vdot(q, w) * q
        nw = np.linalg.norm(w)
        if nw > rel_cutoff * scale * 1e2:
            out.append(w / nw)
    return np.array(out).T if out else np.zeros((vecs[0].shape[0], 0), dtype=complex)


def invariance_defect(rep: Representation, basis) -> tuple[int, float]:
    """Worst ``||(I - P) Pi(g) Q||`` over ``g``; returns ``(g, defect)``."""
    Q = np.asarray(basis, dtype=complex)
    P = projector(Q)
    worst, arg = 0.0, rep.group.identity
    for g in range(rep.group.order):
        R = rep(g) @ Q
        d = float(np.linalg.norm(R - P @ R, 2)) if Q.shape[1] else 0.0
        if d > worst:
            worst, arg = d, g
    return arg, worst


def decompose_invariant(rep: Representation, vectors, tol: float = TOL, rel_cutoff: float = RANK_CUTOFF) -> PrincipalDecomposition:
    """Split an invariant span into mutually orthogonal principal spaces.

    Greedy: take the first orthonormal basis vector not yet covered, project
    it off the spaces found so far, and use the result as the next generator.
    """
    E = orthonormalize(vectors, rel_cutoff)
    g, defect = invariance_defect(rep, E)
    if defect > tol:
        raise NotInvariant(rep.group.labels[g], defect)
    generators, bases, consumed = [], [], []
    covered = np.zeros((rep.dim, 0), dtype=complex)
    for k in range(E.shape[1]):
        e = E[:, k]
        resid = e - covered @ (covered.conj().T @ e)
        if np.linalg.norm(resid) <= tol:
            continue
        Q = orbit_span_basis(rep, [resid], rel_cutoff)
        generators.append(resid)
        bases.append(Q)
        consumed.append(k)
        covered = np.hstack([covered, Q])
        if covered.shape[1] >= E.shape[1]:
            break
    return PrincipalDecomposition(generators, bases, consumed)


# --- Helson maps ---------------------------------------------------------

class HelsonMap:
    """Callable ``phi -> HelsonImage``."""

    def __init__(self, group: FiniteGroup, labels, weights, fn: Callable[[np.ndarray], np.ndarray], name: str = "helson"):
        self.group = group
        self.labels = tuple(labels)
        self.weights = np.asarray(weights, dtype=float)
        self._fn = fn
        self.name = name

    def __call__(self, phi) -> HelsonImage:
        vals = np.asarray(self._fn(np.asarray(phi, dtype=complex)), dtype=complex)
        return HelsonImage(self.group, self.labels, self.weights, vals)


def fourier_helson_map(group: FiniteGroup) -> HelsonMap:
    """Group Fourier transform, a single-fiber Helson map for the left regular representation."""
    return HelsonMap(group, ["F"], [1.0], lambda f: vnalg.fourier_transform(group, f)[None], "fourier")


def build_helson_map(rep: Representation, decomposition: PrincipalDecomposition, rel_cutoff: float = RANK_CUTOFF) -> HelsonMap:
    """``U_Psi[phi]_i = [psi_i, psi_i]^(1/2) S_psi_i[P_i phi]``, one unit-weight fiber per generator."""
    roots = [vnalg.psd_sqrt(bracket(rep, p, p), "sqrt", rel_cutoff) for p in decomposition.generators]
    projs = [projector(b) for b in decomposition.bases]

    def fn(phi):
        return np.array([r @ s_psi_apply(rep, psi, P @ phi, rel_cutoff)
                         for r, psi, P in zip(roots, decomposition.generators, projs)])

    labels = [f"psi_{i}" for i in range(len(decomposition.generators))]
    return HelsonMap(rep.group, labels, np.ones(len(labels)), fn, "periodization")


def verify_helson_axioms(T: HelsonMap, rep: Representation, samples: int = 100, tol: float = TOL, seed: int = 0) -> dict:
    """Isometry, intertwining and bracket recovery on seeded random vectors (relative defects)."""
    rng = np.random.default_rng(seed)
    rhos = vnalg.rho_all(rep.group)
    worst = {"isometry": 0.0, "intertwining": 0.0, "bracket_recovery": 0.0}
    for _ in range(samples):
        x, y = random_vector(rng, rep.dim), random_vector(rng, rep.dim)
        Tx, Ty = T(x), T(y)
        nx = np.linalg.norm(x)
        worst["isometry"] = max(worst["isometry"], abs(Tx.norm() - nx) / nx)
        for g in range(rep.group.order):
            d = (T(rep.act(g, x)) - Tx.right_multiply(rhos[g].T)).norm() / nx
            worst["intertwining"] = max(worst["intertwining"], d)
        d = np.abs(Tx.pair(Ty) - bracket(rep, x, y)).max() / (nx * np.linalg.norm(y))
        worst["bracket_recovery"] = max(worst["bracket_recovery"], d)
    worst = {k: float(v) for k, v in worst.items()}
    return {"map": T.name, "samples": samples, "defects": worst, "passed": all(v <= tol for v in worst.values())}


def multiplicative_invariance_defect(T: HelsonMap, rep: Representation, basis) -> float:
    """Max residual of ``T[v] rho(g)`` off ``T[V]`` over basis vectors ``v`` and all ``g``.

    Linearity in the right factor extends the check from the monomials
    ``rho(g)`` to all of R(G).
    """
    Q = np.asarray(basis, dtype=complex)
    images = [T(Q[:, j]) for j in range(Q.shape[1])]
    M = np.array([im.flat() for im in images]).T
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    U = U[:, s > RANK_CUTOFF * s[0]] if s.size and s[0] > 0 else U[:, :0]
    worst = 0.0
    for im in images:
        for R in vnalg.rho_all(rep.group):
            v = im.right_multiply(R).flat()
            worst = max(worst, float(np.linalg.norm(v - U @ (U.conj().T @ v))))
    return worst


# --- Zak transform -------------------------------------------------------

@dataclass(frozen=True)
class TilingSet:
    points: tuple


def find_tiling_set(action: GroupAction) -> TilingSet:
    """Smallest point of each orbit; the action must be free."""
    group = action.group
    for x in range(action.size):
        for g in range(group.order):
            if g != group.identity and action.perms[g, x] == x:
                raise NotFree(x, group.labels[g])
    return TilingSet(tuple(orb[0] for orb in action.orbits()))


def _check_tiling(action: GroupAction, C: TilingSet):
    hits = np.zeros(action.size, dtype=int)
    for c in C.points:
        if not 0 <= c < action.size:
            raise InvalidTiling(f"point {c} outside the action space")
        np.add.at(hits, action.perms[:, c], 1)
    if np.any(hits != 1):
        raise InvalidTiling("translates of the tiling set do not partition the space")


def zak_transform(action: GroupAction, C: TilingSet, u) -> HelsonImage:
    """``Z[phi](x) = sum_g (Pi(g) phi)(x) rho(g)`` for ``x`` in ``C``, weight ``mu(x)``.

    ``u`` is in flattened coordinates; the transform is taken of the function
    ``phi = u / sqrt(mu)``.
    """
    _check_tiling(action, C)
    group = action.group
    phi = action.from_flat(u)
    P, J = action.perms, action.jacobian
    rhos = vnalg.rho_all(group)
    vals = []
    for c in C.points:
        Z = np.zeros((group.order, group.order), dtype=complex)
        for g in range(group.order):
            gi = group.inv(g)
            Z += np.sqrt(J[gi, c]) * phi[P[gi, c]] * rhos[g]
        vals.append(Z)
    return HelsonImage(group, tuple(C.points), action.measure[list(C.points)].copy(), np.array(vals))


def zak_helson_map(action: GroupAction, C: Optional[TilingSet] = None) -> HelsonMap:
    C = C if C is not None else find_tiling_set(action)
    _check_tiling(action, C)
    return HelsonMap(action.group, C.points, action.measure[list(C.points)],
                     lambda u: zak_transform(action, C, u).values, "zak")


def zak_inverse(action: GroupAction, C: TilingSet, Z: HelsonImage) -> np.ndarray:
    """Explicit inverse: ``phi(sigma_{g^-1} c) = J(g^-1, c)^(-1/2) tau(Z(c) rho(g)^*)``; returns flattened coordinates."""
    _check_tiling(action, C)
    if tuple(Z.labels) != tuple(C.points):
        raise FiberMismatch(f"fibers {Z.labels} do not match tiling set {C.points}")
    group = action.group
    P, J = action.perms, action.jacobian
    rhos = vnalg.rho_all(group)
    phi = np.zeros(action.size, dtype=complex)
    for c, val in zip(C.points, Z.values):
        for g in range(group.order):
            gi = group.inv(g)
            phi[P[gi, c]] = vnalg.trace_tau(group, val @ rhos[g].T) / np.sqrt(J[gi, c])
    return action.to_flat(phi)
