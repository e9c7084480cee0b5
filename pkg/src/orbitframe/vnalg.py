"""Finite group von Neumann algebra R(G).

Operators are plain ``(n, n)`` complex arrays indexed in the group's canonical
element order; sequences in l2(G) are length-``n`` complex arrays.  Membership
in R(G) is a checked property (commutation with every left translation).

Conventions::

    rho(g)    delta_x = delta_{x g^-1}      (right regular)
    lambda(g) delta_x = delta_{g x}         (left regular)
    F_G f     = sum_g f(g) rho(g)^*         (Fourier transform)
    F^(g)     = tau(F rho(g))               (Fourier coefficients)
    tau(F)    = <F delta_e, delta_e>
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import GroupMismatch, NotHermitian, NotInAlgebra, NotPSD
from .groups import FiniteGroup

TOL = 1e-9
RANK_CUTOFF = 1e-10


@lru_cache(maxsize=64)
def _regular_stacks(group: FiniteGroup):
    n = group.order
    c = group.cayley
    inv = group.inverses
    rho = np.zeros((n, n, n))
    lam = np.zeros((n, n, n))
    cols = np.arange(n)
    for g in range(n):
        rho[g, c[cols, inv[g]], cols] = 1.0
        lam[g, c[g, cols], cols] = 1.0
    rho.setflags(write=False)
    lam.setflags(write=False)
    return rho, lam


def _index(group: FiniteGroup, g) -> int:
    g = int(g)
    if not 0 <= g < group.order:
        raise GroupMismatch(f"element {g} not in group of order {group.order}")
    return g


def rho(group: FiniteGroup, g) -> np.ndarray:
    """Right regular representation matrix ``rho(g)``."""
    return _regular_stacks(group)[0][_index(group, g)].copy()


def lambda_(group: FiniteGroup, g) -> np.ndarray:
    """Left regular representation matrix ``lambda(g)``."""
    return _regular_stacks(group)[1][_index(group, g)].copy()


def rho_all(group: FiniteGroup) -> np.ndarray:
    """Read-only ``(n, n, n)`` stack of all ``rho(g)``."""
    return _regular_stacks(group)[0]


def lambda_all(group: FiniteGroup) -> np.ndarray:
    return _regular_stacks(group)[1]


def delta(group: FiniteGroup, g) -> np.ndarray:
    out = np.zeros(group.order, dtype=complex)
    out[_index(group, g)] = 1.0
    return out


def _seq(group: FiniteGroup, f) -> np.ndarray:
    f = np.asarray(f, dtype=complex)
    if f.shape != (group.order,):
        raise GroupMismatch(f"sequence has shape {f.shape}, expected ({group.order},)")
    return f


def _op(group: FiniteGroup, F) -> np.ndarray:
    F = np.asarray(F, dtype=complex)
    n = group.order
    if F.shape != (n, n):
        raise GroupMismatch(f"operator has shape {F.shape}, expected ({n}, {n})")
    return F


def fourier_transform(group: FiniteGroup, f) -> np.ndarray:
    """``sum_g f(g) rho(g)^*``; entrywise ``F[x, y] = f(y^-1 x)``."""
    f = _seq(group, f)
    c, inv = group.cayley, group.inverses
    return f[c[inv[:, None], np.arange(group.order)[None, :]].T]


def trace_tau(group: FiniteGroup, F) -> complex:
    F = _op(group, F)
    e = group.identity
    return complex(F[e, e])


def commutator_defect(group: FiniteGroup, F) -> float:
    """``max_g ||F lambda(g) - lambda(g) F||`` in operator norm."""
    F = _op(group, F)
    worst = 0.0
    for L in lambda_all(group):
        worst = max(worst, float(np.linalg.norm(F @ L - L @ F, 2)))
    return worst


def is_in_algebra(group: FiniteGroup, F, tol: float = TOL) -> bool:
    return commutator_defect(group, F) <= tol


def fourier_coefficients(group: FiniteGroup, F, tol: float = TOL, check: bool = True) -> np.ndarray:
    """Convolution kernel ``g -> tau(F rho(g))`` of an element of R(G).

    Raises :class:`NotInAlgebra` when ``F`` fails the commutation test
    (relative to its norm).
    """
    F = _op(group, F)
    if check:
        defect = commutator_defect(group, F)
        if defect > tol * max(1.0, float(np.linalg.norm(F, 2))):
            raise NotInAlgebra(f"operator does not commute with left translations (defect {defect:.3e})")
    e = group.identity
    # tau(F rho(g)) = F[e, g^-1]
    return F[e, group.inverses].astype(complex)


def convolve(group: FiniteGroup, g, f) -> np.ndarray:
    """``(g * f)(x) = sum_y f(y) g(x y^-1)``."""
    g = _seq(group, g)
    f = _seq(group, f)
    c, inv = group.cayley, group.inverses
    n = group.order
    # idx[x, y] = x y^-1
    idx = c[np.arange(n)[:, None], inv[None, :]]
    return (g[idx] * f[None, :]).sum(axis=1)


def l2_inner(group: FiniteGroup, F, G) -> complex:
    """``<F, G>_2 = tau(G^* F)``."""
    return trace_tau(group, _op(group, G).conj().T @ _op(group, F))


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    cutoff: float

    @property
    def rank(self) -> int:
        return int(np.sum(np.abs(self.eigenvalues) > self.cutoff))

    def apply(self, fn) -> np.ndarray:
        """Functional calculus ``U fn(diag) U^*``."""
        U = self.eigenvectors
        return (U * fn(self.eigenvalues)) @ U.conj().T


def hermitian_defect(F) -> float:
    F = np.asarray(F, dtype=complex)
    return float(np.linalg.norm(F - F.conj().T, 2))


def _check_hermitian(F, tol: float):
    F = np.asarray(F, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(F, 2))) if F.size else 1.0
    d = hermitian_defect(F)
    if d > tol * scale:
        raise NotHermitian(f"operator is not Hermitian (defect {d:.3e})")
    return (F + F.conj().T) / 2


def spectral_decomposition(F, rel_cutoff: float = RANK_CUTOFF, tol: float = TOL) -> SpectralDecomposition:
    """Hermitian eigendecomposition with descending eigenvalues.

    Each eigenvector's first component above 1e-12 in modulus is rotated to be
    real positive, so results are reproducible.
    """
    H = _check_hermitian(F, tol)
    w, U = np.linalg.eigh(H)
    order = np.argsort(-w, kind="stable")
    w, U = w[order], U[:, order]
    for j in range(U.shape[1]):
        nz = np.nonzero(np.abs(U[:, j]) > 1e-12)[0]
        if nz.size:
            z = U[nz[0], j]
            U[:, j] *= np.conj(z) / abs(z)
    scale = float(np.max(np.abs(w))) if w.size else 0.0
    return SpectralDecomposition(w, U, rel_cutoff * scale)


def numerical_rank(F, rel_cutoff: float = RANK_CUTOFF) -> int:
    s = np.linalg.svd(np.asarray(F, dtype=complex), compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rel_cutoff * s[0]))


def lp_norm(group: FiniteGroup, F, p: float) -> float:
    """``tau(|F|^p)^(1/p)``; ``p = inf`` gives the operator norm."""
    F = _op(group, F)
    if p == np.inf:
        return float(np.linalg.norm(F, 2))
    if p < 1:
        raise ValueError("p must be in [1, inf]")
    scale = max(1.0, float(np.linalg.norm(F, 2)))
    if hermitian_defect(F) <= 1e-13 * scale:
        # |F| straight from the spectrum of F; avoids the sqrt of F^*F losing half the digits near 0
        dec = spectral_decomposition(F)
        absp = dec.apply(lambda w: np.abs(w) ** p)
    else:
        dec = spectral_decomposition(F.conj().T @ F)
        absp = dec.apply(lambda w: np.clip(w, 0, None) ** (p / 2))
    return float(max(trace_tau(group, absp).real, 0.0) ** (1.0 / p))


def support_projection(F, rel_cutoff: float = RANK_CUTOFF, tol: float = TOL) -> np.ndarray:
    """Orthogonal projection onto the range of a Hermitian ``F``."""
    dec = spectral_decomposition(F, rel_cutoff, tol)
    if dec.eigenvalues.size == 0 or not np.any(dec.eigenvalues != 0):
        return np.zeros_like(np.asarray(F, dtype=complex))
    return dec.apply(lambda w: (np.abs(w) > dec.cutoff).astype(float))


def psd_sqrt(omega, mode: str = "sqrt", rel_cutoff: float = RANK_CUTOFF, tol: float = TOL) -> np.ndarray:
    """Square root, pseudo-inverse square root, or pseudo-inverse of a PSD operator.

    ``mode`` is one of ``"sqrt"``, ``"pinv_sqrt"``, ``"pinv"``.  Eigenvalues
    at or below ``rel_cutoff * max|eigenvalue|`` count as zero.
    """
    dec = spectral_decomposition(omega, rel_cutoff, tol)
    w = dec.eigenvalues
    scale = max(1.0, float(np.max(np.abs(w)))) if w.size else 1.0
    if w.size and w[-1] < -tol * scale:
        raise NotPSD(w[-1])
    keep = w > dec.cutoff
    safe = np.where(keep, w, 1.0)
    if mode == "sqrt":
        return dec.apply(lambda v: np.sqrt(np.clip(v, 0, None)))
    if mode == "pinv_sqrt":
        return dec.apply(lambda v: np.where(keep, 1.0 / np.sqrt(safe), 0.0))
    if mode == "pinv":
        return dec.apply(lambda v: np.where(keep, 1.0 / safe, 0.0))
    raise ValueError(f"unknown mode {mode!r}")


def weighted_inner(group: FiniteGroup, omega, F, G, rel_cutoff: float = RANK_CUTOFF, tol: float = TOL) -> complex:
    """``<F, G>_{2,omega} = tau(F G^* omega)`` after reducing ``F, G`` to the support of omega."""
    omega = _op(group, omega)
    psd_sqrt(omega, "sqrt", rel_cutoff, tol)  # PSD check
    s = support_projection(omega, rel_cutoff, tol)
    F = s @ _op(group, F)
    G = s @ _op(group, G)
    return trace_tau(group, F @ G.conj().T @ omega)


def weighted_norm(group: FiniteGroup, omega, F, rel_cutoff: float = RANK_CUTOFF) -> float:
    return float(np.sqrt(max(weighted_inner(group, omega, F, F, rel_cutoff).real, 0.0)))
