"""Brute-force cross-checks that never go through brackets.

Gram matrices are assembled from explicit orbit vectors ``Pi(g) phi_i``,
cyclic brackets come from the FFT, and duals from a direct least-squares
solve.  Only the eigensolver is shared with the rest of the package.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NotCyclic
from .groups import FiniteGroup

RANK_CUTOFF = 1e-10


@dataclass(frozen=True)
class GramReport:
    eigenvalues: np.ndarray  # descending
    A: float  # smallest nonzero
    B: float
    rank: int
    riesz_A: float  # smallest eigenvalue

    def as_dict(self) -> dict:
        return {"eigenvalues": [float(x) for x in self.eigenvalues], "A": self.A, "B": self.B,
                "rank": self.rank, "riesz_A": self.riesz_A}


def _report(w, rel_cutoff: float = RANK_CUTOFF) -> GramReport:
    w = np.sort(np.asarray(w, dtype=float))[::-1]
    B = float(w[0]) if w.size else 0.0
    nz = w[w > rel_cutoff * abs(B)] if B > 0 else w[:0]
    A = float(nz[-1]) if nz.size else 0.0
    return GramReport(w, A, B, int(nz.size), float(w[-1]) if w.size else 0.0)


def orbit_vectors(system) -> np.ndarray:
    """Columns ``Pi(g) phi_i`` rebuilt straight from the representation matrices."""
    mats = system.rep.matrices
    k = len(system.generators)
    cols = [mats[g] @ system.generators[i] for g in range(mats.shape[0]) for i in range(k)]
    return np.array(cols).T


def gram_matrix(system) -> np.ndarray:
    V = orbit_vectors(system)
    m = V.shape[1]
    G = np.empty((m, m), dtype=complex)
    for a in range(m):
        for b in range(m):
            G[a, b] = np.vdot(V[:, a], V[:, b])
    return G


def gram_bounds(system, rel_cutoff: float = RANK_CUTOFF) -> GramReport:
    """Eigenvalues of the Gram matrix of all orbit vectors."""
    return _report(np.linalg.eigvalsh(gram_matrix(system)), rel_cutoff)


def cyclic_generator(group: FiniteGroup) -> int:
    for g in range(group.order):
        if group.element_order(g) == group.order:
            return g
    raise NotCyclic(f"group of order {group.order} has no element of full order")


@dataclass(frozen=True)
class FiberReport:
    generator: int
    fibers: np.ndarray  # |DFT f(k)|^2 in frequency order
    gram: GramReport


def dft_fiberization_bounds(group: FiniteGroup, f, rel_cutoff: float = RANK_CUTOFF) -> FiberReport:
    """Bracket spectrum of ``f`` under the left regular representation of a cyclic group.

    With ``h[k] = f(x^k)`` for a generator ``x``, the fibers are ``|sum_k h[k] w^(jk)|^2``.
    """
    g = cyclic_generator(group)
    f = np.asarray(f, dtype=complex)
    h = f[[group.power(g, k) for k in range(group.order)]]
    fibers = np.abs(np.fft.fft(h)) ** 2
    return FiberReport(g, fibers, _report(fibers, rel_cutoff))


def biorthogonal_oracle(system, rel_cutoff: float = RANK_CUTOFF) -> Optional[np.ndarray]:
    """Minimum-norm ``x`` with ``<Pi(g) psi, x> = delta_{g,e}``, or ``None`` when singular.

    The minimum-norm solution lies in the orbit span automatically.
    """
    if len(system.generators) != 1:
        raise ValueError("biorthogonal oracle needs a single generator")
    V = orbit_vectors(system)
    n = V.shape[1]
    U, s, Wh = np.linalg.svd(V.conj().T, full_matrices=False)
    if s.size == 0 or s[0] == 0 or np.sum(s > rel_cutoff * s[0]) < n:
        return None
    rhs = np.zeros(n, dtype=complex)
    rhs[system.rep.group.identity] = 1.0
    return Wh.conj().T @ ((U.conj().T @ rhs) / s)
