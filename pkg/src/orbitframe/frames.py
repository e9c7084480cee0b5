"""Orbit systems ``{Pi(g) phi_i}``: orthonormality, Riesz and frame bounds from
brackets, Parseval and dual generators, multipliers, and left-invariant
subspaces of l2(G).

Riesz and frame certification work on the block bracket Gramian, the
``(n k) x (n k)`` Hermitian matrix whose ``(j, i)`` block is ``[phi_i, phi_j]``.
The operator inequality ``A sum|F_i|^2 <= sum F_j^* [phi_i, phi_j] F_i <= B sum|F_i|^2``
over tuples in R(G) holds iff ``A <= block Gramian <= B`` as matrices:
evaluating at ``delta_e`` with free Fourier coefficients gives one direction,
and applying the matrix inequality to ``u_i = F_i v`` gives the other.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import vnalg
from .errors import DegenerateComb, NotMinimal, NotInPrincipalSpace, ZeroGenerator
from .groups import FiniteGroup
from .helson import build_helson_map, decompose_invariant, orbit_span_basis, s_psi_inverse
from .representations import Representation, bracket, left_regular, random_vector

TOL = vnalg.TOL
RANK_CUTOFF = vnalg.RANK_CUTOFF
TIGHT_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class OrbitSystem:
    rep: Representation
    generators: list
    synthesis: np.ndarray  # (d, n*k), column g*k + i is Pi(g) phi_i

    @property
    def size(self) -> int:
        return self.synthesis.shape[1]


def _generators(rep: Representation, generators) -> list:
    out = []
    for i, phi in enumerate(generators):
        phi = np.asarray(phi, dtype=complex)
        if phi.shape != (rep.dim,):
            raise ValueError(f"generator {i} has shape {phi.shape}, expected ({rep.dim},)")
        if np.linalg.norm(phi) == 0:
            raise ZeroGenerator(f"generator {i} is zero")
        out.append(phi)
    if not out:
        raise ValueError("at least one generator is required")
    return out


def orbit_system(rep: Representation, generators) -> OrbitSystem:
    gens = _generators(rep, generators)
    k = len(gens)
    S = np.empty((rep.dim, rep.group.order * k), dtype=complex)
    for g in range(rep.group.order):
        for i, phi in enumerate(gens):
            S[:, g * k + i] = rep.act(g, phi)
    return OrbitSystem(rep, gens, S)


def block_bracket_gramian(rep: Representation, generators) -> np.ndarray:
    gens = _generators(rep, generators)
    n, k = rep.group.order, len(gens)
    M = np.empty((n * k, n * k), dtype=complex)
    for i in range(k):
        for j in range(k):
            M[j * n:(j + 1) * n, i * n:(i + 1) * n] = bracket(rep, gens[i], gens[j])
    return M


@dataclass(frozen=True)
class SpectralBounds:
    A: float
    B: float
    support_rank: int
    kind: str  # "orthonormal" | "riesz" | "frame" | "none"
    tight: bool
    eigenvalues: tuple = field(repr=False, default=())

    def as_dict(self) -> dict:
        d = asdict(self)
        d["eigenvalues"] = list(self.eigenvalues)
        return d


def _spectrum(rep, generators):
    w = np.linalg.eigvalsh(block_bracket_gramian(rep, generators))
    return np.sort(w)[::-1]


def orthonormality_test(rep: Representation, generators, tol: float = TOL) -> tuple[bool, float]:
    """``[phi_i, phi_j] = delta_ij I`` for all pairs; returns ``(ok, max defect)``."""
    gens = _generators(rep, generators)
    eye = np.eye(rep.group.order)
    defect = 0.0
    for i, a in enumerate(gens):
        for j, b in enumerate(gens):
            target = eye if i == j else 0.0
            defect = max(defect, float(np.linalg.norm(bracket(rep, a, b) - target, 2)))
    return defect <= tol, defect


def riesz_bounds(rep: Representation, generators, rel_cutoff: float = RANK_CUTOFF, tol: float = TOL) -> SpectralBounds:
    """Extreme eigenvalues of the block bracket Gramian."""
    w = _spectrum(rep, generators)
    B, A = float(w[0]), float(w[-1])
    cut = rel_cutoff * max(abs(B), 0.0)
    rank = int(np.sum(w > cut))
    if A > cut and abs(A - 1) <= tol and abs(B - 1) <= tol:
        kind = "orthonormal"
    elif A > cut:
        kind = "riesz"
    else:
        kind = "none"
    if kind == "none":
        A = max(A, 0.0)
    return SpectralBounds(A, B, rank, kind, B - A <= TIGHT_TOL * B, tuple(float(x) for x in w))


def frame_bounds(rep: Representation, generators, rel_cutoff: float = RANK_CUTOFF, tol: float = TOL) -> SpectralBounds:
    """Smallest nonzero and largest eigenvalue of the block bracket Gramian."""
    w = _spectrum(rep, generators)
    B = float(w[0])
    cut = rel_cutoff * abs(B)
    nz = w[w > cut]
    if nz.size == 0:
        return SpectralBounds(0.0, 0.0, 0, "none", False, tuple(float(x) for x in w))
    A = float(nz[-1])
    full = nz.size == w.size
    kind = "orthonormal" if full and abs(A - 1) <= tol and abs(B - 1) <= tol else "frame"
    return SpectralBounds(A, B, int(nz.size), kind, B - A <= TIGHT_TOL * B, tuple(float(x) for x in w))


def frame_condition_check(rep: Representation, generators, A: float, B: float, samples: int = 100, seed: int = 0) -> float:
    """Worst violation of ``A[f,f] <= sum_i |[f, phi_i]|^2 <= B[f,f]`` over random ``f`` in the span.

    Returned value is the most negative eigenvalue of either difference,
    relative to ``B ||f||^2`` (0 means the inequalities hold).
    """
    system = orbit_system(rep, generators)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        f = system.synthesis @ random_vector(rng, system.size)
        ff = bracket(rep, f, f)
        M = sum(X.conj().T @ X for X in (bracket(rep, f, phi) for phi in system.generators))
        scale = max(B, 1e-300) * np.linalg.norm(f) ** 2
        lo = np.linalg.eigvalsh(M - A * ff)[0]
        hi = np.linalg.eigvalsh(B * ff - M)[0]
        worst = max(worst, -lo / scale, -hi / scale)
    return float(worst)


def riesz_condition_check(rep: Representation, generators, A: float, B: float, samples: int = 50, seed: int = 0) -> float:
    """Worst violation of the operator Riesz inequality on random tuples ``F_i`` in R(G)."""
    gens = _generators(rep, generators)
    G = rep.group
    rng = np.random.default_rng(seed)
    brackets = [[bracket(rep, gens[i], gens[j]) for j in range(len(gens))] for i in range(len(gens))]
    worst = 0.0
    for _ in range(samples):
        Fs = [vnalg.fourier_transform(G, random_vector(rng, G.order)) for _ in gens]
        mid = sum(Fs[j].conj().T @ brackets[i][j] @ Fs[i] for i in range(len(gens)) for j in range(len(gens)))
        sq = sum(F.conj().T @ F for F in Fs)
        scale = max(B, 1e-300) * np.linalg.norm(sq, 2)
        lo = np.linalg.eigvalsh((mid - A * sq + (mid - A * sq).conj().T) / 2)[0]
        hi = np.linalg.eigvalsh((B * sq - mid + (B * sq - mid).conj().T) / 2)[0]
        worst = max(worst, -lo / scale, -hi / scale)
    return float(worst)


# --- synthesis ------------------------------------------------------------

def parseval_generator(rep: Representation, psi, rel_cutoff: float = RANK_CUTOFF) -> np.ndarray:
    """Generator whose orbit is a Parseval frame for the principal space of ``psi``."""
    psi = np.asarray(psi, dtype=complex)
    if np.linalg.norm(psi) == 0:
        raise ZeroGenerator("psi must be nonzero")
    root = vnalg.psd_sqrt(bracket(rep, psi, psi), "pinv_sqrt", rel_cutoff)
    return s_psi_inverse(rep, psi, root, rel_cutoff)


def parseval_family(rep: Representation, vectors, tol: float = TOL, rel_cutoff: float = RANK_CUTOFF) -> list:
    """Generators whose combined orbits form a Parseval frame for an invariant span."""
    dec = decompose_invariant(rep, vectors, tol, rel_cutoff)
    return [parseval_generator(rep, psi, rel_cutoff) for psi in dec.generators]


def dual_generator(rep: Representation, psi, tol: float = RANK_CUTOFF) -> np.ndarray:
    """Generator of the biorthogonal system, ``S_psi^-1([psi, psi]^-1)``.

    Raises :class:`NotMinimal` when ``min eig <= tol * max eig``.
    """
    psi = np.asarray(psi, dtype=complex)
    if np.linalg.norm(psi) == 0:
        raise ZeroGenerator("psi must be nonzero")
    br = bracket(rep, psi, psi)
    w = np.linalg.eigvalsh((br + br.conj().T) / 2)
    if w[0] <= tol * w[-1]:
        raise NotMinimal(w[0])
    return s_psi_inverse(rep, psi, np.linalg.inv(br))


def biorthogonality_defect(rep: Representation, psi, dual) -> float:
    """``max_g |<Pi(g) psi, dual> - delta_{g,e}|``."""
    e = rep.group.identity
    vals = np.array([np.vdot(dual, rep.act(g, psi)) for g in range(rep.group.order)])
    vals[e] -= 1
    return float(np.abs(vals).max())


def principal_multiplier(rep: Representation, psi, phi, tol: float = TOL, rel_cutoff: float = RANK_CUTOFF) -> tuple[np.ndarray, dict]:
    """Multiplier ``F`` with ``T[phi] = T[psi] F`` and ``[phi, psi] = [psi, psi] F``.

    Returns ``(F, defects)``; ``F`` is the support-reduced minimal solution.
    Raises :class:`NotInPrincipalSpace` when ``phi`` is not in the span of the
    orbit of ``psi``.
    """
    psi = np.asarray(psi, dtype=complex)
    phi = np.asarray(phi, dtype=complex)
    if np.linalg.norm(psi) == 0:
        raise ZeroGenerator("psi must be nonzero")
    Q = orbit_span_basis(rep, [psi], rel_cutoff)
    resid = float(np.linalg.norm(phi - Q @ (Q.conj().T @ phi)))
    if resid > tol * max(1.0, np.linalg.norm(phi)):
        raise NotInPrincipalSpace(resid)
    bpp = bracket(rep, psi, psi)
    bfp = bracket(rep, phi, psi)
    F = vnalg.psd_sqrt(bpp, "pinv", rel_cutoff) @ bfp
    T = build_helson_map(rep, decompose_invariant(rep, list(np.eye(rep.dim)), tol, rel_cutoff), rel_cutoff)
    defects = {
        "projection_residual": resid,
        "helson": (T(phi) - T(psi).right_multiply(F)).norm(),
        "bracket": float(np.abs(bfp - bpp @ F).max()),
    }
    return F, defects


@dataclass
class Membership:
    member: bool
    residual: float
    multipliers: list  # one operator per generator (empty when not a member)
    helson_defect: Optional[float] = None
    note: str = "finite dimension: sums of principal spaces are always closed"


def membership_finitely_generated(rep: Representation, generators, phi, tol: float = TOL, rel_cutoff: float = RANK_CUTOFF) -> Membership:
    """Decide ``phi in sum_j <psi_j>`` and return multipliers with ``T[phi] = sum_j T[psi_j] F_j``."""
    gens = _generators(rep, generators)
    phi = np.asarray(phi, dtype=complex)
    system = orbit_system(rep, gens)
    coeffs, *_ = np.linalg.lstsq(system.synthesis, phi, rcond=rel_cutoff)
    residual = float(np.linalg.norm(system.synthesis @ coeffs - phi))
    if residual > tol * max(1.0, np.linalg.norm(phi)):
        return Membership(False, residual, [])
    k, G = len(gens), rep.group
    Fs = []
    for j, psi in enumerate(gens):
        s = vnalg.support_projection(bracket(rep, psi, psi), rel_cutoff)
        Fs.append(s @ vnalg.fourier_transform(G, coeffs[j::k]))
    T = build_helson_map(rep, decompose_invariant(rep, list(np.eye(rep.dim)), tol, rel_cutoff), rel_cutoff)
    target = T(phi)
    total = None
    for psi, F in zip(gens, Fs):
        term = T(psi).right_multiply(F)
        total = term if total is None else total + term
    return Membership(True, residual, Fs, (target - total).norm())


# --- left-invariant subspaces of l2(G) -----------------------------------

def left_invariance_analysis(group: FiniteGroup, vectors, tol: float = TOL, rel_cutoff: float = RANK_CUTOFF) -> dict:
    """Projection structure of ``V = span(vectors)`` in l2(G).

    ``q = P_V`` lies in R(G) iff ``V`` is left-invariant; then ``p = q^`` and
    ``{lambda(g) p}`` is a Parseval frame for ``V``.
    """
    V = np.array([np.asarray(v, dtype=complex) for v in vectors]).T
    U, s, _ = np.linalg.svd(V, full_matrices=False)
    Q = U[:, s > rel_cutoff * s[0]] if s.size and s[0] > 0 else U[:, :0]
    q = Q @ Q.conj().T
    defect = vnalg.commutator_defect(group, q)
    out = {"dim": int(Q.shape[1]), "commutation_defect": defect, "left_invariant": defect <= tol, "q": q, "p": None}
    if not out["left_invariant"]:
        return out
    p = vnalg.fourier_coefficients(group, q, tol)
    # F_G(V) inside qL2: q F_G v = F_G v for basis vectors v
    fwd = max(float(np.abs(q @ vnalg.fourier_transform(group, Q[:, j]) - vnalg.fourier_transform(group, Q[:, j])).max())
              for j in range(Q.shape[1])) if Q.shape[1] else 0.0
    # qL2 inside F_G(V): coefficients of q rho(g)^* lie in V
    back = 0.0
    for R in vnalg.rho_all(group):
        c = vnalg.fourier_coefficients(group, q @ R.T, check=False)
        back = max(back, float(np.linalg.norm(c - q @ c)))
    pp = bracket(left_regular(group), p, p)
    out.update(p=p, forward_residual=fwd, backward_residual=back,
               idempotence_defect=float(np.abs(pp @ pp - pp).max()),
               bracket_equals_q=float(np.abs(pp - q).max()))
    out["parseval_ok"] = max(out["idempotence_defect"], out["bracket_equals_q"]) <= tol
    return out


def comb_bracket_closed_form(group: FiniteGroup, g1: int, g2: int, a: complex, b: complex) -> np.ndarray:
    """``(|a|^2 + |b|^2) I + conj(a) b rho(g1 g2^-1) + conj(b) a rho(g1 g2^-1)^*``."""
    R = vnalg.rho(group, group.mul(g1, group.inv(g2)))
    return (abs(a) ** 2 + abs(b) ** 2) * np.eye(group.order) + np.conj(a) * b * R + np.conj(b) * a * R.T


def comb_analysis(group: FiniteGroup, g1: int, g2: int, a: complex, b: complex, rel_cutoff: float = RANK_CUTOFF) -> dict:
    """Two-pronged comb ``f = a delta_g1 + b delta_g2`` under the left regular representation."""
    if g1 == g2 or a == 0 or b == 0:
        raise DegenerateComb("need g1 != g2 and nonzero a, b")
    rep = left_regular(group)
    f = a * vnalg.delta(group, g1) + b * vnalg.delta(group, g2)
    ff = bracket(rep, f, f)
    closed = comb_bracket_closed_form(group, g1, g2, a, b)
    rank = vnalg.numerical_rank(rep.orbit(f), rel_cutoff)
    lo, hi = (abs(a) - abs(b)) ** 2, (abs(a) + abs(b)) ** 2
    eig = np.linalg.eigvalsh(ff)
    riesz = riesz_bounds(rep, [f], rel_cutoff)
    frame = frame_bounds(rep, [f], rel_cutoff)
    h = group.mul(group.inv(g1), g2)
    real = np.isreal(a) and np.isreal(b)
    report = {
        "n": group.order,
        "a": complex(a), "b": complex(b), "g1": int(g1), "g2": int(g2),
        "h_order": group.element_order(h),
        "bracket_closed_form_defect": float(np.abs(ff - closed).max()),
        "rank": rank,
        "complete": rank == group.order,
        "analytic_window": (lo, hi),
        "bracket_eigenvalues": sorted(float(x) for x in eig),
        "window_defect": float(max(0.0, lo - eig.min(), eig.max() - hi)),
        "riesz": riesz,
        "frame": frame,
    }
    if real:
        # for real a != +-b the kernel argument forces completeness; a = +-b depends on the group
        report["real_prediction"] = True if (a != b and a != -b) else None
    else:
        report["real_prediction"] = None
        report["note"] = "complex coefficients: completeness decided by rank only"
    return report
