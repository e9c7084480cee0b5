"""Finite permutation model of the dihedral group D3 acting on a lattice basis.

Ten basis vectors split into three orbit types: one point fixed by every
element, one orbit of size 3 whose base point is fixed by the reflection
``b``, and one free orbit of size 6.  Those are exactly the three orbit
classes of D3 acting on pairs of hexagonal-lattice points, so brackets and
frame constants come out identical to the continuous setting.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup, build_dihedral
from .representations import GroupAction, Representation, action_representation, coset_action, make_action


def disjoint_union(*actions: GroupAction) -> GroupAction:
    group = actions[0].group
    perms, measure, offset = [], [], 0
    for a in actions:
        perms.append(a.perms + offset)
        measure.append(a.measure)
        offset += a.size
    return make_action(group, np.hstack(perms), measure=np.concatenate(measure))


@dataclass(frozen=True, eq=False)
class D3Model:
    group: FiniteGroup
    action: GroupAction
    rep: Representation
    fixed: np.ndarray
    boundary: np.ndarray
    interior: np.ndarray

    FIXED_POINT = 0
    BOUNDARY_POINT = 1
    INTERIOR_POINT = 4

    def unit(self, k: int) -> np.ndarray:
        v = np.zeros(self.rep.dim, dtype=complex)
        v[k] = 1.0
        return v


def d3_model() -> D3Model:
    G = build_dihedral(3)
    e, b = 0, 3
    action = disjoint_union(
        coset_action(G, list(range(G.order))),  # fixed point
        coset_action(G, [e, b]),  # stabiliser {e, b}
        coset_action(G, [e]),  # free orbit
    )
    rep = action_representation(action)
    unit = np.eye(action.size, dtype=complex)
    return D3Model(G, action, rep, unit[D3Model.FIXED_POINT], unit[D3Model.BOUNDARY_POINT], unit[D3Model.INTERIOR_POINT])
