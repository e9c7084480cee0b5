"""Bracket maps, Helson maps and orbit frames for finite groups.

Modules: ``groups`` (Cayley tables), ``vnalg`` (the algebra R(G)),
``representations`` (unitary representations, actions, brackets),
``helson`` (principal spaces, Helson maps, Zak transform), ``frames``
(Riesz/frame certification and synthesis), ``oracle`` (brute-force
cross-checks), ``cli``.
"""
from .errors import *  # noqa: F401,F403
from .groups import FiniteGroup, build_cyclic, build_dihedral, build_direct_product, from_cayley_table
from .representations import Representation, bracket, left_regular, right_regular, make_representation, make_action
from .frames import frame_bounds, riesz_bounds, orbit_system, parseval_generator, dual_generator
from .models import d3_model

__version__ = "0.1.0"
