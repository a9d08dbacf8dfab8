"""
rsvd - numerics for a dual pair of boundary Ruijsenaars-Schneider systems.

Builds both systems by Hamiltonian reduction of free motion on the
Heisenberg double of SU(2n), and checks the reduction, the action-angle
duality and the rational limit numerically.
"""

__version__ = "0.1.0"
