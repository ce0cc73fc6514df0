"""Six-vertex model with domain wall boundary conditions.

Exact enumeration, the Izergin determinant, orthogonal polynomial norms
compared against Meixner polynomials, and ferroelectric-phase asymptotics.
"""
__version__ = "0.1.0"
