"""Exact line geometry for ruled cubic and quartic surfaces in P^3.

Lines are points of the Grassmannian Gr(2, 4) in Pluecker coordinates; ruled
surfaces are curves of lines given by polynomial families a(t) ^ b(t). All
classification decisions are made in exact rational arithmetic.
"""

__version__ = "0.1.0"
