"""Exact equations for cyclic quotient surface singularities.

The package computes, as exact polynomial identities, the equations of
the reduced components and of the full versal deformation of the cyclic
quotient singularities, together with the combinatorial bookkeeping
(sparse coloured triangles, rooted trees) that indexes them.
"""

__version__ = "0.1.0"
