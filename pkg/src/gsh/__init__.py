"""Global solvability / hypoellipticity toolkit.

Decides global solvability (GS) and global hypoellipticity (GH) of
first-order evolution operators

    L = d/dt + sum_j c_j(t) d/dx_j + sum_k d_k(t) D3_k + q

on products of tori and 3-spheres, and constructively solves Lu = g by
Fourier-mode decomposition.
"""

__version__ = "0.1.0"
