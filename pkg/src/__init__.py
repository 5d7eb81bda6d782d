"""ArchLab: zeta-regularized determinants, local L-factors and equivariant volumes."""

__version__ = "0.1.0"
