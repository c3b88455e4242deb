"""Exact decision procedure for non-parallelizable planar tensegrities.

Everything runs over exact rational projective coordinates: self-stress
spaces are computed as exact null spaces, framed-cycle monodromies as exact
2x2 matrices, and graphs compile to symbolic systems of meet/join conditions
that are cross-validated against the null-space oracle.
"""

from .numeric import KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
