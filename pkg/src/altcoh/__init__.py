"""Stable mod-p cohomology of alternating groups, with exact group-theoretic checks."""

from .fplin import FpMatrix, FpSubspace
from .limits import ResourceLimitError
from .permgrp import GroupTable, Perm, PermGroup, alternating_group, symmetric_group
from .stablecoh import stable_dim

__all__ = [
    "FpMatrix",
    "FpSubspace",
    "GroupTable",
    "Perm",
    "PermGroup",
    "ResourceLimitError",
    "alternating_group",
    "stable_dim",
    "symmetric_group",
]
__version__ = "0.1.0"
