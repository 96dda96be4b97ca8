"""Exact computation of Ext-groups from abelianization to symmetric powers on free groups."""

__version__ = "0.1.0"
