"""Stable rank workbench for commutative monoids."""

__version__ = "0.1.0"
