"""Feasible characters of finite subgroups of exceptional algebraic groups."""

__version__ = "0.1.0"
