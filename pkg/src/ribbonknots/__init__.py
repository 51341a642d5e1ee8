"""Realization of knot modules as ribbon 2-knot group presentations,
with exact verification machinery (Fox calculus, cyclic-cover homology,
coset enumeration, Andrews-Curtis search) and a CLI front end."""

__version__ = "0.1.0"
