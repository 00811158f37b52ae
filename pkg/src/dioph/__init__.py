"""Gauge-function dichotomies for Diophantine limsup sets, exact c-adic net
measures, and finite-scale classifiers for reals and frequency vectors."""

__version__ = "0.1.0"
