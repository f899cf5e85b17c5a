"""Exact verification of bi-Lagrangian structures on nilpotent Lie algebras.

All arithmetic is over the rationals (:class:`fractions.Fraction`) or over
polynomials with rational coefficients; nothing is ever rounded.
"""

__version__ = "0.1.0"
