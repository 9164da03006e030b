"""Exact extremal-projector calculus for su(2) and su(3).

Symbolic projector series in the Taylor extension of the enveloping algebra,
applied to explicit finite-dimensional modules: Clebsch-Gordan coefficients,
6j/9j symbols, and Gelfand-Tsetlin bases, all in exact arithmetic.
"""

__version__ = "0.1.0"
