"""cstar-flow: a numerical laboratory for finite-dimensional Hilbert C*-modules."""

__version__ = "0.1.0"
