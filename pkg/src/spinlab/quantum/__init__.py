"""
Exact and sampled quantum mechanics of one and two spin-1/2 particles.

Submodules:
    qcore     state vectors, inner products, tensor products, density matrices
    spin      directions and single-spin states along arbitrary directions
    measure   seeded projective measurement, frequency estimates, phase discrimination
    entangle  two-spin states, factorization, entanglement score, singlet statistics
    bell      Bell combination, classical joint distributions, hidden-variable search
"""

# Numeric tolerances
EPS_NORM = 1e-9
EPS_PSD = 1e-9
EPS_EXACT = 1e-12
EPS_ZERO = 1e-15
TOL_BELL = 1e-9
TOL_FACTORIZE = 1e-9


class SpinlabError(Exception):
    ...


class ValidationError(SpinlabError, ValueError):
    """Input rejected before any computation took place."""


class CrossCheckError(SpinlabError, RuntimeError):
    """Two independent evaluations of the same quantity disagree."""
