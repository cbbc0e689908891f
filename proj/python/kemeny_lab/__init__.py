"""Markov chain passage-time structure and the Kemeny constant.

Thin wrapper over the C++ core. Analysis results are plain dicts mirroring
the CLI's JSON report documents (schema "kemeny-lab/1"); exact-mode rationals
appear as "a/b" strings.
"""

from fractions import Fraction

from kemeny_lab._core import (
    SCHEMA,
    KemenyLabError,
    analyze_exact,
    analyze_float,
    evolve_exact,
    evolve_float,
    simulate,
)

__all__ = [
    "SCHEMA",
    "KemenyLabError",
    "analyze_exact",
    "analyze_float",
    "evolve_exact",
    "evolve_float",
    "simulate",
    "kemeny_constant",
    "as_fraction",
]


def as_fraction(value):
    """Fraction from a report scalar: an "a/b" string, an int, or a float."""
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(value)


def kemeny_constant(rows, exact=None):
    """The Kemeny constant of a transition matrix.

    ``rows`` holds either numbers (float mode) or literal strings like
    "1/2" (exact mode, returning a Fraction). ``exact`` overrides the
    inference.
    """
    if exact is None:
        exact = any(isinstance(entry, str) for row in rows for entry in row)
    if exact:
        literals = [[str(entry) for entry in row] for row in rows]
        return as_fraction(analyze_exact(literals)["kemeny"]["k"])
    return analyze_float([[float(entry) for entry in row] for row in rows])["kemeny"]["k"]
