"""Exact densities of integers represented by integral quadratic forms.

Forms are given as expressions ("x^2+y^2+z^2") or QuadraticForm objects.
Rational results are fractions.Fraction.
"""

from ._qfd import (
    DomainError,
    ParseError,
    QuadraticForm,
    attainable_local_density_set,
    density,
    empirical_density,
    exceptional_set,
    greedy_interval_product,
    hilbert_symbol,
    is_isotropic_over_Q,
    local_density,
    locally_represented,
    represented,
    represents_isotropic_binary,
    representation_table,
    theorem_checks,
    v2_density_construction,
    zp_represents,
)

__all__ = [
    "DomainError",
    "ParseError",
    "QuadraticForm",
    "attainable_local_density_set",
    "density",
    "empirical_density",
    "exceptional_set",
    "greedy_interval_product",
    "hilbert_symbol",
    "is_isotropic_over_Q",
    "local_density",
    "locally_represented",
    "represented",
    "represents_isotropic_binary",
    "representation_table",
    "theorem_checks",
    "v2_density_construction",
    "zp_represents",
]
