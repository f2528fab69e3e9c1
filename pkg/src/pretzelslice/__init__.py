"""Non-sliceness obstruction certificates for P(a, -a-2, -(a+1)^2/2).

The package computes Alexander polynomials for this pretzel family,
reduces them modulo the primes dividing (a+1)/2, tests the resulting
cyclotomic products for Fox-Milnor style factorizations, and packages
the outcome into certificates that re-verify from their own evidence.

>>> from pretzelslice import decide
>>> decide(3).verdict
'ObstructedParity'
"""

from ._version import __version__
from .cyclotomic import (
    CyclotomicQuery,
    count_irreducible_factors,
    cyclotomic_poly,
    factor_cyclotomic_oracle,
    has_self_reciprocal_factor,
)
# the submodule's `factor` function is reachable as pretzelslice.factor.factor;
# re-exporting it here would shadow the submodule itself
from .factor import factor_cyclic, fox_milnor_mod_p, is_irreducible
from .numth import factorize, is_prime, legendre, mult_order, totient
from .obstruction import (
    Certificate,
    ScanReport,
    WitnessPair,
    certificate_to_json,
    check_pair,
    decide,
    parity_witness,
    scan,
    self_reciprocal_witness,
    verify_certificate,
    witness_pairs,
)
from .poly import IntPoly, ModPoly
from .pretzel import (
    PretzelKnot,
    alexander_mod_p,
    alexander_poly,
    fox_milnor_status,
)

__all__ = [
    "__version__",
    "Certificate",
    "CyclotomicQuery",
    "IntPoly",
    "ModPoly",
    "PretzelKnot",
    "ScanReport",
    "WitnessPair",
    "alexander_mod_p",
    "alexander_poly",
    "certificate_to_json",
    "check_pair",
    "count_irreducible_factors",
    "cyclotomic_poly",
    "decide",
    "factor_cyclic",
    "factor_cyclotomic_oracle",
    "factorize",
    "fox_milnor_mod_p",
    "fox_milnor_status",
    "has_self_reciprocal_factor",
    "is_irreducible",
    "is_prime",
    "legendre",
    "mult_order",
    "parity_witness",
    "scan",
    "self_reciprocal_witness",
    "totient",
    "verify_certificate",
    "witness_pairs",
]
