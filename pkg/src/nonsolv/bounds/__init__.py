"""Exact arithmetic behind the counting arguments and Sylow tables."""

from .counting import (
    PSL2_CASES, SZ_CASES, BoundRecord, CountingScenario, CountResult, ScenarioError, SubgroupData,
    countinv_check, field_aut_gamma_bound, psl2_bounds, psl2_involutions, sz_bounds, sz_involutions,
    sz_scenario,
)
from .orders import (
    FAMILIES, OrderPolynomial, UnsupportedFamily, order_poly_eval, order_polynomial, p_part,
    primitive_prime_divisors, zsigmondy_ppd,
)
from .sylow import PPartClaim, PPartResult, load_claims, ppart_claim_check, sweep
