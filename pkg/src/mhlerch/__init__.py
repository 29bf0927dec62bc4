"""Shifted polylogarithm (Lerch-type) evaluation on the half-plane
Re(w) < 1/2 through a multiple-harmonic power series in z = w/(w-1),
an accelerated zeta(s) series at z = 1/2, and an exact-rational layer that
verifies the combinatorial identities behind the transform.

Layers:

- `exact`  - arbitrary-precision rational kernel (Pochhammer products,
  multiple harmonic sums, both sides of the binomial identity, exact series
  coefficients), each with a brute-force oracle.
- `series` - complex binary64 evaluators with a-posteriori error bounds.
- `verify` - grid sweeps of every identity, recurrence and bound, reported
  as structured `VerificationReport`s.
- `cli`    - `mhlerch eval|zeta|verify|bench` with JSON/CSV output.
"""

from .errors import DomainError, EnumerationCapError, InvalidShiftError, PrecisionError
from .exact import (
    LemmaParams,
    MultiSumSpec,
    Rational,
    alternating_coefficient_sum,
    binomial,
    coefficient_exact,
    lemma_lhs,
    lemma_rhs,
    multi_sum,
    multi_sum_bruteforce,
    pochhammer,
)
from .series import (
    SeriesResult,
    ShiftParam,
    alternating_direct,
    ap_coefficient,
    coefficient_bound,
    coefficient_float,
    disk_to_half_plane,
    euler_inner_sum,
    euler_transform_eval,
    half_plane_to_disk,
    lerch_accelerated,
    lerch_direct,
    shift_gap,
    zeta_accelerated,
)
from .verify import VerificationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "EnumerationCapError",
    "InvalidShiftError",
    "PrecisionError",
    "LemmaParams",
    "MultiSumSpec",
    "Rational",
    "alternating_coefficient_sum",
    "binomial",
    "coefficient_exact",
    "lemma_lhs",
    "lemma_rhs",
    "multi_sum",
    "multi_sum_bruteforce",
    "pochhammer",
    "SeriesResult",
    "ShiftParam",
    "alternating_direct",
    "ap_coefficient",
    "coefficient_bound",
    "coefficient_float",
    "disk_to_half_plane",
    "euler_inner_sum",
    "euler_transform_eval",
    "half_plane_to_disk",
    "lerch_accelerated",
    "lerch_direct",
    "shift_gap",
    "zeta_accelerated",
    "VerificationReport",
    "run_suite",
    "__version__",
]
