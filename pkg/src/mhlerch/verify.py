"""Property harness binding the exact and float layers.

Each `verify_*` operation sweeps one identity, recurrence or bound over a
desk-scale parameter grid and returns a `VerificationReport`.  Exact-rational
checks demand bit-exact equality (residual 0); floating-point checks use an
absolute residual for values of magnitude <= 1 and a relative one otherwise.

`LEMMA_PROOF_IDENTITIES` names every displayed identity of the combinatorial
proof and the report that exercises it, so a dropped check fails the
completeness meta-test rather than silently narrowing coverage.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import exact, series
from .series import ShiftParam

#: Rational shift grid: integer and non-integer, sub-unit and super-unit.
DEFAULT_BETAS: Tuple[Fraction, ...] = (
    Fraction(1),
    Fraction(1, 2),
    Fraction(3, 2),
    Fraction(2),
    Fraction(7, 3),
    Fraction(5),
)
DEFAULT_ALPHAS: Tuple[Fraction, ...] = tuple(b - 1 for b in DEFAULT_BETAS)

#: Shift grid for float checks (real, rational and genuinely complex).
DEFAULT_SHIFTS: Tuple[complex, ...] = (0j, 0.5 + 0j, 1j, -0.5 + 0.5j)

#: Eight evaluation points with |z| <= 0.4 (real, imaginary and mixed).
DEFAULT_Z_GRID: Tuple[complex, ...] = (
    0.4 + 0j,
    -0.4 + 0j,
    0.3j,
    -0.25j,
    0.2 + 0.2j,
    -0.3 + 0.1j,
    0.25 - 0.28j,
    -0.15 - 0.35j,
)

DEFAULT_Q_MAX = 12
DEFAULT_STEP_Q_MAX = 11
DEFAULT_S_MAX = 5
DEFAULT_B_MAX = 8
DEFAULT_T_MAX = 4
DEFAULT_P_MAX_EXACT = 40
DEFAULT_P_MAX_INNER = 30
DEFAULT_P_MAX_FLOAT = 200
DEFAULT_FLOAT_TOL = 1e-10

#: Displayed identities of the combinatorial proof -> report that checks them.
LEMMA_PROOF_IDENTITIES: Dict[str, str] = {
    "L(q, beta) = R(q, beta)": "lemma",
    "L(0, beta) = R(0, beta)": "lemma_base_cases",
    "L(1, beta) = R(1, beta)": "lemma_base_cases",
    "L(q+1, beta) = L(q, beta) - L(q, beta+1)": "recurrence_L",
    "R(q+1, beta) = R(q, beta) - R(q, beta+1)": "recurrence_R",
    "S_a^c(t) = sum_{u+v=t} S_a^b(u) S_{b+1}^c(v)": "splitting",
    "S_{a-1}^{b+1}(t) = sum_{u+v+w=t} f_{a-1}^u S_a^b(v) f_{b+1}^w": "splitting",
}


@dataclass
class VerificationReport:
    """Outcome of sweeping one identity over a grid."""

    identity_name: str
    grid_description: str
    cases_run: int
    cases_failed: int
    worst_residual: float
    failing_cases: List[tuple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.cases_failed == 0

    def to_dict(self) -> dict:
        return {
            "identity_name": self.identity_name,
            "grid": self.grid_description,
            "cases_run": self.cases_run,
            "cases_failed": self.cases_failed,
            "worst_residual": self.worst_residual,
            "failing_cases": [[str(x) for x in case] for case in self.failing_cases],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def merge_reports(
    reports: Sequence[VerificationReport], name: Optional[str] = None
) -> VerificationReport:
    """Combine per-case reports; associative and order-independent."""
    if not reports:
        raise ValueError("nothing to merge")
    failing = sorted((case for r in reports for case in r.failing_cases), key=repr)
    return VerificationReport(
        identity_name=name or reports[0].identity_name,
        grid_description="; ".join(sorted({r.grid_description for r in reports})),
        cases_run=sum(r.cases_run for r in reports),
        cases_failed=sum(r.cases_failed for r in reports),
        worst_residual=max(r.worst_residual for r in reports),
        failing_cases=failing,
    )


class _Check:
    """Accumulates case outcomes for one report."""

    def __init__(self, name: str, grid: str):
        self.name = name
        self.grid = grid
        self.run = 0
        self.failed = 0
        self.worst = 0.0
        self.failing: List[tuple] = []

    def exact_case(self, ok: bool, params: tuple, residual: Fraction = Fraction(0)):
        self.run += 1
        if not ok:
            self.failed += 1
            self.failing.append(params)
            self.worst = max(self.worst, abs(float(residual)))

    def float_case(self, residual: float, tol: float, params: tuple):
        self.run += 1
        self.worst = max(self.worst, residual)
        if not residual <= tol:
            self.failed += 1
            self.failing.append(params)

    def report(self) -> VerificationReport:
        return VerificationReport(
            self.name, self.grid, self.run, self.failed, self.worst, self.failing
        )


def float_residual(value: complex, reference: complex) -> float:
    """Absolute difference for |reference| <= 1, relative otherwise."""
    diff = abs(value - reference)
    magnitude = abs(reference)
    return diff if magnitude <= 1.0 else diff / magnitude


def _betas(betas: Optional[Iterable[Fraction]]) -> Tuple[Fraction, ...]:
    if betas is None:
        return DEFAULT_BETAS
    return tuple(Fraction(b) for b in betas)


# ---------------------------------------------------------------------------
# exact-layer identities
# ---------------------------------------------------------------------------


def verify_lemma(
    q_max: int = DEFAULT_Q_MAX,
    s_max: int = DEFAULT_S_MAX,
    betas: Optional[Iterable[Fraction]] = None,
) -> VerificationReport:
    """L(q, beta) = R(q, beta) exactly on the full (q, s, beta) grid."""
    betas = _betas(betas)
    chk = _Check("lemma", f"q <= {q_max}, s <= {s_max}, {len(betas)} betas")
    for q in range(q_max + 1):
        for s in range(1, s_max + 1):
            for beta in betas:
                params = exact.LemmaParams(q, s, beta)
                lhs = exact.lemma_lhs(params)
                rhs = exact.lemma_rhs(params)
                chk.exact_case(lhs == rhs, (q, s, beta), lhs - rhs)
    return chk.report()


def verify_base_cases(
    s_max: int = DEFAULT_S_MAX,
    betas: Optional[Iterable[Fraction]] = None,
) -> VerificationReport:
    """The q = 0 and q = 1 base cases, including the displayed middle form

        L(1, beta) = 1/beta^s - 1/(beta+1)^s
                   = 1/(beta (beta+1)) * sum_{u+v=s-1} beta^{-u} (beta+1)^{-v}.
    """
    betas = _betas(betas)
    chk = _Check("lemma_base_cases", f"q in {{0, 1}}, s <= {s_max}, {len(betas)} betas")
    for s in range(1, s_max + 1):
        for beta in betas:
            p0 = exact.LemmaParams(0, s, beta)  # validates beta before any division
            closed0 = 1 / beta**s
            ok0 = exact.lemma_lhs(p0) == closed0 == exact.lemma_rhs(p0)
            chk.exact_case(ok0, (0, s, beta))

            p1 = exact.LemmaParams(1, s, beta)
            difference = 1 / beta**s - 1 / (beta + 1) ** s
            middle = sum(
                (beta**-u * (beta + 1) ** -v for u in range(s) for v in [s - 1 - u]),
                Fraction(0),
            ) / (beta * (beta + 1))
            ok1 = exact.lemma_lhs(p1) == difference == middle == exact.lemma_rhs(p1)
            chk.exact_case(ok1, (1, s, beta))
    return chk.report()


def verify_recurrence_L(
    q_max: int = DEFAULT_STEP_Q_MAX,
    s_max: int = DEFAULT_S_MAX,
    betas: Optional[Iterable[Fraction]] = None,
) -> VerificationReport:
    """L(q+1, beta) = L(q, beta) - L(q, beta+1) exactly, for 0 <= q <= q_max."""
    betas = _betas(betas)
    chk = _Check("recurrence_L", f"step q <= {q_max}, s <= {s_max}, {len(betas)} betas")
    for q in range(q_max + 1):
        for s in range(1, s_max + 1):
            for beta in betas:
                lhs = exact.lemma_lhs(exact.LemmaParams(q + 1, s, beta))
                rhs = exact.lemma_lhs(exact.LemmaParams(q, s, beta)) - exact.lemma_lhs(
                    exact.LemmaParams(q, s, beta + 1)
                )
                chk.exact_case(lhs == rhs, (q, s, beta), lhs - rhs)
    return chk.report()


def verify_recurrence_R(
    q_max: int = DEFAULT_STEP_Q_MAX,
    s_max: int = DEFAULT_S_MAX,
    betas: Optional[Iterable[Fraction]] = None,
) -> VerificationReport:
    """R(q+1, beta) = R(q, beta) - R(q, beta+1) exactly, for 1 <= q <= q_max.

    The q = 0 step also holds but is asserted separately by
    `verify_recurrence_R_base` (the recurrence is only claimed from q = 1).
    """
    betas = _betas(betas)
    chk = _Check("recurrence_R", f"step 1 <= q <= {q_max}, s <= {s_max}, {len(betas)} betas")
    for q in range(1, q_max + 1):
        for s in range(1, s_max + 1):
            for beta in betas:
                lhs = exact.lemma_rhs(exact.LemmaParams(q + 1, s, beta))
                rhs = exact.lemma_rhs(exact.LemmaParams(q, s, beta)) - exact.lemma_rhs(
                    exact.LemmaParams(q, s, beta + 1)
                )
                chk.exact_case(lhs == rhs, (q, s, beta), lhs - rhs)
    return chk.report()


def verify_recurrence_R_base(
    s_max: int = DEFAULT_S_MAX,
    betas: Optional[Iterable[Fraction]] = None,
) -> VerificationReport:
    """R(1, beta) = R(0, beta) - R(0, beta+1): the unclaimed q = 0 step."""
    betas = _betas(betas)
    chk = _Check("recurrence_R_q0", f"q = 0, s <= {s_max}, {len(betas)} betas")
    for s in range(1, s_max + 1):
        for beta in betas:
            lhs = exact.lemma_rhs(exact.LemmaParams(1, s, beta))
            rhs = exact.lemma_rhs(exact.LemmaParams(0, s, beta)) - exact.lemma_rhs(
                exact.LemmaParams(0, s, beta + 1)
            )
            chk.exact_case(lhs == rhs, (0, s, beta), lhs - rhs)
    return chk.report()


def verify_splitting(
    b_max: int = DEFAULT_B_MAX,
    t_max: int = DEFAULT_T_MAX,
    betas: Optional[Iterable[Fraction]] = None,
) -> VerificationReport:
    """Both block-splitting identities of the multiple harmonic sum, exactly:

        S_a^c(t) = sum_{u+v=t} S_a^b(u) S_{b+1}^c(v)          (0 <= a <= b < c)
        S_{a-1}^{b+1}(t) = sum_{u+v+w=t} f_{a-1}^u S_a^b(v) f_{b+1}^w   (1 <= a <= b)
    """
    betas = _betas(betas)
    chk = _Check(
        "splitting", f"0 <= a <= b < c <= {b_max}, t <= {t_max}, {len(betas)} betas"
    )

    def S(a: int, b: int, t: int, beta: Fraction) -> Fraction:
        return exact.multi_sum(exact.MultiSumSpec(a, b, t, beta))

    for beta in betas:
        for t in range(t_max + 1):
            for a in range(b_max):
                for b in range(a, b_max):
                    for c in range(b + 1, b_max + 1):
                        lhs = S(a, c, t, beta)
                        rhs = sum(
                            (S(a, b, u, beta) * S(b + 1, c, t - u, beta) for u in range(t + 1)),
                            Fraction(0),
                        )
                        chk.exact_case(lhs == rhs, ("two", a, b, c, t, beta), lhs - rhs)
            for a in range(1, b_max):
                for b in range(a, b_max):
                    f_lo = Fraction(1) / (beta + a - 1)
                    f_hi = Fraction(1) / (beta + b + 1)
                    lhs = S(a - 1, b + 1, t, beta)
                    rhs = Fraction(0)
                    for u in range(t + 1):
                        for v in range(t + 1 - u):
                            w = t - u - v
                            rhs += f_lo**u * S(a, b, v, beta) * f_hi**w
                    chk.exact_case(lhs == rhs, ("three", a, b, t, beta), lhs - rhs)
    return chk.report()


# ---------------------------------------------------------------------------
# float-layer checks
# ---------------------------------------------------------------------------


def verify_lemma_complex(
    q_max: int = 8,
    s_max: int = 4,
    betas: Tuple[complex, ...] = (1 + 1j, 0.5 + 2j, 2.5 - 1j),
    tol: float = 1e-9,
) -> VerificationReport:
    """Floating-point spot check of L = R at genuinely complex beta.

    The exact layer only covers rational beta; this closes the gap.  q stays
    small because the alternating sum loses ~2^q of precision to cancellation.
    """
    chk = _Check("lemma_complex_spot", f"q <= {q_max}, s <= {s_max}, complex betas")
    for beta in betas:
        for q in range(q_max + 1):
            for s in range(1, s_max + 1):
                lhs = 0j
                sign = 1.0
                for m in range(q + 1):
                    lhs += sign * math.comb(q, m) / (beta + m) ** s
                    sign = -sign
                rising = 1 + 0j
                for j in range(q + 1):
                    rising *= beta + j
                col = [1 + 0j] + [0j] * (s - 1)
                for n in range(q + 1):
                    f_n = 1 / (beta + n)
                    for t in range(1, s):
                        col[t] += f_n * col[t - 1]
                rhs = math.factorial(q) / rising * col[s - 1]
                chk.float_case(float_residual(lhs, rhs), tol, (q, s, beta))
    return chk.report()


def verify_proposition(
    z_grid: Optional[Sequence[complex]] = None,
    shifts: Optional[Sequence[ShiftParam]] = None,
    s_max: int = 3,
    tol: float = DEFAULT_FLOAT_TOL,
) -> VerificationReport:
    """Accelerated evaluator against the direct-series oracle at w = -z/(1-z).

    Requires |z| <= 0.4 so the direct series converges comfortably (|w| < 1).
    """
    z_grid = tuple(z_grid) if z_grid is not None else DEFAULT_Z_GRID
    shifts = tuple(shifts) if shifts is not None else tuple(ShiftParam(a) for a in DEFAULT_SHIFTS)
    for z in z_grid:
        if abs(z) > 0.4:
            raise ValueError(f"z grid point {z} has |z| > 0.4")
    chk = _Check(
        "proposition_oracle",
        f"{len(z_grid)} z points (|z| <= 0.4), {len(shifts)} shifts, s <= {s_max}",
    )
    for shift in shifts:
        for s in range(1, s_max + 1):
            for z in z_grid:
                w = series.disk_to_half_plane(z)
                accelerated = series.lerch_accelerated(w, shift, s, tol=1e-12)
                direct = series.lerch_direct(w, shift, s, tol=1e-12)
                residual = abs(accelerated.value - direct.value)
                chk.float_case(residual, tol, (z, shift.alpha, s))
    return chk.report()


def verify_coefficient_consistency(
    p_max: int = DEFAULT_P_MAX_EXACT,
    alphas: Optional[Sequence[Fraction]] = None,
    s_max: int = DEFAULT_S_MAX,
    rel_tol: float = 1e-12,
) -> VerificationReport:
    """coefficient_float against coefficient_exact (relative, rational shifts)."""
    alphas = tuple(Fraction(a) for a in alphas) if alphas is not None else DEFAULT_ALPHAS
    chk = _Check(
        "coefficient_consistency",
        f"p <= {p_max}, s <= {s_max}, {len(alphas)} rational alphas",
    )
    for alpha in alphas:
        shift = ShiftParam(complex(float(alpha)))
        for s in range(1, s_max + 1):
            exact_stream = exact.coefficient_stream(alpha, s)
            float_stream = series._coefficient_stream(shift.alpha, s)
            for p in range(1, p_max + 1):
                c_exact = float(next(exact_stream))
                _, c_float, _ = next(float_stream)
                rel = abs(c_float - c_exact) / abs(c_exact)
                chk.float_case(rel, rel_tol, (p, alpha, s))
    return chk.report()


def verify_euler_inner_sums(
    p_max: int = DEFAULT_P_MAX_INNER,
    alphas: Optional[Sequence[Fraction]] = None,
    s_max: int = DEFAULT_S_MAX,
    rel_tol: float = 1e-12,
) -> VerificationReport:
    """Inner binomial sums of the transformed series against coefficient_float.

    The inner sum is evaluated in exact rational arithmetic (the alternating
    route loses ~2^p of binary64 precision to cancellation, which would swamp
    a 1e-12 comparison by p ~ 20); the float side is the product-form
    coefficient.  This is the numeric shadow of the L = R identity.
    """
    alphas = tuple(Fraction(a) for a in alphas) if alphas is not None else DEFAULT_ALPHAS
    chk = _Check(
        "euler_inner_consistency",
        f"p <= {p_max}, s <= {s_max}, {len(alphas)} rational alphas",
    )
    for alpha in alphas:
        shift = ShiftParam(complex(float(alpha)))
        for s in range(1, s_max + 1):
            float_stream = series._coefficient_stream(shift.alpha, s)
            for p in range(1, p_max + 1):
                inner = float(exact.alternating_coefficient_sum(p, alpha, s))
                _, c_float, _ = next(float_stream)
                rel = abs(inner - c_float) / abs(inner)
                chk.float_case(rel, rel_tol, (p, alpha, s))
    return chk.report()


def verify_coefficient_bound(
    p_max: int = DEFAULT_P_MAX_FLOAT,
    shifts: Optional[Sequence[ShiftParam]] = None,
    s_max: int = 6,
    slack: float = 1e-10,
) -> VerificationReport:
    """|c_p| <= coefficient majorant * (1 + slack) across the shift grid."""
    shifts = tuple(shifts) if shifts is not None else tuple(ShiftParam(a) for a in DEFAULT_SHIFTS)
    chk = _Check(
        "coefficient_bound", f"p <= {p_max}, s <= {s_max}, {len(shifts)} shifts"
    )
    for shift in shifts:
        for s in range(1, s_max + 1):
            stream = series._coefficient_stream(shift.alpha, s)
            for p in range(1, p_max + 1):
                _, c_p, prefactor_abs = next(stream)
                bound = prefactor_abs * (p / shift.gap) ** (s - 1)
                excess = abs(c_p) / bound - 1.0 if bound > 0 else math.inf
                chk.float_case(max(excess, 0.0), slack, (p, shift.alpha, s))
    return chk.report()


def verify_ap_bound(p_max: int = DEFAULT_P_MAX_FLOAT, s_max: int = 6) -> VerificationReport:
    """0 < a_p <= (1 + ln p)^{s-1}, and a_p nondecreasing in p."""
    chk = _Check("ap_bound", f"p <= {p_max}, s <= {s_max}")
    for s in range(1, s_max + 1):
        col = [1.0] + [0.0] * (s - 1)
        previous = 0.0
        for p in range(1, p_max + 1):
            f_p = 1.0 / p
            for t in range(1, s):
                col[t] += f_p * col[t - 1]
            a_p = col[s - 1]
            ok = 0.0 < a_p <= (1.0 + math.log(p)) ** (s - 1) and a_p >= previous
            chk.exact_case(ok, (p, s))
            previous = a_p
    return chk.report()


def verify_sondow_form(
    s_max: int = DEFAULT_S_MAX,
    P: int = 60,
    tol: float = DEFAULT_FLOAT_TOL,
) -> VerificationReport:
    """The alpha = 0, z = 1/2 special case: the binomial double sum agrees with
    the accelerated evaluator at w = -1 and with -(1 - 2^{1-s}) zeta(s)
    (with -ln 2 as the s = 1 reference)."""
    shift = ShiftParam(0j)
    chk = _Check("sondow_special_case", f"s <= {s_max}, P = {P}, alpha = 0, z = 1/2")
    for s in range(1, s_max + 1):
        euler = series.euler_transform_eval(0.5, shift, s, P)
        accelerated = series.lerch_accelerated(-1.0, shift, s, tol=1e-12)
        chk.float_case(float_residual(euler, accelerated.value), tol, ("euler=accel", s))
        if s == 1:
            reference = -math.log(2.0)
        else:
            zeta = series.zeta_accelerated(s, tol=1e-12)
            reference = -(1.0 - 2.0 ** (1 - s)) * zeta.value.real
        chk.float_case(float_residual(euler, reference), tol, ("euler=zeta-ref", s))
    return chk.report()


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

SUITE_NAMES = ("lemma", "recurrences", "splitting", "proposition", "bounds", "sondow")


def run_suite(
    name: str,
    q_max: Optional[int] = None,
    s_max: Optional[int] = None,
    p_max: Optional[int] = None,
    betas: Optional[Iterable[Fraction]] = None,
    tol: Optional[float] = None,
) -> List[VerificationReport]:
    """Run one named suite with optional grid overrides."""

    def pick(value, default):
        return default if value is None else value

    if name == "lemma":
        return [
            verify_base_cases(pick(s_max, DEFAULT_S_MAX), betas),
            verify_lemma(pick(q_max, DEFAULT_Q_MAX), pick(s_max, DEFAULT_S_MAX), betas),
            verify_lemma_complex(s_max=pick(s_max, 4)),
        ]
    if name == "recurrences":
        return [
            verify_recurrence_L(pick(q_max, DEFAULT_STEP_Q_MAX), pick(s_max, DEFAULT_S_MAX), betas),
            verify_recurrence_R(pick(q_max, DEFAULT_STEP_Q_MAX), pick(s_max, DEFAULT_S_MAX), betas),
            verify_recurrence_R_base(pick(s_max, DEFAULT_S_MAX), betas),
        ]
    if name == "splitting":
        return [verify_splitting(betas=betas)]
    if name == "proposition":
        return [
            verify_proposition(s_max=pick(s_max, 3), tol=pick(tol, DEFAULT_FLOAT_TOL)),
            verify_coefficient_consistency(pick(p_max, DEFAULT_P_MAX_EXACT), None, pick(s_max, DEFAULT_S_MAX)),
            verify_euler_inner_sums(pick(p_max, DEFAULT_P_MAX_INNER), None, pick(s_max, DEFAULT_S_MAX)),
        ]
    if name == "bounds":
        return [
            verify_coefficient_bound(pick(p_max, DEFAULT_P_MAX_FLOAT), None, pick(s_max, 6)),
            verify_ap_bound(pick(p_max, DEFAULT_P_MAX_FLOAT), pick(s_max, 6)),
        ]
    if name == "sondow":
        return [verify_sondow_form(pick(s_max, DEFAULT_S_MAX), tol=pick(tol, DEFAULT_FLOAT_TOL))]
    if name == "all":
        out: List[VerificationReport] = []
        for suite in SUITE_NAMES:
            out.extend(run_suite(suite, q_max, s_max, p_max, betas, tol))
        return out
    raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES + ('all',)}")


def lemma_proof_coverage(reports: Sequence[VerificationReport]) -> Dict[str, bool]:
    """Map each displayed proof identity to 'its report exists and passed'."""
    by_name: Dict[str, List[VerificationReport]] = {}
    for r in reports:
        by_name.setdefault(r.identity_name, []).append(r)
    return {
        identity: (report_name in by_name and all(r.passed for r in by_name[report_name]))
        for identity, report_name in LEMMA_PROOF_IDENTITIES.items()
    }
