"""Identity and invariant verification suites.

Every closed-form identity of the three families is rechecked here: sum rules,
anti-diagonal sums, the weighted integrals over rho, the closed-form vacuum
rows, the singular-family reductions and the excitation extractors.  One
check is special: the second weighted-integral identity disagrees with the
value this package derives (1/2 for the (0,2) entry and 3/4 for (1,3)
instead of 1), so it is *reported only* and never fails a run.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import forced, parametric, singular
from .excitation import bogoliubov_from_frequency, nu_from_force
from .profiles import ForceProfile, FrequencyProfile
from .series import dft_extract_table

__all__ = ["CheckResult", "VerifyReport", "run_suite", "SUITES"]

_NU_GRID = (0.3, 1.0, 3.0)
_RHO_GRID = (0.1, 0.5, 0.9)
_J_GRID = (-0.25, -0.75, -0.6, -1.3)
_ORACLE_GRID_SIZE = 256


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    equation: str
    computed: str
    expected: str
    residual: float
    tol: float
    status: str  # pass | fail | reported-only
    note: str = ""


@dataclass
class VerifyReport:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def n_pass(self) -> int:
        return sum(1 for c in self.checks if c.status == "pass")

    @property
    def n_fail(self) -> int:
        return sum(1 for c in self.checks if c.status == "fail")

    @property
    def n_reported(self) -> int:
        return sum(1 for c in self.checks if c.status == "reported-only")

    @property
    def exit_code(self) -> int:
        return 1 if self.n_fail else 0

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "wall_time": self.wall_time,
            "summary": {
                "pass": self.n_pass,
                "fail": self.n_fail,
                "reported_only": self.n_reported,
            },
            "checks": [
                {
                    "id": c.check_id,
                    "equation": c.equation,
                    "computed": c.computed,
                    "expected": c.expected,
                    "residual": c.residual,
                    "tol": c.tol,
                    "status": c.status,
                    "note": c.note,
                }
                for c in self.checks
            ],
        }

    def format_text(self) -> str:
        lines = []
        for c in self.checks:
            tag = {"pass": "PASS", "fail": "FAIL", "reported-only": "NOTE"}[c.status]
            lines.append(
                f"[{tag}] {c.check_id:<34} {c.equation:<10} "
                f"residual={c.residual:.3e} tol={c.tol:.1e}"
            )
            if c.note:
                lines.append(f"       {c.note}")
        lines.append(
            f"{self.n_pass} passed, {self.n_fail} failed, "
            f"{self.n_reported} reported-only ({self.wall_time:.1f}s)"
        )
        return "\n".join(lines)


def _check(check_id, equation, residual, tol, computed="", expected="", note=""):
    status = "pass" if residual <= tol else "fail"
    return CheckResult(
        check_id, equation, computed, expected, float(residual), tol, status, note
    )


# ---------------------------------------------------------------------------
# forced oscillator

def _forced_checks(tol_oracle: float) -> list[CheckResult]:
    out = []

    # exact sum rules, m,n <= 8
    bad = 0
    worst_quad = 0.0
    for m in range(9):
        for n in range(9):
            r = forced.forced_sum_rules(m, n)
            if not (
                r.norm == 1
                and r.mean == m + n + 1
                and r.variance == 2 * m * n + m + n + 1
            ):
                bad += 1
            for got, want in (
                (r.norm_quad, 1.0),
                (r.mean_quad, m + n + 1.0),
                (r.variance_quad, 2.0 * m * n + m + n + 1.0),
            ):
                worst_quad = max(worst_quad, abs(got - want) / want)
    out.append(
        _check(
            "forced.sum-rules.exact", "moments", float(bad), 0.0,
            computed=f"{81-bad}/81 triples exactly (1, m+n+1, 2mn+m+n+1)",
            expected="81/81",
        )
    )
    out.append(
        _check(
            "forced.sum-rules.quadrature", "moments", worst_quad, 1e-12,
            computed="Gauss-Laguerre cross-check", expected="matches exact values",
        )
    )

    # Poisson vacuum row
    worst = 0.0
    for nu in _NU_GRID:
        table = forced.forced_prob_table(nu, size=13, mode="float")
        term = math.exp(-nu)
        for n in range(13):
            worst = max(worst, abs(table.values[0][n] - term))
            term *= nu / (n + 1)
    out.append(
        _check(
            "forced.poisson-row", "vacuum row", worst, 1e-12,
            computed="w_0n vs nu^n e^-nu / n!",
        )
    )

    bad = 0
    for n in range(13):
        r = forced.forced_sum_rules(0, n)
        if r.variance != r.mean:
            bad += 1
    out.append(
        _check(
            "forced.poisson-variance", "moments", float(bad), 0.0,
            computed="variance == mean exactly on row 0", expected="13/13",
        )
    )

    # anti-diagonal sums
    worst = 0.0
    for nu in _NU_GRID:
        table = forced.forced_prob_table(nu, size=17, mode="float")
        for k in range(17):
            diag = sum(table.values[m][k - m] for m in range(k + 1))
            worst = max(worst, abs(forced.forced_sk(k, nu) - diag))
    out.append(
        _check(
            "forced.antidiagonal", "S_k", worst, 1e-12,
            computed="Laguerre partial sums vs table anti-diagonals",
        )
    )

    spots = max(
        abs(forced.forced_sk(0, nu) - math.exp(-nu)) for nu in _NU_GRID
    )
    spots = max(spots, abs(forced.forced_sk(1, 1.0) - 2.0 * math.exp(-1.0)))
    spots = max(spots, abs(forced.forced_sk(3, 1.0) - (4.0 / 3.0) * math.exp(-1.0)))
    out.append(
        _check(
            "forced.antidiagonal.spot", "S_k", spots, 1e-12,
            computed="S_0 = e^-nu, S_1(1) = 2/e, S_3(1) = 4/(3e)",
        )
    )

    # unitarity with a wide window
    worst = 0.0
    for nu in (0.3, 1.0, 3.0, 5.0):
        grid = math.exp(-nu) * forced._float_grid(nu, 8, 64)
        worst = max(worst, float((1.0 - grid.sum(axis=1)).max()))
    out.append(
        _check(
            "forced.unitarity", "row sums", worst, 1e-10,
            computed="1 - sum_n w_mn for m <= 8, nu <= 5, 65 columns",
        )
    )

    # symmetry
    worst = 0.0
    for nu in _NU_GRID:
        v = forced.forced_prob_table(nu, size=13, mode="float").values
        worst = max(worst, float(np.max(np.abs(v - v.T))))
    exact = forced._exact_grid(8, 8)
    sym_ok = all(
        exact.coeff(m, n) == exact.coeff(n, m) for m in range(9) for n in range(9)
    )
    out.append(
        _check(
            "forced.symmetry", "w_mn", worst if sym_ok else 1.0, 1e-12,
            computed="float tables and exact polynomials",
        )
    )

    # oracle equivalence
    worst = 0.0
    for nu in _NU_GRID:
        ser = math.exp(-nu) * forced._float_grid(nu, 10, 10)
        dft = dft_extract_table(
            lambda U, V, nu=nu: forced.forced_gf_value(U, V, nu),
            10, 10, radius=0.5, grid=_ORACLE_GRID_SIZE,
        )
        worst = max(worst, float(np.max(np.abs(ser - dft))))
    out.append(
        _check(
            "forced.oracle-dft", "w_mn", worst, tol_oracle,
            computed="series engine vs contour extraction",
        )
    )
    return out


# ---------------------------------------------------------------------------
# parametric oscillator

def _parametric_checks(tol_oracle: float) -> list[CheckResult]:
    out = []

    # arctanh integral identity on a grid
    worst = 0.0
    for u in np.linspace(-0.7, 0.7, 5):
        for v in np.linspace(-0.7, 0.7, 5):
            worst = max(worst, parametric.param_identity_eq6(float(u), float(v)).residual)
    out.append(
        _check(
            "param.arctanh-integral", "1/(1-rho)", worst, 1e-9,
            computed="Jacobi quadrature vs 2(arctanh u - arctanh v)/(u-v)",
        )
    )

    # first weighted integral: exact and quadrature
    bad = 0
    worst_quad = 0.0
    for m in range(11):
        for n in range(11):
            r = parametric.param_weighted_integrals(m, n)
            if r.first != r.expected_first:
                bad += 1
            worst_quad = max(worst_quad, abs(float(r.first) - r.first_quad))
    out.append(
        _check(
            "param.weighted-first.exact", "1/(1-rho)", float(bad), 0.0,
            computed=f"{121-bad}/121 equal (1+(-1)^(m+n))/(m+n+1) exactly",
            expected="121/121",
        )
    )
    out.append(
        _check(
            "param.weighted-first.quadrature", "1/(1-rho)", worst_quad, 1e-10,
            computed="Gauss-Jacobi cross-check",
        )
    )

    # second weighted integral: reported only
    r02 = parametric.param_weighted_integrals(0, 2)
    r13 = parametric.param_weighted_integrals(1, 3)
    out.append(
        CheckResult(
            "param.weighted-second.reported",
            "1/(rho sqrt)",
            computed=f"(0,2) -> {r02.second}, (1,3) -> {r13.second}",
            expected=f"quoted closed form gives {r02.expected_second} and {r13.expected_second}",
            residual=max(
                abs(float(r02.second - r02.expected_second)),
                abs(float(r13.second - r13.expected_second)),
            ),
            tol=math.inf,
            status="reported-only",
            note=(
                "quoted-identity mismatch: the integral of w_mn/(rho sqrt(1-rho)) "
                "evaluates to 1/2 at (0,2) and 3/4 at (1,3), not the quoted "
                "(1+(-1)^(m+n))/|m-n|; reported without gating"
            ),
        )
    )

    # diagonal rho-integrals J_nn
    bad = 0
    worst_quad = 0.0
    for n in range(7):
        r = parametric.param_jnn(n)
        if r.closed_form != r.symbolic:
            bad += 1
        worst_quad = max(worst_quad, abs(float(r.closed_form) - r.quadrature))
    out.append(
        _check(
            "param.diagonal-integral.exact", "J_nn", float(bad), 0.0,
            computed=f"{7-bad}/7 match (1/(2n+1))[1 + 1/((2n+3)(2n-1))] exactly",
            expected="7/7",
        )
    )
    out.append(
        _check(
            "param.diagonal-integral.quadrature", "J_nn", worst_quad, 1e-10,
            computed="Gauss-Jacobi cross-check",
        )
    )

    # anti-diagonal sums
    worst = 0.0
    for rho in (0.19, 0.5, 0.8):
        table = parametric.param_prob_table(rho, size=13, mode="float")
        for k in range(13):
            diag = sum(table.values[m][k - m] for m in range(k + 1))
            worst = max(worst, abs(diag - parametric.param_sk(k, rho)))
    out.append(
        _check(
            "param.antidiagonal", "S_k", worst, 1e-12,
            computed="sqrt(1-rho) for even k, 0 for odd k, vs table sums",
        )
    )

    # mean quantum number and vacuum dispersion
    worst = 0.0
    for rho in (0.1, 0.5, 0.8):
        for m in range(5):
            moments, _ = parametric.param_row_moments(m, rho, tol=1e-10, power=1)
            want = parametric.param_mean_n(m, rho)
            worst = max(worst, abs(moments[1] - want) / max(1.0, want))
    out.append(
        _check(
            "param.mean-n", "<n>_m", worst, 1e-8,
            computed="-1/2 + (m+1/2)(1+rho)/(1-rho) vs truncated row moments",
        )
    )

    worst = 0.0
    for rho in (0.1, 0.5, 0.8):
        got = parametric.param_dispersion(0, rho, tol=1e-10)
        want = 2.0 * rho / (1.0 - rho) ** 2
        worst = max(worst, abs(got - want) / want)
    out.append(
        _check(
            "param.dispersion-vacuum", "<dn^2>_0", worst, 1e-8,
            computed="table moments vs 2 rho/(1-rho)^2",
        )
    )

    # parity and structure of the exact polynomials
    grid = parametric._exact_grid(12, 12)
    parity_ok = structure_ok = True
    for m in range(13):
        for n in range(13):
            q = grid.coeff(m, n)
            if (m + n) % 2 == 1:
                parity_ok = parity_ok and not q
            else:
                half = abs(m - n) // 2
                structure_ok = structure_ok and all(
                    c == 0 for c in q.coeffs[:half]
                ) and q.degree <= (m + n) // 2
    out.append(
        _check(
            "param.parity", "w_mn", 0.0 if parity_ok else 1.0, 0.0,
            computed="w_mn = 0 exactly for odd m+n, m,n <= 12",
        )
    )
    out.append(
        _check(
            "param.structure", "w_mn", 0.0 if structure_ok else 1.0, 0.0,
            computed="q_mn divisible by rho^(|m-n|/2), degree <= (m+n)/2",
        )
    )

    # unitarity with adaptive windows
    worst = 0.0
    for rho in (0.1, 0.5, 0.8):
        for m in range(9):
            moments, _ = parametric.param_row_moments(m, rho, tol=1e-11, power=0)
            worst = max(worst, 1.0 - moments[0])
    out.append(
        _check(
            "param.unitarity", "row sums", worst, 1e-10,
            computed="1 - sum_n w_mn, m <= 8, rho <= 0.8, adaptive windows",
        )
    )

    # oracle equivalence
    worst = 0.0
    for rho in _RHO_GRID:
        ser = math.sqrt(1.0 - rho) * parametric._float_grid(rho, 10, 10)
        dft = dft_extract_table(
            lambda U, V, r=rho: parametric.param_gf_value(U, V, r),
            10, 10, radius=0.5, grid=_ORACLE_GRID_SIZE,
        )
        worst = max(worst, float(np.max(np.abs(ser - dft))))
    out.append(
        _check(
            "param.oracle-dft", "w_mn", worst, tol_oracle,
            computed="series engine vs contour extraction",
        )
    )
    return out


# ---------------------------------------------------------------------------
# singular oscillator

def _singular_checks(tol_oracle: float) -> list[CheckResult]:
    out = []

    worst_even = worst_odd = 0.0
    for rho in _RHO_GRID:
        par = parametric.param_prob_table(rho, size=15, mode="float").values
        even = singular.singular_prob_table(rho, -0.25, size=7).values
        odd = singular.singular_prob_table(rho, -0.75, size=7).values
        worst_even = max(
            worst_even,
            max(abs(even[m][n] - par[2 * m][2 * n]) for m in range(7) for n in range(7)),
        )
        worst_odd = max(
            worst_odd,
            max(
                abs(odd[m][n] - par[2 * m + 1][2 * n + 1])
                for m in range(7)
                for n in range(7)
            ),
        )
    out.append(
        _check(
            "singular.reduction-even", "families", worst_even, 1e-10,
            computed="j=-1/4 table vs even-even variable-frequency table",
        )
    )
    out.append(
        _check(
            "singular.reduction-odd", "families", worst_odd, 1e-10,
            computed="j=-3/4 table vs odd-odd variable-frequency table",
        )
    )

    # vacuum row closed form vs series extraction
    worst = 0.0
    for rho in _RHO_GRID:
        for j in _J_GRID:
            table = singular.singular_prob_table(rho, j, size=13)
            for n in range(13):
                worst = max(
                    worst, abs(table.values[0][n] - singular.ground_row(n, rho, j))
                )
    out.append(
        _check(
            "singular.ground-row", "w_0n", worst, 1e-10,
            computed="Gamma-ratio closed form vs series row",
        )
    )

    # vacuum row normalization
    worst = 0.0
    for rho in (0.5, 0.8):
        for j in _J_GRID:
            total = 0.0
            term_n = 0
            while term_n < 4096:
                w = singular.ground_row(term_n, rho, j)
                total += w
                if term_n > 8 and w < 1e-14:
                    break
                term_n += 1
            worst = max(worst, abs(1.0 - total))
    out.append(
        _check(
            "singular.ground-row-normalization", "w_0n", worst, 1e-8,
            computed="sum of the closed-form vacuum row",
        )
    )

    # adiabatic slope, Richardson extraction and the two algebraic forms
    worst_rich = worst_forms = 0.0
    for j in (-0.25, -0.75, -0.6):
        for n in range(5):
            rec = singular.adiabatic_diag(n, j)
            worst_forms = max(worst_forms, abs(rec.slope - rec.slope_from_big_n))
            s = []
            for eps in (1e-4, 2e-4):
                w_nn = singular.singular_prob_table(eps, j, size=n + 1).values[n][n]
                s.append((1.0 - w_nn) / eps)
            extracted = 2.0 * s[0] - s[1]
            worst_rich = max(worst_rich, abs(extracted - rec.slope) / rec.slope)
    out.append(
        _check(
            "singular.adiabatic-slope", "w_nn", worst_rich, 1e-4,
            computed="Richardson (1-w_nn)/rho vs 2[n^2-(2n+1)j]",
        )
    )
    out.append(
        _check(
            "singular.slope-forms", "w_nn", worst_forms, 1e-12,
            computed="2[n^2-(2n+1)j] vs (1/2)(N^2+N+1)",
        )
    )

    # unitarity and symmetry
    worst_sum = worst_sym = 0.0
    for rho in (0.5, 0.8):
        for j in (-0.25, -0.75, -1.3, -2.0):
            nmax = 64
            while True:
                grid = (1.0 - rho) ** (-2.0 * j) * singular._float_grid(rho, j, 8, nmax)
                deficit = float((1.0 - grid.sum(axis=1)).max())
                if deficit < 1e-8 or nmax >= 2048:
                    break
                nmax *= 2
            worst_sum = max(worst_sum, deficit)
            square = (1.0 - rho) ** (-2.0 * j) * singular._float_grid(rho, j, 8, 8)
            worst_sym = max(worst_sym, float(np.max(np.abs(square - square.T))))
    out.append(
        _check(
            "singular.unitarity", "row sums", worst_sum, 1e-8,
            computed="1 - sum_n w_mn, m <= 8, rho <= 0.8, |j| <= 2",
        )
    )
    out.append(
        _check(
            "singular.symmetry", "w_mn", worst_sym, 1e-12,
            computed="w_mn vs w_nm on 9x9 tables",
        )
    )

    # oracle equivalence
    worst = 0.0
    for rho in _RHO_GRID:
        for j in _J_GRID:
            ser = (1.0 - rho) ** (-2.0 * j) * singular._float_grid(rho, j, 10, 10)
            dft = dft_extract_table(
                lambda U, V, r=rho, jj=j: singular.singular_gf_value(U, V, r, jj),
                10, 10, radius=0.5, grid=_ORACLE_GRID_SIZE,
            )
            worst = max(worst, float(np.max(np.abs(ser - dft))))
    out.append(
        _check(
            "singular.oracle-dft", "w_mn", worst, tol_oracle,
            computed="series engine vs contour extraction",
        )
    )
    return out


# ---------------------------------------------------------------------------
# excitation extraction

def _excitation_checks(tol_oracle: float) -> list[CheckResult]:
    out = []
    wronskians = []

    nu = nu_from_force(ForceProfile.gaussian(1.0, 1.0, 0.0), 1.0).value
    want = math.pi * math.exp(-0.5) / 2.0
    out.append(
        _check(
            "excite.nu-gaussian", "nu", abs(nu - want), 1e-10,
            computed=f"{nu:.12g}", expected="pi e^(-1/2) / 2",
        )
    )

    nu0 = nu_from_force(ForceProfile.rectangular(1.0, 0.0, 2.0 * math.pi), 1.0).value
    out.append(
        _check(
            "excite.nu-full-period", "nu", abs(nu0), 1e-15,
            computed=f"{nu0:.3e}", expected="0 (full-period pulse)",
        )
    )

    ts = np.arange(-8.0, 8.0 + 1e-9, 2.0 * math.pi / 64.0)
    nut = nu_from_force(ForceProfile.tabulated(ts, np.exp(-(ts**2))), 1.0).value
    out.append(
        _check(
            "excite.nu-tabulated", "nu", abs(nut - want) / want, 1e-6,
            computed=f"{nut:.12g}", expected="closed form, 64 samples/period",
        )
    )

    r = bogoliubov_from_frequency(FrequencyProfile.sudden_step(1.0, 2.0))
    wronskians.append(r.wronskian_residual)
    out.append(
        _check(
            "excite.rho-sudden", "rho", abs(r.rho - 1.0 / 9.0), 1e-6,
            computed=f"{r.rho:.12g}", expected="1/9 for omega 1 -> 2",
        )
    )

    r = bogoliubov_from_frequency(FrequencyProfile.tanh_ramp(1.0, 4.0, 1.0), tol=1e-10)
    wronskians.append(r.wronskian_residual)
    want = math.sinh(math.pi / 2.0) ** 2 / math.sinh(3.0 * math.pi / 2.0) ** 2
    out.append(
        _check(
            "excite.rho-tanh", "rho", abs(r.rho - want) / want, 1e-6,
            computed=f"{r.rho:.12g}",
            expected="sinh^2(pi (w+-w-) T/2) / sinh^2(pi (w++w-) T/2)",
        )
    )

    r = bogoliubov_from_frequency(
        FrequencyProfile.tanh_ramp(1.0, 4.0, 20.0 / 3.0), tol=1e-10
    )
    wronskians.append(r.wronskian_residual)
    out.append(
        _check(
            "excite.rho-adiabatic", "rho", r.rho, 1e-3,
            computed=f"{r.rho:.3e}", expected="< 1e-3 for T (w+ + w-) >= 20",
        )
    )

    r = bogoliubov_from_frequency(
        FrequencyProfile.tanh_ramp(1.0, 4.0, 1e-3 / 2.0), tol=1e-10
    )
    wronskians.append(r.wronskian_residual)
    out.append(
        _check(
            "excite.rho-sudden-limit", "rho",
            abs(r.rho - 1.0 / 9.0) / (1.0 / 9.0), 1e-2,
            computed=f"{r.rho:.12g}", expected="within 1% of the jump formula",
        )
    )

    out.append(
        _check(
            "excite.wronskian", "|a|^2-|b|^2", max(wronskians), 1e-9,
            computed="worst |(|alpha|^2 - |beta|^2) - 1| over the runs above",
        )
    )
    return out


SUITES = {
    "forced": _forced_checks,
    "parametric": _parametric_checks,
    "singular": _singular_checks,
    "excitation": _excitation_checks,
}


def run_suite(suite: str = "all", tol: float = 1e-9) -> VerifyReport:
    """Run one named suite (or all of them) and collect a report.

    ``tol`` is the tolerance of the series-vs-contour oracle comparisons;
    identity checks keep their own pinned tolerances.
    """
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; pick from {list(SUITES)} or 'all'")
    names = list(SUITES) if suite == "all" else [suite]
    report = VerifyReport(suite=suite)
    start = time.perf_counter()
    for name in names:
        report.checks.extend(SUITES[name](tol))
    report.wall_time = time.perf_counter() - start
    return report
