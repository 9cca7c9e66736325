"""
Batería de validación.

Cada chequeo devuelve un CheckResult; ``validate`` los ejecuta todos y
construye el informe de texto. Los chequeos informativos se muestran pero no
cuentan para el código de salida.
"""

import filecmp
import logging
import math
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

import numpy as np

from config.settings import FD_DERIVATIVE_TOL
from src.analysis.partition import (
    decreasing_from,
    z_direct,
    z_euler_maclaurin,
    z_exact_nonrel,
    z_high_t,
)
from src.analysis.thermo import dulong_petit_ratio, reduce, thermo_from_series, thermo_high_t
from src.model.params import ModelParams, Regime
from src.model.spectrum import degeneracy, reduced_state
from src.numerics.quadrature import tail_integral_nonrel_quad, tail_integral_rel_quad
from src.numerics.series import (
    bernoulli,
    finite_difference_odd_derivatives,
    finite_difference_step,
    nonrel_odd_derivatives,
    nonrel_summand,
    rel_odd_derivatives,
    rel_summand,
    tail_coefficients_rel,
    tail_coefficients_rel_printed,
    tail_from_coefficients,
    tail_integral_nonrel,
    tail_integral_rel,
    tail_integral_rel_printed,
)
from src.utils.errors import EXIT_OK, EXIT_VALIDATION, DiracThermoError

logger = logging.getLogger(__name__)

XI_GRID = (1.0, 5.0, 10.0, 15.0)
HIGH_T_K_MAX = 10**8


@dataclass(frozen=True)
class CheckResult:
    """Resultado de un chequeo."""

    name: str
    passed: bool
    detail: str
    informational: bool = False

    def line(self) -> str:
        status = "INFO" if self.informational else ("PASS" if self.passed else "FAIL")
        return f"[{status}] {self.name}: {self.detail}"


@dataclass
class ValidationReport:
    """Conjunto de chequeos ejecutados."""

    checks: list[CheckResult] = field(default_factory=list)

    @property
    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed and not c.informational]

    @property
    def exit_code(self) -> int:
        return EXIT_VALIDATION if self.failed else EXIT_OK

    def lines(self) -> list[str]:
        lines = [check.line() for check in self.checks]
        counted = [c for c in self.checks if not c.informational]
        lines.append(f"{len(counted) - len(self.failed)}/{len(counted)} chequeos superados")
        return lines

    def text(self) -> str:
        return "\n".join(self.lines())


def _rel_state(a: float, b: float, xi: float):
    """Parámetros y estado naturales con los valores reducidos (a, b, xi)."""
    T = 1.0 / b
    params = ModelParams(mu=a * T, B=1.0, xi=xi, regime=Regime.RELATIVISTIC)
    return params, reduced_state(params, T)


def _nonrel_state(a: float, b_bar: float):
    """Parámetros y estado naturales (xi_bar = 1) con los valores reducidos (a, b_bar)."""
    T = 1.0 / b_bar
    params = ModelParams(mu=a * T, B=1.0, xi=1.0, regime=Regime.NONRELATIVISTIC)
    return params, reduced_state(params, T)


def _relative(value: float, reference: float) -> float:
    return abs(value - reference) / abs(reference)


# ---------------------------------------------------------------------------
# Espectro y Bernoulli
# ---------------------------------------------------------------------------


def check_degeneracy() -> CheckResult:
    k = np.arange(1, 10_001, dtype=np.int64)
    explicit = np.cumsum(2 * k + 1)
    passed = bool(np.array_equal(explicit, degeneracy(k)))
    return CheckResult("degeneracy-explicit-sum", passed, "k(k+2) = sum_{|m_j|=1..k}(2|m_j|+1) para k <= 10^4")


def check_bernoulli() -> CheckResult:
    def b(j: int) -> Fraction:
        if j == 0:
            return Fraction(1)
        if j == 1:
            return Fraction(-1, 2)
        if j % 2:
            return Fraction(0)
        return bernoulli(j)

    recurrence = all(sum(math.comb(m + 1, j) * b(j) for j in range(m + 1)) == 0 for m in range(1, 21))
    known = (bernoulli(2), bernoulli(4), bernoulli(6)) == (Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42))
    return CheckResult(
        "bernoulli-recurrence",
        recurrence and known,
        "recurrencia exacta hasta B_20; B_2=1/6, B_4=-1/30, B_6=1/42",
    )


# ---------------------------------------------------------------------------
# Integrales de cola
# ---------------------------------------------------------------------------


def check_tail_b5_coefficient(perturbation: float = 0.0) -> CheckResult:
    """Coeficiente de 1/b⁵ de la cola relativista: derivado frente a impreso, arbitrado por cuadratura."""
    a, b, xi = 0.0, 1.0, 1.0
    coefficients = [float(c) for c in tail_coefficients_rel(xi, 1.0)]
    coefficients[4] += perturbation
    closed = float(tail_from_coefficients(a, b, math.sqrt(1.0 + 2.0 * xi), coefficients))
    printed = tail_integral_rel_printed(a, b, xi)
    oracle = tail_integral_rel_quad(a, b, xi).value

    dev_derived = _relative(closed, oracle)
    dev_printed = _relative(printed, oracle)
    passed = dev_derived <= 1e-8 and dev_printed > 1e-2

    if passed:
        detail = (
            f"derived=30·√3 matches quadrature ({oracle:.4f}); paper-literal disagrees "
            f"(coeficiente impreso 3·√3 da {printed:.4f}, desviación {100 * dev_printed:.1f}%)"
        )
    else:
        detail = (
            f"el coeficiente derivado {coefficients[4]:.6f} da {closed:.10f} frente a cuadratura {oracle:.10f} "
            f"(desviación {dev_derived:.2e}); impreso {printed:.6f} (desviación {dev_printed:.2e})"
        )
    return CheckResult("eq7-b5-coefficient", passed, detail)


def check_tail_printed_terms() -> CheckResult:
    """Los coeficientes impresos de 1/b, 1/b², 1/b³, 1/b⁴ y 1/b⁶ coinciden con los derivados."""
    worst = 0.0
    for xi in XI_GRID:
        derived = [float(c) for c in tail_coefficients_rel(xi, 1.0)]
        printed = tail_coefficients_rel_printed(xi)
        for j in (0, 1, 2, 3, 5):
            worst = max(worst, _relative(printed[j], derived[j]))
    passed = worst <= 1e-12
    return CheckResult(
        "tail-printed-terms",
        passed,
        f"1/b, 1/b², 1/b³, 1/b⁴, 1/b⁶ coinciden (desviación máxima {worst:.1e}); 1/b⁵: derivado/impreso = 10",
    )


def check_tail_vs_quadrature() -> CheckResult:
    worst = 0.0
    for a in (0.0, 0.1):
        for x0 in (1.0, 2.0):
            for b in (0.1, 1.0, 5.0):
                for xi in XI_GRID:
                    closed = tail_integral_rel(a, b, xi, x0)
                    worst = max(worst, _relative(closed, tail_integral_rel_quad(a, b, xi, x0).value))
                closed = tail_integral_nonrel(a, b, x0)
                worst = max(worst, _relative(closed, tail_integral_nonrel_quad(a, b, x0).value))
    return CheckResult(
        "tail-vs-quadrature",
        worst <= 1e-8,
        f"a∈{{0,0.1}}, b∈{{0.1,1,5}}, xi∈{{1,5,10,15}}, x0∈{{1,2}}: desviación máxima {worst:.2e}",
    )


def check_integral_sandwich() -> CheckResult:
    """tail(K) >= sum_{k>K} f(k) >= tail(K+1) donde el sumando ya decrece."""
    k = np.arange(1, 4001, dtype=np.int64)
    cases = []

    params, state = _rel_state(0.0, 5.0, 1.0)
    cases.append(("rel", rel_summand(k, 0.0, 5.0, 1.0), lambda K: tail_integral_rel(0.0, 5.0, 1.0, K),
                  decreasing_from(Regime.RELATIVISTIC, params, state)))
    params, state = _nonrel_state(0.0, 1.0)
    cases.append(("nonrel", nonrel_summand(k, 0.0, 1.0), lambda K: tail_integral_nonrel(0.0, 1.0, K),
                  decreasing_from(Regime.NONRELATIVISTIC, params, state)))

    passed = True
    ranges = []
    for name, terms, tail, start in cases:
        remainders = np.cumsum(terms[::-1])[::-1]  # remainders[i] = sum_{k >= i+1}
        first = max(1, math.ceil(start))
        K = np.arange(first, 51)
        beyond = remainders[K]  # sum_{k > K}
        upper = tail(K.astype(float))
        lower = tail((K + 1).astype(float))
        passed &= bool(np.all(upper >= beyond * (1 - 1e-12)) and np.all(beyond >= lower * (1 - 1e-12)))
        ranges.append(f"{name} K={first}..50")
    return CheckResult("integral-test-sandwich", passed, "; ".join(ranges))


# ---------------------------------------------------------------------------
# Euler-MacLaurin
# ---------------------------------------------------------------------------


def check_nonrel_em_bracket() -> CheckResult:
    worst = 0.0
    for b_bar in (0.1, 0.5, 1.0, 2.0, 5.0):
        params, state = _nonrel_state(0.0, b_bar)
        bracket = z_euler_maclaurin(Regime.NONRELATIVISTIC, params, state).diagnostics.value
        expected = (
            7.0 / 6.0
            + 3.0 / b_bar
            + 4.0 / b_bar**2
            + 2.0 / b_bar**3
            + 29.0 * b_bar / 120.0
            + b_bar**2 / 60.0
            - b_bar**3 / 240.0
        )
        worst = max(worst, _relative(bracket, expected))

    params, state = _nonrel_state(0.0, 0.1)
    em = z_euler_maclaurin(Regime.NONRELATIVISTIC, params, state).value
    exact = z_exact_nonrel(params, state).value
    gap = _relative(em, exact)
    passed = worst <= 1e-12 and gap <= 1e-5
    return CheckResult(
        "nonrel-em-bracket",
        passed,
        f"7/6, 3/b̄, 4/b̄², 2/b̄³, 29b̄/120, b̄²/60, -b̄³/240 (desviación {worst:.1e}); "
        f"b̄=0.1: EM={em:.5f} vs exacta={exact:.5f} (rel {gap:.1e})",
    )


def _third_derivative_coefficients(xi: float) -> np.ndarray:
    """Coeficientes de b, b², b³ de f'''(1)/g del sumando relativista, extraídos del motor."""
    root = math.sqrt(1.0 + 2.0 * xi)
    bs = np.array([1.0, 2.0, 3.0])
    values = np.array([rel_odd_derivatives(-b * root, b, xi, 2)[1] for b in bs])
    vandermonde = np.column_stack([bs, bs**2, bs**3])
    return np.linalg.solve(vandermonde, values)


def check_rel_em_printed_terms() -> list[CheckResult]:
    """
    Términos del desarrollo relativista verificables contra los impresos:
    7/6, b·xi/(4√(1+2xi)) y (12/720)·b²xi²/(1+2xi).
    """
    worst_low = 0.0
    worst_poly = 0.0
    worst_printed = 0.0
    info = []
    for xi in XI_GRID:
        r = math.sqrt(1.0 + 2.0 * xi)
        for b in (0.05, 0.1, 1.0):
            params, state = _rel_state(0.0, b, xi)
            expansion = z_euler_maclaurin(Regime.RELATIVISTIC, params, state).diagnostics
            low = expansion.boundary_term + expansion.correction_terms[0]
            worst_low = max(worst_low, _relative(low, 7.0 / 6.0 + b * xi / (4.0 * r)))

        c1, c2, c3 = _third_derivative_coefficients(xi)
        hand = (
            -6.0 * xi / r + 12.0 * xi**2 / r**3 - 9.0 * xi**3 / r**5,
            12.0 * xi**2 / r**2 - 9.0 * xi**3 / r**4,
            -3.0 * xi**3 / r**3,
        )
        worst_poly = max(worst_poly, *(_relative(c, h) for c, h in zip((c1, c2, c3), hand)))
        worst_printed = max(worst_printed, _relative(c2 + 9.0 * xi**3 / r**4, 12.0 * xi**2 / r**2))

        printed = (
            -(2.0 * xi / r + 3.0 * xi**3 / r**5 - xi**2 / r**3),
            12.0 * xi**2 / r**2 - 3.0 * xi**3 / r**4,
            -(xi**3 / r**3),
        )
        info.append(
            f"xi={xi:g}: f''' regenerado/720 = ({c1 / 720:.6g})b + ({c2 / 720:.6g})b² + ({c3 / 720:.6g})b³, "
            f"impreso = ({printed[0] / 720:.6g})b + ({printed[1] / 720:.6g})b² + ({printed[2] / 720:.6g})b³"
        )

    passed = worst_low <= 1e-12 and worst_poly <= 1e-9 and worst_printed <= 1e-9
    return [
        CheckResult(
            "rel-em-printed-terms",
            passed,
            f"7/6 + b·xi/(4√(1+2xi)) (desviación {worst_low:.1e}) y (12/720)b²xi²/(1+2xi) "
            f"presentes en el desarrollo regenerado (desviación {worst_printed:.1e})",
        ),
        CheckResult("rel-em-third-derivative-terms", True, " | ".join(info), informational=True),
    ]


def check_derivatives_vs_fd() -> CheckResult:
    worst = 0.0
    for a in (0.0, 0.1):
        for b in (0.1, 1.0, 5.0):
            for xi in XI_GRID:
                exact = rel_odd_derivatives(a, b, xi, 2)
                h = finite_difference_step(Regime.RELATIVISTIC, b, xi)
                approx = finite_difference_odd_derivatives(lambda x: rel_summand(x, a, b, xi), 1.0, h, 2)
                worst = max(worst, *(abs(e - n) / max(1.0, abs(e)) for e, n in zip(exact, approx)))
            exact = nonrel_odd_derivatives(a, b, 2)
            h = finite_difference_step(Regime.NONRELATIVISTIC, b, 1.0)
            approx = finite_difference_odd_derivatives(lambda x: nonrel_summand(x, a, b), 1.0, h, 2)
            worst = max(worst, *(abs(e - n) / max(1.0, abs(e)) for e, n in zip(exact, approx)))
    return CheckResult("derivatives-vs-finite-differences", worst <= FD_DERIVATIVE_TOL, f"desviación máxima {worst:.2e}")


# ---------------------------------------------------------------------------
# Vías de la función de partición
# ---------------------------------------------------------------------------


def check_route_agreement_nonrel() -> CheckResult:
    worst = 0.0
    for a in (0.0, 0.25, 1.0):
        for b_bar in (0.01, 0.1, 1.0, 5.0, 10.0):
            params, state = _nonrel_state(a, b_bar)
            direct = z_direct(Regime.NONRELATIVISTIC, params, state).log_value
            exact = z_exact_nonrel(params, state).log_value
            worst = max(worst, abs(math.expm1(direct - exact)))
    return CheckResult("route-agreement-nonrel", worst <= 1e-10, f"directa vs forma cerrada: desviación máxima {worst:.2e}")


def check_route_agreement_rel() -> CheckResult:
    worst = 0.0
    for b in (0.1, 0.05):
        for xi in XI_GRID:
            params, state = _rel_state(0.0, b, xi)
            direct = z_direct(Regime.RELATIVISTIC, params, state).log_value
            em = z_euler_maclaurin(Regime.RELATIVISTIC, params, state).log_value
            worst = max(worst, abs(math.expm1(em - direct)))
    return CheckResult("route-agreement-rel", worst <= 1e-3, f"Euler-MacLaurin vs directa (b<=0.1): desviación máxima {worst:.2e}")


def check_high_t_convergence() -> CheckResult:
    rel_gaps = []
    for b in (0.4, 0.2, 0.1, 0.05):
        params, state = _rel_state(0.0, b, 1.0)
        gap = abs(math.expm1(z_high_t(Regime.RELATIVISTIC, params, state).log_value - z_direct(Regime.RELATIVISTIC, params, state).log_value))
        rel_gaps.append(gap)
    nonrel_gaps = []
    for b_bar in (0.4, 0.2, 0.1, 0.05, 0.025):
        params, state = _nonrel_state(0.0, b_bar)
        gap = abs(math.expm1(z_high_t(Regime.NONRELATIVISTIC, params, state).log_value - z_direct(Regime.NONRELATIVISTIC, params, state).log_value))
        nonrel_gaps.append(gap)

    monotone = all(x > y for x, y in zip(rel_gaps, rel_gaps[1:])) and all(x > y for x, y in zip(nonrel_gaps, nonrel_gaps[1:]))
    return CheckResult(
        "high-t-convergence",
        monotone,
        f"|Z_altaT/Z - 1| rel {[f'{g:.2e}' for g in rel_gaps]}, nonrel {[f'{g:.2e}' for g in nonrel_gaps]}",
    )


def check_log_z_monotone() -> CheckResult:
    bs = np.linspace(0.2, 5.0, 25)
    rel = [z_direct(Regime.RELATIVISTIC, *_rel_state(0.0, b, 1.0)).log_value for b in bs]
    nonrel = [z_exact_nonrel(*_nonrel_state(0.0, b)).log_value for b in bs]
    passed = bool(np.all(np.diff(rel) < 0) and np.all(np.diff(nonrel) < 0))
    return CheckResult("log-z-decreasing-in-beta", passed, "ln Z estrictamente decreciente en beta")


# ---------------------------------------------------------------------------
# Termodinámica
# ---------------------------------------------------------------------------


def check_field_independence() -> CheckResult:
    passed = True
    base = ModelParams(xi=1.0)
    for regime in (Regime.RELATIVISTIC, Regime.NONRELATIVISTIC):
        regime_params = base.with_regime(regime)
        results = []
        closed = []
        for B in (0.0, 1.0, 5.0):
            params = regime_params.with_field(1.0, B)
            results.append((B, thermo_from_series(regime, params, 2.0)))
            closed.append(thermo_high_t(regime, params, 2.0))
        _, reference = results[0]
        for B, q in results[1:]:
            passed &= q.S == reference.S and q.Cv == reference.Cv
            passed &= math.isclose(q.U - reference.U, B, rel_tol=1e-12)
        passed &= all((c.F, c.U, c.S, c.Cv) == (closed[0].F, closed[0].U, closed[0].S, closed[0].Cv) for c in closed)
    return CheckResult(
        "field-independence",
        passed,
        "B∈{0,1,5}, mu=1: S y Cv idénticos bit a bit, U(B)-U(0)=mu·B; formas de alta T independientes de B",
    )


def check_heat_capacity_high_t() -> CheckResult:
    params = ModelParams(xi=1.0, regime=Regime.RELATIVISTIC)
    taus = (10.0, 20.0, 50.0, 100.0)
    cv = [reduce(thermo_from_series(Regime.RELATIVISTIC, params, tau, k_max=HIGH_T_K_MAX), params).Cv_bar for tau in taus]
    gaps = [abs(value - 6.0) for value in cv]
    passed = 5.7 <= cv[2] <= 6.3 and all(later < earlier for earlier, later in zip(gaps, gaps[1:]))
    detail = ", ".join(f"Cv/k_B(tau={tau:g})={value:.5f}" for tau, value in zip(taus, cv))
    return CheckResult("high-t-heat-capacity", passed, detail)


def check_dulong_petit() -> CheckResult:
    params = ModelParams(xi=1.0)
    closed = dulong_petit_ratio(params, 50.0, method="closed-form")
    series = dulong_petit_ratio(params, 50.0, method="series", k_max=HIGH_T_K_MAX)
    passed = closed == 2.0 and 1.9 <= series <= 2.1
    return CheckResult("dulong-petit", passed, f"forma cerrada={closed:g}, suma en tau=50: {series:.5f}")


# ---------------------------------------------------------------------------
# Figuras y ficheros
# ---------------------------------------------------------------------------


def check_figures() -> CheckResult:
    from src.reporting.models import get_figure
    from src.reporting.sweep import figure_frame

    problems = []

    df = figure_frame(get_figure("mean-energy"))
    rel = df[df["regime"] == Regime.RELATIVISTIC.value]
    nonrel = df[df["regime"] == Regime.NONRELATIVISTIC.value]
    if not (np.array_equal(rel["U_bar"], 6.0 * rel["tau"]) and np.array_equal(nonrel["U_bar"], 3.0 * nonrel["tau"])):
        problems.append("mean-energy no es exactamente 6τ y 3τ")

    f_df = figure_frame(get_figure("free-energy-rel"))
    f_table = f_df.pivot(index="tau", columns="xi", values="F_bar")
    if not bool((f_table.diff(axis=1).iloc[:, 1:] > 0).all().all()):
        problems.append("F_bar no crece con xi")
    step = float(np.diff(f_table.index.to_numpy()).max())
    for xi in f_table.columns:
        tau_peak = float(f_table[xi].idxmax())
        tau_star = (xi**3 / (30.0 * math.e**6)) ** (1.0 / 6.0)
        if abs(tau_peak - tau_star) > step:
            problems.append(f"máximo de F_bar(xi={xi:g}) en {tau_peak:.4f}, esperado {tau_star:.4f}")
    xi_one = f_table[1.0]
    crossing = xi_one.index[np.flatnonzero(np.diff(np.sign(xi_one.to_numpy())))]
    if len(crossing) != 1 or abs(crossing[0] - 30.0 ** (-1.0 / 6.0)) > step:
        problems.append("F_bar(xi=1) no cruza cero en tau = 30^(-1/6)")

    s_df = figure_frame(get_figure("entropy-rel"))
    s_table = s_df.pivot(index="tau", columns="xi", values="S_bar")
    xis = list(s_table.columns)
    for first, second in zip(xis, xis[1:]):
        offset = s_table[first] - s_table[second]
        if not np.allclose(offset, 3.0 * math.log(second / first), rtol=1e-9, atol=1e-9):
            problems.append(f"S_bar(xi={first:g}) - S_bar(xi={second:g}) != 3 ln({second:g}/{first:g})")

    return CheckResult("figure-properties", not problems, "; ".join(problems) or "6τ/3τ, orden en xi, máximo y cero de F_bar, desfase 3 ln(xi2/xi1)")


def check_identity_audit() -> CheckResult:
    from src.reporting.models import SweepConfig
    from src.reporting.sweep import audit_identity, emit_figure, run_sweep

    grids = [
        {"regime": "rel", "method": "high-t"},
        {"regime": "rel", "method": "direct"},
        {"regime": "rel", "method": "em", "tau_min": 0.5},
        {"regime": "nonrel", "method": "exact-nr"},
        {"regime": "nonrel", "method": "direct"},
        {"regime": "nonrel", "method": "em", "tau_min": 0.5},
        {"regime": "nonrel", "method": "high-t"},
    ]
    violations = 0
    audited = 0
    with tempfile.TemporaryDirectory() as tmp:
        paths = []
        for i, grid in enumerate(grids):
            config = SweepConfig.from_mapping({"points": 6, "xi": [1.0, 5.0], "mu_b": 0.5, "out": Path(tmp) / f"sweep_{i}.csv", **grid})
            paths.append(run_sweep(config))
        for figure_id in ("free-energy-rel", "entropy-rel", "free-energy-nonrel", "entropy-nonrel", "mean-energy"):
            paths.extend(emit_figure(figure_id, Path(tmp)))
        for path in paths:
            violations += len(audit_identity(path))
            audited += 1
    return CheckResult("identity-audit", violations == 0, f"{audited} ficheros auditados, {violations} filas infractoras")


def check_determinism() -> CheckResult:
    from src.reporting.sweep import emit_figure

    with tempfile.TemporaryDirectory() as first, tempfile.TemporaryDirectory() as second:
        path_a = emit_figure("entropy-rel", Path(first))[0]
        path_b = emit_figure("entropy-rel", Path(second))[0]
        identical = filecmp.cmp(path_a, path_b, shallow=False)
    return CheckResult("determinism", identical, "dos ejecuciones de entropy-rel producen CSV idénticos byte a byte")


# ---------------------------------------------------------------------------
# Orquestación
# ---------------------------------------------------------------------------


def _run_check(name: str, check: Callable[[], object]) -> list[CheckResult]:
    try:
        result = check()
    except DiracThermoError as e:
        logger.error(f"Chequeo {name} abortado: {e}")
        return [CheckResult(name, False, f"error: {e}")]
    return result if isinstance(result, list) else [result]


def validate(perturbation: float = 0.0) -> ValidationReport:
    """
    Ejecuta la batería completa.

    Args:
        perturbation: Cantidad sumada al coeficiente derivado de 1/b⁵ de la
            cola relativista (gancho de prueba; con un valor no nulo el
            chequeo ``eq7-b5-coefficient`` debe fallar)

    Returns:
        ValidationReport con todos los chequeos
    """
    checks = [
        ("degeneracy-explicit-sum", check_degeneracy),
        ("bernoulli-recurrence", check_bernoulli),
        ("eq7-b5-coefficient", lambda: check_tail_b5_coefficient(perturbation)),
        ("tail-printed-terms", check_tail_printed_terms),
        ("tail-vs-quadrature", check_tail_vs_quadrature),
        ("integral-test-sandwich", check_integral_sandwich),
        ("nonrel-em-bracket", check_nonrel_em_bracket),
        ("rel-em-printed-terms", check_rel_em_printed_terms),
        ("derivatives-vs-finite-differences", check_derivatives_vs_fd),
        ("route-agreement-nonrel", check_route_agreement_nonrel),
        ("route-agreement-rel", check_route_agreement_rel),
        ("high-t-convergence", check_high_t_convergence),
        ("log-z-decreasing-in-beta", check_log_z_monotone),
        ("field-independence", check_field_independence),
        ("high-t-heat-capacity", check_heat_capacity_high_t),
        ("dulong-petit", check_dulong_petit),
        ("figure-properties", check_figures),
        ("identity-audit", check_identity_audit),
        ("determinism", check_determinism),
    ]

    report = ValidationReport()
    for name, check in checks:
        logger.info(f"Chequeo: {name}")
        report.checks.extend(_run_check(name, check))

    for failed in report.failed:
        logger.warning(f"Chequeo fallido: {failed.name}")
    return report
