"""Acceptance gate: one test per shipped claim, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion lines
inline; under default capture they appear for failing criteria only.
"""
import numpy as np
import pytest

from diqkd_cc import (
    ANALYTIC_MAX_ENTANGLED,
    LP_CGLMP_STATE,
    LP_MAX_ENTANGLED,
    Scenario,
    cglmp_born_table,
    cglmp_state,
    cglmp_value,
    critical_visibility,
    ec_term_general,
    ec_term_isotropic,
    enumerate_strategies,
    idmax_asymptotic,
    idmax_closed_form,
    is_local,
    keyrate_point,
    local_visibility_max_entangled,
    max_local_weight,
    maximally_entangled_state,
    mix_with_white_noise,
    pa_term_cc,
    pa_zero_visibility,
    qL_analytic,
    rub_analytic,
    rub_lp,
    strategy_table,
    uniform_table,
    validate,
    vcrit_asymptotic,
)
from diqkd_cc.cli import main

# Reference critical visibilities (published values), d = 2..8.
TABLE_MAX = (0.82999, 0.82043, 0.81464, 0.81064, 0.80766, 0.80532, 0.80341)
TABLE_CGLMP = (0.82999, 0.82101, 0.81550, 0.81165, 0.80874, 0.80644, 0.80455)


def _report(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}", flush=True)


def test_criterion_1_critical_visibility_table(tmp_path, capsys):
    """table --d-min 2 --d-max 8 reproduces all 14 reference cells to 5e-5."""
    out_file = tmp_path / "table.csv"
    code = main(["table", "--d-min", "2", "--d-max", "8", "--out", str(out_file)])
    capsys.readouterr()
    rows = out_file.read_text().strip().splitlines()[1:]
    worst = 0.0
    for row, ref_max, ref_cglmp in zip(rows, TABLE_MAX, TABLE_CGLMP):
        _, got_max, got_cglmp = row.split(",")
        worst = max(worst, abs(float(got_max) - ref_max), abs(float(got_cglmp) - ref_cglmp))
    ok = code == 0 and len(rows) == 7 and worst <= 5e-5
    with capsys.disabled():
        _report(1, ok, f"14/14 table cells within 5e-5 (worst deviation {worst:.2e})")
    assert code == 0 and len(rows) == 7
    assert worst <= 5e-5


def test_criterion_2_lp_matches_analytic_weights(capsys):
    """|qL_LP - qL_analytic| <= 1e-6 for d = 2..6 at five visibilities."""
    worst = 0.0
    for d in range(2, 7):
        pNL = cglmp_born_table(maximally_entangled_state(d))
        for V in (local_visibility_max_entangled(d), 0.75, 0.85, 0.95, 1.0):
            qLP = max_local_weight(mix_with_white_noise(pNL, V), pNL).qL
            worst = max(worst, abs(qLP - qL_analytic(d, V)))
    ok = worst <= 1e-6
    with capsys.disabled():
        _report(2, ok, f"LP vs analytic local weight, d=2..6 x 5 visibilities "
                       f"(worst |dqL| {worst:.2e}, tol 1e-6)")
    assert ok


def test_criterion_3_dual_route_maximum(capsys):
    """Closed form vs Born-rule I_d^max to 1e-10 for d = 2..10; d=2 is 2*sqrt(2)."""
    worst = max(
        abs(idmax_closed_form(d)
            - cglmp_value(cglmp_born_table(maximally_entangled_state(d))))
        for d in range(2, 11))
    d2_err = abs(idmax_closed_form(2) - 2.0 * np.sqrt(2.0))
    ok = worst <= 1e-10 and d2_err <= 1e-12
    with capsys.disabled():
        _report(3, ok, f"closed form vs Born rule d=2..10 (worst {worst:.2e}, tol 1e-10); "
                       f"d=2 vs 2*sqrt(2): {d2_err:.2e} (tol 1e-12)")
    assert ok


def test_criterion_4_asymptotics(capsys):
    """vcrit_asymptotic = 0.7539 +- 5e-5; V*I = 2.239 +- 5e-4; vcrit(d) strictly
    decreasing and > 0.7539 for d = 2..16."""
    v_inf = vcrit_asymptotic()
    gap = abs(v_inf - 0.7539)
    clause1 = gap <= 5e-5
    product = v_inf * idmax_asymptotic()
    clause2 = abs(product - 2.239) <= 5e-4
    vals = [critical_visibility(d).v_crit for d in range(2, 17)]
    clause3 = all(b < a for a, b in zip(vals, vals[1:])) and all(v > 0.7539 for v in vals)
    ok = clause1 and clause2 and clause3
    with capsys.disabled():
        _report(4, ok,
                f"vcrit_inf={v_inf:.9f}, |.-0.7539|={gap:.1e} vs tol 5e-5 "
                f"({'ok' if clause1 else 'FAIL'}); V*I={product:.6f} vs 2.239+-5e-4 "
                f"({'ok' if clause2 else 'FAIL'}); "
                f"d=2..16 decreasing and >0.7539 ({'ok' if clause3 else 'FAIL'})")
    assert clause2 and clause3
    assert clause1, (
        f"vcrit_asymptotic() = {v_inf:.9f} differs from the 4-decimal target 0.7539 "
        f"by {gap:.2e} > 5e-5. The exact constant 1/(2 - pi^2/(16*Catalan)) rounds to "
        f"0.7538, so the quoted 0.7539 appears to stem from a truncated evaluation of "
        f"Catalan's constant (0.9159 -> 0.75392). The implementation keeps the exact "
        f"value and reports the mismatch rather than tuning to the target.")


def test_criterion_5_locality_boundary(capsys):
    """Mixed max-entangled tables: local at V~ = 2/I_d^max, nonlocal at V~ + 1e-3,
    for d = 2..10."""
    failures = []
    for d in range(2, 11):
        pNL = cglmp_born_table(maximally_entangled_state(d))
        v_tilde = local_visibility_max_entangled(d)
        if not is_local(mix_with_white_noise(pNL, v_tilde)):
            failures.append(f"d={d} local side")
        if is_local(mix_with_white_noise(pNL, v_tilde + 1e-3)):
            failures.append(f"d={d} nonlocal side")
    ok = not failures
    with capsys.disabled():
        _report(5, ok, "boundary verdicts correct at 2/I_d^max and +1e-3 for d=2..10"
                       + ("" if ok else f" (failed: {', '.join(failures)})"))
    assert ok, failures


def test_criterion_6_branch_ordering_d3(capsys):
    """r_ub(cglmp) < r_ub(max) on the d=3 grid V in [0.81, 1.00]; both branch
    critical visibilities match the d=3 table cells."""
    grid = np.linspace(0.81, 1.00, 20)
    deltas = []
    for V in grid:
        r_max = keyrate_point(3, float(V), ANALYTIC_MAX_ENTANGLED).r_ub
        r_cglmp = keyrate_point(3, float(V), LP_CGLMP_STATE).r_ub
        deltas.append(r_max - r_cglmp)
    ordering = all(delta > 0 for delta in deltas)
    v_max = critical_visibility(3, ANALYTIC_MAX_ENTANGLED).v_crit
    v_cglmp = critical_visibility(3, LP_CGLMP_STATE).v_crit
    cells = abs(v_max - TABLE_MAX[1]) <= 5e-5 and abs(v_cglmp - TABLE_CGLMP[1]) <= 5e-5
    ok = ordering and cells
    with capsys.disabled():
        _report(6, ok, f"d=3 ordering r_cglmp < r_max on [0.81,1.00] "
                       f"(min gap {min(deltas):.2e}); vcrit {v_max:.5f}/{v_cglmp:.5f} "
                       f"vs table cells {TABLE_MAX[1]}/{TABLE_CGLMP[1]}")
    assert ordering
    assert cells


def test_criterion_7_pa_term_zeros(capsys):
    """Visibility where the PA-term hits zero: 0.687 +- 0.01 (d=3, tuned state)
    and 0.707 +- 0.01 (d=2)."""
    v3 = pa_zero_visibility(3, LP_CGLMP_STATE)
    v2 = pa_zero_visibility(2, LP_MAX_ENTANGLED)
    ok3 = abs(v3 - 0.687) <= 0.01
    ok2 = abs(v2 - 0.707) <= 0.01
    ok = ok3 and ok2
    with capsys.disabled():
        _report(7, ok, f"PA-zero d=3 tuned state: {v3:.5f} vs 0.687+-0.01; "
                       f"d=2: {v2:.5f} vs 0.707+-0.01 (a published figure reads ~0.712 "
                       f"for d=2; the computed value is the analytic 1/sqrt(2) and the "
                       f"0.005 gap is reported, not hidden)")
    assert ok


def test_criterion_8_property_battery(capsys):
    """Module invariants: residuals, linearity under mixing, exhaustive facet
    bound at d = 2..3, reconstruction residual, entropy boundary values."""
    checks = {}

    # no-signaling / normalization residuals of the quantum tables
    worst = 0.0
    for d in (2, 3, 4):
        for state in (maximally_entangled_state(d), cglmp_state(d)):
            rep = validate(cglmp_born_table(state))
            worst = max(worst, rep.normalization_residual, rep.no_signaling_residual)
            if not rep.ok:
                worst = max(worst, 1.0)
    checks["residuals<=1e-12"] = worst <= 1e-12

    # CGLMP value is linear in the visibility
    t3 = cglmp_born_table(maximally_entangled_state(3))
    base = cglmp_value(t3)
    checks["linearity"] = all(
        abs(cglmp_value(mix_with_white_noise(t3, V)) - V * base) <= 1e-12
        for V in (0.0, 0.25, 0.5, 0.75, 1.0))

    # facet bound on every deterministic strategy, d = 2..3 exhaustively
    facet_ok = True
    for d in (2, 3):
        s = Scenario(d=d)
        for strat in enumerate_strategies(s):
            if cglmp_value(strategy_table(strat, s)) > 2.0 + 1e-12:
                facet_ok = False
    checks["facet<=2"] = facet_ok

    # decomposition reconstruction residual
    pNL = cglmp_born_table(maximally_entangled_state(3))
    observed = mix_with_white_noise(pNL, 0.9)
    dec = max_local_weight(observed, pNL)
    rebuilt = dec.reconstruction(observed.scenario, pNL)
    checks["reconstruction<=1e-8"] = (
        dec.max_residual <= 1e-8
        and float(np.max(np.abs(rebuilt.p - observed.p))) <= 1e-8)

    # entropy boundaries at V in {0, 1}
    uniform3 = uniform_table(Scenario(d=3))
    checks["entropy-boundaries"] = (
        abs(ec_term_isotropic(3, 1.0)) <= 1e-12
        and abs(ec_term_isotropic(3, 0.0) - 1.0) <= 1e-12
        and abs(ec_term_general(uniform3) - 1.0) <= 1e-12
        and pa_term_cc(1.0, np.full(3, 1 / 3)) == 0.0
        and abs(pa_term_cc(0.0, np.full(3, 1 / 3)) - 1.0) <= 1e-12
        and abs(rub_analytic(3, 1.0).r_ub - 1.0) <= 1e-12
        and abs(rub_lp(3, 0.0, LP_MAX_ENTANGLED).r_ub + 1.0) <= 1e-8)

    ok = all(checks.values())
    detail = ", ".join(f"{name} {'ok' if passed else 'FAIL'}"
                       for name, passed in checks.items())
    with capsys.disabled():
        _report(8, ok, detail)
    assert ok, checks
