"""Key-rate upper bound under the convex-combination attack: PA/EC terms,
analytic and LP branches, critical visibilities, and the d->infinity limit.

All entropies are base-d ("dits"); multiply by log2(d) for bits.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import log, pi

import numpy as np

from .cglmp import CATALAN, LOCAL_BOUND, cglmp_value, idmax_closed_form, local_visibility_max_entangled
from .polytope import STRATEGY_CAP, max_local_weight
from .quantum import cglmp_born_table, cglmp_state, maximally_entangled_state
from .scenario import CorrelationTable, default_scenario, marginal, mix_with_white_noise

#: Branch labels: how the nonlocal resource and the local weight are obtained.
ANALYTIC_MAX_ENTANGLED = "analytic-max-entangled"
LP_MAX_ENTANGLED = "lp-max-entangled"
LP_CGLMP_STATE = "lp-cglmp-state"
BRANCHES = (ANALYTIC_MAX_ENTANGLED, LP_MAX_ENTANGLED, LP_CGLMP_STATE)

#: Bisection stops once the bracket is narrower than this.
BISECTION_WIDTH = 1e-8

#: Probabilities below this are treated as exact zeros in entropies.
ZERO_PROBABILITY = 1e-300


class BracketError(RuntimeError):
    """Root bracketing failed where a sign change was expected."""


@dataclass(frozen=True)
class KeyRatePoint:
    """One visibility sample: r_ub = pa_term - ec_term, plus Eve's local weight."""
    V: float
    qL: float
    pa_term: float
    ec_term: float
    r_ub: float
    branch: str


@dataclass(frozen=True)
class CriticalVisibility:
    d: int
    branch: str
    v_crit: float
    residual: float  # r_ub at the returned visibility


def _log_d(value: float, d: int) -> float:
    return log(value) / log(d)


def shannon_base_d(p, d: int) -> float:
    """Shannon entropy in base-d units with 0 log 0 := 0."""
    total = 0.0
    for v in np.asarray(p, dtype=float).ravel():
        if v > ZERO_PROBABILITY:
            total -= v * _log_d(v, d)
    return total


def ec_term_isotropic(d: int, V: float) -> float:
    """H(A|B) at the key settings for the white-noise-mixed perfectly
    correlated table: 1 - [(1+(d-1)V)/d] log_d(1+(d-1)V) - [(d-1)(1-V)/d] log_d(1-V)."""
    if not 0.0 <= V <= 1.0:
        raise ValueError(f"visibility must lie in [0,1], got {V}")
    out = 1.0
    big = 1.0 + (d - 1) * V
    small = 1.0 - V
    if big > ZERO_PROBABILITY:
        out -= big / d * _log_d(big, d)
    if small > ZERO_PROBABILITY:
        out -= (d - 1) * small / d * _log_d(small, d)
    return out


def ec_term_general(t: CorrelationTable) -> float:
    """H(A|B) at the key settings of an arbitrary table, base-d.

    Zero Bob-marginal cells contribute nothing.
    """
    s = t.scenario
    joint = t.p[:, :, s.keyX - 1, s.keyY - 1]
    pB = joint.sum(axis=0)
    total = 0.0
    for b in range(s.d):
        if pB[b] <= ZERO_PROBABILITY:
            continue
        for a in range(s.d):
            pab = joint[a, b]
            if pab > ZERO_PROBABILITY:
                total -= pab * _log_d(pab / pB[b], s.d)
    return total


def pa_term_cc(qL: float, alice_marginal_at_key: np.ndarray) -> float:
    """H(A|E) = (1 - qL) * H_d(marginal): Eve knows the local rounds outright
    and nothing about the rest. Equals 1 - qL for a uniform marginal."""
    d = len(alice_marginal_at_key)
    qNL = min(1.0, max(0.0, 1.0 - qL))
    return qNL * shannon_base_d(alice_marginal_at_key, d)


def qL_analytic(d: int, V: float) -> float:
    """Maximal local weight for the mixed maximally-entangled table:
    (1-V)/(1-V_L) above the local visibility V_L = 2/I_d^max, else 1."""
    if not 0.0 <= V <= 1.0:
        raise ValueError(f"visibility must lie in [0,1], got {V}")
    VL = local_visibility_max_entangled(d)
    return (1.0 - V) / (1.0 - VL) if V >= VL else 1.0


def rub_analytic(d: int, V: float) -> KeyRatePoint:
    """Closed-form branch for the maximally entangled state.

    Assembled as pa - ec and cross-checked against the single-expression form
    [(1+(d-1)V)/d] log_d(1+(d-1)V) + [(d-1)(1-V)/d] log_d(1-V) - (1-V)/(1-2/I_d^max).
    """
    qL = qL_analytic(d, V)
    pa = max(0.0, 1.0 - qL)
    ec = ec_term_isotropic(d, V)
    r = pa - ec
    VL = local_visibility_max_entangled(d)
    if V >= VL:
        closed = -ec + 1.0 - (1.0 - V) / (1.0 - LOCAL_BOUND / idmax_closed_form(d))
        assert abs(r - closed) <= 1e-12, f"pa-ec route deviates from closed form by {abs(r - closed):.3e}"
    return KeyRatePoint(V=V, qL=qL, pa_term=pa, ec_term=ec, r_ub=r, branch=ANALYTIC_MAX_ENTANGLED)


@lru_cache(maxsize=32)
def nonlocal_table(d: int, branch: str) -> CorrelationTable:
    """Ideal (V=1) table of the branch's state under the optimal phases."""
    if branch == LP_CGLMP_STATE:
        state = cglmp_state(d)
    elif branch in (LP_MAX_ENTANGLED, ANALYTIC_MAX_ENTANGLED):
        state = maximally_entangled_state(d)
    else:
        raise ValueError(f"unknown branch {branch!r}; expected one of {BRANCHES}")
    return cglmp_born_table(state, default_scenario(d))


def rub_lp(d: int, V: float, branch: str, cap: int = STRATEGY_CAP) -> KeyRatePoint:
    """LP branch: mix the branch's ideal table with white noise, maximize the
    local weight, and assemble pa (from the ideal table's key marginal) minus
    ec (from the observed table)."""
    if branch == ANALYTIC_MAX_ENTANGLED:
        return rub_analytic(d, V)
    pNL = nonlocal_table(d, branch)
    observed = mix_with_white_noise(pNL, V)
    dec = max_local_weight(observed, pNL, cap=cap)
    key_marginal = marginal(pNL, "A", pNL.scenario.keyX)
    pa = pa_term_cc(dec.qL, key_marginal)
    ec = ec_term_general(observed)
    return KeyRatePoint(V=V, qL=dec.qL, pa_term=pa, ec_term=ec, r_ub=pa - ec, branch=branch)


def keyrate_point(d: int, V: float, branch: str, cap: int = STRATEGY_CAP) -> KeyRatePoint:
    if branch == ANALYTIC_MAX_ENTANGLED:
        return rub_analytic(d, V)
    return rub_lp(d, V, branch, cap=cap)


def local_visibility(d: int, branch: str) -> float:
    """Largest V with local weight 1 achievable: the local bound over the
    branch state's ideal violation."""
    if branch == ANALYTIC_MAX_ENTANGLED:
        return local_visibility_max_entangled(d)
    return LOCAL_BOUND / cglmp_value(nonlocal_table(d, branch))


def _bisect(f, lo: float, hi: float, width: float = BISECTION_WIDTH) -> float:
    f_lo, f_hi = f(lo), f(hi)
    if not (f_lo <= 0.0 <= f_hi):
        raise BracketError(
            f"no sign change on [{lo:.6f}, {hi:.6f}]: f(lo)={f_lo:.3e}, f(hi)={f_hi:.3e}")
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if f(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def critical_visibility(d: int, branch: str = ANALYTIC_MAX_ENTANGLED,
                        cap: int = STRATEGY_CAP) -> CriticalVisibility:
    """Root of r_ub(V) on [V_local, 1], located by bisection (width 1e-8);
    r_ub is monotone and changes sign on that bracket."""
    def f(V: float) -> float:
        return keyrate_point(d, V, branch, cap=cap).r_ub

    lo = local_visibility(d, branch)
    v = _bisect(f, lo, 1.0)
    return CriticalVisibility(d=d, branch=branch, v_crit=v, residual=f(v))


def pa_zero_visibility(d: int, branch: str = ANALYTIC_MAX_ENTANGLED,
                       cap: int = STRATEGY_CAP, width: float = BISECTION_WIDTH) -> float:
    """Largest visibility at which the PA-term is still zero (Eve holds every
    round). Analytic branch: exactly the local visibility. LP branches:
    bisection on the qL(V) = 1 boundary."""
    if branch == ANALYTIC_MAX_ENTANGLED:
        return local_visibility_max_entangled(d)

    def fully_local(V: float) -> bool:
        return rub_lp(d, V, branch, cap=cap).qL >= 1.0 - 1e-9

    lo, hi = 0.0, 1.0
    if not fully_local(lo):
        raise BracketError("white noise is expected to be fully local")
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if fully_local(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def rub_asymptotic(V: float) -> float:
    """d->infinity key-rate bound: [(2 - c)V - 1]/(1 - c), c = pi^2/(16 Catalan)."""
    c = pi**2 / (16.0 * CATALAN)
    return ((2.0 - c) * V - 1.0) / (1.0 - c)


def vcrit_asymptotic() -> float:
    """Root of the asymptotic bound: 1/(2 - pi^2/(16 Catalan))."""
    return 1.0 / (2.0 - pi**2 / (16.0 * CATALAN))


def thread_count() -> int:
    """Worker cap for grid evaluation: DIQKD_CC_THREADS, else available cores."""
    env = os.environ.get("DIQKD_CC_THREADS")
    if env:
        n = int(env)
        if n < 1:
            raise ValueError(f"DIQKD_CC_THREADS must be >= 1, got {n}")
        return n
    return os.cpu_count() or 1


def keyrate_curve(d: int, branch: str, v_min: float, v_max: float, steps: int,
                  cap: int = STRATEGY_CAP, threads: int | None = None) -> list[KeyRatePoint]:
    """Evaluate the branch on a uniform visibility grid, endpoints included."""
    if not (0.0 <= v_min < v_max <= 1.0):
        raise ValueError(f"need 0 <= v_min < v_max <= 1, got [{v_min}, {v_max}]")
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    grid = np.linspace(v_min, v_max, steps)
    grid[0], grid[-1] = v_min, v_max
    workers = threads if threads is not None else thread_count()
    if branch == ANALYTIC_MAX_ENTANGLED or workers == 1:
        return [keyrate_point(d, float(V), branch, cap=cap) for V in grid]
    nonlocal_table(d, branch)  # build once before fanning out
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda V: keyrate_point(d, float(V), branch, cap=cap), grid))
