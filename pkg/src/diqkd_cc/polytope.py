"""Local deterministic strategies and the convex-combination attack LP:
maximize Eve's local weight subject to reproducing the observed table.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np
import scipy.sparse as sp
from scipy.optimize import linprog

from .scenario import CorrelationTable, Scenario

#: Refuse to enumerate more deterministic strategies than this by default.
STRATEGY_CAP = 10**6

#: Per-constraint feasibility tolerance for all LP solves.
LP_FEASIBILITY_TOL = 1e-9

_LINPROG_OPTIONS = {
    "primal_feasibility_tolerance": LP_FEASIBILITY_TOL,
    "dual_feasibility_tolerance": LP_FEASIBILITY_TOL,
}


class StrategyCapExceeded(ValueError):
    """Scenario has more deterministic strategies than the configured cap."""


class DecompositionInfeasible(RuntimeError):
    """Observed table is not in the convex hull of {strategies} u {pNL}."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class DeterministicStrategy:
    """A pair of input->output functions; a vertex of the local polytope.

    fA/fB map settings (position, 1-based) to outcomes (1-based). The id is
    the mixed-radix encoding with Alice's digits most significant, so id 0
    outputs 1 on every setting.
    """
    fA: tuple[int, ...]
    fB: tuple[int, ...]
    id: int


def strategy_id(fA: tuple[int, ...], fB: tuple[int, ...], scenario: Scenario) -> int:
    ident = 0
    for outcome in fA + fB:
        ident = ident * scenario.d + (outcome - 1)
    return ident


def strategy_from_id(ident: int, scenario: Scenario) -> DeterministicStrategy:
    s = scenario
    if not 0 <= ident < s.n_strategies:
        raise ValueError(f"strategy id {ident} outside [0, {s.n_strategies - 1}]")
    digits = []
    rest = ident
    for _ in range(s.nA + s.nB):
        rest, digit = divmod(rest, s.d)
        digits.append(digit + 1)
    digits.reverse()
    return DeterministicStrategy(fA=tuple(digits[: s.nA]), fB=tuple(digits[s.nA:]), id=ident)


def enumerate_strategies(scenario: Scenario, cap: int = STRATEGY_CAP) -> Iterator[DeterministicStrategy]:
    """All d^(nA+nB) strategies in increasing id order, each exactly once."""
    n = scenario.n_strategies
    if n > cap:
        raise StrategyCapExceeded(f"{n} strategies exceed the cap of {cap}")
    for ident in range(n):
        yield strategy_from_id(ident, scenario)


def strategy_table(strategy: DeterministicStrategy, scenario: Scenario) -> CorrelationTable:
    """Indicator table: p(a,b|x,y) = 1 iff a = fA(x) and b = fB(y)."""
    s = scenario
    p = np.zeros((s.d, s.d, s.nA, s.nB))
    for x in range(s.nA):
        for y in range(s.nB):
            p[strategy.fA[x] - 1, strategy.fB[y] - 1, x, y] = 1.0
    return CorrelationTable(s, p)


def _table_vector(t: CorrelationTable) -> np.ndarray:
    """Flatten p(a,b|x,y) in (a,b,x,y) row order used by the LP rows."""
    return t.p.reshape(-1)


@lru_cache(maxsize=8)
def _strategy_matrix(scenario: Scenario, cap: int) -> sp.csc_array:
    """Sparse (d^2 nA nB) x N matrix whose columns are the strategy tables.

    Built digit-wise over all ids at once; each column has exactly nA*nB
    nonzeros, so nothing dense is ever materialized.
    """
    s = scenario
    n = s.n_strategies
    if n > cap:
        raise StrategyCapExceeded(f"{n} strategies exceed the cap of {cap}")
    ids = np.arange(n)
    n_digits = s.nA + s.nB
    digits = [(ids // s.d ** (n_digits - 1 - j)) % s.d for j in range(n_digits)]
    rows, cols = [], []
    for x in range(s.nA):
        for y in range(s.nB):
            a = digits[x]
            b = digits[s.nA + y]
            rows.append(((a * s.d + b) * s.nA + x) * s.nB + y)
            cols.append(ids)
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    return sp.csc_array((np.ones(rows.size), (rows, cols)),
                        shape=(s.d**2 * s.nA * s.nB, n))


@dataclass(frozen=True)
class CcDecomposition:
    """Eve's mixture: weights over strategy ids plus the nonlocal weight."""
    weights: dict[int, float]
    qNL: float
    qL: float
    max_residual: float

    def reconstruction(self, scenario: Scenario, pNL: CorrelationTable) -> CorrelationTable:
        p = self.qNL * pNL.p.copy()
        for ident, w in self.weights.items():
            p += w * strategy_table(strategy_from_id(ident, scenario), scenario).p
        return CorrelationTable(scenario, p)


def max_local_weight(observed: CorrelationTable, pNL: CorrelationTable,
                     cap: int = STRATEGY_CAP) -> CcDecomposition:
    """Solve: maximize sum_i q_i over q >= 0 with
    sum_i q_i p_i(a,b|x,y) + qNL pNL(a,b|x,y) = observed(a,b|x,y) for all
    (a,b,x,y) and sum q + qNL = 1.

    The per-(x,y) normalization rows make the total-weight row redundant; it
    is kept and left to the solver's presolve.
    """
    if observed.scenario != pNL.scenario:
        raise ValueError("observed and nonlocal tables use different scenarios")
    scenario = observed.scenario
    S = _strategy_matrix(scenario, cap)
    n = S.shape[1]
    nl_col = sp.csc_array(_table_vector(pNL).reshape(-1, 1))
    A_eq = sp.vstack([sp.hstack([S, nl_col]), np.ones((1, n + 1))], format="csc")
    b_eq = np.concatenate([_table_vector(observed), [1.0]])
    cost = np.concatenate([-np.ones(n), [0.0]])
    res = linprog(cost, A_eq=A_eq, b_eq=b_eq, bounds=(0, None),
                  method="highs", options=_LINPROG_OPTIONS)
    if not res.success:
        _, residual = local_residual(observed, cap=cap, pNL=pNL)
        raise DecompositionInfeasible(
            f"no convex decomposition reproduces the table (max residual {residual:.3e})",
            residual)
    q = res.x
    reconstructed = A_eq @ q
    max_residual = float(np.max(np.abs(reconstructed - b_eq)))
    weights = {int(i): (0.0 if q[i] < 0 else float(q[i]))
               for i in np.nonzero(q[:n] > 1e-12)[0]}
    qNL = max(0.0, float(q[n]))
    qL = max(0.0, float(-res.fun))
    return CcDecomposition(weights=weights, qNL=qNL, qL=qL, max_residual=max_residual)


def local_residual(t: CorrelationTable, cap: int = STRATEGY_CAP,
                   pNL: CorrelationTable | None = None) -> tuple[bool, float]:
    """Smallest uniform slack needed to write t as a strategy mixture
    (optionally allowing a nonlocal column). Local iff the slack is within
    the LP feasibility tolerance.

    Solved in elastic form - minimize s subject to |A q - t| <= s per entry,
    sum q = 1, q >= 0 - which is always feasible and returns a quantitative
    margin instead of a bare infeasibility flag.
    """
    scenario = t.scenario
    S = _strategy_matrix(scenario, cap)
    if pNL is not None:
        S = sp.hstack([S, sp.csc_array(_table_vector(pNL).reshape(-1, 1))], format="csc")
    n = S.shape[1]
    rows = S.shape[0]
    ones_col = np.ones((rows, 1))
    A_ub = sp.vstack([sp.hstack([S, -ones_col]), sp.hstack([-S, -ones_col])], format="csc")
    b = _table_vector(t)
    b_ub = np.concatenate([b, -b])
    A_eq = sp.csc_array(np.concatenate([np.ones(n), [0.0]]).reshape(1, -1))
    cost = np.concatenate([np.zeros(n), [1.0]])
    res = linprog(cost, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1.0],
                  bounds=(0, None), method="highs", options=_LINPROG_OPTIONS)
    if not res.success:
        raise RuntimeError(f"elastic membership LP failed: {res.message}")
    slack = float(res.fun)
    return slack <= LP_FEASIBILITY_TOL, slack


def is_local(t: CorrelationTable, cap: int = STRATEGY_CAP) -> bool:
    """True iff t decomposes over deterministic strategies alone."""
    local, _ = local_residual(t, cap=cap)
    return local


def decomposition_to_text(dec: CcDecomposition) -> str:
    """Rows `strategy_id weight` (increasing id) plus a final `NL weight` row."""
    lines = [f"{ident} {dec.weights[ident]:.15g}" for ident in sorted(dec.weights)]
    lines.append(f"NL {dec.qNL:.15g}")
    return "\n".join(lines) + "\n"
