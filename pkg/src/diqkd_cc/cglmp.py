"""CGLMP Bell expression for d outcomes: evaluation, local bound, closed-form
maximum on the maximally entangled state, and the d->infinity constants.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import pi, sin

import numpy as np

from .scenario import CorrelationTable, k_shift_probability

#: Local-hidden-variable bound of the CGLMP expression.
LOCAL_BOUND = 2.0

#: Catalan's constant, embedded as a literal to 20 digits.
CATALAN = 0.91596559417721901505


@dataclass(frozen=True)
class CglmpResult:
    d: int
    value: float
    local_bound: float = LOCAL_BOUND

    @property
    def violation_ratio(self) -> float:
        return self.value / self.local_bound


def cglmp_value(t: CorrelationTable, x1: int = 1, x2: int = 2, y1: int = 1, y2: int = 2) -> float:
    """I_d of the table at the given pair of settings per party.

    Sum over k = 0 .. [d/2]-1 with weight 1 - 2k/(d-1) of the eight
    outcome-shift probabilities: four where the outcomes differ by +k (or the
    role-swapped k+1) minus four where they differ the opposite way. For d=2
    only k=0 contributes and the weight is 1.
    """
    if x1 == x2 or y1 == y2:
        raise ValueError("settings must be distinct per party")
    d = t.scenario.d

    def S(x: int, y: int, k: int) -> float:
        return k_shift_probability(t, x, y, k % d)

    total = 0.0
    for k in range(d // 2):
        w = 1.0 - 2.0 * k / (d - 1)
        total += w * (
            S(x1, y1, k)             # A_{x1} = B_{y1} + k
            + S(x2, y1, -(k + 1))    # B_{y1} = A_{x2} + k + 1
            + S(x2, y2, k)           # A_{x2} = B_{y2} + k
            + S(x1, y2, -k)          # B_{y2} = A_{x1} + k
            - S(x1, y1, -(k + 1))    # A_{x1} = B_{y1} - k - 1
            - S(x2, y1, k)           # B_{y1} = A_{x2} - k
            - S(x2, y2, -(k + 1))    # A_{x2} = B_{y2} - k - 1
            - S(x1, y2, k + 1)       # B_{y2} = A_{x1} - k - 1
        )
    return total


def evaluate_cglmp(t: CorrelationTable, x1: int = 1, x2: int = 2, y1: int = 1, y2: int = 2) -> CglmpResult:
    return CglmpResult(d=t.scenario.d, value=cglmp_value(t, x1, x2, y1, y2))


def cglmp_coefficients(d: int) -> np.ndarray:
    """c[a-1, b-1, x-1, y-1] over the two Bell settings so that
    I_d = sum_{a,b,x,y} c(a,b,x,y) p(a,b|x,y).

    Same term bookkeeping as cglmp_value, pushed onto the (b - a) mod d
    difference classes of each setting pair.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    c = np.zeros((d, d, 2, 2))
    j = np.arange(d)

    def add(x, y, k, w):
        c[j, (j + k) % d, x, y] += w

    for k in range(d // 2):
        w = 1.0 - 2.0 * k / (d - 1)
        add(0, 0, k, +w)
        add(1, 0, -(k + 1), +w)
        add(1, 1, k, +w)
        add(0, 1, -k, +w)
        add(0, 0, -(k + 1), -w)
        add(1, 0, k, -w)
        add(1, 1, -(k + 1), -w)
        add(0, 1, k + 1, -w)
    return c


def _f(d: int, k: float) -> float:
    return 1.0 / (2.0 * d**3 * sin(pi * (k + 0.25) / d) ** 2)


def idmax_closed_form(d: int) -> float:
    """Maximal I_d on the maximally entangled state, in closed form:
    4d * sum_{k=0}^{[d/2]-1} (1 - 2k/(d-1)) (f_d(k) - f_d(-(k+1))),
    f_d(k) = 1 / (2 d^3 sin^2[pi (k + 1/4) / d]).
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    return 4.0 * d * sum(
        (1.0 - 2.0 * k / (d - 1)) * (_f(d, k) - _f(d, -(k + 1)))
        for k in range(d // 2)
    )


def idmax_asymptotic() -> float:
    """lim_{d->inf} I_d^max = 32 * Catalan / pi^2."""
    return 32.0 * CATALAN / pi**2


def local_visibility_max_entangled(d: int) -> float:
    """Largest visibility at which the mixed maximally-entangled table stays
    local: the local bound over the maximal violation, 2 / I_d^max."""
    return LOCAL_BOUND / idmax_closed_form(d)
