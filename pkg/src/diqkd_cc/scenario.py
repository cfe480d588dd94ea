"""Bell-scenario indexing, correlation tables, noise mixing and derived statistics.

Conventions: outcomes a, b and settings x, y are 1-based in every public
interface (internal storage is 0-based). A correlation table holds the dense
joint conditional probabilities p(a,b|x,y) with shape (d, d, nA, nB).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

POSITIVITY_TOL = 1e-12
NORMALIZATION_TOL = 1e-9
NO_SIGNALING_TOL = 1e-9
# marginal() refuses tables whose marginals actually depend on the far setting
MARGINAL_NO_SIGNALING_TOL = 1e-6


@dataclass(frozen=True)
class Scenario:
    """d outcomes per party, nA/nB settings, and the designated key settings.

    Default protocol shape: two Bell settings per party plus one extra key
    setting for Bob; Alice keys on her second Bell setting.
    """
    d: int
    nA: int = 2
    nB: int = 3
    keyX: int = 2
    keyY: int = 3

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        if self.nA < 2 or self.nB < 2:
            raise ValueError(f"need at least two settings per party, got nA={self.nA} nB={self.nB}")
        if not (1 <= self.keyX <= self.nA):
            raise ValueError(f"keyX={self.keyX} outside [1, {self.nA}]")
        if not (1 <= self.keyY <= self.nB):
            raise ValueError(f"keyY={self.keyY} outside [1, {self.nB}]")

    @property
    def n_strategies(self) -> int:
        return self.d ** (self.nA + self.nB)


def default_scenario(d: int) -> Scenario:
    return Scenario(d=d)


@dataclass(frozen=True)
class CorrelationTable:
    """Dense p[a-1, b-1, x-1, y-1] = p(a,b|x,y)."""
    scenario: Scenario
    p: np.ndarray

    def __post_init__(self):
        s = self.scenario
        expected = (s.d, s.d, s.nA, s.nB)
        if self.p.shape != expected:
            raise ValueError(f"table shape {self.p.shape} != {expected}")
        arr = np.ascontiguousarray(self.p, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "p", arr)


@dataclass(frozen=True)
class ValidationReport:
    positivity_residual: float
    normalization_residual: float
    no_signaling_residual: float
    positivity_ok: bool
    normalization_ok: bool
    no_signaling_ok: bool

    @property
    def ok(self) -> bool:
        return self.positivity_ok and self.normalization_ok and self.no_signaling_ok

    def __str__(self) -> str:
        def line(name, residual, ok):
            return f"{name:<14} residual {residual:.3e}  {'pass' if ok else 'FAIL'}"
        return "\n".join([
            line("positivity", self.positivity_residual, self.positivity_ok),
            line("normalization", self.normalization_residual, self.normalization_ok),
            line("no-signaling", self.no_signaling_residual, self.no_signaling_ok),
        ])


def validate(t: CorrelationTable) -> ValidationReport:
    """Report positivity/normalization/no-signaling residuals (report-only)."""
    p = t.p
    pos = float(max(np.max(-p, initial=0.0), np.max(p - 1.0, initial=0.0), 0.0))
    norm = float(np.max(np.abs(p.sum(axis=(0, 1)) - 1.0)))
    # Alice marginal p(a|x) must not depend on y; Bob's not on x
    mA = p.sum(axis=1)                       # (a, x, y)
    mB = p.sum(axis=0)                       # (b, x, y)
    devA = np.max(np.abs(mA - mA.mean(axis=2, keepdims=True)))
    devB = np.max(np.abs(mB - mB.mean(axis=1, keepdims=True)))
    nosig = float(max(devA, devB))
    return ValidationReport(
        positivity_residual=pos,
        normalization_residual=norm,
        no_signaling_residual=nosig,
        positivity_ok=pos <= POSITIVITY_TOL,
        normalization_ok=norm <= NORMALIZATION_TOL,
        no_signaling_ok=nosig <= NO_SIGNALING_TOL,
    )


def uniform_table(scenario: Scenario) -> CorrelationTable:
    s = scenario
    p = np.full((s.d, s.d, s.nA, s.nB), 1.0 / s.d**2)
    return CorrelationTable(scenario, p)


def mix_with_white_noise(pNL: CorrelationTable, V: float) -> CorrelationTable:
    """V * pNL + (1-V)/d^2 on every entry."""
    if not 0.0 <= V <= 1.0:
        raise ValueError(f"visibility must lie in [0,1], got {V}")
    d = pNL.scenario.d
    return CorrelationTable(pNL.scenario, V * pNL.p + (1.0 - V) / d**2)


def k_shift_probability(t: CorrelationTable, x: int, y: int, k: int) -> float:
    """P(outcomes differ by k mod d) = sum_j p(j, j+k mod d | x, y)."""
    d = t.scenario.d
    if not (1 <= x <= t.scenario.nA and 1 <= y <= t.scenario.nB):
        raise IndexError(f"setting ({x},{y}) out of range")
    if not 0 <= k <= d - 1:
        raise IndexError(f"k={k} outside [0, {d - 1}]")
    j = np.arange(d)
    return float(t.p[j, (j + k) % d, x - 1, y - 1].sum())


def marginal(t: CorrelationTable, party: str, setting: int) -> np.ndarray:
    """Single-party outcome distribution; errors if it depends on the far setting."""
    if party not in ("A", "B"):
        raise ValueError(f"party must be 'A' or 'B', got {party!r}")
    s = t.scenario
    if party == "A":
        if not 1 <= setting <= s.nA:
            raise IndexError(f"Alice setting {setting} outside [1, {s.nA}]")
        m = t.p[:, :, setting - 1, :].sum(axis=1)          # (a, y)
    else:
        if not 1 <= setting <= s.nB:
            raise IndexError(f"Bob setting {setting} outside [1, {s.nB}]")
        m = t.p[:, :, :, setting - 1].sum(axis=0)          # (b, x)
    dev = float(np.max(np.abs(m - m.mean(axis=1, keepdims=True))))
    if dev > MARGINAL_NO_SIGNALING_TOL:
        raise ValueError(f"no-signaling violated for party {party}: residual {dev:.3e}")
    return m.mean(axis=1)


def table_to_text(t: CorrelationTable) -> str:
    """Rows `x y a b p` (15 significant digits) under a `# d nA nB keyX keyY` header."""
    s = t.scenario
    lines = [f"# {s.d} {s.nA} {s.nB} {s.keyX} {s.keyY}"]
    for x in range(s.nA):
        for y in range(s.nB):
            for a in range(s.d):
                for b in range(s.d):
                    lines.append(f"{x + 1} {y + 1} {a + 1} {b + 1} {t.p[a, b, x, y]:.15g}")
    return "\n".join(lines) + "\n"


def table_from_text(text: str) -> CorrelationTable:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValueError("missing `# d nA nB keyX keyY` header line")
    d, nA, nB, keyX, keyY = (int(v) for v in lines[0][1:].split())
    s = Scenario(d=d, nA=nA, nB=nB, keyX=keyX, keyY=keyY)
    p = np.zeros((d, d, nA, nB))
    for ln in lines[1:]:
        xs, ys, as_, bs, val = ln.split()
        p[int(as_) - 1, int(bs) - 1, int(xs) - 1, int(ys) - 1] = float(val)
    return CorrelationTable(s, p)
