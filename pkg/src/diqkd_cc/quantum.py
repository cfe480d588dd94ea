"""Complex linear-algebra layer: states, Fourier measurement bases, Bell
operators, and Born-rule correlation tables used as the nonlocal resource.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import pi, sqrt
from typing import Sequence

import numpy as np

from .cglmp import cglmp_coefficients
from .scenario import CorrelationTable, Scenario, default_scenario

ORTHONORMALITY_TOL = 1e-12
HERMITICITY_TOL = 1e-12
EIGENPAIR_RESIDUAL_TOL = 1e-9

#: Fourier phases maximizing I_d on the maximally entangled state for the two
#: Bell settings of each party (validated against idmax_closed_form for
#: d = 2..10; see tests). The key settings reuse Alice's keyX phase on both
#: sides, which makes the key-setting table perfectly correlated.
CGLMP_ALICE_PHASES = (0.0, -0.5)
CGLMP_BOB_PHASES = (0.25, -0.25)


@dataclass(frozen=True)
class PureState:
    """Bipartite pure state on C^d x C^d, amplitudes over |q>|r> (q major)."""
    d: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.ascontiguousarray(self.amplitudes, dtype=complex)
        if amp.shape != (self.d * self.d,):
            raise ValueError(f"amplitude vector must have length d^2={self.d**2}, got {amp.shape}")
        norm = float(np.linalg.norm(amp))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state not normalized: |norm - 1| = {abs(norm - 1):.3e}")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)


@dataclass(frozen=True)
class MeasurementBasis:
    """d orthonormal vectors (rows) in Fourier-phase form."""
    d: int
    phase: float
    vectors: np.ndarray  # (outcome, component)

    def __post_init__(self):
        gram = self.vectors @ self.vectors.conj().T
        dev = float(np.max(np.abs(gram - np.eye(self.d))))
        if dev > ORTHONORMALITY_TOL:
            raise ValueError(f"basis not orthonormal: residual {dev:.3e}")


@dataclass(frozen=True)
class BellOperatorMatrix:
    d: int
    matrix: np.ndarray       # (d^2, d^2) Hermitian
    coefficients: np.ndarray  # c(a,b,x,y) used to build it

    def __post_init__(self):
        dev = float(np.max(np.abs(self.matrix - self.matrix.conj().T)))
        if dev > HERMITICITY_TOL:
            raise ValueError(f"operator not Hermitian: residual {dev:.3e}")


def fourier_basis(d: int, phase: float, conjugate: bool = False) -> MeasurementBasis:
    """Basis vector for outcome a has components exp(i 2pi q (a + phase)/d)/sqrt(d).

    Bob's bases use conjugate=True (negated exponent). Outcomes enter 0-based
    internally; a global outcome shift only relabels the vectors.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    q = np.arange(d)[None, :]
    a = np.arange(d)[:, None]
    sign = -1.0 if conjugate else 1.0
    vectors = np.exp(sign * 2j * pi * q * (a + phase) / d) / sqrt(d)
    return MeasurementBasis(d=d, phase=phase, vectors=vectors)


def maximally_entangled_state(d: int) -> PureState:
    """(1/sqrt d) sum_q |qq>."""
    amp = np.zeros(d * d, dtype=complex)
    amp[:: d + 1] = 1.0 / sqrt(d)
    return PureState(d=d, amplitudes=amp)


def cglmp_optimal_phases(scenario: Scenario) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Per-setting phase lists for the default 2x3 scenario shape: Bell phases
    on settings 1..2, and the key settings share Alice's keyX phase."""
    if scenario.nA != 2 or scenario.nB != 3:
        raise ValueError("optimal phases are defined for the default 2x3 scenario shape")
    alice = CGLMP_ALICE_PHASES
    bob = CGLMP_BOB_PHASES + (alice[scenario.keyX - 1],)
    return alice, bob


def born_table(state: PureState, alice_phases: Sequence[float],
               bob_phases: Sequence[float], scenario: Scenario) -> CorrelationTable:
    """p(a,b|x,y) = |<a_x| <b_y| psi>|^2 with Fourier bases per setting."""
    if len(alice_phases) != scenario.nA or len(bob_phases) != scenario.nB:
        raise ValueError(
            f"phase lists ({len(alice_phases)}, {len(bob_phases)}) do not match "
            f"settings ({scenario.nA}, {scenario.nB})")
    if state.d != scenario.d:
        raise ValueError(f"state dimension {state.d} != scenario d {scenario.d}")
    d = state.d
    Psi = state.amplitudes.reshape(d, d)
    p = np.empty((d, d, scenario.nA, scenario.nB))
    for x, alpha in enumerate(alice_phases):
        Va = fourier_basis(d, alpha).vectors
        for y, beta in enumerate(bob_phases):
            Vb = fourier_basis(d, beta, conjugate=True).vectors
            amplitude = Va.conj() @ Psi @ Vb.conj().T   # (a, b)
            p[:, :, x, y] = np.abs(amplitude) ** 2
    return CorrelationTable(scenario, p)


def cglmp_born_table(state: PureState, scenario: Scenario | None = None) -> CorrelationTable:
    """Born table of the state under the optimal phases in the default shape."""
    if scenario is None:
        scenario = default_scenario(state.d)
    alice, bob = cglmp_optimal_phases(scenario)
    return born_table(state, alice, bob, scenario)


def bell_operator(coefficients: np.ndarray, alice_phases: Sequence[float],
                  bob_phases: Sequence[float], d: int) -> BellOperatorMatrix:
    """sum_{a,b,x,y} c(a,b,x,y) P_{a|x} (x) P_{b|y} with rank-1 Fourier projectors."""
    coefficients = np.asarray(coefficients)
    if np.iscomplexobj(coefficients) and np.max(np.abs(coefficients.imag)) > 0:
        raise ValueError("Bell coefficients must be real")
    coefficients = coefficients.real.astype(float)
    nA, nB = coefficients.shape[2], coefficients.shape[3]
    if len(alice_phases) != nA or len(bob_phases) != nB:
        raise ValueError("phase lists do not cover the coefficient settings")
    B = np.zeros((d * d, d * d), dtype=complex)
    for x in range(nA):
        Va = fourier_basis(d, alice_phases[x]).vectors
        for y in range(nB):
            Vb = fourier_basis(d, bob_phases[y], conjugate=True).vectors
            for a in range(d):
                Pa = np.outer(Va[a], Va[a].conj())
                row = coefficients[a, :, x, y]
                if not row.any():
                    continue
                Pb_sum = np.zeros((d, d), dtype=complex)
                for b in range(d):
                    if row[b] != 0.0:
                        Pb_sum += row[b] * np.outer(Vb[b], Vb[b].conj())
                B += np.kron(Pa, Pb_sum)
    return BellOperatorMatrix(d=d, matrix=B, coefficients=coefficients)


def max_eigenpair(op: BellOperatorMatrix) -> tuple[float, PureState]:
    """Largest eigenvalue and a unit eigenvector of the Hermitian operator."""
    eigenvalues, eigenvectors = np.linalg.eigh(op.matrix)
    lam = float(eigenvalues[-1])
    v = eigenvectors[:, -1]
    residual = float(np.linalg.norm(op.matrix @ v - lam * v))
    if residual > EIGENPAIR_RESIDUAL_TOL:
        raise ArithmeticError(f"eigenpair residual {residual:.3e} exceeds {EIGENPAIR_RESIDUAL_TOL}")
    return lam, PureState(d=op.d, amplitudes=v)


def cglmp_bell_operator(d: int) -> BellOperatorMatrix:
    return bell_operator(cglmp_coefficients(d), CGLMP_ALICE_PHASES, CGLMP_BOB_PHASES, d)


def cglmp_state(d: int) -> PureState:
    """Eigenstate of the CGLMP Bell operator with the largest violation.

    Coincides with the maximally entangled state at d=2; strictly beats it for
    d >= 3 (non-uniform Schmidt spectrum).
    """
    _, state = max_eigenpair(cglmp_bell_operator(d))
    return state


def schmidt_coefficients(state: PureState) -> np.ndarray:
    """Decreasing singular values of the amplitude matrix."""
    return np.linalg.svd(state.amplitudes.reshape(state.d, state.d), compute_uv=False)


def reduced_eigenvalues(state: PureState) -> np.ndarray:
    """Eigenvalues of either party's reduced density operator (squared Schmidt)."""
    return schmidt_coefficients(state) ** 2


def state_to_text(state: PureState) -> str:
    """Debug dump: rows `q r real imag` for each product-basis amplitude."""
    d = state.d
    lines = []
    for q in range(d):
        for r in range(d):
            amp = state.amplitudes[q * d + r]
            lines.append(f"{q} {r} {amp.real:.15g} {amp.imag:.15g}")
    return "\n".join(lines) + "\n"
