"""Mach-Zehnder interferometer built from the qubit gates in ``qsim``.

Both beam splitters are Hadamards, so the device is literally the one-bit
Deutsch circuit with the oracle replaced by a pair of arm phases. Arm 0
("upper") carries ``phase_upper`` and arm 1 ("lower") carries
``phase_lower``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from . import qsim
from .deutsch import Classification, FunctionTable, classify_table
from .errors import PromiseViolation

__all__ = [
    "MzNetwork",
    "Intensities",
    "SweepPoint",
    "phase_shifter",
    "arm_phases",
    "mz_intensities",
    "closed_form_intensities",
    "deutsch_phases",
    "firing_detector",
    "detector_verdict",
    "phase_error_sweep",
]


@dataclass(frozen=True)
class MzNetwork:
    phase_upper: float
    phase_lower: float
    input_port: int = 0

    def __post_init__(self) -> None:
        for name in ("phase_upper", "phase_lower"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.input_port not in (0, 1):
            raise ValueError(f"input_port must be 0 or 1, got {self.input_port!r}")

    @property
    def delta(self) -> float:
        return self.phase_upper - self.phase_lower

    def reduced(self) -> tuple[float, float]:
        """Phases folded into [0, 2pi), for display."""
        return (self.phase_upper % (2 * math.pi), self.phase_lower % (2 * math.pi))


class Intensities(NamedTuple):
    port0: float
    port1: float


class SweepPoint(NamedTuple):
    target: float
    error: float


def phase_shifter(phi: float) -> qsim.Unitary:
    """``diag(1, exp(i phi))``: delays the lower arm by ``phi``."""
    if not math.isfinite(phi):
        raise ValueError(f"phase must be finite, got {phi!r}")
    return qsim.Unitary(np.diag([1.0, np.exp(1j * phi)]))


def arm_phases(phase_upper: float, phase_lower: float) -> qsim.Unitary:
    """``diag(exp(i upper), exp(i lower))`` composed from two shifters."""
    x = qsim.pauli_x()
    upper = x @ phase_shifter(phase_upper) @ x
    return phase_shifter(phase_lower) @ upper


def mz_intensities(net: MzNetwork) -> Intensities:
    state = qsim.basis_state(1, net.input_port)
    state = qsim.apply(state, qsim.hadamard(), [0])
    state = qsim.apply(state, arm_phases(net.phase_upper, net.phase_lower), [0])
    state = qsim.apply(state, qsim.hadamard(), [0])
    p0, p1 = qsim.probabilities(state)
    return Intensities(float(p0), float(p1))


def closed_form_intensities(delta: float, input_port: int = 0) -> Intensities:
    c, s = math.cos(delta / 2) ** 2, math.sin(delta / 2) ** 2
    return Intensities(c, s) if input_port == 0 else Intensities(s, c)


def deutsch_phases(f: FunctionTable) -> MzNetwork:
    """Encode a one-bit function as arm phases ``(pi f(0), pi f(1))``."""
    if f.input_bits != 1:
        raise ValueError(f"the interferometer realises one-bit functions only, got n={f.input_bits}")
    if classify_table(f) is Classification.NEITHER:
        raise PromiseViolation(f"table {f} is neither constant nor balanced")
    return MzNetwork(math.pi * f.values[0], math.pi * f.values[1], 0)


def firing_detector(intensities: Intensities, tol: float = qsim.CIRCUIT_TOL) -> int | None:
    """The detector that clicks with certainty, or None if neither does."""
    if abs(intensities.port0 - 1.0) <= tol:
        return 0
    if abs(intensities.port1 - 1.0) <= tol:
        return 1
    return None


def detector_verdict(f: FunctionTable) -> Classification:
    detector = firing_detector(mz_intensities(deutsch_phases(f)))
    if detector is None:
        raise RuntimeError(f"no detector fires with certainty for {f}")
    return Classification.CONSTANT if detector == 0 else Classification.BALANCED


def phase_error_sweep(
    delta_targets: Iterable[float], epsilon: float, input_port: int = 0
) -> list[SweepPoint]:
    """Worst detector error when each target phase difference is off by up to ``epsilon``.

    The dominant detector is the one with the larger nominal intensity
    (port 0 on ties). Its intensity is evaluated at ``target - epsilon`` and
    ``target + epsilon`` and the largest drop or rise is reported.
    """
    if not epsilon >= 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon!r}")
    out = []
    for target in delta_targets:
        nominal = mz_intensities(MzNetwork(target, 0.0, input_port))
        port = 0 if nominal.port0 >= nominal.port1 else 1
        error = 0.0
        for shifted in (target - epsilon, target, target + epsilon):
            got = mz_intensities(MzNetwork(shifted, 0.0, input_port))
            error = max(error, abs(got[port] - nominal[port]))
        out.append(SweepPoint(float(target), error))
    return out
