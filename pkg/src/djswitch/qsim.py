"""Dense state-vector simulation of small qubit registers.

Basis indices are big-endian: qubit 0 is the most significant bit, so the
amplitude of ``|x>|y>`` with ``x = 1, y = 0`` on two qubits sits at index 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    DuplicateTargetError,
    NotUnitaryError,
    SizeError,
    TargetRangeError,
)

__all__ = [
    "MAX_QUBITS",
    "ALGEBRA_TOL",
    "CIRCUIT_TOL",
    "StateVector",
    "Unitary",
    "zero_state",
    "basis_state",
    "hadamard",
    "pauli_x",
    "identity",
    "apply",
    "apply_all",
    "probabilities",
    "marginal_probability",
    "sample",
    "basis_label",
    "kron_all",
]

MAX_QUBITS = 20

# Kernel-level identities vs. end-to-end circuit outcomes.
ALGEBRA_TOL = 1e-12
CIRCUIT_TOL = 1e-9


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.complex128)
    array.setflags(write=False)
    return array


def _check_num_qubits(num_qubits: int, cap: int = MAX_QUBITS) -> None:
    if not isinstance(num_qubits, (int, np.integer)) or not 1 <= num_qubits <= cap:
        raise SizeError(f"num_qubits must be in [1, {cap}], got {num_qubits!r}")


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalised amplitude vector over ``num_qubits`` qubits."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        _check_num_qubits(self.num_qubits)
        amps = _frozen(self.amplitudes).reshape(-1)
        if amps.shape[0] != 1 << self.num_qubits:
            raise DimensionMismatchError(
                f"{self.num_qubits} qubits need {1 << self.num_qubits} amplitudes, "
                f"got {amps.shape[0]}"
            )
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > ALGEBRA_TOL:
            raise ValueError(f"state is not normalised (norm^2 = {norm!r})")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex]) -> StateVector:
        amps = np.asarray(amplitudes, dtype=np.complex128)
        num_qubits = int(amps.size).bit_length() - 1
        if amps.size == 0 or 1 << num_qubits != amps.size:
            raise DimensionMismatchError(f"length {amps.size} is not a power of two")
        return cls(num_qubits, amps)

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def allclose(self, other: StateVector, atol: float = ALGEBRA_TOL) -> bool:
        return self.num_qubits == other.num_qubits and bool(
            np.allclose(self.amplitudes, other.amplitudes, rtol=0.0, atol=atol)
        )


@dataclass(frozen=True, eq=False)
class Unitary:
    """A ``dim x dim`` unitary matrix; ``dim`` is a power of two."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        m = _frozen(self.entries)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatchError(f"unitary must be square, got shape {m.shape}")
        dim = m.shape[0]
        if dim < 2 or dim & (dim - 1):
            raise DimensionMismatchError(f"dimension {dim} is not a power of two >= 2")
        if not np.allclose(m.conj().T @ m, np.eye(dim), rtol=0.0, atol=ALGEBRA_TOL):
            raise NotUnitaryError("U^dagger U differs from the identity")
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def num_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def __matmul__(self, other: Unitary) -> Unitary:
        if self.dim != other.dim:
            raise DimensionMismatchError(f"cannot compose dim {self.dim} with {other.dim}")
        return Unitary(self.entries @ other.entries)


def zero_state(num_qubits: int, cap: int = MAX_QUBITS) -> StateVector:
    """Return ``|0...0>``."""
    _check_num_qubits(num_qubits, cap)
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(num_qubits, amps)


def basis_state(num_qubits: int, index: int) -> StateVector:
    _check_num_qubits(num_qubits)
    if not 0 <= index < 1 << num_qubits:
        raise TargetRangeError(f"basis index {index} out of range for {num_qubits} qubits")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(num_qubits, amps)


_SQRT_HALF = np.sqrt(0.5)
_H = Unitary(np.array([[1.0, 1.0], [1.0, -1.0]]) * _SQRT_HALF)
_X = Unitary(np.array([[0.0, 1.0], [1.0, 0.0]]))


def hadamard() -> Unitary:
    return _H


def pauli_x() -> Unitary:
    return _X


def identity(num_qubits: int = 1) -> Unitary:
    return Unitary(np.eye(1 << num_qubits))


def _check_targets(num_qubits: int, targets: Sequence[int]) -> tuple[int, ...]:
    targets = tuple(int(t) for t in targets)
    if len(set(targets)) != len(targets):
        raise DuplicateTargetError(f"duplicate target qubits in {targets}")
    for t in targets:
        if not 0 <= t < num_qubits:
            raise TargetRangeError(f"target {t} out of range for {num_qubits} qubits")
    return targets


def apply(state: StateVector, gate: Unitary, targets: Sequence[int]) -> StateVector:
    """Apply ``gate`` to ``targets`` (in gate-qubit order) and identity elsewhere.

    The first target is the gate's most significant qubit, so
    ``apply(s, cnot, [0, 1])`` uses qubit 0 as control.
    """
    targets = _check_targets(state.num_qubits, targets)
    k = len(targets)
    if gate.dim != 1 << k:
        raise DimensionMismatchError(
            f"gate of dim {gate.dim} cannot act on {k} target qubit(s)"
        )
    n = state.num_qubits
    psi = state.amplitudes.reshape((2,) * n)
    g = gate.entries.reshape((2,) * (2 * k))
    # Contract the gate's input legs with the target axes; the gate's output
    # legs land in front and are moved back to the target positions.
    out = np.tensordot(g, psi, axes=(list(range(k, 2 * k)), list(targets)))
    out = np.moveaxis(out, list(range(k)), list(targets))
    return StateVector(n, out.reshape(-1))


def apply_all(state: StateVector, gate: Unitary) -> StateVector:
    """Apply a single-qubit gate to every qubit of the register."""
    if gate.dim != 2:
        raise DimensionMismatchError(f"apply_all needs a single-qubit gate, got dim {gate.dim}")
    for q in range(state.num_qubits):
        state = apply(state, gate, [q])
    return state


def probabilities(state: StateVector) -> np.ndarray:
    """Exact outcome probabilities ``|amplitude_i|^2``."""
    amps = state.amplitudes
    return amps.real**2 + amps.imag**2


def marginal_probability(
    state: StateVector, qubits: Sequence[int], outcome: Sequence[int] | str
) -> float:
    """Probability that measuring ``qubits`` yields the bit pattern ``outcome``."""
    qubits = _check_targets(state.num_qubits, qubits)
    bits = [int(b) for b in outcome]
    if len(bits) != len(qubits):
        raise DimensionMismatchError(
            f"outcome has {len(bits)} bits but {len(qubits)} qubits were given"
        )
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"outcome must be a bit pattern, got {outcome!r}")
    probs = probabilities(state).reshape((2,) * state.num_qubits)
    index = [slice(None)] * state.num_qubits
    for q, b in zip(qubits, bits):
        index[q] = b
    return float(np.sum(probs[tuple(index)]))


def sample(state: StateVector, shots: int, seed: int) -> list[int]:
    """Draw measurement outcomes (basis indices). Demonstration only."""
    rng = np.random.default_rng(seed)
    p = probabilities(state)
    return [int(i) for i in rng.choice(state.dim, size=shots, p=p / p.sum())]


def basis_label(index: int, num_qubits: int) -> str:
    return format(index, f"0{num_qubits}b")


def kron_all(gates: Iterable[Unitary]) -> Unitary:
    m = np.ones((1, 1), dtype=np.complex128)
    for g in gates:
        m = np.kron(m, g.entries)
    return Unitary(m)
