"""Constant-vs-balanced classification, quantum and classical.

A ``FunctionTable`` holds f: {0,1}^n -> {0,1} explicitly. The quantum side
turns it into the f-controlled-NOT permutation ``|x>|y> -> |x>|y xor f(x)>``
and runs the one-query circuit; the classical side only sees f through a
``BlackBox`` that counts every evaluation.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from . import qsim
from .errors import LengthError, ParseError, PromiseViolation, SizeError

__all__ = [
    "BALANCED_ENUM_CAP",
    "Classification",
    "FunctionTable",
    "QueryLog",
    "BlackBox",
    "QuantumResult",
    "ClassicalResult",
    "classify_table",
    "require_promise",
    "oracle_unitary",
    "deutsch_jozsa_state",
    "classify_quantum",
    "classify_classical",
    "classical_query_bound",
    "enumerate_functions",
    "reverse_oracle_roundtrip",
    "parse_oracle",
    "load_oracle",
]

BALANCED_ENUM_CAP = 4


class Classification(enum.Enum):
    CONSTANT = "Constant"
    BALANCED = "Balanced"
    NEITHER = "Neither"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class FunctionTable:
    """Truth table of f; ``values[x]`` is f(x) with x read big-endian."""

    input_bits: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.input_bits, int) or self.input_bits < 1:
            raise ValueError(f"input_bits must be a positive integer, got {self.input_bits!r}")
        values = tuple(int(v) for v in self.values)
        if len(values) != 1 << self.input_bits:
            raise ValueError(
                f"{self.input_bits} input bits need {1 << self.input_bits} values, got {len(values)}"
            )
        if any(v not in (0, 1) for v in values):
            raise ValueError(f"table values must be bits, got {self.values!r}")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_values(cls, values: Sequence[int]) -> FunctionTable:
        size = len(values)
        n = size.bit_length() - 1
        if size < 2 or 1 << n != size:
            raise ValueError(f"table length {size} is not a power of two >= 2")
        return cls(n, tuple(values))

    def __call__(self, x: int) -> int:
        return self.values[x]

    def __str__(self) -> str:
        return "".join(map(str, self.values))

    def complement(self) -> FunctionTable:
        return FunctionTable(self.input_bits, tuple(1 - v for v in self.values))


@dataclass
class QueryLog:
    """Oracle evaluations made during one classification run.

    Each transcript entry is ``(input pattern, output bit)``. A quantum query
    evaluates f on every input at once, so it is recorded with input ``"*"``
    repeated n times and no observed output.
    """

    transcript: list[tuple[str, int | None]] = field(default_factory=list)

    @property
    def queries(self) -> int:
        return len(self.transcript)

    def record(self, pattern: str, output: int | None) -> None:
        self.transcript.append((pattern, output))


class BlackBox:
    """Counts evaluations of a hidden table. Not safe to share between runs."""

    def __init__(self, table: FunctionTable):
        self._table = table
        self.input_bits = table.input_bits
        self.log = QueryLog()

    def __call__(self, x: int) -> int:
        if not 0 <= x < 1 << self.input_bits:
            raise IndexError(f"input {x} out of range for {self.input_bits} bits")
        out = self._table(x)
        self.log.record(qsim.basis_label(x, self.input_bits), out)
        return out


class QuantumResult(NamedTuple):
    classification: Classification
    log: QueryLog
    certainty: float


class ClassicalResult(NamedTuple):
    classification: Classification
    log: QueryLog


def classify_table(f: FunctionTable) -> Classification:
    ones = sum(f.values)
    if ones == 0 or ones == len(f.values):
        return Classification.CONSTANT
    if 2 * ones == len(f.values):
        return Classification.BALANCED
    return Classification.NEITHER


def require_promise(f: FunctionTable) -> Classification:
    cls = classify_table(f)
    if cls is Classification.NEITHER:
        raise PromiseViolation(f"table {f} is neither constant nor balanced")
    return cls


def oracle_unitary(f: FunctionTable, cap: int = qsim.MAX_QUBITS) -> qsim.Unitary:
    """The (n+1)-qubit permutation ``|x>|y> -> |x>|y xor f(x)>``.

    The target bit y is the last (least significant) qubit.
    """
    num_qubits = f.input_bits + 1
    if num_qubits > cap:
        raise SizeError(f"oracle needs {num_qubits} qubits, cap is {cap}")
    dim = 1 << num_qubits
    m = np.zeros((dim, dim), dtype=np.complex128)
    for x, fx in enumerate(f.values):
        for y in (0, 1):
            m[(x << 1) | (y ^ fx), (x << 1) | y] = 1.0
    return qsim.Unitary(m)


def deutsch_jozsa_state(f: FunctionTable, log: QueryLog | None = None) -> qsim.StateVector:
    """Final state of ``H^n (x) I . U_f . H^(n+1) . |0...0>|1>``."""
    n = f.input_bits
    state = qsim.zero_state(n + 1)
    state = qsim.apply(state, qsim.pauli_x(), [n])
    state = qsim.apply_all(state, qsim.hadamard())
    state = qsim.apply(state, oracle_unitary(f), list(range(n + 1)))
    if log is not None:
        log.record("*" * n, None)
    for q in range(n):
        state = qsim.apply(state, qsim.hadamard(), [q])
    return state


def classify_quantum(f: FunctionTable) -> QuantumResult:
    """Decide constant vs balanced with one application of the oracle."""
    require_promise(f)
    n = f.input_bits
    log = QueryLog()
    state = deutsch_jozsa_state(f, log)
    p_zero = qsim.marginal_probability(state, range(n), [0] * n)
    if abs(p_zero - 1.0) <= qsim.CIRCUIT_TOL:
        return QuantumResult(Classification.CONSTANT, log, p_zero)
    if abs(p_zero) <= qsim.CIRCUIT_TOL:
        return QuantumResult(Classification.BALANCED, log, 1.0 - p_zero)
    # Unreachable for promise inputs; reaching it means the simulator is wrong.
    raise RuntimeError(f"all-zero probability {p_zero!r} is neither 0 nor 1")


def classical_query_bound(n: int) -> int:
    """Worst-case queries of the ascending-order deterministic strategy."""
    return (1 << (n - 1)) + 1


def classify_classical(box: BlackBox | FunctionTable, strict: bool = False) -> ClassicalResult:
    """Query inputs 0, 1, 2, ... until the answer is forced by the promise.

    Two differing outputs mean Balanced; ``2**(n-1) + 1`` equal outputs mean
    Constant. With ``strict`` the remaining inputs are probed too and a
    contradiction raises ``PromiseViolation`` (every probe is logged).
    """
    if isinstance(box, FunctionTable):
        box = BlackBox(box)
    n = box.input_bits
    first = box(0)
    verdict = Classification.CONSTANT
    for x in range(1, classical_query_bound(n)):
        if box(x) != first:
            verdict = Classification.BALANCED
            break
    if strict and verdict is Classification.CONSTANT:
        for x in range(classical_query_bound(n), 1 << n):
            if box(x) != first:
                raise PromiseViolation(
                    f"{classical_query_bound(n)} equal outputs followed by a differing one at x={x}"
                )
    return ClassicalResult(verdict, box.log)


def enumerate_functions(
    n: int, which: Classification, balanced_cap: int = BALANCED_ENUM_CAP
) -> Iterator[FunctionTable]:
    """Yield every constant or every balanced table on n input bits."""
    if n < 1:
        raise SizeError(f"n must be positive, got {n}")
    size = 1 << n
    if which is Classification.CONSTANT:
        yield FunctionTable(n, (0,) * size)
        yield FunctionTable(n, (1,) * size)
    elif which is Classification.BALANCED:
        if n > balanced_cap:
            raise SizeError(
                f"balanced enumeration at n={n} has C({size}, {size // 2}) tables; cap is n={balanced_cap}"
            )
        for ones in itertools.combinations(range(size), size // 2):
            values = [0] * size
            for i in ones:
                values[i] = 1
            yield FunctionTable(n, tuple(values))
    else:
        raise ValueError("only Constant and Balanced families can be enumerated")


def reverse_oracle_roundtrip(f: FunctionTable, basis: int) -> int:
    """Send a basis state through the oracle twice; return the resulting index."""
    u = oracle_unitary(f)
    state = qsim.basis_state(u.num_qubits, basis)
    targets = range(u.num_qubits)
    state = qsim.apply(qsim.apply(state, u, targets), u, targets)
    probs = qsim.probabilities(state)
    index = int(np.argmax(probs))
    if not math.isclose(probs[index], 1.0, abs_tol=qsim.ALGEBRA_TOL):
        raise RuntimeError("oracle did not map a basis state to a basis state")
    return index


def parse_oracle(text: str) -> FunctionTable:
    """Parse a line of 2**n characters over {0,1}; outer whitespace is ignored."""
    bits = text.strip()
    if not bits:
        raise ParseError("oracle string is empty")
    bad = sorted({c for c in bits if c not in "01"})
    if bad:
        raise ParseError(f"oracle string may only contain '0' and '1', found {bad!r}")
    size = len(bits)
    if size < 2 or size & (size - 1):
        raise LengthError(f"oracle length {size} is not a power of two >= 2")
    return FunctionTable.from_values([int(c) for c in bits])


def load_oracle(source: str | Path) -> FunctionTable:
    """Read an oracle from a file path if one exists, else parse it inline."""
    path = Path(source)
    try:
        is_file = path.is_file()
    except OSError:
        is_file = False
    if is_file:
        return parse_oracle(path.read_text(encoding="utf-8"))
    return parse_oracle(str(source))
