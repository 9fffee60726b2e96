"""Exhaustive cross-checks between the quantum, switch and optical models.

``run_checks`` returns one ``Check`` per property group. Each check compares
a package operation with an independent computation (bit counting, closed
forms, direct enumeration) over every input in its family.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from . import qsim
from .deutsch import (
    BALANCED_ENUM_CAP,
    Classification,
    FunctionTable,
    classical_query_bound,
    classify_classical,
    classify_quantum,
    classify_table,
    enumerate_functions,
    oracle_unitary,
)
from .interferometer import (
    MzNetwork,
    closed_form_intensities,
    detector_verdict,
    mz_intensities,
)
from .switchboard import (
    Observation,
    Parity,
    SwitchPos,
    Wiring,
    alice_inspect,
    all_observations,
    bit_parity,
    consistent_wirings,
    flip_count,
    is_balanced,
    light_on,
    lower_terminal_count,
    nwire_inspect,
    relabel_right,
    single_observation_insufficient,
    table_parity,
    two_observations_decide,
)

MAX_VERIFY_N = 3
NWIRE_MAX_CABLES = 6


@dataclass
class Check:
    name: str
    passed: bool = True
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def expect(self, ok: bool, message: str) -> None:
        self.cases += 1
        if not ok:
            self.passed = False
            if len(self.failures) < 10:
                self.failures.append(message)


def promise_tables(n: int, balanced_cap: int = BALANCED_ENUM_CAP) -> Iterator[FunctionTable]:
    yield from enumerate_functions(n, Classification.CONSTANT)
    yield from enumerate_functions(n, Classification.BALANCED, balanced_cap)


def check_one_vs_two() -> Check:
    check = Check("one quantum query vs two classical observations (n=1)")
    for f in promise_tables(1):
        q = classify_quantum(f)
        c = classify_classical(f)
        check.expect(q.log.queries == 1, f"{f}: quantum used {q.log.queries} queries")
        check.expect(c.log.queries == 2, f"{f}: classical used {c.log.queries} queries")
        check.expect(abs(q.certainty - 1.0) < qsim.CIRCUIT_TOL, f"{f}: certainty {q.certainty!r}")
    return check


def check_exhaustive_correctness(max_n: int, balanced_cap: int) -> Check:
    check = Check(f"exhaustive classification agreement (n <= {max_n})")
    for n in range(1, max_n + 1):
        worst = 0
        worst_constant = 0
        for f in promise_tables(n, balanced_cap):
            truth = classify_table(f)
            q = classify_quantum(f)
            c = classify_classical(f)
            check.expect(q.classification is truth, f"{f}: quantum said {q.classification}")
            check.expect(q.log.queries == 1, f"{f}: quantum used {q.log.queries} queries")
            check.expect(abs(q.certainty - 1.0) < qsim.CIRCUIT_TOL, f"{f}: certainty {q.certainty!r}")
            check.expect(c.classification is truth, f"{f}: classical said {c.classification}")
            worst = max(worst, c.log.queries)
            if truth is Classification.CONSTANT:
                worst_constant = max(worst_constant, c.log.queries)
        bound = classical_query_bound(n)
        check.expect(worst == bound, f"n={n}: classical worst case {worst}, expected {bound}")
        check.expect(worst_constant == bound, f"n={n}: constants took {worst_constant}, expected {bound}")
    return check


# Expected (left, right) -> wirings with the light on.
_LIGHT_ON_ROWS = {
    (SwitchPos.UP, SwitchPos.UP): {Wiring.A, Wiring.C},
    (SwitchPos.DOWN, SwitchPos.DOWN): {Wiring.A, Wiring.D},
    (SwitchPos.UP, SwitchPos.DOWN): {Wiring.B, Wiring.D},
    (SwitchPos.DOWN, SwitchPos.UP): {Wiring.B, Wiring.C},
}


def check_truth_table() -> Check:
    check = Check("truth table rows and single-observation ambiguity")
    for (left, right), on in _LIGHT_ON_ROWS.items():
        off = set(Wiring) - on
        got_on = consistent_wirings(Observation(left, right, True))
        got_off = consistent_wirings(Observation(left, right, False))
        check.expect(got_on == on, f"{left}/{right} on: {sorted(w.name for w in got_on)}")
        check.expect(got_off == off, f"{left}/{right} off: {sorted(w.name for w in got_off)}")
    for obs in all_observations():
        ws = consistent_wirings(obs)
        kinds = {is_balanced(w) for w in ws}
        check.expect(kinds == {True, False}, f"{obs} does not mix classes")
    for w in (Wiring.C, Wiring.D):
        for right in SwitchPos:
            check.expect(
                light_on(w, SwitchPos.UP, right) == light_on(w, SwitchPos.DOWN, right),
                f"{w}: left switch changes the light",
            )
    check.expect(single_observation_insufficient(), "single_observation_insufficient() is False")
    for right in SwitchPos:
        check.expect(two_observations_decide(right), f"two observations with right={right} do not decide")
    return check


def check_alice() -> Check:
    check = Check("flip-on-lower-terminal inspection and cross-world agreement")
    for w in Wiring:
        res = alice_inspect(w)
        expected = Classification.BALANCED if is_balanced(w) else Classification.CONSTANT
        check.expect(res.verdict is expected, f"{w}: verdict {res.verdict}")
        odd = lower_terminal_count(w) % 2 == 1
        check.expect((res.final is SwitchPos.DOWN) == odd, f"{w}: final {res.final}")
        f = w.table()
        check.expect(classify_table(f) is res.verdict, f"{w}: table says {classify_table(f)}")
        check.expect(classify_quantum(f).classification is res.verdict, f"{w}: quantum disagrees")
    return check


def check_nwire(max_cables: int = NWIRE_MAX_CABLES) -> Check:
    check = Check(f"N-wire parity against brute-force XOR (runs up to {max_cables} cables)")
    for k in range(1, max_cables + 1):
        for run in itertools.product(list(Wiring), repeat=k):
            xor = 0
            for w in run:
                for x in (0, 1):
                    xor ^= w.terminal(x)
            res = nwire_inspect(run)
            expected = Parity.ODD if xor else Parity.EVEN
            check.expect(res.parity is expected, f"{''.join(w.name for w in run)}: {res.parity}")
            check.expect((res.final is SwitchPos.DOWN) == bool(xor), f"{run}: final {res.final}")
            concat = [w.terminal(x) for w in run for x in (0, 1)]
            check.expect(bit_parity(concat) is res.parity, f"{run}: concatenated table parity differs")
    return check


def check_parity(max_n: int, balanced_cap: int) -> Check:
    check = Check(f"parity laws (all tables n <= {max_n})")
    for w in Wiring:
        check.expect((flip_count(w) % 2 == 0) == is_balanced(w), f"{w}: flip count {flip_count(w)}")
    for n in range(1, max_n + 1):
        size = 1 << n
        tables = [FunctionTable(n, tuple((i >> (size - 1 - j)) & 1 for j in range(size)))
                  for i in range(1 << size)]
        tables.extend(promise_tables(n, balanced_cap))
        for f in tables:
            ones = bin(int(str(f), 2)).count("1")
            expected = Parity.ODD if ones % 2 else Parity.EVEN
            check.expect(table_parity(f) is expected, f"{f}: {table_parity(f)}")
    return check


def phase_grid(points: int = 10) -> list[float]:
    return [2 * math.pi * i / points for i in range(points)]


def check_interferometer(points: int = 10) -> Check:
    check = Check(f"Mach-Zehnder closed form on a {points}x{points} phase grid")
    grid = phase_grid(points)
    for upper, lower in itertools.product(grid, repeat=2):
        net = MzNetwork(upper, lower, 0)
        got = mz_intensities(net)
        want = closed_form_intensities(upper - lower)
        check.expect(
            abs(got.port0 - want.port0) < qsim.ALGEBRA_TOL and abs(got.port1 - want.port1) < qsim.ALGEBRA_TOL,
            f"({upper:.3f}, {lower:.3f}): {got} vs {want}",
        )
        check.expect(abs(got.port0 + got.port1 - 1.0) < qsim.ALGEBRA_TOL, f"({upper}, {lower}): sum != 1")
        shifted = mz_intensities(MzNetwork(upper + 0.7, lower + 0.7, 0))
        check.expect(
            abs(shifted.port0 - got.port0) < qsim.ALGEBRA_TOL,
            f"({upper}, {lower}): global phase changes intensities",
        )
    for f in promise_tables(1):
        check.expect(
            detector_verdict(f) is classify_quantum(f).classification,
            f"{f}: detector disagrees with quantum verdict",
        )
    return check


def _is_permutation(m: np.ndarray) -> bool:
    mags = np.abs(m)
    exact = np.all((mags == 0.0) | (mags == 1.0))
    return bool(exact and np.all(mags.sum(axis=0) == 1.0) and np.all(mags.sum(axis=1) == 1.0))


def check_oracle_algebra(max_n: int, balanced_cap: int) -> Check:
    check = Check(f"oracle is a self-inverse permutation (n <= {max_n})")
    for n in range(1, max_n + 1):
        for f in promise_tables(n, balanced_cap):
            m = oracle_unitary(f).entries
            check.expect(_is_permutation(m), f"{f}: not a permutation matrix")
            sq = m @ m
            check.expect(
                np.allclose(sq, np.eye(m.shape[0]), rtol=0.0, atol=qsim.ALGEBRA_TOL),
                f"{f}: U_f^2 != I",
            )
            for x in range(1 << n):
                for y in (0, 1):
                    col = m[:, (x << 1) | y]
                    check.expect(
                        col[(x << 1) | (y ^ f(x))] == 1.0, f"{f}: |{x}>|{y}> not sent to |x>|y^f(x)>"
                    )
    return check


def check_relabel(max_n: int, balanced_cap: int) -> Check:
    check = Check("relabel symmetry of every verdict")
    for w in Wiring:
        r = relabel_right(w)
        check.expect(is_balanced(r) == is_balanced(w), f"{w} -> {r} changes class")
        check.expect(alice_inspect(r).verdict is alice_inspect(w).verdict, f"{w}: inspection verdict changes")
        check.expect(relabel_right(r) is w, f"{w}: relabel is not an involution")
        comp = w.table().complement()
        check.expect(comp == r.table(), f"{w}: relabel is not value complement")
    for n in range(1, max_n + 1):
        for f in promise_tables(n, balanced_cap):
            g = f.complement()
            check.expect(classify_table(g) is classify_table(f), f"{f}: table verdict changes")
            check.expect(
                classify_quantum(g).classification is classify_quantum(f).classification,
                f"{f}: quantum verdict changes",
            )
            cf, cg = classify_classical(f), classify_classical(g)
            check.expect(cg.classification is cf.classification, f"{f}: classical verdict changes")
            check.expect(cg.log.queries == cf.log.queries, f"{f}: classical query count changes")
    return check


def check_qsim_kernel() -> Check:
    """Norm preservation, involutions and commuting disjoint gates on fixed random states."""
    check = Check("state-vector kernel invariants")
    rng = np.random.default_rng(12345)
    gates = [qsim.hadamard(), qsim.pauli_x()]
    for n in range(1, 5):
        for _ in range(5):
            v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
            state = qsim.StateVector(n, v / np.linalg.norm(v))
            for g in gates:
                for q in range(n):
                    once = qsim.apply(state, g, [q])
                    norm = float(np.sum(qsim.probabilities(once)))
                    check.expect(abs(norm - 1.0) < qsim.ALGEBRA_TOL, f"n={n}: norm {norm!r}")
                    check.expect(qsim.apply(once, g, [q]).allclose(state), f"n={n}: gate^2 != I")
            if n >= 2:
                ab = qsim.apply(qsim.apply(state, gates[0], [0]), gates[1], [n - 1])
                ba = qsim.apply(qsim.apply(state, gates[1], [n - 1]), gates[0], [0])
                check.expect(ab.allclose(ba), f"n={n}: disjoint gates do not commute")
    return check


def run_checks(
    max_n: int = MAX_VERIFY_N,
    balanced_cap: int = BALANCED_ENUM_CAP,
    progress: Callable[[Check], None] | None = None,
) -> list[Check]:
    if not 1 <= max_n <= balanced_cap:
        raise ValueError(f"max_n must be in [1, {balanced_cap}], got {max_n}")
    builders: list[Callable[[], Check]] = [
        check_qsim_kernel,
        check_one_vs_two,
        lambda: check_exhaustive_correctness(max_n, balanced_cap),
        check_truth_table,
        check_alice,
        check_nwire,
        lambda: check_parity(max_n, balanced_cap),
        check_interferometer,
        lambda: check_oracle_algebra(max_n, balanced_cap),
        lambda: check_relabel(max_n, balanced_cap),
    ]
    results = []
    for build in builders:
        start = time.perf_counter()
        check = build()
        check.seconds = time.perf_counter() - start
        results.append(check)
        if progress is not None:
            progress(check)
    return results
