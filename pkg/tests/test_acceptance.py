"""Exit criteria. Each test carries a ``criterion`` marker; the summary prints one line per criterion."""

import itertools
import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from djswitch.deutsch import (
    Classification,
    FunctionTable,
    classify_classical,
    classify_quantum,
    classify_table,
    enumerate_functions,
    oracle_unitary,
)
from djswitch.interferometer import MzNetwork, deutsch_phases, firing_detector, mz_intensities
from djswitch.switchboard import (
    Observation,
    Parity,
    SwitchPos,
    Wiring,
    alice_inspect,
    all_observations,
    consistent_wirings,
    flip_count,
    is_balanced,
    lower_terminal_count,
    nwire_inspect,
    relabel_right,
    single_observation_insufficient,
    table_parity,
)

from conftest import all_tables, xor_oracle

C, B = Classification.CONSTANT, Classification.BALANCED
A_, B_, C_, D_ = Wiring.A, Wiring.B, Wiring.C, Wiring.D
UP, DOWN = SwitchPos.UP, SwitchPos.DOWN

CIRCUIT_TOL = 1e-9
ALGEBRA_TOL = 1e-12


def promise(n):
    return list(enumerate_functions(n, C)) + list(enumerate_functions(n, B))


def truth(values):
    ones = sum(values)
    return C if ones in (0, len(values)) else B


@pytest.mark.criterion(1, "one quantum query vs two classical observations at n=1")
def test_one_vs_two_observations():
    start = time.perf_counter()
    tables = promise(1)
    assert len(tables) == 4
    for f in tables:
        q = classify_quantum(f)
        c = classify_classical(f)
        assert q.log.queries == 1
        assert c.log.queries == 2
        assert abs(q.certainty - 1.0) < CIRCUIT_TOL
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion(2, "exhaustive correctness for n <= 3; classical worst case 2, 3, 5")
def test_exhaustive_correctness():
    start = time.perf_counter()
    sizes = {1: (2, 2), 2: (2, 6), 3: (2, 70)}
    worst_expected = {1: 2, 2: 3, 3: 5}
    for n in (1, 2, 3):
        consts, bals = list(enumerate_functions(n, C)), list(enumerate_functions(n, B))
        assert (len(consts), len(bals)) == sizes[n]
        worst, worst_const = 0, 0
        for f in consts + bals:
            expected = truth(f.values)
            assert classify_table(f) is expected
            q = classify_quantum(f)
            assert q.classification is expected and q.log.queries == 1
            assert abs(q.certainty - 1.0) < CIRCUIT_TOL
            c = classify_classical(f)
            assert c.classification is expected
            worst = max(worst, c.log.queries)
            if expected is C:
                worst_const = max(worst_const, c.log.queries)
        assert worst == worst_const == worst_expected[n] == 2 ** (n - 1) + 1
    assert time.perf_counter() - start < 10.0


@pytest.mark.criterion(3, "truth table rows reproduced; one observation never decides")
def test_truth_table_reproduction():
    rows = {
        (UP, UP): {A_, C_},
        (DOWN, DOWN): {A_, D_},
        (UP, DOWN): {B_, D_},
        (DOWN, UP): {B_, C_},
    }
    for (left, right), on in rows.items():
        assert consistent_wirings(Observation(left, right, True)) == on
        assert consistent_wirings(Observation(left, right, False)) == set(Wiring) - on
    for obs in all_observations():
        ws = consistent_wirings(obs)
        assert any(is_balanced(w) for w in ws) and any(not is_balanced(w) for w in ws)
    assert single_observation_insufficient() is True


@pytest.mark.criterion(4, "flip-on-lower-terminal inspection agrees with table and quantum verdicts")
def test_alice_procedure():
    for w in Wiring:
        res = alice_inspect(w)
        assert (res.verdict is B) == is_balanced(w)
        assert (res.final is DOWN) == (lower_terminal_count(w) % 2 == 1)
        f = FunctionTable(1, (w.terminal(0), w.terminal(1)))
        assert classify_table(f) is res.verdict
        assert classify_quantum(f).classification is res.verdict


@pytest.mark.criterion(5, "N-wire parity equals brute-force XOR for all 4^k runs, k <= 6")
def test_nwire_parity():
    start = time.perf_counter()
    runs = 0
    for k in range(1, 7):
        for run in itertools.product(list(Wiring), repeat=k):
            bits = [w.terminal(x) for w in run for x in (0, 1)]
            xor = 0
            for b in bits:
                xor ^= b
            assert (nwire_inspect(run).parity is Parity.ODD) == bool(xor)
            runs += 1
    assert runs == sum(4**k for k in range(1, 7))
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion(6, "flip-count parity law and table parity on every table, n <= 3")
def test_parity_laws():
    for w in Wiring:
        assert (flip_count(w) % 2 == 0) == is_balanced(w)
    checked = 0
    for n in (1, 2, 3):
        tables = [FunctionTable(n, v) for v in all_tables(n)] + promise(n)
        for f in tables:
            expected = Parity.ODD if f.values.count(1) % 2 else Parity.EVEN
            assert table_parity(f) is expected
            checked += 1
    assert checked == (4 + 16 + 256) + (4 + 8 + 72)


@pytest.mark.criterion(7, "Mach-Zehnder intensities match the closed form and the quantum verdict")
def test_interferometer_equivalence():
    start = time.perf_counter()
    grid = [2 * math.pi * i / 10 for i in range(10)]
    for upper, lower in itertools.product(grid, repeat=2):
        got = mz_intensities(MzNetwork(upper, lower, 0))
        d = upper - lower
        assert abs(got.port0 - math.cos(d / 2) ** 2) < ALGEBRA_TOL
        assert abs(got.port1 - math.sin(d / 2) ** 2) < ALGEBRA_TOL
        assert abs(got.port0 + got.port1 - 1.0) < ALGEBRA_TOL
    for f in promise(1):
        detector = firing_detector(mz_intensities(deutsch_phases(f)))
        assert (detector == 0) == (classify_quantum(f).classification is C)
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion(8, "oracle is an exact permutation and squares to identity, n <= 3")
def test_oracle_algebra():
    start = time.perf_counter()
    for n in (1, 2, 3):
        for f in promise(n):
            m = oracle_unitary(f).entries
            assert np.array_equal(m, xor_oracle(f.values))
            mags = np.abs(m)
            assert np.all((mags == 0) | (mags == 1))
            assert np.all(mags.sum(axis=0) == 1) and np.all(mags.sum(axis=1) == 1)
            assert np.max(np.abs(m @ m - np.eye(len(m)))) < ALGEBRA_TOL
    assert time.perf_counter() - start < 5.0


@pytest.mark.criterion(9, "complement and relabel preserve every verdict")
def test_relabel_symmetry():
    for w in Wiring:
        r = relabel_right(w)
        assert is_balanced(r) == is_balanced(w)
        assert alice_inspect(r).verdict is alice_inspect(w).verdict
    for n in (1, 2, 3):
        for f in promise(n):
            g = f.complement()
            assert classify_table(g) is classify_table(f)
            assert classify_quantum(g).classification is classify_quantum(f).classification
            cf, cg = classify_classical(f), classify_classical(g)
            assert cg.classification is cf.classification
            assert cg.log.queries == cf.log.queries


@pytest.mark.criterion(10, "`verify --max-n 3` exits 0 in under 30 s")
def test_cli_verify_end_to_end():
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "djswitch", "--format", "json", "verify", "--max-n", "3"],
        capture_output=True,
        text=True,
        check=False,
    )
    elapsed = time.perf_counter() - start
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert elapsed < 30.0
    report = json.loads(proc.stdout)
    checks = report["results"]["checks"]
    assert all(c["passed"] for c in checks)
    assert report["results"]["total"][0] == {
        "checks": len(checks),
        "passed": len(checks),
        "failed": 0,
        "cases": sum(c["cases"] for c in checks),
    }
