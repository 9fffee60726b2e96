import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from djswitch.deutsch import Classification, FunctionTable, classify_quantum, classify_table
from djswitch.errors import ParseError
from djswitch.switchboard import (
    CableRun,
    Observation,
    Parity,
    SwitchPos,
    Wiring,
    alice_inspect,
    all_observations,
    consistent_wirings,
    flip_count,
    is_balanced,
    light_on,
    lower_terminal_count,
    nwire_inspect,
    parse_cables,
    parse_wiring,
    relabel_right,
    single_observation_insufficient,
    table_parity,
    two_observations_decide,
)

A, B, C, D = Wiring.A, Wiring.B, Wiring.C, Wiring.D
UP, DOWN = SwitchPos.UP, SwitchPos.DOWN


def test_switch_encoding():
    assert int(UP) == 0 and int(DOWN) == 1
    assert UP.flipped() is DOWN and DOWN.flipped() is UP


def test_terminal_maps():
    assert [A.terminal(x) for x in (0, 1)] == [0, 1]
    assert [B.terminal(x) for x in (0, 1)] == [1, 0]
    assert [C.terminal(x) for x in (0, 1)] == [0, 0]
    assert [D.terminal(x) for x in (0, 1)] == [1, 1]


@pytest.mark.parametrize(
    "w, left, right, on",
    [
        (A, UP, UP, True),
        (A, DOWN, DOWN, True),
        (A, UP, DOWN, False),
        (B, UP, DOWN, True),
        (B, DOWN, UP, True),
        (B, UP, UP, False),
        (C, DOWN, UP, True),
        (C, DOWN, DOWN, False),
    ],
)
def test_light_on(w, left, right, on):
    assert light_on(w, left, right) is on


def test_constant_wirings_ignore_left_switch():
    for w, right in itertools.product((C, D), SwitchPos):
        assert light_on(w, UP, right) == light_on(w, DOWN, right)


def test_balanced_wirings_need_both_switches():
    for w, right in itertools.product((A, B), SwitchPos):
        assert light_on(w, UP, right) != light_on(w, DOWN, right)


# (left, right) -> wirings with the light on / off.
TRUTH_TABLE = [
    (UP, UP, {A, C}, {B, D}),
    (DOWN, DOWN, {A, D}, {B, C}),
    (UP, DOWN, {B, D}, {A, C}),
    (DOWN, UP, {B, C}, {A, D}),
]


@pytest.mark.parametrize("left, right, on, off", TRUTH_TABLE)
def test_consistent_wirings_reproduce_table(left, right, on, off):
    assert consistent_wirings(Observation(left, right, True)) == on
    assert consistent_wirings(Observation(left, right, False)) == off


def test_all_observations():
    obs = all_observations()
    assert len(obs) == 8 == len(set(obs))


def test_is_balanced():
    assert [is_balanced(w) for w in (A, B, C, D)] == [True, True, False, False]


def test_lower_terminal_count():
    assert [lower_terminal_count(w) for w in (A, B, C, D)] == [1, 1, 0, 2]


@pytest.mark.parametrize(
    "w, final, verdict",
    [
        (A, DOWN, Classification.BALANCED),
        (B, DOWN, Classification.BALANCED),
        (C, UP, Classification.CONSTANT),
        (D, UP, Classification.CONSTANT),
    ],
)
def test_alice_inspect(w, final, verdict):
    assert alice_inspect(w) == (final, verdict)


def test_single_observation_insufficient():
    assert single_observation_insufficient() is True
    ws = consistent_wirings(Observation(UP, UP, True))
    assert ws == {A, C} and is_balanced(A) and not is_balanced(C)
    assert consistent_wirings(Observation(UP, DOWN, False)) == {A, C}


def test_two_observations_decide():
    assert two_observations_decide(UP) and two_observations_decide(DOWN)


def test_relabel_right():
    assert relabel_right(A) is B and relabel_right(C) is D
    for w in Wiring:
        assert relabel_right(relabel_right(w)) is w
        assert is_balanced(relabel_right(w)) == is_balanced(w)
        assert alice_inspect(relabel_right(w)).verdict is alice_inspect(w).verdict
        # Turning the right switch over complements the terminal map.
        assert relabel_right(w).table() == w.table().complement()


def test_flip_count():
    assert [flip_count(w) for w in (A, B, C, D)] == [0, 2, 1, 1]
    for w in Wiring:
        assert (flip_count(w) % 2 == 0) == is_balanced(w)


@pytest.mark.parametrize(
    "values, parity",
    [((0, 1), Parity.ODD), ((1, 1), Parity.EVEN), ((1, 0, 1, 1), Parity.ODD), ((0, 0), Parity.EVEN)],
)
def test_table_parity(values, parity):
    assert table_parity(FunctionTable.from_values(values)) is parity


@pytest.mark.parametrize(
    "run, final, parity",
    [
        ((A,), DOWN, Parity.ODD),
        ((A, B), UP, Parity.EVEN),
        ((A, C, D), DOWN, Parity.ODD),
        ((D, D, D), UP, Parity.EVEN),
    ],
)
def test_nwire_inspect(run, final, parity):
    assert nwire_inspect(CableRun(run)) == (final, parity)


def test_cable_run_nonempty():
    with pytest.raises(ValueError):
        CableRun(())
    assert CableRun((A, B)).num_wires == 4


@given(st.lists(st.sampled_from(list(Wiring)), min_size=1, max_size=12))
def test_nwire_equals_xor_of_wire_ends(run):
    xor = 0
    for w in run:
        xor ^= w.terminal(0) ^ w.terminal(1)
    res = nwire_inspect(run)
    assert (res.parity is Parity.ODD) == bool(xor)
    assert (res.final is DOWN) == bool(xor)


def test_single_cable_matches_alice():
    for w in Wiring:
        assert nwire_inspect([w]).final is alice_inspect(w).final


def test_cross_world_agreement():
    for w in Wiring:
        f = w.table()
        verdict = alice_inspect(w).verdict
        assert classify_table(f) is verdict
        assert classify_quantum(f).classification is verdict


def test_parse_wiring():
    assert parse_wiring("a") is A and parse_wiring(" D ") is D
    for bad in ("x", "", "ab"):
        with pytest.raises(ParseError):
            parse_wiring(bad)


def test_parse_cables():
    assert parse_cables("aCd").cables == (A, C, D)
    for bad in ("", "abe", "a b"):
        with pytest.raises(ParseError):
            parse_cables(bad)
