"""The two-switch light circuit as a classical Deutsch problem.

Each of the four wirings connects the left switch's two positions to
terminals of the right switch, i.e. it is a one-bit map f_w:

    A: f(x) = x      (balanced)
    B: f(x) = 1 - x  (balanced)
    C: f(x) = 0      (constant)
    D: f(x) = 1      (constant)

Up encodes 0 and Down encodes 1. The light is on when the right switch
selects the terminal the left switch is wired to.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .deutsch import Classification, FunctionTable, classify_table
from .errors import ParseError

__all__ = [
    "Wiring",
    "SwitchPos",
    "Parity",
    "Observation",
    "CableRun",
    "InspectResult",
    "NWireResult",
    "light_on",
    "all_observations",
    "consistent_wirings",
    "is_balanced",
    "lower_terminal_count",
    "alice_inspect",
    "single_observation_insufficient",
    "two_observations_decide",
    "relabel_right",
    "flip_count",
    "bit_parity",
    "table_parity",
    "nwire_inspect",
    "parse_wiring",
    "parse_cables",
    "wiring_verdict",
]


class SwitchPos(enum.IntEnum):
    UP = 0
    DOWN = 1

    def flipped(self) -> SwitchPos:
        return SwitchPos(1 - self)

    def __str__(self) -> str:
        return self.name.capitalize()


class Wiring(enum.Enum):
    A = (0, 1)
    B = (1, 0)
    C = (0, 0)
    D = (1, 1)

    @property
    def terminals(self) -> tuple[int, int]:
        """``(f(0), f(1))``: terminal reached from left Up and left Down."""
        return self.value

    def terminal(self, left: int) -> int:
        return self.value[int(left)]

    def table(self) -> FunctionTable:
        return FunctionTable(1, self.value)

    def __str__(self) -> str:
        return self.name


class Parity(enum.Enum):
    EVEN = "Even"
    ODD = "Odd"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Observation:
    left: SwitchPos
    right: SwitchPos
    light: bool


@dataclass(frozen=True)
class CableRun:
    """Two-wire cables landing on one shared right-hand switch."""

    cables: tuple[Wiring, ...]

    def __post_init__(self) -> None:
        cables = tuple(self.cables)
        if not cables:
            raise ValueError("a cable run needs at least one cable")
        object.__setattr__(self, "cables", cables)

    @property
    def num_wires(self) -> int:
        return 2 * len(self.cables)


class InspectResult(NamedTuple):
    final: SwitchPos
    verdict: Classification


class NWireResult(NamedTuple):
    final: SwitchPos
    parity: Parity


def light_on(w: Wiring, left: SwitchPos, right: SwitchPos) -> bool:
    return int(right) == w.terminal(left)


def all_observations() -> list[Observation]:
    """The 8 possible (left, right, light) outcomes, in truth-table order."""
    settings = [
        (SwitchPos.UP, SwitchPos.UP),
        (SwitchPos.DOWN, SwitchPos.DOWN),
        (SwitchPos.UP, SwitchPos.DOWN),
        (SwitchPos.DOWN, SwitchPos.UP),
    ]
    return [Observation(l, r, light) for l, r in settings for light in (True, False)]


def consistent_wirings(obs: Observation) -> frozenset[Wiring]:
    return frozenset(w for w in Wiring if light_on(w, obs.left, obs.right) == obs.light)


def is_balanced(w: Wiring) -> bool:
    return w.terminal(0) != w.terminal(1)


def lower_terminal_count(w: Wiring) -> int:
    """How many of the wiring's two wires land on the Down terminal."""
    return sum(w.terminals)


def alice_inspect(w: Wiring) -> InspectResult:
    """Start the right switch Up and flip it for each wire on the Down terminal."""
    pos = SwitchPos.UP
    for _ in range(lower_terminal_count(w)):
        pos = pos.flipped()
    verdict = Classification.BALANCED if pos is SwitchPos.DOWN else Classification.CONSTANT
    return InspectResult(pos, verdict)


def _mixes_classes(wirings: Iterable[Wiring]) -> bool:
    kinds = {is_balanced(w) for w in wirings}
    return kinds == {True, False}


def single_observation_insufficient() -> bool:
    """True when no single observation separates balanced from constant."""
    return all(
        _mixes_classes(ws)
        for ws in map(consistent_wirings, all_observations())
        if ws
    )


def two_observations_decide(right: SwitchPos = SwitchPos.UP) -> bool:
    """Observing with left Up and then left Down (right held fixed) always decides the class."""
    for w in Wiring:
        seen = [Observation(left, right, light_on(w, left, right)) for left in SwitchPos]
        candidates = consistent_wirings(seen[0]) & consistent_wirings(seen[1])
        if _mixes_classes(candidates) or not candidates:
            return False
    return True


_RELABEL = {Wiring.A: Wiring.B, Wiring.B: Wiring.A, Wiring.C: Wiring.D, Wiring.D: Wiring.C}


def relabel_right(w: Wiring) -> Wiring:
    """Swap which right-hand terminal is called Down (turning the switch over)."""
    return _RELABEL[w]


def flip_count(w: Wiring) -> int:
    """Number of inputs the wiring maps to a different bit."""
    return sum(w.terminal(x) != x for x in (0, 1))


def bit_parity(bits: Iterable[int]) -> Parity:
    return Parity.ODD if sum(bits) % 2 else Parity.EVEN


def table_parity(f: FunctionTable) -> Parity:
    return bit_parity(f.values)


def nwire_inspect(run: CableRun | Sequence[Wiring]) -> NWireResult:
    """Alice's flip rule applied across every cable of a run."""
    if not isinstance(run, CableRun):
        run = CableRun(tuple(run))
    pos = SwitchPos.UP
    for cable in run.cables:
        for _ in range(lower_terminal_count(cable)):
            pos = pos.flipped()
    parity = Parity.ODD if pos is SwitchPos.DOWN else Parity.EVEN
    return NWireResult(pos, parity)


def parse_wiring(text: str) -> Wiring:
    letter = text.strip().upper()
    if len(letter) != 1 or letter not in Wiring.__members__:
        raise ParseError(f"wiring must be one of a, b, c, d; got {text!r}")
    return Wiring[letter]


def parse_cables(text: str) -> CableRun:
    """Parse a cable-run string such as ``"aCd"`` (case-insensitive)."""
    letters = text.strip()
    if not letters:
        raise ParseError("cable run is empty")
    bad = sorted({c for c in letters if c.upper() not in Wiring.__members__})
    if bad:
        raise ParseError(f"cable run may only contain a, b, c, d; found {bad!r}")
    return CableRun(tuple(Wiring[c.upper()] for c in letters))


def wiring_verdict(w: Wiring) -> Classification:
    return classify_table(w.table())
