"""Deutsch-Jozsa as a state-vector circuit, a two-switch light circuit and a Mach-Zehnder interferometer."""

from .deutsch import (
    Classification,
    FunctionTable,
    classify_classical,
    classify_quantum,
    classify_table,
    enumerate_functions,
    oracle_unitary,
)
from .errors import DJSwitchError, ParseError, PromiseViolation, SizeError
from .switchboard import SwitchPos, Wiring, alice_inspect, nwire_inspect

__version__ = "0.1.0"
