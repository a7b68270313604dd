"""Shared literal reference states and small helpers.

The expected amplitude tables here were derived by hand from the
interferometer convention (entry splitter sends the input to
(i|O> + |NO>)/sqrt2, exit splitter present sends O -> (|c> + i|d>)/sqrt2
and NO -> (i|c> + |d>)/sqrt2, absent relabels O -> c, NO -> d) and are
frozen: implementation changes must reproduce them, not the other way
around.
"""
from __future__ import annotations

import math

from hardyweak.states import GAMMA, StateVector, Structure

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

# Overlap of the surviving-paths pre-selection with the dark-port
# coincidence post-selection, expanded by hand.
PRE_POST_OVERLAP = -1.0 / (2.0 * SQRT3)


def arm_structure() -> Structure:
    return Structure.of(("+", ("O", "NO")), ("-", ("O", "NO")))


def port_structure() -> Structure:
    return Structure.of(("+", ("c", "d")), ("-", ("c", "d")))


def photon_structure() -> Structure:
    return Structure.of(("2", ("H", "V")), ("4", ("H", "V")))


def state_of(structure: Structure, table: dict[tuple[str, ...] | None, complex]) -> StateVector:
    """Build a state from {levels-tuple: amplitude}; key None means GAMMA."""
    amps = {}
    for key, amp in table.items():
        label = GAMMA if key is None else structure.label(*key)
        amps[label] = amp
    return StateVector(structure, amps)


def surviving_paths_literal() -> StateVector:
    a = 1.0 / SQRT3
    return state_of(
        arm_structure(),
        {("O", "NO"): a, ("NO", "O"): a, ("NO", "NO"): a},
    )


def dark_coincidence_literal() -> StateVector:
    # (1/2) (|NO+> - |O+>) (|NO-> - |O->)
    return state_of(
        arm_structure(),
        {("NO", "NO"): 0.5, ("NO", "O"): -0.5, ("O", "NO"): -0.5, ("O", "O"): 0.5},
    )


def entangled_target_literal() -> StateVector:
    a = 1.0 / SQRT3
    return state_of(
        photon_structure(),
        {("H", "H"): a, ("H", "V"): a, ("V", "H"): a},
    )


def analyzer_literal() -> StateVector:
    # Post-selection for both analyzers rotated to -pi/4 and firing in H.
    return state_of(
        photon_structure(),
        {("H", "H"): 0.5, ("H", "V"): -0.5, ("V", "H"): -0.5, ("V", "V"): 0.5},
    )


def expected_final_table(plus_present: bool, minus_present: bool) -> dict:
    """Frozen final amplitudes of the two-particle interferometer run.

    Keys are outcome names over {gamma, c+c-, c+d-, d+c-, d+d-}.
    """
    s = 1.0 / (2.0 * SQRT2)
    if plus_present and minus_present:
        return {
            "gamma": -0.5,
            "c+c-": -0.75,
            "c+d-": 0.25j,
            "d+c-": 0.25j,
            "d+d-": -0.25,
        }
    if not plus_present and minus_present:
        return {
            "gamma": -0.5,
            "c+c-": -s,
            "c+d-": 1j * s,
            "d+c-": 2j * s,
            "d+d-": 0.0,
        }
    if plus_present and not minus_present:
        return {
            "gamma": -0.5,
            "c+c-": -s,
            "c+d-": 2j * s,
            "d+c-": 1j * s,
            "d+d-": 0.0,
        }
    return {
        "gamma": -0.5,
        "c+c-": 0.0,
        "c+d-": 0.5j,
        "d+c-": 0.5j,
        "d+d-": 0.5,
    }


OUTCOME_LEVELS = {
    "c+c-": ("c", "c"),
    "c+d-": ("c", "d"),
    "d+c-": ("d", "c"),
    "d+d-": ("d", "d"),
}


def expected_final_state(plus_present: bool, minus_present: bool) -> StateVector:
    table = expected_final_table(plus_present, minus_present)
    keyed = {None: table["gamma"]}
    for name, levels in OUTCOME_LEVELS.items():
        if table[name] != 0.0:
            keyed[levels] = table[name]
    return state_of(port_structure(), keyed)
