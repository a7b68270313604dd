"""Linear-optical elements acting on labeled path and polarization states.

All elements are expressed as level maps: a subsystem's alphabet is
rewritten through a linear, norm-preserving substitution while every
other subsystem (and the GAMMA channel) rides along untouched.

Phase convention, fixed once for the whole package: a beamsplitter
multiplies the reflected amplitude by i and the transmitted one by 1,
both ports balanced.  The entry splitter reflects the input into the
overlapping arm O; the exit splitter transmits O to port c.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .states import GAMMA, BasisLabel, StateVector, Structure, StructureError

MAX_OCCUPANCY = 2

ENTRY_LEVEL = "in"
ARM_LEVELS = ("O", "NO")
PORT_LEVELS = ("c", "d")
POLARIZATION_LEVELS = ("H", "V")


class UnsupportedOccupancyError(ValueError):
    """More photons per mode than the two-photon model supports."""


def interferometer_structure(names: tuple[str, str] = ("+", "-")) -> Structure:
    """Two particles, each about to enter its interferometer."""
    return Structure.of(*((n, (ENTRY_LEVEL,)) for n in names))


def photon_pair_structure(names: tuple[str, str] = ("2", "4")) -> Structure:
    return Structure.of(*((n, POLARIZATION_LEVELS) for n in names))


LevelMap = Mapping[str, Mapping[str, complex]]


@dataclass(frozen=True)
class BeamsplitterConvention:
    """Balanced splitter phases; transmissivity is pinned at one half."""

    reflection_phase: complex = 1j

    def entry_map(self) -> dict[str, dict[str, complex]]:
        t = 1.0 / math.sqrt(2.0)
        return {ENTRY_LEVEL: {"O": self.reflection_phase * t, "NO": t}}

    def exit_map(self, present: bool) -> dict[str, dict[str, complex]]:
        if not present:
            return {"O": {"c": 1.0}, "NO": {"d": 1.0}}
        t = 1.0 / math.sqrt(2.0)
        r = self.reflection_phase * t
        return {"O": {"c": t, "d": r}, "NO": {"c": r, "d": t}}

    def fock_pair_map(self) -> dict[str, dict[str, complex]]:
        # Creation-operator substitution for the two-input combiner.
        t = 1.0 / math.sqrt(2.0)
        r = self.reflection_phase * t
        return {"a": {"c": t, "d": r}, "b": {"c": r, "d": t}}


DEFAULT_CONVENTION = BeamsplitterConvention()


def adjoint_level_map(mapping: LevelMap) -> dict[str, dict[str, complex]]:
    """Reverse a level map: useful for pulling detection events backward."""
    out: dict[str, dict[str, complex]] = {}
    for old, row in mapping.items():
        for new, amp in row.items():
            out.setdefault(new, {})[old] = complex(amp).conjugate()
    return out


def apply_level_map(
    state: StateVector,
    name: str,
    mapping: LevelMap,
    new_levels: tuple[str, ...],
) -> StateVector:
    """Rewrite one subsystem's levels through a linear substitution."""
    sub = state.structure.subsystem(name)
    if set(mapping) != set(sub.levels):
        raise StructureError(
            f"level map must cover exactly the alphabet of {name!r}"
        )
    for row in mapping.values():
        for target in row:
            if target not in new_levels:
                raise StructureError(f"map targets unknown level {target!r}")
    out: dict[BasisLabel, complex] = {}
    for label, amp in state.items():
        if label.is_gamma:
            out[GAMMA] = out.get(GAMMA, 0j) + amp
            continue
        for new_level, factor in mapping[label.level(name)].items():
            nl = label.with_level(name, new_level)
            out[nl] = out.get(nl, 0j) + amp * factor
    result = StateVector(state.structure.replace(name, new_levels), out)
    return result.prune()


def apply_first_beamsplitter(
    state: StateVector,
    particle: str,
    convention: BeamsplitterConvention = DEFAULT_CONVENTION,
) -> StateVector:
    """Split a particle waiting at its entry into the O / NO arm pair."""
    sub = state.structure.subsystem(particle)
    if len(sub.levels) != 1:
        raise StructureError(
            f"particle {particle!r} must sit in a single entry level, has {sub.levels}"
        )
    mapping = {sub.levels[0]: convention.entry_map()[ENTRY_LEVEL]}
    return apply_level_map(state, particle, mapping, ARM_LEVELS)


def apply_annihilation(state: StateVector) -> StateVector:
    """Move the all-overlapping amplitude onto the GAMMA channel.

    Norm-preserving by construction: one basis amplitude is relocated,
    nothing else changes.
    """
    for sub in state.structure.subsystems:
        if set(sub.levels) != set(ARM_LEVELS):
            raise StructureError(
                f"annihilation expects every particle in {ARM_LEVELS}, "
                f"{sub.name!r} has {sub.levels}"
            )
    meeting = state.structure.label(*(["O"] * len(state.structure.subsystems)))
    amps = dict(state.amplitudes)
    moved = amps.pop(meeting, 0j)
    if moved != 0j:
        amps[GAMMA] = amps.get(GAMMA, 0j) + moved
    return StateVector(state.structure, amps)


def apply_second_beamsplitter(
    state: StateVector,
    particle: str,
    present: bool,
    convention: BeamsplitterConvention = DEFAULT_CONVENTION,
) -> StateVector:
    """Recombine (or, absent, merely relabel) one particle's arms into ports."""
    sub = state.structure.subsystem(particle)
    if set(sub.levels) != set(ARM_LEVELS):
        raise StructureError(
            f"exit splitter expects arms {ARM_LEVELS}, {particle!r} has {sub.levels}"
        )
    return apply_level_map(state, particle, convention.exit_map(present), PORT_LEVELS)


def pbs_levels(transmit: str = "transmit", reflect: str = "reflect") -> tuple[str, str]:
    return (f"H@{transmit}", f"V@{reflect}")


def split_pbs_level(level: str) -> tuple[str, str]:
    pol, _, port = level.partition("@")
    return pol, port


def apply_pbs(
    state: StateVector,
    photon: str,
    transmit: str = "transmit",
    reflect: str = "reflect",
) -> StateVector:
    """Tag H with the transmitted spatial mode and V with the reflected one."""
    sub = state.structure.subsystem(photon)
    if set(sub.levels) != set(POLARIZATION_LEVELS):
        raise StructureError(f"polarizing splitter expects H/V on {photon!r}")
    new_h, new_v = pbs_levels(transmit, reflect)
    mapping = {"H": {new_h: 1.0}, "V": {new_v: 1.0}}
    return apply_level_map(state, photon, mapping, (new_h, new_v))


def apply_polarization_rotation(state: StateVector, photon: str, phi: float) -> StateVector:
    """Rotate one photon's polarization basis by phi (real rotation)."""
    sub = state.structure.subsystem(photon)
    if set(sub.levels) != set(POLARIZATION_LEVELS):
        raise StructureError(f"rotation expects H/V on {photon!r}")
    c, s = math.cos(phi), math.sin(phi)
    mapping = {"H": {"H": c, "V": -s}, "V": {"H": s, "V": c}}
    return apply_level_map(state, photon, mapping, POLARIZATION_LEVELS)


@dataclass(frozen=True)
class FockModeState:
    """Occupation-number amplitudes over a fixed tuple of named modes."""

    modes: tuple[str, ...]
    amplitudes: dict[tuple[int, ...], complex]

    def __post_init__(self) -> None:
        for occ in self.amplitudes:
            if len(occ) != len(self.modes):
                raise StructureError("occupation tuple does not match mode count")
            if any(n < 0 or n > MAX_OCCUPANCY for n in occ):
                raise UnsupportedOccupancyError(
                    f"occupancy beyond {MAX_OCCUPANCY} photons per mode: {occ}"
                )
        ordered = dict(
            sorted((occ, complex(a)) for occ, a in self.amplitudes.items())
        )
        object.__setattr__(self, "amplitudes", ordered)

    def norm_sq(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes.values())

    def total_photons(self, occ: tuple[int, ...]) -> int:
        return sum(occ)


def hom_combine(
    state: FockModeState,
    out_modes: tuple[str, str] = ("c", "d"),
    convention: BeamsplitterConvention = DEFAULT_CONVENTION,
) -> FockModeState:
    """Interfere two bosonic input modes on a balanced splitter.

    Implemented as the creation-operator substitution
    a+ -> (c+ + i d+)/sqrt2, b+ -> (i c+ + d+)/sqrt2, so one photon in
    each input bunches: the coincidence amplitude cancels exactly.
    """
    if len(state.modes) != 2:
        raise StructureError("combiner expects exactly two input modes")
    sub = convention.fock_pair_map()
    a_row = [sub["a"]["c"], sub["a"]["d"]]
    b_row = [sub["b"]["c"], sub["b"]["d"]]
    out: dict[tuple[int, ...], complex] = {}
    for (na, nb), amp in state.amplitudes.items():
        if na + nb > MAX_OCCUPANCY:
            raise UnsupportedOccupancyError(
                f"combiner supports at most {MAX_OCCUPANCY} photons, got {na + nb}"
            )
        # Expand (a+)^na (b+)^nb over the output operators.
        poly: dict[tuple[int, int], complex] = {(0, 0): 1.0 + 0j}
        for row in [a_row] * na + [b_row] * nb:
            grown: dict[tuple[int, int], complex] = {}
            for (j, k), coeff in poly.items():
                grown[(j + 1, k)] = grown.get((j + 1, k), 0j) + coeff * row[0]
                grown[(j, k + 1)] = grown.get((j, k + 1), 0j) + coeff * row[1]
            poly = grown
        scale = 1.0 / math.sqrt(math.factorial(na) * math.factorial(nb))
        for (j, k), coeff in poly.items():
            boson = math.sqrt(math.factorial(j) * math.factorial(k))
            term = amp * coeff * boson * scale
            if abs(term) < 1e-15:
                continue
            out[(j, k)] = out.get((j, k), 0j) + term
    cleaned = {occ: a for occ, a in out.items() if abs(a) >= 1e-15}
    return FockModeState(out_modes, cleaned)
