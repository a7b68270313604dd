"""Sparse labeled state vectors over small tensor products of named subsystems.

A state is a finite map from basis labels to complex amplitudes.  Labels
address every declared subsystem by name, except the distinguished GAMMA
label which marks the annihilation channel and is orthogonal to every
product label.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

# Amplitudes below this modulus carry no physical information at double
# precision and may be dropped without moving any probability by > 1e-12.
PRUNE_THRESHOLD = 1e-15
NORM_TOLERANCE = 1e-12


class StructureError(ValueError):
    """Labels, subsystem names, or layouts do not line up."""


@dataclass(frozen=True)
class Subsystem:
    """A named degree of freedom with a fixed, ordered level alphabet."""

    name: str
    levels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.levels:
            raise StructureError(f"subsystem {self.name!r} has an empty alphabet")
        if len(set(self.levels)) != len(self.levels):
            raise StructureError(f"subsystem {self.name!r} repeats a level name")

    def index(self, level: str) -> int:
        try:
            return self.levels.index(level)
        except ValueError:
            raise StructureError(
                f"level {level!r} not in alphabet of subsystem {self.name!r}"
            ) from None


@dataclass(frozen=True)
class Structure:
    """Ordered collection of subsystems defining a product basis."""

    subsystems: tuple[Subsystem, ...]

    def __post_init__(self) -> None:
        names = [s.name for s in self.subsystems]
        if len(set(names)) != len(names):
            raise StructureError("subsystem names must be unique")

    @classmethod
    def of(cls, *specs: tuple[str, Iterable[str]]) -> Structure:
        return cls(tuple(Subsystem(name, tuple(levels)) for name, levels in specs))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.subsystems)

    def subsystem(self, name: str) -> Subsystem:
        for s in self.subsystems:
            if s.name == name:
                return s
        raise StructureError(f"unknown subsystem {name!r}")

    def label(self, *levels: str) -> BasisLabel:
        """Product label from one level per subsystem, in declaration order."""
        if len(levels) != len(self.subsystems):
            raise StructureError(
                f"expected {len(self.subsystems)} levels, got {len(levels)}"
            )
        for sub, level in zip(self.subsystems, levels):
            sub.index(level)
        return BasisLabel(tuple(zip(self.names, levels)))

    def product_labels(self) -> Iterator[BasisLabel]:
        """All product labels in canonical (alphabet-index) order."""

        def rec(i: int, acc: tuple[tuple[str, str], ...]) -> Iterator[BasisLabel]:
            if i == len(self.subsystems):
                yield BasisLabel(acc)
                return
            sub = self.subsystems[i]
            for level in sub.levels:
                yield from rec(i + 1, acc + ((sub.name, level),))

        return rec(0, ())

    def replace(self, name: str, levels: Iterable[str]) -> Structure:
        self.subsystem(name)
        return Structure(
            tuple(
                Subsystem(s.name, tuple(levels)) if s.name == name else s
                for s in self.subsystems
            )
        )

    def drop(self, names: Iterable[str]) -> Structure:
        gone = set(names)
        return Structure(tuple(s for s in self.subsystems if s.name not in gone))

    def concat(self, other: Structure) -> Structure:
        if set(self.names) & set(other.names):
            raise StructureError("subsystem names collide in tensor product")
        return Structure(self.subsystems + other.subsystems)

    def validate_label(self, label: BasisLabel) -> None:
        if label.is_gamma:
            return
        if tuple(name for name, _ in label.pairs) != self.names:
            raise StructureError(f"label {label} does not address {self.names}")
        for (name, level), sub in zip(label.pairs, self.subsystems):
            sub.index(level)

    def sort_key(self, label: BasisLabel) -> tuple:
        # GAMMA sorts first; product labels follow alphabet declaration order.
        if label.is_gamma:
            return (0,)
        return (1,) + tuple(
            sub.index(level) for (_, level), sub in zip(label.pairs, self.subsystems)
        )


@dataclass(frozen=True)
class BasisLabel:
    """One basis element: a level assignment per subsystem, or GAMMA."""

    pairs: tuple[tuple[str, str], ...]
    is_gamma: bool = False

    def level(self, name: str) -> str:
        for n, level in self.pairs:
            if n == name:
                return level
        raise StructureError(f"label {self} does not address subsystem {name!r}")

    def with_level(self, name: str, level: str) -> BasisLabel:
        return BasisLabel(
            tuple((n, level if n == name else lv) for n, lv in self.pairs)
        )

    def drop(self, names: Iterable[str]) -> BasisLabel:
        gone = set(names)
        return BasisLabel(tuple(p for p in self.pairs if p[0] not in gone))

    def __str__(self) -> str:
        if self.is_gamma:
            return "gamma"
        return " ".join(f"{level}{name}" for name, level in self.pairs)


GAMMA = BasisLabel((), is_gamma=True)


@dataclass(frozen=True)
class StateVector:
    """Finite complex amplitude map over one structure's basis.

    The ``normalized`` flag is derived at construction: true iff the
    squared norm is within 1e-12 of one.  Amplitudes are stored in
    canonical label order so iteration is deterministic.
    """

    structure: Structure
    amplitudes: dict[BasisLabel, complex]
    normalized: bool = field(init=False)

    def __post_init__(self) -> None:
        for label in self.amplitudes:
            self.structure.validate_label(label)
        ordered = dict(
            sorted(
                ((lab, complex(amp)) for lab, amp in self.amplitudes.items()),
                key=lambda kv: self.structure.sort_key(kv[0]),
            )
        )
        object.__setattr__(self, "amplitudes", ordered)
        object.__setattr__(
            self, "normalized", abs(self.norm_sq() - 1.0) <= NORM_TOLERANCE
        )

    def norm_sq(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes.values())

    def amplitude(self, label: BasisLabel) -> complex:
        return self.amplitudes.get(label, 0j)

    def items(self) -> Iterator[tuple[BasisLabel, complex]]:
        return iter(self.amplitudes.items())

    def prune(self, threshold: float = PRUNE_THRESHOLD) -> StateVector:
        return StateVector(
            self.structure,
            {lab: a for lab, a in self.amplitudes.items() if abs(a) >= threshold},
        )

    def scaled(self, factor: complex) -> StateVector:
        return StateVector(
            self.structure, {lab: factor * a for lab, a in self.amplitudes.items()}
        )

    def renormalized(self) -> StateVector:
        n = self.norm_sq()
        if n <= PRUNE_THRESHOLD:
            raise StructureError("cannot renormalize a state of vanishing norm")
        return self.scaled(1.0 / cmath.sqrt(n))

    def __str__(self) -> str:
        terms = ", ".join(f"|{lab}> {amp:.6g}" for lab, amp in self.items())
        return f"StateVector({terms})"


@dataclass(frozen=True)
class Subnormalized:
    """A conditioned state together with the probability weight of its branch."""

    state: StateVector
    weight: float

    def __post_init__(self) -> None:
        if abs(self.weight - self.state.norm_sq()) > NORM_TOLERANCE:
            raise StructureError(
                "weight must equal the squared norm of the carried state"
            )

    @classmethod
    def of(cls, state: StateVector) -> Subnormalized:
        return cls(state, state.norm_sq())


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Tensor product; subsystem names must be disjoint and GAMMA-free."""
    for s in (a, b):
        if any(lab.is_gamma for lab in s.amplitudes):
            raise StructureError("tensor factors must not contain GAMMA")
    structure = a.structure.concat(b.structure)
    out: dict[BasisLabel, complex] = {}
    for la, aa in a.items():
        for lb, ab in b.items():
            out[BasisLabel(la.pairs + lb.pairs)] = aa * ab
    return StateVector(structure, out)


def inner(bra: StateVector, ket: StateVector) -> complex:
    """<bra|ket> over shared labels (GAMMA included when both carry it)."""
    if bra.structure != ket.structure:
        raise StructureError("inner product requires identical structures")
    acc = 0j
    for label, amp in ket.items():
        ba = bra.amplitudes.get(label)
        if ba is not None:
            acc += ba.conjugate() * amp
    return acc


def condition(state: StateVector, outcome: Mapping[str, str]) -> Subnormalized:
    """Project onto a partial level assignment and drop the addressed subsystems.

    The weight of the result is the outcome probability (for a normalized
    input).  GAMMA survives only the empty assignment: an annihilated pair
    never reaches a detector.
    """
    for name, level in outcome.items():
        state.structure.subsystem(name).index(level)
    kept: dict[BasisLabel, complex] = {}
    for label, amp in state.items():
        if label.is_gamma:
            if outcome:
                continue
            kept[label] = amp
            continue
        if all(label.level(n) == lv for n, lv in outcome.items()):
            kept[label.drop(outcome)] = amp
    reduced = StateVector(state.structure.drop(outcome), kept)
    return Subnormalized.of(reduced)


def equal_up_to_global_phase(
    a: StateVector, b: StateVector, tol: float = 1e-9
) -> bool:
    """True iff |<a|b>| >= 1 - tol.  Both states must be normalized."""
    if a.structure != b.structure:
        raise StructureError("comparison requires identical structures")
    if not (a.normalized and b.normalized):
        raise ValueError("global-phase comparison is defined for normalized states")
    return abs(inner(a, b)) >= 1.0 - tol
