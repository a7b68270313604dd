"""End-to-end experiment configurations built from the optical elements.

Covers the two-particle interferometer runs, the counterfactual logic
argument over their outcomes, the four-photon swap that prepares the
photonic analogue, and the weak-value readout of the prepared pair.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .optics import (
    DEFAULT_CONVENTION,
    FockModeState,
    adjoint_level_map,
    apply_annihilation,
    apply_first_beamsplitter,
    apply_level_map,
    apply_pbs,
    apply_polarization_rotation,
    apply_second_beamsplitter,
    hom_combine,
    interferometer_structure,
    photon_pair_structure,
    split_pbs_level,
    ARM_LEVELS,
    PORT_LEVELS,
)
from .states import (
    GAMMA,
    BasisLabel,
    StateVector,
    Structure,
    Subnormalized,
    inner,
    tensor,
)
from .weakvalues import (
    POLARIZATION_TO_PATH,
    ProjectorWeakValue,
    WeakValueReport,
    arrival_time_operator,
    occupation_operator,
    projector_weak_decomposition,
    weak_value,
)

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

HARDY_OUTCOMES = ("gamma", "c+c-", "c+d-", "d+c-", "d+d-")
PORT_PAIRS = {
    "c+c-": ("c", "c"),
    "c+d-": ("c", "d"),
    "d+c-": ("d", "c"),
    "d+d-": ("d", "d"),
}

PHOTON_TO_PARTICLE = {"2": "+", "4": "-"}

# Combiner-input phase trims (radians) that rotate the three surviving
# swap branches onto a common phase; see run_entanglement_swap.
DEFAULT_SWAP_CALIBRATION = (0.0, -math.pi / 2.0)

SWAP_BRANCH_BOTH_DETECTED = "two_photon_click"
SWAP_BRANCH_V1 = "stray_v1"
SWAP_BRANCH_V3 = "stray_v3"


@dataclass(frozen=True)
class HardyConfig:
    """Which exit beamsplitter is installed on each interferometer."""

    bs2_positron_present: bool = True
    bs2_electron_present: bool = True


@dataclass(frozen=True)
class HardyResult:
    state: StateVector
    probabilities: dict[str, float]


def run_hardy_gedanken(config: HardyConfig = HardyConfig()) -> HardyResult:
    """Propagate the pair through both interferometers and tabulate ports."""
    sv = StateVector(
        interferometer_structure(),
        {interferometer_structure().label("in", "in"): 1.0},
    )
    sv = apply_first_beamsplitter(sv, "+")
    sv = apply_first_beamsplitter(sv, "-")
    sv = apply_annihilation(sv)
    sv = apply_second_beamsplitter(sv, "+", config.bs2_positron_present)
    sv = apply_second_beamsplitter(sv, "-", config.bs2_electron_present)
    probabilities = {"gamma": abs(sv.amplitude(GAMMA)) ** 2}
    for name, levels in PORT_PAIRS.items():
        probabilities[name] = abs(sv.amplitude(sv.structure.label(*levels))) ** 2
    return HardyResult(sv, probabilities)


@dataclass(frozen=True)
class CounterfactualAssignment:
    """Truth values for the four counterfactual detector propositions.

    c_plus / c_minus: the bright port would fire with that particle's
    exit splitter removed, i.e. the particle took the overlapping arm.
    d_plus / d_minus: the dark port fires with the splitter installed.
    """

    c_plus: bool
    c_minus: bool
    d_plus: bool
    d_minus: bool


CONSTRAINTS: tuple[tuple[str, Callable[[CounterfactualAssignment], bool]], ...] = (
    ("never-both-in-overlap", lambda a: not (a.c_plus and a.c_minus)),
    ("dark-plus-needs-minus-in-overlap", lambda a: (not a.d_plus) or a.c_minus),
    ("dark-minus-needs-plus-in-overlap", lambda a: (not a.d_minus) or a.c_plus),
    ("joint-dark-click", lambda a: a.d_plus and a.d_minus),
)

CONSTRAINT_NAMES = tuple(name for name, _ in CONSTRAINTS)


@dataclass(frozen=True)
class CounterfactualReport:
    constraints: tuple[str, ...]
    assignments: tuple[tuple[CounterfactualAssignment, tuple[str, ...]], ...]
    satisfying: tuple[CounterfactualAssignment, ...]


def counterfactual_check(
    include: Sequence[str] | None = None,
) -> CounterfactualReport:
    """Evaluate all sixteen assignments against the detector constraints.

    ``include`` restricts the active constraint set by name, e.g. to ask
    how much room is left once the observed joint dark click is dropped.
    """
    active = CONSTRAINTS if include is None else tuple(
        (name, pred) for name, pred in CONSTRAINTS if name in include
    )
    if include is not None and len(active) != len(include):
        unknown = set(include) - set(CONSTRAINT_NAMES)
        raise ValueError(f"unknown constraint names: {sorted(unknown)}")
    rows = []
    satisfying = []
    for bits in itertools.product((False, True), repeat=4):
        assignment = CounterfactualAssignment(*bits)
        failed = tuple(name for name, pred in active if not pred(assignment))
        rows.append((assignment, failed))
        if not failed:
            satisfying.append(assignment)
    return CounterfactualReport(
        tuple(name for name, _ in active), tuple(rows), tuple(satisfying)
    )


def bell_pair(first: str, second: str) -> StateVector:
    s = Structure.of((first, ("H", "V")), (second, ("H", "V")))
    a = 1.0 / SQRT2
    return StateVector(s, {s.label("H", "H"): a, s.label("V", "V"): a})


@dataclass(frozen=True)
class SwapResult:
    """Post-selected photon pair left by the swap, per coherence branch.

    Branch weights always add up to the success probability.  Coherent
    mode carries a single merged branch; decohered mode keeps branches
    with distinguishable environments apart and only their weights are
    comparable to experiment.
    """

    mode: str
    branches: tuple[tuple[str, Subnormalized], ...]
    success_probability: float

    def conditional_state(self) -> StateVector:
        if len(self.branches) != 1:
            raise ValueError("conditional state is defined for a single branch")
        return self.branches[0][1].state.renormalized()

    def fidelity_to(self, target: StateVector) -> float:
        return abs(inner(target, self.conditional_state())) ** 2


def run_entanglement_swap(
    mode: str = "coherent",
    phase_calibration: Sequence[float] = DEFAULT_SWAP_CALIBRATION,
) -> SwapResult:
    """Swap entanglement onto photons 2 and 4 by combining 1 and 3.

    Photons 1 and 3 pass polarizing splitters whose transmitted (H) modes
    meet on a balanced combiner; a bucket detector behind one output
    heralds success when it sees light and the other output stays dark.
    The V modes leave undetected, which is exactly why the three
    surviving branches live in distinguishable environments: ``mode``
    chooses whether to idealize them as coherent anyway.
    """
    if mode not in ("coherent", "decohered"):
        raise ValueError(f"unknown swap mode {mode!r}")
    if len(phase_calibration) != 2:
        raise ValueError("phase calibration needs one entry per combiner input")
    phase_a, phase_b = (cmath.exp(1j * p) for p in phase_calibration)
    four = tensor(bell_pair("1", "2"), bell_pair("3", "4"))
    four = apply_pbs(four, "1")
    four = apply_pbs(four, "3")
    pair = photon_pair_structure()
    branch_amps: dict[str, dict[BasisLabel, complex]] = {}
    for label, amp in four.items():
        pol1, _ = split_pbs_level(label.level("1"))
        pol3, _ = split_pbs_level(label.level("3"))
        n_a = 1 if pol1 == "H" else 0
        n_b = 1 if pol3 == "H" else 0
        trimmed = amp * (phase_a**n_a) * (phase_b**n_b)
        combined = hom_combine(
            FockModeState(("a", "b"), {(n_a, n_b): 1.0}),
            out_modes=("detector", "idle"),
        )
        pair_label = pair.label(label.level("2"), label.level("4"))
        for (n_det, n_idle), route in combined.amplitudes.items():
            if n_det < 1 or n_idle != 0:
                continue
            if pol1 == "V":
                env = SWAP_BRANCH_V1
            elif pol3 == "V":
                env = SWAP_BRANCH_V3
            else:
                env = SWAP_BRANCH_BOTH_DETECTED
            bucket = branch_amps.setdefault(env, {})
            bucket[pair_label] = bucket.get(pair_label, 0j) + trimmed * route
    if mode == "coherent":
        merged: dict[BasisLabel, complex] = {}
        for bucket in branch_amps.values():
            for lab, a in bucket.items():
                merged[lab] = merged.get(lab, 0j) + a
        branches = (("merged", Subnormalized.of(StateVector(pair, merged).prune())),)
    else:
        branches = tuple(
            (env, Subnormalized.of(StateVector(pair, bucket).prune()))
            for env, bucket in sorted(branch_amps.items())
        )
    success = sum(sub.weight for _, sub in branches)
    return SwapResult(mode, branches, success)


def entangled_target_state() -> StateVector:
    """The pair the calibrated swap is meant to leave behind."""
    s = photon_pair_structure()
    a = 1.0 / SQRT3
    return StateVector(
        s,
        {s.label("H", "H"): a, s.label("H", "V"): a, s.label("V", "H"): a},
    )


def analyzer_post_selection(phi: float = -math.pi / 4.0) -> StateVector:
    """Both photons detected in H behind analyzers rotated by phi.

    Built by dragging the detection ket backwards through the rotation,
    so the result is the product of cos(phi)|H> + sin(phi)|V> per photon.
    """
    s = photon_pair_structure()
    sv = StateVector(s, {s.label("H", "H"): 1.0})
    sv = apply_polarization_rotation(sv, "2", -phi)
    sv = apply_polarization_rotation(sv, "4", -phi)
    return sv


def surviving_paths_state() -> StateVector:
    """Equal-weight pre-selection on the three non-annihilating arm pairs."""
    s = interferometer_structure()
    sv = StateVector(s, {s.label("in", "in"): 1.0})
    sv = apply_first_beamsplitter(sv, "+")
    sv = apply_first_beamsplitter(sv, "-")
    sv = apply_annihilation(sv)
    survivors = {
        lab: amp for lab, amp in sv.items() if not lab.is_gamma
    }
    return StateVector(sv.structure, survivors).renormalized()


def dark_port_coincidence_state() -> StateVector:
    """Joint dark-port detection pulled back through both exit splitters."""
    ports = Structure.of(("+", PORT_LEVELS), ("-", PORT_LEVELS))
    sv = StateVector(ports, {ports.label("d", "d"): 1.0})
    adj = adjoint_level_map(DEFAULT_CONVENTION.exit_map(True))
    sv = apply_level_map(sv, "+", adj, ARM_LEVELS)
    sv = apply_level_map(sv, "-", adj, ARM_LEVELS)
    return sv


@dataclass(frozen=True)
class OccupationRow:
    """One occupation weak value in both vocabularies."""

    photonic: str
    path: str
    value: complex


@dataclass(frozen=True)
class PhotonicWeakReport:
    gamma: float
    epsilon: float
    pre: StateVector
    post: StateVector
    overlap: complex
    success_probability: float
    photon2: WeakValueReport
    photon4: WeakValueReport
    joint: WeakValueReport
    decomposition: tuple[ProjectorWeakValue, ...]
    occupations: tuple[OccupationRow, ...]


def _occupation_rows(pre: StateVector, post: StateVector) -> tuple[OccupationRow, ...]:
    s = pre.structure
    rows = []
    singles = [
        {"2": "V"}, {"4": "V"}, {"2": "H"}, {"4": "H"},
    ]
    joints = [
        {"2": "V", "4": "V"}, {"2": "V", "4": "H"},
        {"2": "H", "4": "V"}, {"2": "H", "4": "H"},
    ]
    for assignment in singles + joints:
        report = weak_value(occupation_operator(s, assignment), pre, post)
        photonic = " ".join(f"{lv}{ph}" for ph, lv in assignment.items())
        path = " ".join(
            f"{POLARIZATION_TO_PATH[lv]}{PHOTON_TO_PARTICLE[ph]}"
            for ph, lv in assignment.items()
        )
        rows.append(OccupationRow(photonic, path, report.scalar))
    return tuple(rows)


def run_photonic_weak(gamma: float = 0.0, epsilon: float = 1.0) -> PhotonicWeakReport:
    """Weak arrival-time readout of the swapped pair at the standard analyzers."""
    pre = run_entanglement_swap("coherent").conditional_state()
    post = analyzer_post_selection()
    structure = pre.structure
    photon2 = weak_value(
        arrival_time_operator(structure, ("2",), gamma, epsilon), pre, post
    )
    photon4 = weak_value(
        arrival_time_operator(structure, ("4",), gamma, epsilon), pre, post
    )
    joint_op = arrival_time_operator(structure, ("2", "4"), gamma, epsilon)
    joint = weak_value(joint_op, pre, post)
    decomposition = projector_weak_decomposition(joint_op, pre, post)
    recombined = [0j, 0j]
    for row in decomposition:
        for i, w in enumerate(row.weight):
            recombined[i] += w * row.value
    for got, direct in zip(recombined, joint.value):
        if abs(got - direct) > 1e-12:
            raise RuntimeError("projector decomposition lost the operator identity")
    for component in joint.value:
        if abs(component - epsilon) > 1e-12:
            raise RuntimeError("joint arrival time drifted from the expected value")
    return PhotonicWeakReport(
        gamma=gamma,
        epsilon=epsilon,
        pre=pre,
        post=post,
        overlap=joint.overlap,
        success_probability=joint.success_probability,
        photon2=photon2,
        photon4=photon4,
        joint=joint,
        decomposition=decomposition,
        occupations=_occupation_rows(pre, post),
    )


@dataclass(frozen=True)
class RouteComparison:
    name: str
    literal: complex
    pipeline: complex


@dataclass(frozen=True)
class ConsistencyReport:
    overlap_literal: complex
    overlap_pipeline: complex
    annihilation_probability: float
    singles: tuple[RouteComparison, ...]
    joints: tuple[RouteComparison, ...]
    max_difference: float


EXPECTED_SINGLE_OCCUPATIONS = {
    "O-": 1.0, "O+": 1.0, "NO-": 0.0, "NO+": 0.0,
}
EXPECTED_JOINT_OCCUPATIONS = {
    "O+ O-": 0.0, "O+ NO-": 1.0, "NO+ O-": 1.0, "NO+ NO-": -1.0,
}


def verify_paper_states() -> ConsistencyReport:
    """Occupation weak values along two independently built routes.

    Route one uses the textbook pre/post pair written down directly;
    route two grows the pre-selection out of the entry splitters and
    annihilation and pulls the post-selection back from the dark ports.
    The two differ by branch phases yet must agree observable by
    observable.
    """
    s = Structure.of(("+", ARM_LEVELS), ("-", ARM_LEVELS))
    third = 1.0 / SQRT3
    pre_a = StateVector(
        s,
        {
            s.label("O", "NO"): third,
            s.label("NO", "O"): third,
            s.label("NO", "NO"): third,
        },
    )
    post_a = StateVector(
        s,
        {
            s.label("NO", "NO"): 0.5,
            s.label("NO", "O"): -0.5,
            s.label("O", "NO"): -0.5,
            s.label("O", "O"): 0.5,
        },
    )
    entry = StateVector(
        interferometer_structure(),
        {interferometer_structure().label("in", "in"): 1.0},
    )
    split = apply_first_beamsplitter(apply_first_beamsplitter(entry, "+"), "-")
    absorbed = apply_annihilation(split)
    annihilation_probability = abs(absorbed.amplitude(GAMMA)) ** 2
    pre_b = StateVector(
        absorbed.structure,
        {lab: amp for lab, amp in absorbed.items() if not lab.is_gamma},
    ).renormalized()
    post_b = dark_port_coincidence_state()

    singles = []
    for name, want in EXPECTED_SINGLE_OCCUPATIONS.items():
        arm, particle = name[:-1], name[-1]
        op_a = occupation_operator(s, {particle: arm})
        op_b = occupation_operator(pre_b.structure, {particle: arm})
        row = RouteComparison(
            name,
            weak_value(op_a, pre_a, post_a).scalar,
            weak_value(op_b, pre_b, post_b).scalar,
        )
        singles.append(row)
        if abs(row.literal - want) > 1e-12:
            raise RuntimeError(f"single occupation {name} moved off {want}")
    joints = []
    for name, want in EXPECTED_JOINT_OCCUPATIONS.items():
        plus_part, minus_part = name.split()
        assignment = {"+": plus_part[:-1], "-": minus_part[:-1]}
        op_a = occupation_operator(s, assignment)
        op_b = occupation_operator(pre_b.structure, assignment)
        row = RouteComparison(
            name,
            weak_value(op_a, pre_a, post_a).scalar,
            weak_value(op_b, pre_b, post_b).scalar,
        )
        joints.append(row)
        if abs(row.literal - want) > 1e-12:
            raise RuntimeError(f"joint occupation {name} moved off {want}")
    max_difference = max(
        abs(row.literal - row.pipeline) for row in singles + joints
    )
    if max_difference > 1e-12:
        raise RuntimeError("the two routes disagree beyond tolerance")
    return ConsistencyReport(
        overlap_literal=inner(post_a, pre_a),
        overlap_pipeline=inner(post_b, pre_b),
        annihilation_probability=annihilation_probability,
        singles=tuple(singles),
        joints=tuple(joints),
        max_difference=max_difference,
    )
