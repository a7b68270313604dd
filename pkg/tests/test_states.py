import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    PRE_POST_OVERLAP,
    arm_structure,
    dark_coincidence_literal,
    expected_final_state,
    photon_structure,
    state_of,
    surviving_paths_literal,
)
from hardyweak.states import (
    GAMMA,
    StateVector,
    StructureError,
    Structure,
    Subnormalized,
    condition,
    equal_up_to_global_phase,
    inner,
    tensor,
)

finite = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)
coeff_pairs = st.tuples(finite, finite)


def _state_from(structure, coeffs, normalize=False):
    labels = list(structure.product_labels())
    amps = {lab: complex(re, im) for lab, (re, im) in zip(labels, coeffs)}
    sv = StateVector(structure, amps)
    if normalize:
        sv = sv.renormalized()
    return sv


def _nontrivial(coeffs):
    return sum(re * re + im * im for re, im in coeffs) > 1e-6


class TestTensor:
    def test_product_of_basis_kets(self):
        two = Structure.of(("2", ("H", "V")))
        four = Structure.of(("4", ("H", "V")))
        h2 = StateVector(two, {two.label("H"): 1.0})
        v4 = StateVector(four, {four.label("V"): 1.0})
        prod = tensor(h2, v4)
        assert prod.structure == photon_structure()
        assert prod.amplitude(prod.structure.label("H", "V")) == 1.0 + 0j
        assert prod.normalized

    def test_two_bell_pairs(self):
        def bell(a, b):
            s = Structure.of((a, ("H", "V")), (b, ("H", "V")))
            return state_of(s, {("H", "H"): 1 / math.sqrt(2), ("V", "V"): 1 / math.sqrt(2)})

        four = tensor(bell("1", "2"), bell("3", "4"))
        assert four.normalized
        expected = {
            ("H", "H", "H", "H"),
            ("V", "V", "H", "H"),
            ("H", "H", "V", "V"),
            ("V", "V", "V", "V"),
        }
        assert set(four.amplitudes) == {four.structure.label(*k) for k in expected}
        for amp in four.amplitudes.values():
            assert abs(amp - 0.5) < 1e-12

    @given(st.lists(coeff_pairs, min_size=2, max_size=2), st.lists(coeff_pairs, min_size=2, max_size=2))
    @settings(max_examples=60, deadline=None)
    def test_norm_multiplicative(self, ca, cb):
        a = _state_from(Structure.of(("x", ("0", "1"))), ca)
        b = _state_from(Structure.of(("y", ("0", "1"))), cb)
        assert abs(tensor(a, b).norm_sq() - a.norm_sq() * b.norm_sq()) < 1e-12

    def test_associativity(self):
        xs = [Structure.of((n, ("0", "1"))) for n in "abc"]
        states = [
            _state_from(s, [(0.3 + 0.1 * i, -0.2), (0.5, 0.4 * i)]) for i, s in enumerate(xs)
        ]
        left = tensor(tensor(states[0], states[1]), states[2])
        right = tensor(states[0], tensor(states[1], states[2]))
        assert left.structure == right.structure
        assert set(left.amplitudes) == set(right.amplitudes)
        for lab, amp in left.items():
            assert abs(amp - right.amplitude(lab)) < 1e-15

    def test_rejects_shared_subsystem_names(self):
        s = Structure.of(("x", ("0", "1")))
        a = StateVector(s, {s.label("0"): 1.0})
        with pytest.raises(StructureError):
            tensor(a, a)

    def test_rejects_gamma_factor(self):
        s = Structure.of(("x", ("0", "1")))
        g = StateVector(s, {GAMMA: 1.0})
        other = StateVector(Structure.of(("y", ("0", "1"))), {})
        with pytest.raises(StructureError):
            tensor(g, other)


class TestInner:
    def test_pre_post_overlap_frozen_value(self):
        got = inner(dark_coincidence_literal(), surviving_paths_literal())
        assert abs(got - PRE_POST_OVERLAP) < 1e-12
        assert abs(got.imag) < 1e-15

    def test_self_inner_is_one(self):
        pre = surviving_paths_literal()
        assert abs(inner(pre, pre) - 1.0) < 1e-12

    def test_gamma_contributes_when_shared(self):
        s = arm_structure()
        a = state_of(s, {None: 0.6, ("O", "O"): 0.8})
        b = state_of(s, {None: 1.0})
        assert abs(inner(b, a) - 0.6) < 1e-15

    @given(st.lists(coeff_pairs, min_size=4, max_size=4), st.lists(coeff_pairs, min_size=4, max_size=4))
    @settings(max_examples=60, deadline=None)
    def test_conjugate_symmetry(self, ca, cb):
        s = arm_structure()
        a = _state_from(s, ca)
        b = _state_from(s, cb)
        assert abs(inner(a, b) - inner(b, a).conjugate()) < 1e-12

    def test_structure_mismatch_raises(self):
        with pytest.raises(StructureError):
            inner(surviving_paths_literal(), StateVector(photon_structure(), {}))


class TestCondition:
    def test_dark_port_coincidence_weight(self):
        final = expected_final_state(True, True)
        got = condition(final, {"+": "d", "-": "d"})
        assert abs(got.weight - 1.0 / 16.0) < 1e-12
        # fully addressed: nothing left to label but the empty tuple
        assert got.state.structure.subsystems == ()

    def test_bright_coincidence_vanishes_without_exit_splitters(self):
        final = expected_final_state(False, False)
        got = condition(final, {"+": "c", "-": "c"})
        assert got.weight < 1e-12

    def test_empty_assignment_is_identity(self):
        pre = surviving_paths_literal()
        got = condition(pre, {})
        assert abs(got.weight - 1.0) < 1e-12
        assert got.state.amplitudes == pre.amplitudes

    def test_partial_assignment_reduces_structure(self):
        final = expected_final_state(True, True)
        got = condition(final, {"+": "d"})
        assert got.state.structure.names == ("-",)
        # remaining amplitudes are the d+ row: i/4 on c-, -1/4 on d-
        assert abs(got.state.amplitude(got.state.structure.label("c")) - 0.25j) < 1e-12
        assert abs(got.weight - 2.0 / 16.0) < 1e-12

    def test_gamma_dropped_by_any_real_outcome(self):
        final = expected_final_state(True, True)
        got = condition(final, {"+": "c"})
        assert all(not lab.is_gamma for lab in got.state.amplitudes)

    @given(st.lists(coeff_pairs, min_size=4, max_size=4).filter(_nontrivial))
    @settings(max_examples=60, deadline=None)
    def test_outcome_weights_sum_to_one(self, coeffs):
        s = arm_structure()
        sv = _state_from(s, coeffs, normalize=True)
        total = 0.0
        for plus in ("O", "NO"):
            for minus in ("O", "NO"):
                total += condition(sv, {"+": plus, "-": minus}).weight
        assert abs(total - 1.0) < 1e-12

    def test_gamma_weight_completes_the_distribution(self):
        final = expected_final_state(True, True)
        total = sum(
            condition(final, {"+": p, "-": m}).weight
            for p in ("c", "d")
            for m in ("c", "d")
        )
        p_gamma = abs(final.amplitude(GAMMA)) ** 2
        assert abs(total + p_gamma - 1.0) < 1e-12

    def test_unknown_level_raises(self):
        with pytest.raises(StructureError):
            condition(surviving_paths_literal(), {"+": "q"})


class TestGlobalPhaseAndPruning:
    def test_phase_rotated_state_matches(self):
        pre = surviving_paths_literal()
        rotated = pre.scaled(complex(math.cos(1.234), math.sin(1.234)))
        assert equal_up_to_global_phase(pre, rotated)

    def test_distinct_states_do_not_match(self):
        assert not equal_up_to_global_phase(
            surviving_paths_literal(), dark_coincidence_literal()
        )

    def test_requires_normalized_inputs(self):
        pre = surviving_paths_literal()
        with pytest.raises(ValueError):
            equal_up_to_global_phase(pre, pre.scaled(0.5))

    def test_prune_leaves_reported_numbers_alone(self):
        s = arm_structure()
        dirty = state_of(
            s,
            {
                ("O", "NO"): 1 / math.sqrt(2),
                ("NO", "O"): 1 / math.sqrt(2),
                ("NO", "NO"): 3e-16,
                ("O", "O"): -4e-16j,
            },
        )
        clean = dirty.prune()
        assert len(clean.amplitudes) == 2
        for p in ("O", "NO"):
            for m in ("O", "NO"):
                dw = condition(dirty, {"+": p, "-": m}).weight
                cw = condition(clean, {"+": p, "-": m}).weight
                assert abs(dw - cw) < 1e-12
        probe = surviving_paths_literal()
        assert abs(inner(probe, dirty) - inner(probe, clean)) < 1e-12

    def test_normalized_flag(self):
        s = Structure.of(("x", ("0", "1")))
        good = StateVector(s, {s.label("0"): 1.0})
        assert good.normalized
        off = StateVector(s, {s.label("0"): 1.0 + 1e-5})
        assert not off.normalized

    def test_subnormalized_weight_checked(self):
        s = Structure.of(("x", ("0", "1")))
        sv = StateVector(s, {s.label("0"): 0.5})
        with pytest.raises(StructureError):
            Subnormalized(sv, 0.9)
        assert abs(Subnormalized.of(sv).weight - 0.25) < 1e-15

    def test_canonical_iteration_order(self):
        final = expected_final_state(True, True)
        names = [str(lab) for lab in final.amplitudes]
        assert names == ["gamma", "c+ c-", "c+ d-", "d+ c-", "d+ d-"]
