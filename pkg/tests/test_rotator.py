import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.control.errors import InvalidOperation
from src.control.group import (
    PI,
    SHIFT_DOWN,
    SHIFT_UP,
    ControlSequence,
    Pair,
    PairAt,
    expand_derived,
)
from src.control.rotator import (
    Kick,
    ResonantPair,
    compile_pulses,
    expand_pulses,
    level_energy,
    transition_frequency,
)
from src.control.sampling import random_sequence, random_state, random_unitary
from src.control.state_space import apply_sequence, distance

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.mark.parametrize("k,energy", [(0, 0.0), (1, 1.0), (-1, 1.0), (3, 9.0)])
def test_level_energy(k, energy):
    assert level_energy(k) == energy


@pytest.mark.parametrize("n,frequency", [(0, 1.0), (2, 5.0), (-1, 1.0), (-3, 5.0)])
def test_transition_frequency(n, frequency):
    assert transition_frequency(n) == frequency
    assert transition_frequency(n) == abs(level_energy(n + 1) - level_energy(n))


def test_single_pi_block():
    (pulse,) = compile_pulses(ControlSequence((Pair(PI),))).pulses
    assert isinstance(pulse, ResonantPair)
    assert pulse.pair_index == 0 and pulse.frequency == 1.0
    assert pulse.angles[2] == pytest.approx(math.pi)


def test_single_kick():
    assert compile_pulses(ControlSequence((SHIFT_UP,))).pulses == (Kick(1),)
    assert compile_pulses(ControlSequence((SHIFT_DOWN,))).pulses == (Kick(-1),)


def test_conjugated_block_folds_to_one_pulse():
    u = random_unitary(np.random.default_rng(9))
    for strategy in ("peephole", "frame"):
        (pulse,) = compile_pulses(expand_derived(PairAt(3, u)), strategy).pulses
        assert pulse.pair_index == 3 and pulse.frequency == 7.0
        assert np.max(np.abs(pulse.unitary().matrix() - u.matrix())) <= 1e-12


def test_mirrored_pattern_targets_negative_pair():
    seq = ControlSequence((SHIFT_UP, SHIFT_UP, Pair(PI), SHIFT_DOWN, SHIFT_DOWN))
    (pulse,) = compile_pulses(seq).pulses
    assert pulse.pair_index == -2 and pulse.frequency == 3.0


def test_unmatched_kicks_stay_in_place():
    seq = ControlSequence((SHIFT_DOWN, SHIFT_DOWN, Pair(PI), SHIFT_UP, SHIFT_UP, SHIFT_UP))
    pulses = compile_pulses(seq).pulses
    assert [type(p) for p in pulses] == [ResonantPair, Kick]
    assert pulses[0].pair_index == 2 and pulses[1] == Kick(1)


def test_frame_strategy_moves_net_kicks_to_the_end():
    seq = ControlSequence((SHIFT_UP, Pair(PI), SHIFT_UP, SHIFT_UP, Pair(PI)))
    schedule = compile_pulses(seq, "frame")
    assert [p.pair_index for p in schedule if isinstance(p, ResonantPair)] == [-1, -3]
    assert schedule.pulses[2:] == (Kick(1), Kick(1), Kick(1))


def test_frequency_collisions_flag_degenerate_pairs():
    u = random_unitary(np.random.default_rng(1))
    seq = expand_derived(PairAt(0, u)) + expand_derived(PairAt(-1, u)) + expand_derived(
        PairAt(2, u)
    )
    schedule = compile_pulses(seq)
    assert schedule.frequency_collisions == {1.0: (-1, 0)}


def test_unknown_strategy():
    with pytest.raises(InvalidOperation):
        compile_pulses(ControlSequence(), "greedy")


def test_pulse_validation():
    with pytest.raises(InvalidOperation):
        Kick(2)
    with pytest.raises(InvalidOperation):
        ResonantPair(0, (0.0, 0.0, 4.0, 0.0))
    with pytest.raises(InvalidOperation):
        ResonantPair(0, (0.0, 0.0, 0.0))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=200), st.sampled_from(["peephole", "frame"]))
def test_compilation_is_sound(seed, length, strategy):
    rng = np.random.default_rng(seed)
    seq = random_sequence(rng, length)
    schedule = compile_pulses(seq, strategy)
    assert len(schedule) <= len(seq)
    assert schedule.kick_count <= seq.kick_count
    for pulse in schedule:
        if isinstance(pulse, ResonantPair):
            assert pulse.frequency == abs(2 * pulse.pair_index + 1)
    rebuilt = expand_pulses(schedule)
    for _ in range(5):
        probe = random_state(rng, 3)
        assert distance(apply_sequence(probe, seq), apply_sequence(probe, rebuilt)) <= 1e-10
