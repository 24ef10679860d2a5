"""Witness cut sets separating ℓ-good (k+1)-colour graphs from k-colour ones."""
from __future__ import annotations

import pytest

from rainbowthreshold.core_model import RainbowSequence, has_all_colors, separates_all_colors, seq_to_graph
from rainbowthreshold.equivalence import certify_not_k_rainbow
from rainbowthreshold.errors import HypothesisViolationError, InvalidSequenceError
from rainbowthreshold.goodness import is_ell_good_seq
from rainbowthreshold.witness import build_witness_set, cycling_sequence, witness_capacity


@pytest.fixture(scope="module")
def separating_sequence() -> RainbowSequence:
    return cycling_sequence(2, 384)


def test_witness_capacity() -> None:
    assert witness_capacity(2) == 48
    assert witness_capacity(3) == 3 * 8 * 11


def test_cycling_sequence_is_good_when_the_window_is_a_multiple() -> None:
    sequence = cycling_sequence(2, 64)

    assert sequence.codes()[:9] == (0, 1, 2, 3, 4, 5, 6, 7, 0)
    assert is_ell_good_seq(sequence, 8)
    assert is_ell_good_seq(sequence, 16)
    assert not is_ell_good_seq(sequence, 6)


def test_witness_for_the_two_colour_cycle(separating_sequence: RainbowSequence) -> None:
    witness = build_witness_set(separating_sequence, 8)

    assert witness.prefix == (8, 12)
    assert witness.suffix == (368, 369, 370, 371)
    assert len(witness.middle) == 21
    assert witness.middle[0] == 24 and witness.middle[-1] == 344
    assert witness.t == 27
    assert witness.bound == 29
    assert witness.outside_classes > witness.bound
    assert certify_not_k_rainbow(seq_to_graph(separating_sequence), witness.cut, 1)


def test_witness_choices_satisfy_the_colour_conditions(separating_sequence: RainbowSequence) -> None:
    witness = build_witness_set(separating_sequence, 8)

    assert has_all_colors(separating_sequence, witness.prefix)
    assert separates_all_colors(separating_sequence, witness.suffix)
    assert list(witness.cut) == sorted(witness.cut)


def test_witness_to_dict(separating_sequence: RainbowSequence) -> None:
    payload = build_witness_set(separating_sequence, 8).to_dict()

    assert payload["t"] == 27
    assert payload["class_bound"]["numerator"] == 29
    assert payload["certified"] is True
    assert payload["cut"][:2] == [8, 12]


@pytest.mark.acceptance
def test_witness_for_the_three_colour_cycle() -> None:
    ell = 24
    sequence = cycling_sequence(3, ell * witness_capacity(3))

    witness = build_witness_set(sequence, ell)

    assert witness.k == 2
    assert certify_not_k_rainbow(seq_to_graph(sequence), witness.cut, 2)


def test_sequence_that_is_not_good_is_rejected() -> None:
    sequence = RainbowSequence.from_codes(2, [0] * 384)

    with pytest.raises(HypothesisViolationError) as excinfo:
        build_witness_set(sequence, 8)

    assert excinfo.value.context["condition"] == "good"


def test_short_sequences_are_rejected() -> None:
    with pytest.raises(HypothesisViolationError) as excinfo:
        build_witness_set(cycling_sequence(2, 376), 8)

    assert excinfo.value.context == {"condition": "capacity", "windows": 47, "required": 48}


def test_one_colour_sequences_have_no_witness() -> None:
    with pytest.raises(InvalidSequenceError):
        build_witness_set(cycling_sequence(1, 64), 2)
