"""Unit tests for rainbow sequences and the sequence-to-graph construction."""
from __future__ import annotations

from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbowthreshold.core_model import (
    ColorSymbol,
    Graph,
    RainbowSequence,
    all_symbols,
    brute_force_similar,
    canonicalize_sequence,
    distinguishes_all_colors,
    embed_as_full_rainbow,
    has_all_colors,
    induced_subgraph,
    iter_all_sequences,
    permute_sequence,
    restrict_sequence,
    separates_all_colors,
    seq_to_graph,
    sequences_similar,
    threshold_bigraph_sequence,
    threshold_sequence,
    widen_palette,
)
from rainbowthreshold.errors import InvalidGraphError, InvalidSequenceError

from tests.strategies import graphs, sequences


def _path_sequence() -> RainbowSequence:
    return RainbowSequence.from_entries(2, [(0, []), (1, [0]), (0, [1])])


def test_seq_to_graph_single_edge() -> None:
    sequence = RainbowSequence.from_entries(1, [(0, []), (0, [0]), (0, [])])

    assert set(seq_to_graph(sequence).edges()) == {(0, 1)}


def test_seq_to_graph_path() -> None:
    assert set(seq_to_graph(_path_sequence()).edges()) == {(0, 1), (1, 2)}


@pytest.mark.parametrize("k, n", [(1, 4), (2, 5), (3, 3)])
def test_empty_and_full_colorsets_give_empty_and_complete_graphs(k: int, n: int) -> None:
    colors = tuple(i % k for i in range(n))
    empty = RainbowSequence(k, colors, (0,) * n)
    full = RainbowSequence(k, colors, ((1 << k) - 1,) * n)

    assert seq_to_graph(empty) == Graph.empty(n)
    assert seq_to_graph(full) == Graph.complete(n)


def test_sequence_rejects_colors_outside_the_palette() -> None:
    with pytest.raises(InvalidSequenceError) as excinfo:
        RainbowSequence(2, (0, 2), (0, 0))

    assert excinfo.value.context["position"] == 1


def test_sequence_rejects_colorsets_outside_the_palette() -> None:
    with pytest.raises(InvalidSequenceError):
        RainbowSequence(1, (0,), (2,))


def test_graph_rejects_asymmetric_rows() -> None:
    with pytest.raises(InvalidGraphError):
        Graph(2, (0b10, 0))


def test_graph_rejects_loops() -> None:
    with pytest.raises(InvalidGraphError):
        Graph.from_edges(2, [(1, 1)])


def test_symbol_encoding_is_color_major() -> None:
    symbols = all_symbols(2)

    assert len(symbols) == 8
    assert symbols[0] == ColorSymbol(0, 0)
    assert symbols[-1] == ColorSymbol(1, 3)
    assert all(ColorSymbol.decode(symbol.encode(2), 2) == symbol for symbol in symbols)


def test_restrict_sequence_examples() -> None:
    sequence = _path_sequence()

    assert restrict_sequence(sequence, range(3)) == sequence
    assert restrict_sequence(sequence, []).n == 0

    restricted = restrict_sequence(sequence, [0, 2])
    assert restricted.colors == (0, 0)
    assert restricted.colorsets == (0, 0b10)
    assert seq_to_graph(restricted) == Graph.empty(2)


def test_restrict_sequence_rejects_out_of_range_vertices() -> None:
    with pytest.raises(InvalidSequenceError):
        restrict_sequence(_path_sequence(), [3])


def test_induced_subgraph_examples() -> None:
    path = Graph.from_edges(3, [(0, 1), (1, 2)])

    assert induced_subgraph(path, [0, 1, 2]) == path
    assert induced_subgraph(path, [0, 2]) == Graph.empty(2)
    assert induced_subgraph(Graph.complete(5), [1, 3, 4]) == Graph.complete(3)


def _check_restriction(data: st.DataObject, sequence: RainbowSequence) -> None:
    vertices = st.sets(st.integers(min_value=0, max_value=sequence.n - 1)) if sequence.n else st.just(set())
    subset = data.draw(vertices)

    assert induced_subgraph(seq_to_graph(sequence), subset) == seq_to_graph(restrict_sequence(sequence, subset))


def _check_similarity(data: st.DataObject, sequence: RainbowSequence) -> None:
    tau = data.draw(st.permutations(list(range(sequence.k))))

    assert seq_to_graph(permute_sequence(sequence, tau)) == seq_to_graph(sequence)


@settings(max_examples=200, deadline=None)
@given(data=st.data(), sequence=sequences(max_k=4, max_n=12))
def test_restriction_commutes_with_induced_subgraph(data: st.DataObject, sequence: RainbowSequence) -> None:
    _check_restriction(data, sequence)


@pytest.mark.acceptance
@settings(max_examples=10_000, deadline=None)
@given(data=st.data(), sequence=sequences(max_k=4, max_n=12))
def test_restriction_commutes_over_ten_thousand_trials(data: st.DataObject, sequence: RainbowSequence) -> None:
    _check_restriction(data, sequence)


@settings(max_examples=200, deadline=None)
@given(data=st.data(), sequence=sequences(max_k=4, max_n=12))
def test_similar_sequences_generate_the_same_graph(data: st.DataObject, sequence: RainbowSequence) -> None:
    _check_similarity(data, sequence)


@pytest.mark.acceptance
@settings(max_examples=10_000, deadline=None)
@given(data=st.data(), sequence=sequences(max_k=4, max_n=12))
def test_similar_sequences_agree_over_ten_thousand_trials(data: st.DataObject, sequence: RainbowSequence) -> None:
    _check_similarity(data, sequence)


def test_sequences_similar_examples() -> None:
    first = RainbowSequence.from_entries(2, [(0, [1]), (1, [0, 1]), (0, [])])
    swapped = permute_sequence(first, [1, 0])

    assert sequences_similar(first, first)
    assert sequences_similar(first, swapped)
    assert not sequences_similar(RainbowSequence(2, (0,), (1,)), RainbowSequence(2, (0,), (0,)))


def test_sequences_similar_requires_matching_shapes() -> None:
    with pytest.raises(InvalidSequenceError):
        sequences_similar(RainbowSequence(2, (0,), (0,)), RainbowSequence(3, (0,), (0,)))


def test_canonicalize_relabels_by_first_occurrence() -> None:
    sequence = RainbowSequence.from_entries(2, [(1, [1]), (1, []), (0, [0, 1])])

    canonical = canonicalize_sequence(sequence)

    assert canonical.colors == (0, 0, 1)
    assert canonical.colorsets == (0b01, 0, 0b11)
    assert canonicalize_sequence(canonical) == canonical


@settings(max_examples=150, deadline=None)
@given(sequence=sequences(max_k=3, max_n=5))
def test_canonicalize_is_the_least_similar_sequence(sequence: RainbowSequence) -> None:
    least = min(permute_sequence(sequence, tau).codes() for tau in permutations(range(sequence.k)))

    canonical = canonicalize_sequence(sequence)

    assert canonical.codes() == least
    assert all(
        canonicalize_sequence(permute_sequence(sequence, tau)) == canonical
        for tau in permutations(range(sequence.k))
    )


@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_similarity_agrees_with_permutation_search(data: st.DataObject) -> None:
    k = data.draw(st.integers(min_value=1, max_value=3))
    n = data.draw(st.integers(min_value=0, max_value=4))
    codes = st.lists(st.integers(min_value=0, max_value=(k << k) - 1), min_size=n, max_size=n)
    first = RainbowSequence.from_codes(k, data.draw(codes))
    second = RainbowSequence.from_codes(k, data.draw(codes))

    assert sequences_similar(first, second) == brute_force_similar(first, second)


def test_embed_as_full_rainbow_examples() -> None:
    assert embed_as_full_rainbow(Graph.empty(3)).colorsets == (0, 0, 0)

    triangle = embed_as_full_rainbow(Graph.complete(3))
    assert triangle.k == 3
    assert triangle.colors == (0, 1, 2)
    assert triangle.colorsets == (0, 0b1, 0b11)


@settings(max_examples=200, deadline=None)
@given(graph=graphs(max_n=16))
def test_full_rainbow_embedding_round_trips(graph: Graph) -> None:
    assert seq_to_graph(embed_as_full_rainbow(graph)) == graph


def test_widen_palette_keeps_the_graph() -> None:
    sequence = threshold_sequence([0, 1, 0, 1, 1])

    assert widen_palette(sequence, 1) == sequence
    widened = widen_palette(sequence, 2)
    assert widened.k == 2
    assert seq_to_graph(widened) == seq_to_graph(sequence)

    with pytest.raises(InvalidSequenceError):
        widen_palette(widened, 1)


@pytest.mark.parametrize("n", range(6))
def test_widening_preserves_every_threshold_graph(n: int) -> None:
    for sequence in iter_all_sequences(1, n):
        assert seq_to_graph(widen_palette(sequence, 2)) == seq_to_graph(sequence)


def test_has_all_colors() -> None:
    single = threshold_sequence([0, 1, 1])
    assert has_all_colors(single, [2])

    sequence = RainbowSequence.from_entries(2, [(0, []), (0, []), (1, [])])
    assert not has_all_colors(sequence, [0, 1])
    assert has_all_colors(sequence, [1, 2])


def test_separates_all_colors() -> None:
    sequence = RainbowSequence.from_entries(2, [(0, []), (0, [0, 1]), (0, [0]), (1, [1])])

    assert separates_all_colors(sequence, [0, 1])
    assert not separates_all_colors(sequence, [1])
    assert separates_all_colors(sequence, [2, 3])
    assert not separates_all_colors(sequence, [])


def test_distinguishes_all_colors_needs_distinct_membership_patterns() -> None:
    sequence = RainbowSequence.from_entries(2, [(0, []), (0, [0, 1]), (0, [0])])

    assert not distinguishes_all_colors(sequence, [0, 1])
    assert distinguishes_all_colors(sequence, [2])


def test_threshold_bigraph_sequence_joins_across_parts() -> None:
    sequence = threshold_bigraph_sequence([0, 1, 0, 1], [0, 1, 1, 0])

    assert set(seq_to_graph(sequence).edges()) == {(0, 1), (1, 2)}


def test_iter_all_sequences_counts() -> None:
    assert sum(1 for _ in iter_all_sequences(1, 3)) == 8
    assert sum(1 for _ in iter_all_sequences(2, 2)) == 64
    assert [sequence.n for sequence in iter_all_sequences(3, 0)] == [0]
