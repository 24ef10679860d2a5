"""Tests for neighbourhood classes and the class-count bound."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbowthreshold.core_model import (
    Graph,
    RainbowSequence,
    distinguishes_all_colors,
    has_all_colors,
    iter_all_sequences,
    separates_all_colors,
    seq_to_graph,
)
from rainbowthreshold.equivalence import (
    Partition,
    certify_not_k_rainbow,
    class_bound,
    count_classes,
    find_certificate,
    max_class_count,
    neighborhood_partition,
    order_partition,
    outside_class_count,
    partition_to_json,
)
from rainbowthreshold.errors import InvalidGraphError
from rainbowthreshold.recognition import enumerate_graphs, is_k_rainbow_up_to_iso

from tests.strategies import permutations_of, sequences


def _certified_graph() -> Graph:
    """Vertices 3..8 realise six distinct neighbourhoods towards {0, 1, 2}."""

    neighbourhoods = [(), (0,), (1,), (2,), (0, 1), (0, 1, 2)]
    edges = [(c, 3 + offset) for offset, hood in enumerate(neighbourhoods) for c in hood]
    return Graph.from_edges(9, edges)


def test_neighborhood_partition_examples() -> None:
    path = Graph.from_edges(3, [(0, 1), (1, 2)])

    assert neighborhood_partition(path, [0, 2], [1]).blocks == ((0, 2),)
    assert neighborhood_partition(path, [0, 1], [2]).blocks == ((0,), (1,))
    assert neighborhood_partition(path, [0, 1, 2], []).blocks == ((0, 1, 2),)


def test_neighborhood_partition_keeps_cut_vertices_as_singletons() -> None:
    partition = neighborhood_partition(Graph.complete(4), range(4), [1, 2])

    assert partition.blocks == ((0, 3), (1,), (2,))
    assert partition.same_block(0, 3)
    assert not partition.same_block(1, 2)


def test_neighborhood_partition_rejects_out_of_range_vertices() -> None:
    with pytest.raises(InvalidGraphError):
        neighborhood_partition(Graph.empty(2), [0, 1], [5])


def test_order_partition_examples() -> None:
    assert order_partition(4, [2]).blocks == ((0, 1), (2,), (3,))
    assert order_partition(4, []).blocks == ((0, 1, 2, 3),)
    assert count_classes(order_partition(3, [0, 1, 2])) == 3


def test_count_classes_examples() -> None:
    path = Graph.from_edges(3, [(0, 1), (1, 2)])

    assert count_classes(Partition((), ())) == 0
    assert count_classes(Partition.from_blocks([[v] for v in range(5)])) == 5
    assert count_classes(neighborhood_partition(path, [0, 2], [1])) == 1


def test_partition_from_blocks_rejects_overlaps() -> None:
    with pytest.raises(ValueError):
        Partition.from_blocks([[0, 1], [1, 2]])


@pytest.mark.parametrize("k, t, expected", [(1, 4, 6), (2, 0, 8), (2, 3, 20), (1, 3, 5), (1, 1, Fraction(3))])
def test_class_bound_values(k: int, t: int, expected: Fraction) -> None:
    assert class_bound(k, t) == expected


def test_class_bound_is_half_integral() -> None:
    assert class_bound(1, 27) == 29
    assert class_bound(3, 1) == Fraction(36)
    assert class_bound(1, 2) == 4


def test_certificate_for_six_distinct_neighbourhoods() -> None:
    graph = _certified_graph()

    assert outside_class_count(graph, [0, 1, 2]) == 6
    assert certify_not_k_rainbow(graph, [0, 1, 2], 1)
    assert not is_k_rainbow_up_to_iso(graph, 1)


def test_certify_is_false_when_the_count_stays_within_the_bound() -> None:
    path = Graph.from_edges(3, [(0, 1), (1, 2)])

    assert not certify_not_k_rainbow(path, [1], 1)


@pytest.mark.parametrize("k, n", [(1, 5), (1, 6), (2, 4)])
def test_class_bound_holds_on_every_enumerated_graph(k: int, n: int) -> None:
    cuts = [cut for size in range(n + 1) for cut in combinations(range(n), size)]

    for graph in enumerate_graphs(k, n):
        assert not any(certify_not_k_rainbow(graph, cut, k) for cut in cuts)


@settings(max_examples=100, deadline=None)
@given(data=st.data(), sequence=sequences(max_k=2, max_n=8, min_n=1))
def test_same_symbol_and_gap_implies_same_neighbourhood_class(
    data: st.DataObject, sequence: RainbowSequence
) -> None:
    cut = data.draw(st.sets(st.integers(min_value=0, max_value=sequence.n - 1)))
    graph = seq_to_graph(sequence)
    outside = [v for v in range(sequence.n) if v not in cut]
    hoods = neighborhood_partition(graph, outside, cut)
    gaps = order_partition(sequence.n, cut)

    for i, j in combinations(outside, 2):
        if sequence.symbol(i) == sequence.symbol(j) and gaps.same_block(i, j):
            assert hoods.same_block(i, j)


@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_max_class_count_is_invariant_under_relabelling(data: st.DataObject) -> None:
    graph = _certified_graph()
    order = data.draw(permutations_of(graph.n))

    assert max_class_count(graph.relabel(order), 3) == max_class_count(graph, 3) == 6


def test_find_certificate_returns_the_smallest_cut() -> None:
    cut = find_certificate(_certified_graph(), 1, max_size=3)

    assert cut is not None
    assert len(cut) <= 3
    assert certify_not_k_rainbow(_certified_graph(), cut, 1)
    assert find_certificate(Graph.complete(6), 1) is None


def test_partition_to_json_is_sorted() -> None:
    payload = partition_to_json(order_partition(4, [2]))

    assert payload == {"domain": [0, 1, 2, 3], "blocks": [[0, 1], [2], [3]], "classes": 3}


def _cuts(candidates: range) -> list[tuple[int, ...]]:
    return [cut for size in range(1, len(candidates) + 1) for cut in combinations(candidates, size)]


def _colourset_recovery_failures(k: int, n: int) -> tuple[int, list[tuple]]:
    checked = 0
    failures = []
    for sequence in iter_all_sequences(k, n):
        graph = seq_to_graph(sequence)
        # cuts end early enough to leave a pair after them
        for cut in _cuts(range(n - 2)):
            if not has_all_colors(sequence, cut):
                continue
            rest = [v for v in range(n) if v not in cut]
            blocks = neighborhood_partition(graph, rest, cut).block_index()
            for i, j in combinations(range(cut[-1] + 1, n), 2):
                checked += 1
                if (blocks[i] == blocks[j]) != (sequence.colorsets[i] == sequence.colorsets[j]):
                    failures.append((sequence.codes(), cut, i, j))
    return checked, failures


def _colour_recovery_failures(k: int, n: int) -> tuple[int, list[tuple]]:
    checked = 0
    failures = []
    for sequence in iter_all_sequences(k, n):
        graph = seq_to_graph(sequence)
        for cut in _cuts(range(2, n)):
            distinguishing = distinguishes_all_colors(sequence, cut)
            rest = [v for v in range(n) if v not in cut]
            blocks = neighborhood_partition(graph, rest, cut).block_index()
            for i, j in combinations(range(cut[0]), 2):
                same_block = blocks[i] == blocks[j]
                same_colour = sequence.colors[i] == sequence.colors[j]
                if same_colour and not same_block:
                    failures.append((sequence.codes(), cut, i, j))
                if distinguishing:
                    checked += 1
                    if same_block and not same_colour:
                        failures.append((sequence.codes(), cut, i, j))
    return checked, failures


_RECOVERY_SCALES = [
    (1, 4),
    (1, 6),
    (2, 4),
    pytest.param(2, 5, marks=pytest.mark.acceptance),
    pytest.param(2, 6, marks=pytest.mark.acceptance),
]


@pytest.mark.parametrize("k, n", _RECOVERY_SCALES)
def test_an_earlier_cut_with_every_colour_recovers_the_coloursets(k: int, n: int) -> None:
    checked, failures = _colourset_recovery_failures(k, n)

    assert checked > 0
    assert failures == []


@pytest.mark.parametrize("k, n", _RECOVERY_SCALES)
def test_a_later_distinguishing_cut_recovers_the_colours(k: int, n: int) -> None:
    checked, failures = _colour_recovery_failures(k, n)

    assert checked > 0
    assert failures == []


def test_separating_every_colour_does_not_recover_the_colours() -> None:
    # the cut holds the coloursets {} and {0, 1}, so both colours look alike from it
    sequence = RainbowSequence.from_entries(2, [(0, []), (1, []), (0, []), (0, [0, 1])])
    cut = [2, 3]

    assert separates_all_colors(sequence, cut)
    assert not distinguishes_all_colors(sequence, cut)
    partition = neighborhood_partition(seq_to_graph(sequence), [0, 1], cut)
    assert partition.same_block(0, 1)
    assert sequence.colors[0] != sequence.colors[1]
