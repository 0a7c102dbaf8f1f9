import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qparity.partitions import (
    FrequencySequence,
    flatten_parts,
    freq_to_partition,
    multipartition_weight,
    partition_to_freq,
    profile,
    weight,
)


def test_weight_of_worked_example():
    # (6,5,5,5,3,3,1,1,1,1) has frequencies 1^4 3^2 5^3 6^1 and weight 31
    f = FrequencySequence({1: 4, 3: 2, 5: 3, 6: 1})
    assert weight(f) == 31
    assert weight(FrequencySequence({})) == 0
    assert weight(FrequencySequence({0: 5})) == 0


def test_partition_freq_round_trip_example():
    parts = (6, 5, 5, 5, 3, 3, 1, 1, 1, 1)
    f = partition_to_freq(parts)
    assert f == FrequencySequence({1: 4, 3: 2, 5: 3, 6: 1})
    assert freq_to_partition(f) == parts
    assert partition_to_freq(()) == FrequencySequence({})
    assert freq_to_partition(FrequencySequence({})) == ()
    assert partition_to_freq((0, 0)) == FrequencySequence({0: 2})
    assert freq_to_partition(FrequencySequence({0: 2})) == (0, 0)


def test_negative_support_rejected():
    with pytest.raises(ValueError):
        freq_to_partition(FrequencySequence({-1: 1}))
    with pytest.raises(ValueError):
        partition_to_freq((1, 2))  # increasing, not a partition
    with pytest.raises(ValueError):
        FrequencySequence({2: -1})


@given(st.lists(st.integers(0, 9), max_size=8))
@settings(deadline=None)
def test_round_trip_is_identity(parts):
    p = tuple(sorted(parts, reverse=True))
    f = partition_to_freq(p)
    assert freq_to_partition(f) == p
    assert f.weight == sum(p)
    assert f.total_count == len(p)


def test_frequency_sequence_helpers():
    f = FrequencySequence({2: 1, 5: 3})
    assert f.get(2) == 1 and f.get(3) == 0
    assert f.pair_sum(4) == 3
    assert f.max_pair_sum(0) == 3
    assert f.shifted(2) == FrequencySequence({4: 1, 7: 3})
    assert f.min_index() == 2 and f.max_index() == 5
    assert repr(f) == "[2^1, 5^3]"


def test_multipartition_profile_and_flattening():
    bla = ((4, 2, 0), (3,), (), (1, 1))
    # component m has profile[m-1] - profile[m] parts
    assert profile(bla) == (6, 3, 2, 2)
    assert multipartition_weight(bla) == 11
    # flattened indices descend through the components in written order
    assert flatten_parts(bla) == [1, 1, 3, 0, 2, 4]
