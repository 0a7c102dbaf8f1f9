import pytest

from qparity.families import (
    SetSpec,
    element_weight,
    enumerate_multipartitions,
    enumerate_set,
    iter_set,
    satisfies,
    weight_histogram,
)
from qparity.motion import FrameSpec, frame_sequence
from qparity.partitions import FrequencySequence


def hist_dict(spec, w):
    return dict(weight_histogram(spec, w).items())


def test_spec_validation():
    with pytest.raises(ValueError):
        SetSpec("Zo", j=2, r=1, k=2)  # j + r > k
    with pytest.raises(ValueError):
        SetSpec("Ze", a=1, b=1, k=3)  # 2a + 2b > k
    with pytest.raises(ValueError):
        SetSpec("ZeTilde", a=1, b=1, k=2)  # 2a + 2b - 1 > k
    with pytest.raises(ValueError):
        SetSpec("B", k=2, r=3)
    with pytest.raises(ValueError):
        SetSpec("nope", k=1)
    with pytest.raises(ValueError):
        SetSpec("W", k=2)  # missing a


def test_satisfies_examples():
    zo = SetSpec("Zo", j=1, r=0, k=2)
    assert satisfies(zo, FrequencySequence({0: 1, 2: 1}))
    assert not satisfies(zo, FrequencySequence({1: 1}))  # odd part appears once
    wbar = SetSpec("Wbar", k=1, a=0)
    assert satisfies(wbar, FrequencySequence({2: 1, 4: 1}))
    assert not satisfies(wbar, FrequencySequence({1: 1}))  # f_1 <= 0 fails
    with pytest.raises(ValueError):
        satisfies(zo, (((),), FrequencySequence({})))  # wrong element kind


def test_boundary_conditions_bind():
    z = SetSpec("Z", j=1, r=1, k=2, u=0)
    # f_0 <= j - max(f_0 + f_1 - (k - r), 0)
    assert satisfies(z, FrequencySequence({0: 1}))
    assert not satisfies(z, FrequencySequence({0: 1, 1: 1}))  # 2f_0+f_1 > k-r+j
    y = SetSpec("Y", j=1, r=1, k=2, u=0)
    assert satisfies(y, FrequencySequence({0: 2}))  # l=1: l + max(l-0,0) = 2
    assert not satisfies(y, FrequencySequence({0: 1}))


def test_zo_small_histograms():
    assert hist_dict(SetSpec("Zo", j=0, r=0, k=1), 6) == {0: 1, 2: 1, 4: 1, 6: 2}
    assert hist_dict(SetSpec("Wbar", k=1, a=0), 6) == {0: 1, 2: 1, 4: 1, 6: 2}
    # k = 0 allows only the empty sequence
    assert hist_dict(SetSpec("W", k=0, a=0), 6) == {0: 1}


def test_enumerate_set_deterministic_no_duplicates():
    for spec in (
        SetSpec("Zo", j=1, r=1, k=3),
        SetSpec("Ze", a=1, b=0, k=2),
        SetSpec("A", k=2, u=-1),
        SetSpec("Y", j=2, r=0, k=2, u=0),
    ):
        els = enumerate_set(spec, 9)
        assert els == enumerate_set(spec, 9)
        assert len(els) == len(set(els))
        assert all(satisfies(spec, f) for f in els)
        weights = [element_weight(spec, f) for f in els]
        assert weights == sorted(weights)
        assert all(w <= 9 for w in weights)


def brute_freq_sequences(lo, k, max_weight):
    # independent generate-and-filter oracle: bounded support and counts;
    # negative indices can offset up to k * |lo|(|lo|+1)/2 of weight
    slack = k * sum(-i for i in range(lo, 0))
    span = list(range(lo, max_weight + slack + 1))
    out = []

    def rec(i, acc):
        if i == len(span):
            out.append(FrequencySequence(dict(acc)))
            return
        for c in range(0, k + 1):
            if c:
                acc.append((span[i], c))
            if sum(idx * cnt for idx, cnt in acc) <= max_weight + slack:
                rec(i + 1, acc)
            if c:
                acc.pop()

    rec(0, [])
    return out


@pytest.mark.parametrize(
    "spec",
    [
        SetSpec("Zo", j=1, r=0, k=2),
        SetSpec("ZeTilde", a=1, b=1, k=3),
        SetSpec("W", k=2, a=1),
        SetSpec("B", k=2, r=1),
        SetSpec("Z", j=1, r=1, k=2, u=-1),
    ],
)
def test_enumeration_agrees_with_filter_oracle(spec):
    w = 8
    lo = min((dict(spec.params).get("u", 0 if spec.family != "W" else 1), 0))
    brute = {
        f
        for f in brute_freq_sequences(lo, dict(spec.params)["k"], w)
        if satisfies(spec, f) and f.weight <= w
    }
    assert set(enumerate_set(spec, w)) == brute


def test_family_nesting():
    # Ze(a,b,k) <= ZeTilde(a,b,k) <= Ze(a,b-1,k) element-wise
    a, b, k = 1, 1, 4
    ze = set(enumerate_set(SetSpec("Ze", a=a, b=b, k=k), 12))
    zet = set(enumerate_set(SetSpec("ZeTilde", a=a, b=b, k=k), 12))
    ze_lower = set(enumerate_set(SetSpec("Ze", a=a, b=b - 1, k=k), 12))
    assert ze <= zet <= ze_lower


def test_wbar_odd_a_collapse():
    for k in (1, 2, 3):
        for a in range(1, k + 1, 2):
            lhs = enumerate_set(SetSpec("Wbar", k=k, a=a), 12)
            rhs = enumerate_set(SetSpec("Wbar", k=k, a=a - 1), 12)
            assert lhs == rhs


def test_enumerate_multipartitions_examples():
    els = enumerate_multipartitions(1, lambda m: 0, True, 2, 0)
    as_set = {(bla, frame) for bla, frame in els}
    assert (((),), FrequencySequence({})) in as_set
    assert (((0,),), FrequencySequence({0: 1})) in as_set
    assert (((2,),), FrequencySequence({0: 1})) in as_set
    weights = sorted(
        (sum(sum(c) for c in bla) + fr.weight) for bla, fr in els
    )
    assert weights[:3] == [0, 0, 2]
    assert enumerate_multipartitions(3, lambda m: 0, False, -1, 0) == []
    # frame weight of the profile (2,1) at offset 0 is 4 + 1 - 3 = 2
    assert frame_sequence(FrameSpec(0, (2, 1))).weight == 2


def test_pair_family_membership_and_weights():
    spec = SetSpec("Xo", j=1, r=1, k=2)
    els = enumerate_set(spec, 10)
    assert els and all(satisfies(spec, el) for el in els)
    for bla, frame in els:
        for m, comp in enumerate(bla, start=1):
            for part in comp:
                assert part % 2 == 0
                assert part >= m - 1 + max(m - 1, 0)
    # X-family weights may be negative for shifted frames
    xm = SetSpec("X", j=2, r=0, k=2, u=-1)
    ws = [element_weight(xm, el) for el in enumerate_set(xm, 6)]
    assert min(ws) < 0 <= max(ws)


def test_histogram_matches_group_sizes():
    spec = SetSpec("Ye", a=1, b=1, k=4)
    els = enumerate_set(spec, 10)
    hist = weight_histogram(spec, 10)
    for w in range(11):
        assert hist.coefficient(w) == sum(
            1 for f in els if element_weight(spec, f) == w
        )
