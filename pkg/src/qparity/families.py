"""Named families of constrained frequency sequences and multipartitions.

Each family is a predicate together with an exhaustive weight-bounded
enumerator.  The enumerators are the combinatorial ("set") side of the
identity catalog and the ground truth for every bijection test: they walk
indices depth-first, bound each frequency by the pair cap and the
remaining weight budget, and apply the family's boundary and parity rules.

Frequency-sequence families
    W, Wbar      boundary f_1 <= a with an even/odd parity rule
    A            pair sums <= k, support >= u
    B            pair sums <= k, support >= 1, f_1 <= k - r
    Y, Z         boundary rules at the frame offset u
    Yo, Zo       Y/Z at u = 0 plus "odd parts appear an even number of times"
    Ye, Ze, ZeTilde   even-indexed parity variants at u = 0

Multipartition families (elements are (tuple, frame) pairs)
    X            per-component part minimum m - j + max(m-(k-r), 0)
    Xo           X at u = 0 with all parts even
    Xe, XeTilde  shifted frames at u = -1 with all parts even
    O            unconstrained tuples over staircase frames
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Callable, Iterator

from .motion import (
    FrameSpec,
    boundary_values,
    frame_sequence,
    tilde_frame_sequence,
)
from .partitions import (
    FrequencySequence,
    MultiPartition,
    is_partition,
    multipartition_weight,
    profile,
)
from .series import TruncatedSeries

FREQ_FAMILIES = {
    "W": ("k", "a"),
    "Wbar": ("k", "a"),
    "A": ("k", "u"),
    "B": ("k", "r"),
    "Y": ("j", "r", "k", "u"),
    "Z": ("j", "r", "k", "u"),
    "Yo": ("j", "r", "k"),
    "Zo": ("j", "r", "k"),
    "Ye": ("a", "b", "k"),
    "Ze": ("a", "b", "k"),
    "ZeTilde": ("a", "b", "k"),
}

PAIR_FAMILIES = {
    "X": ("j", "r", "k", "u"),
    "Xo": ("j", "r", "k"),
    "Xe": ("a", "b", "k"),
    "XeTilde": ("a", "b", "k"),
    "O": ("k", "r"),
}

FAMILY_PARAMS = {**FREQ_FAMILIES, **PAIR_FAMILIES}


@dataclass(frozen=True)
class SetSpec:
    """A family name plus its integer parameters."""

    family: str
    params: tuple[tuple[str, int], ...]

    def __init__(self, family: str, **params: int):
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "params", tuple(sorted(params.items())))
        _validate_spec(self)

    def __getitem__(self, name: str) -> int:
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)

    def as_dict(self) -> dict[str, int]:
        return dict(self.params)

    def __repr__(self) -> str:
        body = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.family}({body})"


def _validate_spec(spec: SetSpec) -> None:
    fam = spec.family
    if fam not in FAMILY_PARAMS:
        raise ValueError(f"unknown family {fam!r}")
    names = FAMILY_PARAMS[fam]
    got = tuple(k for k, _ in spec.params)
    if got != tuple(sorted(names)):
        raise ValueError(f"{fam} expects parameters {names}, got {got}")
    p = spec.as_dict()
    k = p["k"]
    if k < 0:
        raise ValueError("k must be >= 0")
    if fam in ("W", "Wbar") and not (0 <= p["a"] <= k):
        raise ValueError(f"{fam} needs 0 <= a <= k")
    if fam in ("B", "O") and not (0 <= p["r"] <= k):
        raise ValueError(f"{fam} needs 0 <= r <= k")
    if fam in ("X", "Y", "Z", "Xo", "Yo", "Zo"):
        if p["j"] < 0 or p["r"] < 0 or p["j"] + p["r"] > k:
            raise ValueError(f"{fam} needs j, r >= 0 and j + r <= k")
    if fam in ("Xe", "Ye", "Ze"):
        if p["a"] < 0 or p["b"] < 0 or 2 * p["a"] + 2 * p["b"] > k:
            raise ValueError(f"{fam} needs a, b >= 0 and 2a + 2b <= k")
    if fam in ("XeTilde", "ZeTilde"):
        if p["a"] < 0 or p["b"] < 0 or 2 * p["a"] + 2 * p["b"] - 1 > k:
            raise ValueError(f"{fam} needs a, b >= 0 and 2a + 2b - 1 <= k")


# -- membership ---------------------------------------------------------------


def _parity_ok(f: FrequencySequence, odd_indices: bool) -> bool:
    """True when f_i is even for every odd (resp. even) index i."""
    for i, c in f.items():
        if (i % 2 != 0) == odd_indices and c % 2 != 0:
            return False
    return True


def odd_parts_even_count(f: FrequencySequence) -> bool:
    return _parity_ok(f, odd_indices=True)


def even_parts_even_count(f: FrequencySequence) -> bool:
    return _parity_ok(f, odd_indices=False)


def _adjacency_ok(f: FrequencySequence, k: int, lo: int) -> bool:
    mi = f.min_index()
    if mi is None:
        return True
    if mi < lo:
        return False
    hi = f.max_index()
    for i in range(lo, hi + 1):
        if f.pair_sum(i) > k:
            return False
    return True


def _freq_satisfies(spec: SetSpec, f: FrequencySequence) -> bool:
    fam = spec.family
    p = spec.as_dict()
    k = p["k"]
    if fam in ("W", "Wbar"):
        return (
            _adjacency_ok(f, k, 1)
            and f.get(1) <= p["a"]
            and _parity_ok(f, odd_indices=(fam == "Wbar"))
        )
    if fam == "A":
        return _adjacency_ok(f, k, p["u"])
    if fam == "B":
        return _adjacency_ok(f, k, 1) and f.get(1) <= k - p["r"]
    u = p.get("u", 0)
    if fam in ("Y", "Yo"):
        ok = _adjacency_ok(f, k, u) and f.get(u) in boundary_values(p["j"], p["r"])
        return ok and (fam == "Y" or odd_parts_even_count(f))
    if fam in ("Z", "Zo"):
        fu = f.get(u)
        ok = _adjacency_ok(f, k, u) and fu <= p["j"] - max(
            fu + f.get(u + 1) - (k - p["r"]), 0
        )
        return ok and (fam == "Z" or odd_parts_even_count(f))
    a, b = p["a"], p["b"]
    if fam == "Ye":
        allowed = {2 * (l + max(l - (a - b), 0)) for l in range(a + 1)}
        return (
            _adjacency_ok(f, k, 0)
            and f.get(0) in allowed
            and even_parts_even_count(f)
        )
    if fam in ("Ze", "ZeTilde"):
        cap = k - 2 * b + 2 * a + (1 if fam == "ZeTilde" else 0)
        return (
            _adjacency_ok(f, k, 0)
            and f.get(0) <= 2 * a
            and 2 * f.get(0) + f.get(1) <= cap
            and even_parts_even_count(f)
        )
    raise ValueError(f"{fam} is not a frequency-sequence family")


def min_part_bound(spec: SetSpec) -> Callable[[int], int]:
    """The family's per-component part minimum (before even rounding)."""
    p = spec.as_dict()
    fam = spec.family
    k = p["k"]
    if fam in ("X", "Xo"):
        j, r = p["j"], p["r"]
        return lambda m: m - j + max(m - (k - r), 0)
    if fam == "Xe":
        a, b = p["a"], p["b"]
        return lambda m: m + max(m - 2 * a, 0) + max(m - (k - 2 * b), 0)
    if fam == "XeTilde":
        a, b = p["a"], p["b"]
        return lambda m: m + max(m - 2 * a, 0) + max(m - (k - 2 * b + 1), 0)
    if fam == "O":
        return lambda m: 0
    raise ValueError(f"{fam} is not a multipartition family")


def _frame_offset(spec: SetSpec) -> int:
    if spec.family == "X":
        return spec["u"]
    if spec.family == "Xo":
        return 0
    if spec.family in ("Xe", "XeTilde"):
        return -1
    return 1  # O: staircase frames start at index 1


def family_frame(spec: SetSpec, bla: MultiPartition) -> FrequencySequence:
    if spec.family == "O":
        return tilde_frame_sequence(bla, spec["r"], spec["k"])
    return frame_sequence(FrameSpec(_frame_offset(spec), profile(bla)))


def _pair_satisfies(spec: SetSpec, element) -> bool:
    bla, frame = element
    k = spec["k"]
    if len(bla) != k or not all(is_partition(c) for c in bla):
        return False
    even_only = spec.family in ("Xo", "Xe", "XeTilde")
    low = min_part_bound(spec)
    for m, comp in enumerate(bla, start=1):
        for part in comp:
            if part < low(m) or (even_only and part % 2 != 0):
                return False
    return frame == family_frame(spec, bla)


def satisfies(spec: SetSpec, element) -> bool:
    """Does the element meet every defining condition of the family?"""
    if spec.family in FREQ_FAMILIES:
        if not isinstance(element, FrequencySequence):
            raise ValueError(f"{spec.family} members are frequency sequences")
        return _freq_satisfies(spec, element)
    if not (isinstance(element, tuple) and len(element) == 2):
        raise ValueError(f"{spec.family} members are (tuple, frame) pairs")
    return _pair_satisfies(spec, element)


def element_weight(spec: SetSpec, element) -> int:
    if spec.family in FREQ_FAMILIES:
        return element.weight
    bla, frame = element
    return multipartition_weight(bla) + frame.weight


# -- enumeration: frequency-sequence families ---------------------------------


def _iter_freq(
    lo: int,
    k: int,
    max_weight: int,
    parity_odd: bool | None,
    first_vals: list[int] | None,
    second_check: Callable[[int, int], bool] | None,
) -> Iterator[FrequencySequence]:
    """DFS over indices lo, lo+1, ...; each frequency is bounded by the pair
    cap and, at positive indices, by the remaining weight budget."""

    entries: list[tuple[int, int]] = []

    def rec(i: int, prev: int, w: int) -> Iterator[FrequencySequence]:
        remaining = max_weight - w
        if i >= 1 and i > remaining:
            if remaining >= 0:
                yield FrequencySequence(entries)
            return
        cap = k - prev
        if i >= 1:
            cap = min(cap, remaining // i)
        if i == lo and first_vals is not None:
            vals = [v for v in first_vals if 0 <= v <= cap]
        else:
            vals = list(range(cap + 1))
        if parity_odd is not None and (i % 2 != 0) == parity_odd:
            vals = [v for v in vals if v % 2 == 0]
        if i == lo + 1 and second_check is not None:
            vals = [v for v in vals if second_check(prev, v)]
        for v in vals:
            if v:
                entries.append((i, v))
            yield from rec(i + 1, v, w + i * v)
            if v:
                entries.pop()

    if k < 0:
        return
    yield from rec(lo, 0, 0)


def _freq_iter_for(spec: SetSpec, max_weight: int) -> Iterator[FrequencySequence]:
    fam = spec.family
    p = spec.as_dict()
    k = p["k"]
    if fam in ("W", "Wbar"):
        return _iter_freq(
            1, k, max_weight, fam == "Wbar", list(range(min(p["a"], k) + 1)), None
        )
    if fam == "A":
        return _iter_freq(p["u"], k, max_weight, None, None, None)
    if fam == "B":
        return _iter_freq(1, k, max_weight, None, list(range(k - p["r"] + 1)), None)
    if fam in ("Y", "Yo"):
        u = p.get("u", 0)
        return _iter_freq(
            u, k, max_weight, True if fam == "Yo" else None,
            boundary_values(p["j"], p["r"]), None,
        )
    if fam in ("Z", "Zo"):
        u = p.get("u", 0)
        j, r = p["j"], p["r"]

        def zcheck(fu: int, fu1: int) -> bool:
            return fu <= j - max(fu + fu1 - (k - r), 0)

        return _iter_freq(
            u, k, max_weight, True if fam == "Zo" else None,
            list(range(j + 1)), zcheck,
        )
    a, b = p["a"], p["b"]
    if fam == "Ye":
        vals = sorted({2 * (l + max(l - (a - b), 0)) for l in range(a + 1)})
        return _iter_freq(0, k, max_weight, False, vals, None)
    cap = k - 2 * b + 2 * a + (1 if fam == "ZeTilde" else 0)
    return _iter_freq(
        0, k, max_weight, False, list(range(0, 2 * a + 1, 2)),
        lambda f0, f1: 2 * f0 + f1 <= cap,
    )


# -- enumeration: multipartition families --------------------------------------


def _effective_mins(spec: SetSpec) -> Callable[[int], int]:
    low = min_part_bound(spec)
    even_only = spec.family in ("Xo", "Xe", "XeTilde")

    def eff(m: int) -> int:
        b = max(0, low(m))
        if even_only and b % 2 != 0:
            b += 1
        return b

    return eff


def _iter_profiles(
    k: int, u: int, eff: Callable[[int], int], max_weight: int
) -> Iterator[tuple[int, ...]]:
    """Profiles (s_1 >= ... >= s_k >= 0) whose frame weight plus minimal
    tuple weight can still fit under max_weight.

    With delta_m = eff(m) - eff(m-1) >= 0 (the minima are non-decreasing),
    that total is sum_m s_m (s_m + u - 1 + delta_m); every not-yet-chosen
    term is at least min_term, which gives the pruning slack.
    """
    min_term = min(
        (s * (s + u - 1) for s in range(0, max(3, 3 - u))), default=0
    )
    min_term = min(min_term, 0)
    prof: list[int] = []

    def rec(m: int, hi: int | None, partial: int) -> Iterator[tuple[int, ...]]:
        if m > k:
            yield tuple(prof)
            return
        delta = eff(m) - (eff(m - 1) if m > 1 else 0)
        future = (k - m) * min_term
        bound = max_weight - partial - future
        c = u - 1 + delta
        s_cap = isqrt(max(0, bound)) + abs(c) + 2
        if hi is not None:
            s_cap = min(s_cap, hi)
        for s in range(0, s_cap + 1):
            term = s * (s + c)
            if partial + term + future <= max_weight:
                prof.append(s)
                yield from rec(m + 1, s, partial + term)
                prof.pop()

    yield from rec(1, None, 0)


def _iter_parts_fixed_len(
    length: int, lo: int, budget: int, step: int
) -> Iterator[tuple[int, ...]]:
    """Non-decreasing tuples of the given length, parts >= lo on the grid
    lo, lo+step, ...; total <= budget.  Reverse to get a partition."""
    if length == 0:
        yield ()
        return
    p = lo
    while p * length <= budget:
        for rest in _iter_parts_fixed_len(length - 1, p, budget - p, step):
            yield (p,) + rest
        p += step


def iter_multipartitions(
    k: int,
    min_part: Callable[[int], int],
    even_parts_only: bool,
    max_total_weight: int,
    frame_offset: int,
) -> Iterator[tuple[MultiPartition, FrequencySequence]]:
    """All k-tuples with parts of component m at least min_part(m) (and even,
    when requested), paired with their frame sequence at the given offset,
    such that tuple weight plus frame weight stays within the bound."""

    def eff(m: int) -> int:
        b = max(0, min_part(m))
        if even_parts_only and b % 2 != 0:
            b += 1
        return b

    step = 2 if even_parts_only else 1
    for prof in _iter_profiles(k, frame_offset, eff, max_total_weight):
        spec = FrameSpec(frame_offset, prof)
        frame = frame_sequence(spec)
        budget = max_total_weight - frame.weight
        mins = [eff(m) for m in range(1, k + 1)]
        lengths = [prof[m] - (prof[m + 1] if m + 1 < k else 0) for m in range(k)]
        if sum(mins[m] * lengths[m] for m in range(k)) > budget:
            continue

        def rec(m: int, left: int, acc: list[tuple[int, ...]]):
            if m == k:
                yield tuple(acc), frame
                return
            for asc in _iter_parts_fixed_len(lengths[m], mins[m], left, step):
                acc.append(tuple(reversed(asc)))
                yield from rec(m + 1, left - sum(asc), acc)
                acc.pop()

        yield from rec(0, budget, [])


def enumerate_multipartitions(
    k: int,
    min_part: Callable[[int], int],
    even_parts_only: bool,
    max_total_weight: int,
    frame_offset: int,
) -> list[tuple[MultiPartition, FrequencySequence]]:
    out = list(
        iter_multipartitions(k, min_part, even_parts_only, max_total_weight, frame_offset)
    )
    out.sort(key=lambda e: (multipartition_weight(e[0]) + e[1].weight, e[0]))
    return out


def _pair_iter_for(spec: SetSpec, max_weight: int):
    if spec.family == "O":
        k, r = spec["k"], spec["r"]
        for prof in _iter_profiles(k, 1, lambda m: 0, max_weight):
            sample = _tuple_of_lengths(prof, k)
            frame = tilde_frame_sequence(sample, r, k)
            budget = max_weight - frame.weight
            if budget < 0:
                continue
            lengths = [prof[m] - (prof[m + 1] if m + 1 < k else 0) for m in range(k)]

            def rec(m: int, left: int, acc: list[tuple[int, ...]]):
                if m == k:
                    yield tuple(acc), frame
                    return
                for asc in _iter_parts_fixed_len(lengths[m], 0, left, 1):
                    acc.append(tuple(reversed(asc)))
                    yield from rec(m + 1, left - sum(asc), acc)
                    acc.pop()

            yield from rec(0, budget, [])
        return
    yield from iter_multipartitions(
        spec["k"],
        min_part_bound(spec),
        spec.family in ("Xo", "Xe", "XeTilde"),
        max_weight,
        _frame_offset(spec),
    )


def _tuple_of_lengths(prof: tuple[int, ...], k: int) -> MultiPartition:
    """A zero-filled tuple realising the profile (used to build its frame)."""
    return tuple(
        (0,) * (prof[m] - (prof[m + 1] if m + 1 < k else 0)) for m in range(k)
    )


# -- public enumeration API ----------------------------------------------------


def iter_set(spec: SetSpec, max_weight: int):
    """Unordered exhaustive stream of the family's members up to max_weight."""
    if spec.family in FREQ_FAMILIES:
        yield from _freq_iter_for(spec, max_weight)
    else:
        yield from _pair_iter_for(spec, max_weight)


def enumerate_set(spec: SetSpec, max_weight: int) -> list:
    """All members of weight <= max_weight, sorted by (weight, content)."""
    out = list(iter_set(spec, max_weight))
    if spec.family in FREQ_FAMILIES:
        out.sort(key=lambda f: (f.weight, tuple(f.items())))
    else:
        out.sort(key=lambda e: (element_weight(spec, e), e[0]))
    return out


def weight_histogram(spec: SetSpec, max_weight: int) -> TruncatedSeries:
    """Counts per weight as a series, exact through max_weight."""
    counts: dict[int, int] = {}
    for el in iter_set(spec, max_weight):
        w = element_weight(spec, el)
        counts[w] = counts.get(w, 0) + 1
    return TruncatedSeries.from_dict(counts, max_weight)
