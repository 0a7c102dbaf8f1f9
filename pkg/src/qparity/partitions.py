"""Partitions, generalised frequency sequences and multipartitions.

A partition here is a finite non-increasing tuple of non-negative integers
(zero parts are allowed and count toward the length but not the weight).
A generalised frequency sequence records, for every integer i, how many
parts of size i a generalised partition has; only finitely many entries
are non-zero and indices may be negative.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def is_partition(parts: Iterable[int]) -> bool:
    t = tuple(parts)
    return all(
        t[i] >= t[i + 1] for i in range(len(t) - 1)
    ) and all(p >= 0 for p in t)


class FrequencySequence:
    """Finitely supported map i -> f_i > 0 over all integers i."""

    __slots__ = ("_entries",)

    def __init__(self, entries: dict[int, int] | Iterable[tuple[int, int]] = ()):
        d = dict(entries)
        for i, c in d.items():
            if c < 0:
                raise ValueError(f"negative frequency f_{i} = {c}")
        self._entries: tuple[tuple[int, int], ...] = tuple(
            sorted((i, c) for i, c in d.items() if c > 0)
        )

    def get(self, i: int) -> int:
        for j, c in self._entries:
            if j == i:
                return c
            if j > i:
                return 0
        return 0

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._entries)

    def to_dict(self) -> dict[int, int]:
        return dict(self._entries)

    @property
    def weight(self) -> int:
        return sum(i * c for i, c in self._entries)

    @property
    def total_count(self) -> int:
        """Number of parts (length of the generalised partition)."""
        return sum(c for _, c in self._entries)

    def is_empty(self) -> bool:
        return not self._entries

    def min_index(self) -> int | None:
        return self._entries[0][0] if self._entries else None

    def max_index(self) -> int | None:
        return self._entries[-1][0] if self._entries else None

    def pair_sum(self, i: int) -> int:
        return self.get(i) + self.get(i + 1)

    def max_pair_sum(self, lo: int) -> int:
        """max over i >= lo of f_i + f_{i+1} (0 for an empty tail)."""
        best = 0
        d = dict(self._entries)
        hi = self._entries[-1][0] if self._entries else lo - 1
        for i in range(lo - 1, hi + 1):
            if i < lo:
                continue
            s = d.get(i, 0) + d.get(i + 1, 0)
            if s > best:
                best = s
        return best

    def shifted(self, delta: int) -> "FrequencySequence":
        return FrequencySequence({i + delta: c for i, c in self._entries})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FrequencySequence):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self._entries)

    def __repr__(self) -> str:
        body = ", ".join(f"{i}^{c}" for i, c in self._entries)
        return f"[{body}]"


def weight(f: FrequencySequence) -> int:
    return f.weight


def partition_to_freq(parts: Iterable[int]) -> FrequencySequence:
    """Frequency encoding of a partition into non-negative parts."""
    t = tuple(parts)
    if not is_partition(t):
        raise ValueError(f"not a partition: {t!r}")
    d: dict[int, int] = {}
    for p in t:
        d[p] = d.get(p, 0) + 1
    return FrequencySequence(d)


def freq_to_partition(f: FrequencySequence) -> tuple[int, ...]:
    """Inverse of partition_to_freq; the support must be non-negative."""
    mi = f.min_index()
    if mi is not None and mi < 0:
        raise ValueError("frequency sequence has parts of negative size")
    parts: list[int] = []
    for i, c in sorted(f.items(), reverse=True):
        parts.extend([i] * c)
    return tuple(parts)


# -- multipartitions ---------------------------------------------------------

MultiPartition = tuple  # k-tuple of partitions (tuples of non-negative ints)


def check_multipartition(bla: MultiPartition) -> None:
    for comp in bla:
        if not is_partition(comp):
            raise ValueError(f"component {comp!r} is not a partition")


def multipartition_weight(bla: MultiPartition) -> int:
    return sum(sum(comp) for comp in bla)


def total_length(bla: MultiPartition) -> int:
    return sum(len(comp) for comp in bla)


def profile(bla: MultiPartition) -> tuple[int, ...]:
    """Column profile (s_1, ..., s_k): s_m = sum of lengths of components m..k.

    Component m then has exactly s_m - s_{m+1} parts (s_{k+1} = 0).
    """
    k = len(bla)
    s = [0] * (k + 1)
    for m in range(k, 0, -1):
        s[m - 1] = s[m] + len(bla[m - 1])
    return tuple(s[:k])


def flatten_parts(bla: MultiPartition) -> list[int]:
    """Flattened part list indexed so that entry i is the part inserted at
    frame pair i: the first component's parts receive the highest indices,
    the last component's final part index 0.
    """
    out: list[int] = []
    for comp in bla:
        out.extend(comp)
    out.reverse()
    return out
