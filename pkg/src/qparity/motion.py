"""The particle-motion engine.

A single process step at focus index u, on a sequence whose pair sums
f_v + f_{v+1} never exceed h = f_u + f_{u+1} to the right of u, is one of:

* particle motion, when f_{u+1} + f_{u+2} < h: replace (f_u, f_{u+1}) by
  (f_u - 1, f_{u+1} + 1), keeping the focus; this removes a part u and adds
  a part u+1, raising the weight by one;
* focus shift, when f_{u+1} + f_{u+2} = h: keep the sequence, move the
  focus to u+1.

``ppm`` iterates that process until m motions have been performed (focus
shifts are not counted).  ``ppm_explicit`` produces the same result in one
shot from the cumulative slack profile, and ``reverse_ppm`` undoes a run,
recovering the unique canonical preimage whose focus pair is (h, 0).

On top of the single-pair process sit the insertion maps: ``lambda_map``
inserts a k-tuple of partitions into its frame sequence pair by pair from
the right, ``lambda_inverse`` strips them back out, ``tilde_lambda`` is the
variant acting on staircase frames with a nonzero second entry, and ``phi``
adjusts the boundary frequency between the two constrained-set encodings.
"""

from __future__ import annotations

from dataclasses import dataclass

from .partitions import (
    FrequencySequence,
    MultiPartition,
    check_multipartition,
    flatten_parts,
    profile,
)

MOTION = "⇒"  # arrow printed for a particle motion
SHIFT = "→"  # arrow printed for a focus shift


def _inc(d: dict[int, int], i: int, v: int) -> None:
    c = d.get(i, 0) + v
    if c:
        d[i] = c
    elif i in d:
        del d[i]


def _check_focus_invariant(d: dict[int, int], u: int, h: int) -> None:
    hi = max(d) if d else u
    for v in range(u, hi + 2):
        if d.get(v, 0) + d.get(v + 1, 0) > h:
            raise ValueError(
                f"pair sum at {v} exceeds h={h}; process precondition violated"
            )


def _ppm_dict(d: dict[int, int], u: int, m: int, check: bool = True) -> int:
    """Apply m particle motions starting at index u, mutating d.

    Returns the final focus index.
    """
    h = d.get(u, 0) + d.get(u + 1, 0)
    if check:
        _check_focus_invariant(d, u, h)
    if m == 0:
        return u
    if h == 0:
        raise ValueError("cannot perform motions from an empty focus pair (h = 0)")
    hi = max(d) if d else u
    budget = 2 * m + max(hi - u, 0) + 4  # termination trap; never hit on valid input
    focus = u
    motions = 0
    steps = 0
    while motions < m:
        if d.get(focus + 1, 0) + d.get(focus + 2, 0) < h:
            _inc(d, focus, -1)
            _inc(d, focus + 1, 1)
            motions += 1
        else:
            focus += 1
        steps += 1
        if steps > budget:
            raise RuntimeError("particle motion failed to terminate (bug)")
    return focus


def ppm(f: FrequencySequence, u: int, m: int) -> tuple[FrequencySequence, int]:
    """m particle motions starting at index u; returns (sequence, final focus)."""
    if m < 0:
        raise ValueError("motion count must be >= 0")
    d = f.to_dict()
    v = _ppm_dict(d, u, m)
    return FrequencySequence(d), v


def ppm_trace(
    f: FrequencySequence, u: int, m: int
) -> list[tuple[str, FrequencySequence, int]]:
    """Step-by-step run of ppm: [(arrow, state after the step, focus), ...].

    The first entry is the initial state with an empty arrow.
    """
    if m < 0:
        raise ValueError("motion count must be >= 0")
    d = f.to_dict()
    h = d.get(u, 0) + d.get(u + 1, 0)
    _check_focus_invariant(d, u, h)
    out = [("", f, u)]
    if m == 0:
        return out
    if h == 0:
        raise ValueError("cannot perform motions from an empty focus pair (h = 0)")
    focus = u
    motions = 0
    while motions < m:
        if d.get(focus + 1, 0) + d.get(focus + 2, 0) < h:
            _inc(d, focus, -1)
            _inc(d, focus + 1, 1)
            motions += 1
            out.append((MOTION, FrequencySequence(d), focus))
        else:
            focus += 1
            out.append((SHIFT, FrequencySequence(d), focus))
    return out


def ppm_explicit(f: FrequencySequence, u: int, m: int) -> tuple[FrequencySequence, int]:
    """Closed-form evaluation of ppm from an (h, 0) focus pair.

    Valid only when f_u = h >= 1, f_{u+1} = 0 and every pair sum to the
    right of u is at most h.  The final focus v is the first index where the
    cumulative slack sum_{i=u+2}^{v+2} (h - f_{i-1} - f_i) reaches m, and
    the entries are rebuilt from the slack totals without simulating.
    """
    if m < 0:
        raise ValueError("motion count must be >= 0")
    d = f.to_dict()
    h = d.get(u, 0)
    if h < 1 or d.get(u + 1, 0) != 0:
        raise ValueError("explicit motion needs an (h, 0) focus pair with h >= 1")
    _check_focus_invariant(d, u, h)

    # locate the final focus via cumulative slack
    t = u
    cum = 0
    while True:
        slack = h - (d.get(t + 1, 0) + d.get(t + 2, 0))
        cum += slack
        if cum >= m:
            v = t
            break
        t += 1
    # cum = sum_{j=u+2}^{v+2} slack_j; the focus entry pair needs the partial
    # sum that stops one index earlier as well.
    cum_prev = cum - (h - (d.get(v + 1, 0) + d.get(v + 2, 0)))

    out: dict[int, int] = {i: c for i, c in d.items() if i < u or i >= v + 2}
    for i in range(u, v):
        c = d.get(i + 2, 0)
        if c:
            out[i] = c
    _inc(out, v, d.get(v + 2, 0) + cum - m)
    _inc(out, v + 1, d.get(v + 1, 0) + m - cum_prev)
    return FrequencySequence(out), v


def reverse_ppm(f: FrequencySequence, u: int) -> tuple[FrequencySequence, int]:
    """Undo a ppm run that started from an (h, 0) pair at (u, u+1).

    h is the maximum pair sum on indices >= u and the reversal starts at the
    smallest index attaining it.  Focus shifts are undone once the pair to
    the left regains sum h; motions are undone otherwise.  Returns the
    preimage and the motion count.
    """
    d = f.to_dict()
    hi = max(d) if d else u
    h = 0
    v = u
    for i in range(u, hi + 1):
        s = d.get(i, 0) + d.get(i + 1, 0)
        if s > h:
            h = s
            v = i
    if h == 0:
        return f, 0
    budget = sum(c * (i - u) for i, c in d.items() if i > u) + (v - u) + 4
    w = v
    m = 0
    steps = 0
    while not (w == u and d.get(u + 1, 0) == 0):
        if w > u and d.get(w - 1, 0) + d.get(w, 0) == h:
            w -= 1  # undo a focus shift
        else:
            c1 = d.get(w + 1, 0)
            if c1 < 1 or (c1 - 1) + d.get(w + 2, 0) >= h or w < u:
                raise ValueError("sequence is not a valid particle-motion image")
            _inc(d, w + 1, -1)
            _inc(d, w, 1)
            m += 1
        steps += 1
        if steps > budget:
            raise ValueError("sequence is not a valid particle-motion image")
    return FrequencySequence(d), m


# -- frame sequences ---------------------------------------------------------


@dataclass(frozen=True)
class FrameSpec:
    """Offset u and a weakly decreasing profile (s_1, ..., s_k), s_k >= 0."""

    u: int
    profile: tuple[int, ...]

    def __post_init__(self) -> None:
        s = self.profile
        if any(s[i] < s[i + 1] for i in range(len(s) - 1)) or (s and s[-1] < 0):
            raise ValueError(f"profile must be weakly decreasing >= 0, got {s}")

    @property
    def k(self) -> int:
        return len(self.profile)


def _pair_values(s: tuple[int, ...]) -> list[int]:
    """Value of frame pair t (t = 0..s_1-1): the number of s_m exceeding t."""
    if not s or s[0] == 0:
        return []
    out = []
    for t in range(s[0]):
        out.append(sum(1 for x in s if x > t))
    return out


def _frame_dict(u: int, s: tuple[int, ...]) -> dict[int, int]:
    return {u + 2 * t: v for t, v in enumerate(_pair_values(s))}


def frame_sequence(spec: FrameSpec) -> FrequencySequence:
    """The u-frame: pairs (value, 0) at indices u, u+2, ...; pair t holds the
    number of profile entries exceeding t."""
    return FrequencySequence(_frame_dict(spec.u, spec.profile))


def frame_weight(spec: FrameSpec) -> int:
    """sum s_i^2 + (u-1) sum s_i; agrees with frame_sequence(spec).weight."""
    return sum(x * x for x in spec.profile) + (spec.u - 1) * sum(spec.profile)


# -- insertion map, theta chains, inverse ------------------------------------


def lambda_map(bla: MultiPartition, u: int) -> FrequencySequence:
    """Insert a k-tuple of partitions into its u-frame by particle motions.

    Part i of the flattened tuple is inserted with ppm at index u + 2i,
    proceeding from the rightmost pair to the leftmost.
    """
    check_multipartition(bla)
    s = profile(bla)
    parts = flatten_parts(bla)
    d = _frame_dict(u, s)
    for i in range(len(parts) - 1, -1, -1):
        _ppm_dict(d, u + 2 * i, parts[i], check=False)
    return FrequencySequence(d)


@dataclass(frozen=True)
class MotionTrace:
    """Intermediate stages of lambda_map, outermost frame first.

    stages[j] is the sequence after inserting the j rightmost parts, so
    stages[0] is the frame and stages[-1] the final image.  parts[j] is the
    part inserted between stages[j] and stages[j+1] and starts[j] its ppm
    index; foci[j] is where that insertion's focus ended.
    """

    stages: tuple[FrequencySequence, ...]
    parts: tuple[int, ...]
    starts: tuple[int, ...]
    foci: tuple[int, ...]


def theta_chain(bla: MultiPartition, u: int) -> MotionTrace:
    check_multipartition(bla)
    s = profile(bla)
    parts = flatten_parts(bla)
    d = _frame_dict(u, s)
    stages = [FrequencySequence(d)]
    used: list[int] = []
    starts: list[int] = []
    foci: list[int] = []
    for i in range(len(parts) - 1, -1, -1):
        v = _ppm_dict(d, u + 2 * i, parts[i], check=False)
        stages.append(FrequencySequence(d))
        used.append(parts[i])
        starts.append(u + 2 * i)
        foci.append(v)
    return MotionTrace(tuple(stages), tuple(used), tuple(starts), tuple(foci))


def lambda_inverse(f: FrequencySequence, u: int, k: int) -> MultiPartition:
    """Invert lambda_map: recover the k-tuple whose u-frame insertion gives f.

    Stage i strips the pair at u + 2i with reverse_ppm; the recovered pair
    heights must be weakly decreasing and each component non-increasing, or
    f is not in the image.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    mi = f.min_index()
    if mi is not None and mi < u:
        raise ValueError(f"support below the frame offset {u}")
    hi = f.max_index()
    if hi is not None:
        for i in range(u, hi + 1):
            if f.pair_sum(i) > k:
                raise ValueError(f"pair sum at {i} exceeds k={k}")
    d = f.to_dict()
    values: list[int] = []
    parts_low_first: list[int] = []
    i = 0
    while True:
        start = u + 2 * i
        tail_hi = max(d) if d else start - 1
        h = 0
        for j in range(start, tail_hi + 1):
            h = max(h, d.get(j, 0) + d.get(j + 1, 0))
        if h == 0:
            break
        sub, m = reverse_ppm(FrequencySequence({a: c for a, c in d.items() if a >= start}), start)
        d = {a: c for a, c in d.items() if a < start}
        d.update(sub.to_dict())
        if d.get(start, 0) != h or d.get(start + 1, 0) != 0:
            raise ValueError("reverse motion did not land on a frame pair")
        values.append(h)
        parts_low_first.append(m)
        i += 1
    if any(values[t] < values[t + 1] for t in range(len(values) - 1)):
        raise ValueError("recovered frame heights are not weakly decreasing")
    if values and values[0] > k:
        raise ValueError(f"frame height {values[0]} exceeds k={k}")
    s = [sum(1 for v in values if v >= m) for m in range(1, k + 2)]
    comps = []
    for m in range(1, k + 1):
        comp = tuple(parts_low_first[t] for t in range(s[m - 1] - 1, s[m] - 1, -1))
        if any(comp[a] < comp[a + 1] for a in range(len(comp) - 1)):
            raise ValueError("recovered parts are not non-increasing within a component")
        comps.append(comp)
    return tuple(comps)


def plus_map(bla: MultiPartition) -> MultiPartition:
    """Add m to every part of the m-th component."""
    check_multipartition(bla)
    return tuple(
        tuple(p + m for p in comp) for m, comp in enumerate(bla, start=1)
    )


# -- staircase frames with occupied second entries ---------------------------


def tilde_frame_sequence(bla: MultiPartition, r: int, k: int) -> FrequencySequence:
    """Frame with pair t holding (min(k-r, v_t), max(0, v_t-k+r)) at indices
    (1+2t, 2+2t), where v_t is the plain frame height of pair t."""
    if not (0 <= r <= k):
        raise ValueError("need 0 <= r <= k")
    if len(bla) != k:
        raise ValueError(f"expected a {k}-tuple, got {len(bla)} components")
    s = profile(bla)
    d: dict[int, int] = {}
    for t, v in enumerate(_pair_values(s)):
        a = min(k - r, v)
        b = v - a
        if a:
            d[1 + 2 * t] = a
        if b:
            d[2 + 2 * t] = b
    return FrequencySequence(d)


def tilde_lambda(bla: MultiPartition, r: int, k: int) -> FrequencySequence:
    """Insertion into the staircase frame, reduced to a plain 1-frame run:
    raise the parts of component m by max(0, m-k+r) and apply lambda_map at
    offset 1."""
    if not (0 <= r <= k):
        raise ValueError("need 0 <= r <= k")
    if len(bla) != k:
        raise ValueError(f"expected a {k}-tuple, got {len(bla)} components")
    check_multipartition(bla)
    raised = tuple(
        tuple(p + max(0, m - k + r) for p in comp)
        for m, comp in enumerate(bla, start=1)
    )
    return lambda_map(raised, 1)


def tilde_lambda_direct(bla: MultiPartition, r: int, k: int) -> FrequencySequence:
    """Insertion by running ppm directly on the staircase frame; used to
    cross-check the reduction in tilde_lambda."""
    check_multipartition(bla)
    parts = flatten_parts(bla)
    d = tilde_frame_sequence(bla, r, k).to_dict()
    for i in range(len(parts) - 1, -1, -1):
        _ppm_dict(d, 1 + 2 * i, parts[i], check=False)
    return FrequencySequence(d)


# -- boundary-frequency bijection --------------------------------------------


def boundary_values(j: int, r: int) -> list[int]:
    """Admissible focus-index frequencies {l + max(l-(j-r), 0) : 0 <= l <= j}."""
    return sorted({l + max(l - (j - r), 0) for l in range(j + 1)})


def _phi_value(y0: int, j: int, r: int) -> int:
    if j >= r:
        if y0 <= j - r:
            return y0
        t = y0 - (j - r)
        if t % 2 == 0 and 1 <= t // 2 <= r:
            return j - r + t // 2
    else:
        t = y0 - (r - j)
        if t >= 0 and t % 2 == 0 and t // 2 <= j:
            return t // 2
    raise ValueError(f"boundary frequency {y0} not admissible for (j={j}, r={r})")


def _phi_inverse_value(z0: int, j: int, r: int) -> int:
    if not (0 <= z0 <= j):
        raise ValueError(f"boundary frequency {z0} outside 0..{j}")
    if j >= r:
        if z0 <= j - r:
            return z0
        return j - r + 2 * (z0 - (j - r))
    return r - j + 2 * z0


def _with_boundary(f: FrequencySequence, u: int, value: int) -> FrequencySequence:
    d = f.to_dict()
    if value:
        d[u] = value
    elif u in d:
        del d[u]
    return FrequencySequence(d)


def phi(f: FrequencySequence, j: int, r: int, u: int = 0) -> FrequencySequence:
    """Map the admissible boundary frequency of f onto 0..j; all other
    entries are untouched, so the weight is preserved when u = 0."""
    return _with_boundary(f, u, _phi_value(f.get(u), j, r))


def phi_inverse(f: FrequencySequence, j: int, r: int, u: int = 0) -> FrequencySequence:
    return _with_boundary(f, u, _phi_inverse_value(f.get(u), j, r))
