"""Verification harness.

Coefficient-wise comparison of identity sides, exhaustive bijection round
trips, parity-lemma checks, the explicit-motion equivalence grid, seeded
ring-law checks, and mutation-sensitivity guards.  Every check produces a
Report; suites aggregate per-instance reports and never stop a sweep at
the first failure.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Iterable

from . import catalog, families, motion
from .families import SetSpec, element_weight, iter_set, satisfies
from .partitions import FrequencySequence, multipartition_weight
from .series import TruncatedSeries


@dataclass
class Report:
    subject: str
    params: dict
    status: str = "pass"
    order: int | None = None
    max_weight: int | None = None
    first_mismatch: dict | None = None
    elapsed_ms: int = 0
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def fail(self, **mismatch) -> "Report":
        if self.first_mismatch is None:
            self.status = "fail"
            self.first_mismatch = mismatch
        return self

    def to_json_dict(self, with_timing: bool = True) -> dict:
        out: dict = {"subject": self.subject, "params": self.params}
        if self.order is not None:
            out["order"] = self.order
        if self.max_weight is not None:
            out["maxWeight"] = self.max_weight
        out["status"] = self.status
        if self.first_mismatch is not None:
            out["firstMismatch"] = self.first_mismatch
        out["elapsedMs"] = self.elapsed_ms if with_timing else 0
        if self.detail:
            out["detail"] = self.detail
        return out


def _finish(rep: Report, t0: float) -> Report:
    rep.elapsed_ms = int((time.monotonic() - t0) * 1000)
    return rep


# -- identity verification ------------------------------------------------------


def verify_identity(
    name: str,
    params: dict,
    order: int,
    sides: Iterable[str] = ("sum", "product"),
) -> Report:
    """Pairwise coefficient equality of the requested sides through order."""
    t0 = time.monotonic()
    sides = list(sides)
    if len(sides) < 2:
        raise ValueError("need at least two sides to compare")
    rep = Report(subject=name, params=dict(params), order=order)
    values = [(s, catalog.side_evaluator(name, s)(params, order)) for s in sides]
    base_name, base = values[0]
    for other_name, other in values[1:]:
        if other == base:
            continue
        lo = min(base.min_exp, other.min_exp)
        for e in range(lo, order + 1):
            lv, rv = base.coefficient(e), other.coefficient(e)
            if lv != rv:
                rep.fail(
                    exponent=e, left=lv, right=rv, sides=[base_name, other_name]
                )
                break
        break
    return _finish(rep, t0)


# -- bijection suites -------------------------------------------------------------


def _histograms_equal(rep: Report, left: dict, right: dict, tag: str) -> None:
    for w in sorted(set(left) | set(right)):
        if left.get(w, 0) != right.get(w, 0):
            rep.fail(
                weight=w, left=left.get(w, 0), right=right.get(w, 0), check=tag
            )
            return


def bijection_suite(j: int, r: int, k: int, u: int, max_weight: int) -> Report:
    """Exhaustive check of the insertion bijections at one parameter point:

    * lambda round trips between the constrained tuple family and its
      frequency-sequence image, with weight preservation and per-weight
      cardinality equality;
    * the boundary-frequency bijection phi (at offset 0) in both directions;
    * shift invariance: raising the tuple and lowering the frame offset by
      one does not change the image;
    * the staircase-frame insertion as a weight bijection onto the bounded
      family with f_1 <= k - r.
    """
    t0 = time.monotonic()
    rep = Report(
        subject="bijection-suite",
        params={"j": j, "r": r, "k": k, "u": u},
        max_weight=max_weight,
    )
    xspec = SetSpec("X", j=j, r=r, k=k, u=u)
    zspec = SetSpec("Z", j=j, r=r, k=k, u=u)

    x_hist: dict[int, int] = {}
    for bla, frame in iter_set(xspec, max_weight):
        w = multipartition_weight(bla) + frame.weight
        x_hist[w] = x_hist.get(w, 0) + 1
        img = motion.lambda_map(bla, u)
        if img.weight != w:
            rep.fail(check="lambda-weight", weight=w, left=w, right=img.weight)
            break
        if not satisfies(zspec, img):
            rep.fail(check="lambda-image-membership", weight=w,
                     left=repr(bla), right=repr(img))
            break
        if motion.lambda_inverse(img, u, k) != bla:
            rep.fail(check="lambda-round-trip", weight=w, left=repr(bla),
                     right=repr(img))
            break
        # shift invariance: plus-map the tuple, drop the frame offset by one
        if motion.lambda_map(motion.plus_map(bla), u - 1) != img:
            rep.fail(check="shift-invariance", weight=w, left=repr(bla),
                     right=repr(img))
            break

    z_hist: dict[int, int] = {}
    if rep.passed:
        for f in iter_set(zspec, max_weight):
            z_hist[f.weight] = z_hist.get(f.weight, 0) + 1
            bla = motion.lambda_inverse(f, u, k)
            if not satisfies(xspec, (bla, families.family_frame(xspec, bla))):
                rep.fail(check="inverse-image-membership", weight=f.weight,
                         left=repr(f), right=repr(bla))
                break
            if motion.lambda_map(bla, u) != f:
                rep.fail(check="inverse-round-trip", weight=f.weight,
                         left=repr(f), right=repr(bla))
                break
    if rep.passed:
        _histograms_equal(rep, x_hist, z_hist, "cardinality-X-Z")

    if rep.passed:
        _phi_checks(rep, j, r, k, max_weight)
    if rep.passed:
        _staircase_checks(rep, r, k, max_weight)
    return _finish(rep, t0)


def _phi_checks(rep: Report, j: int, r: int, k: int, max_weight: int) -> None:
    yspec = SetSpec("Y", j=j, r=r, k=k, u=0)
    zspec = SetSpec("Z", j=j, r=r, k=k, u=0)
    y_hist: dict[int, int] = {}
    for f in iter_set(yspec, max_weight):
        y_hist[f.weight] = y_hist.get(f.weight, 0) + 1
        z = motion.phi(f, j, r)
        if z.weight != f.weight or not satisfies(zspec, z):
            rep.fail(check="phi-image", weight=f.weight, left=repr(f), right=repr(z))
            return
        if any(i != 0 for i in _changed_indices(f, z)):
            rep.fail(check="phi-touches-only-zero", weight=f.weight,
                     left=repr(f), right=repr(z))
            return
        if motion.phi_inverse(z, j, r) != f:
            rep.fail(check="phi-round-trip", weight=f.weight, left=repr(f),
                     right=repr(z))
            return
    z_hist: dict[int, int] = {}
    for f in iter_set(zspec, max_weight):
        z_hist[f.weight] = z_hist.get(f.weight, 0) + 1
        y = motion.phi_inverse(f, j, r)
        if not satisfies(yspec, y) or motion.phi(y, j, r) != f:
            rep.fail(check="phi-inverse", weight=f.weight, left=repr(f),
                     right=repr(y))
            return
    _histograms_equal(rep, y_hist, z_hist, "cardinality-Y-Z")


def _changed_indices(a: FrequencySequence, b: FrequencySequence) -> list[int]:
    da, db = a.to_dict(), b.to_dict()
    return [i for i in set(da) | set(db) if da.get(i, 0) != db.get(i, 0)]


def _staircase_checks(rep: Report, r: int, k: int, max_weight: int) -> None:
    ospec = SetSpec("O", k=k, r=r)
    bspec = SetSpec("B", k=k, r=r)
    images: dict[int, set] = {}
    for bla, frame in iter_set(ospec, max_weight):
        w = multipartition_weight(bla) + frame.weight
        g = motion.tilde_lambda(bla, r, k)
        if g.weight != w or not satisfies(bspec, g):
            rep.fail(check="staircase-image", weight=w, left=repr(bla),
                     right=repr(g))
            return
        if g != motion.tilde_lambda_direct(bla, r, k):
            rep.fail(check="staircase-reduction", weight=w, left=repr(bla),
                     right=repr(g))
            return
        images.setdefault(w, set()).add(g)
    targets: dict[int, set[FrequencySequence]] = {}
    for f in iter_set(bspec, max_weight):
        targets.setdefault(f.weight, set()).add(f)
    for w in sorted(set(images) | set(targets)):
        li, ri = images.get(w, set()), targets.get(w, set())
        if li != ri:
            rep.fail(check="staircase-onto", weight=w, left=len(li), right=len(ri))
            return


# -- parity suite ------------------------------------------------------------------


def parity_suite(k: int, u: int, max_weight: int) -> Report:
    """Both directions of the stagewise parity equivalence.

    For an even offset: all inserted parts even up to a stage iff every odd
    part of that stage's sequence appears an even number of times; for an
    odd offset the roles of odd and even parts swap.
    """
    t0 = time.monotonic()
    rep = Report(
        subject="parity-suite", params={"k": k, "u": u}, max_weight=max_weight
    )
    pred = (
        families.odd_parts_even_count
        if u % 2 == 0
        else families.even_parts_even_count
    )
    allspec = SetSpec("X", j=k, r=0, k=k, u=u)  # no part constraints
    for bla, frame in iter_set(allspec, max_weight):
        trace = motion.theta_chain(bla, u)
        for t in range(len(trace.parts)):
            before, after = trace.stages[t], trace.stages[t + 1]
            lam = trace.parts[t]
            lhs = pred(before) and lam % 2 == 0
            rhs = pred(after)
            if lhs != rhs:
                rep.fail(
                    check="parity-iff",
                    weight=after.weight,
                    left=f"before={before!r} part={lam} ok={lhs}",
                    right=f"after={after!r} ok={rhs}",
                )
                return _finish(rep, t0)
    return _finish(rep, t0)


# -- explicit-motion suite -----------------------------------------------------------


def explicit_motion_suite(
    span: int = 8, max_entry: int = 4, max_h: int = 4, max_m: int = 12
) -> Report:
    """ppm against its closed form on every admissible start in the grid:
    (h, 0) focus at index 0, entries in 0..max_entry over a window of the
    given span, pair sums at most h, and every motion count up to max_m.
    The pinned illustration instance is always included."""
    t0 = time.monotonic()
    rep = Report(
        subject="explicit-motion-suite",
        params={"span": span, "maxEntry": max_entry, "maxH": max_h, "maxM": max_m},
    )

    def tails(i: int, prev: int, h: int):
        if i >= span:
            yield {}
            return
        for v in range(0, min(max_entry, h - prev) + 1):
            for rest in tails(i + 1, v, h):
                if v:
                    rest = {i: v, **rest}
                yield rest

    checked = 0
    for h in range(1, max_h + 1):
        for tail in tails(2, 0, h):
            f = FrequencySequence({0: h, **tail})
            for m in range(max_m + 1):
                got = motion.ppm(f, 0, m)
                exp = motion.ppm_explicit(f, 0, m)
                checked += 1
                if got != exp:
                    rep.fail(check="explicit-vs-simulated", weight=m,
                             left=repr(got), right=repr(exp))
                    return _finish(rep, t0)
    # pinned: 5 motions from index 1 on (4,0,2,1,3,1) land on (2,1,3,1,1,3), focus 5
    f = FrequencySequence({1: 4, 3: 2, 4: 1, 5: 3, 6: 1})
    want = (FrequencySequence({1: 2, 2: 1, 3: 3, 4: 1, 5: 1, 6: 3}), 5)
    if motion.ppm(f, 1, 5) != want or motion.ppm_explicit(f, 1, 5) != want:
        rep.fail(check="pinned-figure", weight=5, left=repr(motion.ppm(f, 1, 5)),
                 right=repr(want))
    rep.detail["instances"] = checked
    return _finish(rep, t0)


# -- seeded ring-law check -------------------------------------------------------------


def ring_check(seed: int = 0, order: int = 16, trials: int = 120) -> Report:
    """Randomised associativity/commutativity/distributivity of the series
    ring, plus inverse and truncation consistency; deterministic per seed."""
    t0 = time.monotonic()
    rep = Report(
        subject="qseries-ring-laws",
        params={"seed": seed, "trials": trials},
        order=order,
    )
    rng = random.Random(seed)

    # ring laws live on the non-negative cone: below exponent zero the hard
    # window cut at the order breaks associativity, which is why catalog
    # summands apply their (possibly negative) monomial shift only once,
    # at an enlarged working order
    def rand_series() -> TruncatedSeries:
        lo = rng.randint(0, 3)
        coeffs = [rng.randint(-4, 4) for _ in range(order - lo + 1)]
        return TruncatedSeries(order, lo, coeffs)

    for t in range(trials):
        a, b, c = rand_series(), rand_series(), rand_series()
        checks = {
            "add-commutes": a + b == b + a,
            "mul-commutes": a * b == b * a,
            "add-associates": (a + b) + c == a + (b + c),
            "mul-associates": (a * b) * c == a * (b * c),
            "distributes": a * (b + c) == a * b + a * c,
        }
        for name, ok in checks.items():
            if not ok:
                rep.fail(check=name, left=repr(a), right=repr(b))
                return _finish(rep, t0)
        unit = TruncatedSeries(order, 0, [rng.choice((1, -1))] + [
            rng.randint(-3, 3) for _ in range(order)
        ])
        if unit.inverse() * unit != TruncatedSeries.one(order):
            rep.fail(check="inverse", left=repr(unit), right="1")
            return _finish(rep, t0)
    return _finish(rep, t0)


# -- sweeps ---------------------------------------------------------------------------


def _run_instance(args: tuple) -> Report:
    name, params, order, sides = args
    return verify_identity(name, params, order, sides)


def sweep(
    ids: list[str] | None = None,
    k_max: int = 4,
    order: int = 40,
    sides: Iterable[str] | None = None,
    jobs: int = 1,
    seed: int = 0,
) -> list[Report]:
    """Verify a parameter grid over one or all catalog ids; prepends the
    seeded ring-law report.  Reports come back in deterministic order."""
    names = sorted(ids) if ids else sorted(catalog.IDENTITIES)
    work = []
    for name in names:
        ident = catalog.IDENTITIES[name]
        use = list(sides) if sides else ["sum", "product"]
        use = [s for s in use if s in ident.sides]
        if len(use) < 2:
            use = ["sum", "product"]
        for params in catalog.parameter_grid(name, k_max):
            work.append((name, params, order, tuple(use)))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_instance, work))
    else:
        reports = [_run_instance(w) for w in work]
    reports.sort(key=lambda r: (r.subject, sorted(r.params.items())))
    return [ring_check(seed=seed)] + reports


# -- mutation sensitivity ---------------------------------------------------------------


def mutation_reports(order: int = 25, max_weight: int = 12) -> list[Report]:
    """Seeded defects that every healthy suite must catch: a wrong theta
    product exponent, a dropped parity condition, and a swapped flattening
    order.  A report passes when the defect is detected."""
    out = [
        _mutation_wrong_exponent(order),
        _mutation_dropped_parity(order=min(order, 20)),
        _mutation_swapped_flattening(max_weight),
    ]
    return out


def _mutation_wrong_exponent(order: int) -> Report:
    t0 = time.monotonic()
    rep = Report(subject="mutation-wrong-exponent", params={"k": 2, "a": 0},
                 order=order)
    from .series import pochhammer_infinite

    k, a = 2, 0
    good = catalog.sum_side("ak-binom", {"k": k, "a": a}, order)
    # modulus bumped from k+2 to k+3 in the triple product
    bad = (
        catalog.triple_product(a + 1, k + 3, order)
        * pochhammer_infinite(1, 1, 1, order).inverse()
        * pochhammer_infinite(1, 1, 2, order).inverse()
    )
    if good == bad:
        rep.fail(check="mutation-undetected", left="sum", right="perturbed product")
    return _finish(rep, t0)


def _mutation_dropped_parity(order: int) -> Report:
    t0 = time.monotonic()
    params = {"k": 2, "j": 1, "r": 0}
    rep = Report(subject="mutation-dropped-parity", params=params, order=order)
    j, r, k = params["j"], params["r"], params["k"]
    counts: dict[int, int] = {}
    for f in families._iter_freq(  # Zo minus its parity condition
        0, k, order, None, list(range(j + 1)),
        lambda f0, f1: f0 <= j - max(f0 + f1 - (k - r), 0),
    ):
        counts[f.weight] = counts.get(f.weight, 0) + 1
    mutated = TruncatedSeries.from_dict(counts, order)
    if mutated == catalog.sum_side("main", params, order):
        rep.fail(check="mutation-undetected", left="set", right="sum")
    return _finish(rep, t0)


def _mutation_swapped_flattening(max_weight: int) -> Report:
    t0 = time.monotonic()
    rep = Report(subject="mutation-swapped-flattening", params={"k": 2, "u": 0},
                 max_weight=max_weight)
    k, u = 2, 0
    spec = SetSpec("X", j=k, r=0, k=k, u=u)
    images: dict[int, list] = {}
    broke = False
    for bla, frame in iter_set(spec, max_weight):
        w = multipartition_weight(bla) + frame.weight
        d = motion._frame_dict(u, families.profile(bla))
        parts = list(reversed(motion.flatten_parts(bla)))
        try:
            for i in range(len(parts) - 1, -1, -1):
                motion._ppm_dict(d, u + 2 * i, parts[i], check=False)
        except (ValueError, RuntimeError):
            broke = True
            break
        images.setdefault(w, []).append(FrequencySequence(d))
    if not broke:
        for w, seq in images.items():
            if len(seq) != len(set(seq)):
                broke = True  # two tuples collide: no longer a bijection
                break
    if not broke:
        rep.fail(check="mutation-undetected", left="swapped", right="bijection")
    return _finish(rep, t0)
