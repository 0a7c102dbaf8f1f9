"""Acceptance suite.

One test per criterion; each prints a single pass/fail line (run pytest
with -s to see them).  Every comparison is coefficient-exact: these are
identities of formal power series, so there are no tolerances anywhere.
"""

import time

from qparity import catalog, verify
from qparity.families import SetSpec, enumerate_set


def _line(num: int, ok: bool, text: str, secs: float) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {num:2d}] {status}  {text}  ({secs:.1f}s)")
    assert ok, f"criterion {num}: {text}"


def _grid_all_sides(name: str, k_max: int, order: int, set_order: int):
    """sum = product at the full order, then every available set route
    against the sum at the set order; returns the failing reports."""
    bad = []
    for params in catalog.parameter_grid(name, k_max):
        rep = verify.verify_identity(name, params, order, ("sum", "product"))
        if not rep.passed:
            bad.append(rep)
            continue
        routes = ["set-" + r for r in catalog.IDENTITIES[name].set_families]
        if routes:
            rep = verify.verify_identity(
                name, params, set_order, ["sum", *routes]
            )
            if not rep.passed:
                bad.append(rep)
    return bad


def test_criterion_1_rogers_ramanujan():
    t0 = time.monotonic()
    ok = True
    for a in (0, 1):
        ok &= verify.verify_identity("rr", {"a": a}, 60).passed

    def count_mod5(n):
        parts = [p for p in range(1, n + 1) if p % 5 in (2, 3)]

        def rec(left, idx):
            if left == 0:
                return 1
            return sum(
                rec(left - parts[i] * c, i + 1)
                for i in range(idx, len(parts))
                for c in range(1, left // parts[i] + 1)
            )

        return rec(n, 0)

    spot = catalog.product_side("rr", {"a": 0}, 10).coefficient(8)
    ok &= spot == 3 == count_mod5(8)
    secs = time.monotonic() - t0
    ok &= secs < 1.0
    _line(1, ok, "Rogers-Ramanujan sum = product through order 60, "
          "q^8 spot value 3, under 1s", secs)


def test_criterion_2_main_theorem_all_routes():
    t0 = time.monotonic()
    bad = _grid_all_sides("main", k_max=4, order=40, set_order=25)
    secs = time.monotonic() - t0
    ok = not bad and secs < 120.0
    _line(2, ok, "main theorem: Z/X/Y enumerations = sum = products for "
          "j+r <= k <= 4 (order 40, sets 25), under 2min", secs)


def test_criterion_3_even_theorems_and_splitting():
    t0 = time.monotonic()
    bad = _grid_all_sides("even1", 4, 40, 25)
    bad += _grid_all_sides("even2", 4, 40, 25)
    for params in catalog.parameter_grid("splitting-even2", 4):
        rep = verify.verify_identity("splitting-even2", params, 25)
        if not rep.passed:
            bad.append(rep)
    secs = time.monotonic() - t0
    _line(3, not bad, "even-parity theorems (incl. shifted-frame X routes) "
          "and the (1+q) splitting identity, k <= 4", secs)


def test_criterion_4_unified_theorems_and_collapse():
    t0 = time.monotonic()
    bad = []
    for name in ("w-unified", "wbar-unified"):
        for params in catalog.parameter_grid(name, 4):
            rep = verify.verify_identity(
                name, params, 40, ("sum", "product", "set-Z")
            )
            if not rep.passed:
                bad.append(rep)
    collapse_ok = True
    for k in range(1, 5):
        for a in range(1, k + 1, 2):
            lhs = enumerate_set(SetSpec("Wbar", k=k, a=a), 20)
            rhs = enumerate_set(SetSpec("Wbar", k=k, a=a - 1), 20)
            collapse_ok &= lhs == rhs
    secs = time.monotonic() - t0
    _line(4, not bad and collapse_ok,
          "unified even/odd-parity identities (set = sum = products, "
          "order 40) plus the odd-a collapse through weight 20", secs)


def test_criterion_5_distinct_odd_families():
    t0 = time.monotonic()
    bad = []
    for name in ("cor-odd", "cor-even", "ak-cor2", "ak-binom", "ak-nform",
                 "ak-modified"):
        for params in catalog.parameter_grid(name, 4):
            rep = verify.verify_identity(name, params, 40)
            if not rep.passed:
                bad.append(rep)
    laws_ok = True
    for k in range(1, 5):
        for a in range(0, k):
            p = {"k": k, "a": a}
            diff = catalog.sum_side("ak-cor2", p, 40) - catalog.sum_side(
                "ak-cor2", {"k": k, "a": a + 1}, 40
            )
            laws_ok &= diff == catalog.sum_side("ak-modified", p, 40)
            laws_ok &= catalog.sum_side("ak-binom", p, 40) == catalog.sum_side(
                "ak-nform", p, 40
            )
    secs = time.monotonic() - t0
    _line(5, not bad and laws_ok,
          "corollaries and both printed forms of the distinct/odd identity, "
          "plus the difference law, k <= 4 order 40", secs)


def test_criterion_6_background_and_open_identities():
    t0 = time.monotonic()
    bad = []
    for name in ("ag", "stanton", "bressoud-even", "bressoud-33",
                 "stanton-binomial"):
        for params in catalog.parameter_grid(name, 4):
            rep = verify.verify_identity(name, params, 40)
            if not rep.passed:
                bad.append(rep)
    for params in catalog.parameter_grid("open1", 4):
        if not verify.verify_identity("open1", params, 30).passed:
            bad.append(("open1", params))
    for params in catalog.parameter_grid("open2", 3):
        if not verify.verify_identity("open2", params, 30).passed:
            bad.append(("open2", params))
    secs = time.monotonic() - t0
    ok = not bad and secs < 300.0
    _line(6, ok, "background identities at order 40 and both open-problem "
          "identities at order 30, under 5min", secs)


def test_criterion_7_bijection_suites():
    t0 = time.monotonic()
    bad = []
    for k in (1, 2, 3):
        for u in (-1, 0, 1):
            for j in range(0, k + 1):
                for r in range(0, k - j + 1):
                    rep = verify.bijection_suite(j, r, k, u, 18)
                    if not rep.passed:
                        bad.append(rep.to_json_dict())
    secs = time.monotonic() - t0
    _line(7, not bad, "insertion bijections: round trips, cardinalities, "
          "boundary map, shift invariance, staircase frames "
          "(k <= 3, u in {-1,0,1}, weight 18)", secs)


def test_criterion_8_parity_lemmas():
    t0 = time.monotonic()
    ok = True
    for k in (1, 2, 3):
        for u in (-1, 0, 1):
            ok &= verify.parity_suite(k, u, 14).passed
    secs = time.monotonic() - t0
    _line(8, ok, "stagewise parity equivalences, both offsets and both "
          "directions, weight <= 14, k <= 3", secs)


def test_criterion_9_explicit_motion_grid():
    t0 = time.monotonic()
    rep = verify.explicit_motion_suite(span=8, max_entry=4, max_h=4, max_m=12)
    secs = time.monotonic() - t0
    _line(9, rep.passed, "closed-form motion = step simulation on the full "
          f"grid ({rep.detail.get('instances', 0)} instances) incl. the "
          "pinned illustration", secs)


def test_criterion_10_mutation_sensitivity():
    t0 = time.monotonic()
    reports = verify.mutation_reports()
    ok = len(reports) == 3 and all(r.passed for r in reports)
    secs = time.monotonic() - t0
    _line(10, ok, "seeded defects (wrong product exponent, dropped parity, "
          "swapped flattening) are all detected", secs)
