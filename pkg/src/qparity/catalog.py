"""The identity catalog.

Every displayed identity gets an id with evaluators for its sides, all
returning exact TruncatedSeries:

* ``sum_side``     the multisum, evaluated tuple by tuple with the
                   summation cap from ``summation_bound``;
* ``product_side`` the infinite product or sum of (triple) products; for
                   the open-problem ids this slot holds the identity's
                   second multisum, and for the splitting identity both
                   slots are built from set enumerations;
* ``set_side``     the weight histogram of the attached family, along the
                   requested enumeration route (Z, X or Y).

Multisums run at an internal working order N + k so that summands whose
monomial exponent is negative stay exact through N; every returned series
is asserted to have no negative exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable

from .families import SetSpec, weight_histogram
from .series import (
    TruncatedSeries,
    pochhammer_finite,
    pochhammer_infinite,
)

Params = dict[str, int]


# -- summation caps -----------------------------------------------------------


def s_variable_bound(N: int, k: int) -> int:
    """Smallest cap c with (c+1)^2 - 2(c+1) - (k-1) > N.

    Every catalog multisum in the s-variables has summand exponent at least
    s_1^2 - 2 s_1 - (k-1), so tuples with s_1 beyond the cap only feed
    exponents above N.
    """
    t = 0
    while t * t - 2 * t - (k - 1) <= N:
        t += 1
    return t - 1


def _triangular_bound(N: int) -> int:
    """Largest n with n(n+1)/2 <= N (cap for the triangular-exponent sums)."""
    n = 0
    while (n + 1) * (n + 2) // 2 <= N:
        n += 1
    return n


# -- shared series pieces ------------------------------------------------------


def _inv_poch_table(b: int, dmax: int, order: int) -> list[TruncatedSeries]:
    """Inverses of (q^b;q^b)_d for d = 0..dmax."""
    out = [TruncatedSeries.one(order)]
    for d in range(1, dmax + 1):
        out.append(pochhammer_finite(1, b, b, d, order).inverse())
    return out


def triple_product(x: int, modulus: int, order: int) -> TruncatedSeries:
    """(q^x, q^{modulus-x}, q^modulus; q^modulus)_infty for 0 <= x <= modulus.

    A vanishing factor (exponent 0, i.e. x = 0 or x = modulus) makes the
    whole product the zero series; exponents outside [0, modulus] are a
    parameter error.
    """
    if x < 0 or x > modulus:
        raise ValueError(f"triple-product exponent {x} outside 0..{modulus}")
    if x == 0 or x == modulus:
        return TruncatedSeries.zero(order)
    out = pochhammer_infinite(1, x, modulus, order)
    out = out * pochhammer_infinite(1, modulus - x, modulus, order)
    return out * pochhammer_infinite(1, modulus, modulus, order)


ExtraFactor = Callable[[int | None, int, int], TruncatedSeries]


def _eval_multisum(
    N: int,
    lin: list[int],
    base: int = 2,
    quad: int = 1,
    last_base: int | None = None,
    extras: dict[int, ExtraFactor] | None = None,
) -> TruncatedSeries:
    """sum over s_1 >= ... >= s_k >= 0 of

        q^{sum_i quad*s_i^2 + lin[i-1]*s_i} * prod extras
        / prod_{i=2}^k (q^base;q^base)_{s_{i-1}-s_i} / (q^last;q^last)_{s_k}

    exact through N.  extras maps a level i to a factor builder called as
    fn(s_{i-1}, s_i, work_order).
    """
    k = len(lin)
    cap = s_variable_bound(N, k)
    work = N + k
    inv_diff = _inv_poch_table(base, cap, work)
    inv_last = (
        inv_diff
        if last_base in (None, base)
        else _inv_poch_table(last_base, cap, work)
    )
    extras = extras or {}
    acc = TruncatedSeries.zero(N)

    def rec(level: int, s_prev: int, partial: TruncatedSeries, e: int) -> None:
        nonlocal acc
        hi = cap if level == 1 else s_prev
        for s in range(hi + 1):
            de = quad * s * s + lin[level - 1] * s
            if e + de - (k - level) > N and s >= 1:
                break  # exponents only grow with s from here on
            term = partial if level == 1 else partial * inv_diff[s_prev - s]
            fn = extras.get(level)
            if fn is not None:
                term = term * fn(None if level == 1 else s_prev, s, work)
            if level == k:
                final = term * inv_last[s]
                acc = acc + final.shifted(1, e + de).truncated(N)
            else:
                rec(level + 1, s, term, e + de)

    rec(1, cap, TruncatedSeries.one(work), 0)
    return acc


# -- the two printed forms of the distinct/odd-parts identity -----------------


def _ak_binom_sum(p: Params, N: int) -> TruncatedSeries:
    a, k = p["a"], p["k"]
    cap = _triangular_bound(N)
    inv_last = _inv_poch_table(1, cap + 1, N)
    qbin_cache: dict[tuple[int, int], TruncatedSeries] = {}

    def qbin(n: int, j: int) -> TruncatedSeries:
        key = (n, j)
        if key not in qbin_cache:
            from .series import qbinomial

            qbin_cache[key] = qbinomial(n, j, 1, N)
        return qbin_cache[key]

    acc = TruncatedSeries.zero(N)

    def rec(i: int, n_next: int, partial: TruncatedSeries, e: int) -> None:
        # choose n_i, capped by n_{i+1} + delta_{a,i} (the binomial vanishes beyond)
        nonlocal acc
        hi = min(cap, n_next + (1 if a == i else 0))
        for n in range(hi + 1):
            de = n * (n + 1) // 2
            if e + de > N:
                break
            term = partial * qbin(n_next + (1 if a == i else 0), n)
            if i == 1:
                acc = acc + term.shifted(1, e + de).truncated(N)
            else:
                rec(i - 1, n, term, e + de)

    # outermost variable n_k carries the 1/(q)_{n_k} factor
    for nk in range(cap + 1):
        e = nk * (nk + 1) // 2
        if e > N:
            break
        if k == 1:
            acc = acc + inv_last[nk].shifted(1, e).truncated(N)
        else:
            rec(k - 1, nk, inv_last[nk], e)
    return acc


def _ak_nform_sum(p: Params, N: int) -> TruncatedSeries:
    a, k = p["a"], p["k"]
    cap = _triangular_bound(N)
    inv = _inv_poch_table(1, cap + 2, N)
    neg_fin = [pochhammer_finite(-1, 1, 1, n, N) for n in range(cap + 2)]
    neg_inf = pochhammer_infinite(-1, 1, 1, N)
    # the (-q;q) factor reads N_2 + delta_{a+1,2} (N_2 itself is infinite
    # when k = 1, handled below)
    bump = 1 if a == 1 else 0
    acc = TruncatedSeries.zero(N)

    def emit(nvals: dict[int, int]) -> None:
        nonlocal acc
        e = sum(n * (n + 1) // 2 for i, n in nvals.items() if i >= 2)
        if e > N:
            return
        term = neg_fin[nvals[2] + bump]
        na1 = nvals[a + 1]
        if a >= 1:
            term = term * TruncatedSeries.from_dict({0: 1, na1 + 1: -1}, N)
        for i in range(2, k + 1):
            d = nvals[i] - nvals[i - 1]
            if i == a + 1 and a >= 1:
                d += 1  # merged with the (1 - q^{N_{a+1}-N_a+1}) denominator
            term = term * inv[d]
        acc = acc + term.shifted(1, e).truncated(N)

    def lower(i: int, hi: int, nvals: dict[int, int]) -> None:
        # chain N_2 <= ... <= N_a <= N_{a+1} + 1, chosen downward from N_a
        if i < 2:
            emit(nvals)
            return
        for n in range(hi + 1):
            nvals[i] = n
            lower(i - 1, n, nvals)
        del nvals[i]

    def upper(i: int, lo: int, nvals: dict[int, int], e: int) -> None:
        # chain N_{a+1} <= ... <= N_k, chosen upward from N_{a+1}
        if i > k:
            lower(a, nvals[a + 1] + 1 if a >= 2 else 0, nvals)
            return
        for n in range(lo, cap + 1):
            de = n * (n + 1) // 2
            if e + de > N:
                break
            nvals[i] = n
            upper(i + 1, n, nvals, e + de)
        if i in nvals:
            del nvals[i]

    if k == 1:
        return neg_inf.truncated(N)
    base = {1: 0}
    upper(max(a + 1, 2), 0, base, 0)
    return acc


# -- identity registry ---------------------------------------------------------


@dataclass(frozen=True)
class Identity:
    name: str
    param_names: tuple[str, ...]
    constraint: str
    check: Callable[[Params], bool]
    sum_fn: Callable[[Params, int], TruncatedSeries]
    product_fn: Callable[[Params, int], TruncatedSeries]
    set_families: dict[str, Callable[[Params], SetSpec]]
    note: str = ""

    @property
    def sides(self) -> list[str]:
        out = ["sum", "product"]
        out.extend(f"set-{route}" for route in self.set_families)
        return out


def _inv_q(order: int) -> TruncatedSeries:
    return pochhammer_infinite(1, 1, 1, order).inverse()


def _inv_q2(order: int) -> TruncatedSeries:
    return pochhammer_infinite(1, 2, 2, order).inverse()


def _neg(m: int, order: int) -> TruncatedSeries:
    return pochhammer_infinite(-1, m, 2, order)


def _plus_q(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    """s + q*t at the shared order."""
    return s + t.shifted(1, 1)


# sum-side linear coefficient vectors


def _lin_w(p: Params) -> list[int]:
    a, k = p["a"], p["k"]
    return [2 if i > a and (i - a) % 2 == 1 else 0 for i in range(1, k + 1)]


def _lin_wbar(p: Params) -> list[int]:
    a, k = p["a"], p["k"]
    return [
        (1 if i % 2 == 1 else -1) if i <= a else 1 for i in range(1, k + 1)
    ]


def _lin_main(p: Params) -> list[int]:
    j, r, k = p["j"], p["r"], p["k"]
    out = []
    for i in range(1, k + 1):
        if i <= j:
            out.append(-1)
        elif i <= k - r:
            out.append(1 if (i - j) % 2 == 1 else -1)
        else:
            out.append(1)
    return out


def _lin_even(p: Params, tilde: bool) -> list[int]:
    a, b, k = p["a"], p["b"], p["k"]
    lo = k - 2 * b + (2 if tilde else 1)
    plus = {lo + 2 * t for t in range(b)}
    out = []
    for i in range(1, k + 1):
        if i % 2 == 0 and i <= 2 * a:
            out.append(-2)
        elif i in plus:
            out.append(2)
        else:
            out.append(0)
    return out


def _lin_cor_odd(p: Params) -> list[int]:
    a, k = p["a"], p["k"]
    return [
        -1 if i <= a else (1 if (i - a) % 2 == 1 else -1)
        for i in range(1, k + 1)
    ]


def _lin_ak(p: Params) -> list[int]:
    a, k = p["a"], p["k"]
    return [-1 if i <= k - a else 1 for i in range(1, k + 1)]


def _one_minus_q2s(_prev: int | None, s: int, order: int) -> TruncatedSeries:
    if s == 0:
        return TruncatedSeries.zero(order)  # 1 - q^0
    return TruncatedSeries.from_dict({0: 1, 2 * s: -1}, order)


def _registry() -> dict[str, Identity]:
    ids: dict[str, Identity] = {}

    def add(name, param_names, constraint, check, sum_fn, product_fn,
            set_families=None, note=""):
        ids[name] = Identity(
            name, tuple(param_names), constraint, check, sum_fn, product_fn,
            set_families or {}, note,
        )

    add(
        "rr", ("a",), "a in {0, 1}",
        lambda p: p["a"] in (0, 1),
        lambda p, N: _eval_multisum(N, [1 - p["a"]], base=1),
        lambda p, N: (
            pochhammer_infinite(1, 2 - p["a"], 5, N)
            * pochhammer_infinite(1, 3 + p["a"], 5, N)
        ).inverse(),
    )
    add(
        "ag", ("k", "r"), "k >= 1, 0 <= r <= k",
        lambda p: p["k"] >= 1 and 0 <= p["r"] <= p["k"],
        lambda p, N: _eval_multisum(
            N, [1 if i > p["k"] - p["r"] else 0 for i in range(1, p["k"] + 1)],
            base=1,
        ),
        lambda p, N: triple_product(p["k"] + 1 - p["r"], 2 * p["k"] + 3, N)
        * _inv_q(N),
    )
    add(
        "stanton", ("k", "j", "r"), "k >= 1, j, r >= 0, j + r <= k",
        lambda p: p["k"] >= 1 and p["j"] >= 0 and p["r"] >= 0
        and p["j"] + p["r"] <= p["k"],
        lambda p, N: _eval_multisum(
            N,
            [
                -1 if i <= p["j"] else (1 if i > p["k"] - p["r"] else 0)
                for i in range(1, p["k"] + 1)
            ],
            base=1,
        ),
        lambda p, N: _sum_triples(
            [(p["k"] + 1 - p["r"] + p["j"] - 2 * s, 1) for s in range(p["j"] + 1)],
            2 * p["k"] + 3, N,
        )
        * _inv_q(N),
    )
    add(
        "stanton-binomial", ("k", "j", "r"), "k >= 1, j, r >= 0, j + r <= k",
        lambda p: p["k"] >= 1 and p["j"] >= 0 and p["r"] >= 0
        and p["j"] + p["r"] <= p["k"],
        _stanton_binomial_sum,
        lambda p, N: _sum_triples(
            [
                (p["k"] + 1 - p["r"] + p["j"] - 2 * s, comb(p["j"], s))
                for s in range(p["j"] + 1)
            ],
            2 * p["k"] + 3, N,
        )
        * _inv_q(N),
        note="binomial extension; only the printed default factor choice",
    )
    add(
        "bressoud-even", ("k", "r"), "k >= 1, 0 <= r <= k",
        lambda p: p["k"] >= 1 and 0 <= p["r"] <= p["k"],
        lambda p, N: _eval_multisum(
            N, [1 if i > p["k"] - p["r"] else 0 for i in range(1, p["k"] + 1)],
            base=1, last_base=2,
        ),
        lambda p, N: triple_product(p["k"] + 1 - p["r"], 2 * p["k"] + 2, N)
        * _inv_q(N),
    )
    add(
        "bressoud-33", ("k", "j"), "k >= 1, 0 <= j <= k",
        lambda p: p["k"] >= 1 and 0 <= p["j"] <= p["k"],
        lambda p, N: _eval_multisum(
            N, [-1 if i <= p["j"] else 0 for i in range(1, p["k"] + 1)], base=1
        ),
        lambda p, N: _sum_triples(
            [(p["k"] + 2 - p["j"] + 2 * s, 1) for s in range(p["j"] + 1)],
            2 * p["k"] + 3, N,
        )
        * _inv_q(N),
    )
    add(
        "w-unified", ("k", "a"), "k >= 1, 0 <= a <= k",
        lambda p: p["k"] >= 1 and 0 <= p["a"] <= p["k"],
        lambda p, N: _eval_multisum(N, _lin_w(p)),
        _w_unified_product,
        {"Z": lambda p: SetSpec("W", k=p["k"], a=p["a"])},
    )
    add(
        "wbar-unified", ("k", "a"), "k >= 1, 0 <= a <= k",
        lambda p: p["k"] >= 1 and 0 <= p["a"] <= p["k"],
        lambda p, N: _eval_multisum(N, _lin_wbar(p)),
        lambda p, N: _neg(2, N)
        * triple_product(2 * ((p["a"] + 2) // 2), 2 * p["k"] + 4, N)
        * _inv_q2(N),
        {"Z": lambda p: SetSpec("Wbar", k=p["k"], a=p["a"])},
    )
    add(
        "main", ("k", "j", "r"), "k >= 1, j, r >= 0, j + r <= k",
        lambda p: p["k"] >= 1 and p["j"] >= 0 and p["r"] >= 0
        and p["j"] + p["r"] <= p["k"],
        lambda p, N: _eval_multisum(N, _lin_main(p)),
        lambda p, N: _neg(2, N)
        * _sum_triples(
            [
                (2 * ((p["k"] + 2 - p["r"] + p["j"] - 2 * s) // 2), 1)
                for s in range(p["j"] + 1)
            ],
            2 * p["k"] + 4, N,
        )
        * _inv_q2(N),
        {
            "Z": lambda p: SetSpec("Zo", j=p["j"], r=p["r"], k=p["k"]),
            "X": lambda p: SetSpec("Xo", j=p["j"], r=p["r"], k=p["k"]),
            "Y": lambda p: SetSpec("Yo", j=p["j"], r=p["r"], k=p["k"]),
        },
    )
    add(
        "even1", ("k", "a", "b"), "k >= 1, a, b >= 0, 2a + 2b <= k",
        lambda p: p["k"] >= 1 and p["a"] >= 0 and p["b"] >= 0
        and 2 * p["a"] + 2 * p["b"] <= p["k"],
        lambda p, N: _eval_multisum(N, _lin_even(p, tilde=False)),
        lambda p, N: _neg(1, N)
        * _sum_triples(
            [
                (p["k"] + 1 + 2 * p["a"] - 2 * p["b"] - 4 * s, 1)
                for s in range(p["a"] + 1)
            ],
            2 * p["k"] + 4, N,
        )
        * _inv_q2(N),
        {
            "Z": lambda p: SetSpec("Ze", a=p["a"], b=p["b"], k=p["k"]),
            "X": lambda p: SetSpec("Xe", a=p["a"], b=p["b"], k=p["k"]),
            "Y": lambda p: SetSpec("Ye", a=p["a"], b=p["b"], k=p["k"]),
        },
    )
    add(
        "even2", ("k", "a", "b"), "k >= 1, a, b >= 0, 2a + 2b - 1 <= k",
        lambda p: p["k"] >= 1 and p["a"] >= 0 and p["b"] >= 0
        and 2 * p["a"] + 2 * p["b"] - 1 <= p["k"],
        lambda p, N: _eval_multisum(N, _lin_even(p, tilde=True)),
        _even2_product,
        {
            "Z": lambda p: SetSpec("ZeTilde", a=p["a"], b=p["b"], k=p["k"]),
            "X": lambda p: SetSpec("XeTilde", a=p["a"], b=p["b"], k=p["k"]),
        },
        note="product implemented exactly as printed (bracketed two-term sum)",
    )
    add(
        "cor-odd", ("k", "a"), "k >= 1, 0 <= a <= k",
        lambda p: p["k"] >= 1 and 0 <= p["a"] <= p["k"],
        lambda p, N: _eval_multisum(N, _lin_cor_odd(p)),
        lambda p, N: _neg(2, N)
        * _sum_triples(
            [
                (2 * ((p["k"] - i + 2) // 2), 1) for i in range(p["a"] + 1)
            ],
            2 * p["k"] + 4, N,
        )
        * _inv_q2(N),
    )
    add(
        "cor-even", ("k", "a"), "k >= 1, 0 <= 2a <= k",
        lambda p: p["k"] >= 1 and 0 <= 2 * p["a"] <= p["k"],
        lambda p, N: _eval_multisum(
            N,
            [
                -2 if i % 2 == 0 and i <= 2 * p["a"] else 0
                for i in range(1, p["k"] + 1)
            ],
        ),
        lambda p, N: _neg(1, N)
        * _sum_triples(
            [(p["k"] + 1 - 2 * i, 1) for i in range(p["a"] + 1)],
            2 * p["k"] + 4, N,
        )
        * _inv_q2(N),
    )
    add(
        "ak-cor2", ("k", "a"), "k >= 1, 0 <= a <= k",
        lambda p: p["k"] >= 1 and 0 <= p["a"] <= p["k"],
        lambda p, N: _eval_multisum(N, _lin_ak(p)),
        lambda p, N: _sum_triples(
            [(2 * i + 2, 1) for i in range(p["a"], p["k"] + 1)],
            2 * p["k"] + 4, N,
        )
        * _inv_q2(N)
        * pochhammer_infinite(1, 2, 4, N).inverse(),
    )
    add(
        "ak-binom", ("k", "a"), "k >= 1, 0 <= a <= k-1",
        lambda p: p["k"] >= 1 and 0 <= p["a"] <= p["k"] - 1,
        _ak_binom_sum,
        _ak_product,
    )
    add(
        "ak-nform", ("k", "a"), "k >= 1, 0 <= a <= k-1",
        lambda p: p["k"] >= 1 and 0 <= p["a"] <= p["k"] - 1,
        _ak_nform_sum,
        _ak_product,
    )
    add(
        "ak-modified", ("k", "a"), "k >= 1, 0 <= a <= k-1",
        lambda p: p["k"] >= 1 and 0 <= p["a"] <= p["k"] - 1,
        lambda p, N: _eval_multisum(
            N, _lin_ak(p), extras={p["k"] - p["a"]: _one_minus_q2s}
        ),
        lambda p, N: triple_product(2 * p["a"] + 2, 2 * p["k"] + 4, N)
        * _inv_q2(N)
        * pochhammer_infinite(1, 2, 4, N).inverse(),
        note="the half-power identity verified under q -> q^2 as a difference form",
    )
    add(
        "open1", ("k", "a"), "k >= 1, 0 <= 2a <= k",
        lambda p: p["k"] >= 1 and 0 <= 2 * p["a"] <= p["k"],
        lambda p, N: _eval_multisum(
            N, _lin_ak(p), extras={p["k"] - p["a"]: _one_minus_q2s}
        ),
        lambda p, N: _eval_multisum(N, _lin_wbar({"a": 2 * p["a"], "k": p["k"]})),
        note="both sides are multisums; the second occupies the product slot",
    )
    add(
        "open2", ("k", "j", "r"), "k >= 1, j, r >= 0, j + r <= k",
        lambda p: p["k"] >= 1 and p["j"] >= 0 and p["r"] >= 0
        and p["j"] + p["r"] <= p["k"],
        _open2_lhs,
        lambda p, N: _eval_multisum(
            N, _lin_even({"a": p["j"], "b": p["r"], "k": 2 * p["k"]}, tilde=True)
        ),
        note="k-variable doubled sum against the 2k-variable parity sum",
    )
    add(
        "splitting-even2", ("k", "a", "b"), "k >= 1, a >= 0, b >= 1, 2a + 2b <= k",
        lambda p: p["k"] >= 1 and p["a"] >= 0 and p["b"] >= 1
        and 2 * p["a"] + 2 * p["b"] <= p["k"],
        _splitting_lhs,
        _splitting_rhs,
        note="both sides are enumeration-backed series",
    )
    return ids


def _sum_triples(
    terms: list[tuple[int, int]], modulus: int, N: int
) -> TruncatedSeries:
    acc = TruncatedSeries.zero(N)
    for x, mult in terms:
        t = triple_product(x, modulus, N)
        if mult != 1:
            t = t.shifted(mult, 0)
        acc = acc + t
    return acc


def _w_unified_product(p: Params, N: int) -> TruncatedSeries:
    a, k = p["a"], p["k"]
    mod = 2 * k + 4
    first = triple_product(k - 2 * ((k - a) // 2) + 1, mod, N)
    second = triple_product(k - 2 * ((k - a + 1) // 2) + 1, mod, N)
    return _neg(3, N) * _plus_q(first, second) * _inv_q2(N)


def _even2_product(p: Params, N: int) -> TruncatedSeries:
    a, b, k = p["a"], p["b"], p["k"]
    mod = 2 * k + 4
    acc = TruncatedSeries.zero(N)
    for s in range(a + 1):
        first = triple_product(k + 3 + 2 * a - 2 * b - 4 * s, mod, N)
        second = triple_product(k + 1 + 2 * a - 2 * b - 4 * s, mod, N)
        acc = acc + _plus_q(first, second)
    return _neg(3, N) * acc * _inv_q2(N)


def _ak_product(p: Params, N: int) -> TruncatedSeries:
    a, k = p["a"], p["k"]
    return (
        triple_product(a + 1, k + 2, N)
        * _inv_q(N)
        * pochhammer_infinite(1, 1, 2, N).inverse()
    )


def _stanton_binomial_sum(p: Params, N: int) -> TruncatedSeries:
    j = p["j"]
    extras: dict[int, ExtraFactor] = {}

    def plus_pair(prev: int | None, s: int, order: int) -> TruncatedSeries:
        if prev + s == 0:
            return TruncatedSeries.monomial(2, 0, order)  # 1 + q^0
        return TruncatedSeries.from_dict({0: 1, prev + s: 1}, order)

    for level in range(2, j + 1):
        extras[level] = plus_pair
    lin = [
        -1 if i <= j else (1 if i > p["k"] - p["r"] else 0)
        for i in range(1, p["k"] + 1)
    ]
    return _eval_multisum(N, lin, base=1, extras=extras)


def _open2_lhs(p: Params, N: int) -> TruncatedSeries:
    j, r, k = p["j"], p["r"], p["k"]

    def tail(prev: int | None, s: int, order: int) -> TruncatedSeries:
        return pochhammer_infinite(-1, 1 + 2 * s, 2, order)

    lin = [
        -2 if i <= j else (2 if i > k - r else 0) for i in range(1, k + 1)
    ]
    return _eval_multisum(N, lin, quad=2, extras={k: tail})


def _splitting_lhs(p: Params, N: int) -> TruncatedSeries:
    hist = weight_histogram(
        SetSpec("ZeTilde", a=p["a"], b=p["b"], k=p["k"]), N
    )
    return hist * TruncatedSeries.from_dict({0: 1, 1: 1}, N)


def _splitting_rhs(p: Params, N: int) -> TruncatedSeries:
    lower = weight_histogram(SetSpec("Ze", a=p["a"], b=p["b"] - 1, k=p["k"]), N)
    same = weight_histogram(SetSpec("Ze", a=p["a"], b=p["b"], k=p["k"]), N)
    return lower + same.shifted(1, 1)


IDENTITIES: dict[str, Identity] = _registry()


# -- public operations ---------------------------------------------------------


def _get(name: str) -> Identity:
    if name not in IDENTITIES:
        raise ValueError(f"unknown identity id {name!r}")
    return IDENTITIES[name]


def validate_params(name: str, params: Params) -> None:
    ident = _get(name)
    missing = [n for n in ident.param_names if n not in params]
    extra = [n for n in params if n not in ident.param_names]
    if missing or extra:
        raise ValueError(
            f"{name} takes parameters {ident.param_names}; "
            f"missing {missing}, unexpected {extra}"
        )
    if not ident.check(params):
        raise ValueError(
            f"parameters {params} violate {name}'s constraint: {ident.constraint}"
        )


def _checked(name: str, s: TruncatedSeries) -> TruncatedSeries:
    if s.min_exp < 0:
        raise RuntimeError(
            f"{name} produced a negative exponent {s.min_exp}; "
            "negative internal exponents must cancel (implementation bug)"
        )
    return s


def sum_side(name: str, params: Params, N: int) -> TruncatedSeries:
    validate_params(name, params)
    return _checked(name, _get(name).sum_fn(params, N))


def product_side(name: str, params: Params, N: int) -> TruncatedSeries:
    validate_params(name, params)
    return _checked(name, _get(name).product_fn(params, N))


def set_side(name: str, params: Params, N: int, route: str = "Z") -> TruncatedSeries:
    validate_params(name, params)
    ident = _get(name)
    if route not in ident.set_families:
        raise ValueError(
            f"{name} has no set side on route {route!r}; "
            f"available: {sorted(ident.set_families)}"
        )
    spec = ident.set_families[route](params)
    return _checked(name, weight_histogram(spec, N))


def side_evaluator(name: str, side: str):
    """Uniform access: side in {sum, product, set-Z, set-X, set-Y}."""
    if side == "sum":
        return lambda params, N: sum_side(name, params, N)
    if side == "product":
        return lambda params, N: product_side(name, params, N)
    if side.startswith("set-"):
        route = side[4:]
        return lambda params, N: set_side(name, params, N, route)
    raise ValueError(f"unknown side {side!r}")


def summation_bound(name: str, params: Params, N: int) -> int:
    """Cap on the outermost summation variable for this id at order N."""
    validate_params(name, params)
    if name in ("ak-binom", "ak-nform"):
        return _triangular_bound(N)
    k = params.get("k", 1)
    return s_variable_bound(N, k)


def registry_json() -> list[dict]:
    out = []
    for name in sorted(IDENTITIES):
        ident = IDENTITIES[name]
        out.append(
            {
                "id": name,
                "params": list(ident.param_names),
                "constraint": ident.constraint,
                "sides": ident.sides,
                **({"note": ident.note} if ident.note else {}),
            }
        )
    return out


def parameter_grid(name: str, k_max: int = 4) -> list[Params]:
    """Every valid parameter assignment with k <= k_max (a in {0,1} for rr)."""
    ident = _get(name)
    if ident.param_names == ("a",):
        return [{"a": 0}, {"a": 1}]
    out = []
    span = range(0, k_max + 1)
    for k in range(1, k_max + 1):
        if ident.param_names == ("k", "r"):
            out.extend({"k": k, "r": r} for r in span if r <= k)
        elif ident.param_names == ("k", "j"):
            out.extend({"k": k, "j": j} for j in span if j <= k)
        elif ident.param_names == ("k", "a"):
            out.extend(
                {"k": k, "a": a} for a in span if ident.check({"k": k, "a": a})
            )
        elif ident.param_names == ("k", "j", "r"):
            out.extend(
                {"k": k, "j": j, "r": r}
                for j in span
                for r in span
                if ident.check({"k": k, "j": j, "r": r})
            )
        elif ident.param_names == ("k", "a", "b"):
            out.extend(
                {"k": k, "a": a, "b": b}
                for a in span
                for b in span
                if ident.check({"k": k, "a": a, "b": b})
            )
    return out
