"""Exact truncated power series in q over the integers.

A :class:`TruncatedSeries` stores the coefficients of a formal Laurent
series exactly for every exponent up to a fixed truncation order N.
Coefficients are plain Python integers, so nothing ever overflows or
rounds.  Negative exponents are allowed (multisum summands start life as
Laurent monomials before their denominators are multiplied in); exponents
above the order carry no information and are dropped on construction.

Two series can only be combined when their orders agree; mixing orders is
an error rather than an implicit re-truncation, so precision is never lost
silently.  Instances are immutable and safe to share between threads.

Ring laws hold exactly on series without negative exponents (the quotient
ring Z[[q]] / q^{order+1}).  A series whose lowest exponent is negative is
a windowed convenience: multiplying it loses the coefficients near the
order that its negative part would pull back down, so catalog evaluators
multiply non-negative factors at an enlarged working order and apply the
Laurent monomial shift exactly once, then re-truncate.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class TruncatedSeries:
    """Formal series sum_{e >= minExp} c_e q^e, exact through ``order``."""

    __slots__ = ("order", "_min", "_coeffs")

    def __init__(self, order: int, min_exp: int = 0, coeffs: Iterable[int] = ()):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        self.order = order
        cs = list(coeffs)
        # drop exponents above the order
        if min_exp + len(cs) - 1 > order:
            cs = cs[: order - min_exp + 1]
        # canonical form: lowest stored exponent has a non-zero coefficient
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self._min = 0
            self._coeffs: tuple[int, ...] = ()
        else:
            self._min = min_exp + lo
            self._coeffs = tuple(cs[lo:hi])

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls(order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls(order, 0, (1,))

    @classmethod
    def monomial(cls, c: int, e: int, order: int) -> "TruncatedSeries":
        return cls(order, e, (c,))

    @classmethod
    def from_dict(cls, d: dict[int, int], order: int) -> "TruncatedSeries":
        if not d:
            return cls(order)
        lo = min(d)
        hi = max(d)
        cs = [0] * (hi - lo + 1)
        for e, c in d.items():
            cs[e - lo] = c
        return cls(order, lo, cs)

    # -- inspection --------------------------------------------------------

    @property
    def min_exp(self) -> int:
        return self._min

    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, e: int) -> int:
        """Coefficient of q^e; raises for e above the tracked order."""
        if e > self.order:
            raise ValueError(
                f"coefficient of q^{e} was discarded (order {self.order})"
            )
        i = e - self._min
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return 0

    def items(self) -> Iterator[tuple[int, int]]:
        for i, c in enumerate(self._coeffs):
            if c:
                yield self._min + i, c

    def coefficients(self, lo: int, hi: int) -> list[int]:
        """Coefficients of q^lo .. q^hi as a list (hi <= order)."""
        return [self.coefficient(e) for e in range(lo, hi + 1)]

    # -- arithmetic --------------------------------------------------------

    def _check_order(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise ValueError(
                f"mixed truncation orders {self.order} != {other.order}"
            )

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_order(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self._min, other._min)
        hi = max(self._min + len(self._coeffs), other._min + len(other._coeffs))
        cs = [0] * (hi - lo)
        for i, c in enumerate(self._coeffs):
            cs[self._min - lo + i] = c
        for i, c in enumerate(other._coeffs):
            cs[other._min - lo + i] += c
        return TruncatedSeries(self.order, lo, cs)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.order, self._min, [-c for c in self._coeffs])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_order(other)
        if self.is_zero() or other.is_zero():
            return TruncatedSeries(self.order)
        lo = self._min + other._min
        n = self.order - lo + 1
        if n <= 0:
            return TruncatedSeries(self.order)
        cs = [0] * n
        bcs = other._coeffs
        for i, a in enumerate(self._coeffs):
            if not a:
                continue
            base = self._min + i + other._min - lo
            jmax = min(len(bcs), n - base)
            for j in range(jmax):
                b = bcs[j]
                if b:
                    cs[base + j] += a * b
        return TruncatedSeries(self.order, lo, cs)

    def shifted(self, c: int, e: int) -> "TruncatedSeries":
        """c * q^e * self, relabelling the tracked window."""
        if c == 0 or self.is_zero():
            return TruncatedSeries(self.order)
        return TruncatedSeries(
            self.order, self._min + e, [c * x for x in self._coeffs]
        )

    def truncated(self, new_order: int) -> "TruncatedSeries":
        """The same series at a smaller truncation order."""
        if new_order > self.order:
            raise ValueError("cannot raise the truncation order of a series")
        return TruncatedSeries(new_order, self._min, self._coeffs)

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires minExp 0 and constant term +-1."""
        c0 = self.coefficient(0)
        if self._min < 0 or c0 not in (1, -1):
            raise ValueError("series is not a unit (need minExp 0, constant +-1)")
        n = self.order + 1
        a = [self.coefficient(e) for e in range(n)]
        inv = [0] * n
        inv[0] = c0  # 1/c0 == c0 for c0 in {1,-1}
        for e in range(1, n):
            acc = 0
            for i in range(1, e + 1):
                if a[i]:
                    acc += a[i] * inv[e - i]
            inv[e] = -c0 * acc
        return TruncatedSeries(self.order, 0, inv)

    # -- comparisons & misc -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.order == other.order
            and self._min == other._min
            and self._coeffs == other._coeffs
        )

    def __hash__(self) -> int:
        return hash((self.order, self._min, self._coeffs))

    def __repr__(self) -> str:
        if self.is_zero():
            return f"TruncatedSeries(0; order={self.order})"
        terms = []
        for e, c in self.items():
            if e == 0:
                terms.append(f"{c}")
            elif e == 1:
                terms.append(f"{c}*q")
            else:
                terms.append(f"{c}*q^{e}")
        return f"TruncatedSeries({' + '.join(terms)}; order={self.order})"


# -- module-level operation names ------------------------------------------


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def monomial_shift(s: TruncatedSeries, c: int, e: int) -> TruncatedSeries:
    return s.shifted(c, e)


def coefficient(s: TruncatedSeries, e: int) -> int:
    return s.coefficient(e)


def inverse_unit(s: TruncatedSeries) -> TruncatedSeries:
    return s.inverse()


def pochhammer_finite(sign: int, m: int, b: int, n: int, order: int) -> TruncatedSeries:
    """(+-q^m; q^b)_n = prod_{t=0}^{n-1} (1 -+ q^{m+tb}), exact through order.

    sign +1 gives the plain Pochhammer (q^m;q^b)_n, sign -1 the one with
    negated argument (-q^m;q^b)_n.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if b < 1:
        raise ValueError("base step b must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    out = TruncatedSeries.one(order)
    for t in range(n):
        e = m + t * b
        if e > order:
            break  # remaining factors are 1 + O(q^{>order})
        if e == 0:
            factor = TruncatedSeries.monomial(1 - sign, 0, order)  # 1 -+ q^0
        else:
            factor = TruncatedSeries.from_dict({0: 1, e: -sign}, order)
        out = out * factor
    return out


def pochhammer_infinite(sign: int, m: int, b: int, order: int) -> TruncatedSeries:
    """(+-q^m; q^b)_infty, exact through order; requires m >= 1."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if m < 1:
        raise ValueError("infinite Pochhammer needs m >= 1 (formal convergence)")
    if b < 1:
        raise ValueError("base step b must be >= 1")
    out = TruncatedSeries.one(order)
    e = m
    while e <= order:
        out = out * TruncatedSeries.from_dict({0: 1, e: -sign}, order)
        e += b
    return out


def qbinomial(n: int, j: int, b: int, order: int) -> TruncatedSeries:
    """Gaussian binomial [n over j] in base q^b; zero when j < 0 or j > n."""
    if j < 0 or j > n:
        return TruncatedSeries.zero(order)
    num = pochhammer_finite(1, b, b, n, order)
    den = pochhammer_finite(1, b, b, j, order) * pochhammer_finite(
        1, b, b, n - j, order
    )
    return num * den.inverse()


def csv_rows(s: TruncatedSeries) -> list[str]:
    """Coefficient dump rows 'exponent,coefficient' for exponents 0..order."""
    return [f"{e},{s.coefficient(e)}" for e in range(0, s.order + 1)]
