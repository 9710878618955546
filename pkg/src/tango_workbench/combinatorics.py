"""Exact combinatorics and cohomology of line bundles on P^n.

Everything here is integer arithmetic. The two value types, :class:`DimValue`
and :class:`CohomTable`, are shared by the whole package: a dimension is either
known exactly or bracketed by a closed integer interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


def binom(a: int, b: int) -> int:
    """Binomial coefficient C(a, b), zero outside 0 <= b <= a."""
    if a < 0:
        raise ValueError(f"binom: top argument must be >= 0, got {a}")
    if b < 0 or b > a:
        return 0
    return comb(a, b)


def h_line(n: int, d: int, i: int) -> int:
    """dim H^i(P^n, O(d)) by Bott's formula."""
    if n < 1:
        raise ValueError(f"ambient dimension must be >= 1, got {n}")
    if not 0 <= i <= n:
        raise ValueError(f"cohomological degree {i} outside 0..{n}")
    if i == 0:
        return binom(n + d, n) if d >= 0 else 0
    if i == n:
        return binom(-d - 1, n) if d <= -n - 1 else 0
    return 0


def h_line_any(n: int, d: int, i: int) -> int:
    # engine-internal variant: degrees outside 0..n are simply zero
    if not 0 <= i <= n:
        return 0
    return h_line(n, d, i)


def chi_line(n: int, d: int) -> int:
    """Euler characteristic of O(d) on P^n, i.e. the polynomial C(n + d, n)."""
    if n < 1:
        raise ValueError(f"ambient dimension must be >= 1, got {n}")
    # C(n+d, n) as a polynomial in d: prod_{j=1..n} (d + j) / n!
    num = 1
    for j in range(1, n + 1):
        num *= d + j
    den = 1
    for j in range(2, n + 1):
        den *= j
    return num // den


@dataclass(frozen=True)
class DimValue:
    """A dimension known exactly (lo == hi) or up to a closed interval."""

    lo: int
    hi: int

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"invalid dimension interval [{self.lo}, {self.hi}]")

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int:
        if not self.is_exact:
            raise ValueError(f"{self!r} is not exact")
        return self.lo

    def __add__(self, other: "DimValue") -> "DimValue":
        return DimValue(self.lo + other.lo, self.hi + other.hi)

    def scale(self, k: int) -> "DimValue":
        return DimValue(self.lo * k, self.hi * k)

    def meet(self, other: "DimValue") -> "DimValue":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise ValueError(f"disjoint dimension intervals {self!r} and {other!r}")
        return DimValue(lo, hi)

    def __contains__(self, x: int) -> bool:
        return self.lo <= x <= self.hi

    def __repr__(self):
        if self.is_exact:
            return f"Exact({self.lo})"
        return f"Interval({self.lo}, {self.hi})"

    __str__ = __repr__

    def to_json(self):
        return self.lo if self.is_exact else [self.lo, self.hi]

    @classmethod
    def from_json(cls, obj) -> "DimValue":
        if isinstance(obj, int):
            return cls(obj, obj)
        lo, hi = obj
        return cls(int(lo), int(hi))


def Exact(n: int) -> DimValue:
    return DimValue(n, n)


def Interval(lo: int, hi: int) -> DimValue:
    # Interval(a, a) is the same object as Exact(a)
    return DimValue(lo, hi)


ZERO = Exact(0)


@dataclass(frozen=True)
class CohomTable:
    """Cohomology dimensions h^0..h^n of a bundle on P^n plus its exact Euler characteristic."""

    dims: tuple
    euler: int

    @property
    def n(self) -> int:
        return len(self.dims) - 1

    def h(self, i: int) -> DimValue:
        if 0 <= i < len(self.dims):
            return self.dims[i]
        return ZERO

    def __getitem__(self, i: int) -> DimValue:
        return self.h(i)

    @property
    def is_exact(self) -> bool:
        return all(d.is_exact for d in self.dims)

    def euler_range(self) -> tuple:
        lo = sum(d.lo if i % 2 == 0 else -d.hi for i, d in enumerate(self.dims))
        hi = sum(d.hi if i % 2 == 0 else -d.lo for i, d in enumerate(self.dims))
        return lo, hi

    def is_consistent(self) -> bool:
        """Some choice inside the intervals has alternating sum equal to ``euler``."""
        lo, hi = self.euler_range()
        return lo <= self.euler <= hi

    def __add__(self, other: "CohomTable") -> "CohomTable":
        if len(self.dims) != len(other.dims):
            raise ValueError("tables over different ambient spaces")
        return CohomTable(tuple(a + b for a, b in zip(self.dims, other.dims)),
                          self.euler + other.euler)

    def __str__(self):
        body = ", ".join(f"h{i}={d}" for i, d in enumerate(self.dims))
        return f"[{body}; chi={self.euler}]"

    def to_json(self) -> dict:
        return {"dims": [d.to_json() for d in self.dims], "euler": self.euler}

    @classmethod
    def from_json(cls, obj: dict) -> "CohomTable":
        return cls(tuple(DimValue.from_json(d) for d in obj["dims"]), int(obj["euler"]))

    @classmethod
    def zero(cls, n: int) -> "CohomTable":
        return cls((ZERO,) * (n + 1), 0)


def line_table(n: int, d: int) -> CohomTable:
    return CohomTable(tuple(Exact(h_line(n, d, i)) for i in range(n + 1)), chi_line(n, d))


def ci_hilbert_function(degrees, k: int) -> int:
    """Dimension of the degree-k part of C[x_0..x_m]/(g_0..g_m) for a regular
    sequence of forms with the given positive degrees (m + 1 = len(degrees)).

    Coefficient of t^k in prod (1 - t^a) / (1 - t)^(m+1).
    """
    if k < 0:
        return 0
    if any(a <= 0 for a in degrees):
        raise ValueError("regular sequence degrees must be positive")
    # prod (1 + t + ... + t^(a-1)), truncated at t^k
    poly = [1] + [0] * k
    for a in degrees:
        new = [0] * (k + 1)
        run = 0
        for j in range(k + 1):
            run += poly[j]
            if j - a >= 0:
                run -= poly[j - a]
            new[j] = run
        poly = new
    return poly[k]
