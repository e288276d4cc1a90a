"""Exact integer combinatorics and the shared vocabulary of the bound calculators.

All arithmetic is arbitrary-precision: bound values compose like d**i under
recursion and leave machine words almost immediately.  Rational objective
values are `fractions.Fraction`, which is stored reduced with a positive
denominator.

A multidegree is the sorted tuple (d_1 <= ... <= d_r) of degrees of the
equations cutting out a complete intersection; r = 0 (no equations, the
ambient projective space itself) is allowed so recursions have a clean
terminal case.

A field enters every bound only through its Tsen-Lang behaviour, so it is
modelled by the single integer i of "the field is C_i" (every form of degree
d in more than d**i variables has a nontrivial zero), plus a flag for the
universal-domain refinement of the Chow-triviality recursion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def binomial(n: int, k: int) -> int:
    """C(n, k) for non-negative integers; 0 when k > n (vanishing convention)."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial expects non-negative arguments, got ({n}, {k})")
    return math.comb(n, k)


class Multidegree(tuple):
    """Sorted tuple of positive equation degrees; hashable, usable as a map key."""

    def __new__(cls, degrees=()) -> "Multidegree":
        degs = tuple(int(d) for d in degrees)
        if any(d < 1 for d in degs):
            raise ValueError(f"multidegree entries must be >= 1, got {degs}")
        return super().__new__(cls, sorted(degs))

    @property
    def r(self) -> int:
        return len(self)

    def total(self) -> int:
        return sum(self)

    def __repr__(self) -> str:
        return f"Multidegree{tuple(self)!r}"


def partial_degree_sum(d: Multidegree, l: int) -> int:
    """Sum of the l smallest degrees, d_1 + ... + d_l; 0 for l = 0."""
    if not 0 <= l <= len(d):
        raise ValueError(f"partial sum index {l} out of range for {len(d)} degrees")
    return sum(d[:l])


@dataclass(frozen=True)
class FieldClass:
    """A field modelled by its Tsen-Lang class C_{c_level}.

    universal_domain marks an algebraically closed field of infinite
    transcendence degree; it only changes the Chow-triviality recursion
    (function-field children need no class shift) and forces c_level = 0.
    """

    c_level: int = 0
    universal_domain: bool = False

    def __post_init__(self):
        if self.c_level < 0:
            raise ValueError(f"c_level must be >= 0, got {self.c_level}")
        if self.universal_domain and self.c_level != 0:
            raise ValueError("a universal domain is algebraically closed; c_level must be 0")

    @classmethod
    def algebraically_closed(cls) -> "FieldClass":
        return cls(0)

    @classmethod
    def c(cls, i: int) -> "FieldClass":
        return cls(i)

    def shifted(self, transcendence_degree: int) -> "FieldClass":
        """Finitely generated extension of transcendence degree t of a C_i field is C_{i+t}."""
        if transcendence_degree < 0:
            raise ValueError("transcendence degree must be >= 0")
        return FieldClass(self.c_level + transcendence_degree)

    def __str__(self) -> str:
        if self.universal_domain:
            return "universal domain"
        return f"C_{self.c_level}"
