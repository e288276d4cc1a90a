"""Degree threshold for cohomological connectivity of general complete intersections.

The vanishing that drives the connectivity statement reduces to finitely many
cohomology groups indexed by tuples (a, b, k, l, m, c) of non-negative
integers subject to

    k + l + m - c = b + 1 - a
    k <= dim_x - a
    m + (dim_x - c) <= b
    a <= dim_y,  a + b <= dim_y + e,  c <= dim_x

(l >= 1 is forced: k + l >= dim_x + 1 - a > k).  Each tuple vanishes once
d_1 * l >= m + m_c - k, so the threshold is the maximum of (m + m_c - k) / l
over tuples, taken over k >= 1.  Feasible k = 0 tuples do exist; the standard
argument discards them via the rank cap on exterior powers, which this
enumeration deliberately does not apply, so they are surfaced as a diagnostic
instead of silently dropped.

Substituting the profile ceiling m_c <= m_X + c + 1 collapses the optimum to
the closed form dim_y + e + 1 + m_X, which the brute force reproduces exactly
for projective-space profiles and never exceeds for any profile.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .cohomology import RegularityProfile, m_x
from .core import Multidegree

logger = logging.getLogger(__name__)


class DegenerateQueryError(ValueError):
    """The feasible set over k >= 1 is empty; no degree condition is induced."""


@dataclass(frozen=True)
class NoriQuery:
    dim_x: int
    r: int
    e: int
    profile: RegularityProfile

    def __post_init__(self):
        if self.dim_x < 1:
            raise ValueError("dim_x must be >= 1")
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if self.dim_y < 0:
            raise ValueError("need dim_y = dim_x - r >= 0")
        if not 0 <= self.e <= self.dim_y:
            raise ValueError(f"need 0 <= e <= dim_y = {self.dim_y}, got e={self.e}")
        if self.profile.dim_x != self.dim_x:
            raise ValueError("profile dimension must match dim_x")

    @property
    def dim_y(self) -> int:
        return self.dim_x - self.r


@dataclass(frozen=True)
class TupleWitness:
    a: int
    b: int
    k: int
    l: int
    m: int
    c: int
    value: Fraction

    def ordering_key(self):
        return (self.a, self.b, self.k, self.l, self.m, self.c)


def _iter_raw_tuples(q: NoriQuery):
    """Yield (a, b, k, l, m, c) satisfying every constraint, k >= 0 included."""
    dim_x, dim_y, e = q.dim_x, q.dim_y, q.e
    for a in range(dim_y + 1):
        k_hi = dim_x - a
        for b in range(dim_y + e - a + 1):
            for c in range(max(0, dim_x - b), dim_x + 1):
                m_hi = b - dim_x + c
                for m in range(m_hi + 1):
                    base = b + 1 - a + c - m
                    for k in range(0, min(k_hi, base - 1) + 1):
                        l = base - k
                        if l >= 1:
                            yield a, b, k, l, m, c


def enumerate_tuples(q: NoriQuery) -> list[TupleWitness]:
    """The full feasible set, objective values filled from the profile.

    Deterministic: ordered by (a, b, k, l, m, c).
    """
    mc = q.profile.m
    witnesses = [
        TupleWitness(a, b, k, l, m, c, Fraction(m + mc[c] - k, l))
        for (a, b, k, l, m, c) in _iter_raw_tuples(q)
    ]
    witnesses.sort(key=TupleWitness.ordering_key)
    return witnesses


def n_of_e_bruteforce(q: NoriQuery) -> tuple[Fraction, TupleWitness]:
    """Maximum of (m + m_c - k)/l over feasible tuples with k >= 1.

    Ties broken lexicographically on (a, b, k, l, m, c).  Feasible k = 0
    tuples are logged as a diagnostic; they do not enter the maximization.
    """
    mc = q.profile.m
    best_num = best_den = None
    best_key = None
    k_zero = 0
    k_zero_samples = []
    for tup in _iter_raw_tuples(q):
        a, b, k, l, m, c = tup
        if k == 0:
            k_zero += 1
            if len(k_zero_samples) < 3:
                k_zero_samples.append(tup)
            continue
        num = m + mc[c] - k
        # compare num/l with best by cross-multiplication
        if best_num is None or num * best_den > best_num * l or (
            num * best_den == best_num * l and tup < best_key
        ):
            best_num, best_den, best_key = num, l, tup
    if best_num is None:
        raise DegenerateQueryError(
            f"no feasible tuple with k >= 1 for dim_x={q.dim_x}, r={q.r}, e={q.e}"
        )
    if k_zero:
        logger.warning(
            "query dim_x=%d r=%d e=%d has %d feasible k=0 tuples (excluded from the "
            "maximization; the usual discard argument needs the exterior-power rank "
            "cap, which is not applied here), e.g. (a,b,k,l,m,c)=%s",
            q.dim_x, q.r, q.e, k_zero, k_zero_samples,
        )
    a, b, k, l, m, c = best_key
    witness = TupleWitness(a, b, k, l, m, c, Fraction(best_num, best_den))
    return witness.value, witness


def count_k_zero_tuples(q: NoriQuery) -> list[TupleWitness]:
    """Feasible k = 0 tuples, for diagnostics."""
    return [w for w in enumerate_tuples(q) if w.k == 0]


def n_of_e_closed_form(dim_y: int, e: int, m_x_value: int) -> int:
    """The solved optimum dim_y + e + 1 + m_X (any integer m_X accepted)."""
    if not 0 <= e <= dim_y:
        raise ValueError(f"need 0 <= e <= dim_y, got e={e}, dim_y={dim_y}")
    return dim_y + e + 1 + m_x_value


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class NoriCertificate:
    query: NoriQuery
    degrees: Multidegree
    threshold: int
    max_value: Fraction
    witness: TupleWitness
    certified: bool
    cohomological_level: int
    conjectural_cycle_level: int
    k_zero_count: int


def nori_certificate(q: NoriQuery, d: Multidegree) -> NoriCertificate:
    """Check d_1 >= ceil(max) and report the induced equivalence levels.

    When certified: cohomological (dim_y + e - 1)-equivalence is a theorem;
    cycle-theoretic c-equivalence for 2c < dim_y + e is conjectural.
    """
    if len(d) != q.r:
        raise ValueError(f"multidegree has {len(d)} entries, query expects r={q.r}")
    value, witness = n_of_e_bruteforce(q)
    threshold = ceil_fraction(value)
    certified = d[0] >= threshold
    return NoriCertificate(
        query=q,
        degrees=d,
        threshold=threshold,
        max_value=value,
        witness=witness,
        certified=certified,
        cohomological_level=q.dim_y + q.e - 1,
        conjectural_cycle_level=(q.dim_y + q.e - 1) // 2,
        k_zero_count=len(count_k_zero_tuples(q)),
    )
