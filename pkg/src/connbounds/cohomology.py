"""Cohomology dimensions of twisted differential forms on P^n and regularity profiles.

Dimensions come from Bott's closed formula.  The test suite checks it against
an independent Koszul/Euler-sequence oracle that never sees the formula.

A regularity profile records, for a polarized triple (X, O_X(1), V), one
valid Castelnuovo-Mumford twist m_c per form degree c in [0, dim X]: a twist
m is valid for the c-forms when h^a(Omega^c (x) O(m - a)) = 0 for all a >= 1.
Validity propagates upward in m, so any value at or above the sharp minimum
works; the degree threshold downstream only uses the derived invariant

    m_X = max{ m_c - c - 1 : 0 <= c <= dim X }.

On projective space the profile is the uniform m_c = c + 1 (hence m_X = 0).
That choice is sharp for c >= 1; for c = 0 the sharp twist is actually 0
(the structure sheaf is 0-regular), and the profile deliberately uses the
uniform value 1, which is still valid and keeps the pattern the optimizer
assumes.  Both facts are certified by scanning, not assumed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .core import Multidegree, binomial

PROFILE_SOURCES = ("computed_pn", "user_supplied", "bound_estimate")


def bott_dimension(n: int, p: int, k: int, q: int) -> int:
    """dim H^q(P^n, Omega^p(k)) by Bott's formula.

    Nonzero only in the three classical windows: global sections for k > p,
    the diagonal Hodge number for k = 0, and top cohomology for k < p - n.
    """
    if not 0 <= p <= n:
        raise ValueError(f"need 0 <= p <= n, got p={p}, n={n}")
    if not 0 <= q <= n:
        raise ValueError(f"need 0 <= q <= n, got q={q}, n={n}")
    if k == 0 and q == p:
        return 1
    if q == 0 and k > p:
        return binomial(k + n - p, k) * binomial(k - 1, p)
    if q == n and k < p - n:
        return binomial(-k + p, -k) * binomial(-k - 1, n - p)
    return 0


def _twist_is_regular(n: int, b: int, m: int) -> bool:
    """h^a(Omega^b(m - a)) = 0 for every a in [1, n]."""
    return all(bott_dimension(n, b, m - a, a) == 0 for a in range(1, n + 1))


def minimal_regular_twist(n: int, b: int) -> int:
    """Sharp scan: the least m from which the regularity vanishing holds.

    Scans upward from -(n+1); termination is guaranteed because b+1 always
    satisfies the vanishing.  Returns 0 for b = 0 (and -(n+1) in the vacuous
    n = 0 case): the structure sheaf is 0-regular.
    """
    if not 0 <= b <= n:
        raise ValueError(f"need 0 <= b <= n, got b={b}, n={n}")
    m = -(n + 1)
    while not _twist_is_regular(n, b, m):
        m += 1
        if m > b + 1:
            raise AssertionError(f"scan overran the certified twist b+1 at n={n}, b={b}")
    return m


def regularity_of_omega(n: int, b: int) -> int:
    """Profile twist for the b-forms on P^n: the uniform value b + 1.

    Sharp for b >= 1 (certified by the scan); for b = 0 the sharp twist is 0
    and the uniform value is one above it, still valid.
    """
    value = b + 1
    if not _twist_is_regular(n, b, value):
        raise AssertionError(f"twist {value} failed the vanishing at n={n}, b={b}")
    if b >= 1 and minimal_regular_twist(n, b) != value:
        raise AssertionError(f"profile twist not sharp at n={n}, b={b}")
    return value


@dataclass(frozen=True)
class RegularityProfile:
    """Valid twists m_0..m_{dim_x} for one polarized triple."""

    dim_x: int
    m: tuple
    source: str = "user_supplied"

    def __post_init__(self):
        if self.dim_x < 0:
            raise ValueError("dim_x must be >= 0")
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))
        if len(self.m) != self.dim_x + 1:
            raise ValueError(
                f"profile needs dim_x + 1 = {self.dim_x + 1} twists, got {len(self.m)}"
            )
        if self.source not in PROFILE_SOURCES:
            raise ValueError(f"unknown profile source {self.source!r}")
        if self.source == "computed_pn" and any(v != c + 1 for c, v in enumerate(self.m)):
            raise ValueError("a computed projective-space profile must have m_c = c + 1")


def profile_pn(n: int) -> RegularityProfile:
    """The profile of (P^n, O(1), all sections): m_c = c + 1 for every c."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return RegularityProfile(n, tuple(regularity_of_omega(n, c) for c in range(n + 1)),
                             source="computed_pn")


def m_x(profile: RegularityProfile) -> int:
    """The triple invariant max_c (m_c - c - 1)."""
    return max(v - c - 1 for c, v in enumerate(profile.m))


@dataclass(frozen=True)
class ProfileBounds:
    """Endpoint upper bounds on a profile when the full profile is unknown.

    Only m_0 (via the defining degrees) and m_{dim X} (Kodaira vanishing)
    admit general bounds; intermediate entries stay None.  Not a substitute
    for a complete profile: the threshold optimizer refuses to run on this.
    """

    dim_x: int
    upper: tuple


def bound_profile(ambient_dim: int, codim: int, x_multidegree: Multidegree) -> ProfileBounds:
    """Endpoint bounds m_0 <= d_1 + ... + d_c - c + 1 and m_{dim X} <= dim X + 1."""
    if codim != len(x_multidegree):
        raise ValueError("codim must equal the number of defining degrees")
    if ambient_dim <= codim:
        raise ValueError("need ambient_dim > codim")
    dim_x = ambient_dim - codim
    upper = [None] * (dim_x + 1)
    upper[0] = sum(x_multidegree) - codim + 1
    upper[dim_x] = dim_x + 1
    if dim_x == 0:
        upper[0] = min(upper[0], 1)
    return ProfileBounds(dim_x=dim_x, upper=tuple(upper))


def load_profile(document) -> RegularityProfile:
    """Parse a profile config document: {"dim": int, "m": [ints]}.

    Accepts a dict, a JSON string, or a path-like pointing at a JSON file.
    Rejects documents whose twist list does not have dim + 1 entries.
    """
    if isinstance(document, (str, bytes)):
        text = document
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            with open(document, "r", encoding="utf-8") as fh:
                data = json.load(fh)
    elif isinstance(document, dict):
        data = document
    else:
        with open(document, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    if not isinstance(data, dict) or "dim" not in data or "m" not in data:
        raise ValueError('profile document must be an object with "dim" and "m"')
    dim = int(data["dim"])
    m = data["m"]
    if not isinstance(m, list) or not all(isinstance(v, int) for v in m):
        raise ValueError('profile field "m" must be a list of integers')
    return RegularityProfile(dim, tuple(m), source="user_supplied")
