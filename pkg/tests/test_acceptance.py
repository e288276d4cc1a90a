"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see every line.  Two
criteria are expected to fail and do so deliberately; the analysis lives in
the project notes:

* one pinned desk value (n-bound of a quadric at m = 1 over a C_1 field)
  is only reachable through the uncorrected polar rule, which certifies
  mathematically false bounds; the engine implements the corrected rule,
  and the other pinned desk values are reachable only under the correction;
* the full finiteness grid contains keys whose exact values are iterated
  exponentials wider than any memory, so they cannot be materialized; the
  engine reports them as budget failures instead of hanging.
"""

import itertools
import random
import time
from fractions import Fraction

from connbounds.bounds import (
    BoundBudgetError,
    BoundConfig,
    BoundEngine,
    MemoCycleError,
    fano_expected_dim,
    predonzan_min_n,
    replay_trace,
)
from connbounds.cohomology import (
    RegularityProfile,
    bott_dimension,
    m_x,
    profile_pn,
    regularity_of_omega,
)
from connbounds.core import FieldClass, Multidegree
from connbounds.report import CITATIONS, connectivity_report, hodge_level
from connbounds.threshold import (
    NoriQuery,
    ceil_fraction,
    n_of_e_bruteforce,
    n_of_e_closed_form,
)

from euler_oracle import omega_cohomology

C0 = FieldClass(0)


def _report(name, ok, detail=""):
    state = "PASS" if ok else "FAIL"
    suffix = f"  ({detail})" if detail else ""
    print(f"ACCEPTANCE {name}: {state}{suffix}")
    return ok


def test_regularity_identity():
    start = time.monotonic()
    ok = all(regularity_of_omega(n, c) == c + 1
             for n in range(13) for c in range(n + 1))
    ok = ok and all(m_x(profile_pn(n)) == 0 for n in range(13))
    elapsed = time.monotonic() - start
    ok = ok and elapsed < 5.0
    assert _report("regularity identity", ok, f"{elapsed:.2f}s")


def test_bott_oracle_equivalence():
    ok = True
    for n in range(4):
        for p in range(n + 1):
            for k in range(-6, 7):
                dims = omega_cohomology(n, p, k)
                for q in range(n + 1):
                    if bott_dimension(n, p, k, q) != dims[q]:
                        ok = False
    for n in range(1, 5):
        for p in range(n + 1):
            for k in range(-8, 9):
                for q in range(n + 1):
                    if bott_dimension(n, p, k, q) != bott_dimension(n, n - p, -k, n - q):
                        ok = False
    assert _report("bott oracle equivalence", ok)


def test_closed_form_threshold():
    start = time.monotonic()
    ok = True
    for dim_x in range(1, 11):
        for r in range(1, 4):
            dim_y = dim_x - r
            if dim_y < 0:
                continue
            for e in range(dim_y + 1):
                value, _ = n_of_e_bruteforce(NoriQuery(dim_x, r, e, profile_pn(dim_x)))
                if ceil_fraction(value) != n_of_e_closed_form(dim_y, e, 0):
                    ok = False
    rng = random.Random(8128)
    checked = 0
    while checked < 50:
        dim_x = rng.randint(1, 6)
        r = rng.randint(1, min(3, dim_x))
        e = rng.randint(0, dim_x - r)
        profile = RegularityProfile(dim_x, tuple(rng.randint(-2, c + 4)
                                                 for c in range(dim_x + 1)))
        if m_x(profile) < 0:
            # the closed form is the solved optimum only for m_X >= 0
            continue
        value, _ = n_of_e_bruteforce(NoriQuery(dim_x, r, e, profile))
        if not value <= Fraction(n_of_e_closed_form(dim_x - r, e, m_x(profile))):
            ok = False
        checked += 1
    elapsed = time.monotonic() - start
    ok = ok and elapsed < 30.0
    assert _report("closed-form threshold", ok, f"{elapsed:.2f}s")


def test_hypersurface_thresholds():
    ok = True
    for n in range(3, 9):
        value, _ = n_of_e_bruteforce(NoriQuery(n, 1, n - 2, profile_pn(n)))
        if ceil_fraction(value) != 2 * n - 2:
            ok = False
    engine = BoundEngine()
    for n in range(3, 9):
        for d in range(1, 2 * n):
            report = connectivity_report(n, [d], C0, engine=engine)
            found = any(f.citation == CITATIONS["sharpness_lines"]
                        for f in report.findings)
            if found != (n <= d <= 2 * n - 3):
                ok = False
    assert _report("hypersurface thresholds", ok)


def test_fano_counts():
    ok = all((fano_expected_dim(n, Multidegree([d]), 1) >= 0) == (d <= 2 * n - 3)
             for n in range(2, 21) for d in range(1, 60))
    ok = ok and predonzan_min_n(Multidegree([3]), 2) == 6
    assert _report("fano counts", ok)


def test_bound_desk_values():
    engine = BoundEngine()
    pinned = [
        ("n_bound((2),1,C_1)", engine.n_bound([2], 1, FieldClass(1)).value, 3),
        ("l_bound((2),1,C_0)", engine.l_bound([2], 1, C0).value, 4),
        ("l_bound((3),1,C_0)", engine.l_bound([3], 1, C0).value, 11),
    ]
    for r in range(1, 5):
        for m in range(3):
            pinned.append((f"l_bound((1^{r}),{m})",
                           engine.l_bound([1] * r, m, C0).value, m + r))
    replay_ok = True
    for degs, m, field in [((2,), 1, FieldClass(1)), ((3,), 1, C0), ((2,), 1, C0)]:
        res = engine.n_bound(degs, m, field) if field.c_level else \
            engine.l_bound(degs, m, field)
        trace = engine.trace(res.key)
        if replay_trace(trace, res.key) != res.value:
            replay_ok = False
    failures = [(name, got, want) for name, got, want in pinned if got != want]
    ok = not failures and replay_ok
    detail = "; ".join(f"{n} = {g}, pinned {w}" for n, g, w in failures)
    assert _report("bound desk values", ok,
                   detail + ("; see decisions ledger: the pinned 3 requires the "
                             "uncorrected polar rule" if failures else ""))


def test_finiteness_grid():
    start = time.monotonic()
    # a reduced step budget keeps the doomed dives cheap; every key that is
    # materializable at all still fits with a wide margin
    engine = BoundEngine(BoundConfig(step_budget=120_000))
    degree_tuples = [()]
    for r in range(1, 4):
        degree_tuples += [tuple(sorted(c)) for c in
                          itertools.combinations_with_replacement(range(1, 5), r)]
    failures = []
    computed = {}
    cycles = []
    for degs, m, c in itertools.product(degree_tuples, range(3), range(3)):
        field = FieldClass(c)
        for kind, mode in [("N", "standard"), ("L", "standard")] + \
                ([("L", "universal_domain")] if c == 0 else []):
            label = (kind, degs, m, c, mode)
            try:
                if kind == "N":
                    value = engine.n_bound(degs, m, field).value
                elif mode == "standard":
                    value = engine.l_bound(degs, m, field).value
                else:
                    ud_field = FieldClass(0, universal_domain=True)
                    value = engine.l_bound(degs, m, ud_field, mode=mode).value
                computed[label] = value
            except BoundBudgetError as err:
                failures.append((label, err.reason))
            except MemoCycleError as err:
                cycles.append((label, str(err)))
    dominance_ok = True
    for (kind, degs, m, c, mode), value in computed.items():
        if kind == "L" and mode == "universal_domain":
            std = computed.get(("L", degs, m, c, "standard"))
            if std is not None and value > std:
                dominance_ok = False
    elapsed = time.monotonic() - start
    ok = not failures and not cycles and dominance_ok and elapsed < 60.0
    print(f"  grid: {len(computed)} keys computed, {len(failures)} exceeded the "
          f"resource budget, {len(cycles)} cycles, {elapsed:.1f}s")
    for label, reason in failures[:12]:
        print(f"    not computed: {label}: {reason}")
    if len(failures) > 12:
        print(f"    ... and {len(failures) - 12} more (see decisions ledger: these "
              f"values are iterated exponentials wider than memory)")
    assert _report("finiteness and termination grid", ok,
                   f"{len(failures)} keys over budget, dominance "
                   f"{'ok' if dominance_ok else 'VIOLATED'}, {elapsed:.1f}s")


def test_hodge_level_acceptance():
    ok = all(hodge_level(n, Multidegree([d])) >= 1
             for n in range(1, 16) for d in range(1, n + 1))
    ok = ok and hodge_level(6, Multidegree([3])) == 2
    assert _report("hodge level", ok)
