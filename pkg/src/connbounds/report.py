"""Structured connectivity reports for intersections in projective space.

A report gathers every conclusion the calculators attach to one query
(n, multidegree, field class): weak-Lefschetz connectivity, the degree
threshold certificate, the sharpness window for hypersurfaces, the
Chow-triviality consequences of a subspace bound, the Hodge-level
prediction, and the cubic 1-cycle note.  Each finding carries exactly one
status tag (theorem / conjecture / sharpness-example) and one citation from
a fixed table; conjectural findings are never presented as theorems, the tag
is part of the data model.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

from .bounds import BoundBudgetError, BoundEngine, is_finite
from .cohomology import profile_pn
from .core import FieldClass, Multidegree
from .threshold import NoriQuery, nori_certificate

THEOREM = "theorem"
CONJECTURE = "conjecture"
SHARPNESS = "sharpness-example"

CITATIONS = {
    "weak_lefschetz": "weak Lefschetz theorem (S. Lefschetz), complete intersections by induction",
    "nori_threshold": "Nori's connectivity theorem for general complete intersections",
    "nori_cycles": "Nori's cycle-theoretic connectivity conjecture",
    "sharpness_lines": "rationally inequivalent lines on general hypersurfaces of degree "
                       "between n and 2n-3 (via Mumford-Roitman)",
    "chow_triviality": "diagonal decomposition for intersections containing a "
                       "Chow-generating linear subspace (method of Bloch-Srinivas)",
    "coniveau": "generalized Hodge-coniveau consequence of the diagonal decomposition "
                "(method of Bloch-Srinivas)",
    "hodge_level": "Hodge level of small-multidegree intersections (Esnault-Nori-Srinivas) "
                   "and the induced Chow-triviality prediction (Srinivas)",
    "cubic_lines": "1-cycles on smooth cubic hypersurfaces of dimension at least 5 "
                   "(quadric-bundle projection; smooth Fano line varieties after Campana)",
}

HODGE_INDEX_NOTE = (
    "hodge level reads floor((n - sum of all degrees except the smallest) / d_1); "
    "the summation starts at the second-smallest degree, the only reading consistent "
    "with the zero-cycle specialization n >= sum of all degrees implying level >= 1"
)


def hodge_level(n: int, d: Multidegree) -> int:
    """floor((n - d_2 - ... - d_r) / d_1); may be negative."""
    if n < 1:
        raise ValueError("need n >= 1")
    if len(d) < 1:
        raise ValueError("need at least one equation")
    return (n - sum(d[1:])) // d[0]


@dataclass(frozen=True)
class Finding:
    statement: str
    status: str
    citation: str
    inputs: tuple  # sorted (name, value) pairs; values JSON-plain

    def __post_init__(self):
        if self.status not in (THEOREM, CONJECTURE, SHARPNESS):
            raise ValueError(f"unknown status {self.status!r}")


@dataclass(frozen=True)
class Report:
    query: tuple    # sorted (name, value) pairs
    findings: tuple
    notes: tuple = ()


def _inputs(**kwargs):
    return tuple(sorted(kwargs.items()))


def _finding(kind, statement, status, **inputs):
    return Finding(statement, status, CITATIONS[kind], _inputs(**inputs))


def connectivity_report(n: int, degrees, field: FieldClass, e_values=None,
                        engine: BoundEngine | None = None) -> Report:
    """Assemble the full set of connectivity conclusions for one query."""
    d = Multidegree(degrees)
    r = len(d)
    if r < 1:
        raise ValueError("need at least one equation")
    if n <= r:
        raise ValueError(f"need n > r for a nonempty expected intersection, got n={n}, r={r}")
    engine = engine or BoundEngine()
    dim_y = n - r
    if e_values is None:
        e_values = [max(dim_y - 1, 0)]
    e_values = sorted(set(int(e) for e in e_values))
    for e in e_values:
        if not 0 <= e <= dim_y:
            raise ValueError(f"need 0 <= e <= dim Y = {dim_y}, got e={e}")

    findings = []
    notes = []

    findings.append(_finding(
        "weak_lefschetz",
        f"the inclusion of a smooth complete intersection of multidegree "
        f"{tuple(d)} in P^{n} is a cohomological {dim_y - 1}-equivalence",
        THEOREM, n=n, degrees=list(d), level=dim_y - 1,
    ))

    profile = profile_pn(n)
    for e in e_values:
        query = NoriQuery(n, r, e, profile)
        cert = nori_certificate(query, d)
        if cert.certified:
            findings.append(_finding(
                "nori_threshold",
                f"d_1 = {d[0]} >= N({e}) = {cert.threshold}: the inclusion of the general "
                f"complete intersection is a cohomological {cert.cohomological_level}-equivalence",
                THEOREM, n=n, degrees=list(d), e=e, threshold=cert.threshold,
                max_value=str(cert.max_value), level=cert.cohomological_level,
            ))
            findings.append(_finding(
                "nori_cycles",
                f"conjecturally, the same inclusion is a cycle-theoretic c-equivalence "
                f"for 2c < {dim_y + e} (c <= {cert.conjectural_cycle_level})",
                CONJECTURE, n=n, degrees=list(d), e=e,
                cycle_level=cert.conjectural_cycle_level,
            ))
        else:
            findings.append(_finding(
                "nori_threshold",
                f"d_1 = {d[0]} < N({e}) = {cert.threshold}: the degree threshold at "
                f"e = {e} is not met, no connectivity conclusion",
                THEOREM, n=n, degrees=list(d), e=e, threshold=cert.threshold,
                max_value=str(cert.max_value),
            ))

    if r == 1 and n >= 3 and n <= d[0] <= 2 * n - 3:
        findings.append(_finding(
            "sharpness_lines",
            f"{n} <= {d[0]} <= {2 * n - 3}: the general degree-{d[0]} hypersurface in "
            f"P^{n} contains a pair of lines whose difference is not rationally "
            f"equivalent to zero among 1-cycles",
            SHARPNESS, n=n, degree=d[0], window=[n, 2 * n - 3],
        ))

    if field.c_level == 0:
        best_m, best_bound = None, None
        m = 0
        while m <= n:
            try:
                res = engine.l_bound(d, m, field)
            except BoundBudgetError as err:
                notes.append(f"subspace bound search stopped at m = {m}: {err.reason}")
                break
            if not is_finite(res.value) or res.value > n:
                break
            best_m, best_bound = m, res.value
            m += 1
        if best_m is not None:
            findings.append(_finding(
                "chow_triviality",
                f"n = {n} >= {best_bound}, the Chow-triviality bound at m = {best_m}: "
                f"CH^l(X)_Q = Q for l <= {best_m}, CH^{best_m + 1}(X)_Q is finite "
                f"dimensional, and CH^{best_m + 2}(X)_Q is representable, for X smooth "
                f"of multidegree {tuple(d)} in P^{n}",
                THEOREM, n=n, degrees=list(d), m=best_m, bound=best_bound,
            ))
            findings.append(_finding(
                "coniveau",
                f"in the same situation H^l(X) = N^{best_m + 1} H^l(X) for all "
                f"l >= {2 * best_m + 2}",
                THEOREM, n=n, degrees=list(d), m=best_m, from_degree=2 * best_m + 2,
            ))

    level = hodge_level(n, d)
    if level >= 1:
        statement = (f"hodge level {level}: conjecturally CH_p(X)_Q = Q for p < {level} "
                     f"(p = 0 is Roitman's theorem when n >= {sum(d)})")
    else:
        statement = f"hodge level {level}: the small-degree prediction is empty"
    findings.append(_finding("hodge_level", statement, CONJECTURE,
                             n=n, degrees=list(d), level=level))
    notes.append(HODGE_INDEX_NOTE)

    if tuple(d) == (3,) and n >= 6:
        findings.append(_finding(
            "cubic_lines",
            f"a smooth cubic hypersurface in P^{n} (dimension {n - 1} >= 5) whose "
            f"variety of lines is smooth has CH_1(X) = Z",
            THEOREM, n=n, degrees=list(d),
        ))

    query = _inputs(n=n, degrees=list(d), c_level=field.c_level,
                    universal_domain=field.universal_domain, e_values=e_values)
    return Report(query=query, findings=tuple(findings), notes=tuple(notes))


def report_to_dict(report: Report) -> dict:
    return {
        "query": {k: v for k, v in report.query},
        "findings": [
            {"statement": f.statement, "status": f.status, "citation": f.citation,
             "inputs": {k: v for k, v in f.inputs}}
            for f in report.findings
        ],
        "notes": list(report.notes),
    }


def report_from_dict(doc: dict) -> Report:
    findings = tuple(
        Finding(f["statement"], f["status"], f["citation"],
                tuple(sorted(f["inputs"].items())))
        for f in doc["findings"]
    )
    return Report(query=tuple(sorted(doc["query"].items())), findings=findings,
                  notes=tuple(doc.get("notes", ())))
