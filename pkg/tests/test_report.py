import json

import pytest

from connbounds.core import FieldClass, Multidegree
from connbounds.report import (
    CITATIONS,
    connectivity_report,
    hodge_level,
    report_from_dict,
    report_to_dict,
)

C0 = FieldClass(0)


def test_hodge_level_values():
    assert hodge_level(6, Multidegree([3])) == 2
    assert hodge_level(5, Multidegree([2, 2])) == 1
    for n in range(1, 12):
        for d in range(1, n + 1):
            assert hodge_level(n, Multidegree([d])) >= 1
    assert hodge_level(2, Multidegree([2, 3])) < 0
    with pytest.raises(ValueError):
        hodge_level(3, Multidegree([]))


def _statuses(report, citation_key):
    return [f for f in report.findings if f.citation == CITATIONS[citation_key]]


def test_report_cubic_in_p11():
    report = connectivity_report(11, [3], C0)
    chow = _statuses(report, "chow_triviality")
    assert len(chow) == 1 and chow[0].status == "theorem"
    inputs = dict(chow[0].inputs)
    assert inputs["m"] == 1 and inputs["bound"] == 11
    coniveau = _statuses(report, "coniveau")
    assert dict(coniveau[0].inputs)["from_degree"] == 4
    cubic = _statuses(report, "cubic_lines")
    assert len(cubic) == 1
    assert dict(_statuses(report, "hodge_level")[0].inputs)["level"] == 3


def test_report_sharpness_window():
    report = connectivity_report(4, [5], C0)
    sharp = _statuses(report, "sharpness_lines")
    assert len(sharp) == 1 and sharp[0].status == "sharpness-example"
    assert dict(sharp[0].inputs)["window"] == [4, 5]
    # outside the window: no sharpness finding
    assert not _statuses(connectivity_report(4, [6], C0), "sharpness_lines")
    assert not _statuses(connectivity_report(4, [3], C0), "sharpness_lines")


def test_sharpness_window_is_exact():
    from connbounds.bounds import BoundEngine
    engine = BoundEngine()
    for n in range(3, 9):
        for d in range(1, 2 * n):
            report = connectivity_report(n, [d], C0, engine=engine)
            found = bool(_statuses(report, "sharpness_lines"))
            assert found == (n <= d <= 2 * n - 3), (n, d)


def test_report_quartic_surface_threshold():
    report = connectivity_report(3, [4], C0, e_values=[1])
    nori = _statuses(report, "nori_threshold")
    assert len(nori) == 1
    assert dict(nori[0].inputs)["threshold"] == 4
    assert "4 >= N(1) = 4" in nori[0].statement
    assert len(_statuses(report, "nori_cycles")) == 1


def test_nori_findings_keep_conjectures_tagged():
    report = connectivity_report(5, [9], C0, e_values=[0, 3])
    for f in _statuses(report, "nori_cycles"):
        assert f.status == "conjecture"
    for f in _statuses(report, "nori_threshold"):
        assert f.status == "theorem"


def test_chow_findings_only_over_algebraically_closed():
    assert _statuses(connectivity_report(11, [3], C0), "chow_triviality")
    report = connectivity_report(11, [3], FieldClass(1))
    assert not _statuses(report, "chow_triviality")
    assert not _statuses(report, "coniveau")


def test_report_rejects_bad_queries():
    with pytest.raises(ValueError):
        connectivity_report(2, [2, 2], C0)     # n <= r
    with pytest.raises(ValueError):
        connectivity_report(5, [], C0)
    with pytest.raises(ValueError):
        connectivity_report(5, [2], C0, e_values=[9])


def test_citations_come_from_the_fixed_table():
    report = connectivity_report(7, [2, 3], C0, e_values=[0, 2])
    table = set(CITATIONS.values())
    for finding in report.findings:
        assert finding.citation in table


def test_report_json_roundtrip_and_determinism():
    report = connectivity_report(11, [3], C0)
    doc = report_to_dict(report)
    assert report_from_dict(json.loads(json.dumps(doc))) == report
    one = json.dumps(report_to_dict(connectivity_report(11, [3], C0)), sort_keys=True)
    two = json.dumps(report_to_dict(connectivity_report(11, [3], C0)), sort_keys=True)
    assert one == two


def test_every_finding_has_one_status_and_citation():
    report = connectivity_report(6, [2, 2], C0, e_values=[1])
    for finding in report.findings:
        assert finding.status in ("theorem", "conjecture", "sharpness-example")
        assert isinstance(finding.citation, str) and finding.citation
