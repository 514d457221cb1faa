import json
from collections import Counter

import pytest

from heisenzhu import verify as vf
from heisenzhu.fock import FockVector
from heisenzhu.fockmod import Witness, nonmembership_witness
from heisenzhu.verify import (
    FAILED,
    PROVEN,
    REPRODUCED,
    UNKNOWN,
    E,
    OracleCheck,
    REGISTRY,
    entries,
    verify,
    verify_all,
)
from heisenzhu.zhu import Unknown, membership


# registry checklist ------------------------------------------------------


def test_section_counts():
    counts = Counter(e.section for e in REGISTRY.values())
    assert counts == {"background": 2, "generators": 44, "relations": 19, "structure": 19, "appendix": 19}


def test_checklist_of_named_groups():
    ids = set(REGISTRY)
    assert len([i for i in ids if i.startswith("final-")]) == 13
    assert len([i for i in ids if i.startswith("witness-")]) == 6
    assert {f"coreq{k}" for k in (1, 2, 3, 5, 6, 7, 8, 9)} <= ids
    assert {"O21", "O21b", "O22", "O23", "O24"} <= ids
    assert {"YZW1", "YZW2", "YZW3", "zeromode-table", "zeromode-I1", "zeromode-YZW"} <= ids
    assert {"level-one-images", "A1-ideal", "A0-xx", "main-generators"} <= ids
    lemmas = {"appendixlem1", "x^2tildey", "C^3", "zxtildey", "ztildexcube", "zxy", "Ymult", "Wmult", "Zmult", "y-mult", "x2-mult"}
    assert lemmas <= ids


def test_every_entry_has_a_known_section_and_kind():
    for e in REGISTRY.values():
        assert e.section in vf.SECTIONS
        assert e.kind in vf.KINDS
        assert e.payload(1), e.id


def test_unknown_id_and_section_raise():
    with pytest.raises(KeyError):
        verify("no-such-entry")
    with pytest.raises(KeyError):
        entries(["nowhere"])


def test_literal_helpers():
    assert E(2, 0, 0, 1) == FockVector.monomial((4, 1, 1))
    assert E(-1).is_zero()
    assert vf.x_power(0) == vf.ONE
    assert vf.x_power(2) == vf.star(vf.X, vf.star(vf.X, vf.ONE))


# single entries ----------------------------------------------------------


def test_verify_examples():
    assert verify("coreq1").status == PROVEN
    assert verify("A1-ideal").status == PROVEN
    table = verify("zeromode-table")
    assert table.status == REPRODUCED and len(table.samples) == 20


def test_certificates_are_written(tmp_path):
    res = verify("O21", certificate_dir=tmp_path)
    assert res.certificates
    from heisenzhu.certificate import Certificate

    for path in res.certificates:
        with open(path) as fh:
            assert Certificate.from_json(fh.read()).check()


def test_budget_zero_starves_membership_only():
    rep = verify_all(budget=0, ids=["coreq1", "A0-xx", "YZW1", "zeromode-table", "witness-Y", "ABC-shorthand"])
    status = {e.id: e.status for e in rep.entries}
    assert status["coreq1"] == status["A0-xx"] == status["YZW1"] == UNKNOWN
    assert status["zeromode-table"] == status["witness-Y"] == status["ABC-shorthand"] == REPRODUCED


def test_empty_filter_gives_empty_report():
    rep = verify_all(only=[])
    assert rep.entries == [] and not rep.failed
    assert rep.counts() == {PROVEN: 0, REPRODUCED: 0, UNKNOWN: 0, FAILED: 0}


def test_failed_status_carries_the_residual(monkeypatch):
    bad = vf.RelationEntry(
        "broken",
        "background",
        "oracle-equality",
        "deliberately wrong",
        lambda bound: [OracleCheck("mismatch", lambda: E(2), lambda: E(2) + E(0, 1))],
    )
    monkeypatch.setitem(REGISTRY, "broken", bad)
    res = verify("broken")
    assert res.status == FAILED and res.failed
    assert res.residuals() == ["-a(-2)|0>"]


def test_parallel_run_matches_sequential():
    ids = ["O21", "coreq2", "witness-Z"]
    seq = verify_all(ids=ids)
    par = verify_all(ids=ids, jobs=2)
    assert [(e.id, e.status, e.cutoff) for e in seq.entries] == [(e.id, e.status, e.cutoff) for e in par.entries]


# the printed reduce-α(-1) identity ---------------------------------------


def test_printed_reduce_alpha_form_is_refuted():
    """``2α(-1)^2 1 + α(-1)α(-2)1`` is not in the ideal: a zero mode detects it."""
    printed = E(2) * 2 + E(1, 1)
    w = nonmembership_witness(printed, 2)
    assert isinstance(w, Witness)
    assert isinstance(membership(printed, 2), Unknown)
    corrected = E(2) + E(1, 1)
    assert nonmembership_witness(corrected, 2).__class__.__name__ == "NotFound"


# full report -------------------------------------------------------------


def test_full_run_has_no_failures(full_report):
    counts = full_report.counts()
    assert counts[FAILED] == 0 and counts[UNKNOWN] == 0
    assert sum(counts.values()) == len(REGISTRY)


def test_report_json_and_table(full_report):
    data = json.loads(full_report.to_json())
    assert data["summary"] == full_report.counts()
    assert len(data["entries"]) == len(REGISTRY)
    sampled = [e for e in data["entries"] if e["scope"] == vf.SAMPLED_LABEL]
    assert sampled and all(REGISTRY[e["id"]].sampled for e in sampled)
    table = full_report.table()
    assert "final-cubic" in table and vf.SAMPLED_LABEL in table


def test_membership_entries_report_a_cutoff(full_report):
    for e in full_report.entries:
        if e.kind.startswith("membership"):
            assert e.cutoff is not None and 0 <= e.cutoff <= full_report.budget
