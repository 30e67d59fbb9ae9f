import json
import random

import pytest

from locprime import harness
from locprime.errors import UnknownLaw
from locprime.functors import gamma_module, hom_module, lambda_
from locprime.harness import CampaignConfig, Law, Outcome, SizeProfile, run_campaign
from locprime.module import cyclic, is_isomorphic
from locprime.ring import make_context


def test_generate_module_degenerate_profiles(Z):
    rng = random.Random(0)
    one = SizeProfile(min_gens=1, max_gens=1, max_entry=6)
    sizes = {harness.generate_module(random.Random(s), one, Z).ngens for s in range(20)}
    assert sizes <= {1}
    zero = SizeProfile(min_gens=0, max_gens=0)
    assert harness.generate_module(rng, zero, Z).is_zero


def test_generate_module_deterministic():
    for ctx in harness.default_contexts():
        a = harness.generate_module(random.Random("s"), "default", ctx)
        b = harness.generate_module(random.Random("s"), "default", ctx)
        assert a.relations == b.relations and a.ngens == b.ngens


def test_gm_example(Z):
    M = N = cyclic(Z, 2)
    I = Z.ideal(2)
    left = hom_module(lambda_(M, I), N)
    right = hom_module(M, gamma_module(N, I))
    assert is_isomorphic(left, right) and left.torsion_factors == (2,)


def test_unknown_law():
    with pytest.raises(UnknownLaw):
        run_campaign(CampaignConfig(law="no_such_law"))


@pytest.mark.parametrize("law", [n for n in harness.LAW_NAMES if n != "pinned_examples"])
def test_every_law_small_campaign(law):
    report = run_campaign(CampaignConfig(law=law, seed=3, case_count=12, sweep=False))
    assert report.passed, [v.to_dict() for v in report.violations]
    assert report.cases_run == 12


def test_reports_are_deterministic():
    cfg = CampaignConfig(law="chart_prime", seed=11, case_count=40, sweep=False)
    a, b = run_campaign(cfg), run_campaign(cfg)
    dump = lambda r: json.dumps(r.to_dict(include_runtime=False), sort_keys=True)
    assert dump(a) == dump(b)
    assert dump(a) != dump(run_campaign(CampaignConfig(law="chart_prime", seed=12, case_count=40, sweep=False)))


def test_report_schema():
    d = run_campaign(CampaignConfig(law="mgm_equivalence", case_count=3)).to_dict()
    assert {"law", "seed", "cases_run", "violations"} <= set(d)


def test_pinned_table_matches():
    report = run_campaign(CampaignConfig(law="pinned_examples"))
    assert report.passed
    assert all(row["expected"] == row["got"] for row in report.table)
    assert len(report.table) >= 20


def test_families_round_robin():
    cfg = CampaignConfig(law="chart_prime")
    law = harness.LAWS["chart_prime"]
    streams = harness._case_streams(cfg, law)
    fams = [harness.family(next(streams)[1]) for _ in range(8)]
    assert fams[:4] == fams[4:] and len(set(fams[:4])) == 4


def test_violations_are_shrunk(monkeypatch):
    def check(case, cfg):
        out = Outcome()
        out.equal("module is zero", True, case.M.is_zero)
        return out

    bad = Law("always_nonzero", lambda r, c, p, cfg: harness._sample_basic(r, c, p, cfg, pair=False), check)
    monkeypatch.setitem(harness.LAWS, bad.name, bad)
    report = run_campaign(CampaignConfig(law=bad.name, case_count=5, context_set=(make_context("int", None, 36),)))
    assert not report.passed
    shrunk = [v for v in report.violations if v.case["shrunk"]]
    assert shrunk
    for v in shrunk:
        # a minimal nonzero module over Z/36 is cyclic of prime order
        assert v.case["M"] in ({"generators": 1, "relations": [["2"]]}, {"generators": 1, "relations": [["3"]]})
