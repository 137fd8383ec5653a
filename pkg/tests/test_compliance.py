from types import SimpleNamespace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from skinsar.compliance import (MARGIN_CAP_DB, Authority, Band, FrequencyRange, LimitProfile,
                                LimitRule, Metric, check, check_worst, classify_band, select_metric)
from skinsar.errors import InvalidParameter, NoRuleForFrequency


def exposure(pd=0.0, sar=0.0):
    return SimpleNamespace(pd_total=pd, sar_surface=sar)


PD10 = LimitProfile("pd10", [LimitRule(6e9, 300e9, Metric.PD, 10.0)])
SAR2 = LimitProfile("sar2", [LimitRule(1e5, 6e9, Metric.SAR, 2.0),
                             LimitRule(6e9, 300e9, Metric.SAR, 2.0)])


class TestClassifyBand:
    @pytest.mark.parametrize("f,band,fr", [
        (900e6, Band.LOW, FrequencyRange.FR1),
        (28e9, Band.HIGH, FrequencyRange.FR2),
        (10e9, Band.HIGH, FrequencyRange.NONE),
        (1e9, Band.MID, FrequencyRange.FR1),
        (6e9, Band.MID, FrequencyRange.FR1),
        (6e9 + 1, Band.HIGH, FrequencyRange.NONE),
        (400e6, Band.LOW, FrequencyRange.NONE),
        (24.25e9, Band.HIGH, FrequencyRange.FR2),
        (60e9, Band.HIGH, FrequencyRange.NONE),
    ])
    def test_table(self, f, band, fr):
        c = classify_band(f)
        assert (c.band, c.fr) == (band, fr)

    @given(st.floats(1.0, 1e12))
    def test_partition(self, f):
        c = classify_band(f)
        hits = [f < 1e9, 1e9 <= f <= 6e9, f > 6e9]
        assert sum(hits) == 1
        assert c.band == [Band.LOW, Band.MID, Band.HIGH][hits.index(True)]

    def test_nonpositive(self):
        with pytest.raises(InvalidParameter):
            classify_band(0.0)


class TestSelectMetric:
    def test_examples(self):
        assert select_metric(28e9, "FCC") is Metric.PD
        assert select_metric(2e9, Authority.ICNIRP) is Metric.SAR
        assert select_metric(10e9, "ICNIRP") is Metric.SAR
        assert select_metric(10e9 + 1, "ICNIRP") is Metric.PD
        assert select_metric(6e9, "FCC") is Metric.SAR
        assert select_metric(6e9 + 1, "FCC") is Metric.PD

    @given(st.floats(1e3, 1e12), st.sampled_from(["FCC", "ICNIRP"]))
    def test_single_step(self, f, auth):
        edge = 6e9 if auth == "FCC" else 10e9
        assert select_metric(f, auth) is (Metric.SAR if f <= edge else Metric.PD)


class TestCheck:
    def test_factor_two_headroom(self):
        r = check(exposure(pd=5.0), PD10, 28e9)
        assert r.compliant and r.metric_used is Metric.PD
        assert r.margin_db == pytest.approx(3.010299956639812, rel=1e-12)

    def test_equal_is_compliant(self):
        r = check(exposure(pd=10.0), PD10, 28e9)
        assert r.compliant and r.margin_db == 0.0

    def test_table_sar_against_two_w_per_kg(self):
        r = check(exposure(sar=1.24), SAR2, 28e9)
        assert r.compliant
        assert r.margin_db == pytest.approx(2.0760831050174613, rel=1e-12)

    def test_zero_exposure_capped(self):
        r = check(exposure(), PD10, 28e9)
        assert r.compliant and r.margin_db == MARGIN_CAP_DB

    def test_no_rule(self):
        with pytest.raises(NoRuleForFrequency):
            check(exposure(pd=1.0), PD10, 3e9)

    def test_rule_interval_is_half_open(self):
        rule = LimitRule(1e9, 2e9, Metric.PD, 1.0)
        assert rule.covers(1e9) and not rule.covers(2e9)

    def test_population_selects_rule(self, icnirp):
        r = check(exposure(pd=20.0), icnirp, 28e9, population="occupational")
        assert r.compliant and r.limit == 50.0

    def test_worst_over_frequencies(self, icnirp):
        r = check_worst(exposure(pd=5.0, sar=1.9), icnirp, [3.5e9, 28e9])
        assert r.metric_used is Metric.SAR and r.frequency_hz == 3.5e9

    @given(measured=st.floats(0.0, 1e6), limit=st.floats(1e-6, 1e6))
    def test_verdict_matches_margin_sign(self, measured, limit):
        prof = LimitProfile("p", [LimitRule(0.0, 1e12, Metric.PD, limit)])
        r = check(exposure(pd=measured), prof, 1e9)
        assert r.compliant == (measured <= limit) == (r.margin_db >= 0)

    @given(p=st.floats(1e-6, 1e3), k=st.floats(1.0, 1e3))
    def test_monotone_safety(self, p, k):
        # all metrics are linear in power: scaling up never restores compliance
        prof = LimitProfile("p", [LimitRule(0.0, 1e12, Metric.PD, 1.0)])
        if not check(exposure(pd=p), prof, 1e9).compliant:
            assert not check(exposure(pd=p * k), prof, 1e9).compliant


class TestProfiles:
    def test_overlap_rejected(self):
        with pytest.raises(InvalidParameter, match="overlap"):
            LimitProfile("x", [LimitRule(1e9, 3e9, Metric.SAR, 2.0),
                               LimitRule(2e9, 4e9, Metric.PD, 10.0)])

    def test_same_band_other_population_allowed(self):
        LimitProfile("x", [LimitRule(1e9, 3e9, Metric.SAR, 2.0),
                           LimitRule(1e9, 3e9, Metric.SAR, 10.0, population="occupational")])

    @pytest.mark.parametrize("args", [(3e9, 1e9, Metric.SAR, 2.0), (1e9, 3e9, Metric.SAR, 0.0)])
    def test_rule_invariants(self, args):
        with pytest.raises(InvalidParameter):
            LimitRule(*args)

    def test_shipped_profiles_switch_metric(self, icnirp, fcc):
        assert icnirp.rule_for(3.5e9).metric is Metric.SAR
        assert icnirp.rule_for(28e9).metric is Metric.PD
        assert fcc.rule_for(2.6e9).limit_value == 1.6
        assert fcc.sar_averaging_mass_g == 1.0
