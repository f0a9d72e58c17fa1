"""Resistance-trimming simulation: population, controller, campaign stats."""
import math

import numpy as np
import pytest

from freqcrowd import tunesim
from freqcrowd.errors import InputError, ParameterError
from freqcrowd.physics import PowerLawFit, predict_frequency_ghz


def ideal_fit(residual_mhz=0.0):
    return PowerLawFit(prefactor=5.7046 * math.sqrt(7984.0), exponent=-0.5,
                       residual_std_mhz=residual_mhz, n_points=31, exponent_fixed=True)


class TestPopulation:
    def test_deterministic(self):
        a = tunesim.generate_population(50, master_seed=1)
        b = tunesim.generate_population(50, master_seed=1)
        c = tunesim.generate_population(50, master_seed=2)
        assert [r.r_ohm for r in a] == [r.r_ohm for r in b]
        assert [r.r_ohm for r in a] != [r.r_ohm for r in c]

    def test_lognormal_shape(self):
        recs = tunesim.generate_population(100000, master_seed=0)
        r = np.array([rec.r_ohm for rec in recs])
        assert np.median(r) == pytest.approx(7600.0, rel=0.01)
        assert np.std(np.log(r / 7600.0)) == pytest.approx(0.046, rel=0.01)

    def test_zero_scatter_degenerates(self):
        recs = tunesim.generate_population(5, fractional_sigma=0.0)
        assert all(rec.r_ohm == 7600.0 for rec in recs)

    def test_fresh_records(self):
        rec = tunesim.generate_population(3, master_seed=4)[1]
        assert rec.junction_id == 1
        assert rec.r_ohm == rec.r_initial_ohm
        assert math.isnan(rec.r_target_ohm)
        assert rec.status == tunesim.PENDING
        assert rec.steps == []

    @pytest.mark.parametrize("kwargs", [
        {"n": 0}, {"n": 3, "median_ohm": 0.0}, {"n": 3, "fractional_sigma": -0.1},
    ])
    def test_validation(self, kwargs):
        with pytest.raises(ParameterError):
            tunesim.generate_population(**kwargs)


class TestTargetAssignment:
    def test_inverts_frequency_through_fit(self):
        fit = ideal_fit()
        recs = tunesim.generate_population(4, master_seed=7)
        f_now = [predict_frequency_ghz(fit, rec.r_ohm) for rec in recs]
        tunesim.assign_targets(recs, fit, [f - 0.05 for f in f_now])
        for rec, f in zip(recs, f_now):
            # lower frequency -> higher resistance: reachable by annealing
            assert rec.r_target_ohm > rec.r_ohm
            assert rec.status == tunesim.PENDING
            assert predict_frequency_ghz(fit, rec.r_target_ohm) == pytest.approx(f - 0.05, abs=1e-9)

    def test_upward_frequency_is_unreachable(self):
        fit = ideal_fit()
        recs = tunesim.generate_population(3, master_seed=7)
        f_now = [predict_frequency_ghz(fit, rec.r_ohm) for rec in recs]
        tunesim.assign_targets(recs, fit, [f + 0.05 for f in f_now])
        assert all(rec.status == tunesim.EXHAUSTED for rec in recs)

    def test_two_group_split_ranks_by_resistance(self):
        recs = tunesim.generate_population(31, master_seed=3)
        gid = tunesim.two_group_split(recs)
        assert sorted(np.bincount(gid)) == [15, 16]
        lo = [rec.r_initial_ohm for rec, g in zip(recs, gid) if g == 0]
        hi = [rec.r_initial_ohm for rec, g in zip(recs, gid) if g == 1]
        assert len(lo) == 16 and max(lo) <= min(hi)
        for rec, g in zip(recs, gid):
            assert rec.r_target_ohm == tunesim.TWO_GROUP_TARGETS_OHM[g]

    def test_two_group_split_size_mismatch(self):
        recs = tunesim.generate_population(30, master_seed=3)
        with pytest.raises(InputError):
            tunesim.two_group_split(recs)
        with pytest.raises(InputError):
            tunesim.two_group_split(recs, targets_ohm=(8000.0,), sizes=(15, 15))

    def test_spread_targets_span(self):
        recs = tunesim.generate_population(11, master_seed=5)
        tunesim.spread_targets(recs, 0.004, 0.145)
        offs = [rec.r_target_ohm / rec.r_ohm - 1.0 for rec in recs]
        assert offs[0] == pytest.approx(0.004, abs=1e-12)
        assert offs[-1] == pytest.approx(0.145, abs=1e-12)
        assert offs == sorted(offs)
        with pytest.raises(ParameterError):
            tunesim.spread_targets(recs, 0.2, 0.1)


class TestResponseModel:
    def test_default_surface_bounds(self):
        m = tunesim.AnnealResponseModel.default()
        shifts = sorted(m.calibration.values())
        assert shifts[-1] == pytest.approx(0.15, abs=1e-12)
        assert shifts[0] < 5e-4
        assert len(m.calibration) == 21 * 7

    def test_pick_step_is_largest_not_exceeding(self):
        m = tunesim.AnnealResponseModel.default()
        power, duration, expected = m.pick_step(0.02)
        assert expected <= 0.02
        # no calibrated setting between the pick and the request
        assert not any(expected < s <= 0.02 for s in m.calibration.values())

    def test_pick_step_gentlest_fallback(self):
        m = tunesim.AnnealResponseModel.default()
        gentlest = min(s for s in m.calibration.values() if s > 0.0)
        assert m.pick_step(gentlest / 10.0)[2] == gentlest
        with pytest.raises(ParameterError):
            m.pick_step(0.0)

    def test_realized_shift_noise(self):
        quiet = tunesim.AnnealResponseModel.default(noise_sigma=0.0)
        rng = tunesim.junction_rng(0, 0)
        assert quiet.realized_shift(0.01, rng) == 0.01
        loud = tunesim.AnnealResponseModel.default(noise_sigma=0.5)
        draws = [loud.realized_shift(0.01, rng) for _ in range(200)]
        assert min(draws) > 0.0
        assert np.std(np.log(draws)) == pytest.approx(0.5, rel=0.2)

    def test_calibration_validation(self):
        with pytest.raises(InputError):
            tunesim.AnnealResponseModel({})
        with pytest.raises(InputError):
            tunesim.AnnealResponseModel({(1.0, 1.0): 0.2})
        with pytest.raises(InputError):
            tunesim.AnnealResponseModel({(0.8, 1.0): 0.05, (0.9, 1.0): 0.05})
        with pytest.raises(ParameterError):
            tunesim.AnnealResponseModel({(1.0, 1.0): 0.1}, noise_sigma=-0.1)


class TestTuneJunction:
    def test_already_in_band_takes_zero_anneals(self):
        rec = tunesim.JunctionRecord(0, 8000.0, 8000.0, r_target_ohm=8010.0)
        tunesim.tune_junction(rec, tunesim.AnnealResponseModel.default(),
                              tunesim.TunePolicy(), tunesim.junction_rng(0, 0))
        assert rec.status == tunesim.CONVERGED
        assert rec.steps == []

    def test_target_below_wire_is_exhausted_not_overshot(self):
        rec = tunesim.JunctionRecord(0, 8000.0, 8000.0, r_target_ohm=7800.0)
        tunesim.tune_junction(rec, tunesim.AnnealResponseModel.default(),
                              tunesim.TunePolicy(), tunesim.junction_rng(0, 0))
        assert rec.status == tunesim.EXHAUSTED
        assert rec.steps == []

    def test_coarse_model_overshoots(self):
        blunt = tunesim.AnnealResponseModel({(1.0, 1.0): 0.15}, noise_sigma=0.0)
        rec = tunesim.JunctionRecord(0, 8000.0, 8000.0, r_target_ohm=8080.0)
        tunesim.tune_junction(rec, blunt, tunesim.TunePolicy(), tunesim.junction_rng(0, 0))
        assert rec.status == tunesim.OVERSHOT
        assert len(rec.steps) == 1
        assert rec.r_ohm == pytest.approx(8000.0 * 1.15)

    def test_budget_exhaustion(self):
        rec = tunesim.JunctionRecord(0, 8000.0, 8000.0, r_target_ohm=8800.0)
        tunesim.tune_junction(rec, tunesim.AnnealResponseModel.default(noise_sigma=0.0),
                              tunesim.TunePolicy(max_anneals=2), tunesim.junction_rng(0, 0))
        assert rec.status == tunesim.EXHAUSTED
        assert len(rec.steps) == 2

    def test_resistance_only_rises(self):
        recs = tunesim.generate_population(20, master_seed=9)
        tunesim.spread_targets(recs, 0.01, 0.12)
        tunesim.run_campaign(recs, master_seed=9)
        for rec in recs:
            path = [rec.r_initial_ohm] + [st.r_after_ohm for st in rec.steps]
            assert all(b > a for a, b in zip(path, path[1:]))
            assert rec.r_ohm == path[-1]

    def test_deeper_targets_take_more_steps(self):
        quiet = tunesim.AnnealResponseModel.default(noise_sigma=0.0)
        counts = []
        for off in (0.01, 0.05, 0.13):
            rec = tunesim.JunctionRecord(0, 8000.0, 8000.0, r_target_ohm=8000.0 * (1 + off))
            tunesim.tune_junction(rec, quiet, tunesim.TunePolicy(), tunesim.junction_rng(0, 0))
            assert rec.status == tunesim.CONVERGED
            counts.append(len(rec.steps))
        assert counts == sorted(counts)
        assert counts[0] < counts[-1]

    def test_policy_validation(self):
        for bad in (tunesim.TunePolicy(step_fraction=0.0),
                    tunesim.TunePolicy(converge_band=1.0),
                    tunesim.TunePolicy(max_anneals=0)):
            with pytest.raises(ParameterError):
                bad.validate()


class TestCampaign:
    def test_requires_targets(self):
        recs = tunesim.generate_population(3, master_seed=1)
        with pytest.raises(InputError):
            tunesim.run_campaign(recs)
        with pytest.raises(InputError):
            tunesim.run_campaign([])

    def test_order_independent_noise_streams(self):
        """Each junction owns its noise stream, so tuning order is irrelevant."""
        a = tunesim.generate_population(25, master_seed=12)
        b = tunesim.generate_population(25, master_seed=12)
        tunesim.spread_targets(a, 0.01, 0.1)
        tunesim.spread_targets(b, 0.01, 0.1)
        tunesim.run_campaign(a, master_seed=12)
        model, policy = tunesim.AnnealResponseModel.default(), tunesim.TunePolicy()
        for rec in reversed(b):
            tunesim.tune_junction(rec, model, policy, tunesim.junction_rng(12, rec.junction_id))
        assert [rec.r_ohm for rec in a] == [rec.r_ohm for rec in b]
        assert [len(rec.steps) for rec in a] == [len(rec.steps) for rec in b]

    def test_zero_noise_precision_bound(self):
        """With exact anneals and a perfect fit, the only frequency error left
        is the convergence band itself."""
        recs = tunesim.generate_population(40, master_seed=2)
        tunesim.spread_targets(recs, 0.01, 0.1)
        policy = tunesim.TunePolicy()
        res = tunesim.run_campaign(recs, model=tunesim.AnnealResponseModel.default(noise_sigma=0.0),
                                   policy=policy, master_seed=2, fit=ideal_fit(0.0))
        assert res.converged_fraction == 1.0
        assert res.target_sigma_f_mhz <= 1.05 * res.predicted_sigma_f_mhz
        # band-limited trim error: |exponent| * band * f, in MHz
        assert res.predicted_sigma_f_mhz == pytest.approx(
            0.5 * policy.converge_band * 5.5e3, rel=0.15)

    def test_two_group_regression(self):
        """Flagship campaign at the pinned seed: every junction lands, and the
        three precision flavours match frozen values."""
        recs = tunesim.generate_population(31, master_seed=36)
        gid = tunesim.two_group_split(recs)
        res = tunesim.run_campaign(recs, master_seed=36, fit=tunesim.default_wafer_fit(),
                                   group_ids=gid)
        assert res.n_converged == 31
        assert res.converged_fraction == 1.0
        assert res.sigma_r_ohm == pytest.approx(17.736, abs=0.01)
        assert res.pooled_sigma_f_mhz == pytest.approx(16.113, abs=0.01)
        assert res.target_sigma_f_mhz == pytest.approx(16.355, abs=0.01)
        assert res.predicted_sigma_f_mhz == pytest.approx(16.738, abs=0.01)
        assert res.group_median_r_ohm[0] == pytest.approx(7967.6, abs=0.5)
        assert res.group_median_r_ohm[1] == pytest.approx(8780.1, abs=0.5)
        assert res.group_median_f_ghz[0] > res.group_median_f_ghz[1]

    def test_wide_spread_converges(self):
        recs = tunesim.generate_population(120, master_seed=36)
        tunesim.spread_targets(recs, 0.004, 0.145)
        res = tunesim.run_campaign(recs, master_seed=36)
        assert res.converged_fraction >= 0.99

    def test_converged_medians_park_just_under_target(self):
        """One-sided approach: the converged population sits slightly below
        its resistance target, inside the band."""
        recs = tunesim.generate_population(60, master_seed=8)
        tunesim.spread_targets(recs, 0.02, 0.1)
        policy = tunesim.TunePolicy()
        tunesim.run_campaign(recs, policy=policy, master_seed=8)
        errs = [rec.r_ohm / rec.r_target_ohm - 1.0 for rec in recs
                if rec.status == tunesim.CONVERGED]
        assert np.median(errs) < 0.0
        assert all(abs(e) <= policy.converge_band + 1e-12 for e in errs)


def test_history_rows_shape():
    recs = tunesim.generate_population(5, master_seed=11)
    tunesim.spread_targets(recs, 0.01, 0.05)
    tunesim.run_campaign(recs, master_seed=11)
    rows = tunesim.history_rows(recs)
    assert len(rows) == 5 + sum(len(rec.steps) for rec in recs)
    by_id = {}
    for rid, step, power, duration, r_ohm, status in rows:
        by_id.setdefault(rid, []).append((step, power, duration, r_ohm, status))
    for rec in recs:
        hist = by_id[rec.junction_id]
        assert hist[0] == (0, 0.0, 0.0, rec.r_initial_ohm, rec.status)
        assert [h[0] for h in hist] == list(range(len(rec.steps) + 1))
        assert hist[-1][3] == rec.r_ohm


def test_default_wafer_fit_shape():
    fit = tunesim.default_wafer_fit()
    assert fit.exponent == -0.5
    assert fit.exponent_fixed
    assert predict_frequency_ghz(fit, 7984.0) == pytest.approx(5.7046, abs=1e-9)
    assert fit.residual_std_mhz == 14.5
