import numpy as np
import pytest

from mkpolar.channel import ChannelConfig, StopRule, awgn_llr, modulate, run_fer
from mkpolar.construction import design_code


class TestModulate:
    def test_mapping(self):
        assert modulate([0, 1, 0]).tolist() == [1.0, -1.0, 1.0]

    def test_all_zero(self):
        assert (modulate(np.zeros(8, dtype=np.uint8)) == 1.0).all()


class TestChannelConfig:
    def test_sigma2_identity(self):
        # Eb/N0 = 2.0 linear at R = 1/2: sigma^2 = 1/(2*R*EbN0) = 0.5 and the
        # LLR mean 2/sigma^2 = 4 equals the GA initialization 4*R*EbN0.
        cfg = ChannelConfig(ebn0_db=10 * np.log10(2.0), rate=0.5)
        assert cfg.sigma2 == pytest.approx(0.5, rel=1e-12)
        assert 2.0 / cfg.sigma2 == pytest.approx(4 * 0.5 * 2.0, rel=1e-12)

    def test_rejects_bad_rate(self):
        with pytest.raises(ValueError):
            ChannelConfig(ebn0_db=3.0, rate=1.0)


class TestAwgnLlr:
    def test_near_noiseless_preserves_signs(self):
        cfg = ChannelConfig(ebn0_db=40.0, rate=0.5)
        rng = np.random.default_rng(0)
        symbols = modulate([0, 1, 1, 0, 1])
        llr = awgn_llr(symbols, cfg, rng)
        assert (np.sign(llr) == symbols).all()

    def test_empirical_mean(self):
        cfg = ChannelConfig(ebn0_db=2.0, rate=0.5)
        rng = np.random.default_rng(7)
        n = 100_000
        llr = awgn_llr(np.ones(n), cfg, rng)
        expected = 2.0 / cfg.sigma2
        sample_sigma = np.sqrt(4.0 / cfg.sigma2)  # llr variance is 4/sigma^2
        assert llr.mean() == pytest.approx(expected, abs=3 * sample_sigma / np.sqrt(n))


class TestRunFer:
    def test_noiseless_proxy_zero_fer(self, spec96):
        stats = run_fer(
            spec96,
            decoder="sc",
            snrs=(25.0,),
            stop=StopRule(max_frames=1000, min_frame_errors=10),
            seed=3,
        )
        point = stats.points[0]
        assert point.frames == 1000
        assert point.frame_errors == 0
        assert point.fer == 0.0

    def test_sc_and_fastssc_no_spc_identical(self, spec96):
        from mkpolar.fast_ssc import NodeLimits

        stop = StopRule(max_frames=3000, min_frame_errors=40)
        a = run_fer(spec96, decoder="sc", snrs=(2.0,), stop=stop, seed=11)
        b = run_fer(
            spec96,
            decoder="fastssc",
            snrs=(2.0,),
            stop=stop,
            seed=11,
            limits=NodeLimits(spc_max_span=0),
        )
        assert a.points[0].frame_errors == b.points[0].frame_errors
        assert a.points[0].bit_errors == b.points[0].bit_errors

    def test_reproducible_across_workers(self, spec96):
        stop = StopRule(max_frames=2048, min_frame_errors=25)
        kw = dict(decoder="fastssc", snrs=(2.0, 3.0), stop=stop, seed=5, batch_size=256)
        a = run_fer(spec96, workers=1, **kw)
        b = run_fer(spec96, workers=3, **kw)
        assert [p.__dict__ for p in a.points] == [p.__dict__ for p in b.points]

    def test_seed_changes_results(self, spec96):
        stop = StopRule(max_frames=1024, min_frame_errors=10_000)
        a = run_fer(spec96, snrs=(2.0,), stop=stop, seed=0)
        b = run_fer(spec96, snrs=(2.0,), stop=stop, seed=1)
        assert a.points[0].frame_errors != b.points[0].frame_errors

    def test_stop_on_error_target(self, spec96):
        stats = run_fer(
            spec96, snrs=(0.0,), stop=StopRule(max_frames=50_000, min_frame_errors=20), seed=2,
            batch_size=128,
        )
        point = stats.points[0]
        assert point.frame_errors >= 20
        assert point.frames < 50_000

    def test_sc_at_3db_collects_errors(self, spec96):
        # mid-SNR sanity: FER strictly inside (0, 1) with a full error quota
        stats = run_fer(
            spec96,
            decoder="sc",
            snrs=(3.0,),
            stop=StopRule(max_frames=100_000, min_frame_errors=100),
            seed=4,
        )
        point = stats.points[0]
        assert point.frame_errors >= 100
        assert 0.0 < point.fer < 1.0

    def test_rows_fields(self, spec96):
        stats = run_fer(spec96, snrs=(3.0,), stop=StopRule(max_frames=256, min_frame_errors=5), seed=0)
        row = stats.rows()[0]
        assert list(row) == ["ebn0_db", "frames", "frame_errors", "bit_errors", "fer", "ber"]
        assert row["fer"] == pytest.approx(row["frame_errors"] / row["frames"])

    def test_rejects_degenerate_code(self):
        spec = design_code((2, 3), 0)
        with pytest.raises(ValueError):
            run_fer(spec, snrs=(3.0,))
