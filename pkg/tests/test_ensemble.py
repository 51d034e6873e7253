"""Sampling determinism, distributional checks, and bulk execution."""

import numpy as np
import pytest

from aqcsim.ensemble import (
    EnsembleConfig,
    SamplerSpec,
    grid_size,
    run_ensemble,
    sample_couplings,
    slice_sweep,
)
from aqcsim.hamiltonian import CouplingVector
from aqcsim.metrics import Settings, run_instance
from aqcsim.records import format_record
from aqcsim.spectrum import find_min_gap


def test_sampler_spec_validation():
    with pytest.raises(ValueError):
        SamplerSpec(kind="weird", half_width=1.0)
    with pytest.raises(ValueError):
        SamplerSpec(kind="uniform")
    with pytest.raises(ValueError):
        SamplerSpec(kind="gaussian")
    with pytest.raises(ValueError):
        SamplerSpec(kind="grid", half_width=1.0, points_per_axis=1)
    with pytest.raises(ValueError):
        SamplerSpec(kind="uniform", half_width=3.0, seed=-1)
    with pytest.raises(ValueError):
        SamplerSpec(kind="uniform", half_width=3.0, seed=2**64)


def test_sample_couplings_deterministic_per_index():
    spec = SamplerSpec(kind="uniform", seed=7, half_width=3.0)
    a = sample_couplings(spec, 2, 11)
    b = sample_couplings(spec, 2, 11)
    assert np.array_equal(a.J, b.J)
    c = sample_couplings(spec, 2, 12)
    assert not np.array_equal(a.J, c.J)
    assert a.J[0] == 0.0 and c.J[0] == 0.0
    with pytest.raises(ValueError):
        sample_couplings(spec, 2, -1)


def test_uniform_sampler_range_and_ks():
    spec = SamplerSpec(kind="uniform", seed=1, half_width=3.0)
    vals = []
    for index in range(333334):
        vals.extend(sample_couplings(spec, 2, index).J[1:])
    vals = np.sort(np.asarray(vals)[:1000000])
    assert vals[0] >= -3.0 and vals[-1] <= 3.0
    cdf = (vals + 3.0) / 6.0
    k = len(vals)
    ks = max(
        np.max(np.arange(1, k + 1) / k - cdf),
        np.max(cdf - np.arange(0, k) / k),
    )
    assert ks < 0.002


def test_gaussian_sampler_moments():
    spec = SamplerSpec(kind="gaussian", seed=2, sigma=1.5)
    vals = []
    for index in range(333334):
        vals.extend(sample_couplings(spec, 2, index).J[1:])
    vals = np.asarray(vals)[:1000000]
    assert abs(vals.mean()) < 0.01 * 1.5
    assert abs(vals.std() - 1.5) < 0.01 * 1.5


def test_grid_sampler_row_major_layout():
    spec = SamplerSpec(kind="grid", half_width=2.0, points_per_axis=2)
    assert grid_size(spec, 2) == 8
    # last coupling axis varies fastest
    assert np.array_equal(sample_couplings(spec, 2, 0).J[1:], [-2.0, -2.0, -2.0])
    assert np.array_equal(sample_couplings(spec, 2, 1).J[1:], [-2.0, -2.0, 2.0])
    assert np.array_equal(sample_couplings(spec, 2, 2).J[1:], [-2.0, 2.0, -2.0])
    assert np.array_equal(sample_couplings(spec, 2, 7).J[1:], [2.0, 2.0, 2.0])
    with pytest.raises(ValueError):
        sample_couplings(spec, 2, 8)
    with pytest.raises(ValueError):
        grid_size(SamplerSpec(kind="uniform", half_width=1.0), 2)
    mid = SamplerSpec(kind="grid", half_width=1.0, points_per_axis=3)
    assert np.array_equal(sample_couplings(mid, 1, 1).J[1:], [0.0])


def test_ensemble_config_validation():
    spec = SamplerSpec(kind="uniform", seed=0, half_width=3.0)
    cfg = EnsembleConfig(n=2, times=[5, 10], sample_count=3, sampler=spec)
    assert cfg.times == (5.0, 10.0)
    with pytest.raises(ValueError):
        EnsembleConfig(n=2, times=[], sample_count=3, sampler=spec)
    with pytest.raises(ValueError):
        EnsembleConfig(n=2, times=[5, 0], sample_count=3, sampler=spec)
    with pytest.raises(ValueError):
        EnsembleConfig(n=2, times=[5], sample_count=0, sampler=spec)


def test_smallest_run_emits_one_record():
    spec = SamplerSpec(kind="uniform", seed=5, half_width=3.0)
    cfg = EnsembleConfig(n=1, times=[5.0], sample_count=1, sampler=spec)
    out = []
    summary = run_ensemble(cfg, out.append)
    assert summary.records == 1 and summary.failures == 0
    assert len(out) == 1
    assert out[0].index == 0 and out[0].T == 5.0


def test_worker_count_does_not_change_output():
    spec = SamplerSpec(kind="uniform", seed=6, half_width=3.0)
    cfg = EnsembleConfig(n=2, times=[5.0, 10.0], sample_count=6, sampler=spec)
    serial, threaded = [], []
    run_ensemble(cfg, serial.append)
    run_ensemble(cfg, threaded.append, workers=3)
    assert len(serial) == len(threaded) == 12
    for a, b in zip(serial, threaded):
        assert format_record(a) == format_record(b)
        assert np.array_equal(a.couplings.J, b.couplings.J)
    with pytest.raises(ValueError):
        run_ensemble(cfg, serial.append, workers=0)


def test_records_ordered_by_index_then_time():
    spec = SamplerSpec(kind="uniform", seed=6, half_width=3.0)
    cfg = EnsembleConfig(n=1, times=[5.0, 10.0], sample_count=3, sampler=spec)
    out = []
    run_ensemble(cfg, out.append, workers=2)
    assert [(r.index, r.T) for r in out] == [
        (0, 5.0), (0, 10.0), (1, 5.0), (1, 10.0), (2, 5.0), (2, 10.0),
    ]


def test_shared_gap_result_matches_fresh_search():
    spec = SamplerSpec(kind="uniform", seed=8, half_width=3.0)
    cfg = EnsembleConfig(n=2, times=[5.0, 20.0], sample_count=2, sampler=spec)
    out = []
    run_ensemble(cfg, out.append)
    for rec in out:
        cv = sample_couplings(spec, 2, rec.index)
        g = find_min_gap(cv)
        assert rec.min_gap == g.min_gap
        assert rec.s_star == g.s_star
        fresh = run_instance(cv, rec.T, index=rec.index)
        assert format_record(fresh) == format_record(rec)


def test_failures_are_counted_not_raised():
    spec = SamplerSpec(kind="uniform", seed=9, half_width=3.0)
    cfg = EnsembleConfig(
        n=1,
        times=[5.0],
        sample_count=2,
        sampler=spec,
        settings=Settings(norm_ceiling=1e-18),
    )
    out = []
    summary = run_ensemble(cfg, out.append)
    assert summary.records == 2
    assert summary.failures == 2
    assert all(r.failed for r in out)
    assert summary.wall_time >= 0.0


def test_slice_sweep_layout_and_fields():
    recs = slice_sweep(0.43, 3, 3.0, 5.0)
    assert len(recs) == 9
    vals = np.linspace(-3.0, 3.0, 3)
    for i1 in range(3):
        for i2 in range(3):
            r = recs[i1 * 3 + i2]
            assert r.index == i1 * 3 + i2
            assert r.couplings.J[1] == vals[i1]
            assert r.couplings.J[2] == vals[i2]
            assert r.couplings.J[3] == 0.43
    with pytest.raises(ValueError):
        slice_sweep(0.43, 1, 3.0, 5.0)
    with pytest.raises(ValueError):
        slice_sweep(0.43, 3, 0.0, 5.0)


def test_slice_sweep_hits_degeneracy_corner():
    # equal positive couplings leave the top of the final spectrum alone
    # and collapse the other three levels: the closing gap sits at s = 1
    recs = slice_sweep(0.43, 3, 0.43, 5.0)
    corner = recs[8]
    assert corner.couplings.J[1] == corner.couplings.J[2] == pytest.approx(0.43)
    assert "degenerate" in corner.flags
    assert corner.s_star == 1.0
    assert corner.min_gap == 0.0
    assert corner.ground_subspace_dim == 3


def test_slice_sweep_at_zero_top_coupling_factorizes():
    recs = slice_sweep(0.0, 3, 1.0, 5.0)
    p_one = {}
    for j in (-1.0, 0.0, 1.0):
        p_one[j] = run_instance(CouplingVector.from_terms(1, [j]), 5.0).success_prob
    vals = np.linspace(-1.0, 1.0, 3)
    for i1 in range(3):
        for i2 in range(3):
            r = recs[i1 * 3 + i2]
            assert abs(r.success_prob - p_one[vals[i1]] * p_one[vals[i2]]) < 1e-6
