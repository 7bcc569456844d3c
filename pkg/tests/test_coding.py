"""
Unit tests for the input encoders and Spike Select
"""
import numpy as np
import pandas as pd
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.coding.encoders import (
    deviation,
    deviations,
    encode,
    encode_first_spike,
    encode_jittered_periodic,
    encode_single_burst,
    period_of,
)
from src.coding.spike_select import apply_spike_select
from src.engine.neuron import NeuronState, if_integrate
from src.engine.selectors import SelectorConfig
from src.engine.simulator import run_inference
from src.models.coding import CodingParams, CodingScheme, SchemeTag, SpikeSelectConfig
from src.utils.exceptions import ShapeError
from tests.conftest import make_net


def test_period_endpoints():
    """Test v=1 gives 1/f_max and v=0 gives 1/f_min"""
    params = CodingParams()
    assert period_of(1.0, params) == pytest.approx(1 / params.f_max)
    assert period_of(0.0, params) == pytest.approx(1 / params.f_min)


def test_period_midpoint():
    """Test v=0.5 between 10 and 50 Hz gives 1/30"""
    assert period_of(0.5, CodingParams(f_min=10, f_max=50)) == pytest.approx(1 / 30)


def test_coding_params_validation():
    """Test f_min above f_max and t_min past the window are rejected"""
    with pytest.raises(ValueError):
        CodingParams(f_min=200, f_max=100)
    with pytest.raises(ValueError):
        CodingParams(t_min=2.0, window=1.0)


def test_scheme_tag_parse():
    """Test short names, enum names and labels"""
    assert SchemeTag.parse("JP") == SchemeTag.JITTERED_PERIODIC
    assert SchemeTag.parse("first_spike") == SchemeTag.FIRST_SPIKE
    assert SchemeTag.parse("SingleBurst") == SchemeTag.SINGLE_BURST
    with pytest.raises(ValueError):
        SchemeTag.parse("phase")


def test_deviation_without_jitter_is_uniform():
    """Test s_dev=0 draws Uniform(0, 2p)"""
    params = CodingParams(s_dev=0.0)
    draws = deviations(0.1, params, np.random.default_rng(0), size=50000)
    assert draws.min() >= 0 and draws.max() <= 0.2
    assert draws.mean() == pytest.approx(0.1, rel=0.02)


def test_deviation_mean_matches_period():
    """Test 1e5 draws at p=0.1, s_dev=0.1 average to p within 2%"""
    draws = deviations(0.1, CodingParams(s_dev=0.1), np.random.default_rng(1), size=100000)
    assert draws.mean() == pytest.approx(0.1, rel=0.02)


def test_deviation_deterministic():
    """Test the same seed gives the same sequence"""
    params = CodingParams()
    first, second = np.random.default_rng(3), np.random.default_rng(3)
    a = [deviation(0.05, params, first) for _ in range(5)]
    b = [deviation(0.05, params, second) for _ in range(5)]
    assert a == b


def test_deviation_rejects_non_positive_period():
    """Test p <= 0 raises ValueError"""
    with pytest.raises(ValueError):
        deviation(0.0, CodingParams(), np.random.default_rng(0))


@pytest.mark.parametrize("tag", list(SchemeTag))
def test_zero_image_is_silent(tag):
    """Test an all-zero image emits nothing under every scheme"""
    train = encode(np.zeros(16), CodingScheme(tag), np.random.default_rng(0))
    assert len(train) == 0
    assert train.n_inputs == 16


@pytest.mark.parametrize("v", [0.25, 0.5, 1.0])
def test_jittered_periodic_rate(v):
    """Test mean count over 100 seeds is window / period within 15%"""
    params = CodingParams(s_dev=0.0, f_max=100)
    counts = [len(encode_jittered_periodic([v], params, np.random.default_rng(seed))) for seed in range(100)]
    assert np.mean(counts) == pytest.approx(params.window / period_of(v, params), rel=0.15)


def test_jittered_periodic_events_inside_window():
    """Test events are sorted and inside [0, window]"""
    rng = np.random.default_rng(4)
    image = rng.uniform(size=64) * (rng.uniform(size=64) > 0.3)
    train = encode_jittered_periodic(image, CodingParams(window=2.0), np.random.default_rng(5))
    assert np.all(np.diff(train.times) >= 0)
    assert train.times.min() >= 0 and train.times.max() <= 2.0
    silent = np.flatnonzero(image == 0)
    assert not np.isin(train.neurons, silent).any()


def test_single_burst_times():
    """Test v=1 spikes at 0 and v=0.25 spikes at 75 for a window of 100"""
    train = encode_single_burst([0.25, 0.0, 1.0], CodingParams(window=100.0))
    assert train.neurons.tolist() == [2, 0]
    assert train.times.tolist() == pytest.approx([0.0, 75.0])


def test_single_burst_is_deterministic():
    """Test Single Burst ignores the RNG"""
    scheme = CodingScheme(SchemeTag.SINGLE_BURST)
    image = np.linspace(0, 1, 10)
    assert encode(image, scheme, np.random.default_rng(0)) == encode(image, scheme, np.random.default_rng(99))


def test_first_spike_clamped_to_t_min():
    """Test a tiny period fires exactly at t_min"""
    params = CodingParams(f_min=10, f_max=1000, t_min=5.0, window=10.0)
    train = encode_first_spike([1.0], params, np.random.default_rng(0))
    assert train.times.tolist() == [5.0]


def test_first_spike_at_most_one_per_pixel():
    """Test at most one spike per non-zero pixel"""
    rng = np.random.default_rng(8)
    image = rng.uniform(size=100) * (rng.uniform(size=100) > 0.5)
    train = encode_first_spike(image, CodingParams(), np.random.default_rng(9))
    assert len(train) <= np.count_nonzero(image)
    assert train.counts_per_neuron().max() <= 1
    assert train.times.min() >= CodingParams().t_min


def test_encoders_deterministic_per_seed():
    """Test a fixed seed reproduces the train"""
    image = np.random.default_rng(2).uniform(size=32)
    for tag in (SchemeTag.JITTERED_PERIODIC, SchemeTag.FIRST_SPIKE):
        scheme = CodingScheme(tag)
        assert encode(image, scheme, np.random.default_rng(7)) == encode(image, scheme, np.random.default_rng(7))


def test_encoder_rejects_pixels_out_of_range():
    """Test pixel values above 1 are rejected"""
    with pytest.raises(ValueError):
        encode_single_burst([1.5], CodingParams())


def test_train_csv_export(tmp_path):
    """Test rows "time,neuron" sorted by time"""
    train = encode_single_burst([0.5, 1.0, 0.9], CodingParams())
    train.to_csv(tmp_path / "train.csv")
    frame = pd.read_csv(tmp_path / "train.csv")
    assert list(frame.columns) == ["time", "neuron"]
    assert frame["neuron"].tolist() == [1, 2, 0]
    assert frame["time"].is_monotonic_increasing


def test_spike_select_factor_three():
    """Test theta_1 goes from 1 to 3 and deeper layers stay"""
    net = make_net([2, 2, 2], [np.ones((2, 2)), np.ones((2, 2))])
    selected = apply_spike_select(net)
    assert selected.thresholds == (3.0, 1.0)
    assert all(np.array_equal(a, b) for a, b in zip(selected.weights, net.weights))


def test_spike_select_factor_one_is_identity():
    """Test factor 1 leaves the network unchanged"""
    net = make_net([2, 2, 2], [np.ones((2, 2)), np.ones((2, 2))])
    assert apply_spike_select(net, SpikeSelectConfig(1.0)) == net


def test_spike_select_needs_hidden_layer():
    """Test a net without hidden layer is rejected"""
    with pytest.raises(ShapeError):
        apply_spike_select(make_net([2, 2], [np.ones((2, 2))]))
    with pytest.raises(ValueError):
        SpikeSelectConfig(0.5)


def _fire_count(weights, threshold):
    state, fired_total = NeuronState(), 0
    for w in weights:
        state, fired = if_integrate(state, w, threshold)
        fired_total += fired
    return fired_total


@settings(max_examples=300, deadline=None)
@given(
    weights=st.lists(st.integers(-24, 24), min_size=1, max_size=40),
    low=st.integers(1, 40),
    extra=st.integers(0, 40),
)
def test_raising_threshold_never_adds_spikes(weights, low, extra):
    """Test a single IF neuron on a fixed drive fires no more with a higher threshold"""
    # eighths keep every sum exact
    drive = [w / 8 for w in weights]
    assert _fire_count(drive, (low + extra) / 8) <= _fire_count(drive, low / 8)


def test_spike_select_filters_first_layer():
    """Test first hidden layer emits no more spikes with theta_1 raised to 3"""
    rng = np.random.default_rng(12)
    net = make_net([16, 8, 3], [rng.normal(0.2, 0.5, size=(16, 8)), rng.normal(0, 0.5, size=(8, 3))])
    never = SelectorConfig("max", max_value=10 ** 9)
    image = rng.uniform(size=16)
    train = encode_jittered_periodic(image, CodingParams(), np.random.default_rng(13))
    _, plain = run_inference(net, train, never)
    _, selected = run_inference(apply_spike_select(net), train, never)
    assert selected.spikes_out[0] <= plain.spikes_out[0]
    assert selected.spikes_in[0] == plain.spikes_in[0]
