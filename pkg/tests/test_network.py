"""
Unit tests for the network data model and file format
"""
import json

import numpy as np
import pytest

from src.models.network import (
    DEFAULT_THRESHOLD,
    LINEAR,
    RECTIFIER,
    NetworkTopology,
    TrainedNetwork,
    load_network,
    memory_bits,
    memory_sweep_hidden_depth,
    memory_sweep_hidden_width,
    network_from_dict,
    network_to_dict,
    neuron_count,
    parse_topology,
    save_network,
    synapse_count,
)
from src.preprocessing.mnist import MnistLoader
from src.training.trainer import Hyperparams, evaluate_formal, init_xavier, predict_formal, train
from src.utils.exceptions import NetworkFormatError, ShapeError
from tests.conftest import make_net


def test_parse_topology():
    """Test hyphen notation parsing"""
    topology = parse_topology("784-300-10")
    assert topology.layer_sizes == (784, 300, 10)
    assert topology.depth == 2
    assert str(topology) == "784-300-10"


@pytest.mark.parametrize("text", ["784--10", "784", "784-a-10", "", "-784-10"])
def test_parse_topology_rejects_bad_strings(text):
    """Test malformed topology strings raise ValueError"""
    with pytest.raises(ValueError):
        parse_topology(text)


def test_topology_requires_positive_sizes():
    """Test empty layers are rejected"""
    with pytest.raises(ShapeError):
        NetworkTopology((784, 0, 10))


def test_counts():
    """Test neuron and synapse counts"""
    topology = parse_topology("784-300-300-300-10")
    assert neuron_count(topology) == 910
    assert synapse_count(topology) == 784 * 300 + 300 * 300 + 300 * 300 + 300 * 10


@pytest.mark.parametrize("bits,expected", [(1, 238200), (8, 1905600), (64, 15244800)])
def test_memory_footprint_table(bits, expected):
    """Test weight storage of 784-300-10 for 1, 8 and 64 bit weights"""
    assert memory_bits(parse_topology("784-300-10"), bits) == expected


def test_memory_bits_small_net():
    """Test a 2-1 net stores two 8-bit weights"""
    assert memory_bits(parse_topology("2-1"), 8) == 16


def test_memory_bits_linear_and_increasing():
    """Test linearity in bit width and growth with hidden width"""
    t = parse_topology("784-100-10")
    assert memory_bits(t, 16) == 2 * memory_bits(t, 8)
    assert memory_bits(parse_topology("784-101-10"), 8) > memory_bits(t, 8)


def test_memory_sweeps():
    """Test hidden width and depth sweeps"""
    widths = memory_sweep_hidden_width([100, 300])
    assert widths == [(100, 8 * (78400 + 1000)), (300, 1905600)]
    depths = memory_sweep_hidden_depth([1, 2], width=1024)
    assert depths[0] == (1, 8 * (784 * 1024 + 1024 * 10))
    assert depths[1] == (2, 8 * (784 * 1024 + 1024 * 1024 + 1024 * 10))


def test_default_thresholds_and_activations():
    """Test defaults: theta 1.0, rectifier hidden, linear output"""
    net = make_net([2, 2, 2], [np.zeros((2, 2)), np.zeros((2, 2))])
    assert net.thresholds == (DEFAULT_THRESHOLD, DEFAULT_THRESHOLD)
    assert net.activations == (RECTIFIER, LINEAR)


def test_network_validation():
    """Test shape, finiteness and threshold checks"""
    with pytest.raises(ShapeError):
        make_net([2, 2], [np.zeros((3, 2))])
    with pytest.raises(ValueError):
        make_net([2, 2], [np.array([[np.nan, 0], [0, 0]])])
    with pytest.raises(ValueError):
        make_net([2, 2], [np.zeros((2, 2))], thresholds=(0.0,))


def test_weights_are_read_only():
    """Test networks are immutable after construction"""
    net = make_net([2, 1], [[[1.0], [2.0]]])
    with pytest.raises(ValueError):
        net.weights[0][0, 0] = 5.0


def test_save_load_zero_net(tmp_path):
    """Test a 2-2-2 all-zero net survives a save/load"""
    net = make_net([2, 2, 2], [np.zeros((2, 2)), np.zeros((2, 2))])
    save_network(net, tmp_path / "net.json")
    assert load_network(tmp_path / "net.json") == net


def test_save_load_is_bit_exact(tmp_path):
    """Test random 64-bit weights and thresholds come back bit-identical"""
    rng = np.random.default_rng(3)
    net = make_net([5, 4, 3], [rng.normal(size=(5, 4)), rng.normal(size=(4, 3))], thresholds=(0.7, 1.3))
    save_network(net, tmp_path / "net.json")
    loaded = load_network(tmp_path / "net.json")
    assert loaded == net
    assert all(np.array_equal(a, b) for a, b in zip(loaded.weights, net.weights))


def test_file_format_is_row_major(tmp_path):
    """Test w[i * N_l + j] = w_ij in the JSON file"""
    net = make_net([2, 3], [[[1, 2, 3], [4, 5, 6]]])
    data = network_to_dict(net)
    assert data["weights"] == [[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]]
    assert set(data) == {"layer_sizes", "thresholds", "activations", "weights"}


def test_missing_field_is_named(tmp_path):
    """Test a malformed file names the missing field"""
    path = tmp_path / "net.json"
    path.write_text(json.dumps({"layer_sizes": [2, 2], "thresholds": [1.0], "activations": ["linear"]}))
    with pytest.raises(NetworkFormatError, match="weights"):
        load_network(path)


def test_wrong_row_count_is_shape_error():
    """Test a W_1 with the wrong number of values"""
    data = {"layer_sizes": [3, 2], "thresholds": [1.0], "activations": ["linear"], "weights": [[0.0] * 4]}
    with pytest.raises(ShapeError):
        network_from_dict(data)


def test_invalid_json(tmp_path):
    """Test a non-JSON file raises NetworkFormatError"""
    path = tmp_path / "net.json"
    path.write_text("{not json")
    with pytest.raises(NetworkFormatError):
        load_network(path)


def test_with_thresholds_leaves_original():
    """Test with_thresholds returns a copy"""
    net = make_net([2, 2, 1], [np.ones((2, 2)), np.ones((2, 1))])
    raised = net.with_thresholds((3.0, 1.0))
    assert raised.thresholds == (3.0, 1.0)
    assert net.thresholds == (1.0, 1.0)
    assert isinstance(raised, TrainedNetwork)


def test_trained_network_round_trip_keeps_accuracy(synthetic_mnist, tmp_path):
    """Test a trained net reloads with identical weights and formal accuracy"""
    loader = MnistLoader(synthetic_mnist)
    net = init_xavier(parse_topology("784-16-10"), seed=1)
    trained = train(net, loader.load_split("train"), None, Hyperparams(epochs=3), progress=False).network
    test_set = loader.load_split("test")
    path = tmp_path / "trained.json"
    save_network(trained, path)
    reloaded = load_network(path)
    assert reloaded == trained
    assert evaluate_formal(reloaded, test_set) == evaluate_formal(trained, test_set)
    assert np.array_equal(predict_formal(reloaded, test_set.images), predict_formal(trained, test_set.images))
