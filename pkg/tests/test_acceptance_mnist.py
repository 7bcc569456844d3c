"""
End-to-end checks on the real MNIST files (set MNIST_DIR; marked slow)
"""
import pytest

from src.engine.selectors import SelectorConfig
from src.engine.simulator import profile_dataset
from src.models.coding import CodingScheme, SchemeTag
from src.models.network import parse_topology
from src.preprocessing.mnist import MnistLoader, split_validation
from src.training.trainer import Hyperparams, evaluate_formal, init_xavier, train
from src.utils.workers import max_workers
from tests.conftest import mnist_dir_or_skip

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def trained():
    loader = MnistLoader(mnist_dir_or_skip())
    train_set, val_set = split_validation(loader.load_split("train"))
    net = init_xavier(parse_topology("784-100-10"), seed=0)
    result = train(net, train_set, val_set, Hyperparams(epochs=5), progress=False)
    return result.network, loader.load_split("test")


def _profile(net, dataset, tag):
    return profile_dataset(net, dataset, CodingScheme(tag), SelectorConfig(), seed=0,
                           workers=max_workers(), progress=False)


def test_formal_and_spiking_accuracy(trained):
    """Test 95% formal accuracy and JP within one point on 1000 samples"""
    net, test_set = trained
    assert evaluate_formal(net, test_set) >= 0.95
    subset = test_set.take(1000)
    formal = evaluate_formal(net, subset)
    spiking = _profile(net, subset, SchemeTag.JITTERED_PERIODIC).accuracy
    assert abs(formal - spiking) <= 0.01


def test_spike_select_halves_hidden_traffic(trained):
    """Test Spike Select cuts spikes past the first hidden layer by half for at most 1.5 points"""
    net, test_set = trained
    subset = test_set.take(1000)
    jp = _profile(net, subset, SchemeTag.JITTERED_PERIODIC)
    ss = _profile(net, subset, SchemeTag.SPIKE_SELECT)

    def deeper(profile):
        return profile.total_spikes - profile.mean_spikes_in[0]

    assert deeper(ss.profile) <= 0.5 * deeper(jp.profile)
    assert jp.accuracy - ss.accuracy <= 0.015
