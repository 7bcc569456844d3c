"""
Shared fixtures: small networks, synthetic MNIST files, tech constants
"""
import gzip
import os
from pathlib import Path

import numpy as np
import pytest

from src.hardware.tech import TechConstants
from src.models.network import NetworkTopology, TrainedNetwork

IMAGES_MAGIC = 0x00000803
LABELS_MAGIC = 0x00000801


def make_net(sizes, weights, thresholds=None):
    """TrainedNetwork from nested lists"""
    return TrainedNetwork(NetworkTopology(tuple(sizes)), tuple(np.array(w, dtype=float) for w in weights),
                          thresholds)


def write_idx(directory, prefix, images, labels, gz=False, image_magic=IMAGES_MAGIC):
    """Write an IDX image/label pair the way the MNIST distribution names them"""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    images = np.asarray(images, dtype=np.uint8)
    labels = np.asarray(labels, dtype=np.uint8)
    count, pixels = images.shape
    side = int(round(pixels ** 0.5))
    image_bytes = np.array([image_magic, count, side, pixels // side], dtype=">u4").tobytes() + images.tobytes()
    label_bytes = np.array([LABELS_MAGIC, count], dtype=">u4").tobytes() + labels.tobytes()
    opener = gzip.open if gz else open
    suffix = ".gz" if gz else ""
    with opener(directory / f"{prefix}-images-idx3-ubyte{suffix}", "wb") as f:
        f.write(image_bytes)
    with opener(directory / f"{prefix}-labels-idx1-ubyte{suffix}", "wb") as f:
        f.write(label_bytes)


@pytest.fixture
def synthetic_mnist(tmp_path):
    """Tiny 784-pixel train/test splits: class k lights up row band k"""
    rng = np.random.default_rng(7)

    def build(count):
        labels = np.arange(count) % 10
        images = np.zeros((count, 784), dtype=np.uint8)
        for n, k in enumerate(labels):
            band = slice(k * 78, k * 78 + 78)
            images[n, band] = rng.integers(128, 256, size=78)
        return images, labels

    write_idx(tmp_path / "mnist", "train", *build(60))
    write_idx(tmp_path / "mnist", "t10k", *build(20), gz=True)
    return tmp_path / "mnist"


@pytest.fixture
def tech():
    return TechConstants()


@pytest.fixture
def unlimited_tech():
    return TechConstants(device_logic_capacity=0)


@pytest.fixture(autouse=True)
def _no_thread_cap(monkeypatch):
    monkeypatch.delenv("SNN_DSE_THREADS", raising=False)


def mnist_dir_or_skip():
    mnist_dir = os.environ.get("MNIST_DIR")
    if not mnist_dir or not Path(mnist_dir).exists():
        pytest.skip("MNIST_DIR is not set")
    return mnist_dir
