"""
Unit tests for the MNIST IDX reader
"""
import numpy as np
import pytest

from src.preprocessing.mnist import Dataset, MnistLoader, split_validation
from src.utils.exceptions import IdxFormatError
from tests.conftest import write_idx


def test_load_plain_and_gzip(synthetic_mnist):
    """Test both raw and gzipped IDX files load"""
    loader = MnistLoader(synthetic_mnist)
    train = loader.load_split("train")
    test = loader.load_split("test")
    assert len(train) == 60 and len(test) == 20
    assert train.dims == 784
    assert train.images.min() >= 0 and train.images.max() <= 1


def test_pixels_scaled_by_255(tmp_path):
    """Test unsigned byte pixels are divided by 255"""
    images = np.array([[0, 51, 255, 102]], dtype=np.uint8)
    write_idx(tmp_path, "train", images, [3])
    dataset = MnistLoader(tmp_path).load_split("train")
    assert np.allclose(dataset.images[0], [0, 0.2, 1.0, 0.4])
    assert dataset.labels.tolist() == [3]


def test_bad_magic_names_file(tmp_path):
    """Test a wrong magic number is reported with the file name"""
    write_idx(tmp_path, "train", np.zeros((2, 4)), [0, 1], image_magic=0x0801)
    with pytest.raises(IdxFormatError, match=r"train-images-idx3-ubyte.*magic"):
        MnistLoader(tmp_path).load_split("train")


def test_missing_file(tmp_path):
    """Test a missing split raises IdxFormatError"""
    with pytest.raises(IdxFormatError, match="not found"):
        MnistLoader(tmp_path).load_split("test")


def test_truncated_file(tmp_path):
    """Test a file shorter than its header announces"""
    write_idx(tmp_path, "train", np.zeros((2, 4)), [0, 1])
    path = tmp_path / "train-images-idx3-ubyte"
    path.write_bytes(path.read_bytes()[:-3])
    with pytest.raises(IdxFormatError):
        MnistLoader(tmp_path).load_split("train")


def test_unknown_split(synthetic_mnist):
    """Test an unknown split name"""
    with pytest.raises(ValueError):
        MnistLoader(synthetic_mnist).load_split("validation")


def test_split_validation_holds_out_last_images():
    """Test the validation set is the tail of the training set"""
    dataset = Dataset(np.linspace(0, 1, 10).reshape(10, 1), np.arange(10))
    train, val = split_validation(dataset, 3)
    assert train.labels.tolist() == list(range(7))
    assert val.labels.tolist() == [7, 8, 9]


def test_dataset_validation():
    """Test label range and pixel range checks"""
    with pytest.raises(ValueError):
        Dataset(np.zeros((1, 2)), [10])
    with pytest.raises(ValueError):
        Dataset(np.full((1, 2), 1.5), [0])


def test_dataset_stats(synthetic_mnist):
    """Test statistics report counts per class"""
    loader = MnistLoader(synthetic_mnist)
    stats = loader.get_dataset_stats(loader.load_split("train"))
    assert stats["count"] == 60
    assert stats["class_counts"] == [6] * 10
    assert stats["mean_nonzero_pixels"] == pytest.approx(78)
