"""
MNIST IDX reader and the Dataset container
Pixels are scaled to [0, 1] by 1/255
"""
import gzip
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from src.utils.exceptions import IdxFormatError, ShapeError

logger = logging.getLogger(__name__)

IMAGES_MAGIC = 0x00000803
LABELS_MAGIC = 0x00000801

SPLIT_FILES = {
    "train": ("train-images-idx3-ubyte", "train-labels-idx1-ubyte"),
    "test": ("t10k-images-idx3-ubyte", "t10k-labels-idx1-ubyte"),
}


@dataclass(frozen=True, eq=False)
class Dataset:
    """Images as rows of a float64 matrix in [0, 1] and integer labels"""

    images: np.ndarray
    labels: np.ndarray
    n_classes: int = 10

    def __post_init__(self):
        images = np.asarray(self.images, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64).ravel()
        if images.ndim != 2:
            raise ShapeError(f"images must be a 2-D matrix, got shape {images.shape}")
        if images.shape[0] != labels.size:
            raise ShapeError(f"{images.shape[0]} images but {labels.size} labels")
        if images.size and (images.min() < 0 or images.max() > 1):
            raise ValueError("pixels must lie in [0, 1]")
        if labels.size and (labels.min() < 0 or labels.max() >= self.n_classes):
            raise ValueError(f"labels must lie in 0..{self.n_classes - 1}")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "labels", labels)

    @property
    def dims(self) -> int:
        return self.images.shape[1]

    def __len__(self):
        return self.labels.size

    def subset(self, start: int = 0, stop: int = None) -> "Dataset":
        return Dataset(self.images[start:stop], self.labels[start:stop], self.n_classes)

    def take(self, count: int) -> "Dataset":
        return self.subset(0, count)


class MnistLoader:
    """Read MNIST splits from a directory of (optionally gzipped) IDX files"""

    def __init__(self, mnist_dir: str = "data/mnist"):
        self.mnist_dir = Path(mnist_dir)

    def _find(self, stem: str) -> Path:
        for candidate in (stem, stem + ".gz", stem.replace("-idx", ".idx"), stem.replace("-idx", ".idx") + ".gz"):
            path = self.mnist_dir / candidate
            if path.exists():
                return path
        raise IdxFormatError(f"IDX file not found: {self.mnist_dir / stem}")

    @staticmethod
    def _read_bytes(path: Path) -> bytes:
        opener = gzip.open if path.suffix == ".gz" else open
        with opener(path, "rb") as f:
            return f.read()

    def load_images(self, path) -> np.ndarray:
        """Return uint8 images flattened to (count, rows * cols)"""
        path = Path(path)
        raw = self._read_bytes(path)
        if len(raw) < 16:
            raise IdxFormatError(f"{path}: truncated header")
        magic, count, rows, cols = np.frombuffer(raw[:16], dtype=">u4")
        if magic != IMAGES_MAGIC:
            raise IdxFormatError(f"{path}: magic 0x{int(magic):08x} != 0x{IMAGES_MAGIC:08x} (images)")
        expected = int(count) * int(rows) * int(cols)
        if len(raw) - 16 < expected:
            raise IdxFormatError(f"{path}: expected {expected} pixel bytes, found {len(raw) - 16}")
        pixels = np.frombuffer(raw[16:16 + expected], dtype=np.uint8)
        return pixels.reshape(int(count), int(rows) * int(cols))

    def load_labels(self, path) -> np.ndarray:
        path = Path(path)
        raw = self._read_bytes(path)
        if len(raw) < 8:
            raise IdxFormatError(f"{path}: truncated header")
        magic, count = np.frombuffer(raw[:8], dtype=">u4")
        if magic != LABELS_MAGIC:
            raise IdxFormatError(f"{path}: magic 0x{int(magic):08x} != 0x{LABELS_MAGIC:08x} (labels)")
        if len(raw) - 8 < int(count):
            raise IdxFormatError(f"{path}: expected {int(count)} labels, found {len(raw) - 8}")
        return np.frombuffer(raw[8:8 + int(count)], dtype=np.uint8).astype(np.int64)

    @staticmethod
    def normalize(pixels: np.ndarray) -> np.ndarray:
        """Normalize pixel values to [0, 1]"""
        return pixels.astype(np.float64) / 255.0

    def load_split(self, split: str = "train") -> Dataset:
        if split not in SPLIT_FILES:
            raise ValueError(f"unknown MNIST split: {split}")
        image_stem, label_stem = SPLIT_FILES[split]
        images = self.load_images(self._find(image_stem))
        labels = self.load_labels(self._find(label_stem))
        if images.shape[0] != labels.size:
            raise IdxFormatError(f"{split}: {images.shape[0]} images but {labels.size} labels")
        logger.info("Loaded MNIST %s split: %d images", split, labels.size)
        return Dataset(self.normalize(images), labels)

    def get_dataset_stats(self, dataset: Dataset) -> dict:
        """Basic statistics used to calibrate the coding parameters"""
        nonzero = (dataset.images > 0).sum(axis=1)
        return {
            "count": len(dataset),
            "dims": dataset.dims,
            "mean_pixel": float(dataset.images.mean()) if len(dataset) else 0.0,
            "mean_nonzero_pixels": float(nonzero.mean()) if len(dataset) else 0.0,
            "class_counts": np.bincount(dataset.labels, minlength=dataset.n_classes).tolist(),
        }


def split_validation(train: Dataset, n_val: int = 10000):
    """Hold out the last n_val training images for validation"""
    if not 0 <= n_val < len(train):
        raise ValueError(f"cannot hold out {n_val} of {len(train)} images")
    cut = len(train) - n_val
    return train.subset(0, cut), train.subset(cut, None)
