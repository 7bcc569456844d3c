"""
Calculate and display MNIST statistics relevant to input spike coding
"""
import os
import sys
from pathlib import Path

import numpy as np
from dotenv import load_dotenv

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from src.coding.encoders import period_of  # noqa: E402
from src.models.coding import CodingParams  # noqa: E402
from src.preprocessing.mnist import MnistLoader  # noqa: E402

load_dotenv()
mnist_dir = sys.argv[1] if len(sys.argv) > 1 else os.environ.get("MNIST_DIR", "data/mnist")
loader = MnistLoader(mnist_dir)
params = CodingParams()

print("=" * 70)
print("MNIST STATISTICS")
print("=" * 70)

for split in ("train", "test"):
    dataset = loader.load_split(split)
    stats = loader.get_dataset_stats(dataset)
    print(f"\n{split.upper()} ({mnist_dir})")
    print("-" * 70)
    print(f"Images:                 {stats['count']:6d}  ({stats['dims']} pixels each)")
    print(f"Mean pixel value:       {stats['mean_pixel']:.4f}")
    print(f"Non-zero pixels/image:  {stats['mean_nonzero_pixels']:.1f}")
    print("Class counts:           " + " ".join(f"{c:5d}" for c in stats["class_counts"]))

    # Expected Jittered Periodic input spikes per image: window / period per non-zero pixel
    nonzero = dataset.images[dataset.images > 0]
    rates = params.window / np.vectorize(lambda v: period_of(v, params))(nonzero)
    print(f"Expected JP input spikes/image (f_min={params.f_min:g}, f_max={params.f_max:g}): "
          f"{rates.sum() / len(dataset):.1f}")

print("\n" + "=" * 70)
